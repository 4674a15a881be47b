#include <cstdlib>
#include <fstream>
#include <sstream>

#include "semrank/error.hpp"
#include "semrank/text.hpp"
#include "semrank/unicode.hpp"

namespace semrank {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string word; in >> word;) out.push_back(word);
  return out;
}

// "U+064A" or "U+0640U+0641" escapes, otherwise the literal text.
std::u32string parse_codepoints(const std::string& item, std::size_t line) {
  if (item.rfind("U+", 0) != 0) return unicode::to_u32(item);
  std::u32string out;
  std::size_t pos = 0;
  while (pos < item.size()) {
    if (item.compare(pos, 2, "U+") != 0) throw FormatError(line, "bad code point escape '" + item + "'");
    pos += 2;
    std::size_t used = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(item.substr(pos, 6), &used, 16);
    } catch (const std::exception&) {
      throw FormatError(line, "bad code point escape '" + item + "'");
    }
    if (value > 0x10FFFF) throw FormatError(line, "code point out of range in '" + item + "'");
    out.push_back(static_cast<char32_t>(value));
    pos += used;
  }
  return out;
}

bool parse_bool(std::string_view value, std::size_t line) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw FormatError(line, "expected boolean, got '" + std::string(value) + "'");
}

}  // namespace

std::vector<Token> load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open stopword file " + path.string());
  std::vector<Token> words;
  for (std::string line; std::getline(in, line);) {
    const auto w = trim(line);
    if (w.empty() || w.front() == '#') continue;
    words.emplace_back(w);
  }
  return words;
}

LanguageProfile load_language_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open language profile " + path.string());

  LanguageProfile profile;
  profile.id = path.stem().string();
  bool terminators_set = false;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw FormatError(line_no, "expected 'key = value'");
    const std::string key(trim(body.substr(0, eq)));
    const std::string value(trim(body.substr(eq + 1)));

    if (key == "id") {
      profile.id = value;
    } else if (key == "terminators") {
      profile.sentence_terminators = split_ws(value);
      terminators_set = true;
    } else if (key == "lowercase") {
      profile.lowercase = parse_bool(value, line_no);
    } else if (key == "join_zwnj") {
      profile.join_zwnj = parse_bool(value, line_no);
    } else if (key == "stopwords") {
      std::filesystem::path file(value);
      if (file.is_relative()) file = path.parent_path() / file;
      for (auto& w : load_stopwords(file)) profile.stopwords.insert(std::move(w));
    } else if (key == "map") {
      const auto parts = split_ws(value);
      if (parts.size() != 2) throw FormatError(line_no, "map expects 'from to'");
      profile.normalization_rules.push_back(
          {parse_codepoints(parts[0], line_no), parse_codepoints(parts[1], line_no)});
    } else {
      throw FormatError(line_no, "unknown key '" + key + "'");
    }
  }
  if (terminators_set && profile.sentence_terminators.empty()) {
    throw FormatError(0, "profile " + path.string() + " declares no terminators");
  }
  profile.finalize();
  return profile;
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("SEMRANK_DATA_DIR"); env != nullptr && *env != '\0') return env;
  const std::filesystem::path source(SEMRANK_SOURCE_DATA_DIR);
  if (std::filesystem::exists(source / "profiles")) return source;
  return SEMRANK_INSTALL_DATA_DIR;
}

LanguageProfile builtin_profile(std::string_view id, const std::filesystem::path& data_dir) {
  const auto path = data_dir / "profiles" / (std::string(id) + ".conf");
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kInvalidArgument, "unknown language '" + std::string(id) + "' (no " +
                                                 path.string() + ")");
  }
  return load_language_profile(path);
}

}  // namespace semrank
