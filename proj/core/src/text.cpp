#include "semrank/text.hpp"

#include <algorithm>

#include "semrank/error.hpp"
#include "semrank/unicode.hpp"

namespace semrank {
namespace {

bool is_closer(char32_t c) {
  switch (c) {
    case '"': case '\'': case ')': case ']': case '}':
    case 0x00BB: case 0x2019: case 0x201D: case 0x203A: case 0x300D:
      return true;
    default:
      return false;
  }
}

// Length in bytes of the longest terminator starting at `pos`, or 0.
std::size_t match_terminator(std::string_view text, std::size_t pos,
                             const std::vector<std::string>& terminators) {
  std::size_t best = 0;
  for (const auto& t : terminators) {
    if (!t.empty() && t.size() > best && text.substr(pos, t.size()) == t) best = t.size();
  }
  return best;
}

bool is_blank(std::string_view line) {
  for (std::size_t i = 0; i < line.size();) {
    const auto d = unicode::decode(line, i);
    if (!unicode::is_space(d.codepoint)) return false;
    i += d.length;
  }
  return true;
}

// Sentence spans inside the paragraph region [begin, end).
std::vector<Span> split_sentences(std::string_view text, std::size_t begin, std::size_t end,
                                  const LanguageProfile& profile) {
  std::vector<Span> spans;
  std::size_t pos = begin;
  while (pos < end) {
    while (pos < end) {
      const auto d = unicode::decode(text, pos);
      if (!unicode::is_space(d.codepoint)) break;
      pos += d.length;
    }
    if (pos >= end) break;

    const std::size_t start = pos;
    std::size_t last_visible_end = pos;
    bool closed = false;
    while (pos < end) {
      if (std::size_t len = match_terminator(text, pos, profile.sentence_terminators); len > 0) {
        std::size_t stop = pos + len;
        // Absorb repeated terminators ("?!", "...") and closing quotes.
        while (stop < end) {
          if (std::size_t more = match_terminator(text, stop, profile.sentence_terminators)) {
            stop += more;
            continue;
          }
          const auto d = unicode::decode(text, stop);
          if (!is_closer(d.codepoint)) break;
          stop += d.length;
        }
        pos = stop;
        last_visible_end = stop;
        if (stop >= end || unicode::is_space(unicode::decode(text, stop).codepoint)) {
          closed = true;
          break;
        }
        continue;
      }
      const auto d = unicode::decode(text, pos);
      pos += d.length;
      if (!unicode::is_space(d.codepoint)) last_visible_end = pos;
    }
    spans.push_back({start, closed ? pos : last_visible_end});
  }
  return spans;
}

void replace_all(std::u32string& s, const std::u32string& from, const std::u32string& to) {
  if (from.empty()) return;
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::u32string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

}  // namespace

Token LanguageProfile::normalize(std::string_view token) const {
  std::u32string cps = unicode::to_u32(token);
  if (lowercase) {
    for (auto& c : cps) c = unicode::to_lower(c);
  }
  for (const auto& rule : normalization_rules) replace_all(cps, rule.from, rule.to);
  return unicode::to_utf8(cps);
}

bool LanguageProfile::is_stopword(std::string_view normalized_token) const {
  return stopwords.find(normalized_token) != stopwords.end();
}

void LanguageProfile::finalize() {
  if (sentence_terminators.empty() ||
      std::all_of(sentence_terminators.begin(), sentence_terminators.end(),
                  [](const std::string& t) { return t.empty(); })) {
    throw Error(ErrorCode::kInvalidArgument, "language profile '" + id + "' has no sentence terminators");
  }
  std::set<Token, std::less<>> normalized;
  for (const auto& w : stopwords) normalized.insert(normalize(w));
  stopwords = std::move(normalized);
}

std::string_view TokenizedDocument::sentence_text(std::size_t index) const {
  const Span& s = sentences.at(index).span;
  return std::string_view(raw_text).substr(s.begin, s.end - s.begin);
}

TokenSequence TokenizedDocument::paragraph_content(std::size_t paragraph) const {
  TokenSequence out;
  for (std::size_t s : paragraphs.at(paragraph).sentences) {
    const auto& ct = sentences.at(s).content_tokens;
    out.insert(out.end(), ct.begin(), ct.end());
  }
  return out;
}

std::size_t TokenizedDocument::content_token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.content_tokens.size();
  return n;
}

TokenSequence tokenize(std::string_view text, const LanguageProfile& profile) {
  TokenSequence tokens;
  std::string current;
  const auto flush = [&] {
    if (!current.empty()) tokens.push_back(profile.normalize(current));
    current.clear();
  };
  for (std::size_t i = 0; i < text.size();) {
    const auto d = unicode::decode(text, i);
    if (unicode::is_word_char(d.codepoint)) {
      current.append(text.substr(i, d.length));
    } else if (d.codepoint == unicode::kZeroWidthNonJoiner && profile.join_zwnj && !current.empty() &&
               i + d.length < text.size() &&
               unicode::is_word_char(unicode::decode(text, i + d.length).codepoint)) {
      current.append(text.substr(i, d.length));
    } else {
      flush();
    }
    i += d.length;
  }
  flush();
  return tokens;
}

TokenSequence remove_stopwords(std::span<const Token> tokens, const LanguageProfile& profile) {
  TokenSequence out;
  for (const auto& t : tokens) {
    if (!profile.is_stopword(t)) out.push_back(t);
  }
  return out;
}

TokenizedDocument segment(std::string text, const LanguageProfile& profile) {
  if (is_blank(text)) throw Error(ErrorCode::kEmptyDocument, "document is empty or whitespace-only");

  TokenizedDocument doc;
  doc.language = profile.id;
  doc.raw_text = std::move(text);
  const std::string_view raw = doc.raw_text;

  // Paragraphs are maximal runs of non-blank lines.
  std::vector<Span> regions;
  std::size_t line_start = 0;
  bool open = false;
  Span region;
  while (line_start <= raw.size()) {
    std::size_t line_end = raw.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = raw.size();
    const bool blank = is_blank(raw.substr(line_start, line_end - line_start));
    if (!blank) {
      if (!open) region.begin = line_start, open = true;
      region.end = line_end;
    } else if (open) {
      regions.push_back(region);
      open = false;
    }
    if (line_end == raw.size()) break;
    line_start = line_end + 1;
  }
  if (open) regions.push_back(region);

  for (const Span& r : regions) {
    Paragraph paragraph;
    for (const Span& s : split_sentences(raw, r.begin, r.end, profile)) {
      Sentence sentence;
      sentence.span = s;
      sentence.tokens = tokenize(raw.substr(s.begin, s.end - s.begin), profile);
      sentence.content_tokens = remove_stopwords(sentence.tokens, profile);
      paragraph.sentences.push_back(doc.sentences.size());
      doc.sentences.push_back(std::move(sentence));
    }
    doc.paragraphs.push_back(std::move(paragraph));
  }
  return doc;
}

TokenizedDocument sub_document(const TokenizedDocument& document,
                               std::span<const std::size_t> paragraphs) {
  TokenizedDocument out;
  out.raw_text = document.raw_text;
  out.language = document.language;
  for (std::size_t p : paragraphs) {
    Paragraph paragraph;
    for (std::size_t s : document.paragraphs.at(p).sentences) {
      paragraph.sentences.push_back(out.sentences.size());
      out.sentences.push_back(document.sentences.at(s));
    }
    out.paragraphs.push_back(std::move(paragraph));
  }
  return out;
}

}  // namespace semrank
