#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace semrank {

using Token = std::string;
using TokenSequence = std::vector<Token>;

// Ordered code-point rewrite applied to each token before matching
// stopwords, e.g. Arabic Yeh -> Persian Yeh.
struct NormalizationRule {
  std::u32string from;
  std::u32string to;
};

// What a "word" is for one language. Tokens are maximal runs of Unicode
// letters and digits; when `join_zwnj` is set a zero-width non-joiner
// between two word characters stays inside the token (Persian half-space).
struct LanguageProfile {
  std::string id = "en";
  std::vector<std::string> sentence_terminators = {".", "!", "?", "؟", "۔", "…"};
  std::set<Token, std::less<>> stopwords;
  bool lowercase = true;
  bool join_zwnj = true;
  std::vector<NormalizationRule> normalization_rules;

  // Applies lowercasing and the normalization rules to a single token.
  Token normalize(std::string_view token) const;
  bool is_stopword(std::string_view normalized_token) const;
  // Re-normalizes every stopword in place and checks the terminator set.
  void finalize();
};

// Reads a profile from a UTF-8 key-value file:
//
//   id = fa
//   terminators = . ! ? ؟ ۔ …
//   lowercase = false
//   join_zwnj = true
//   stopwords = ../stopwords/fa.txt     (relative to the profile file)
//   map = U+064A U+06CC                 (repeatable; literal text or U+XXXX)
//
// Blank lines and lines starting with '#' are ignored.
LanguageProfile load_language_profile(const std::filesystem::path& path);

// One token per line, UTF-8; blank lines and '#' comments skipped.
std::vector<Token> load_stopwords(const std::filesystem::path& path);

// Resolves the data directory holding profiles/ and stopwords/:
// $SEMRANK_DATA_DIR, then the source tree, then the install prefix.
std::filesystem::path default_data_dir();

// Loads `<data_dir>/profiles/<id>.conf`.
LanguageProfile builtin_profile(std::string_view id,
                                const std::filesystem::path& data_dir = default_data_dir());

struct Span {
  std::size_t begin = 0;  // UTF-8 byte offsets into raw_text, half-open
  std::size_t end = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

struct Sentence {
  Span span;
  TokenSequence tokens;
  TokenSequence content_tokens;  // tokens minus stopwords, order preserved

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct Paragraph {
  std::vector<std::size_t> sentences;

  friend bool operator==(const Paragraph&, const Paragraph&) = default;
};

struct TokenizedDocument {
  std::string raw_text;
  std::vector<Paragraph> paragraphs;
  std::vector<Sentence> sentences;
  std::string language;

  std::string_view sentence_text(std::size_t index) const;
  // Content tokens of every sentence in the paragraph, concatenated.
  TokenSequence paragraph_content(std::size_t paragraph) const;
  std::size_t content_token_count() const;

  friend bool operator==(const TokenizedDocument&, const TokenizedDocument&) = default;
};

// Splits `text` into paragraphs (separated by blank lines) and sentences
// (a terminator run followed by whitespace or the paragraph end). Throws
// Error(kEmptyDocument) for empty or whitespace-only input.
TokenizedDocument segment(std::string text, const LanguageProfile& profile);

TokenSequence tokenize(std::string_view text, const LanguageProfile& profile);

TokenSequence remove_stopwords(std::span<const Token> tokens, const LanguageProfile& profile);

// Builds a document that keeps only the listed paragraphs (renumbered in
// the given order). Spans still refer to the original raw_text.
TokenizedDocument sub_document(const TokenizedDocument& document,
                               std::span<const std::size_t> paragraphs);

}  // namespace semrank
