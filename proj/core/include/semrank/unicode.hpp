#pragma once

#include <cstddef>
#include <string>
#include <string_view>

// Minimal UTF-8 handling: decoding, a fixed letter/digit table covering the
// Latin, Greek, Cyrillic, Hebrew, Arabic-script, Indic and CJK blocks, and
// simple case folding for scripts with case.
namespace semrank::unicode {

inline constexpr char32_t kReplacement = 0xFFFD;
inline constexpr char32_t kZeroWidthNonJoiner = 0x200C;

struct Decoded {
  char32_t codepoint;
  std::size_t length;  // bytes consumed, >= 1
};

// Decodes the code point starting at `offset`. Invalid sequences yield
// U+FFFD and consume one byte.
Decoded decode(std::string_view text, std::size_t offset);

void append_utf8(std::string& out, char32_t codepoint);
std::u32string to_u32(std::string_view text);
std::string to_utf8(std::u32string_view text);

bool is_letter(char32_t c);  // includes combining marks
bool is_digit(char32_t c);
bool is_word_char(char32_t c);
bool is_space(char32_t c);

char32_t to_lower(char32_t c);

}  // namespace semrank::unicode
