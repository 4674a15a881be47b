#include "semrank/unicode.hpp"

#include <algorithm>
#include <array>
#include <iterator>

namespace semrank::unicode {
namespace {

struct Range {
  char32_t lo;
  char32_t hi;
};

// Sorted, non-overlapping. Letters and combining marks.
constexpr std::array kLetterRanges = {
    Range{0x0041, 0x005A}, Range{0x0061, 0x007A}, Range{0x00AA, 0x00AA},
    Range{0x00B5, 0x00B5}, Range{0x00BA, 0x00BA}, Range{0x00C0, 0x00D6},
    Range{0x00D8, 0x00F6}, Range{0x00F8, 0x02C1}, Range{0x02C6, 0x02D1},
    Range{0x02E0, 0x02E4}, Range{0x0300, 0x0374}, Range{0x0376, 0x0377},
    Range{0x037A, 0x037D}, Range{0x0386, 0x0386}, Range{0x0388, 0x03FF},
    Range{0x0400, 0x0481}, Range{0x0483, 0x052F}, Range{0x0531, 0x0556},
    Range{0x0561, 0x0587}, Range{0x0591, 0x05BD}, Range{0x05D0, 0x05EA},
    Range{0x05F0, 0x05F2}, Range{0x0610, 0x061A}, Range{0x0620, 0x065F},
    Range{0x066E, 0x06D3}, Range{0x06D5, 0x06DC}, Range{0x06DF, 0x06E8},
    Range{0x06EA, 0x06EF}, Range{0x06FA, 0x06FC}, Range{0x06FF, 0x06FF},
    Range{0x0750, 0x077F}, Range{0x08A0, 0x08C9}, Range{0x0900, 0x0963},
    Range{0x0971, 0x097F}, Range{0x0E01, 0x0E3A}, Range{0x0E40, 0x0E4E},
    Range{0x10A0, 0x10FF}, Range{0x1100, 0x11FF}, Range{0x1E00, 0x1FFF},
    Range{0x3041, 0x3096}, Range{0x30A1, 0x30FA}, Range{0x30FC, 0x30FF},
    Range{0x3131, 0x318E}, Range{0x3400, 0x4DBF}, Range{0x4E00, 0x9FFF},
    Range{0xAC00, 0xD7A3}, Range{0xFB50, 0xFD3D}, Range{0xFD50, 0xFDFB},
    Range{0xFE70, 0xFEFC},
};

constexpr std::array kDigitRanges = {
    Range{0x0030, 0x0039}, Range{0x0660, 0x0669}, Range{0x06F0, 0x06F9},
    Range{0x0966, 0x096F}, Range{0x0E50, 0x0E59},
};

template <std::size_t N>
bool in_ranges(const std::array<Range, N>& ranges, char32_t c) {
  auto it = std::upper_bound(ranges.begin(), ranges.end(), c,
                             [](char32_t v, const Range& r) { return v < r.lo; });
  if (it == ranges.begin()) return false;
  --it;
  return c <= it->hi;
}

}  // namespace

Decoded decode(std::string_view text, std::size_t offset) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  const unsigned char b0 = byte(offset);
  if (b0 < 0x80) return {b0, 1};

  std::size_t length = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((b0 & 0xE0) == 0xC0) {
    length = 2, cp = b0 & 0x1F, min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    length = 3, cp = b0 & 0x0F, min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    length = 4, cp = b0 & 0x07, min = 0x10000;
  } else {
    return {kReplacement, 1};
  }
  if (offset + length > text.size()) return {kReplacement, 1};
  for (std::size_t i = 1; i < length; ++i) {
    const unsigned char b = byte(offset + i);
    if ((b & 0xC0) != 0x80) return {kReplacement, 1};
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return {kReplacement, 1};
  return {cp, length};
}

void append_utf8(std::string& out, char32_t c) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

std::u32string to_u32(std::string_view text) {
  std::u32string out;
  for (std::size_t i = 0; i < text.size();) {
    const auto d = decode(text, i);
    out.push_back(d.codepoint);
    i += d.length;
  }
  return out;
}

std::string to_utf8(std::u32string_view text) {
  std::string out;
  for (char32_t c : text) append_utf8(out, c);
  return out;
}

bool is_letter(char32_t c) { return in_ranges(kLetterRanges, c); }
bool is_digit(char32_t c) { return in_ranges(kDigitRanges, c); }
bool is_word_char(char32_t c) { return is_letter(c) || is_digit(c); }

bool is_space(char32_t c) {
  switch (c) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

char32_t to_lower(char32_t c) {
  if (c < 0x80) return (c >= 'A' && c <= 'Z') ? c + 0x20 : c;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
  if (c >= 0x100 && c <= 0x17F) {
    if (c == 0x130) return 'i';
    if (c == 0x178) return 0xFF;
    const bool even_upper = (c <= 0x137) || (c >= 0x14A && c <= 0x177);
    const bool odd_upper = (c >= 0x139 && c <= 0x148) || (c >= 0x179 && c <= 0x17E);
    if (even_upper && c % 2 == 0) return c + 1;
    if (odd_upper && c % 2 == 1) return c + 1;
    return c;
  }
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 0x20;
  if (c >= 0x400 && c <= 0x40F) return c + 0x50;
  if (c >= 0x410 && c <= 0x42F) return c + 0x20;
  return c;
}

}  // namespace semrank::unicode
