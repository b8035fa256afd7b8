#include "lexsimp/utf8.hpp"

#include "lexsimp/error.hpp"

namespace lexsimp::utf8 {
namespace {

// Decodes one codepoint at `pos`, advancing it. Returns false on malformed input.
bool next(std::string_view s, std::size_t& pos, char32_t& out) noexcept {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  std::size_t len;
  char32_t cp;
  if (b0 < 0x80) {
    out = b0;
    ++pos;
    return true;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return false;
  }
  if (pos + len > s.size()) return false;
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) return false;
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
  out = cp;
  pos += len;
  return true;
}

// Byte offset of codepoint `index` (or s.size() when past the end).
std::size_t byte_offset(std::string_view s, std::size_t index) {
  std::size_t pos = 0;
  char32_t cp;
  for (std::size_t i = 0; i < index && pos < s.size(); ++i) {
    if (!next(s, pos, cp)) throw ValidationError("invalid UTF-8");
  }
  return pos;
}

}  // namespace

bool valid(std::string_view text) noexcept {
  std::size_t pos = 0;
  char32_t cp;
  while (pos < text.size()) {
    if (!next(text, pos, cp)) return false;
  }
  return true;
}

std::u32string decode(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  char32_t cp;
  while (pos < text.size()) {
    if (!next(text, pos, cp)) throw ValidationError("invalid UTF-8");
    out.push_back(cp);
  }
  return out;
}

std::string encode(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

std::string encode(std::u32string_view cps) {
  std::string out;
  for (char32_t cp : cps) out += encode(cp);
  return out;
}

std::size_t length(std::string_view text) {
  std::size_t n = 0;
  std::size_t pos = 0;
  char32_t cp;
  while (pos < text.size()) {
    if (!next(text, pos, cp)) throw ValidationError("invalid UTF-8");
    ++n;
  }
  return n;
}

std::vector<std::string> chars(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  char32_t cp;
  while (pos < text.size()) {
    const std::size_t start = pos;
    if (!next(text, pos, cp)) throw ValidationError("invalid UTF-8");
    out.emplace_back(text.substr(start, pos - start));
  }
  return out;
}

std::string substr(std::string_view text, std::size_t offset, std::size_t count) {
  const std::size_t begin = byte_offset(text, offset);
  const std::size_t end = begin + byte_offset(text.substr(begin), count);
  return std::string(text.substr(begin, end - begin));
}

std::string splice(std::string_view text, std::size_t offset, std::size_t count,
                   std::string_view replacement) {
  const std::size_t begin = byte_offset(text, offset);
  const std::size_t end = begin + byte_offset(text.substr(begin), count);
  std::string out;
  out.reserve(text.size() + replacement.size());
  out.append(text.substr(0, begin));
  out.append(replacement);
  out.append(text.substr(end));
  return out;
}

bool is_whitespace(char32_t cp) noexcept {
  switch (cp) {
    case U' ': case U'\t': case U'\n': case U'\r': case U'\v': case U'\f':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_cjk(char32_t cp) noexcept {
  return (cp >= 0x4E00 && cp <= 0x9FFF) ||    // unified ideographs
         (cp >= 0x3400 && cp <= 0x4DBF) ||    // extension A
         (cp >= 0x20000 && cp <= 0x3134F) ||  // extensions B-G
         (cp >= 0xF900 && cp <= 0xFAFF) ||    // compatibility ideographs
         (cp >= 0x3001 && cp <= 0x303F) ||    // CJK symbols and punctuation
         (cp >= 0xFF01 && cp <= 0xFFEF);      // full-width forms
}

}  // namespace lexsimp::utf8
