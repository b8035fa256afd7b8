#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lexsimp::utf8 {

/// True when `text` is well-formed UTF-8 (no overlongs, surrogates or
/// codepoints above U+10FFFF).
bool valid(std::string_view text) noexcept;

/// Decodes well-formed UTF-8; throws ValidationError otherwise.
std::u32string decode(std::string_view text);
std::string encode(char32_t cp);
std::string encode(std::u32string_view cps);

/// Number of codepoints.
std::size_t length(std::string_view text);

/// One string per codepoint.
std::vector<std::string> chars(std::string_view text);

/// Codepoint-indexed substring; `count` is clamped at the end of `text`.
std::string substr(std::string_view text, std::size_t offset, std::size_t count);

/// Replace `count` codepoints starting at codepoint `offset` with `replacement`.
std::string splice(std::string_view text, std::size_t offset, std::size_t count,
                   std::string_view replacement);

bool is_whitespace(char32_t cp) noexcept;

/// Han ideographs plus CJK punctuation and full-width forms; each of these is
/// a token on its own.
bool is_cjk(char32_t cp) noexcept;

}  // namespace lexsimp::utf8
