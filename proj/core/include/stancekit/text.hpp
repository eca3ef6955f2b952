#ifndef STANCEKIT_TEXT_HPP
#define STANCEKIT_TEXT_HPP

#include <string>
#include <string_view>
#include <vector>

namespace stancekit::text {

/// ASCII lowercase; bytes outside A-Z (including UTF-8 continuation bytes) pass through.
std::string ascii_lower(std::string_view s);

bool is_word_byte(unsigned char c);

/// Case-insensitive (ASCII) substring search.
bool contains_icase(std::string_view haystack, std::string_view needle);

/// Splits on whitespace and ASCII punctuation other than '#', '@' and '_'.
std::vector<std::string_view> tokens(std::string_view s);

/// Splits on whitespace and all ASCII punctuation.
std::vector<std::string_view> bare_tokens(std::string_view s);

/// Hashtags as written in the text ('#' stripped, case preserved), in order of occurrence.
std::vector<std::string> extract_hashtags(std::string_view s);

/// http:// and https:// tokens in order of occurrence.
std::vector<std::string> extract_urls(std::string_view s);

std::string_view trim(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

} // namespace stancekit::text

#endif
