#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace debatenet::utf8 {

// Decodes UTF-8 into code points. Invalid bytes decode to U+FFFD.
std::vector<char32_t> decode(std::string_view s);
std::string encode(char32_t cp);
std::string encode(const std::vector<char32_t>& cps);

bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
char32_t to_lower(char32_t cp);

// Number of code points in a UTF-8 string.
std::size_t length(std::string_view s);

}  // namespace debatenet::utf8
