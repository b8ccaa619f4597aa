#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace mtcompare::utf8 {

// Byte offset of the first invalid sequence, or nullopt if `text` is valid UTF-8.
std::optional<std::size_t> find_invalid(std::string_view text);

// Decode to code points. Invalid bytes are mapped to U+FFFD.
std::u32string decode(std::string_view text);

} // namespace mtcompare::utf8
