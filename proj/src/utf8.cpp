#include "mtcompare/utf8.hpp"

namespace mtcompare::utf8 {

namespace {

// Length of the sequence starting at text[i] and its code point, or 0 when
// the sequence is invalid (overlong forms, surrogates and values past
// U+10FFFF included).
std::size_t decode_one(std::string_view text, std::size_t i, char32_t &cp) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    if (b0 < 0x80) {
        cp = b0;
        return 1;
    }
    std::size_t len = 0;
    char32_t min = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
        min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
        min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
        min = 0x10000;
    } else {
        return 0;
    }
    if (i + len > text.size()) return 0;
    for (std::size_t k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(text[i + k]);
        if ((b & 0xC0) != 0x80) return 0;
        cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
    return len;
}

} // namespace

std::optional<std::size_t> find_invalid(std::string_view text) {
    std::size_t i = 0;
    char32_t cp = 0;
    while (i < text.size()) {
        const std::size_t len = decode_one(text, i, cp);
        if (len == 0) return i;
        i += len;
    }
    return std::nullopt;
}

std::u32string decode(std::string_view text) {
    std::u32string out;
    out.reserve(text.size());
    std::size_t i = 0;
    char32_t cp = 0;
    while (i < text.size()) {
        const std::size_t len = decode_one(text, i, cp);
        if (len == 0) {
            out.push_back(U'�');
            ++i;
        } else {
            out.push_back(cp);
            i += len;
        }
    }
    return out;
}

} // namespace mtcompare::utf8
