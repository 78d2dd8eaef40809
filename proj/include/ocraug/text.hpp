#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ocraug {

// NFC-normalised Unicode scalar values of a UTF-8 string. Ill-formed
// sequences become U+FFFD.
std::u32string nfc_codepoints(std::string_view utf8);

// Words are maximal runs of non-whitespace code points (Unicode White_Space),
// computed after NFC normalisation. Punctuation stays attached.
std::vector<std::u32string> tokenize_words(std::string_view utf8);

}  // namespace ocraug
