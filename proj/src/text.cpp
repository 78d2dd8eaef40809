#include "ocraug/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "ocraug/errors.hpp"

namespace ocraug {

std::u32string nfc_codepoints(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error(std::string("ICU NFC unavailable: ") + u_errorName(status));
  const icu::UnicodeString src =
      icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  const icu::UnicodeString norm = nfc->normalize(src, status);
  if (U_FAILURE(status)) throw Error(std::string("NFC normalisation failed: ") + u_errorName(status));
  std::u32string out;
  out.reserve(static_cast<std::size_t>(norm.length()));
  for (int32_t i = 0; i < norm.length();) {
    const UChar32 c = norm.char32At(i);
    out.push_back(static_cast<char32_t>(c));
    i += U16_LENGTH(c);
  }
  return out;
}

std::vector<std::u32string> tokenize_words(std::string_view utf8) {
  std::vector<std::u32string> words;
  std::u32string current;
  for (char32_t c : nfc_codepoints(utf8)) {
    if (u_isUWhiteSpace(static_cast<UChar32>(c))) {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

}  // namespace ocraug
