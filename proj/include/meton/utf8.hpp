#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "meton/error.hpp"

// Minimal UTF-8 helpers. All public character offsets in this project are
// Unicode scalar-value indices, not byte indices; these helpers translate
// between the two.

namespace meton::utf8 {

inline bool is_continuation(unsigned char b) { return (b & 0xC0) == 0x80; }

// Number of Unicode scalar values in s. Malformed bytes count as one each.
inline std::size_t length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char b : s)
    if (!is_continuation(b)) ++n;
  return n;
}

// Byte offset of the cp-th scalar value (cp may equal length(s) -> s.size()).
inline std::size_t byte_offset(std::string_view s, std::size_t cp) {
  std::size_t seen = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!is_continuation(static_cast<unsigned char>(s[i]))) {
      if (seen == cp) return i;
      ++seen;
    }
  }
  if (seen == cp) return s.size();
  throw ValidationError("utf8: offset " + std::to_string(cp) +
                        " past end of string of length " + std::to_string(seen));
}

// Substring by scalar-value range [start, end).
inline std::string slice(std::string_view s, std::size_t start, std::size_t end) {
  std::size_t b0 = byte_offset(s, start);
  std::size_t b1 = byte_offset(s, end);
  return std::string(s.substr(b0, b1 - b0));
}

// ASCII-only case folding; non-ASCII scalars pass through unchanged so the
// fold never changes the scalar count.
inline std::string fold(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

inline bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Whitespace-delimited word count (the document-length convention used by
// corpus statistics).
inline std::size_t word_count(std::string_view s) {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : s) {
    if (is_ascii_space(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++n;
    }
  }
  return n;
}

}  // namespace meton::utf8
