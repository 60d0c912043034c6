#pragma once

#include "ttrose/family.hpp"

// A fixed full word for rank r: 23322 for r = 3, a seeded sample otherwise.
inline ttrose::Word some_full_word(int r) {
  if (r == 3) return ttrose::parse_word("23322");
  return ttrose::sample_full_words(r, r == 4 ? 12 : 30, 1, 77).front();
}

inline ttrose::Word some_wrapped_word(int r) { return ttrose::wrap_word(r, some_full_word(r)); }
