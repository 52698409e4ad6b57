// Shared test helpers.
#pragma once

#include "llab/thompson.hpp"

#include <random>
#include <vector>

namespace testing {

inline llab::Dyadic dy(long num, long exp) { return llab::Dyadic::normalize(mpz_class(num), exp); }

// Random dyadic in [lo, hi] with denominator 2^bits.
inline llab::Dyadic random_dyadic(std::mt19937_64& rng, const llab::Dyadic& lo, const llab::Dyadic& hi, long bits = 10) {
  llab::Dyadic span = hi - lo;
  long steps = 1L << bits;
  long i = static_cast<long>(rng() % static_cast<unsigned long>(steps + 1));
  return lo + span * dy(i, bits);
}

inline std::string random_letters(std::mt19937_64& rng, int len, const char* alphabet = "aAbB") {
  std::string w;
  for (int i = 0; i < len; ++i) w += alphabet[rng() % 4];
  return w;
}

// Element of F on [0,1] from a random word in x0, x1.
inline llab::PLMap random_f(std::mt19937_64& rng, int len) { return llab::eval_f_word(random_letters(rng, len)); }

// A commutator of random elements, so it lies in F'.
inline llab::PLMap random_f_prime(std::mt19937_64& rng, int len) {
  return llab::commutator(random_f(rng, len), random_f(rng, len));
}

}  // namespace testing
