// Quasi-periodic labellings of (1/2)Z by a, a^-1 (integers) and b, b^-1 (half-integers).
#pragma once

#include "llab/dyadic.hpp"

#include <mutex>
#include <string>
#include <vector>

namespace llab {

enum class Letter : char { a = 'a', a_inv = 'A', b = 'b', b_inv = 'B' };

char to_char(Letter l);
Letter letter_from_char(char c);
Letter inverse(Letter l);
bool is_a_type(Letter l);

// A finite run of consecutive letters. Text form uses a A b B.
struct BlockWord {
  std::string letters;

  // Whitespace is ignored; throws ParseError on other characters or broken alternation.
  static BlockWord parse(const std::string& s);
  size_t size() const { return letters.size(); }
  Letter at(size_t i) const { return letter_from_char(letters[i]); }
  bool starts_integer() const { return !letters.empty() && is_a_type(at(0)); }
  BlockWord inverse() const;
  friend bool operator==(const BlockWord&, const BlockWord&) = default;
  friend auto operator<=>(const BlockWord&, const BlockWord&) = default;
};

// Limit of M_{k+1} = inv(M_k) b M_k b^-1 inv(M_k) with M_0 the seed. The seed's
// central a-type letter sits at 0.
class Labelling {
 public:
  static Labelling from_permissible(const BlockWord& seed);

  const BlockWord& seed() const { return seed_; }
  Letter letter_at(HalfInteger t) const;
  // Letters at from, from + 1/2, ..., to.
  BlockWord window(HalfInteger from, HalfInteger to) const;

  // Length of M_k and the index of coordinate 0 inside it.
  long level_length(int k) const;
  long level_center(int k) const;
  // M_k spelled out; meant for small k.
  std::string level(int k) const;
  // Least k with t inside M_k.
  int level_covering(HalfInteger t) const;

  Labelling(const Labelling& o) : seed_(o.seed_), lengths_(o.lengths_), centers_(o.centers_) {}
  Labelling& operator=(const Labelling& o) {
    seed_ = o.seed_;
    lengths_ = o.lengths_;
    centers_ = o.centers_;
    std::lock_guard lock(mu_);
    cache_.clear();
    return *this;
  }

 private:
  Labelling() = default;
  char letter_in_level(int k, long i) const;

  BlockWord seed_;
  std::vector<long> lengths_, centers_;
  mutable std::mutex mu_;
  mutable std::vector<std::string> cache_;
};

// W(x, n): the 2n+1 letters centred at the middle of the cell of x.
BlockWord word_at(const Labelling& rho, const Dyadic& x, long n);
// W(J, n1, n2) for J = [lo, hi] with integer endpoints.
BlockWord word_of_interval(const Labelling& rho, long lo, long hi, long n1, long n2);

// Every block of m letters occurring in the labelling, sorted.
std::vector<BlockWord> occurring_words(const Labelling& rho, long m);
bool occurs(const Labelling& rho, const BlockWord& X);
// Window length (in letters) that always contains X.
long recurrence_bound(const Labelling& rho, const BlockWord& X);
// Coordinate of the first letter of an occurrence of inv(X), closest to 0.
HalfInteger find_inverse_block(const Labelling& rho, const BlockWord& X);

}  // namespace llab
