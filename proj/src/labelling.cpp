#include "llab/labelling.hpp"

#include "llab/plmap.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace llab {

char to_char(Letter l) { return static_cast<char>(l); }

Letter letter_from_char(char c) {
  switch (c) {
    case 'a': return Letter::a;
    case 'A': return Letter::a_inv;
    case 'b': return Letter::b;
    case 'B': return Letter::b_inv;
  }
  throw ParseError(std::string("unknown letter '") + c + "'");
}

Letter inverse(Letter l) {
  switch (l) {
    case Letter::a: return Letter::a_inv;
    case Letter::a_inv: return Letter::a;
    case Letter::b: return Letter::b_inv;
    case Letter::b_inv: return Letter::b;
  }
  return l;
}

bool is_a_type(Letter l) { return l == Letter::a || l == Letter::a_inv; }

static char inv_char(char c) { return to_char(inverse(letter_from_char(c))); }

BlockWord BlockWord::parse(const std::string& s) {
  BlockWord w;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    letter_from_char(c);
    w.letters.push_back(c);
  }
  for (size_t i = 1; i < w.size(); ++i)
    if (is_a_type(w.at(i)) == is_a_type(w.at(i - 1)))
      throw ParseError("letters must alternate between a-type and b-type: '" + s + "'");
  return w;
}

BlockWord BlockWord::inverse() const {
  BlockWord w;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.push_back(inv_char(*it));
  return w;
}

Labelling Labelling::from_permissible(const BlockWord& seed) {
  size_t n = seed.size();
  if (n % 2 == 0) throw Error("NotPermissible", "seed must have odd length");
  for (size_t i = 0; i < n; ++i)
    if (is_a_type(seed.at(i)) != (i % 2 == 0))
      throw Error("NotPermissible", "seed must alternate starting and ending with a-type letters");
  Labelling rho;
  rho.seed_ = seed;
  long c = static_cast<long>((n - 1) / 2);
  if (c % 2) --c;
  long len = static_cast<long>(n);
  while (len < (1L << 60) / 4) {
    rho.lengths_.push_back(len);
    rho.centers_.push_back(c);
    c += len + 1;
    len = 3 * len + 2;
  }
  return rho;
}

long Labelling::level_length(int k) const { return lengths_.at(static_cast<size_t>(k)); }
long Labelling::level_center(int k) const { return centers_.at(static_cast<size_t>(k)); }

char Labelling::letter_in_level(int k, long i) const {
  // inv(M) b M B inv(M)
  while (k > 0) {
    long L = lengths_[static_cast<size_t>(k - 1)];
    --k;
    if (i < L) return inv_char(letter_in_level(k, L - 1 - i));
    if (i == L) return 'b';
    if (i <= 2 * L) {
      i -= L + 1;
      continue;
    }
    if (i == 2 * L + 1) return 'B';
    return inv_char(letter_in_level(k, L - 1 - (i - 2 * L - 2)));
  }
  return seed_.letters[static_cast<size_t>(i)];
}

int Labelling::level_covering(HalfInteger t) const {
  for (size_t k = 0; k < lengths_.size(); ++k) {
    long i = centers_[k] + t.twice;
    if (i >= 0 && i < lengths_[k]) return static_cast<int>(k);
  }
  throw std::out_of_range("coordinate too far from 0");
}

Letter Labelling::letter_at(HalfInteger t) const {
  int k = level_covering(t);
  return letter_from_char(letter_in_level(k, centers_[static_cast<size_t>(k)] + t.twice));
}

BlockWord Labelling::window(HalfInteger from, HalfInteger to) const {
  BlockWord w;
  if (to < from) return w;
  int k = std::max(level_covering(from), level_covering(to));
  long c = centers_[static_cast<size_t>(k)];
  if (lengths_[static_cast<size_t>(k)] < 4'000'000) {
    std::string lv = level(k);
    w.letters = lv.substr(static_cast<size_t>(c + from.twice), static_cast<size_t>(to.twice - from.twice + 1));
    return w;
  }
  for (long i = from.twice; i <= to.twice; ++i) w.letters.push_back(letter_in_level(k, c + i));
  return w;
}

std::string Labelling::level(int k) const {
  std::lock_guard lock(mu_);
  if (cache_.empty()) cache_.push_back(seed_.letters);
  while (static_cast<int>(cache_.size()) <= k) {
    const std::string& m = cache_.back();
    std::string inv = BlockWord{m}.inverse().letters;
    cache_.push_back(inv + "b" + m + "B" + inv);
  }
  return cache_[static_cast<size_t>(k)];
}

BlockWord word_at(const Labelling& rho, const Dyadic& x, long n) {
  if (n < 0) throw std::invalid_argument("negative word radius");
  long y2 = 2 * cell_of(x) + 1;  // twice the cell centre
  return rho.window({y2 - n}, {y2 + n});
}

BlockWord word_of_interval(const Labelling& rho, long lo, long hi, long n1, long n2) {
  if (hi <= lo) throw Error("EmptyInterval", "interval needs positive integer length");
  return rho.window({2 * lo + 1 - n1}, {2 * hi - 1 + n2});
}

// Least level whose length reaches m.
static int level_at_least(const Labelling& rho, long m) {
  int j = 0;
  while (rho.level_length(j) < m) ++j;
  return j;
}

std::vector<BlockWord> occurring_words(const Labelling& rho, long m) {
  if (m <= 0) return {};
  std::string big = rho.level(level_at_least(rho, m) + 2);
  std::set<std::string> seen;
  for (size_t i = 0; i + static_cast<size_t>(m) <= big.size(); ++i) seen.insert(big.substr(i, static_cast<size_t>(m)));
  std::vector<BlockWord> out;
  for (const auto& s : seen) out.push_back(BlockWord{s});
  return out;
}

bool occurs(const Labelling& rho, const BlockWord& X) {
  if (X.size() == 0) return true;
  std::string big = rho.level(level_at_least(rho, static_cast<long>(X.size())) + 2);
  return big.find(X.letters) != std::string::npos;
}

long recurrence_bound(const Labelling& rho, const BlockWord& X) {
  if (!occurs(rho, X)) throw Error("BlockDoesNotOccur", "'" + X.letters + "' does not occur");
  std::string inv = X.inverse().letters;
  for (int k = 0;; ++k) {
    std::string m = rho.level(k);
    if (m.find(X.letters) != std::string::npos || m.find(inv) != std::string::npos)
      return 2 * (rho.level_length(k + 1) + 1);
  }
}

HalfInteger find_inverse_block(const Labelling& rho, const BlockWord& X) {
  if (!occurs(rho, X)) throw Error("BlockDoesNotOccur", "'" + X.letters + "' does not occur");
  std::string inv = X.inverse().letters;
  int k = level_at_least(rho, static_cast<long>(X.size())) + 2;
  std::string big = rho.level(k);
  long c = rho.level_center(k);
  bool found = false;
  long best = 0;
  for (size_t p = big.find(inv); p != std::string::npos; p = big.find(inv, p + 1)) {
    long t = static_cast<long>(p) - c;
    if (!found || std::labs(t) < std::labs(best) || (std::labs(t) == std::labs(best) && t > best)) best = t;
    found = true;
  }
  if (!found) throw std::logic_error("inverse block missing from expansion");
  return {best};
}

}  // namespace llab
