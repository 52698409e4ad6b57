// Exact dyadic rationals m/2^e and the cell geometry of the real line.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <memory>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace llab {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Value num / 2^exp with exp >= 0 and (exp == 0 or num odd).
// Numerators that fit a long are stored inline; larger ones go to GMP.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Dyadic(const mpz_class& v) { set_num(v); }

  // Any integer exponent; negative exp multiplies num by 2^-exp.
  static Dyadic normalize(mpz_class num, long exp);
  static Dyadic pow2(long z);

  mpz_class num() const { return big_ ? *big_ : mpz_class(v_); }
  // The numerator, when it fits a long.
  bool small_num(long& v) const {
    v = v_;
    return !big_;
  }
  long exp() const { return exp_; }
  bool is_integer() const { return exp_ == 0; }
  bool is_zero() const { return !big_ && v_ == 0; }
  int sign() const { return big_ ? sgn(*big_) : (v_ > 0) - (v_ < 0); }

  Dyadic operator-() const;
  Dyadic& operator+=(const Dyadic& o);
  Dyadic& operator-=(const Dyadic& o);
  Dyadic& operator*=(const Dyadic& o);
  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
  friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }
  friend Dyadic operator*(Dyadic a, const Dyadic& b) { return a *= b; }

  // Multiply by 2^z.
  Dyadic scaled(long z) const;
  Dyadic half() const { return scaled(-1); }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    if (a.exp_ != b.exp_ || !a.big_ != !b.big_) return false;
    return a.big_ ? *a.big_ == *b.big_ : a.v_ == b.v_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  mpz_class floor() const;
  mpz_class ceil() const;
  mpq_class to_mpq() const;
  double to_double() const;

  // "m/2^e", or "m" for integers.
  std::string str() const;
  static Dyadic parse(const std::string& s);

  // Returns the dyadic if q has a power-of-two denominator.
  static bool from_mpq(const mpq_class& q, Dyadic& out);

 private:
  long v_ = 0;
  long exp_ = 0;
  std::shared_ptr<const mpz_class> big_;  // immutable, so copies may share it

  void set_num(const mpz_class& n);
  bool set_small(__int128 r, long e);
};

std::ostream& operator<<(std::ostream& os, const Dyadic& d);

Dyadic abs(const Dyadic& d);
Dyadic min(const Dyadic& a, const Dyadic& b);
Dyadic max(const Dyadic& a, const Dyadic& b);

// Arithmetic dispatch used by the command line and tests.
enum class ArithOp { add, sub, mul };
Dyadic arith(ArithOp op, const Dyadic& x, const Dyadic& y);
std::strong_ordering cmp(const Dyadic& x, const Dyadic& y);

// A point of (1/2)Z stored as twice its value.
struct HalfInteger {
  long twice = 0;
  static HalfInteger from_dyadic(const Dyadic& d);
  Dyadic value() const { return Dyadic::normalize(mpz_class(twice), 1); }
  bool is_integer() const { return twice % 2 == 0; }
  friend auto operator<=>(const HalfInteger&, const HalfInteger&) = default;
};

// Cells are [n, n+1).
long cell_of(const Dyadic& x);
Dyadic iota(const Dyadic& x);

long to_long(const mpz_class& z);

}  // namespace llab
