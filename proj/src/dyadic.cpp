#include "llab/dyadic.hpp"

#include <cctype>
#include <climits>

namespace llab {

void Dyadic::set_num(const mpz_class& n) {
  if (n.fits_slong_p()) {
    v_ = n.get_si();
    big_.reset();
  } else {
    v_ = 0;
    big_ = std::make_shared<const mpz_class>(n);
  }
}

// num * 2^-e from a 128-bit numerator; false if it does not fit a long afterwards.
bool Dyadic::set_small(__int128 r, long e) {
  if (r == 0) {
    v_ = 0;
    exp_ = 0;
    big_.reset();
    return true;
  }
  if (e > 0) {
    auto lo = static_cast<unsigned long long>(r);
    long tz = lo ? __builtin_ctzll(lo) : 64;
    long cut = tz < e ? tz : e;
    r >>= cut;
    e -= cut;
  }
  if (e < 0) {
    if (e < -60) return false;
    r <<= -e;
    e = 0;
  }
  if (r > LONG_MAX || r < LONG_MIN) return false;
  v_ = static_cast<long>(r);
  exp_ = e;
  big_.reset();
  return true;
}

Dyadic Dyadic::normalize(mpz_class num, long exp) {
  Dyadic d;
  if (num == 0) return d;
  if (num.fits_slong_p() && exp >= -60 && d.set_small(num.get_si(), exp)) return d;
  if (exp < 0) {
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(-exp));
    exp = 0;
  }
  if (exp > 0) {
    unsigned long tz = mpz_scan1(num.get_mpz_t(), 0);
    unsigned long cut = tz < static_cast<unsigned long>(exp) ? tz : static_cast<unsigned long>(exp);
    if (cut > 0) {
      mpz_fdiv_q_2exp(num.get_mpz_t(), num.get_mpz_t(), cut);
      exp -= static_cast<long>(cut);
    }
  }
  d.set_num(num);
  d.exp_ = exp;
  return d;
}

Dyadic Dyadic::pow2(long z) { return normalize(mpz_class(1), -z); }

Dyadic Dyadic::operator-() const {
  if (!big_ && v_ != LONG_MIN) {
    Dyadic d = *this;
    d.v_ = -v_;
    return d;
  }
  return normalize(-num(), exp_);
}

using i128 = __int128;

static void align(const Dyadic& a, const Dyadic& b, mpz_class& x, mpz_class& y, long& e) {
  e = a.exp() > b.exp() ? a.exp() : b.exp();
  x = a.num();
  y = b.num();
  if (e > a.exp()) mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), e - a.exp());
  if (e > b.exp()) mpz_mul_2exp(y.get_mpz_t(), y.get_mpz_t(), e - b.exp());
}

static bool small_align(const Dyadic& a, const Dyadic& b, i128& x, i128& y, long& e) {
  long u, v;
  if (!a.small_num(u) || !b.small_num(v)) return false;
  e = a.exp() > b.exp() ? a.exp() : b.exp();
  long sa = e - a.exp(), sb = e - b.exp();
  if (sa > 62 || sb > 62) return false;
  x = static_cast<i128>(u) << sa;
  y = static_cast<i128>(v) << sb;
  return true;
}

Dyadic& Dyadic::operator+=(const Dyadic& o) {
  i128 a, b;
  long e;
  if (small_align(*this, o, a, b, e) && set_small(a + b, e)) return *this;
  mpz_class x, y;
  align(*this, o, x, y, e);
  *this = normalize(x + y, e);
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& o) {
  i128 a, b;
  long e;
  if (small_align(*this, o, a, b, e) && set_small(a - b, e)) return *this;
  mpz_class x, y;
  align(*this, o, x, y, e);
  *this = normalize(x - y, e);
  return *this;
}

Dyadic& Dyadic::operator*=(const Dyadic& o) {
  long u, v;
  if (small_num(u) && o.small_num(v) && set_small(static_cast<i128>(u) * v, exp_ + o.exp_)) return *this;
  *this = normalize(num() * o.num(), exp_ + o.exp_);
  return *this;
}

Dyadic Dyadic::scaled(long z) const {
  long u;
  Dyadic d;
  if (z < 60 && small_num(u) && d.set_small(u, exp_ - z)) return d;
  return normalize(num(), exp_ - z);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  int c;
  i128 p, q;
  long e, u, v;
  if (a.exp() == b.exp() && a.small_num(u) && b.small_num(v)) {
    c = (u > v) - (u < v);
  } else if (small_align(a, b, p, q, e)) {
    c = (p > q) - (p < q);
  } else {
    mpz_class x, y;
    align(a, b, x, y, e);
    c = cmp(x, y);
  }
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

mpz_class Dyadic::floor() const {
  long u;
  if (small_num(u)) {
    if (exp_ == 0) return mpz_class(u);
    if (exp_ >= 63) return mpz_class(u < 0 ? -1L : 0L);
    return mpz_class(u >> exp_);
  }
  mpz_class r;
  mpz_fdiv_q_2exp(r.get_mpz_t(), big_->get_mpz_t(), exp_);
  return r;
}

mpz_class Dyadic::ceil() const {
  long u;
  if (small_num(u)) {
    if (exp_ == 0) return mpz_class(u);
    if (exp_ >= 63) return mpz_class(u > 0 ? 1L : 0L);
    return mpz_class(-((-u) >> exp_));
  }
  mpz_class r;
  mpz_cdiv_q_2exp(r.get_mpz_t(), big_->get_mpz_t(), exp_);
  return r;
}

mpq_class Dyadic::to_mpq() const {
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), exp_);
  mpq_class q(num(), den);
  q.canonicalize();
  return q;
}

double Dyadic::to_double() const { return to_mpq().get_d(); }

std::string Dyadic::str() const {
  if (exp_ == 0) return num().get_str();
  return num().get_str() + "/2^" + std::to_string(exp_);
}

Dyadic Dyadic::parse(const std::string& s) {
  auto bad = [&](const std::string& why) { return ParseError("dyadic '" + s + "': " + why); };
  size_t slash = s.find('/');
  std::string m = s.substr(0, slash);
  auto is_int = [](const std::string& t) {
    size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  if (!is_int(m)) throw bad("malformed numerator");
  mpz_class num(m[0] == '+' ? m.substr(1) : m);
  if (slash == std::string::npos) return Dyadic(num);
  std::string rest = s.substr(slash + 1);
  if (rest.size() < 3 || rest[0] != '2' || rest[1] != '^') throw bad("expected m/2^e");
  std::string es = rest.substr(2);
  if (!is_int(es) || es[0] == '-' || es[0] == '+') throw bad("malformed exponent");
  if (es.size() > 9) throw bad("exponent too large");
  long e = std::stol(es);
  Dyadic d = normalize(num, e);
  if (d.exp_ != e || d.num() != num) throw bad("not canonical, normalizes to " + d.str());
  return d;
}

bool Dyadic::from_mpq(const mpq_class& q, Dyadic& out) {
  const mpz_class& den = q.get_den();
  if (mpz_popcount(den.get_mpz_t()) != 1) return false;
  long e = static_cast<long>(mpz_scan1(den.get_mpz_t(), 0));
  out = normalize(q.get_num(), e);
  return true;
}

std::ostream& operator<<(std::ostream& os, const Dyadic& d) { return os << d.str(); }

Dyadic abs(const Dyadic& d) { return d.sign() < 0 ? -d : d; }
Dyadic min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
Dyadic max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

Dyadic arith(ArithOp op, const Dyadic& x, const Dyadic& y) {
  switch (op) {
    case ArithOp::add: return x + y;
    case ArithOp::sub: return x - y;
    case ArithOp::mul: return x * y;
  }
  return {};
}

std::strong_ordering cmp(const Dyadic& x, const Dyadic& y) { return x <=> y; }

long to_long(const mpz_class& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer out of range: " + z.get_str());
  return z.get_si();
}

HalfInteger HalfInteger::from_dyadic(const Dyadic& d) {
  if (d.exp() > 1) throw std::invalid_argument("not a half-integer: " + d.str());
  Dyadic t = d.scaled(1);
  return HalfInteger{to_long(t.num())};
}

long cell_of(const Dyadic& x) { return to_long(x.floor()); }

Dyadic iota(const Dyadic& x) {
  long n = cell_of(x);
  return Dyadic(2 * n + 1) - x;
}

}  // namespace llab
