// Piecewise-linear homeomorphisms with dyadic breakpoints and power-of-two slopes.
#pragma once

#include "llab/dyadic.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace llab {

// Library errors carry a short machine-readable kind ("OutOfDomain", ...).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

struct Knot {
  Dyadic x, y;
  friend bool operator==(const Knot&, const Knot&) = default;
};

// Closed interval with dyadic endpoints.
struct DInterval {
  Dyadic lo, hi;
  friend bool operator==(const DInterval&, const DInterval&) = default;
  bool contains(const Dyadic& t) const { return lo <= t && t <= hi; }
  Dyadic length() const { return hi - lo; }
};

// Interval with rational endpoints; fixed points of PL maps need not be dyadic.
struct QInterval {
  mpq_class lo, hi;
  friend bool operator==(const QInterval& a, const QInterval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

std::string qstr(const mpq_class& q);

// Exponent s with b = 2^s * a, if the ratio is a power of two.
std::optional<long> log2_ratio(const Dyadic& a, const Dyadic& b);

class PLMap {
 public:
  enum class Kind { interval, line };

  // Identity of the line.
  PLMap() = default;
  static PLMap identity_line() { return PLMap(); }
  static PLMap identity_on(const DInterval& I);
  // Knots must include both endpoints of the domain for interval maps.
  static PLMap from_knots(Kind kind, std::vector<Knot> knots);
  // Single linear piece on I through (I.lo, y0) with slope 2^s.
  static PLMap linear(const DInterval& I, const Dyadic& y0, long s);

  Kind kind() const { return kind_; }
  bool on_line() const { return kind_ == Kind::line; }
  const std::vector<Knot>& knots() const { return knots_; }
  DInterval domain() const;  // interval maps only
  DInterval image() const;   // interval maps only

  Dyadic operator()(const Dyadic& x) const { return eval(x); }
  Dyadic eval(const Dyadic& x) const;
  mpq_class eval_q(const mpq_class& x) const;
  Dyadic eval_inv(const Dyadic& y) const;
  // Slope exponent on the piece to the right (or left) of x.
  long slope_right(const Dyadic& x) const;
  long slope_left(const Dyadic& x) const;

  bool is_identity() const;
  // Structural equality after normalisation (which every constructor applies).
  friend bool operator==(const PLMap& a, const PLMap& b) {
    return a.kind_ == b.kind_ && a.knots_ == b.knots_;
  }

  // Checks the homeomorphism invariants; returns an empty string when valid.
  std::string validate() const;

  friend PLMap compose(const PLMap& f, const PLMap& g);

 private:
  void normalize();
  size_t piece_index(const Dyadic& x) const;

  Kind kind_ = Kind::line;
  std::vector<Knot> knots_;
  std::vector<long> slopes_;  // slopes_[i] holds between knots i and i+1
};

// x -> (x f) g.
PLMap compose(const PLMap& f, const PLMap& g);
PLMap invert(const PLMap& f);
// Conjugate by x -> x + t.
PLMap translate(const PLMap& f, const Dyadic& t);
// iota_I f iota_I, where iota_I reverses I.
PLMap flip_conjugate(const PLMap& f, const DInterval& I);
// Restriction of f to I (an interval map).
PLMap restrict_to(const PLMap& f, const DInterval& I);
// Line map equal to f on its domain and the identity elsewhere; f must fix its endpoints.
PLMap extend_to_line(const PLMap& f);

// Maximal open intervals on which f moves points.
std::vector<QInterval> support(const PLMap& f);
// Fix(f) ∩ I as closed intervals (degenerate intervals for isolated points).
std::vector<QInterval> fixed_points_in(const PLMap& f, const DInterval& I);
// Smallest closed interval containing the support; nullopt for the identity.
std::optional<QInterval> support_hull(const PLMap& f);
// Whether f restricted to I is the identity.
bool identity_on(const PLMap& f, const DInterval& I);
// Whether f is linear (a single piece) on I.
bool linear_on(const PLMap& f, const DInterval& I);
// Every knot x-coordinate in the half-open sense used by pieces.
std::vector<Dyadic> breakpoints(const PLMap& f);

}  // namespace llab
