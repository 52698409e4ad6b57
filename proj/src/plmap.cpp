#include "llab/plmap.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>

namespace llab {

std::string qstr(const mpq_class& q) {
  Dyadic d;
  if (Dyadic::from_mpq(q, d)) return d.str();
  return q.get_str();
}

std::optional<long> log2_ratio(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero() || b.is_zero() || a.sign() != b.sign()) return std::nullopt;
  long sa, sb;
  if (a.small_num(sa) && b.small_num(sb) && sa != LONG_MIN && sb != LONG_MIN) {
    // normalized numerators are odd unless the value is an integer
    unsigned long na = std::labs(sa), nb = std::labs(sb);
    long ta = __builtin_ctzl(na), tb = __builtin_ctzl(nb);
    if ((na >> ta) != (nb >> tb)) return std::nullopt;
    return (tb - b.exp()) - (ta - a.exp());
  }
  mpz_class na = abs(a.num()), nb = abs(b.num());
  long ta = static_cast<long>(mpz_scan1(na.get_mpz_t(), 0));
  long tb = static_cast<long>(mpz_scan1(nb.get_mpz_t(), 0));
  mpz_class oa, ob;
  mpz_fdiv_q_2exp(oa.get_mpz_t(), na.get_mpz_t(), ta);
  mpz_fdiv_q_2exp(ob.get_mpz_t(), nb.get_mpz_t(), tb);
  if (oa != ob) return std::nullopt;
  return (tb - b.exp()) - (ta - a.exp());
}

PLMap PLMap::identity_on(const DInterval& I) {
  return from_knots(Kind::interval, {{I.lo, I.lo}, {I.hi, I.hi}});
}

PLMap PLMap::from_knots(Kind kind, std::vector<Knot> knots) {
  PLMap f;
  f.kind_ = kind;
  f.knots_ = std::move(knots);
  std::string err = f.validate();
  if (!err.empty()) throw Error("InvalidMap", err);
  f.normalize();
  return f;
}

PLMap PLMap::linear(const DInterval& I, const Dyadic& y0, long s) {
  return from_knots(Kind::interval, {{I.lo, y0}, {I.hi, y0 + I.length().scaled(s)}});
}

std::string PLMap::validate() const {
  if (kind_ == Kind::interval && knots_.size() < 2) return "interval map needs two knots";
  for (size_t i = 0; i + 1 < knots_.size(); ++i) {
    const Knot& a = knots_[i];
    const Knot& b = knots_[i + 1];
    if (!(a.x < b.x)) return "breakpoints not increasing at " + b.x.str();
    if (!(a.y < b.y)) return "map not increasing at " + b.x.str();
    if (!log2_ratio(b.x - a.x, b.y - a.y))
      return "slope on [" + a.x.str() + ", " + b.x.str() + "] is not a power of 2";
  }
  if (kind_ == Kind::line && !knots_.empty()) {
    if (knots_.front().x != knots_.front().y || knots_.back().x != knots_.back().y)
      return "line map must be the identity outside its knots";
  }
  return {};
}

void PLMap::normalize() {
  auto slope = [&](size_t i) {
    return *log2_ratio(knots_[i + 1].x - knots_[i].x, knots_[i + 1].y - knots_[i].y);
  };
  std::vector<Knot> out;
  std::vector<long> sl;
  size_t n = knots_.size();
  for (size_t i = 0; i < n; ++i) {
    bool keep;
    if (kind_ == Kind::interval && (i == 0 || i + 1 == n)) {
      keep = true;
    } else {
      long left = (i == 0) ? 0 : slope(i - 1);
      long right = (i + 1 == n) ? 0 : slope(i);
      keep = left != right;
    }
    if (keep) out.push_back(knots_[i]);
  }
  knots_ = std::move(out);
  for (size_t i = 0; i + 1 < knots_.size(); ++i) sl.push_back(slope(i));
  slopes_ = std::move(sl);
}

DInterval PLMap::domain() const {
  if (kind_ != Kind::interval) throw Error("DomainMismatch", "line map has no compact domain");
  return {knots_.front().x, knots_.back().x};
}

DInterval PLMap::image() const {
  if (kind_ != Kind::interval) throw Error("DomainMismatch", "line map has no compact image");
  return {knots_.front().y, knots_.back().y};
}

size_t PLMap::piece_index(const Dyadic& x) const {
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                             [](const Dyadic& v, const Knot& k) { return v < k.x; });
  size_t i = static_cast<size_t>(it - knots_.begin());
  if (i == 0) return 0;
  return std::min(i - 1, knots_.size() - 2);
}

Dyadic PLMap::eval(const Dyadic& x) const {
  if (kind_ == Kind::line) {
    if (knots_.empty() || x <= knots_.front().x || x >= knots_.back().x) return x;
  } else if (x < knots_.front().x || x > knots_.back().x) {
    throw Error("OutOfDomain", x.str() + " outside [" + knots_.front().x.str() + ", " +
                                   knots_.back().x.str() + "]");
  }
  size_t i = piece_index(x);
  return knots_[i].y + (x - knots_[i].x).scaled(slopes_[i]);
}

mpq_class PLMap::eval_q(const mpq_class& x) const {
  Dyadic d;
  if (Dyadic::from_mpq(x, d)) return eval(d).to_mpq();
  if (kind_ == Kind::line) {
    if (knots_.empty() || x <= knots_.front().x.to_mpq() || x >= knots_.back().x.to_mpq())
      return x;
  } else if (x < knots_.front().x.to_mpq() || x > knots_.back().x.to_mpq()) {
    throw Error("OutOfDomain", x.get_str());
  }
  size_t i = 0;
  while (i + 2 < knots_.size() && knots_[i + 1].x.to_mpq() <= x) ++i;
  mpq_class s = Dyadic::pow2(slopes_[i]).to_mpq();
  return knots_[i].y.to_mpq() + (x - knots_[i].x.to_mpq()) * s;
}

Dyadic PLMap::eval_inv(const Dyadic& y) const {
  if (kind_ == Kind::line) {
    if (knots_.empty() || y <= knots_.front().y || y >= knots_.back().y) return y;
  } else if (y < knots_.front().y || y > knots_.back().y) {
    throw Error("OutOfDomain", y.str() + " outside image");
  }
  auto it = std::upper_bound(knots_.begin(), knots_.end(), y,
                             [](const Dyadic& v, const Knot& k) { return v < k.y; });
  size_t i = static_cast<size_t>(it - knots_.begin());
  i = (i == 0) ? 0 : std::min(i - 1, knots_.size() - 2);
  return knots_[i].x + (y - knots_[i].y).scaled(-slopes_[i]);
}

long PLMap::slope_right(const Dyadic& x) const {
  if (kind_ == Kind::line && (knots_.empty() || x < knots_.front().x || x >= knots_.back().x))
    return 0;
  if (kind_ == Kind::interval && (x < knots_.front().x || x >= knots_.back().x))
    throw Error("OutOfDomain", "no piece to the right of " + x.str());
  return slopes_[piece_index(x)];
}

long PLMap::slope_left(const Dyadic& x) const {
  if (kind_ == Kind::line && (knots_.empty() || x <= knots_.front().x || x > knots_.back().x))
    return 0;
  if (kind_ == Kind::interval && (x <= knots_.front().x || x > knots_.back().x))
    throw Error("OutOfDomain", "no piece to the left of " + x.str());
  auto it = std::lower_bound(knots_.begin(), knots_.end(), x,
                             [](const Knot& k, const Dyadic& v) { return k.x < v; });
  size_t i = static_cast<size_t>(it - knots_.begin());
  return slopes_[i - 1];
}

bool PLMap::is_identity() const {
  for (const Knot& k : knots_)
    if (k.x != k.y) return false;
  return kind_ == Kind::line ? knots_.empty() : slopes_.size() == 1 && slopes_[0] == 0;
}

static void sort_unique(std::vector<Dyadic>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

PLMap compose(const PLMap& f, const PLMap& g) {
  std::vector<Dyadic> xs;
  if (f.on_line()) {
    if (!g.on_line()) throw Error("DomainMismatch", "cannot follow a line map by an interval map");
    for (const Knot& k : f.knots()) xs.push_back(k.x);
    for (const Knot& k : g.knots()) xs.push_back(f.eval_inv(k.x));
    sort_unique(xs);
    std::vector<Knot> ks;
    for (const Dyadic& x : xs) ks.push_back({x, g.eval(f.eval(x))});
    return PLMap::from_knots(PLMap::Kind::line, std::move(ks));
  }
  DInterval img = f.image();
  if (!g.on_line()) {
    DInterval gd = g.domain();
    if (img.lo < gd.lo || img.hi > gd.hi)
      throw Error("DomainMismatch", "image of first map leaves the domain of the second");
  }
  // One merged pass; both maps are increasing.
  const auto& fk = f.knots_;
  const auto& gk = g.knots_;
  size_t j = 0;
  auto gval = [&](const Dyadic& y) {
    if (gk.empty() || y < gk.front().x) return y;
    while (j + 1 < gk.size() && gk[j + 1].x <= y) ++j;
    if (j + 1 >= gk.size()) return y == gk.back().x ? gk.back().y : y;
    return gk[j].y + (y - gk[j].x).scaled(g.slopes_[j]);
  };
  std::vector<Knot> ks;
  ks.reserve(fk.size() + gk.size());
  size_t m = 0;
  for (size_t i = 0; i < fk.size(); ++i) {
    ks.push_back({fk[i].x, gval(fk[i].y)});
    if (i + 1 == fk.size()) break;
    while (m < gk.size() && gk[m].x <= fk[i].y) ++m;
    for (; m < gk.size() && gk[m].x < fk[i + 1].y; ++m)
      ks.push_back({fk[i].x + (gk[m].x - fk[i].y).scaled(-f.slopes_[i]), gk[m].y});
  }
  return PLMap::from_knots(PLMap::Kind::interval, std::move(ks));
}

PLMap invert(const PLMap& f) {
  std::vector<Knot> ks;
  for (const Knot& k : f.knots()) ks.push_back({k.y, k.x});
  return PLMap::from_knots(f.kind(), std::move(ks));
}

PLMap translate(const PLMap& f, const Dyadic& t) {
  std::vector<Knot> ks;
  for (const Knot& k : f.knots()) ks.push_back({k.x + t, k.y + t});
  return PLMap::from_knots(f.kind(), std::move(ks));
}

PLMap flip_conjugate(const PLMap& f, const DInterval& I) {
  Dyadic c = I.lo + I.hi;
  if (f.on_line()) {
    auto hull = support_hull(f);
    if (hull && (hull->lo < I.lo.to_mpq() || hull->hi > I.hi.to_mpq()))
      throw Error("SupportEscapesInterval",
                  "support reaches outside [" + I.lo.str() + ", " + I.hi.str() + "]");
  } else if (!(f.domain() == I)) {
    throw Error("DomainMismatch", "flip interval differs from the map's domain");
  }
  std::vector<Knot> ks;
  for (auto it = f.knots().rbegin(); it != f.knots().rend(); ++it) ks.push_back({c - it->x, c - it->y});
  return PLMap::from_knots(f.kind(), std::move(ks));
}

PLMap restrict_to(const PLMap& f, const DInterval& I) {
  if (!(I.lo < I.hi)) throw Error("EmptyInterval", "restriction to a degenerate interval");
  std::vector<Knot> ks{{I.lo, f.eval(I.lo)}};
  for (const Knot& k : f.knots())
    if (I.lo < k.x && k.x < I.hi) ks.push_back(k);
  ks.push_back({I.hi, f.eval(I.hi)});
  return PLMap::from_knots(PLMap::Kind::interval, std::move(ks));
}

PLMap extend_to_line(const PLMap& f) {
  if (f.on_line()) return f;
  const auto& ks = f.knots();
  if (ks.front().x != ks.front().y || ks.back().x != ks.back().y)
    throw Error("DomainMismatch", "map does not fix the ends of its domain");
  return PLMap::from_knots(PLMap::Kind::line, ks);
}

// Closed fixed components of an interval map, in order.
static std::vector<QInterval> fixed_components(const PLMap& r) {
  std::vector<QInterval> out;
  auto add = [&](const mpq_class& a, const mpq_class& b) {
    if (!out.empty() && out.back().hi >= a) {
      if (b > out.back().hi) out.back().hi = b;
      return;
    }
    out.push_back({a, b});
  };
  const auto& ks = r.knots();
  for (size_t i = 0; i + 1 < ks.size(); ++i) {
    Dyadic da = ks[i].y - ks[i].x;
    Dyadic db = ks[i + 1].y - ks[i + 1].x;
    mpq_class a = ks[i].x.to_mpq(), b = ks[i + 1].x.to_mpq();
    if (da.is_zero() && db.is_zero()) {
      add(a, b);
      continue;
    }
    if (da.is_zero()) add(a, a);
    if (da.sign() * db.sign() < 0) {
      // displacement is linear on the piece; solve for its zero
      mpq_class qa = da.to_mpq(), qb = db.to_mpq();
      mpq_class p = a + (b - a) * qa / (qa - qb);
      add(p, p);
    }
    if (db.is_zero()) add(b, b);
  }
  return out;
}

std::vector<QInterval> fixed_points_in(const PLMap& f, const DInterval& I) {
  if (I.lo == I.hi) {
    if (f.eval(I.lo) == I.lo) return {{I.lo.to_mpq(), I.lo.to_mpq()}};
    return {};
  }
  return fixed_components(restrict_to(f, I));
}

std::vector<QInterval> support(const PLMap& f) {
  if (f.knots().empty()) return {};
  DInterval D = f.on_line() ? DInterval{f.knots().front().x, f.knots().back().x} : f.domain();
  auto fix = fixed_components(restrict_to(f, D));
  std::vector<QInterval> out;
  mpq_class cur = D.lo.to_mpq();
  for (const QInterval& c : fix) {
    if (c.lo > cur) out.push_back({cur, c.lo});
    cur = c.hi;
  }
  if (cur < D.hi.to_mpq()) out.push_back({cur, D.hi.to_mpq()});
  return out;
}

std::optional<QInterval> support_hull(const PLMap& f) {
  auto s = support(f);
  if (s.empty()) return std::nullopt;
  return QInterval{s.front().lo, s.back().hi};
}

bool identity_on(const PLMap& f, const DInterval& I) {
  if (I.lo == I.hi) return f.eval(I.lo) == I.lo;
  PLMap r = restrict_to(f, I);
  for (const Knot& k : r.knots())
    if (k.x != k.y) return false;
  return true;
}

bool linear_on(const PLMap& f, const DInterval& I) {
  return restrict_to(f, I).knots().size() == 2;
}

std::vector<Dyadic> breakpoints(const PLMap& f) {
  std::vector<Dyadic> out;
  for (const Knot& k : f.knots()) out.push_back(k.x);
  return out;
}

}  // namespace llab
