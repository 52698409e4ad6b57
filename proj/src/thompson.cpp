#include "llab/thompson.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

namespace llab {

namespace {

const DInterval kUnit{Dyadic(0), Dyadic(1)};

Dyadic dy(long num, long exp) { return Dyadic::normalize(mpz_class(num), exp); }

PLMap unit_map(std::vector<Knot> ks) { return PLMap::from_knots(PLMap::Kind::interval, std::move(ks)); }

// floor(log2(d)) for d > 0
long floor_log2(const Dyadic& d) {
  return static_cast<long>(mpz_sizeinbase(d.num().get_mpz_t(), 2)) - 1 - d.exp();
}

bool multiple_of_pow2(const Dyadic& x, long z) { return x.scaled(-z).is_integer(); }

// Greedy cut of [lo, hi] into standard dyadic pieces; returns piece lengths.
std::vector<Dyadic> dyadic_pieces(const Dyadic& lo, const Dyadic& hi) {
  std::vector<Dyadic> out;
  Dyadic x = lo;
  while (x < hi) {
    long z = floor_log2(hi - x);
    while (!multiple_of_pow2(x, z)) --z;
    out.push_back(Dyadic::pow2(z));
    x += out.back();
  }
  return out;
}

void split_largest(std::vector<Dyadic>& v) {
  auto it = std::max_element(v.begin(), v.end());
  Dyadic h = it->half();
  *it = h;
  v.insert(it, h);
}

void fill_gap(const Knot& a, const Knot& b, std::vector<Knot>& out) {
  Dyadic lx = b.x - a.x, ly = b.y - a.y;
  if (log2_ratio(lx, ly)) {
    out.push_back(b);
    return;
  }
  auto px = dyadic_pieces(a.x, b.x);
  auto py = dyadic_pieces(a.y, b.y);
  while (px.size() < py.size()) split_largest(px);
  while (py.size() < px.size()) split_largest(py);
  Dyadic x = a.x, y = a.y;
  for (size_t i = 0; i < px.size(); ++i) {
    x += px[i];
    y += py[i];
    out.push_back({x, y});
  }
}

PLMap mul(const PLMap& f, const PLMap& g) { return compose(f, g); }


std::string letters_inverse(char c) {
  switch (c) {
    case 'a': return "A";
    case 'A': return "a";
    case 'b': return "B";
    case 'B': return "b";
  }
  throw ParseError(std::string("bad letter '") + c + "'");
}

// Binary tree over standard dyadic intervals; leaves carry no data.
struct Tree {
  struct Node {
    int left = -1, right = -1;
  };
  std::vector<Node> nodes;
  int root = -1;

  bool leaf(int i) const { return nodes[i].left < 0; }

  int build(const std::map<std::pair<mpz_class, long>, bool>& leaves, const mpz_class& a, long n) {
    int id = static_cast<int>(nodes.size());
    nodes.push_back({});
    if (leaves.count({a, n})) return id;
    if (n > 4096) throw std::logic_error("leaf set is not a subdivision");
    int l = build(leaves, 2 * a, n + 1);
    int r = build(leaves, 2 * a + 1, n + 1);
    nodes[id] = {l, r};
    return id;
  }

  // Rotations that turn the tree into the right vine, as a word in x0, x1.
  std::string vine_word() {
    std::string w;
    int node = root;
    long depth = 0;
    while (!leaf(node)) {
      int l = nodes[node].left;
      if (!leaf(l)) {
        // ((L1,L2),R) -> (L1,(L2,R)) is X_depth^-1
        int l1 = nodes[l].left, l2 = nodes[l].right, r = nodes[node].right;
        nodes[l] = {l2, r};
        nodes[node] = {l1, l};
        if (depth == 0) {
          w += "A";
        } else {
          w += std::string(static_cast<size_t>(depth - 1), 'a') + "B" +
               std::string(static_cast<size_t>(depth - 1), 'A');
        }
        continue;
      }
      node = nodes[node].right;
      ++depth;
    }
    return reduce_word(w);
  }
};

std::string vine_word_of(const std::vector<StdDyadicInterval>& leaves) {
  std::map<std::pair<mpz_class, long>, bool> set;
  for (const auto& s : leaves) set[{s.a, s.n}] = true;
  Tree t;
  t.root = t.build(set, mpz_class(0), 0);
  return t.vine_word();
}

// Standard interval with these endpoints, if there is one.
bool as_standard(const Dyadic& lo, const Dyadic& hi, StdDyadicInterval& out) {
  Dyadic len = hi - lo;
  if (len.num() != 1) return false;
  long n = len.exp();
  if (!multiple_of_pow2(lo, -n)) return false;
  out.a = lo.scaled(n).num();
  out.n = n;
  return true;
}

}  // namespace

DInterval StdDyadicInterval::interval() const {
  return {Dyadic::normalize(a, n), Dyadic::normalize(a + 1, n)};
}

StdDyadicInterval StdDyadicInterval::make(long a, long n) {
  if (n < 0 || a < 0 || (n < 62 && a >= (1L << n)))
    throw std::invalid_argument("not a standard dyadic interval in [0,1]");
  return {mpz_class(a), n};
}

std::string to_string(FClass c) {
  switch (c) {
    case FClass::not_F: return "not_F";
    case FClass::F: return "F";
    case FClass::F_prime: return "F_prime";
  }
  return "?";
}

PLMap unit_identity() { return PLMap::identity_on(kUnit); }

PLMap as_unit(const PLMap& f) {
  if (!f.on_line()) {
    if (!(f.domain() == kUnit)) throw Error("DomainMismatch", "expected a map on [0,1]");
    return f;
  }
  auto hull = support_hull(f);
  if (hull && (hull->lo < 0 || hull->hi > 1))
    throw Error("DomainMismatch", "support leaves [0,1]");
  return restrict_to(f, kUnit);
}

bool same_f(const PLMap& a, const PLMap& b) { return as_unit(a) == as_unit(b); }

FClass classify(const PLMap& f) {
  PLMap u = as_unit(f);
  if (u.eval(Dyadic(0)) != Dyadic(0) || u.eval(Dyadic(1)) != Dyadic(1))
    throw Error("DomainMismatch", "map does not fix 0 and 1");
  if (!u.validate().empty()) return FClass::not_F;
  auto hull = support_hull(u);
  if (!hull || (hull->lo > 0 && hull->hi < 1)) return FClass::F_prime;
  return FClass::F;
}

bool in_F_prime(const PLMap& f) {
  try {
    return classify(f) == FClass::F_prime;
  } catch (const Error&) {
    return false;
  }
}

bool in_H(const PLMap& f) {
  try {
    if (classify(f) == FClass::not_F) return false;
  } catch (const Error&) {
    return false;
  }
  PLMap u = as_unit(f);
  return u.slope_right(Dyadic(0)) == u.slope_left(Dyadic(1));
}

PLMap generator_x0() {
  return unit_map({{0, 0}, {dy(1, 1), dy(1, 2)}, {dy(3, 2), dy(1, 1)}, {1, 1}});
}

PLMap generator_x1() {
  return unit_map({{0, 0}, {dy(1, 1), dy(1, 1)}, {dy(3, 2), dy(5, 3)}, {dy(7, 3), dy(3, 2)}, {1, 1}});
}

// Carries [0,1] onto [1/16,15/16] with slopes 1/4,1,2,2,1,1/4.
PLMap inner_conjugator() {
  return unit_map({{0, dy(1, 4)},
                   {dy(1, 2), dy(1, 3)},
                   {dy(3, 3), dy(1, 2)},
                   {dy(1, 1), dy(1, 1)},
                   {dy(5, 3), dy(3, 2)},
                   {dy(3, 2), dy(7, 3)},
                   {1, dy(15, 4)}});
}

static PLMap conjugate_inside(const PLMap& g) {
  PLMap phi = inner_conjugator();
  PLMap inner = mul(mul(invert(phi), g), phi);
  return restrict_to(extend_to_line(inner), kUnit);
}

PLMap canonical_element(Canonical which) {
  switch (which) {
    case Canonical::c0:
      return unit_map({{0, 0}, {dy(1, 4), dy(1, 3)}, {dy(1, 3), dy(3, 4)}, {dy(1, 2), dy(1, 2)}, {1, 1}});
    case Canonical::c1:
      return flip_conjugate(canonical_element(Canonical::c0), kUnit);
    case Canonical::nu1:
      return mul(canonical_element(Canonical::c0), canonical_element(Canonical::c1));
    case Canonical::nu2:
      return conjugate_inside(generator_x0());
    case Canonical::nu3:
      return conjugate_inside(generator_x1());
  }
  throw std::invalid_argument("unknown canonical element");
}

PLMap interpolate(const std::vector<Knot>& anchors, PLMap::Kind kind) {
  if (anchors.empty()) return PLMap::from_knots(kind, {});
  std::vector<Knot> ks{anchors.front()};
  for (size_t i = 1; i < anchors.size(); ++i) {
    const Knot& a = anchors[i - 1];
    const Knot& b = anchors[i];
    if (!(a.x < b.x) || !(a.y < b.y))
      throw Error("InvalidMap", "interpolation anchors must increase at " + b.x.str());
    fill_gap(a, b, ks);
  }
  return PLMap::from_knots(kind, std::move(ks));
}

static void require_inside(const DInterval& I) {
  if (!(I.lo > Dyadic(0)) || !(I.hi < Dyadic(1)))
    throw Error("IntervalTouchesBoundary",
                "[" + I.lo.str() + ", " + I.hi.str() + "] is not inside (0,1)");
}

// Interpolates the given middle anchors to the identity near 0 and 1.
static PLMap through(const std::vector<Knot>& mid) {
  Dyadic lo = min(mid.front().x, mid.front().y).half();
  Dyadic top = max(mid.back().x, mid.back().y);
  Dyadic hi = Dyadic(1) - (Dyadic(1) - top).half();
  std::vector<Knot> anchors{{0, 0}, {lo, lo}};
  anchors.insert(anchors.end(), mid.begin(), mid.end());
  anchors.push_back({hi, hi});
  anchors.push_back({1, 1});
  return interpolate(anchors);
}

PLMap transit(const StdDyadicInterval& I, const StdDyadicInterval& J) {
  DInterval a = I.interval(), b = J.interval();
  require_inside(a);
  require_inside(b);
  return through({{a.lo, b.lo}, {a.hi, b.hi}});
}

PLMap transit2(const StdDyadicInterval& I1, const StdDyadicInterval& I2,
               const StdDyadicInterval& J1, const StdDyadicInterval& J2) {
  DInterval a1 = I1.interval(), a2 = I2.interval(), b1 = J1.interval(), b2 = J2.interval();
  for (const auto& d : {a1, a2, b1, b2}) require_inside(d);
  if (!(a1.hi < a2.lo) || !(b1.hi < b2.lo))
    throw Error("OrderingViolated", "intervals must be ordered and disjoint");
  return through({{a1.lo, b1.lo}, {a1.hi, b1.hi}, {a2.lo, b2.lo}, {a2.hi, b2.hi}});
}

PLMap commutator(const PLMap& a, const PLMap& b) {
  if (a.on_line() && b.on_line()) return mul(mul(mul(invert(a), invert(b)), a), b);
  PLMap x = as_unit(a), y = as_unit(b);
  return mul(mul(mul(invert(x), invert(y)), x), y);
}

PLMap product(const std::vector<CommutatorPair>& pairs) {
  PLMap out = unit_identity();
  for (const auto& p : pairs) out = mul(out, as_unit(commutator(p.left, p.right)));
  return out;
}

GermCommutator germ_commutator(const PLMap& germ, const mpq_class& p0) {
  if (germ.on_line()) throw Error("DomainMismatch", "germ must be given on an interval");
  DInterval U = germ.domain();
  if (!(U.lo > Dyadic(0)) || !(U.hi < Dyadic(1)))
    throw Error("NoRoomToDisplace", "U must lie inside (0,1)");
  if (!(U.lo.to_mpq() < p0 && p0 < U.hi.to_mpq()))
    throw Error("OutOfDomain", "p0 is not interior to U");
  if (germ.eval_q(p0) != p0) throw Error("GermDoesNotFixPoint", "germ moves p0");
  PLMap id = unit_identity();
  if (germ.is_identity()) return {{id, id}, U};

  // V = [v1, v2] around p0 with V and its image inside the interior of U.
  DInterval V;
  for (long m = 1;; ++m) {
    mpq_class scaled = p0 * mpq_class(mpz_class(1) << m);
    mpz_class fl = scaled.get_num() / scaled.get_den();
    mpz_class cl = (scaled.get_num() + scaled.get_den() - 1) / scaled.get_den();
    V = {Dyadic::normalize(cl - 1, m), Dyadic::normalize(fl + 1, m)};
    if (U.lo < V.lo && V.hi < U.hi && U.lo < germ.eval(V.lo) && germ.eval(V.hi) < U.hi) break;
  }

  std::vector<Knot> anchors{{0, 0}, {U.lo, U.lo}, {V.lo, germ.eval(V.lo)}};
  for (const Knot& k : germ.knots())
    if (V.lo < k.x && k.x < V.hi) anchors.push_back(k);
  anchors.push_back({V.hi, germ.eval(V.hi)});
  anchors.push_back({U.hi, U.hi});
  anchors.push_back({1, 1});
  PLMap l = interpolate(anchors);

  // h carries U into the larger of the two gaps beside it.
  Dyadic room_hi = Dyadic(1) - U.hi, room_lo = U.lo;
  PLMap h;
  if (room_lo < room_hi) {
    Dyadic w1 = U.hi + room_hi.scaled(-2), w2 = U.hi + room_hi.half();
    h = through({{U.lo, w1}, {U.hi, w2}});
  } else {
    Dyadic w1 = room_lo.scaled(-2), w2 = room_lo.half();
    h = through({{U.lo, w1}, {U.hi, w2}});
  }
  return {{invert(l), h}, V};
}

std::string reduce_word(const std::string& w) {
  std::string out;
  for (char c : w) {
    if (c != 'a' && c != 'A' && c != 'b' && c != 'B')
      throw ParseError(std::string("bad letter '") + c + "'");
    if (!out.empty() && letters_inverse(c)[0] == out.back())
      out.pop_back();
    else
      out.push_back(c);
  }
  return out;
}

std::string invert_word(const std::string& w) {
  std::string out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out += letters_inverse(*it);
  return out;
}

std::vector<std::pair<std::string, std::string>> peel_commutators(const std::string& word) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string w = reduce_word(word);
  while (!w.empty()) {
    // w = x P x^-1 Q = [x^-1, P^-1] (P Q)
    char x = w[0];
    char xi = letters_inverse(x)[0];
    size_t j = w.find(xi, 1);
    if (j == std::string::npos) throw std::invalid_argument("word has nonzero exponent sum");
    std::string P = w.substr(1, j - 1), Q = w.substr(j + 1);
    out.push_back({std::string(1, xi), invert_word(P)});
    w = reduce_word(P + Q);
  }
  return out;
}

PLMap eval_f_word(const std::string& w) {
  PLMap x0 = generator_x0(), x1 = generator_x1();
  PLMap out = unit_identity();
  for (char c : w) {
    switch (c) {
      case 'a': out = mul(out, x0); break;
      case 'A': out = mul(out, invert(x0)); break;
      case 'b': out = mul(out, x1); break;
      case 'B': out = mul(out, invert(x1)); break;
      default: throw ParseError(std::string("bad letter '") + c + "'");
    }
  }
  return out;
}

namespace {

// Prefix maps of a word under lazy left multiplication of index ranges.
class PrefixMaps {
 public:
  explicit PrefixMaps(const std::vector<PLMap>& base) : n_(base.size()), tag_(4 * base.size()) {
    build(1, 0, n_ - 1, base);
  }
  void left_multiply(size_t lo, size_t hi, const PLMap& c) {
    if (lo <= hi) update(1, 0, n_ - 1, lo, hi, c);
  }
  PLMap at(size_t i) {
    size_t node = 1, l = 0, r = n_ - 1;
    while (l != r) {
      push(node);
      size_t m = (l + r) / 2;
      if (i <= m) {
        node = 2 * node;
        r = m;
      } else {
        node = 2 * node + 1;
        l = m + 1;
      }
    }
    return *tag_[node];
  }

 private:
  size_t n_;
  std::vector<std::optional<PLMap>> tag_;

  void build(size_t node, size_t l, size_t r, const std::vector<PLMap>& base) {
    if (l == r) {
      tag_[node] = base[l];
      return;
    }
    size_t m = (l + r) / 2;
    build(2 * node, l, m, base);
    build(2 * node + 1, m + 1, r, base);
  }
  void apply(size_t node, const PLMap& c) { tag_[node] = tag_[node] ? mul(c, *tag_[node]) : c; }
  void push(size_t node) {
    if (!tag_[node]) return;
    apply(2 * node, *tag_[node]);
    apply(2 * node + 1, *tag_[node]);
    tag_[node].reset();
  }
  void update(size_t node, size_t l, size_t r, size_t lo, size_t hi, const PLMap& c) {
    if (hi < l || r < lo) return;
    if (lo <= l && r <= hi) {
      apply(node, c);
      return;
    }
    push(node);
    size_t m = (l + r) / 2;
    update(2 * node, l, m, lo, hi, c);
    update(2 * node + 1, m + 1, r, lo, hi, c);
  }
};

}  // namespace

std::vector<CommutatorPair> peel_commutator_maps(const std::string& word) {
  std::string w = reduce_word(word);
  std::vector<CommutatorPair> out;
  if (w.empty()) return out;
  PLMap x0 = generator_x0(), x1 = generator_x1();
  auto gen = [&](char c) {
    switch (c) {
      case 'a': return x0;
      case 'A': return invert(x0);
      case 'b': return x1;
      default: return invert(x1);
    }
  };
  // The current word is always a subsequence of w, so prefix maps can be kept by
  // position in w. Peeling x P x^-1 Q into [x^-1, P^-1] and P Q multiplies the
  // prefixes inside P by x^-1 and those inside Q by the inverse commutator.
  std::vector<PLMap> base;
  PLMap run = unit_identity();
  for (char c : w) base.push_back(run = mul(run, gen(c)));
  PrefixMaps pm(base);
  std::vector<size_t> cur(w.size());
  for (size_t i = 0; i < w.size(); ++i) cur[i] = i;
  while (!cur.empty()) {
    char x = w[cur[0]], xi = letters_inverse(x)[0];
    size_t j = 1;
    while (j < cur.size() && w[cur[j]] != xi) ++j;
    if (j == cur.size()) throw std::invalid_argument("word has nonzero exponent sum");
    PLMap a = gen(xi);
    PLMap p = mul(a, pm.at(cur[j - 1]));  // the map of P
    CommutatorPair pair{a, invert(p)};
    PLMap c = commutator(pair.left, pair.right);
    out.push_back(pair);
    if (j > 1) pm.left_multiply(cur[1], cur[j - 1], a);
    if (j + 1 < cur.size()) pm.left_multiply(cur[j + 1], cur.back(), invert(c));
    std::vector<size_t> next(cur.begin() + 1, cur.begin() + j);
    for (size_t t = j + 1; t < cur.size(); ++t) {
      if (!next.empty() && letters_inverse(w[cur[t]])[0] == w[next.back()])
        next.pop_back();
      else
        next.push_back(cur[t]);
    }
    cur = std::move(next);
  }
  return out;
}

std::string f_word(const PLMap& f) {
  PLMap u = as_unit(f);
  if (classify(u) == FClass::not_F) throw Error("NotInF", "map is not in F");
  // Split until f is linear on each piece with a standard image.
  std::vector<StdDyadicInterval> P, Q;
  std::vector<StdDyadicInterval> stack{{mpz_class(0), 0}};
  while (!stack.empty()) {
    StdDyadicInterval s = stack.back();
    stack.pop_back();
    DInterval I = s.interval();
    StdDyadicInterval img;
    if (linear_on(u, I) && as_standard(u.eval(I.lo), u.eval(I.hi), img)) {
      P.push_back(s);
      Q.push_back(img);
      continue;
    }
    stack.push_back({2 * s.a + 1, s.n + 1});
    stack.push_back({2 * s.a, s.n + 1});
  }
  return reduce_word(vine_word_of(P) + invert_word(vine_word_of(Q)));
}

std::string nu_word(const PLMap& g) {
  PLMap phi = inner_conjugator();
  DInterval inner{dy(1, 4), dy(15, 4)};
  PLMap u = as_unit(g);
  if (!identity_on(u, {Dyadic(0), inner.lo}) || !identity_on(u, {inner.hi, Dyadic(1)}))
    throw Error("DomainMismatch", "element moves points outside [1/16,15/16]");
  return f_word(mul(mul(phi, restrict_to(u, inner)), invert(phi)));
}

std::vector<CommutatorPair> two_commutator_decompose(const PLMap& f) {
  PLMap fu = as_unit(f);
  if (classify(fu) != FClass::F_prime) throw Error("NotInFPrime", "element is not in F'");
  if (fu.is_identity()) return {};
  auto hull = *support_hull(fu);
  long m = 3;
  while (!(Dyadic::pow2(-m).to_mpq() < hull.lo && 1 - Dyadic::pow2(-m).to_mpq() > hull.hi)) ++m;
  Dyadic c = Dyadic::pow2(-m), d = Dyadic(1) - c;
  Dyadic quarter = dy(1, 2);

  // Move the support into J = [1/4, 1/4 + delta], write the copy of f on [0,1]
  // as k commutators, and pick delta so that k translates of J fit in [1/4, 1/2].
  // The copy on [0,1] does not depend on delta.
  PLMap model = mul(mul(interpolate({{0, c}, {1, d}}), fu), interpolate({{c, 0}, {d, 1}}));
  auto pairs = peel_commutator_maps(f_word(model));
  long e = 4;
  while (!(Dyadic(static_cast<long>(2 * pairs.size())) * Dyadic::pow2(-e) <= quarter)) ++e;
  Dyadic delta = Dyadic::pow2(-e);
  PLMap g = interpolate({{0, 0}, {c, quarter}, {d, quarter + delta}, {1, 1}});
  PLMap fJ = mul(mul(invert(g), fu), g);
  PLMap psi = PLMap::linear(kUnit, quarter, -e);
  DInterval J{quarter, quarter + delta};
  auto embed = [&](const PLMap& u) { return mul(mul(invert(psi), u), psi); };  // [0,1] onto J
  auto back = [&](const PLMap& x) { return mul(mul(g, x), invert(g)); };
  auto finish = [&](std::vector<CommutatorPair> pairs) {
    if (!(product(pairs) == fu)) throw std::logic_error("two-commutator product check failed");
    if (f.on_line())
      for (auto& p : pairs) {
        p.left = extend_to_line(p.left);
        p.right = extend_to_line(p.right);
      }
    return pairs;
  };
  // A word in nu2, nu3 that peels to one commutator is used as it is.
  if (hull.lo >= mpq_class(1, 16) && hull.hi <= mpq_class(15, 16)) {
    std::string w = nu_word(fu);
    long sa = 0, sb = 0;
    for (char ch : w) (ch == 'a' || ch == 'A' ? sa : sb) += ch == 'a' || ch == 'b' ? 1 : -1;
    auto peeled = sa == 0 && sb == 0 ? peel_commutators(w) : std::vector<std::pair<std::string, std::string>>{};
    if (peeled.size() == 1) {
      PLMap phi = inner_conjugator();
      auto pull = [&](const std::string& w) {
        return as_unit(extend_to_line(mul(mul(invert(phi), eval_f_word(w)), phi)));
      };
      std::vector<CommutatorPair> one{{pull(peeled[0].first), pull(peeled[0].second)}};
      if (product(one) == fu) return finish(one);
    }
  }

  // Maps on J, the i-th placed on J + 2 i delta, identity elsewhere on [0,1].
  auto glue = [&](const std::vector<PLMap>& pieces) {
    std::vector<Knot> ks{{Dyadic(0), Dyadic(0)}};
    for (size_t i = 0; i < pieces.size(); ++i) {
      Dyadic t = delta.scaled(1) * Dyadic(static_cast<long>(i));
      for (const Knot& k : pieces[i].knots()) ks.push_back({k.x + t, k.y + t});
    }
    ks.push_back({Dyadic(1), Dyadic(1)});
    return PLMap::from_knots(PLMap::Kind::interval, std::move(ks));
  };

  std::vector<PLMap> as, bs, runs;
  PLMap run = PLMap::identity_on(J);
  PLMap fJi = invert(restrict_to(fJ, J));
  for (size_t i = 0; i < pairs.size(); ++i) {
    as.push_back(embed(pairs[i].left));
    bs.push_back(embed(pairs[i].right));
    run = mul(run, embed(commutator(pairs[i].left, pairs[i].right)));
    if (i + 1 < pairs.size()) runs.push_back(mul(fJi, run));
  }
  if (pairs.size() == 1) return finish({{back(glue(as)), back(glue(bs))}});

  PLMap h = through({{quarter, quarter + delta.scaled(1)}, {dy(1, 1), dy(1, 1) + delta.scaled(1)}});
  return finish({{back(glue(as)), back(glue(bs))}, {back(glue(runs)), back(h)}});
}

}  // namespace llab
