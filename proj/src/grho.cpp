#include "llab/grho.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>
#include <unordered_map>
#include <set>
#include <sstream>

namespace llab {

namespace {

const DInterval kUnit{Dyadic(0), Dyadic(1)};

Dyadic dy(long num, long exp) { return Dyadic::normalize(mpz_class(num), exp); }

PLMap mul(const PLMap& f, const PLMap& g) { return compose(f, g); }

bool negative_letter(char c) { return c == 'A' || c == 'B'; }

// Block maps fl (block at n) and fr (block at n+1) seen from the cell [n, n+1].
CellMap join_halves(const PLMap& fl, const PLMap& fr) {
  Dyadic half = dy(1, 1);
  PLMap left = translate(restrict_to(fl, {half, Dyadic(1)}), -half);
  PLMap right = translate(restrict_to(fr, {Dyadic(0), half}), half);
  std::vector<Knot> ks = left.knots();
  ks.pop_back();
  ks.insert(ks.end(), right.knots().begin(), right.knots().end());
  return PLMap::from_knots(PLMap::Kind::interval, std::move(ks));
}

std::string inverse_word(const std::string& w) { return BlockWord{w}.inverse().letters; }

// Whether the letters of w around index c read W (w_0 at c) or W^-1.
bool matches_at(const std::string& w, long c, const Omega& om) {
  auto reads = [&](long start, const std::string& target) {
    if (start < 0 || start + static_cast<long>(target.size()) > static_cast<long>(w.size())) return false;
    return w.compare(static_cast<size_t>(start), target.size(), target) == 0;
  };
  return reads(c - om.k1, om.W) || reads(c - om.k2, inverse_word(om.W));
}

// Dyadic strictly between lo and q (lo < q), as close to q as needed.
Dyadic dyadic_below(const mpq_class& q, const Dyadic& lo) {
  for (long e = 1;; ++e) {
    mpq_class s = q * mpq_class(mpz_class(1) << e);
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    if (fl * s.get_den() == s.get_num()) fl -= 1;
    Dyadic d = Dyadic::normalize(fl, e);
    if (d > lo) return d;
  }
}

Dyadic dyadic_above(const mpq_class& q, const Dyadic& hi) { return -dyadic_below(-q, -hi); }

ExprPtr node(Expr::Op op, std::vector<ExprPtr> args, std::string branch = {}) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->args = std::move(args);
  e->branch = std::move(branch);
  return e;
}

ExprPtr lift_e(LiftKind kind, const PLMap& f, std::string branch = {}) {
  auto e = std::make_shared<Expr>();
  e->op = Expr::Op::lift;
  e->kind = kind;
  e->f = f;
  e->branch = std::move(branch);
  return e;
}

ExprPtr identity_e() { return node(Expr::Op::product, {}); }

struct SpecialCtx {
  const Labelling& rho;
  // expressions for the special elements of nu2, nu3, keyed by kind, W, k1, k2, letter
  std::map<std::tuple<int, std::string, long, long, char>, ExprPtr> memo;
};

ExprPtr special_rec(SpecialCtx& ctx, LiftKind kind, const std::string& W, long k1, long k2, const PLMap& f);

ExprPtr commutator_case(SpecialCtx& ctx, LiftKind kind, const std::string& W, long k1, long k2, const PLMap& p,
                        const PLMap& q) {
  char w0 = W[static_cast<size_t>(k1)];
  PLMap pp = orient(w0, p), qq = orient(w0, q);
  auto hp = support_hull(pp), hq = support_hull(qq);
  if (!hp || !hq) return identity_e();
  mpq_class lo = std::min(hp->lo, hq->lo), hi = std::max(hp->hi, hq->hi);

  // u carries the supports into (1/2, 1).
  Dyadic a = dyadic_below(lo, Dyadic(0)), b = dyadic_above(hi, Dyadic(1));
  Dyadic t1 = dy(9, 4), t2 = dy(15, 4);
  Dyadic e1 = min(a, t1).half(), e2 = (Dyadic(1) - max(b, t2)).half();
  PLMap u = interpolate({{0, 0}, {e1, e1}, {a, t1}, {b, t2}, {Dyadic(1) - e2, Dyadic(1) - e2}, {1, 1}});
  PLMap x3 = mul(mul(invert(u), pp), u);
  PLMap x4 = mul(mul(invert(u), qq), u);

  std::string W1 = W.substr(0, static_cast<size_t>(k1 + 1));
  std::string W2 = W.substr(static_cast<size_t>(k1 + 1));
  // x4 moved onto the left half of the next unit of the other kind
  PLMap yb = restrict_to(translate(extend_to_line(x4), -dy(1, 1)), kUnit);
  ExprPtr Y = special_rec(ctx, other(kind), W2, 0, k2 - 1, orient(W2[0], yb));

  ExprPtr T;
  if (k2 > k1) {
    ExprPtr X = special_rec(ctx, kind, W1, k1, 0, orient(w0, x3));
    T = node(Expr::Op::commutator, {X, Y}, "k2>k1");
  } else {
    // x3 placed on the right half of the unit of the other kind to the left,
    // then slid back by c = t + 1/2.
    ExprPtr P = special_rec(ctx, other(kind), W1, k1 - 1, 1, orient(W1[static_cast<size_t>(k1 - 1)], x3));
    auto h3 = *support_hull(x3);
    Dyadic half = dy(1, 1);
    Dyadic g = dyadic_below(h3.lo, half), d = dyadic_above(h3.hi, Dyadic(1));
    Dyadic c1 = (g - half).half(), c2 = (Dyadic(1) - d).half();
    PLMap c = interpolate({{0, 0}, {c1, c1}, {g - half, g}, {d - half, d}, {Dyadic(1) - c2, Dyadic(1) - c2}, {1, 1}});
    ExprPtr Lc = lift_e(kind, orient(w0, c));
    ExprPtr moved = node(Expr::Op::product, {node(Expr::Op::inverse, {Lc}), P, Lc});
    T = node(Expr::Op::commutator, {moved, Y}, "k1=k2");
  }
  ExprPtr Lu = lift_e(kind, orient(w0, u));
  return node(Expr::Op::product, {Lu, T, node(Expr::Op::inverse, {Lu})});
}

ExprPtr decomposed(SpecialCtx& ctx, LiftKind kind, const std::string& W, long k1, long k2, const PLMap& f) {
  std::vector<ExprPtr> factors;
  for (const auto& pr : two_commutator_decompose(f))
    factors.push_back(commutator_case(ctx, kind, W, k1, k2, as_unit(pr.left), as_unit(pr.right)));
  return node(Expr::Op::product, std::move(factors));
}

bool inside_inner(const PLMap& f) {
  auto h = support_hull(f);
  return h && h->lo >= mpq_class(1, 16) && h->hi <= mpq_class(15, 16);
}

// The special element is multiplicative in f, so an element of F_[1/16,15/16]
// is handled letter by letter in nu2, nu3 with one shared expression per letter.
ExprPtr by_letters(SpecialCtx& ctx, LiftKind kind, const std::string& W, long k1, long k2, const PLMap& f) {
  std::vector<ExprPtr> factors;
  for (char c : nu_word(f)) {
    char lc = static_cast<char>(c == 'A' ? 'a' : c == 'B' ? 'b' : c);
    auto key = std::make_tuple(static_cast<int>(kind), W, k1, k2, lc);
    auto it = ctx.memo.find(key);
    if (it == ctx.memo.end()) {
      PLMap gen = canonical_element(lc == 'a' ? Canonical::nu2 : Canonical::nu3);
      it = ctx.memo.emplace(key, decomposed(ctx, kind, W, k1, k2, gen)).first;
    }
    factors.push_back(c == lc ? it->second : node(Expr::Op::inverse, {it->second}));
  }
  return node(Expr::Op::product, std::move(factors));
}

ExprPtr special_rec(SpecialCtx& ctx, LiftKind kind, const std::string& W, long k1, long k2, const PLMap& f) {
  if (f.is_identity() || static_cast<long>(W.size()) != k1 + k2 + 1) return identity_e();
  char w0 = W[static_cast<size_t>(k1)];
  bool a_type = w0 == 'a' || w0 == 'A';
  if (a_type != (kind == LiftKind::pi)) return identity_e();
  if (!occurs(ctx.rho, BlockWord{W})) return identity_e();
  if (k1 == 0 && k2 == 0) return lift_e(kind, f, "base");
  if (k1 > k2) {
    ExprPtr m = special_rec(ctx, kind, inverse_word(W), k2, k1, f);
    return node(Expr::Op::product, {m}, "mirror");
  }
  if (inside_inner(f)) return by_letters(ctx, kind, W, k1, k2, f);
  return decomposed(ctx, kind, W, k1, k2, f);
}

}  // namespace

LiftKind other(LiftKind k) { return k == LiftKind::lambda ? LiftKind::pi : LiftKind::lambda; }

std::string to_string(LiftKind k) { return k == LiftKind::lambda ? "lambda" : "pi"; }

GeneratorWord parse_generator_word(const std::string& s) {
  GeneratorWord w;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    GenToken t;
    bool ok = tok.size() >= 2 && (tok[0] == 'z' || tok[0] == 'x') && tok[1] >= '1' && tok[1] <= '3';
    if (ok && tok.size() == 3) ok = tok[2] == '\'';
    if (!ok || tok.size() > 3) throw ParseError("bad generator token '" + tok + "'");
    t.zeta = tok[0] == 'z';
    t.index = tok[1] - '0';
    t.inverse = tok.size() == 3;
    w.push_back(t);
  }
  return w;
}

std::string format_generator_word(const GeneratorWord& w) {
  std::string out;
  for (const auto& t : w) {
    if (!out.empty()) out += ' ';
    out += t.zeta ? 'z' : 'x';
    out += static_cast<char>('0' + t.index);
    if (t.inverse) out += '\'';
  }
  return out;
}

GeneratorWord invert_generator_word(const GeneratorWord& w) {
  GeneratorWord out(w.rbegin(), w.rend());
  for (auto& t : out) t.inverse = !t.inverse;
  return out;
}

PLMap orient(char letter, const PLMap& f) {
  PLMap u = as_unit(f);
  return negative_letter(letter) ? flip_conjugate(u, kUnit) : u;
}

PatternElement lift(LiftKind kind, const PLMap& f, const Labelling& rho) {
  if (!in_H(f)) throw Error("NotInH", "element is not in H");
  PLMap u = as_unit(f);
  if (kind == LiftKind::lambda)
    return make_pattern(0, rho, [&](const std::string& w) { return orient(w[0], u); });
  return make_pattern(1, rho, [&](const std::string& w) { return join_halves(orient(w[0], u), orient(w[2], u)); });
}

PatternElement generator(const GenToken& t, const Labelling& rho) {
  static const Canonical nus[] = {Canonical::nu1, Canonical::nu2, Canonical::nu3};
  if (t.index < 1 || t.index > 3) throw std::invalid_argument("generator index must be 1..3");
  PLMap f = canonical_element(nus[t.index - 1]);
  if (t.inverse) f = invert(f);
  return lift(t.zeta ? LiftKind::lambda : LiftKind::pi, f, rho);
}

GeneratorSet::GeneratorSet(const Labelling& rho) : rho_(rho) {
  for (int inv = 0; inv < 2; ++inv)
    for (int chi = 0; chi < 2; ++chi)
      for (int i = 1; i <= 3; ++i) pats_.push_back(generator({chi == 0, i, inv == 1}, rho_));
}

const PatternElement& GeneratorSet::get(const GenToken& t) const {
  return pats_.at(static_cast<size_t>(6 * t.inverse + 3 * (!t.zeta) + t.index - 1));
}

PatternElement GeneratorSet::eval(const GeneratorWord& w) const {
  PatternElement out = identity_pattern(rho_);
  for (const auto& t : w) out = compose_patterns(out, get(t), rho_);
  return out;
}

Omega parse_omega(const std::string& s) {
  Omega om;
  size_t c1 = s.find(','), c2 = s.find(',', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) throw ParseError("omega must read W,k1,k2");
  om.W = BlockWord::parse(s.substr(0, c1)).letters;
  try {
    om.k1 = std::stol(s.substr(c1 + 1, c2 - c1 - 1));
    om.k2 = std::stol(s.substr(c2 + 1));
  } catch (const std::exception&) {
    throw ParseError("omega must read W,k1,k2");
  }
  if (om.k1 < 0 || om.k2 < 0) throw ParseError("omega indices must be natural numbers");
  return om;
}

PatternElement special_element(LiftKind kind, const Omega& om, const PLMap& f, const Labelling& rho) {
  if (!in_F_prime(f)) throw Error("NotInFPrime", "special elements take elements of F'");
  PLMap u = as_unit(f);
  PLMap id = PLMap::identity_on(kUnit);
  bool sized = static_cast<long>(om.W.size()) == om.k1 + om.k2 + 1;
  long K = std::max(om.k1, om.k2);
  if (kind == LiftKind::lambda) {
    return make_pattern(K, rho, [&](const std::string& w) {
      return sized && matches_at(w, K, om) ? orient(w[static_cast<size_t>(K)], u) : id;
    });
  }
  return make_pattern(K + 1, rho, [&](const std::string& w) {
    auto block = [&](long c) { return sized && matches_at(w, c, om) ? orient(w[static_cast<size_t>(c)], u) : id; };
    return join_halves(block(K), block(K + 2));
  });
}

ExprPtr special_element_expr(LiftKind kind, const Omega& om, const PLMap& f, const Labelling& rho) {
  if (!in_F_prime(f)) throw Error("NotInFPrime", "special elements take elements of F'");
  SpecialCtx ctx{rho, {}};
  return special_rec(ctx, kind, om.W, om.k1, om.k2, as_unit(f));
}

namespace {

// Subexpressions are shared, so everything below walks the DAG once per node.
using EvalMemo = std::unordered_map<const Expr*, PatternElement>;

PatternElement eval_node(const ExprPtr& e, const Labelling& rho, EvalMemo& memo) {
  auto it = memo.find(e.get());
  if (it != memo.end()) return it->second;
  PatternElement out;
  switch (e->op) {
    case Expr::Op::lift:
      out = lift(e->kind, e->f, rho);
      break;
    case Expr::Op::inverse:
      out = invert_pattern(eval_node(e->args.at(0), rho, memo), rho);
      break;
    case Expr::Op::commutator: {
      PatternElement a = eval_node(e->args.at(0), rho, memo), b = eval_node(e->args.at(1), rho, memo);
      PatternElement ai = invert_pattern(a, rho), bi = invert_pattern(b, rho);
      out = compose_patterns(compose_patterns(compose_patterns(ai, bi, rho), a, rho), b, rho);
      break;
    }
    case Expr::Op::product:
      out = identity_pattern(rho);
      for (const auto& a : e->args) out = compose_patterns(out, eval_node(a, rho, memo), rho);
      break;
  }
  memo.emplace(e.get(), out);
  return out;
}

void walk(const ExprPtr& e, std::set<const Expr*>& seen, const std::function<void(const Expr&)>& visit) {
  if (!seen.insert(e.get()).second) return;
  visit(*e);
  for (const auto& a : e->args) walk(a, seen, visit);
}

void describe_node(const ExprPtr& e, std::map<const Expr*, size_t>& ids, std::string& out) {
  bool shared = e.use_count() > 2 && e->op != Expr::Op::lift;
  if (shared) {
    auto it = ids.find(e.get());
    if (it != ids.end()) {
      out += "@" + std::to_string(it->second);
      return;
    }
    size_t id = ids.size() + 1;
    ids.emplace(e.get(), id);
    out += "@" + std::to_string(id) + "=";
  }
  switch (e->op) {
    case Expr::Op::lift:
      out += (e->kind == LiftKind::lambda ? "L<" : "P<") + std::to_string(e->f.knots().size()) + ">";
      return;
    case Expr::Op::inverse:
      describe_node(e->args.at(0), ids, out);
      out += "^-1";
      return;
    case Expr::Op::commutator:
      out += "[";
      describe_node(e->args.at(0), ids, out);
      out += ", ";
      describe_node(e->args.at(1), ids, out);
      out += "]";
      return;
    case Expr::Op::product:
      if (e->args.empty()) {
        out += "1";
        return;
      }
      if (e->args.size() > 1) out += "(";
      for (size_t i = 0; i < e->args.size(); ++i) {
        if (i) out += " ";
        describe_node(e->args[i], ids, out);
      }
      if (e->args.size() > 1) out += ")";
      return;
  }
}

}  // namespace

PatternElement evaluate(const ExprPtr& e, const Labelling& rho) {
  EvalMemo memo;
  return eval_node(e, rho, memo);
}

std::vector<std::string> branches(const ExprPtr& e) {
  std::set<std::string> s;
  std::set<const Expr*> seen;
  walk(e, seen, [&](const Expr& x) {
    if (!x.branch.empty()) s.insert(x.branch);
  });
  return {s.begin(), s.end()};
}

size_t expr_size(const ExprPtr& e) {
  std::set<const Expr*> seen;
  walk(e, seen, [](const Expr&) {});
  return seen.size();
}

std::string describe(const ExprPtr& e) {
  std::map<const Expr*, size_t> ids;
  std::string out;
  describe_node(e, ids, out);
  return out;
}

DInterval apply_to_interval(const PatternElement& p, const Labelling& rho, const DInterval& I) {
  long c = to_long(p.disp_bound().ceil());
  long A = cell_of(I.lo) - c - 1, B = cell_of(I.hi) + c + 2;
  PLMap F = realize(p, rho, A, B);
  return {F.eval(I.lo), F.eval(I.hi)};
}

namespace {

// Moves an interval by generator words, recording every step.
struct Steering {
  const GeneratorSet& gens;
  TransportResult res;
  DInterval cur;

  void push(const GenToken& t) {
    cur = apply_to_interval(gens.get(t), gens.rho(), cur);
    res.word.push_back(t);
    res.trail.push_back(cur);
  }
  // Carries cur, seen in the unit starting at base, onto target by an element of
  // F_[1/16,15/16] written in the generators 2, 3 of the given family.
  void steer(bool zeta, const Dyadic& base, char letter, const DInterval& target) {
    Dyadic lo = cur.lo - base, hi = cur.hi - base;
    if (lo == target.lo && hi == target.hi) return;
    Dyadic s = dy(1, 4), e = dy(15, 4);
    PLMap g = interpolate({{0, 0}, {s, s}, {lo, target.lo}, {hi, target.hi}, {e, e}, {1, 1}});
    for (char c : nu_word(orient(letter, g))) push({zeta, (c == 'a' || c == 'A') ? 2 : 3, c == 'A' || c == 'B'});
  }
  // z1 until cur sits inside (1/16, 15/16) of its cell m.
  void centre(long m) {
    Dyadic s = dy(1, 4), e = dy(15, 4);
    while (!(cur.lo - Dyadic(m) > s && cur.hi - Dyadic(m) < e)) push({true, 1, false});
  }
  void walk(long m, long m2) {
    const Labelling& rho = gens.rho();
    int dir = m2 > m ? 1 : -1;
    Dyadic half = dy(1, 1);
    while (m != m2) {
      char cl = to_char(rho.letter_at({2 * m + 1}));
      DInterval cell_target = dir > 0 ? DInterval{dy(13, 4), dy(27, 5)} : DInterval{dy(5, 5), dy(3, 4)};
      steer(true, Dyadic(m), cl, cell_target);
      long p = dir > 0 ? m + 1 : m;
      char bl = to_char(rho.letter_at({2 * p}));
      DInterval block_target = dir > 0 ? DInterval{dy(5, 3), dy(21, 5)} : DInterval{dy(11, 5), dy(3, 3)};
      steer(false, Dyadic(p) - half, bl, block_target);
      m += dir;
      if (!(Dyadic(m) < cur.lo && cur.hi < Dyadic(m + 1))) throw Error("NoProgress", "transport step missed its cell");
    }
  }
};

long start_cell(const DInterval& I) {
  long m = cell_of(I.lo);
  if (!(Dyadic(m) < I.lo) || !(I.hi < Dyadic(m + 1)) || !(I.lo < I.hi))
    throw Error("NotInsideCell", "interval must lie strictly inside one cell");
  return m;
}

}  // namespace

TransportResult transport(const GeneratorSet& gens, const DInterval& I, long m2) {
  long m = start_cell(I);
  Steering st{gens, {}, I};
  if (m == m2) return st.res;
  st.centre(m);
  st.walk(m, m2);
  long lo = std::min(m, m2), hi = std::max(m, m2) + 1;
  for (const auto& J : st.res.trail)
    if (J.lo < Dyadic(lo) || J.hi > Dyadic(hi)) throw Error("NoProgress", "transport left its corridor");
  return st.res;
}

TransportResult transport_over_zero(const GeneratorSet& gens, const DInterval& I) {
  if (I.lo < Dyadic(0) && Dyadic(0) < I.hi) return {};
  long m = start_cell(I);
  // Only one interior point has to reach 0: take the coarsest dyadic inside I.
  Dyadic p;
  for (long e = 0;; ++e) {
    p = Dyadic::normalize(I.lo.scaled(e).floor() + 1, e);
    if (p < I.hi) break;
  }
  const Labelling& rho = gens.rho();
  Steering st{gens, {}, I};
  Dyadic s = dy(1, 4), e = dy(15, 4), half = dy(1, 1);
  auto move = [&](bool zeta, const Dyadic& base, char letter, const Dyadic& to) {
    Dyadic from = p - base;
    if (from == to) return;
    PLMap g = interpolate({{0, 0}, {s, s}, {from, to}, {e, e}, {1, 1}});
    for (char c : nu_word(orient(letter, g))) st.push({zeta, (c == 'a' || c == 'A') ? 2 : 3, c == 'A' || c == 'B'});
    p = base + to;
  };
  auto centred = [&](long cell) { return p - Dyadic(cell) > s && p - Dyadic(cell) < e; };
  PLMap z1 = realize(gens.get({true, 1, false}), rho, m, m + 1);
  while (!centred(m)) {
    st.push({true, 1, false});
    p = z1.eval(p);
  }
  int dir = m < 0 ? 1 : -1;
  while (m != 0) {
    move(true, Dyadic(m), to_char(rho.letter_at({2 * m + 1})), dir > 0 ? dy(13, 4) : dy(3, 4));
    long q = dir > 0 ? m + 1 : m;
    move(false, Dyadic(q) - half, to_char(rho.letter_at({2 * q})), dir > 0 ? dy(11, 4) : dy(5, 4));
    m += dir;
  }
  move(true, Dyadic(0), to_char(rho.letter_at({1})), dy(3, 4));
  move(false, -half, to_char(rho.letter_at({0})), half);
  if (!(st.cur.lo < Dyadic(0) && Dyadic(0) < st.cur.hi)) throw Error("NoProgress", "interval does not cover 0");
  return st.res;
}

}  // namespace llab
