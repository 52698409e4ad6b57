#include "llab/decompose.hpp"

#include <algorithm>
#include <cstdlib>

namespace llab {

namespace {

const DInterval kUnit{Dyadic(0), Dyadic(1)};

Dyadic dy(long num, long exp) { return Dyadic::normalize(mpz_class(num), exp); }

// Some dyadic strictly between lo and hi.
Dyadic dyadic_between(const mpq_class& lo, const mpq_class& hi) {
  for (long e = 0;; ++e) {
    mpq_class s = lo * mpq_class(mpz_class(1) << e);
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    Dyadic d = Dyadic::normalize(fl + 1, e);
    if (d.to_mpq() < hi) return d;
  }
}

PatternElement mul(const PatternElement& f, const PatternElement& g, const Labelling& rho) {
  return compose_patterns(f, g, rho);
}

// Map of g on the block [p - 1/2, p + 1/2] in block coordinates.
PLMap block_map(const PatternElement& g, const Labelling& rho, long p) {
  Dyadic half = dy(1, 1);
  PLMap G = realize(g, rho, p - 1, p + 1);
  return translate(restrict_to(G, {Dyadic(p) - half, Dyadic(p) + half}), half - Dyadic(p));
}

// A dyadic interval of width 2^-e around q, inside (0, 1).
DInterval small_nbhd(const mpq_class& q, long e) {
  for (;; ++e) {
    mpq_class s = q * mpq_class(mpz_class(1) << e);
    mpz_class fl, ce;
    mpz_fdiv_q(fl.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    mpz_cdiv_q(ce.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    Dyadic a = Dyadic::normalize(fl - 1, e), b = Dyadic::normalize(ce + 1, e);
    if (a > Dyadic(0) && b < Dyadic(1)) return {a, b};
  }
}

struct Found {
  enum Kind { none, interval, point } kind = none;
  DInterval I;  // fixed interval strictly inside one cell
  mpq_class p0;
};

// Nearest fixed structure to 0; intervals win over isolated points.
Found search_fixed(const PatternElement& g, const Labelling& rho, long reach) {
  Found pt;
  for (long d = 0; d <= reach; ++d) {
    for (long cell : d == 0 ? std::vector<long>{0} : std::vector<long>{-d, d}) {
      PLMap G = realize(g, rho, cell, cell + 1);
      for (const QInterval& c : fixed_points_in(G, {Dyadic(cell), Dyadic(cell + 1)})) {
        if (c.lo < c.hi) {
          Dyadic a = dyadic_between(c.lo, c.hi);
          Dyadic b = dyadic_between(a.to_mpq(), c.hi);
          Found f;
          f.kind = Found::interval;
          f.I = {a, b};
          return f;
        }
        if (pt.kind == Found::none) {
          pt.kind = Found::point;
          pt.p0 = c.lo;
        }
      }
    }
  }
  return pt;
}

bool fixes_zero_nbhd(const PatternElement& g, const Labelling& rho) {
  PLMap G = realize(g, rho, -1, 1);
  return G.eval(Dyadic(0)) == Dyadic(0) && G.slope_left(Dyadic(0)) == 0 && G.slope_right(Dyadic(0)) == 0;
}

}  // namespace

PatternElement pattern_commutator(const PatternPair& p, const Labelling& rho) {
  PatternElement ai = invert_pattern(p.left, rho), bi = invert_pattern(p.right, rho);
  return mul(mul(mul(ai, bi, rho), p.left, rho), p.right, rho);
}

PatternElement conjugate_by(const PatternElement& x, const PatternElement& g, const Labelling& rho) {
  return mul(mul(g, x, rho), invert_pattern(g, rho), rho);
}

StabilisationWitness stabilise(const PatternElement& g, const GeneratorSet& gens) {
  const Labelling& rho = gens.rho();
  if (!validate_membership(g, rho).ok) throw Error("InvalidElement", "pattern fails membership");
  StabilisationWitness w;
  PatternElement id = identity_pattern(rho);
  w.g1 = id;
  w.g2 = id;
  w.g2_lifted = {id, id};
  w.g2_pair = {unit_identity(), unit_identity()};
  w.stabilized = g;
  if (fixes_zero_nbhd(g, rho)) {
    w.branch = "trivial";
    return w;
  }
  // the flip argument puts a fixed point between an occurrence of the word at 0 and its inverse
  long reach = 4 * recurrence_bound(rho, word_at(rho, Dyadic(0), g.k + 1)) + 4;
  Found fx = search_fixed(g, rho, reach);
  if (fx.kind == Found::none) throw std::logic_error("no fixed point inside the inspection window");

  PatternElement gg2 = g;  // g g2^-1
  DInterval I;
  if (fx.kind == Found::interval) {
    w.branch = "fixed-interval";
    I = fx.I;
  } else {
    const mpq_class p0 = fx.p0;
    w.p0 = p0;
    bool integer = p0.get_den() == 1;
    // local unit-interval coordinates: the block around an integer, else the cell
    mpq_class shift = integer ? p0 - mpq_class(1, 2) : mpq_class(0);
    if (!integer) {
      mpz_class fl;
      mpz_fdiv_q(fl.get_mpz_t(), p0.get_num_mpz_t(), p0.get_den_mpz_t());
      shift = fl;
    }
    long base = to_long(integer ? p0.get_num() : shift.get_num());
    PLMap local;
    char letter;
    if (integer) {
      w.branch = "pi";
      w.g2_kind = LiftKind::pi;
      local = block_map(g, rho, base);
      letter = to_char(rho.letter_at({2 * base}));
    } else {
      w.branch = "lambda";
      w.g2_kind = LiftKind::lambda;
      local = translate(realize(g, rho, base, base + 1), Dyadic(-base));
      letter = to_char(rho.letter_at({2 * base + 1}));
    }
    mpq_class q = p0 - shift;
    DInterval U = small_nbhd(q, 3);
    GermCommutator gc = germ_commutator(restrict_to(local, U), q);
    w.g2_pair = {orient(letter, gc.pair.left), orient(letter, gc.pair.right)};
    w.g2_lifted = {lift(w.g2_kind, w.g2_pair.left, rho), lift(w.g2_kind, w.g2_pair.right, rho)};
    w.g2 = pattern_commutator(w.g2_lifted, rho);
    gg2 = mul(g, invert_pattern(w.g2, rho), rho);
    // a piece of V strictly inside one cell
    DInterval J;
    if (integer) {
      Dyadic r = gc.V.hi - dy(1, 1);
      J = {dy(1, 1) + r.scaled(-2), dy(1, 1) + r.half()};
    } else {
      J = gc.V;
    }
    Dyadic off = integer ? Dyadic(base) - dy(1, 1) : Dyadic(base);
    I = {J.lo + off, J.hi + off};
  }
  TransportResult tr = transport_over_zero(gens, I);
  w.g1_word = tr.word;
  w.g1 = gens.eval(tr.word);
  w.stabilized = mul(mul(invert_pattern(w.g1, rho), gg2, rho), w.g1, rho);
  return w;
}

StabilisationCheck check_stabilisation(const StabilisationWitness& w, const PatternElement& g, const Labelling& rho) {
  StabilisationCheck c;
  c.fixes_zero = fixes_zero_nbhd(w.stabilized, rho);
  c.uniformly_stable = uniformly_stable(w.stabilized, rho);
  c.g2_commutator = equal_patterns(pattern_commutator(w.g2_lifted, rho), w.g2, rho);
  // the witness must also reproduce g
  PatternElement back = mul(mul(mul(w.g1, w.stabilized, rho), invert_pattern(w.g1, rho), rho), w.g2, rho);
  if (!equal_patterns(back, g, rho)) c.g2_commutator = false;
  return c;
}

DirectSumEmbedding direct_sum_embed(const AtomAnalysis& a) {
  if (!a.stable()) throw Error("NotStable", "element is not stable");
  DirectSumEmbedding e;
  e.base = a.element();
  e.n = a.l_f();
  e.max_atom = a.max_atom();
  for (const auto& c : a.classes(e.n)) {
    if (c.trivial) continue;
    const Atom& at = c.rep.atom;
    e.lengths.push_back(at.length());
    e.words.push_back(c.rep.word);
    e.components.push_back(translate(at.restriction, Dyadic(-at.m1)));
  }
  return e;
}

DirectSumEmbedding direct_sum_embed(const PatternElement& f, const Labelling& rho) {
  return direct_sum_embed(AtomAnalysis(f, rho));
}

PatternElement assemble(const DirectSumEmbedding& e, const std::vector<PLMap>& tuple, const Labelling& rho) {
  if (tuple.size() != e.components.size()) throw std::invalid_argument("tuple size differs from the embedding");
  const PatternElement& f = e.base;
  long l = e.max_atom, n = e.n, k = f.k;
  long K = std::max(2 * l + k, 2 * l - 2 + n) + 1;
  // cells of each tuple entry in unit coordinates, straight and flipped
  std::vector<std::vector<PLMap>> cells(tuple.size()), flipped(tuple.size());
  std::vector<std::string> inv;
  for (size_t i = 0; i < tuple.size(); ++i) {
    DInterval I{Dyadic(0), Dyadic(e.lengths[i])};
    PLMap fl = flip_conjugate(tuple[i], I);
    for (long c = 0; c < e.lengths[i]; ++c) {
      cells[i].push_back(translate(restrict_to(tuple[i], {Dyadic(c), Dyadic(c + 1)}), Dyadic(-c)));
      flipped[i].push_back(translate(restrict_to(fl, {Dyadic(c), Dyadic(c + 1)}), Dyadic(-c)));
    }
    inv.push_back(e.words[i].inverse().letters);
  }
  PatternElement out = make_pattern(K, rho, [&](const std::string& w) {
    Env env = Env::around_cell(w);
    long m1 = 0, m2 = 0;
    if (!local_atom(f, env, l, m1, m2)) throw std::logic_error("atom longer than its bound");
    std::string word = env.slice(2 * m1 + 1 - n, 2 * m2 - 1 + n);
    for (size_t i = 0; i < e.words.size(); ++i) {
      if (m2 - m1 != e.lengths[i]) continue;
      if (word == e.words[i].letters) return cells[i][-m1];
      if (word == inv[i]) return flipped[i][-m1];
    }
    return PLMap::identity_on(kUnit);
  });
  return minimize_width(out, rho);
}

ThreeCommutators three_commutators(const PatternElement& f, const GeneratorSet& gens) {
  const Labelling& rho = gens.rho();
  ThreeCommutators out;
  out.witness = stabilise(f, gens);
  AtomAnalysis a(out.witness.stabilized, rho);
  out.embedding = direct_sum_embed(a);
  const auto& e = out.embedding;
  size_t m = e.components.size();
  std::vector<std::vector<PLMap>> lefts(2), rights(2);
  std::vector<std::pair<PLMap, std::vector<CommutatorPair>>> done;  // components often repeat
  for (size_t i = 0; i < m; ++i) {
    DInterval I{Dyadic(0), Dyadic(e.lengths[i])};
    PLMap psi = interpolate({{0, 0}, {e.lengths[i], 1}});  // [0, L] onto [0, 1]
    PLMap psi_inv = invert(psi);
    PLMap unit = compose(compose(psi_inv, e.components[i]), psi);
    auto hit = std::find_if(done.begin(), done.end(), [&](const auto& d) { return d.first == unit; });
    if (hit == done.end()) hit = done.insert(done.end(), {unit, two_commutator_decompose(unit)});
    const auto& pairs = hit->second;
    for (size_t j = 0; j < 2; ++j) {
      PLMap l = PLMap::identity_on(I), r = PLMap::identity_on(I);
      if (j < pairs.size()) {
        l = compose(compose(psi, as_unit(pairs[j].left)), psi_inv);
        r = compose(compose(psi, as_unit(pairs[j].right)), psi_inv);
      }
      lefts[j].push_back(l);
      rights[j].push_back(r);
    }
  }
  for (size_t j = 0; j < 2; ++j) {
    PatternElement A = assemble(e, lefts[j], rho), B = assemble(e, rights[j], rho);
    out.pairs.push_back({conjugate_by(A, out.witness.g1, rho), conjugate_by(B, out.witness.g1, rho)});
  }
  out.pairs.push_back(out.witness.g2_lifted);
  return out;
}

long required_padding(const std::vector<PatternPair>& pairs) {
  Dyadic total(0);
  for (const auto& p : pairs) total = total + (p.left.disp_bound() + p.right.disp_bound()) * Dyadic(2);
  return to_long(total.ceil()) + 1;
}

bool verify_product(const std::vector<PatternPair>& pairs, const PatternElement& f, const Labelling& rho, long A,
                    long B, std::optional<long> padding) {
  if (B <= A) throw Error("EmptyInterval", "window needs B > A");
  long need = required_padding(pairs);
  long P = padding.value_or(need);
  if (P < need)
    throw Error("WindowTooSmall", "padding " + std::to_string(P) + " is below the bound " + std::to_string(need));
  DInterval W{Dyadic(A - P), Dyadic(B + P)};
  auto forward = [&](const PatternElement& x) { return realize(x, rho, A - P, B + P); };
  auto backward = [&](const PatternElement& x) {
    long c = to_long(x.disp_bound().ceil()) + 1;
    return restrict_to(invert(realize(x, rho, A - P - c, B + P + c)), W);
  };
  PLMap C = PLMap::identity_on({Dyadic(A), Dyadic(B)});
  for (const auto& p : pairs) {
    for (const PLMap& F : {backward(p.left), backward(p.right), forward(p.left), forward(p.right)}) {
      DInterval img = C.image();
      if (img.lo < W.lo || img.hi > W.hi) throw Error("WindowTooSmall", "product leaves the padded window");
      C = compose(C, F);
    }
  }
  return C == realize(f, rho, A, B);
}

}  // namespace llab
