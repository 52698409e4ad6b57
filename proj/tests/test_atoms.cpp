#include "helpers.hpp"
#include "llab/atoms.hpp"

#include <doctest.h>

using namespace llab;

namespace {

Labelling seed_a() { return Labelling::from_permissible(BlockWord::parse("a")); }
const DInterval kUnit{Dyadic(0), Dyadic(1)};

PLMap comm23() { return commutator(canonical_element(Canonical::nu2), canonical_element(Canonical::nu3)); }

// Width-1 table mixing maps that fix the cell ends with maps that move them,
// so some atoms span several cells.
PatternElement multi_cell(const Labelling& rho) {
  PLMap x1 = generator_x1();
  return make_pattern(1, rho, [&](const std::string& w) {
    // x1 moves points near 1 only, so each such cell merges with one neighbour
    if (w == "ABa") return x1;
    return PLMap::identity_on(kUnit);
  });
}

Dyadic as_dyadic_floor(const mpq_class& q) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Dyadic(fl);
}

PatternElement product_of(const std::vector<PatternElement>& v, const Labelling& rho) {
  PatternElement p = identity_pattern(rho);
  for (const auto& x : v) p = compose_patterns(p, x, rho);
  return p;
}

}  // namespace

TEST_CASE("identity") {
  Labelling rho = seed_a();
  PatternElement id = identity_pattern(rho);
  auto st = stability(id, rho);
  CHECK(st.stable);
  for (const Atom& a : st.atoms) CHECK(a.length() == 1);
  CHECK(l_constant(id, rho) == id.k + 1);
  auto cls = decorated_classes(id, l_constant(id, rho), rho);
  REQUIRE(cls.size() == 1);
  CHECK(cls[0].trivial);
  CHECK(cellular_decomposition(id, rho).empty());
}

TEST_CASE("special elements are stable") {
  Labelling rho = seed_a();
  PatternElement s = special_element(LiftKind::lambda, {"bab", 0, 2}, comm23(), rho);
  auto st = stability(s, rho);
  CHECK(st.stable);
  CHECK(st.max_atom == 1);
  CHECK(uniformly_stable(s, rho));
  AtomAnalysis a(s, rho);
  CHECK(check_atom_lemmas(a).ok);
}

TEST_CASE("W and its inverse fall in one class") {
  Labelling rho = seed_a();
  PatternElement s = special_element(LiftKind::lambda, {"aBA", 1, 1}, comm23(), rho);
  AtomAnalysis a(s, rho);
  size_t nontrivial = 0;
  for (const auto& c : a.classes(a.l_f())) {
    if (c.trivial) continue;
    ++nontrivial;
    bool both = std::find(c.flipped.begin(), c.flipped.end(), true) != c.flipped.end() &&
                std::find(c.flipped.begin(), c.flipped.end(), false) != c.flipped.end();
    CHECK(both);
  }
  CHECK(nontrivial >= 1);
  // window growth does not change the classes
  CHECK(a.classes(a.l_f()).size() == a.classes(a.l_f(), 1).size());
}

TEST_CASE("an element moving every integer is unstable") {
  Labelling rho = seed_a();
  // lambda(nu1) has slope 2 at each integer, so no integer has a fixed neighbourhood
  PatternElement z1 = generator({true, 1, false}, rho);
  auto st = stability(z1, rho);
  CHECK_FALSE(st.stable);
  CHECK(st.window_lo < st.window_hi);
  CHECK_FALSE(fix_gap(z1, rho).has_value());
  CHECK_THROWS_AS(cellular_decomposition(z1, rho), Error);
}

TEST_CASE("multi-cell atoms") {
  Labelling rho = seed_a();
  PatternElement f = multi_cell(rho);
  REQUIRE(validate_membership(f, rho).ok);
  AtomAnalysis a(f, rho);
  REQUIRE(a.stable());
  CHECK(a.max_atom() >= 2);
  CHECK(a.l_f() == f.k + a.max_atom());
  auto lem = check_atom_lemmas(a);
  CHECK(lem.ok);
  CHECK(lem.comparisons > 0);

  auto pieces = cellular_decomposition(a);
  CHECK(equal_patterns(product_of(pieces, rho), f, rho));

  for (const auto& c : a.classes(a.l_f())) {
    if (c.trivial) continue;
    SpecialWitness sw = class_to_special(a, c);
    CHECK(fixes_atom_ends(a, sw.g));
    PatternElement lam = special_element(LiftKind::lambda, sw.omega, sw.h, rho);
    PatternElement rec = compose_patterns(compose_patterns(sw.g, lam, rho), invert_pattern(sw.g, rho), rho);
    CHECK(equal_patterns(rec, class_piece(a, c), rho));

    // the push carries the class support into the head cell
    PatternElement g = atom_push(a, c, AtomEnd::head);
    const Atom& at = c.rep.atom;
    PatternElement moved = compose_patterns(compose_patterns(invert_pattern(g, rho), class_piece(a, c), rho), g, rho);
    PLMap r = realize(moved, rho, at.m1, at.m2);
    CHECK(identity_on(r, {Dyadic(at.m1 + 1), Dyadic(at.m2)}));
  }
}

TEST_CASE("two special elements on disjoint words come back apart") {
  Labelling rho = seed_a();
  std::mt19937_64 rng(43);
  PLMap h1 = testing::random_f_prime(rng, 3), h2 = testing::random_f_prime(rng, 3);
  PatternElement s1 = special_element(LiftKind::lambda, {"aBA", 1, 1}, h1, rho);
  PatternElement s2 = special_element(LiftKind::lambda, {"Aba", 1, 1}, h2, rho);
  PatternElement f = compose_patterns(s1, s2, rho);
  // classes follow decorated words, which are finer than the two omegas;
  // grouping the pieces by support gives back each factor
  auto pieces = cellular_decomposition(f, rho);
  REQUIRE(pieces.size() >= 2);
  PatternElement p1 = identity_pattern(rho), p2 = identity_pattern(rho);
  PLMap r1 = realize(s1, rho, -12, 12);
  for (const auto& p : pieces) {
    PLMap r = realize(p, rho, -12, 12);
    bool in1 = true;
    for (const auto& J : support(r)) in1 = in1 && !identity_on(r1, {as_dyadic_floor(J.lo), as_dyadic_floor(J.lo) + 1});
    (in1 ? p1 : p2) = compose_patterns(in1 ? p1 : p2, p, rho);
  }
  CHECK(equal_patterns(p1, s1, rho));
  CHECK(equal_patterns(p2, s2, rho));
  CHECK(equal_patterns(product_of(pieces, rho), f, rho));
}

TEST_CASE("a special element is its own witness") {
  Labelling rho = seed_a();
  PatternElement s = special_element(LiftKind::lambda, {"bab", 0, 2}, comm23(), rho);
  AtomAnalysis a(s, rho);
  for (const auto& c : a.classes(a.l_f())) {
    if (c.trivial) continue;
    SpecialWitness sw = class_to_special(a, c);
    CHECK(is_identity_pattern(sw.g, rho));
    CHECK(equal_patterns(special_element(LiftKind::lambda, sw.omega, sw.h, rho), s, rho));
  }
}
