#include "helpers.hpp"
#include "llab/decompose.hpp"

#include <doctest.h>

#include <set>

using namespace llab;

namespace {
Labelling seed_a() { return Labelling::from_permissible(BlockWord::parse("a")); }
const DInterval kUnit{Dyadic(0), Dyadic(1)};
PLMap comm23() { return commutator(canonical_element(Canonical::nu2), canonical_element(Canonical::nu3)); }
}  // namespace

TEST_CASE("stabilise: already stable") {
  Labelling rho = seed_a();
  GeneratorSet gens(rho);
  PatternElement id = identity_pattern(rho);
  auto w = stabilise(id, gens);
  CHECK(w.branch == "trivial");
  CHECK(w.g1_word.empty());
  CHECK(is_identity_pattern(w.g2, rho));
  CHECK(check_stabilisation(w, id, rho).ok());

  PatternElement s = special_element(LiftKind::lambda, {"bab", 0, 2}, comm23(), rho);
  auto ws = stabilise(s, gens);
  CHECK(ws.branch == "trivial");
  CHECK(check_stabilisation(ws, s, rho).ok());
}

TEST_CASE("stabilise: generator words") {
  Labelling rho = seed_a();
  GeneratorSet gens(rho);
  PatternElement f = gens.eval(parse_generator_word("z1 x1"));
  auto w = stabilise(f, gens);
  auto chk = check_stabilisation(w, f, rho);
  CHECK(chk.fixes_zero);
  CHECK(chk.uniformly_stable);
  CHECK(chk.g2_commutator);
  CHECK(stability(w.stabilized, rho).stable);
  CHECK(in_F_prime(w.g2_pair.left));
  CHECK(in_F_prime(w.g2_pair.right));
}

TEST_CASE("stabilise: both germ branches") {
  Labelling rho = seed_a();
  GeneratorSet gens(rho);
  std::set<std::string> seen;
  for (const char* s : {"z1", "x1", "z1 x1", "x2 z1'", "z2 x1 z3'", "x1' z1 x3"}) {
    PatternElement f = gens.eval(parse_generator_word(s));
    auto w = stabilise(f, gens);
    seen.insert(w.branch);
    CHECK_MESSAGE(check_stabilisation(w, f, rho).ok(), s);
  }
  CHECK(seen.count("pi"));

  // pi(nu2) moves the integers, lambda(h) fixes only the cell centres and ends,
  // so 1/2 is an isolated fixed point and the lambda germ is needed
  using testing::dy;
  PLMap h = PLMap::from_knots(PLMap::Kind::interval, {{0, 0},
                                                       {dy(1, 2), dy(1, 3)},
                                                       {dy(3, 3), dy(1, 2)},
                                                       {dy(1, 1), dy(1, 1)},
                                                       {dy(5, 3), dy(3, 2)},
                                                       {dy(3, 2), dy(7, 3)},
                                                       {1, 1}});
  PatternElement g =
      compose_patterns(lift(LiftKind::pi, canonical_element(Canonical::nu2), rho), lift(LiftKind::lambda, h, rho), rho);
  // one of its fixed points is not dyadic
  auto fx = fixed_points_in(realize(g, rho, -1, 0), {Dyadic(-1), Dyadic(0)});
  CHECK(std::find(fx.begin(), fx.end(), QInterval{mpq_class(-17, 24), mpq_class(-17, 24)}) != fx.end());
  auto w = stabilise(g, gens);
  CHECK(w.branch == "lambda");
  CHECK(w.p0 == mpq_class(1, 2));
  CHECK(check_stabilisation(w, g, rho).ok());
}

TEST_CASE("direct sum embedding") {
  Labelling rho = seed_a();
  auto e0 = direct_sum_embed(identity_pattern(rho), rho);
  CHECK(e0.components.empty());

  PLMap h = comm23();
  PatternElement s = special_element(LiftKind::lambda, {"bab", 0, 2}, h, rho);
  auto e = direct_sum_embed(s, rho);
  REQUIRE(e.components.size() == 1);
  CHECK(e.lengths[0] == 1);
  // the component is h, possibly read in the other orientation
  PLMap c = e.components[0];
  CHECK((c == h || c == flip_conjugate(h, kUnit)));
  CHECK(equal_patterns(assemble(e, e.components, rho), s, rho));
}

TEST_CASE("three commutators") {
  Labelling rho = seed_a();
  GeneratorSet gens(rho);
  auto id = three_commutators(identity_pattern(rho), gens);
  CHECK(id.pairs.size() == 3);
  CHECK(verify_product(id.pairs, identity_pattern(rho), rho, -10, 10));

  // a commutator of generators
  PatternElement a = gens.get({true, 2, false}), b = gens.get({false, 3, false});
  PatternElement c = pattern_commutator({a, b}, rho);
  auto tc = three_commutators(c, gens);
  CHECK(tc.pairs.size() == 3);
  CHECK(verify_product(tc.pairs, c, rho, -10, 10));

  PatternElement f = gens.eval(parse_generator_word("z1 x1"));
  auto tf = three_commutators(f, gens);
  REQUIRE(tf.pairs.size() == 3);
  CHECK(verify_product(tf.pairs, f, rho, -10, 10));

  // negative control: one factor replaced
  auto bad = tf.pairs;
  bad[0].left = gens.get({false, 2, false});
  CHECK_FALSE(verify_product(bad, f, rho, -10, 10));
}

TEST_CASE("padding below the displacement bound is refused") {
  Labelling rho = seed_a();
  GeneratorSet gens(rho);
  PatternElement f = gens.eval(parse_generator_word("z1 x1"));
  auto tf = three_commutators(f, gens);
  long need = required_padding(tf.pairs);
  CHECK(need > 0);
  CHECK_THROWS_AS(verify_product(tf.pairs, f, rho, -10, 10, need - 1), Error);
  CHECK(verify_product(tf.pairs, f, rho, -10, 10, need + 2));
}

TEST_CASE("conjugation") {
  Labelling rho = seed_a();
  GeneratorSet gens(rho);
  PatternElement x = gens.get({true, 1, false}), g = gens.get({false, 2, false});
  PatternElement y = conjugate_by(x, g, rho);
  PatternElement direct = compose_patterns(compose_patterns(g, x, rho), invert_pattern(g, rho), rho);
  CHECK(equal_patterns(y, direct, rho));
}
