#include "helpers.hpp"
#include "llab/grho.hpp"
#include "llab/pattern.hpp"
#include "llab/textio.hpp"

#include <doctest.h>

using namespace llab;
using testing::dy;

namespace {
Labelling seed_a() { return Labelling::from_permissible(BlockWord::parse("a")); }
GenToken tok(const char* s) { return parse_generator_word(s).at(0); }
}  // namespace

TEST_CASE("realize") {
  Labelling rho = seed_a();
  CHECK(realize(identity_pattern(rho), rho, -5, 5).is_identity());
  PatternElement z1 = generator(tok("z1"), rho);
  CHECK(realize(z1, rho, 0, 1)(dy(1, 5)) == dy(1, 4));
  PatternElement x1 = generator(tok("x1"), rho);
  CHECK(realize(x1, rho, -1, 1)(dy(-15, 5)) == dy(-7, 4));
}

TEST_CASE("compose, invert and equality") {
  Labelling rho = seed_a();
  GeneratorSet gens(rho);
  PatternElement z1 = gens.get(tok("z1")), x1 = gens.get(tok("x1"));
  CHECK(is_identity_pattern(compose_patterns(z1, invert_pattern(z1, rho), rho), rho));
  CHECK(equal_patterns(compose_patterns(z1, gens.get(tok("z1'")), rho), identity_pattern(rho), rho));
  CHECK(equal_patterns(invert_pattern(z1, rho), gens.get(tok("z1'")), rho));
  CHECK(equal_patterns(invert_pattern(invert_pattern(x1, rho), rho), x1, rho));
  CHECK(equal_patterns(widen(x1, rho, 3), x1, rho));
  CHECK(widen(x1, rho, 3).k == 3);

  PatternElement zx = compose_patterns(z1, x1, rho);
  CHECK(zx.k <= 3);
  CHECK(realize(zx, rho, -6, 6) == compose(realize(z1, rho, -6, 6), realize(x1, rho, -6, 6)));

  std::mt19937_64 rng(31);
  std::vector<GenToken> all;
  for (const char* s : {"z1", "z2", "z3", "x1", "x2", "x3"}) all.push_back(tok(s));
  for (int i = 0; i < 10; ++i) {
    PatternElement a = gens.get(all[rng() % 6]), b = gens.get(all[rng() % 6]), c = gens.get(all[rng() % 6]);
    PatternElement l = compose_patterns(compose_patterns(a, b, rho), c, rho);
    PatternElement r = compose_patterns(a, compose_patterns(b, c, rho), rho);
    CHECK(equal_patterns(l, r, rho));
    CHECK(realize(l, rho, -8, 8) == realize(r, rho, -8, 8));
  }
}

TEST_CASE("widening leaves realizations alone") {
  Labelling rho = seed_a();
  GeneratorSet gens(rho);
  PatternElement f = gens.eval(parse_generator_word("z2 x3' z1"));
  for (long k = f.k; k <= f.k + 2; ++k) CHECK(realize(widen(f, rho, k), rho, -9, 9) == realize(f, rho, -9, 9));
  CHECK(equal_patterns(minimize_width(widen(f, rho, f.k + 2), rho), f, rho));
}

TEST_CASE("membership") {
  Labelling rho = seed_a();
  CHECK(validate_membership(identity_pattern(rho), rho).ok);
  GeneratorSet gens(rho);
  for (const char* s : {"z1", "z2", "z3", "x1", "x2", "x3", "z1'", "x3'"})
    CHECK(validate_membership(gens.get(tok(s)), rho).ok);

  // both members of a flip pair, disagreeing
  PatternElement bad = gens.get(tok("x2"));
  auto [w, g] = *bad.table.begin();
  std::string inv = BlockWord{w}.inverse().letters;
  bad.table[inv] = invert(flip_conjugate(g, {Dyadic(0), Dyadic(1)}));
  auto rep = validate_membership(bad, rho);
  CHECK_FALSE(rep.ok);
  REQUIRE_FALSE(rep.violations.empty());
  CHECK(rep.violations[0].find("flip constraint") != std::string::npos);

  // a cell map that does not fix the cell ends breaks continuity
  PatternElement shifted = gens.get(tok("z1"));
  shifted.table.begin()->second = PLMap::linear({Dyadic(0), Dyadic(1)}, dy(1, 2), 0);
  CHECK_FALSE(validate_membership(shifted, rho).ok);
}

TEST_CASE("displacement bound") {
  Labelling rho = seed_a();
  GeneratorSet gens(rho);
  CHECK(displacement_bound(identity_pattern(rho)) == Dyadic(0));
  for (const char* s : {"z1", "z2", "z3", "x1", "x2", "x3"}) CHECK(displacement_bound(gens.get(tok(s))) < Dyadic(1));
  CHECK(displacement_bound(gens.eval(parse_generator_word("z1 x1 z2 x2 z3"))) <= Dyadic(6));
}

TEST_CASE("pattern text round trip") {
  Labelling rho = seed_a();
  GeneratorSet gens(rho);
  for (const char* w : {"z1", "x3'", "z1 x1", "z2 x3' z1 x2"}) {
    PatternElement p = gens.eval(parse_generator_word(w));
    PatternElement q = parse_pattern(format_pattern(p));
    CHECK(q.k == p.k);
    CHECK(q.table == p.table);
    CHECK(format_pattern(q) == format_pattern(p));
  }
}
