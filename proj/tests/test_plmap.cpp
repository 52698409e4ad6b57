#include "helpers.hpp"
#include "llab/plmap.hpp"
#include "llab/textio.hpp"
#include "llab/thompson.hpp"

#include <doctest.h>

using namespace llab;
using testing::dy;

namespace {
const DInterval kUnit{Dyadic(0), Dyadic(1)};
PLMap c0() { return canonical_element(Canonical::c0); }
PLMap c1() { return canonical_element(Canonical::c1); }
PLMap nu1() { return canonical_element(Canonical::nu1); }
}  // namespace

TEST_CASE("evaluate") {
  CHECK(unit_identity()(dy(5, 3)) == dy(5, 3));
  CHECK(c0()(dy(1, 5)) == dy(1, 4));
  CHECK(PLMap::linear({Dyadic(0), dy(1, 1)}, Dyadic(0), 1)(dy(3, 3)) == dy(3, 2));
  CHECK_THROWS_AS(c0()(Dyadic(2)), Error);
}

TEST_CASE("compose follows the right action") {
  CHECK(compose(c0(), invert(c0())).is_identity());
  CHECK(compose(c0(), c1()) == nu1());
  auto sup = support(nu1());
  REQUIRE(sup.size() == 2);
  CHECK(sup[0] == QInterval{0, mpq_class(1, 4)});
  CHECK(sup[1] == QInterval{mpq_class(3, 4), 1});

  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    PLMap f = testing::random_f(rng, 6), g = testing::random_f(rng, 6);
    PLMap fg = compose(f, g);
    for (int j = 0; j < 100; ++j) {
      Dyadic x = testing::random_dyadic(rng, Dyadic(0), Dyadic(1));
      CHECK(fg(x) == g(f(x)));
    }
  }
}

TEST_CASE("invert") {
  CHECK(invert(unit_identity()).is_identity());
  PLMap ci = invert(c0());
  CHECK(ci.slope_right(Dyadic(0)) == -1);
  CHECK(ci(dy(1, 4)) == dy(1, 5));
}

TEST_CASE("support and fixed points") {
  CHECK(support(unit_identity()).empty());
  CHECK(support(compose(nu1(), invert(nu1()))).empty());
  auto fx = fixed_points_in(nu1(), kUnit);
  REQUIRE(fx.size() == 3);
  CHECK(fx[0] == QInterval{0, 0});
  CHECK(fx[1] == QInterval{mpq_class(1, 4), mpq_class(3, 4)});
  CHECK(fx[2] == QInterval{1, 1});
  CHECK(fixed_points_in(unit_identity(), kUnit) == std::vector<QInterval>{{0, 1}});
  CHECK(fixed_points_in(c0(), {dy(1, 1), Dyadic(1)}) == std::vector<QInterval>{{mpq_class(1, 2), 1}});
}

TEST_CASE("flip and translate") {
  CHECK(flip_conjugate(c0(), kUnit) == c1());
  CHECK(flip_conjugate(nu1(), kUnit) == nu1());
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    PLMap f = testing::random_f(rng, 5);
    CHECK(flip_conjugate(flip_conjugate(f, kUnit), kUnit) == f);
    Dyadic t = testing::random_dyadic(rng, Dyadic(-4), Dyadic(4), 3);
    PLMap g = translate(f, t);
    CHECK(g.domain() == DInterval{t, t + Dyadic(1)});
    auto sf = support(f), sg = support(g);
    REQUIRE(sf.size() == sg.size());
    for (size_t j = 0; j < sf.size(); ++j) CHECK(sg[j].lo == sf[j].lo + t.to_mpq());
  }
  CHECK(translate(nu1(), 0) == nu1());
  CHECK(translate(nu1(), 3)(dy(3 * 32 + 1, 5)) == Dyadic(3) + dy(1, 4));
}

TEST_CASE("normal form makes equality structural") {
  // an extra breakpoint on a straight piece disappears
  PLMap a = PLMap::from_knots(PLMap::Kind::interval, {{0, 0}, {dy(1, 1), dy(1, 1)}, {1, 1}});
  CHECK(a == unit_identity());
  CHECK(a.knots().size() == 2);
  CHECK_THROWS_AS(PLMap::from_knots(PLMap::Kind::interval, {{0, 0}, {dy(1, 1), dy(3, 2)}, {1, 1}}), Error);
}

TEST_CASE("line maps are the identity off their knots") {
  PLMap f = extend_to_line(nu1());
  CHECK(f.on_line());
  CHECK(f(Dyadic(5)) == Dyadic(5));
  CHECK(f(dy(1, 5)) == nu1()(dy(1, 5)));
  CHECK(as_unit(f) == nu1());
}

TEST_CASE("plmap text round trip") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 30; ++i) {
    PLMap f = testing::random_f(rng, 8);
    CHECK(parse_plmap(format_plmap(f)) == f);
    PLMap g = extend_to_line(translate(f, Dyadic(static_cast<long>(rng() % 7) - 3)));
    CHECK(parse_plmap(format_plmap(g)) == g);
  }
  CHECK(parse_plmap(format_plmap(PLMap::identity_line())) == PLMap::identity_line());
  CHECK(format_plmap(c0()) ==
        "plmap domain 0 1\nbp 0 0 1\nbp 1/2^4 1/2^3 0\nbp 1/2^3 3/2^4 -1\nbp 1/2^2 1/2^2 0\nend\n");
}
