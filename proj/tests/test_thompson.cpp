#include "helpers.hpp"
#include "llab/thompson.hpp"

#include <doctest.h>

using namespace llab;
using testing::dy;

namespace {

PLMap nu(int i) { return canonical_element(i == 2 ? Canonical::nu2 : Canonical::nu3); }

// Word in nu2 (a), nu3 (b) and inverses, evaluated on [0,1].
PLMap nu_eval(const std::string& w) {
  PLMap out = unit_identity();
  for (char c : w) {
    PLMap g = nu(c == 'a' || c == 'A' ? 2 : 3);
    out = compose(out, std::isupper(static_cast<unsigned char>(c)) ? invert(g) : g);
  }
  return out;
}

}  // namespace

TEST_CASE("classify") {
  CHECK(classify(unit_identity()) == FClass::F_prime);
  CHECK(classify(canonical_element(Canonical::c0)) == FClass::F);
  CHECK(classify(nu(2)) == FClass::F_prime);
  CHECK(classify(generator_x0()) == FClass::F);
  CHECK(in_H(canonical_element(Canonical::nu1)));
  CHECK_FALSE(in_H(canonical_element(Canonical::c0)));
}

TEST_CASE("canonical elements") {
  CHECK(canonical_element(Canonical::c0)(dy(1, 5)) == dy(1, 4));
  CHECK(flip_conjugate(canonical_element(Canonical::nu1), {Dyadic(0), Dyadic(1)}) == canonical_element(Canonical::nu1));
  for (int i : {2, 3}) {
    auto h = support_hull(nu(i));
    REQUIRE(h);
    CHECK(h->lo >= mpq_class(1, 16));
    CHECK(h->hi <= mpq_class(15, 16));
  }
  // the inner conjugator carries x0, x1 to nu2, nu3
  PLMap phi = inner_conjugator();
  CHECK(as_unit(extend_to_line(compose(compose(invert(phi), generator_x0()), phi))) == nu(2));
}

TEST_CASE("transit") {
  auto I = StdDyadicInterval::make(1, 2), J = StdDyadicInterval::make(2, 2);
  PLMap f = transit(I, J);
  CHECK(f(dy(1, 2)) == dy(1, 1));
  CHECK(f(dy(1, 1)) == dy(3, 2));
  CHECK(linear_on(f, I.interval()));
  CHECK(classify(f) == FClass::F_prime);
  CHECK(transit(I, I).is_identity());
  CHECK_THROWS_AS(transit(StdDyadicInterval::make(0, 1), J), Error);

  auto I1 = StdDyadicInterval::make(1, 3), I2 = StdDyadicInterval::make(4, 3);
  auto J1 = StdDyadicInterval::make(2, 3), J2 = StdDyadicInterval::make(12, 4);
  PLMap g = transit2(I1, I2, J1, J2);
  CHECK(g(dy(1, 3)) == dy(1, 2));
  CHECK(g(dy(1, 2)) == dy(3, 3));
  CHECK(g(dy(1, 1)) == dy(3, 2));
  CHECK(g(dy(5, 3)) == dy(13, 4));
  PLMap gi = invert(g);
  CHECK(gi(dy(3, 2)) == dy(1, 1));
}

TEST_CASE("germ commutator") {
  mpq_class p0(3, 8);
  DInterval U{dy(5, 4), dy(7, 4)};
  auto idg = germ_commutator(PLMap::identity_on(U), p0);
  CHECK(commutator(idg.pair.left, idg.pair.right).is_identity());

  // slope 2 through (3/8, 3/8)
  PLMap germ = PLMap::from_knots(PLMap::Kind::interval, {{dy(11, 5), dy(10, 5)}, {dy(13, 5), dy(14, 5)}});
  auto gc = germ_commutator(germ, p0);
  PLMap c = commutator(gc.pair.left, gc.pair.right);
  CHECK(gc.V.lo.to_mpq() < p0);
  CHECK(p0 < gc.V.hi.to_mpq());
  CHECK(restrict_to(c, gc.V) == restrict_to(germ, gc.V));
}

TEST_CASE("words in F") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 30; ++i) {
    PLMap f = testing::random_f(rng, 10);
    CHECK(eval_f_word(f_word(f)) == f);
  }
  CHECK(f_word(unit_identity()).empty());
  CHECK(reduce_word("aAbBa") == "a");
  CHECK(invert_word("ab") == "BA");
}

TEST_CASE("peeling commutators in the free group") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 50; ++i) {
    std::string w = testing::random_letters(rng, 12);
    w += invert_word(testing::random_letters(rng, 0)) + testing::random_letters(rng, 0);
    // force zero exponent sums by appending the inverse of a permutation of w
    std::string p = w;
    std::shuffle(p.begin(), p.end(), rng);
    w += invert_word(p);
    std::string prod;
    for (auto& [u, v] : peel_commutators(w))
      prod += invert_word(u) + invert_word(v) + u + v;
    CHECK(reduce_word(prod) == reduce_word(w));
    // the map version agrees after evaluation
    PLMap direct = eval_f_word(w);
    CHECK(product(peel_commutator_maps(w)) == direct);
  }
}

TEST_CASE("two commutators in F'") {
  CHECK(two_commutator_decompose(unit_identity()).empty());

  PLMap c = commutator(invert(nu(2)), invert(nu(3)));
  auto one = two_commutator_decompose(c);
  CHECK(one.size() == 1);
  CHECK(product(one) == c);

  std::mt19937_64 rng(23);
  for (int i = 0; i < 40; ++i) {
    int len = 1 + static_cast<int>(rng() % 12);
    PLMap f = nu_eval(testing::random_letters(rng, len));
    auto pairs = two_commutator_decompose(f);
    CHECK(pairs.size() <= 2);
    CHECK(product(pairs) == f);
    for (auto& p : pairs) {
      CHECK(in_F_prime(p.left));
      CHECK(in_F_prime(p.right));
    }
  }
  CHECK_THROWS(two_commutator_decompose(generator_x0()));
}

TEST_CASE("words in nu2, nu3") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 20; ++i) {
    std::string w = testing::random_letters(rng, 8);
    PLMap g = nu_eval(w);
    std::string back = nu_word(g);
    CHECK(nu_eval(back) == g);
  }
}
