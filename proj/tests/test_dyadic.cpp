#include "helpers.hpp"
#include "llab/dyadic.hpp"

#include <doctest.h>

using namespace llab;
using testing::dy;

TEST_CASE("normalize cancels powers of two") {
  CHECK(Dyadic::normalize(6, 2).str() == "3/2^1");
  CHECK(Dyadic::normalize(0, 7).str() == "0");
  CHECK(Dyadic::normalize(0, 7).exp() == 0);
  CHECK(Dyadic::normalize(3, -2).str() == "12");
}

TEST_CASE("arithmetic and comparison") {
  CHECK(arith(ArithOp::add, dy(1, 1), dy(1, 2)) == dy(3, 2));
  CHECK(arith(ArithOp::mul, dy(3, 1), dy(1, 1)) == dy(3, 2));
  CHECK(arith(ArithOp::sub, dy(1, 2), dy(1, 1)) == dy(-1, 2));
  CHECK(cmp(dy(5, 3), dy(3, 2)) == std::strong_ordering::less);
  CHECK(dy(2, 1) == Dyadic(1));
}

TEST_CASE("numerators past 64 bits stay exact") {
  Dyadic big = Dyadic::pow2(80) + Dyadic(1);
  CHECK(big - Dyadic::pow2(80) == Dyadic(1));
  CHECK((big * big).num() == (mpz_class(1) << 160) + (mpz_class(1) << 81) + 1);
  Dyadic tiny = Dyadic::pow2(-90);
  CHECK((tiny + tiny) == Dyadic::pow2(-89));
  CHECK(tiny < Dyadic::pow2(-89));
  CHECK(-big < Dyadic(0));
  Dyadic edge(std::numeric_limits<long>::max());
  CHECK((edge + Dyadic(1)).num() == mpz_class(std::numeric_limits<long>::max()) + 1);
  CHECK((edge + Dyadic(1)) - Dyadic(1) == edge);
}

TEST_CASE("arithmetic agrees with rationals") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    long e1 = static_cast<long>(rng() % 70), e2 = static_cast<long>(rng() % 70);
    Dyadic a = Dyadic::normalize(mpz_class(static_cast<long>(rng() >> 2)) - (mpz_class(1) << 60), e1);
    Dyadic b = Dyadic::normalize(mpz_class(static_cast<long>(rng() >> 3)), e2);
    CHECK((a + b).to_mpq() == a.to_mpq() + b.to_mpq());
    CHECK((a - b).to_mpq() == a.to_mpq() - b.to_mpq());
    CHECK((a * b).to_mpq() == a.to_mpq() * b.to_mpq());
    CHECK(((a <=> b) == std::strong_ordering::less) == (a.to_mpq() < b.to_mpq()));
    mpq_class fl(a.floor());
    CHECK(fl <= a.to_mpq());
    CHECK(a.to_mpq() < fl + 1);
  }
}

TEST_CASE("parse and print round trip") {
  for (const char* s : {"0", "-7", "3/2^1", "-5/2^9", "12345678901234567890123/2^3"}) CHECK(Dyadic::parse(s).str() == s);
  CHECK_THROWS_AS(Dyadic::parse("4/2^1"), ParseError);
  CHECK_THROWS_AS(Dyadic::parse("1/3"), ParseError);
  CHECK_THROWS_AS(Dyadic::parse("x"), ParseError);
}

TEST_CASE("cells use the left-closed convention") {
  CHECK(cell_of(dy(1, 2)) == 0);
  CHECK(cell_of(dy(-1, 2)) == -1);
  CHECK(cell_of(Dyadic(2)) == 2);
}

TEST_CASE("iota reflects inside the cell") {
  CHECK(iota(dy(1, 2)) == dy(3, 2));
  CHECK(iota(Dyadic(0)) == Dyadic(1));
  CHECK(iota(dy(-1, 2)) == dy(-3, 2));
}

TEST_CASE("half integers") {
  CHECK(HalfInteger::from_dyadic(dy(-3, 1)).twice == -3);
  CHECK(HalfInteger{4}.value() == Dyadic(2));
  CHECK_THROWS(HalfInteger::from_dyadic(dy(1, 2)));
}
