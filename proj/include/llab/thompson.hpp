// Thompson's group F on [0,1], its commutator subgroup, and constructions inside it.
#pragma once

#include "llab/plmap.hpp"

#include <string>
#include <utility>
#include <vector>

namespace llab {

// [a/2^n, (a+1)/2^n]
struct StdDyadicInterval {
  mpz_class a;
  long n = 0;
  DInterval interval() const;
  static StdDyadicInterval make(long a, long n);
};

// The pair (left, right) stands for left^-1 right^-1 left right.
struct CommutatorPair {
  PLMap left, right;
};

enum class FClass { not_F, F, F_prime };
std::string to_string(FClass c);

FClass classify(const PLMap& f);
// Interval maps on [0,1] and line maps supported in [0,1] both count.
bool in_F_prime(const PLMap& f);
// F' together with nu1: an F element whose end slopes agree.
bool in_H(const PLMap& f);

enum class Canonical { c0, c1, nu1, nu2, nu3 };
PLMap canonical_element(Canonical which);
// The standard generators x0, x1 of F.
PLMap generator_x0();
PLMap generator_x1();

// Piecewise-linear map through the given increasing anchors; each gap is filled
// with power-of-two slopes, using a single piece when the lengths allow it.
PLMap interpolate(const std::vector<Knot>& anchors, PLMap::Kind kind = PLMap::Kind::interval);

PLMap transit(const StdDyadicInterval& I, const StdDyadicInterval& J);
PLMap transit2(const StdDyadicInterval& I1, const StdDyadicInterval& I2,
               const StdDyadicInterval& J1, const StdDyadicInterval& J2);

PLMap unit_identity();
// Interval map on [0,1] from a line map supported inside [0,1], and back.
PLMap as_unit(const PLMap& f);

// [a,b] = a^-1 b^-1 a b on [0,1].
PLMap commutator(const PLMap& a, const PLMap& b);
PLMap product(const std::vector<CommutatorPair>& pairs);

struct GermCommutator {
  CommutatorPair pair;
  DInterval V;  // neighbourhood of p0 on which [pair] agrees with the germ
};
// germ is an interval map on U with U inside (0,1) fixing p0.
GermCommutator germ_commutator(const PLMap& germ, const mpq_class& p0);

std::vector<CommutatorPair> two_commutator_decompose(const PLMap& f);

// Same element of F, whether given as a line map or on [0,1].
bool same_f(const PLMap& a, const PLMap& b);

// Free-group helpers on words over a, A, b, B (capital = inverse).
std::string reduce_word(const std::string& w);
std::string invert_word(const std::string& w);
// Writes a word with zero exponent sums as a product of commutators [u, v], in the free group.
std::vector<std::pair<std::string, std::string>> peel_commutators(const std::string& w);

// Word in x0, x1 (letters 'a','A','b','B') for an element of F.
std::string f_word(const PLMap& f);
PLMap eval_f_word(const std::string& w);
// peel_commutators(w) evaluated in F, without evaluating each conjugating word separately.
std::vector<CommutatorPair> peel_commutator_maps(const std::string& w);

// The map carrying [0,1] onto [1/16,15/16] that conjugates x0, x1 to nu2, nu3.
PLMap inner_conjugator();
// Word in nu2 ('a'), nu3 ('b') for an element of F supported in [1/16,15/16].
std::string nu_word(const PLMap& g);

}  // namespace llab
