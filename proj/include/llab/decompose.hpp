// Stabilisation, the direct sum embedding and the three commutator decomposition.
#pragma once

#include "llab/atoms.hpp"
#include "llab/grho.hpp"

#include <optional>
#include <string>
#include <vector>

namespace llab {

struct PatternPair {
  PatternElement left, right;  // stands for left^-1 right^-1 left right
};

PatternElement pattern_commutator(const PatternPair& p, const Labelling& rho);
// x^-1 ... : g x g^-1, with g applied first
PatternElement conjugate_by(const PatternElement& x, const PatternElement& g, const Labelling& rho);

struct StabilisationWitness {
  std::string branch;           // trivial, fixed-interval, lambda or pi
  mpq_class p0;                 // fixed point used (branches lambda and pi)
  GeneratorWord g1_word;
  PatternElement g1;
  LiftKind g2_kind = LiftKind::lambda;
  CommutatorPair g2_pair;       // elements of F' on [0,1]
  PatternPair g2_lifted;        // their lifts
  PatternElement g2;
  PatternElement stabilized;    // g1^-1 (g g2^-1) g1
};

StabilisationWitness stabilise(const PatternElement& g, const GeneratorSet& gens);

struct StabilisationCheck {
  bool fixes_zero = false, uniformly_stable = false, g2_commutator = false;
  bool ok() const { return fixes_zero && uniformly_stable && g2_commutator; }
};
StabilisationCheck check_stabilisation(const StabilisationWitness& w, const PatternElement& g, const Labelling& rho);

struct DirectSumEmbedding {
  PatternElement base;  // the uniformly stable element whose atoms are used
  long n = 0;           // decoration width l_f
  long max_atom = 0;
  std::vector<long> lengths;          // L_i
  std::vector<BlockWord> words;       // W_i
  std::vector<PLMap> components;      // h_i in F' on [0, L_i]
};

DirectSumEmbedding direct_sum_embed(const AtomAnalysis& a);
DirectSumEmbedding direct_sum_embed(const PatternElement& f, const Labelling& rho);
// phi(g_1, ..., g_m): g_i on the atoms with word W_i, flipped on those with W_i^-1.
PatternElement assemble(const DirectSumEmbedding& e, const std::vector<PLMap>& tuple, const Labelling& rho);

struct ThreeCommutators {
  std::vector<PatternPair> pairs;  // always three
  StabilisationWitness witness;
  DirectSumEmbedding embedding;
};
ThreeCommutators three_commutators(const PatternElement& f, const GeneratorSet& gens);

// Cells [A, B] plus padding on each side; padding below the displacement bound throws WindowTooSmall.
long required_padding(const std::vector<PatternPair>& pairs);
bool verify_product(const std::vector<PatternPair>& pairs, const PatternElement& f, const Labelling& rho, long A,
                    long B, std::optional<long> padding = std::nullopt);

}  // namespace llab
