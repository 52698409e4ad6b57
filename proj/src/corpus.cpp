#include "llab/corpus.hpp"

#include <random>

namespace llab {

std::vector<std::string> corpus_words(std::uint64_t seed, int count, int max_len) {
  static const char* toks[] = {"z1", "z2", "z3", "x1", "x2", "x3"};
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) {
    int len = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_len));
    std::string s;
    for (int j = 0; j < len; ++j) {
      if (j) s += ' ';
      s += toks[rng() % 6];
      if (rng() % 2) s += '\'';
    }
    out.push_back(s);
  }
  return out;
}

CorpusResult run_corpus_element(const GeneratorSet& gens, const std::string& word, long A, long B) {
  CorpusResult r;
  r.word = word;
  const Labelling& rho = gens.rho();
  try {
    PatternElement f = gens.eval(parse_generator_word(word));
    r.k = f.k;
    ThreeCommutators tc = three_commutators(f, gens);
    r.branch = tc.witness.branch;
    r.pairs = tc.pairs.size();
    r.classes = tc.embedding.components.size();
    auto chk = check_stabilisation(tc.witness, f, rho);
    r.fixes_zero = chk.fixes_zero;
    r.uniformly_stable = chk.uniformly_stable;
    r.g2_commutator = chk.g2_commutator;
    r.lemmas = check_atom_lemmas(AtomAnalysis(tc.witness.stabilized, rho)).ok;
    r.padding = required_padding(tc.pairs);
    r.product_equal = verify_product(tc.pairs, f, rho, A, B);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

}  // namespace llab
