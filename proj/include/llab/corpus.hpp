// Random generator-word corpus and the full pipeline run on each element.
#pragma once

#include "llab/decompose.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace llab {

// Lengths uniform in 1..max_len, tokens uniform over the twelve generators and inverses.
// Raw mt19937_64 draws reduced mod n, so the words are the same on every platform.
std::vector<std::string> corpus_words(std::uint64_t seed, int count, int max_len);

struct CorpusResult {
  std::string word;
  long k = 0;
  std::string branch;
  size_t pairs = 0, classes = 0;
  long padding = 0;
  bool fixes_zero = false, uniformly_stable = false, g2_commutator = false;
  bool lemmas = false, product_equal = false;
  std::string error;  // set when the pipeline threw
  bool ok() const {
    return error.empty() && pairs == 3 && fixes_zero && uniformly_stable && g2_commutator && lemmas && product_equal;
  }
};

CorpusResult run_corpus_element(const GeneratorSet& gens, const std::string& word, long A, long B);

}  // namespace llab
