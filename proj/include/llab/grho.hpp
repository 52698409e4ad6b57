// Generators of G_rho, the lifts lambda and pi, special elements and transport.
#pragma once

#include "llab/pattern.hpp"
#include "llab/thompson.hpp"

#include <memory>
#include <string>
#include <vector>

namespace llab {

// lambda acts cell by cell ([n,n+1], centre letter b-type); pi acts on the
// blocks [n-1/2,n+1/2] centred at integers.
enum class LiftKind { lambda, pi };
LiftKind other(LiftKind k);
std::string to_string(LiftKind k);

struct GenToken {
  bool zeta = true;  // zeta_i, otherwise chi_i
  int index = 1;
  bool inverse = false;
  friend bool operator==(const GenToken&, const GenToken&) = default;
};
using GeneratorWord = std::vector<GenToken>;

// Tokens z1 z2 z3 x1 x2 x3, each optionally followed by '.
GeneratorWord parse_generator_word(const std::string& s);
std::string format_generator_word(const GeneratorWord& w);
GeneratorWord invert_generator_word(const GeneratorWord& w);

// ι∘f∘ι on [0,1] when the letter is a^-1 or b^-1, f otherwise.
PLMap orient(char letter, const PLMap& f);

PatternElement lift(LiftKind kind, const PLMap& f, const Labelling& rho);
PatternElement generator(const GenToken& t, const Labelling& rho);

// Patterns of the six generators and their inverses, built once.
class GeneratorSet {
 public:
  explicit GeneratorSet(const Labelling& rho);
  const PatternElement& get(const GenToken& t) const;
  PatternElement eval(const GeneratorWord& w) const;
  const Labelling& rho() const { return rho_; }

 private:
  Labelling rho_;
  std::vector<PatternElement> pats_;  // index 6*inverse + 3*chi + i-1
};

struct Omega {
  std::string W;  // letters w_{-k1} .. w_0 .. w_{k2}
  long k1 = 0, k2 = 0;
};
Omega parse_omega(const std::string& s);  // "<W>,<k1>,<k2>"

// Direct table of lambda_omega(f) or pi_omega(f).
PatternElement special_element(LiftKind kind, const Omega& omega, const PLMap& f, const Labelling& rho);

// Expression built from lifts by products, inverses and commutators.
struct Expr {
  enum class Op { lift, product, inverse, commutator };
  Op op = Op::product;  // an empty product is the identity
  LiftKind kind = LiftKind::lambda;
  PLMap f;  // for lift
  std::vector<std::shared_ptr<const Expr>> args;
  std::string branch;  // construction step that produced this node, if any
};
using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr special_element_expr(LiftKind kind, const Omega& omega, const PLMap& f, const Labelling& rho);
PatternElement evaluate(const ExprPtr& e, const Labelling& rho);
// Branch tags used anywhere in the tree.
std::vector<std::string> branches(const ExprPtr& e);
// Distinct nodes; subexpressions may be shared.
size_t expr_size(const ExprPtr& e);
std::string describe(const ExprPtr& e);

struct TransportResult {
  GeneratorWord word;
  std::vector<DInterval> trail;  // I after each prefix
};
// Carries I, inside the cell (m1, m1+1), into (m2, m2+1).
TransportResult transport(const GeneratorSet& gens, const DInterval& I, long m2);
// Carries a dyadic point of I (inside one cell) to 0, so the image of I covers 0.
TransportResult transport_over_zero(const GeneratorSet& gens, const DInterval& I);

// Image of an interval under a pattern element.
DInterval apply_to_interval(const PatternElement& p, const Labelling& rho, const DInterval& I);

}  // namespace llab
