// Stability of pattern elements, atoms, decorated atoms and the cellular decomposition.
#pragma once

#include "llab/grho.hpp"
#include "llab/pattern.hpp"

#include <memory>
#include <string>
#include <vector>

namespace llab {

// f restricted to [m1, m2]; f fixes neighbourhoods of both ends and no interior integer.
struct Atom {
  long m1 = 0, m2 = 0;
  PLMap restriction;  // interval map on [m1, m2]
  long length() const { return m2 - m1; }
  bool trivial() const { return restriction.is_identity(); }
};

struct DecoratedAtom {
  Atom atom;
  long n = 0;
  BlockWord word;  // W([m1, m2], n)
};

struct EquivClass {
  DecoratedAtom rep;
  std::vector<long> members;  // m1 of each member inside the window
  std::vector<bool> flipped;  // member word is the inverse of the representative's
  bool trivial = false;       // atoms on which f is the identity, lumped together
};

// u has 2k+3 letters centred at an integer; true when f fixes a neighbourhood of it.
bool integer_is_cut(const PatternElement& f, const std::string& u);

// Cut integers and atoms of f over a stretch of the labelling long enough to
// show every context of the requested width.
class AtomAnalysis {
 public:
  AtomAnalysis(const PatternElement& f, const Labelling& rho);

  const PatternElement& element() const { return f_; }
  const Labelling& rho() const { return rho_; }
  bool stable() const { return stable_; }
  long k() const { return f_.k; }
  long gap_bound() const { return gap_; }   // cells between consecutive cuts, at most
  long max_atom() const { return l_; }      // l
  long l_f() const { return f_.k + l_; }

  struct Window {
    std::string letters;
    long first_twice = 0;  // twice-coordinate of letters[0]
    long cell_lo = 0, cell_hi = 0;  // cells [cell_lo, cell_hi) whose atoms were examined
    std::vector<Atom> atoms;
  };
  // Atoms whose decorated words of width n fit inside the window; extra asks
  // for that many more levels of the labelling.
  const Window& window(long n, int extra = 0) const;

  // W([m1, m2], n) read from a window.
  static std::string decorated_word(const Window& w, long m1, long m2, long n);

  std::vector<EquivClass> classes(long n, int extra = 0) const;

 private:
  PatternElement f_;
  Labelling rho_;
  bool stable_ = false;
  long gap_ = 0, l_ = 0;
  mutable std::vector<std::pair<std::pair<long, int>, std::unique_ptr<Window>>> windows_;
  Window scan(long margin, long atom_bound, int extra) const;
};

struct StabilityReport {
  bool stable = false;
  long window_lo = 0, window_hi = 0;  // cells; for an unstable element no integer inside is cut
  std::vector<Atom> atoms;
  long max_atom = 0;
};

StabilityReport stability(const PatternElement& f, const Labelling& rho);
// Stable, and the number of classes does not change when the window grows.
bool uniformly_stable(const PatternElement& f, const Labelling& rho);
long l_constant(const PatternElement& f, const Labelling& rho);

struct AtomLemmaReport {
  bool ok = true;
  long atoms_checked = 0, comparisons = 0;
  std::vector<std::string> failures;
};
// Head, foot and interior cell words at width l_f are pairwise distinct, also up to inversion.
AtomLemmaReport check_atom_lemmas(const AtomAnalysis& a);

std::vector<EquivClass> decorated_classes(const PatternElement& f, long n, const Labelling& rho);

// f on the atoms of one class, identity elsewhere.
PatternElement class_piece(const AtomAnalysis& a, const EquivClass& c);
std::vector<PatternElement> cellular_decomposition(const PatternElement& f, const Labelling& rho);
std::vector<PatternElement> cellular_decomposition(const AtomAnalysis& a);

// Locates the atom around cell 0 of a local environment; false if no cut is in reach.
bool local_atom(const PatternElement& f, const Env& env, long reach, long& m1, long& m2);

enum class AtomEnd { head, foot };
// Atom preserving element carrying the class's support into the head (or foot) of its atoms.
PatternElement atom_push(const AtomAnalysis& a, const EquivClass& c, AtomEnd target);
PatternElement atom_push(const PatternElement& f, const EquivClass& c, const Labelling& rho, AtomEnd target);

struct SpecialWitness {
  PatternElement g;
  Omega omega;
  PLMap h;
};
// f_zeta = g * lambda_omega(h) * g^-1.
SpecialWitness class_to_special(const AtomAnalysis& a, const EquivClass& c);
SpecialWitness class_to_special(const PatternElement& f, const EquivClass& c, const Labelling& rho);

// True when g fixes a neighbourhood of every cut integer of the analysed element.
bool fixes_atom_ends(const AtomAnalysis& a, const PatternElement& g);

}  // namespace llab
