// Elements of K_rho stored as finite tables: one cell map per local word.
#pragma once

#include "llab/labelling.hpp"
#include "llab/plmap.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace llab {

// The cell [n, n+1) seen in local coordinates [0,1]; the image may leave [0,1].
using CellMap = PLMap;

struct PatternElement {
  long k = 0;
  // Keyed by words of 2k+1 letters with a b-type centre. Only one word of each
  // pair {w, inv(w)} is stored (the smaller one); the other is its flip.
  std::map<std::string, CellMap> table;

  // Cell map for a word of 2k+1 letters, or nullopt when neither it nor its inverse is tabulated.
  std::optional<CellMap> lookup(const std::string& w) const;
  // Sup of |t f - t| over the table.
  Dyadic disp_bound() const;
};

// Letters of rho on a stretch of (1/2)Z.
struct Env {
  std::string letters;
  long first_twice = 0;  // twice the coordinate of letters[0]
  static Env of(const Labelling& rho, HalfInteger from, HalfInteger to);
  // Environment of a single cell word of 2k+1 letters, centred at 1/2.
  static Env around_cell(const std::string& w);
  bool covers(long lo_twice, long hi_twice) const;
  std::string slice(long lo_twice, long hi_twice) const;
};

// Words with 2k+1 letters and b-type centre that occur in rho.
std::vector<std::string> cell_words(const Labelling& rho, long k);
std::string normal_key(const std::string& w);
bool b_centred(const std::string& w);

// Table over all occurring cell words; rule is called for stored keys only.
PatternElement make_pattern(long k, const Labelling& rho,
                            const std::function<CellMap(const std::string&)>& rule);
PatternElement identity_pattern(const Labelling& rho);

// f on the cells A..B-1 as an interval map on [A, B].
PLMap realize_env(const PatternElement& f, const Env& env, long A, long B);
PLMap realize(const PatternElement& f, const Labelling& rho, long A, long B);

PatternElement widen(const PatternElement& f, const Labelling& rho, long k);
PatternElement minimize_width(const PatternElement& f, const Labelling& rho);
// x -> (x f) g
PatternElement compose_patterns(const PatternElement& f, const PatternElement& g, const Labelling& rho);
PatternElement invert_pattern(const PatternElement& f, const Labelling& rho);
bool equal_patterns(const PatternElement& f, const PatternElement& g, const Labelling& rho);
bool is_identity_pattern(const PatternElement& f, const Labelling& rho);

struct MembershipReport {
  bool ok = true;
  std::vector<std::string> violations;
};
MembershipReport validate_membership(const PatternElement& f, const Labelling& rho);

Dyadic displacement_bound(const PatternElement& f);
// Cells within which some integer has a fixed neighbourhood, if any integer does.
std::optional<long> fix_gap(const PatternElement& f, const Labelling& rho);

}  // namespace llab
