#include "llab/pattern.hpp"

#include <optional>

#include <algorithm>
#include <set>

namespace llab {

namespace {

const DInterval kCell{Dyadic(0), Dyadic(1)};

std::string inverse_word(const std::string& w) { return BlockWord{w}.inverse().letters; }

long ceil_long(const Dyadic& d) { return to_long(d.ceil()); }

std::string centre_of(const std::string& w, long k) {
  long r = (static_cast<long>(w.size()) - 1) / 2;
  if (r < k) throw std::invalid_argument("word shorter than the pattern width");
  return w.substr(static_cast<size_t>(r - k), static_cast<size_t>(2 * k + 1));
}

// Behaviour on the cell whose word (of any width >= f.k) is w.
CellMap cell_for(const PatternElement& f, const std::string& w) {
  auto g = f.lookup(centre_of(w, f.k));
  if (!g) throw Error("MissingWord", "no table entry for '" + centre_of(w, f.k) + "'");
  return *g;
}

}  // namespace

std::optional<CellMap> PatternElement::lookup(const std::string& w) const {
  auto it = table.find(w);
  if (it != table.end()) return it->second;
  it = table.find(inverse_word(w));
  if (it != table.end()) return flip_conjugate(it->second, kCell);
  return std::nullopt;
}

Dyadic PatternElement::disp_bound() const {
  Dyadic best(0);
  for (const auto& [w, g] : table)
    for (const Knot& kn : g.knots()) best = max(best, abs(kn.y - kn.x));
  return best;
}

Env Env::of(const Labelling& rho, HalfInteger from, HalfInteger to) {
  return {rho.window(from, to).letters, from.twice};
}

Env Env::around_cell(const std::string& w) {
  long k = (static_cast<long>(w.size()) - 1) / 2;
  return {w, 1 - k};
}

bool Env::covers(long lo, long hi) const {
  return lo >= first_twice && hi < first_twice + static_cast<long>(letters.size());
}

std::string Env::slice(long lo, long hi) const {
  if (!covers(lo, hi)) throw std::out_of_range("environment too small");
  return letters.substr(static_cast<size_t>(lo - first_twice), static_cast<size_t>(hi - lo + 1));
}

bool b_centred(const std::string& w) {
  if (w.size() % 2 == 0) return false;
  return !is_a_type(letter_from_char(w[(w.size() - 1) / 2]));
}

std::string normal_key(const std::string& w) { return std::min(w, inverse_word(w)); }

std::vector<std::string> cell_words(const Labelling& rho, long k) {
  std::vector<std::string> out;
  for (const auto& w : occurring_words(rho, 2 * k + 1))
    if (b_centred(w.letters)) out.push_back(w.letters);
  return out;
}

PatternElement make_pattern(long k, const Labelling& rho,
                            const std::function<CellMap(const std::string&)>& rule) {
  PatternElement p;
  p.k = k;
  for (const auto& w : cell_words(rho, k)) {
    std::string key = normal_key(w);
    if (!p.table.count(key)) p.table.emplace(key, rule(key));
  }
  return p;
}

PatternElement identity_pattern(const Labelling& rho) {
  return make_pattern(0, rho, [](const std::string&) { return PLMap::identity_on(kCell); });
}

PLMap realize_env(const PatternElement& f, const Env& env, long A, long B) {
  if (B <= A) throw Error("EmptyInterval", "window needs B > A");
  std::vector<Knot> ks;
  for (long n = A; n < B; ++n) {
    std::string w = env.slice(2 * n + 1 - f.k, 2 * n + 1 + f.k);
    auto g = f.lookup(w);
    if (!g) throw Error("MissingWord", "no table entry for '" + w + "'");
    PLMap t = translate(*g, Dyadic(n));
    const auto& tk = t.knots();
    if (!ks.empty()) {
      if (ks.back().y != tk.front().y)
        throw Error("Discontinuous", "cell maps disagree at " + std::to_string(n));
      ks.pop_back();
    }
    ks.insert(ks.end(), tk.begin(), tk.end());
  }
  return PLMap::from_knots(PLMap::Kind::interval, std::move(ks));
}

PLMap realize(const PatternElement& f, const Labelling& rho, long A, long B) {
  Env env = Env::of(rho, {2 * A + 1 - f.k}, {2 * B - 1 + f.k});
  return realize_env(f, env, A, B);
}

PatternElement widen(const PatternElement& f, const Labelling& rho, long k) {
  if (k < f.k) throw std::invalid_argument("cannot narrow a pattern by widening");
  if (k == f.k) return f;
  return make_pattern(k, rho, [&](const std::string& w) { return cell_for(f, w); });
}

PatternElement minimize_width(const PatternElement& f, const Labelling& rho) {
  auto words = cell_words(rho, f.k);
  std::vector<CellMap> vals;
  for (const auto& w : words) vals.push_back(cell_for(f, w));
  std::vector<std::optional<CellMap>> flipped(words.size());
  auto oriented = [&](size_t i, bool flip) -> const CellMap& {
    if (!flip) return vals[i];
    if (!flipped[i]) flipped[i] = flip_conjugate(vals[i], kCell);
    return *flipped[i];
  };
  for (long k = 0; k < f.k; ++k) {
    std::map<std::string, std::pair<size_t, bool>> first;
    bool ok = true;
    for (size_t i = 0; i < words.size() && ok; ++i) {
      std::string sub = centre_of(words[i], k);
      std::string key = normal_key(sub);
      bool flip = sub != key;
      auto [it, fresh] = first.emplace(key, std::make_pair(i, flip));
      if (fresh) continue;
      auto [j, fj] = it->second;
      ok = fj == flip ? vals[i] == vals[j] : oriented(i, flip) == oriented(j, fj);
    }
    if (!ok) continue;
    PatternElement c;
    c.k = k;
    for (const auto& [key, v] : first) c.table.emplace(key, oriented(v.first, v.second));
    return c;
  }
  return f;
}

PatternElement compose_patterns(const PatternElement& f, const PatternElement& g, const Labelling& rho) {
  long c = ceil_long(f.disp_bound());
  long k = std::max(f.k, g.k + 2 * c);
  PatternElement out = make_pattern(k, rho, [&](const std::string& w) {
    Env env = Env::around_cell(w);
    PLMap F = realize_env(f, env, 0, 1);
    PLMap G = realize_env(g, env, -c, c + 1);
    return compose(F, G);
  });
  return minimize_width(out, rho);
}

PatternElement invert_pattern(const PatternElement& f, const Labelling& rho) {
  long c = ceil_long(f.disp_bound());
  PatternElement out = make_pattern(f.k + 2 * c, rho, [&](const std::string& w) {
    PLMap F = realize_env(f, Env::around_cell(w), -c, c + 1);
    return restrict_to(invert(F), kCell);
  });
  return minimize_width(out, rho);
}

bool equal_patterns(const PatternElement& f, const PatternElement& g, const Labelling& rho) {
  long k = std::max(f.k, g.k);
  for (const auto& w : cell_words(rho, k)) {
    if (w != normal_key(w)) continue;
    if (!(cell_for(f, w) == cell_for(g, w))) return false;
  }
  return true;
}

bool is_identity_pattern(const PatternElement& f, const Labelling& rho) {
  for (const auto& w : cell_words(rho, f.k))
    if (!cell_for(f, w).is_identity()) return false;
  return true;
}

// Occurring words of 2k+3 letters centred on an integer: the words of two adjacent cells.
static std::vector<std::string> boundary_words(const Labelling& rho, long k) {
  std::vector<std::string> out;
  for (const auto& w : occurring_words(rho, 2 * k + 3))
    if (!b_centred(w.letters)) out.push_back(w.letters);
  return out;
}

MembershipReport validate_membership(const PatternElement& f, const Labelling& rho) {
  MembershipReport r;
  auto bad = [&](const std::string& s) {
    r.ok = false;
    r.violations.push_back(s);
  };
  for (const auto& [w, g] : f.table) {
    if (static_cast<long>(w.size()) != 2 * f.k + 1 || !b_centred(w)) bad("key '" + w + "' has the wrong shape");
    if (w == inverse_word(w)) bad("key '" + w + "' equals its own inverse");
    if (g.on_line() || !(g.domain() == kCell)) {
      bad("cell map for '" + w + "' is not defined on [0,1]");
      continue;
    }
    std::string err = g.validate();
    if (!err.empty()) bad("cell map for '" + w + "': " + err);
    auto it = f.table.find(inverse_word(w));
    if (it != f.table.end() && w < it->first && !(it->second == flip_conjugate(g, kCell)))
      bad("flip constraint fails between '" + w + "' and '" + it->first + "'");
  }
  if (!r.ok) return r;
  for (const auto& w : cell_words(rho, f.k))
    if (!f.lookup(w)) bad("missing word '" + w + "'");
  if (!r.ok) return r;
  for (const auto& u : boundary_words(rho, f.k)) {
    CellMap gl = *f.lookup(u.substr(0, static_cast<size_t>(2 * f.k + 1)));
    CellMap gr = *f.lookup(u.substr(2, static_cast<size_t>(2 * f.k + 1)));
    if (gl.eval(Dyadic(1)) != gr.eval(Dyadic(0)) + Dyadic(1))
      bad("discontinuity at the integer inside '" + u + "'");
  }
  return r;
}

Dyadic displacement_bound(const PatternElement& f) { return f.disp_bound(); }

std::optional<long> fix_gap(const PatternElement& f, const Labelling& rho) {
  std::optional<long> best;
  for (const auto& u : boundary_words(rho, f.k)) {
    CellMap gl = *f.lookup(u.substr(0, static_cast<size_t>(2 * f.k + 1)));
    CellMap gr = *f.lookup(u.substr(2, static_cast<size_t>(2 * f.k + 1)));
    bool fixed = gl.eval(Dyadic(1)) == Dyadic(1) && gl.slope_left(Dyadic(1)) == 0 &&
                 gr.eval(Dyadic(0)) == Dyadic(0) && gr.slope_right(Dyadic(0)) == 0;
    if (!fixed) continue;
    long cells = recurrence_bound(rho, BlockWord{u}) / 2 + 1;
    if (!best || cells < *best) best = cells;
  }
  return best;
}

}  // namespace llab
