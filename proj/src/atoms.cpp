#include "llab/atoms.hpp"

#include <algorithm>
#include <map>

namespace llab {

namespace {

const DInterval kUnit{Dyadic(0), Dyadic(1)};

Dyadic dy(long num, long exp) { return Dyadic::normalize(mpz_class(num), exp); }

std::string inverse_word(const std::string& w) { return BlockWord{w}.inverse().letters; }

int level_reaching(const Labelling& rho, long m) {
  int j = 0;
  while (rho.level_length(j) < m) ++j;
  return j;
}

// Power-of-two element of F' carrying s to t, identity near 0 and 1.
PLMap mover(const Dyadic& s, const Dyadic& t) {
  if (s == t) return PLMap::identity_on(kUnit);
  Dyadic e = min(s, t).half(), d = (Dyadic(1) + max(s, t)).half();
  return interpolate({{0, 0}, {e, e}, {s, t}, {d, d}, {1, 1}});
}

Dyadic as_dyadic(const mpq_class& q) {
  Dyadic d;
  if (!Dyadic::from_mpq(q, d)) throw std::logic_error("support end is not dyadic");
  return d;
}

bool fixes_near_one(const CellMap& g) { return g.eval(Dyadic(1)) == Dyadic(1) && g.slope_left(Dyadic(1)) == 0; }
bool fixes_near_zero(const CellMap& g) { return g.eval(Dyadic(0)) == Dyadic(0) && g.slope_right(Dyadic(0)) == 0; }

}  // namespace

bool integer_is_cut(const PatternElement& f, const std::string& u) {
  size_t w = static_cast<size_t>(2 * f.k + 1);
  if (u.size() != w + 2) throw std::invalid_argument("context word has the wrong length");
  auto gl = f.lookup(u.substr(0, w)), gr = f.lookup(u.substr(2, w));
  if (!gl || !gr) throw Error("MissingWord", "no table entry around '" + u + "'");
  return fixes_near_one(*gl) && fixes_near_zero(*gr);
}

AtomAnalysis::AtomAnalysis(const PatternElement& f, const Labelling& rho) : f_(f), rho_(rho) {
  if (!validate_membership(f_, rho_).ok) throw Error("InvalidElement", "pattern fails membership");
  std::optional<long> best;
  for (const auto& u : occurring_words(rho_, 2 * f_.k + 3)) {
    if (b_centred(u.letters) || !integer_is_cut(f_, u.letters)) continue;
    long cells = recurrence_bound(rho_, u) / 2 + 1;
    if (!best || cells < *best) best = cells;
  }
  stable_ = best.has_value();
  if (!stable_) return;
  gap_ = *best;
  Window w = scan(f_.k + 1, gap_, 0);
  for (const Atom& a : w.atoms) l_ = std::max(l_, a.length());
}

AtomAnalysis::Window AtomAnalysis::scan(long margin, long atom_bound, int extra) const {
  Window w;
  long need = 2 * atom_bound + 2 * margin + 3;
  int J = level_reaching(rho_, need) + 2 + extra;
  w.letters = rho_.level(J);
  w.first_twice = -rho_.level_center(J);
  long last = w.first_twice + static_cast<long>(w.letters.size()) - 1;
  Env env{w.letters, w.first_twice};
  long k = f_.k;
  std::vector<long> cuts;
  long plo = (w.first_twice + k + 1 + 1) / 2 + 1, phi = (last - k - 1) / 2 - 1;
  for (long p = plo; p <= phi; ++p)
    if (integer_is_cut(f_, env.slice(2 * p - k - 1, 2 * p + k + 1))) cuts.push_back(p);
  w.cell_lo = plo;
  w.cell_hi = phi;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    long m1 = cuts[i], m2 = cuts[i + 1];
    if (2 * m1 + 1 - margin < w.first_twice || 2 * m2 - 1 + margin > last) continue;
    w.atoms.push_back({m1, m2, realize_env(f_, env, m1, m2)});
  }
  if (!w.atoms.empty()) {
    w.cell_lo = w.atoms.front().m1;
    w.cell_hi = w.atoms.back().m2;
  }
  return w;
}

const AtomAnalysis::Window& AtomAnalysis::window(long n, int extra) const {
  if (!stable_) throw Error("NotStable", "element is not stable");
  for (const auto& [key, w] : windows_)
    if (key == std::make_pair(n, extra)) return *w;
  windows_.emplace_back(std::make_pair(n, extra), std::make_unique<Window>(scan(std::max(n, f_.k + 1), l_, extra)));
  return *windows_.back().second;
}

std::string AtomAnalysis::decorated_word(const Window& w, long m1, long m2, long n) {
  long lo = 2 * m1 + 1 - n;
  return w.letters.substr(static_cast<size_t>(lo - w.first_twice), static_cast<size_t>(2 * (m2 - m1) - 1 + 2 * n));
}

std::vector<EquivClass> AtomAnalysis::classes(long n, int extra) const {
  const Window& w = window(n, extra);
  std::vector<EquivClass> out;
  std::optional<size_t> trivial;
  for (const Atom& a : w.atoms) {
    std::string word = decorated_word(w, a.m1, a.m2, n);
    if (a.trivial()) {
      if (!trivial) {
        trivial = out.size();
        EquivClass c;
        c.rep = {a, n, BlockWord{word}};
        c.trivial = true;
        out.push_back(c);
      }
      out[*trivial].members.push_back(a.m1);
      out[*trivial].flipped.push_back(false);
      continue;
    }
    DInterval I{Dyadic(0), Dyadic(a.length())};
    PLMap local = translate(a.restriction, Dyadic(-a.m1));
    bool placed = false;
    for (auto& c : out) {
      if (c.trivial || c.rep.atom.length() != a.length()) continue;
      PLMap rep = translate(c.rep.atom.restriction, Dyadic(-c.rep.atom.m1));
      bool same = word == c.rep.word.letters && local == rep;
      bool flip = word == inverse_word(c.rep.word.letters) && local == flip_conjugate(rep, I);
      if (same || flip) {
        c.members.push_back(a.m1);
        c.flipped.push_back(!same);
        placed = true;
        break;
      }
    }
    if (!placed) {
      EquivClass c;
      c.rep = {a, n, BlockWord{word}};
      c.members.push_back(a.m1);
      c.flipped.push_back(false);
      out.push_back(c);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const EquivClass& x, const EquivClass& y) {
    if (x.trivial != y.trivial) return x.trivial;
    return normal_key(x.rep.word.letters) < normal_key(y.rep.word.letters);
  });
  return out;
}

StabilityReport stability(const PatternElement& f, const Labelling& rho) {
  AtomAnalysis a(f, rho);
  StabilityReport r;
  r.stable = a.stable();
  if (!r.stable) {
    // no cut context occurs at all, so any stretch is a witness
    r.window_lo = -rho.level_center(3) / 2;
    r.window_hi = r.window_lo + rho.level_length(3) / 2;
    return r;
  }
  const auto& w = a.window(a.l_f());
  r.window_lo = w.cell_lo;
  r.window_hi = w.cell_hi;
  r.atoms = w.atoms;
  r.max_atom = a.max_atom();
  return r;
}

bool uniformly_stable(const PatternElement& f, const Labelling& rho) {
  AtomAnalysis a(f, rho);
  if (!a.stable()) return false;
  // the class count must not move when the window is one level longer
  return a.classes(a.l_f()).size() == a.classes(a.l_f(), 1).size();
}

long l_constant(const PatternElement& f, const Labelling& rho) {
  AtomAnalysis a(f, rho);
  if (!a.stable()) throw Error("NotStable", "element is not stable");
  return a.l_f();
}

AtomLemmaReport check_atom_lemmas(const AtomAnalysis& a) {
  AtomLemmaReport r;
  long n = a.l_f();
  const auto& w = a.window(n);
  auto cell_word = [&](long c) { return AtomAnalysis::decorated_word(w, c, c + 1, n); };
  auto differ = [&](const std::string& x, const std::string& y, const std::string& what, long m1) {
    ++r.comparisons;
    if (x == y || x == inverse_word(y)) {
      r.ok = false;
      r.failures.push_back(what + " words agree in the atom at " + std::to_string(m1));
    }
  };
  for (const Atom& at : w.atoms) {
    ++r.atoms_checked;
    if (at.length() == 1) continue;
    std::string head = cell_word(at.m1), foot = cell_word(at.m2 - 1);
    differ(head, foot, "head/foot", at.m1);
    for (long c = at.m1 + 1; c < at.m2 - 1; ++c) {
      std::string mid = cell_word(c);
      differ(head, mid, "head/interior", at.m1);
      differ(foot, mid, "foot/interior", at.m1);
    }
  }
  return r;
}

std::vector<EquivClass> decorated_classes(const PatternElement& f, long n, const Labelling& rho) {
  AtomAnalysis a(f, rho);
  if (!a.stable()) throw Error("NotStable", "element is not stable");
  return a.classes(n);
}

bool local_atom(const PatternElement& f, const Env& env, long reach, long& m1, long& m2) {
  long k = f.k;
  auto cut = [&](long p) { return integer_is_cut(f, env.slice(2 * p - k - 1, 2 * p + k + 1)); };
  bool left = false, right = false;
  for (long p = 0; p >= -reach && env.covers(2 * p - k - 1, 2 * p + k + 1); --p)
    if (cut(p)) {
      m1 = p;
      left = true;
      break;
    }
  for (long p = 1; p <= reach + 1 && env.covers(2 * p - k - 1, 2 * p + k + 1); ++p)
    if (cut(p)) {
      m2 = p;
      right = true;
      break;
    }
  return left && right;
}

PatternElement class_piece(const AtomAnalysis& a, const EquivClass& c) {
  const PatternElement& f = a.element();
  const Labelling& rho = a.rho();
  if (c.trivial) return identity_pattern(rho);
  long n = c.rep.n, l = a.max_atom(), k = f.k;
  long K = std::max(2 * l + k, 2 * l - 2 + n) + 1;
  std::string key = normal_key(c.rep.word.letters);
  const Atom& ra = c.rep.atom;
  PLMap rep = translate(ra.restriction, Dyadic(-ra.m1));
  DInterval I{Dyadic(0), Dyadic(ra.length())};
  PatternElement out = make_pattern(K, rho, [&](const std::string& w) {
    Env env = Env::around_cell(w);
    long m1 = 0, m2 = 0;
    if (!local_atom(f, env, l, m1, m2)) throw std::logic_error("atom longer than its bound");
    std::string word = env.slice(2 * m1 + 1 - n, 2 * m2 - 1 + n);
    bool member = false;
    if (m2 - m1 == ra.length() && normal_key(word) == key) {
      PLMap local = translate(realize_env(f, env, m1, m2), Dyadic(-m1));
      member = word == c.rep.word.letters ? local == rep : local == flip_conjugate(rep, I);
    }
    return member ? realize_env(f, env, 0, 1) : PLMap::identity_on(kUnit);
  });
  return minimize_width(out, rho);
}

std::vector<PatternElement> cellular_decomposition(const AtomAnalysis& a) {
  if (!a.stable()) throw Error("NotStable", "element is not stable");
  std::vector<PatternElement> out;
  for (const auto& c : a.classes(a.l_f()))
    if (!c.trivial) out.push_back(class_piece(a, c));
  return out;
}

std::vector<PatternElement> cellular_decomposition(const PatternElement& f, const Labelling& rho) {
  return cellular_decomposition(AtomAnalysis(f, rho));
}

bool fixes_atom_ends(const AtomAnalysis& a, const PatternElement& g) {
  const auto& w = a.window(a.l_f());
  Env env{w.letters, w.first_twice};
  long k = g.k;
  std::vector<long> ends;
  for (const Atom& at : w.atoms) {
    ends.push_back(at.m1);
    ends.push_back(at.m2);
  }
  for (long p : ends) {
    if (!env.covers(2 * p - 1 - k, 2 * p + 1 + k)) continue;
    PLMap G = realize_env(g, env, p - 1, p + 1);
    if (G.eval(Dyadic(p)) != Dyadic(p) || G.slope_left(Dyadic(p)) != 0 || G.slope_right(Dyadic(p)) != 0)
      return false;
  }
  return true;
}

PatternElement atom_push(const AtomAnalysis& a, const EquivClass& c, AtomEnd target) {
  const Labelling& rho = a.rho();
  PatternElement g = identity_pattern(rho);
  if (c.trivial) return g;
  long n = a.l_f();
  const auto& w = a.window(n);
  const Atom& at = c.rep.atom;
  auto hull = support_hull(at.restriction);
  if (!hull) return g;
  Dyadic half = dy(1, 1), quarter = dy(1, 2), three = dy(3, 2);
  auto apply = [&](LiftKind kind, long centre_twice, const PLMap& h) {
    std::string W = w.letters.substr(static_cast<size_t>(centre_twice - n - w.first_twice), static_cast<size_t>(2 * n + 1));
    Omega om{W, n, n};
    g = compose_patterns(g, special_element(kind, om, orient(W[static_cast<size_t>(n)], h), rho), rho);
  };
  if (target == AtomEnd::head) {
    Dyadic x = as_dyadic(hull->hi);
    long m1 = at.m1;
    while (x >= Dyadic(m1 + 1)) {
      long cell = to_long(x.floor());
      Dyadic t = x - Dyadic(cell);
      if (t >= half) {
        apply(LiftKind::lambda, 2 * cell + 1, mover(t, quarter));
        t = quarter;
      }
      // block centred at the integer cell, in block coordinates
      apply(LiftKind::pi, 2 * cell, mover(t + half, quarter));
      x = Dyadic(cell) - quarter;
    }
  } else {
    Dyadic x = as_dyadic(hull->lo);
    long m2 = at.m2;
    while (x <= Dyadic(m2 - 1)) {
      long p = to_long(x.ceil());
      Dyadic s = half;
      if (!x.is_integer()) {
        Dyadic t = x - Dyadic(p - 1);
        if (t <= half) {
          apply(LiftKind::lambda, 2 * p - 1, mover(t, three));
          t = three;
        }
        s = t - half;
      }
      apply(LiftKind::pi, 2 * p, mover(s, three));
      x = Dyadic(p) + quarter;
    }
  }
  return g;
}

PatternElement atom_push(const PatternElement& f, const EquivClass& c, const Labelling& rho, AtomEnd target) {
  return atom_push(AtomAnalysis(f, rho), c, target);
}

SpecialWitness class_to_special(const AtomAnalysis& a, const EquivClass& c) {
  const Labelling& rho = a.rho();
  const Atom& at = c.rep.atom;
  // omega is the decorated word itself, centred on the head cell. It pins down
  // the atom and its map, and reads as W^-1 exactly on the flipped members.
  long L = at.length(), lf = a.l_f();
  SpecialWitness out;
  std::string W = rho.window({2 * at.m1 + 1 - lf}, {2 * at.m2 - 1 + lf}).letters;
  out.omega = {W, lf, 2 * (L - 1) + lf};
  if (c.trivial) {
    out.g = identity_pattern(rho);
    out.h = PLMap::identity_on(kUnit);
    return out;
  }
  out.g = atom_push(a, c, AtomEnd::head);
  PatternElement piece = class_piece(a, c);
  PatternElement moved = compose_patterns(compose_patterns(invert_pattern(out.g, rho), piece, rho), out.g, rho);
  PLMap local = translate(realize(moved, rho, at.m1, at.m1 + 1), Dyadic(-at.m1));
  out.h = orient(W[static_cast<size_t>(lf)], local);
  return out;
}

SpecialWitness class_to_special(const PatternElement& f, const EquivClass& c, const Labelling& rho) {
  return class_to_special(AtomAnalysis(f, rho), c);
}

}  // namespace llab
