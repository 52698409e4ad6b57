// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "llab/atoms.hpp"
#include "llab/corpus.hpp"
#include "llab/decompose.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace llab;

namespace {

using Clock = std::chrono::steady_clock;
const DInterval kUnit{Dyadic(0), Dyadic(1)};
constexpr std::uint64_t kCorpusSeed = 2024;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Dyadic dy(long num, long exp) { return Dyadic::normalize(mpz_class(num), exp); }

std::string letters(std::mt19937_64& rng, int len) {
  static const char* alpha = "aAbB";
  std::string w;
  for (int i = 0; i < len; ++i) w += alpha[rng() % 4];
  return w;
}

PLMap random_f_prime(std::mt19937_64& rng, int len) {
  return commutator(eval_f_word(letters(rng, len)), eval_f_word(letters(rng, len)));
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int n, const std::string& name, const Outcome& o, double secs) {
  char t[32];
  std::snprintf(t, sizeof t, "%.1fs", secs);
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << name << " -- " << o.detail << " [" << t
            << "]" << std::endl;
  if (!o.pass) ++failures;
}

void run(int n, const std::string& name, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  report(n, name, o, seconds_since(t0));
}

// Criterion 1 and the corpus reused by 7 and 8.
std::vector<CorpusResult> corpus;

Outcome cl3_corpus(const GeneratorSet& gens) {
  auto words = corpus_words(kCorpusSeed, 50, 8);
  long ok = 0, A = -10, B = 10;
  std::string first_bad;
  for (const auto& w : words) {
    corpus.push_back(run_corpus_element(gens, w, A, B));
    const auto& r = corpus.back();
    bool good = r.error.empty() && r.pairs == 3 && r.product_equal;
    ok += good;
    if (!good && first_bad.empty()) first_bad = " first failure [" + w + "] " + r.error;
  }
  std::ostringstream d;
  d << ok << "/" << words.size() << " words (seed " << kCorpusSeed << ", length <= 8) give 3 pairs with exact product on "
    << (B - A) << " cells plus computed padding" << first_bad;
  return {ok == static_cast<long>(words.size()) && words.size() >= 50, d.str()};
}

// Criterion 2 (a): generator patterns pass membership.
bool words_are_members(const GeneratorSet& gens, std::string& detail) {
  const Labelling& rho = gens.rho();
  long ok = 0, total = 0;
  for (bool z : {true, false})
    for (int i = 1; i <= 3; ++i)
      for (bool inv : {false, true}) {
        ++total;
        ok += validate_membership(gens.get({z, i, inv}), rho).ok;
      }
  for (const auto& w : corpus_words(kCorpusSeed, 50, 8)) {
    ++total;
    ok += validate_membership(gens.eval(parse_generator_word(w)), rho).ok;
  }
  detail = std::to_string(ok) + "/" + std::to_string(total) + " generator patterns are members";
  return ok == total;
}

// Criterion 2 (b): random valid tables rebuilt from conjugated special elements.
bool tables_reconstruct(const Labelling& rho, std::string& detail) {
  std::mt19937_64 rng(77);
  PLMap x1 = generator_x1(), x1f = flip_conjugate(generator_x1(), kUnit);
  long built = 0, rebuilt = 0, attempts = 0, multi = 0;
  while (built < 24 && attempts < 400) {
    ++attempts;
    long k = 1 + static_cast<long>(rng() % 2);
    std::vector<PLMap> pool{unit_identity(), random_f_prime(rng, 3), random_f_prime(rng, 2)};
    PatternElement f = make_pattern(k, rho, [&](const std::string&) {
      unsigned r = static_cast<unsigned>(rng() % 20);
      if (r < 8) return pool[0];
      if (r < 12) return pool[1];
      if (r < 15) return pool[2];
      if (r < 17) return x1;
      return x1f;
    });
    if (!validate_membership(f, rho).ok) continue;
    AtomAnalysis a(f, rho);
    if (!a.stable() || is_identity_pattern(f, rho)) continue;
    ++built;
    multi += a.max_atom() > 1;
    PatternElement prod = identity_pattern(rho);
    for (const auto& c : a.classes(a.l_f())) {
      if (c.trivial) continue;
      SpecialWitness sw = class_to_special(a, c);
      PatternElement lam = special_element(LiftKind::lambda, sw.omega, sw.h, rho);
      prod = compose_patterns(prod, conjugate_by(lam, sw.g, rho), rho);
    }
    rebuilt += equal_patterns(prod, f, rho);
  }
  detail = std::to_string(rebuilt) + "/" + std::to_string(built) + " synthesized tables rebuilt exactly (" +
           std::to_string(multi) + " with multi-cell atoms)";
  return built >= 20 && rebuilt == built;
}

Outcome characterisation(const GeneratorSet& gens) {
  std::string a, b;
  bool pa = words_are_members(gens, a);
  bool pb = tables_reconstruct(gens.rho(), b);
  return {pa && pb, "(a) " + a + "; (b) " + b};
}

Outcome special_elements(const Labelling& rho) {
  std::mt19937_64 rng(91);
  std::vector<PLMap> fs;
  for (int i = 0; i < 5; ++i) fs.push_back(random_f_prime(rng, 3));
  long checked = 0, equal = 0;
  std::set<std::string> seen;
  for (long k1 = 0; k1 <= 2; ++k1)
    for (long k2 = 0; k2 <= 2; ++k2)
      for (const auto& W : occurring_words(rho, k1 + k2 + 1)) {
        Omega om{W.letters, k1, k2};
        bool b_centre = !is_a_type(W.at(static_cast<size_t>(k1)));
        LiftKind kind = b_centre ? LiftKind::lambda : LiftKind::pi;
        for (const auto& f : fs) {
          ExprPtr e = special_element_expr(kind, om, f, rho);
          for (const auto& b : branches(e)) seen.insert(b);
          ++checked;
          equal += equal_patterns(evaluate(e, rho), special_element(kind, om, f, rho), rho);
        }
      }
  bool cover = seen.count("base") && seen.count("k2>k1") && seen.count("k1=k2");
  std::string br;
  for (const auto& s : seen) br += (br.empty() ? "" : ",") + s;
  return {cover && equal == checked && checked > 0,
          std::to_string(equal) + "/" + std::to_string(checked) + " (omega, f) expressions equal their tables; branches " +
              br};
}

Outcome two_commutators() {
  std::mt19937_64 rng(101);
  PLMap nu2 = canonical_element(Canonical::nu2), nu3 = canonical_element(Canonical::nu3);
  long ok = 0, n = 100, worst = 0;
  for (long i = 0; i < n; ++i) {
    int len = 1 + static_cast<int>(rng() % 12);
    PLMap f = unit_identity();
    for (char c : letters(rng, len)) {
      PLMap g = (c == 'a' || c == 'A') ? nu2 : nu3;
      f = compose(f, std::isupper(static_cast<unsigned char>(c)) ? invert(g) : g);
    }
    auto pairs = two_commutator_decompose(f);
    worst = std::max(worst, static_cast<long>(pairs.size()));
    ok += pairs.size() <= 2 && product(pairs) == f;
  }
  return {ok == n, std::to_string(ok) + "/" + std::to_string(n) + " elements of F' written with at most " +
                       std::to_string(worst) + " commutators, exact product"};
}

Outcome quasi_periodicity(const Labelling& rho) {
  std::mt19937_64 rng(113);
  long blocks = 0, windows_ok = 0, windows = 0, inverse_ok = 0;
  for (long m = 1; m <= 9; ++m)
    for (const auto& X : occurring_words(rho, m)) {
      ++blocks;
      long B = recurrence_bound(rho, X);
      // ten disjoint windows of the bound's length, spread out from a random start
      long start = static_cast<long>(rng() % 4001) - 2000;
      long gap = 1 + static_cast<long>(rng() % 97);
      for (int i = 0; i < 10; ++i) {
        long s = start + i * (B + gap);
        ++windows;
        windows_ok += rho.window({s}, {s + B - 1}).letters.find(X.letters) != std::string::npos;
      }
      HalfInteger t = find_inverse_block(rho, X);
      inverse_ok += rho.window(t, {t.twice + static_cast<long>(m) - 1}) == X.inverse();
    }
  return {windows_ok == windows && inverse_ok == blocks,
          std::to_string(blocks) + " blocks of <= 9 letters; " + std::to_string(windows_ok) + "/" +
              std::to_string(windows) + " windows contain the block; " + std::to_string(inverse_ok) + "/" +
              std::to_string(blocks) + " inverse occurrences found"};
}

Outcome displacement(const GeneratorSet& gens) {
  const Labelling& rho = gens.rho();
  std::mt19937_64 rng(127);
  const long R = 40;
  std::vector<GenToken> toks;
  std::vector<PLMap> maps;
  for (bool inv : {false, true})
    for (bool z : {true, false})
      for (int i = 1; i <= 3; ++i) {
        toks.push_back({z, i, inv});
        maps.push_back(realize(gens.get(toks.back()), rho, -R, R));
      }
  long checks = 0, ok = 0;
  for (int w = 0; w < 100; ++w) {
    long k = 1 + static_cast<long>(rng() % 10);
    std::vector<size_t> word;
    for (long j = 0; j < k; ++j) word.push_back(rng() % toks.size());
    for (int s = 0; s < 100; ++s) {
      Dyadic x = Dyadic(static_cast<long>(rng() % 41) - 20) + dy(static_cast<long>(rng() % 1024), 10);
      Dyadic y = x;
      for (size_t idx : word) {
        y = maps[idx](y);
        ++checks;
        ok += x - Dyadic(k + 1) <= y && y <= x + Dyadic(k + 1);
      }
    }
  }
  return {ok == checks, std::to_string(ok) + "/" + std::to_string(checks) + " prefix images within k+1 of the start"};
}

Outcome atom_lemmas() {
  long ok = 0;
  for (const auto& r : corpus) ok += r.error.empty() && r.lemmas;
  return {ok == static_cast<long>(corpus.size()) && !corpus.empty(),
          std::to_string(ok) + "/" + std::to_string(corpus.size()) +
              " stabilized corpus elements satisfy the head/foot/interior inequalities at width l_f"};
}

Outcome stabilisation() {
  long ok = 0;
  std::set<std::string> branches_seen;
  for (const auto& r : corpus) {
    ok += r.error.empty() && r.fixes_zero && r.uniformly_stable && r.g2_commutator;
    if (!r.branch.empty()) branches_seen.insert(r.branch);
  }
  std::string br;
  for (const auto& s : branches_seen) br += (br.empty() ? "" : ",") + s;
  return {ok == static_cast<long>(corpus.size()) && !corpus.empty(),
          std::to_string(ok) + "/" + std::to_string(corpus.size()) +
              " witnesses fix a neighbourhood of 0, are uniformly stable, and have g2 a commutator; branches " + br};
}

}  // namespace

int main() {
  Labelling rho = Labelling::from_permissible(BlockWord::parse("a"));
  GeneratorSet gens(rho);
  auto t0 = Clock::now();

  run(1, "cl <= 3 on a random corpus", [&] { return cl3_corpus(gens); });
  run(2, "pattern characterisation", [&] { return characterisation(gens); });
  run(3, "special elements from lifts", [&] { return special_elements(rho); });
  run(4, "two commutators in F'", [&] { return two_commutators(); });
  run(5, "quasi-periodicity", [&] { return quasi_periodicity(rho); });
  run(6, "displacement bound", [&] { return displacement(gens); });
  run(7, "atom lemmas", [&] { return atom_lemmas(); });
  run(8, "stabilisation contract", [&] { return stabilisation(); });

  std::printf("%d of 8 criteria failed, total %.1fs\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
