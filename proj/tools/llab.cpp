// llab: command line front end.
#include "llab/corpus.hpp"
#include "llab/decompose.hpp"
#include "llab/svg.hpp"
#include "llab/textio.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace llab;
namespace fs = std::filesystem;

namespace {

// exit codes
constexpr int kOk = 0, kFailed = 1, kBadInput = 2, kError = 3;

struct VerificationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// key: value lines, in insertion order
class Report {
 public:
  template <class T>
  void add(const std::string& key, const T& v) {
    std::ostringstream os;
    os << v;
    lines_ += key + ": " + os.str() + "\n";
  }
  void add(const std::string& key, bool v) { lines_ += key + ": " + (v ? "true" : "false") + "\n"; }
  const std::string& text() const { return lines_; }

 private:
  std::string lines_;
};

struct Manifest {
  std::string seed = "a";
  long verify_from = -10, verify_to = 10;
  std::optional<long> padding;  // computed when absent
  std::uint64_t rng_seed = 2024;
};

void load_manifest(const std::string& path, Manifest& m) {
  std::ifstream in(path);
  if (!in) throw Error("IOError", "cannot read " + path);
  LineReader r(in, path);
  std::vector<std::string> t;
  while (r.next(t)) {
    if (t.size() != 2) r.fail("expected '<key> <value>'");
    try {
      if (t[0] == "seed") m.seed = t[1];
      else if (t[0] == "verify-from") m.verify_from = std::stol(t[1]);
      else if (t[0] == "verify-to") m.verify_to = std::stol(t[1]);
      else if (t[0] == "padding") m.padding = t[1] == "auto" ? std::nullopt : std::optional<long>(std::stol(t[1]));
      else if (t[0] == "rng-seed") m.rng_seed = std::stoull(t[1]);
      else r.fail("unknown key '" + t[0] + "'");
    } catch (const std::invalid_argument&) {
      r.fail("bad value '" + t[1] + "'");
    }
  }
}

// m/2^e, or the shorthand m/2^e written as m/d with d a power of two
Dyadic coord(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos && s.find('^') == std::string::npos) {
    std::string d = s.substr(slash + 1);
    long den = 0;
    try {
      den = std::stol(d);
    } catch (const std::exception&) {
      throw ParseError("bad coordinate '" + s + "'");
    }
    if (den <= 0 || (den & (den - 1))) throw ParseError("denominator of '" + s + "' is not a power of 2");
    long e = 0;
    while ((1L << e) < den) ++e;
    try {
      return Dyadic::normalize(mpz_class(s.substr(0, slash)), e);
    } catch (const std::invalid_argument&) {
      throw ParseError("bad coordinate '" + s + "'");
    }
  }
  return Dyadic::parse(s);
}

HalfInteger half_coord(const std::string& s) {
  Dyadic d = coord(s);
  if (d.exp() > 1) throw ParseError("'" + s + "' is not in (1/2)Z");
  return HalfInteger::from_dyadic(d);
}

std::string first_token(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IOError", "cannot read " + path);
  LineReader r(in, path);
  std::vector<std::string> t;
  if (!r.next(t)) r.fail("empty file");
  return t[0];
}

std::string pair_file(const std::string& dir, size_t i, const char* side) {
  return (fs::path(dir) / ("pair" + std::to_string(i + 1) + "-" + side + ".pat")).string();
}

std::string words_summary(const PatternElement& p) { return std::to_string(p.table.size()); }

void emit_pattern(const std::string& path, const PatternElement& p, Report& rep, const std::string& key) {
  write_file(path, format_pattern(p));
  rep.add(key, path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in the groups G_rho of piecewise-linear homeomorphisms of the line"};
  app.require_subcommand(1);
  Manifest man;
  std::string manifest_path, seed_flag, report_path;
  app.add_option("--manifest", manifest_path, "key/value file: seed, verify-from, verify-to, padding, rng-seed");
  app.add_option("--seed", seed_flag, "seed word of the labelling (default a)");
  app.add_option("--report", report_path, "also write the report to this file");

  // labelling
  auto* c_lab = app.add_subcommand("labelling", "print letters of the labelling on a stretch of (1/2)Z");
  std::string from_s = "-2", to_s = "2";
  c_lab->add_option("--from", from_s);
  c_lab->add_option("--to", to_s);

  // eval
  auto* c_eval = app.add_subcommand("eval", "evaluate a generator word to a pattern table");
  std::string word, emit;
  c_eval->add_option("--word", word, "tokens z1 z2 z3 x1 x2 x3, ' for inverse")->required();
  c_eval->add_option("--emit", emit, "output .pat file");

  // member
  auto* c_member = app.add_subcommand("member", "check that a table defines an element of the group");
  std::string input;
  c_member->add_option("--input", input)->required()->check(CLI::ExistingFile);

  // atoms
  auto* c_atoms = app.add_subcommand("atoms", "atoms, classes and l_f of a pattern element");
  std::string svg_out;
  c_atoms->add_option("--input", input)->required()->check(CLI::ExistingFile);
  c_atoms->add_option("--svg", svg_out, "atom diagram");

  // special
  auto* c_special = app.add_subcommand("special", "table of lambda_omega(f) or pi_omega(f)");
  std::string kind_s = "lambda", omega_s, f_path;
  bool check_expr = false;
  c_special->add_option("--kind", kind_s)->check(CLI::IsMember({"lambda", "pi"}));
  c_special->add_option("--omega", omega_s, "<W>,<k1>,<k2>")->required();
  c_special->add_option("--f", f_path, "plmap file, an element of F' on [0,1]")->required()->check(CLI::ExistingFile);
  c_special->add_option("--emit", emit);
  c_special->add_flag("--check", check_expr, "also build it from lifts and compare");

  // transport
  auto* c_transport = app.add_subcommand("transport", "generator word carrying an interval into another cell");
  std::vector<std::string> interval;
  long m2 = 0;
  c_transport->add_option("--interval", interval)->expected(2)->required();
  c_transport->add_option("--to", m2)->required();

  // stabilise
  auto* c_stab = app.add_subcommand("stabilise", "witness triple g1, g2 and the stabilised element");
  c_stab->add_option("--input", input)->required()->check(CLI::ExistingFile);
  c_stab->add_option("--emit", emit, "directory for g1.pat, g2.pat, stabilized.pat");

  // cl3
  auto* c_cl3 = app.add_subcommand("cl3", "write an element as a product of three commutators");
  std::optional<long> vfrom, vto, pad;
  c_cl3->add_option("--input", input)->required()->check(CLI::ExistingFile);
  c_cl3->add_option("--verify-from", vfrom);
  c_cl3->add_option("--verify-to", vto);
  c_cl3->add_option("--padding", pad);
  c_cl3->add_option("--emit", emit, "directory for the six witness files");

  // verify
  auto* c_verify = app.add_subcommand("verify", "check witness pairs against a target element");
  std::string pairs_dir, target;
  c_verify->add_option("--pairs", pairs_dir)->required()->check(CLI::ExistingDirectory);
  c_verify->add_option("--target", target)->required()->check(CLI::ExistingFile);
  c_verify->add_option("--verify-from", vfrom);
  c_verify->add_option("--verify-to", vto);
  c_verify->add_option("--padding", pad);

  // plot
  auto* c_plot = app.add_subcommand("plot", "SVG graph of a plmap or of a pattern element on a window");
  std::string out;
  c_plot->add_option("--input", input)->required()->check(CLI::ExistingFile);
  c_plot->add_option("--out", out)->required();
  c_plot->add_option("--from", from_s);
  c_plot->add_option("--to", to_s);

  // corpus
  auto* c_corpus = app.add_subcommand("corpus", "run the full pipeline on random generator words");
  std::optional<std::uint64_t> rng_seed;
  int count = 50, max_len = 8;
  c_corpus->add_option("--rng-seed", rng_seed);
  c_corpus->add_option("--count", count);
  c_corpus->add_option("--max-len", max_len);
  c_corpus->add_option("--verify-from", vfrom);
  c_corpus->add_option("--verify-to", vto);

  CLI11_PARSE(app, argc, argv);

  Report rep;
  int status = kOk;
  try {
    if (!manifest_path.empty()) load_manifest(manifest_path, man);
    if (!seed_flag.empty()) man.seed = seed_flag;
    if (vfrom) man.verify_from = *vfrom;
    if (vto) man.verify_to = *vto;
    if (pad) man.padding = *pad;
    if (rng_seed) man.rng_seed = *rng_seed;
    Labelling rho = Labelling::from_permissible(BlockWord::parse(man.seed));
    rep.add("seed", man.seed);

    if (c_lab->parsed()) {
      HalfInteger a = half_coord(from_s), b = half_coord(to_s);
      if (b < a) throw ParseError("--to is below --from");
      BlockWord w = rho.window(a, b);
      rep.add("from", a.value());
      rep.add("to", b.value());
      rep.add("letters", w.letters);
      for (size_t i = 0; i < w.size(); ++i)
        rep.add("at " + HalfInteger{a.twice + static_cast<long>(i)}.value().str(), w.letters[i]);
    } else if (c_eval->parsed()) {
      GeneratorSet gens(rho);
      GeneratorWord gw = parse_generator_word(word);
      PatternElement p = gens.eval(gw);
      rep.add("word", format_generator_word(gw));
      rep.add("k", p.k);
      rep.add("entries", words_summary(p));
      rep.add("displacement", displacement_bound(p));
      if (!emit.empty()) emit_pattern(emit, p, rep, "file");
    } else if (c_member->parsed()) {
      PatternElement p = load_pattern(input);
      auto m = validate_membership(p, rho);
      rep.add("k", p.k);
      for (const auto& v : m.violations) rep.add("violation", v);
      rep.add("result", m.ok ? "pass" : "fail");
      if (!m.ok) status = kFailed;
    } else if (c_atoms->parsed()) {
      PatternElement p = load_pattern(input);
      AtomAnalysis a(p, rho);
      rep.add("k", p.k);
      rep.add("stable", a.stable());
      PlotOptions opt;
      if (a.stable()) {
        rep.add("uniformly-stable", uniformly_stable(p, rho));
        rep.add("gap", a.gap_bound());
        rep.add("l", a.max_atom());
        rep.add("l_f", a.l_f());
        const auto& w = a.window(a.l_f());
        rep.add("window", std::to_string(w.cell_lo) + " " + std::to_string(w.cell_hi));
        for (const Atom& at : w.atoms) {
          rep.add("atom", std::to_string(at.m1) + " " + std::to_string(at.m2) + (at.trivial() ? " trivial" : ""));
          rep.add("head", AtomAnalysis::decorated_word(w, at.m1, at.m1 + 1, a.l_f()));
          rep.add("foot", AtomAnalysis::decorated_word(w, at.m2 - 1, at.m2, a.l_f()));
          opt.shaded.emplace_back(static_cast<double>(at.m1), static_cast<double>(at.m2));
          opt.marks.push_back(static_cast<double>(at.m1));
        }
        auto cls = a.classes(a.l_f());
        rep.add("classes", cls.size());
        for (size_t i = 0; i < cls.size(); ++i) {
          const auto& c = cls[i];
          std::string members;
          for (size_t j = 0; j < c.members.size(); ++j)
            members += (j ? " " : "") + std::to_string(c.members[j]) + (c.flipped[j] ? "~" : "");
          rep.add("class " + std::to_string(i + 1),
                  (c.trivial ? std::string("trivial") : c.rep.word.letters) + " | " + members);
        }
        auto lem = check_atom_lemmas(a);
        rep.add("atom-lemmas", lem.ok);
        for (const auto& f : lem.failures) rep.add("lemma-failure", f);
      }
      if (!svg_out.empty()) {
        auto st = stability(p, rho);
        PLMap g = realize(p, rho, st.window_lo, st.window_hi);
        opt.title = "atoms";
        write_file(svg_out, plot_svg(g, opt));
        rep.add("svg", svg_out);
      }
    } else if (c_special->parsed()) {
      LiftKind kind = kind_s == "pi" ? LiftKind::pi : LiftKind::lambda;
      Omega om = parse_omega(omega_s);
      PLMap f = load_plmap(f_path);
      PatternElement p = special_element(kind, om, f, rho);
      rep.add("kind", to_string(kind));
      rep.add("omega", om.W + "," + std::to_string(om.k1) + "," + std::to_string(om.k2));
      rep.add("k", p.k);
      rep.add("entries", words_summary(p));
      if (check_expr) {
        ExprPtr e = special_element_expr(kind, om, f, rho);
        std::string br;
        for (const auto& b : branches(e)) br += (br.empty() ? "" : " ") + b;
        rep.add("branches", br);
        rep.add("expr-nodes", expr_size(e));
        bool eq = equal_patterns(evaluate(e, rho), p, rho);
        rep.add("expr-equal", eq);
        if (!eq) status = kFailed;
      }
      if (!emit.empty()) emit_pattern(emit, p, rep, "file");
    } else if (c_transport->parsed()) {
      GeneratorSet gens(rho);
      DInterval I{coord(interval[0]), coord(interval[1])};
      TransportResult t = transport(gens, I, m2);
      rep.add("interval", I.lo.str() + " " + I.hi.str());
      rep.add("to", m2);
      rep.add("word", format_generator_word(t.word));
      rep.add("length", t.word.size());
      for (const auto& J : t.trail) rep.add("trail", J.lo.str() + " " + J.hi.str());
      DInterval img = apply_to_interval(gens.eval(t.word), rho, I);
      bool inside = Dyadic(m2) <= img.lo && img.hi <= Dyadic(m2 + 1);
      rep.add("image", img.lo.str() + " " + img.hi.str());
      rep.add("inside-target", inside);
      if (!inside) status = kFailed;
    } else if (c_stab->parsed()) {
      GeneratorSet gens(rho);
      PatternElement g = load_pattern(input);
      StabilisationWitness w = stabilise(g, gens);
      auto chk = check_stabilisation(w, g, rho);
      rep.add("branch", w.branch);
      if (w.branch == "lambda" || w.branch == "pi") rep.add("p0", qstr(w.p0));
      rep.add("g1", w.g1_word.empty() ? std::string("1") : format_generator_word(w.g1_word));
      rep.add("g2-kind", to_string(w.g2_kind));
      rep.add("stabilized-k", w.stabilized.k);
      rep.add("fixes-zero", chk.fixes_zero);
      rep.add("uniformly-stable", chk.uniformly_stable);
      rep.add("g2-commutator", chk.g2_commutator);
      if (!chk.ok()) status = kFailed;
      if (!emit.empty()) {
        fs::create_directories(emit);
        emit_pattern((fs::path(emit) / "g1.pat").string(), w.g1, rep, "file");
        emit_pattern((fs::path(emit) / "g2.pat").string(), w.g2, rep, "file");
        emit_pattern((fs::path(emit) / "stabilized.pat").string(), w.stabilized, rep, "file");
      }
    } else if (c_cl3->parsed()) {
      GeneratorSet gens(rho);
      PatternElement f = load_pattern(input);
      ThreeCommutators tc = three_commutators(f, gens);
      rep.add("input", input);
      rep.add("branch", tc.witness.branch);
      rep.add("classes", tc.embedding.components.size());
      rep.add("pairs", tc.pairs.size());
      for (size_t i = 0; i < tc.pairs.size(); ++i)
        rep.add("pair" + std::to_string(i + 1) + "-k",
                std::to_string(tc.pairs[i].left.k) + " " + std::to_string(tc.pairs[i].right.k));
      long need = required_padding(tc.pairs);
      rep.add("verify-window", std::to_string(man.verify_from) + " " + std::to_string(man.verify_to));
      rep.add("padding", man.padding.value_or(need));
      bool eq = verify_product(tc.pairs, f, rho, man.verify_from, man.verify_to, man.padding);
      rep.add("product-equal", eq);
      if (!eq) status = kFailed;
      if (!emit.empty()) {
        fs::create_directories(emit);
        for (size_t i = 0; i < tc.pairs.size(); ++i) {
          emit_pattern(pair_file(emit, i, "left"), tc.pairs[i].left, rep, "file");
          emit_pattern(pair_file(emit, i, "right"), tc.pairs[i].right, rep, "file");
        }
        write_file((fs::path(emit) / "report.txt").string(), rep.text());
      }
    } else if (c_verify->parsed()) {
      PatternElement f = load_pattern(target);
      std::vector<PatternPair> pairs;
      bool members = true;
      for (size_t i = 0; i < 3; ++i) {
        PatternPair p{load_pattern(pair_file(pairs_dir, i, "left")), load_pattern(pair_file(pairs_dir, i, "right"))};
        for (const auto* q : {&p.left, &p.right}) {
          auto m = validate_membership(*q, rho);
          for (const auto& v : m.violations) rep.add("violation", "pair" + std::to_string(i + 1) + " " + v);
          members = members && m.ok;
        }
        pairs.push_back(std::move(p));
      }
      rep.add("members", members);
      if (!members) throw VerificationFailed("a witness is not an element of the group");
      rep.add("verify-window", std::to_string(man.verify_from) + " " + std::to_string(man.verify_to));
      rep.add("padding", man.padding.value_or(required_padding(pairs)));
      bool eq = verify_product(pairs, f, rho, man.verify_from, man.verify_to, man.padding);
      rep.add("product-equal", eq);
      if (!eq) status = kFailed;
    } else if (c_plot->parsed()) {
      std::string head = first_token(input);
      PlotOptions opt;
      opt.title = fs::path(input).filename().string();
      if (head == "plmap") {
        write_file(out, plot_svg(load_plmap(input), opt));
      } else {
        PatternElement p = load_pattern(input);
        Dyadic a = coord(from_s), b = coord(to_s);
        if (!a.is_integer() || !b.is_integer() || !(a < b)) throw ParseError("--from/--to must be integers with from < to");
        long A = to_long(a.floor()), B = to_long(b.floor());
        AtomAnalysis an(p, rho);
        if (an.stable()) {
          const auto& w = an.window(an.l_f());
          for (const Atom& at : w.atoms) {
            if (at.trivial()) continue;
            opt.shaded.emplace_back(static_cast<double>(at.m1), static_cast<double>(at.m2));
            opt.marks.push_back(static_cast<double>(at.m1));
            opt.marks.push_back(static_cast<double>(at.m2));
          }
        }
        write_file(out, plot_svg(realize(p, rho, A, B), opt));
      }
      rep.add("svg", out);
    } else if (c_corpus->parsed()) {
      GeneratorSet gens(rho);
      rep.add("rng-seed", man.rng_seed);
      rep.add("count", count);
      rep.add("max-len", max_len);
      rep.add("verify-window", std::to_string(man.verify_from) + " " + std::to_string(man.verify_to));
      long passed = 0;
      auto words = corpus_words(man.rng_seed, count, max_len);
      for (size_t i = 0; i < words.size(); ++i) {
        CorpusResult r = run_corpus_element(gens, words[i], man.verify_from, man.verify_to);
        std::string line = "[" + r.word + "] k=" + std::to_string(r.k);
        if (!r.error.empty()) {
          line += " error=" + r.error;
        } else {
          line += " branch=" + r.branch + " classes=" + std::to_string(r.classes) +
                  " padding=" + std::to_string(r.padding) + " stab=" + std::to_string(r.fixes_zero) +
                  std::to_string(r.uniformly_stable) + std::to_string(r.g2_commutator) +
                  " lemmas=" + std::to_string(r.lemmas) + " product-equal=" + (r.product_equal ? "true" : "false");
        }
        rep.add("element " + std::to_string(i + 1), line);
        passed += r.ok();
      }
      rep.add("passed", std::to_string(passed) + "/" + std::to_string(words.size()));
      if (passed != static_cast<long>(words.size())) status = kFailed;
    }
  } catch (const ParseError& e) {
    std::cout << rep.text();
    std::cerr << "ParseError: " << e.what() << "\n";
    return kBadInput;
  } catch (const VerificationFailed& e) {
    rep.add("result", "fail");
    std::cout << rep.text();
    std::cerr << "VerificationFailed: " << e.what() << "\n";
    return kFailed;
  } catch (const Error& e) {
    std::cout << rep.text();
    std::cerr << e.what() << "\n";
    return e.kind() == "WindowTooSmall" || e.kind() == "InvalidElement" ? kFailed : kError;
  } catch (const std::exception& e) {
    std::cout << rep.text();
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  std::cout << rep.text();
  if (!report_path.empty()) write_file(report_path, rep.text());
  std::cerr << (status == kOk ? "ok" : "verification failed") << "\n";
  return status;
}
