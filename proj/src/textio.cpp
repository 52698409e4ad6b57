#include "llab/textio.hpp"

#include <fstream>
#include <sstream>

namespace llab {

bool LineReader::next(std::vector<std::string>& toks) {
  std::string s;
  while (std::getline(in_, s)) {
    ++line_;
    auto hash = s.find('#');
    if (hash != std::string::npos) s.resize(hash);
    std::istringstream ls(s);
    toks.clear();
    for (std::string t; ls >> t;) toks.push_back(t);
    if (!toks.empty()) return true;
  }
  return false;
}

void LineReader::fail(const std::string& msg) const {
  throw ParseError(source_ + ":" + std::to_string(line_) + ": " + msg);
}

namespace {

Dyadic dyadic_tok(const LineReader& r, const std::string& s) {
  try {
    return Dyadic::parse(s);
  } catch (const std::exception& e) {
    r.fail("bad dyadic '" + s + "'");
  }
}

long long_tok(const LineReader& r, const std::string& s) {
  try {
    size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    r.fail("bad integer '" + s + "'");
  }
}

}  // namespace

std::string format_plmap(const PLMap& f) {
  std::ostringstream os;
  const auto& ks = f.knots();
  if (f.on_line()) {
    os << "plmap line\n";
    for (size_t i = 0; i < ks.size(); ++i) {
      long s = i + 1 < ks.size() ? f.slope_right(ks[i].x) : 0;
      os << "bp " << ks[i].x << ' ' << ks[i].y << ' ' << s << '\n';
    }
  } else {
    os << "plmap domain " << ks.front().x << ' ' << ks.back().x << '\n';
    for (size_t i = 0; i + 1 < ks.size(); ++i)
      os << "bp " << ks[i].x << ' ' << ks[i].y << ' ' << f.slope_right(ks[i].x) << '\n';
  }
  os << "end\n";
  return os.str();
}

PLMap read_plmap(LineReader& r, const std::vector<std::string>& h) {
  bool line;
  Dyadic lo, hi;
  if (h.size() == 2 && h[0] == "plmap" && h[1] == "line") {
    line = true;
  } else if (h.size() == 4 && h[0] == "plmap" && h[1] == "domain") {
    line = false;
    lo = dyadic_tok(r, h[2]);
    hi = dyadic_tok(r, h[3]);
    if (!(lo < hi)) r.fail("empty domain");
  } else {
    r.fail("expected 'plmap line' or 'plmap domain <lo> <hi>'");
  }
  struct Bp {
    Dyadic x, y;
    long s;
    long at;
  };
  std::vector<Bp> bps;
  std::vector<std::string> t;
  for (;;) {
    if (!r.next(t)) r.fail("missing 'end' of plmap");
    if (t.size() == 1 && t[0] == "end") break;
    if (t.size() != 4 || t[0] != "bp") r.fail("expected 'bp <x> <fx> <slope_exp>'");
    bps.push_back({dyadic_tok(r, t[1]), dyadic_tok(r, t[2]), long_tok(r, t[3]), r.line()});
  }
  std::vector<Knot> ks;
  for (auto& b : bps) ks.push_back({b.x, b.y});
  if (line) {
    if (!bps.empty() && bps.back().s != 0) r.fail("last breakpoint of a line map must have slope 0");
  } else {
    if (bps.empty()) r.fail("interval map without pieces");
    if (bps.front().x != lo) r.fail("first breakpoint must sit at the domain start");
    if (!(bps.back().x < hi)) r.fail("breakpoint outside the domain");
    ks.push_back({hi, bps.back().y + (hi - bps.back().x).scaled(bps.back().s)});
  }
  // The stated slopes must match the points.
  for (size_t i = 0; i + 1 < ks.size(); ++i) {
    auto s = log2_ratio(ks[i + 1].x - ks[i].x, ks[i + 1].y - ks[i].y);
    if (!s || *s != bps[i].s)
      throw ParseError("line " + std::to_string(bps[i].at) + ": slope exponent does not match the next breakpoint");
  }
  try {
    return PLMap::from_knots(line ? PLMap::Kind::line : PLMap::Kind::interval, std::move(ks));
  } catch (const Error& e) {
    r.fail(e.what());
  }
}

PLMap parse_plmap(const std::string& text) {
  std::istringstream in(text);
  LineReader r(in);
  std::vector<std::string> h;
  if (!r.next(h)) r.fail("empty input");
  PLMap f = read_plmap(r, h);
  if (r.next(h)) r.fail("trailing text after plmap");
  return f;
}

std::string format_pattern(const PatternElement& p) {
  std::string out = "pattern k=" + std::to_string(p.k) + "\n";
  for (const auto& [w, m] : p.table) {
    out += "word " + w + "\n";
    out += format_plmap(m);
  }
  out += "end\n";
  return out;
}

PatternElement read_pattern(LineReader& r, const std::vector<std::string>& h) {
  if (h.size() != 2 || h[0] != "pattern" || h[1].rfind("k=", 0) != 0) r.fail("expected 'pattern k=<k>'");
  PatternElement p;
  p.k = long_tok(r, h[1].substr(2));
  if (p.k < 0) r.fail("negative width");
  std::vector<std::string> t;
  for (;;) {
    if (!r.next(t)) r.fail("missing 'end' of pattern");
    if (t.size() == 1 && t[0] == "end") break;
    if (t.size() != 2 || t[0] != "word") r.fail("expected 'word <letters>'");
    const std::string& w = t[1];
    try {
      BlockWord::parse(w);
    } catch (const ParseError& e) {
      r.fail(e.what());
    }
    if (static_cast<long>(w.size()) != 2 * p.k + 1 || !b_centred(w))
      r.fail("word '" + w + "' needs " + std::to_string(2 * p.k + 1) + " letters and a b-type centre");
    std::vector<std::string> mh;
    if (!r.next(mh)) r.fail("missing cell map");
    PLMap m = read_plmap(r, mh);
    std::string key = normal_key(w);
    if (key != w) {
      // stored under the smaller key as the flipped map
      m = flip_conjugate(m, {Dyadic(0), Dyadic(1)});
    }
    if (p.table.count(key)) r.fail("duplicate entry for '" + w + "'");
    p.table.emplace(key, std::move(m));
  }
  return p;
}

PatternElement parse_pattern(const std::string& text) {
  std::istringstream in(text);
  LineReader r(in);
  std::vector<std::string> h;
  if (!r.next(h)) r.fail("empty input");
  PatternElement p = read_pattern(r, h);
  if (r.next(h)) r.fail("trailing text after pattern");
  return p;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IOError", "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("IOError", "cannot write " + path);
  out << text;
  if (!out) throw Error("IOError", "write failed for " + path);
}

PLMap load_plmap(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IOError", "cannot read " + path);
  LineReader r(in, path);
  std::vector<std::string> h;
  if (!r.next(h)) r.fail("empty file");
  PLMap f = read_plmap(r, h);
  if (r.next(h)) r.fail("trailing text after plmap");
  return f;
}

PatternElement load_pattern(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IOError", "cannot read " + path);
  LineReader r(in, path);
  std::vector<std::string> h;
  if (!r.next(h)) r.fail("empty file");
  PatternElement p = read_pattern(r, h);
  if (r.next(h)) r.fail("trailing text after pattern");
  return p;
}

}  // namespace llab
