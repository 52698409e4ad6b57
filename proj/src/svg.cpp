#include "llab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace llab {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

}  // namespace

std::string plot_svg(const PLMap& f, const Dyadic& lo, const Dyadic& hi, const PlotOptions& opt) {
  // graph points: window ends plus every knot inside
  std::vector<std::pair<double, double>> pts;
  auto push = [&](const Dyadic& x) { pts.emplace_back(x.to_double(), f.eval(x).to_double()); };
  push(lo);
  for (const auto& k : f.knots())
    if (lo < k.x && k.x < hi) push(k.x);
  push(hi);
  double x0 = lo.to_double(), x1 = hi.to_double();
  double y0 = x0, y1 = x1;
  for (auto& p : pts) y0 = std::min(y0, p.second), y1 = std::max(y1, p.second);
  const double W = 640, H = 640, M = 48;
  auto sx = [&](double x) { return M + (x - x0) / (x1 - x0) * (W - 2 * M); };
  auto sy = [&](double y) { return H - M - (y - y0) / (y1 - y0) * (H - 2 * M); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << ' ' << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opt.title.empty())
    os << "<text x=\"" << M << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << escape(opt.title)
       << "</text>\n";
  for (auto [a, b] : opt.shaded) {
    a = std::max(a, x0), b = std::min(b, x1);
    if (a >= b) continue;
    os << "<rect class=\"atom\" x=\"" << num(sx(a)) << "\" y=\"" << M << "\" width=\"" << num(sx(b) - sx(a))
       << "\" height=\"" << H - 2 * M << "\" fill=\"#e8f0ff\" stroke=\"#9ab\"/>\n";
  }
  // axes
  os << "<g stroke=\"black\" stroke-width=\"1\">\n";
  os << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\"" << H - M << "\"/>\n";
  os << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M << "\"/>\n";
  os << "</g>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<text x=\"" << M << "\" y=\"" << H - M + 16 << "\">" << num(x0) << "</text>\n";
  os << "<text x=\"" << W - M - 30 << "\" y=\"" << H - M + 16 << "\">" << num(x1) << "</text>\n";
  os << "<text x=\"4\" y=\"" << H - M << "\">" << num(y0) << "</text>\n";
  os << "<text x=\"4\" y=\"" << M + 4 << "\">" << num(y1) << "</text>\n";
  os << "</g>\n";
  for (double m : opt.marks) {
    if (m < x0 || m > x1) continue;
    os << "<line class=\"cut\" x1=\"" << num(sx(m)) << "\" y1=\"" << H - M << "\" x2=\"" << num(sx(m)) << "\" y2=\""
       << H - M + 6 << "\" stroke=\"#c33\"/>\n";
  }
  os << "<line class=\"diagonal\" x1=\"" << num(sx(x0)) << "\" y1=\"" << num(sy(x0)) << "\" x2=\"" << num(sx(x1))
     << "\" y2=\"" << num(sy(x1)) << "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
  os << "<polyline class=\"graph\" fill=\"none\" stroke=\"#1a4\" stroke-width=\"2\" points=\"";
  for (size_t i = 0; i < pts.size(); ++i) os << (i ? " " : "") << num(sx(pts[i].first)) << ',' << num(sy(pts[i].second));
  os << "\"/>\n";
  for (size_t i = 1; i + 1 < pts.size(); ++i)
    os << "<circle class=\"bp\" cx=\"" << num(sx(pts[i].first)) << "\" cy=\"" << num(sy(pts[i].second))
       << "\" r=\"3\" fill=\"#1a4\"/>\n";
  os << "</svg>\n";
  return os.str();
}

std::string plot_svg(const PLMap& f, const PlotOptions& opt) {
  if (!f.on_line()) {
    auto d = f.domain();
    return plot_svg(f, d.lo, d.hi, opt);
  }
  if (f.knots().empty()) return plot_svg(f, Dyadic(0), Dyadic(1), opt);
  Dyadic lo = f.knots().front().x, hi = f.knots().back().x;
  Dyadic pad = max((hi - lo).scaled(-3), Dyadic::pow2(-4));
  return plot_svg(f, lo - pad, hi + pad, opt);
}

}  // namespace llab
