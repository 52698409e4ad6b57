// Text formats for PL maps and pattern elements, plus small file helpers.
#pragma once

#include "llab/pattern.hpp"

#include <istream>
#include <string>

namespace llab {

// plmap domain <lo> <hi> | plmap line, then bp <x> <fx> <slope_exp> per piece, then end.
// Line maps list every knot; the last one carries slope 0.
std::string format_plmap(const PLMap& f);
PLMap parse_plmap(const std::string& text);

// pattern k=<k>, then word <letters> followed by a plmap block per entry, then end.
std::string format_pattern(const PatternElement& p);
PatternElement parse_pattern(const std::string& text);

// Line-oriented reader shared by the parsers; errors name the line.
class LineReader {
 public:
  LineReader(std::istream& in, std::string source = "<input>") : in_(in), source_(std::move(source)) {}
  // Next non-blank line split into tokens; false at end of input.
  bool next(std::vector<std::string>& toks);
  [[noreturn]] void fail(const std::string& msg) const;
  long line() const { return line_; }

 private:
  std::istream& in_;
  std::string source_;
  long line_ = 0;
};

PLMap read_plmap(LineReader& r, const std::vector<std::string>& header);
PatternElement read_pattern(LineReader& r, const std::vector<std::string>& header);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
PLMap load_plmap(const std::string& path);
PatternElement load_pattern(const std::string& path);

}  // namespace llab
