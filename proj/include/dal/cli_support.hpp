#pragma once

// Input grammar and output helpers shared by the dal command-line tool.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "dal/cf_core.hpp"
#include "dal/quadratic_surd.hpp"

namespace dal {

struct AlphaOptions {
  std::size_t bits = 100000;     // random:seed
  std::size_t min_digits = 0;    // random:seed and construct:d produce at least this many
};

// golden | [0;a1,a2,...] | periodic:pre|rep | random:seed | file:path | construct:d
PartialQuotients parse_alpha(const std::string& text, const AlphaOptions& opt = {});

// "p/q", a decimal, or "S(z)" for rational z >= 1.
QuadraticSurd parse_target(const std::string& text);

// Comma-separated digits, as in "3,1,4". Empty text gives an empty list.
std::vector<Digit> parse_digit_list(const std::string& text);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a header field, or -1.
  int column(const std::string& name) const;
};

// Throws UsageError when rows do not match the header.
CsvTable read_csv(std::istream& in);

struct PlotOptions {
  std::string x_column;  // empty: chosen from the header
  std::string y_column;
  std::string title;
};

// Step plot for psi traces (t_start,t_end,psi_*), G_nu/nu for integral traces,
// otherwise a line through (x, y).
std::string render_svg(const CsvTable& table, const PlotOptions& opt = {});

}  // namespace dal
