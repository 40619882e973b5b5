#include "dal/cli_support.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

#include "dal/errors.hpp"
#include "dal/extremal.hpp"

namespace dal {

namespace {

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Digit parse_digit(const std::string& token) {
  const std::string t = trim(token);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError("not a partial quotient: '" + t + "'");
  }
  errno = 0;
  const unsigned long long v = std::strtoull(t.c_str(), nullptr, 10);
  if (errno == ERANGE) throw UsageError("partial quotient does not fit in 64 bits: " + t);
  if (v < 1) throw InvalidDigit("partial quotient must be >= 1, got " + t);
  return v;
}

std::uint64_t parse_seed(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError("not a seed: '" + t + "'");
  }
  errno = 0;
  const unsigned long long v = std::strtoull(t.c_str(), nullptr, 10);
  if (errno == ERANGE) throw UsageError("seed does not fit in 64 bits: " + t);
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double to_number(const std::string& s, bool& ok) {
  const std::string t = trim(s);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  ok = !t.empty() && end == t.c_str() + t.size() && std::isfinite(v);
  return v;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::vector<Digit> parse_digit_list(const std::string& text) {
  std::vector<Digit> out;
  if (trim(text).empty()) return out;
  std::string token;
  std::istringstream ss(text);
  while (std::getline(ss, token, ',')) out.push_back(parse_digit(token));
  return out;
}

PartialQuotients parse_alpha(const std::string& text, const AlphaOptions& opt) {
  const std::string s = trim(text);
  if (s == "golden") return PartialQuotients::golden();
  if (starts_with(s, "[")) {
    if (s.size() < 4 || s.back() != ']' || !starts_with(s, "[0;")) {
      throw UsageError("expected a literal like [0;1,2,3], got '" + s + "'");
    }
    auto digits = parse_digit_list(s.substr(3, s.size() - 4));
    if (digits.empty()) throw UsageError("a literal needs at least one digit");
    return PartialQuotients::terminating(std::move(digits));
  }
  if (starts_with(s, "periodic:")) {
    const std::string body = s.substr(9);
    const auto bar = body.find('|');
    if (bar == std::string::npos) throw UsageError("periodic alpha needs 'pre|rep', got '" + body + "'");
    auto block = parse_digit_list(body.substr(bar + 1));
    if (block.empty()) throw UsageError("periodic alpha needs a nonempty repeating block");
    return PartialQuotients::periodic(parse_digit_list(body.substr(0, bar)), std::move(block));
  }
  if (starts_with(s, "random:")) {
    const std::uint64_t seed = parse_seed(s.substr(7));
    ExtractedDigits e = extract_digits(opt.bits, seed);
    if (e.certified_count < opt.min_digits) {
      throw NeedsMoreDigits(std::to_string(opt.bits) + " bits certify only " + std::to_string(e.certified_count) +
                            " digits; " + std::to_string(opt.min_digits) + " needed (raise --bits)");
    }
    return std::move(e.digits);
  }
  if (starts_with(s, "file:")) {
    const std::string path = s.substr(5);
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read digit file '" + path + "'");
    std::vector<Digit> digits;
    std::string token;
    char c;
    auto flush = [&] {
      if (!token.empty()) digits.push_back(parse_digit(token));
      token.clear();
    };
    while (in.get(c)) {
      if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
        flush();
      } else {
        token += c;
      }
    }
    flush();
    if (digits.empty()) throw UsageError("digit file '" + path + "' is empty");
    return PartialQuotients::prefix(std::move(digits), "file:" + path);
  }
  if (starts_with(s, "construct:")) {
    const QuadraticSurd d = parse_target(s.substr(10));
    return construct_alpha(d, opt.min_digits ? opt.min_digits : 10000).digits;
  }
  throw UsageError("unknown alpha '" + s +
                   "'; use golden, [0;a1,...], periodic:pre|rep, random:seed, file:path or construct:d");
}

QuadraticSurd parse_target(const std::string& text) {
  const std::string t = trim(text);
  if (starts_with(t, "S(") && t.back() == ')') {
    try {
      return S_closed(parse_rational(t.substr(2, t.size() - 3)));
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }
  try {
    return QuadraticSurd(parse_rational(t));
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

int CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    if (t.header.empty()) {
      t.header = std::move(fields);
      continue;
    }
    if (fields.size() != t.header.size()) {
      throw UsageError("line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                       " fields, header has " + std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(fields));
  }
  return t;
}

std::string render_svg(const CsvTable& table, const PlotOptions& opt) {
  constexpr double width = 640, height = 400, left = 70, right = 20, top = 40, bottom = 50;
  struct Step {
    double x0, x1, y;
  };
  std::vector<Step> steps;
  std::vector<std::pair<double, double>> points;
  std::string x_label = "x", y_label = "y";

  auto number_at = [&](const std::vector<std::string>& row, int col, std::size_t row_no) {
    bool ok = false;
    const double v = to_number(row[static_cast<std::size_t>(col)], ok);
    if (!ok) {
      throw UsageError("row " + std::to_string(row_no + 1) + ", column '" + table.header[col] +
                       "' is not a finite number");
    }
    return v;
  };

  const int ts = table.column("t_start"), te = table.column("t_end"), ph = table.column("psi_hi");
  const int nu = table.column("nu"), glo = table.column("G_nu_lo"), ghi = table.column("G_nu_hi");
  if (opt.x_column.empty() && ts >= 0 && te >= 0 && ph >= 0) {
    x_label = "t";
    y_label = "psi(t)";
    const int pl = table.column("psi_lo");
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const auto& r = table.rows[i];
      const double y = pl >= 0 ? (number_at(r, pl, i) + number_at(r, ph, i)) / 2 : number_at(r, ph, i);
      steps.push_back({number_at(r, ts, i), number_at(r, te, i), y});
    }
  } else if (opt.x_column.empty() && nu >= 0 && glo >= 0 && ghi >= 0) {
    x_label = "n";
    y_label = "G_n / n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const auto& r = table.rows[i];
      const double n = number_at(r, nu, i);
      if (n > 0) points.emplace_back(n, (number_at(r, glo, i) + number_at(r, ghi, i)) / 2 / n);
    }
  } else {
    // Default to the first two columns that are numeric in every row.
    std::vector<int> numeric;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      bool all = true;
      for (const auto& row : table.rows) {
        bool ok = false;
        to_number(row[c], ok);
        all = all && ok;
      }
      if (all) numeric.push_back(static_cast<int>(c));
    }
    const int first = numeric.empty() ? 0 : numeric[0];
    const int second = numeric.size() > 1 ? numeric[1] : first;
    int xc = opt.x_column.empty() ? first : table.column(opt.x_column);
    int yc = opt.y_column.empty() ? second : table.column(opt.y_column);
    if (!table.header.empty()) {
      if (xc < 0) throw UsageError("no column '" + opt.x_column + "'");
      if (yc < 0) throw UsageError("no column '" + opt.y_column + "'");
      if (static_cast<std::size_t>(yc) >= table.header.size()) yc = xc;
      x_label = table.header[xc];
      y_label = table.header[yc];
      for (std::size_t i = 0; i < table.rows.size(); ++i) {
        points.emplace_back(number_at(table.rows[i], xc, i), number_at(table.rows[i], yc, i));
      }
    }
  }

  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min, y_min = x_min, y_max = -x_min;
  for (const auto& s : steps) {
    x_min = std::min({x_min, s.x0, s.x1});
    x_max = std::max({x_max, s.x0, s.x1});
    y_min = std::min(y_min, s.y);
    y_max = std::max(y_max, s.y);
  }
  for (const auto& [x, y] : points) {
    x_min = std::min(x_min, x);
    x_max = std::max(x_max, x);
    y_min = std::min(y_min, y);
    y_max = std::max(y_max, y);
  }
  if (!(x_min <= x_max)) {
    x_min = 0;
    x_max = 1;
  }
  if (!(y_min <= y_max)) {
    y_min = 0;
    y_max = 1;
  }
  if (!steps.empty()) y_min = std::min(y_min, 0.0);
  if (x_max == x_min) x_max = x_min + 1;
  if (y_max == y_min) y_max = y_min + 1;

  const double pw = width - left - right, ph_px = height - top - bottom;
  auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * pw; };
  auto py = [&](double y) { return top + (1 - (y - y_min) / (y_max - y_min)) * ph_px; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opt.title.empty()) {
    os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(opt.title)
       << "</text>\n";
  }
  os << "<g stroke=\"black\" stroke-width=\"1\">\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top + ph_px << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph_px
     << "\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph_px << "\"/>\n";
  os << "</g>\n<g font-size=\"10\" font-family=\"sans-serif\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x_min + (x_max - x_min) * i / 4;
    const double yv = y_min + (y_max - y_min) * i / 4;
    os << "<line x1=\"" << px(xv) << "\" y1=\"" << top + ph_px << "\" x2=\"" << px(xv) << "\" y2=\""
       << top + ph_px + 4 << "\" stroke=\"black\"/>";
    os << "<text x=\"" << px(xv) << "\" y=\"" << top + ph_px + 16 << "\" text-anchor=\"middle\">" << fmt(xv)
       << "</text>\n";
    os << "<line x1=\"" << left - 4 << "\" y1=\"" << py(yv) << "\" x2=\"" << left << "\" y2=\"" << py(yv)
       << "\" stroke=\"black\"/>";
    os << "<text x=\"" << left - 6 << "\" y=\"" << py(yv) + 3 << "\" text-anchor=\"end\">" << fmt(yv)
       << "</text>\n";
  }
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\">"
     << escape(x_label) << "</text>\n";
  os << "<text x=\"16\" y=\"" << top + ph_px / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << top + ph_px / 2 << ")\">" << escape(y_label) << "</text>\n";
  os << "</g>\n";

  if (!steps.empty()) {
    os << "<path fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" d=\"";
    for (std::size_t i = 0; i < steps.size(); ++i) {
      os << (i ? " L" : "M") << px(steps[i].x0) << ',' << py(steps[i].y) << " L" << px(steps[i].x1) << ','
         << py(steps[i].y);
    }
    os << "\"/>\n";
    for (const auto& s : steps) {
      os << "<circle class=\"breakpoint\" cx=\"" << px(s.x0) << "\" cy=\"" << py(s.y) << "\" r=\"2.5\" "
         << "fill=\"steelblue\" data-t=\"" << fmt(s.x0) << "\"/>\n";
    }
  } else if (!points.empty()) {
    os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
      os << (i ? " " : "") << px(points[i].first) << ',' << py(points[i].second);
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace dal
