#include "normlab/records.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace normlab {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("format_number failed");
  return std::string(buf, ptr);
}

std::string manifest_json(const Manifest& manifest) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : manifest) j[k] = v;
  return j.dump(2);
}

namespace {

Check make_check(std::string name, double value, std::string relation, double bound, double upper, bool pass) {
  Check c;
  c.name = std::move(name);
  c.value = value;
  c.relation = std::move(relation);
  c.bound = bound;
  c.upper = upper;
  c.pass = pass;
  return c;
}

}  // namespace

Check check_le(std::string name, double value, double bound) {
  return make_check(std::move(name), value, "<=", bound, 0.0, value <= bound);
}
Check check_ge(std::string name, double value, double bound) {
  return make_check(std::move(name), value, ">=", bound, 0.0, value >= bound);
}
Check check_lt(std::string name, double value, double bound) {
  return make_check(std::move(name), value, "<", bound, 0.0, value < bound);
}
Check check_gt(std::string name, double value, double bound) {
  return make_check(std::move(name), value, ">", bound, 0.0, value > bound);
}
Check check_in(std::string name, double value, double lower, double upper) {
  return make_check(std::move(name), value, "in", lower, upper, value >= lower && value <= upper);
}
Check check_runtime(double seconds, double limit) {
  Check c = check_lt("runtime seconds", seconds, limit);
  c.timing = true;
  return c;
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << csv_field(table.columns[c]);
  }
  out << "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
    out << "\r\n";
  }
}

void write_svg(std::ostream& out, const Table& table, bool log_y) {
  constexpr double W = 640, H = 400, pad = 50;
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  auto ty = [log_y](double v) { return log_y ? std::log10(std::max(v, 1e-300)) : v; };
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& row : table.rows) {
    if (row.empty() || !std::isfinite(row[0])) continue;
    x0 = std::min(x0, row[0]);
    x1 = std::max(x1, row[0]);
    for (std::size_t c = 1; c < row.size(); ++c) {
      const double v = ty(row[c]);
      if (!std::isfinite(v)) continue;
      y0 = std::min(y0, v);
      y1 = std::max(y1, v);
    }
  }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;
  if (!std::isfinite(x0)) x0 = 0.0, x1 = 1.0;
  if (!std::isfinite(y0)) y0 = 0.0, y1 = 1.0;
  auto px = [&](double x) { return pad + (x - x0) / (x1 - x0) * (W - 2 * pad); };
  auto py = [&](double y) { return H - pad - (y - y0) / (y1 - y0) * (H - 2 * pad); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
      << " " << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
      << table.name << "</text>\n";
  out << "<polyline fill=\"none\" stroke=\"black\" points=\"" << pad << "," << pad << " " << pad << "," << H - pad
      << " " << W - pad << "," << H - pad << "\"/>\n";
  out << std::setprecision(6);
  out << "<text x=\"" << pad << "\" y=\"" << H - pad + 16 << "\" font-family=\"sans-serif\" font-size=\"10\">" << x0
      << "</text>\n";
  out << "<text x=\"" << W - pad << "\" y=\"" << H - pad + 16
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << x1 << "</text>\n";
  out << "<text x=\"4\" y=\"" << H - pad << "\" font-family=\"sans-serif\" font-size=\"10\">"
      << (log_y ? "1e" : "") << y0 << "</text>\n";
  out << "<text x=\"4\" y=\"" << pad << "\" font-family=\"sans-serif\" font-size=\"10\">" << (log_y ? "1e" : "")
      << y1 << "</text>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"" << H - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << (table.columns.empty() ? "" : table.columns[0]) << "</text>\n";
  for (std::size_t c = 1; c < table.columns.size(); ++c) {
    const char* color = colors[(c - 1) % 6];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& row : table.rows) {
      if (c >= row.size()) continue;
      const double v = ty(row[c]);
      if (!std::isfinite(v) || !std::isfinite(row[0])) continue;
      out << px(row[0]) << "," << py(v) << " ";
    }
    out << "\"/>\n";
    out << "<text x=\"" << W - pad + 4 << "\" y=\"" << pad + 14 * static_cast<double>(c)
        << "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"" << color << "\">" << table.columns[c]
        << "</text>\n";
  }
  out << "</svg>\n";
}

std::vector<std::filesystem::path> write_report(const Report& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  auto open = [&](const std::string& name) {
    const auto path = dir / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    written.push_back(path);
    return f;
  };
  for (const Table& t : report.tables) {
    {
      auto f = open(report.experiment + "_" + t.name + ".csv");
      write_csv(f, t);
    }
    auto f = open(report.experiment + "_" + t.name + ".svg");
    write_svg(f, t);
  }
  {
    auto f = open(report.experiment + "_checks.csv");
    f << "check,value,relation,bound,upper,result,config_hash\r\n";
    for (const Check& c : report.checks) {
      if (c.timing) continue;
      f << csv_field(c.name) << "," << format_number(c.value) << "," << csv_field(c.relation) << ","
        << format_number(c.bound) << "," << format_number(c.upper) << "," << (c.pass ? "PASS" : "FAIL") << ","
        << report.config_hash << "\r\n";
    }
  }
  Manifest m = report.manifest;
  m.insert(m.begin(), {"config_hash", report.config_hash});
  m.insert(m.begin(), {"experiment", report.experiment});
  m.push_back({"result", report.passed() ? "PASS" : "FAIL"});
  m.push_back({"runtime_seconds", format_number(report.runtime_seconds)});
  for (const Check& c : report.checks) {
    if (c.timing) m.push_back({c.name, format_number(c.value) + " " + c.relation + " " + format_number(c.bound) + " " + (c.pass ? "PASS" : "FAIL")});
  }
  for (std::size_t i = 0; i < report.warnings.size(); ++i) m.push_back({"warning_" + std::to_string(i), report.warnings[i]});
  auto f = open(report.experiment + "_manifest.json");
  f << manifest_json(m) << "\n";
  return written;
}

void print_checks(std::ostream& out, const Report& report) {
  for (const std::string& w : report.warnings) out << "warning: " << w << "\n";
  for (const Check& c : report.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << report.experiment << ": " << c.name << " = " << format_number(c.value)
        << " " << c.relation << " " << format_number(c.bound);
    if (c.relation == "in") out << ".." << format_number(c.upper);
    out << "\n";
  }
}

}  // namespace normlab
