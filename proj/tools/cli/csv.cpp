#include "csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "config.hpp"

namespace cg2cli {

const std::vector<std::string>& value_columns() {
  static const std::vector<std::string> cols = {
      "g2_L_num", "g2_R_num", "g2_L_ana", "g2_R_ana",  "P11_L",      "P12_L",
      "P11_R",    "P12_R",    "nbar_L",   "nbar_R",    "residual_L", "residual_R"};
  return cols;
}

Table empty_table(const std::vector<std::string>& axis_names) {
  Table t;
  for (const auto& a : axis_names) t.header.push_back(a + "_over_kappa");
  t.header.insert(t.header.end(), value_columns().begin(), value_columns().end());
  return t;
}

Table sweep_to_table(const cg2_sweep* sweep) {
  std::vector<std::string> axes = {cg2_sweep_axis_name(sweep, 0)};
  const bool two_d = cg2_sweep_is_2d(sweep);
  if (two_d) axes.emplace_back(cg2_sweep_axis_name(sweep, 1));
  Table t = empty_table(axes);

  const std::size_t n1 = cg2_sweep_axis_size(sweep, 0);
  const std::size_t n = cg2_sweep_size(sweep);
  t.rows.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    cg2_record r;
    if (cg2_sweep_record(sweep, k, &r) != CG2_OK) throw std::runtime_error(cg2_last_error());
    std::vector<std::optional<double>> row;
    row.emplace_back(cg2_sweep_axis_value(sweep, 0, k % n1));
    if (two_d) row.emplace_back(cg2_sweep_axis_value(sweep, 1, k / n1));
    const auto opt = [](int has, double v) { return has ? std::optional<double>(v) : std::nullopt; };
    row.push_back(opt(r.has_g2_numeric[CG2_L], r.g2_numeric[CG2_L]));
    row.push_back(opt(r.has_g2_numeric[CG2_R], r.g2_numeric[CG2_R]));
    row.push_back(opt(r.has_g2_analytic[CG2_L], r.g2_analytic[CG2_L]));
    row.push_back(opt(r.has_g2_analytic[CG2_R], r.g2_analytic[CG2_R]));
    for (const double v : {r.p11[CG2_L], r.p12[CG2_L], r.p11[CG2_R], r.p12[CG2_R], r.nbar[CG2_L],
                           r.nbar[CG2_R]}) {
      row.emplace_back(v);
    }
    row.emplace_back(r.residual[CG2_L]);
    row.emplace_back(r.residual[CG2_R]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    out << (i ? "," : "") << table.header[i];
  }
  out << '\n';
  char buf[40];
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (row[i]) {
        std::snprintf(buf, sizeof buf, "%.16e", *row[i]);
        out << buf;
      }
    }
    out << '\n';
  }
}

void write_csv(const Table& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  write_csv(table, out);
  out.flush();
  if (!out) throw InputError("write to '" + path + "' failed");
}

Table read_csv(std::istream& in) {
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw InputError("CSV has no header");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    std::vector<std::optional<double>> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string cell = line.substr(start, comma == std::string::npos ? comma : comma - start);
      if (cell.empty()) {
        row.emplace_back();
      } else {
        char* end = nullptr;
        const double v = std::strtod(cell.c_str(), &end);
        if (end != cell.c_str() + cell.size()) throw InputError("bad CSV number '" + cell + "'");
        row.emplace_back(v);
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (row.size() != t.header.size()) throw InputError("CSV row width does not match header");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace cg2cli
