#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chiralg2/chiralg2.h"

namespace cg2cli {

/// Column-ordered sweep output. Axis columns come first, then value_columns().
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::optional<double>>> rows;
};

const std::vector<std::string>& value_columns();

/// Empty table with axis columns named "<axis>_over_kappa".
Table empty_table(const std::vector<std::string>& axis_names);

Table sweep_to_table(const cg2_sweep* sweep);

/// Numbers as %.16e (17 significant digits, round-trips exactly); missing
/// values as empty fields.
void write_csv(const Table& table, std::ostream& out);

/// Throws InputError if the file cannot be written.
void write_csv(const Table& table, const std::string& path);

/// Inverse of write_csv. Throws InputError on malformed input.
Table read_csv(std::istream& in);

}  // namespace cg2cli
