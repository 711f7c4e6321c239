#pragma once

#include <iosfwd>
#include <string>

#include "oudw/model.hpp"

namespace oudw {

/// CSV with header `t,x,v`, one row per grid point, 17 significant digits
/// (round-trips doubles exactly).
void write_path_csv(const SamplePath& path, std::ostream& out);
void save_path_csv(const SamplePath& path, const std::string& filename);

/// Parses and validates; malformed input raises std::invalid_argument naming
/// the offending row and column.
SamplePath read_path_csv(std::istream& in);
SamplePath load_path_csv(const std::string& filename);

}  // namespace oudw
