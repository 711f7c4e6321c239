#include "oudw/path_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace oudw {

namespace {

double parse_cell(const std::string& cell, std::size_t row,
                  const char* column) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(cell, &pos);
    if (pos != cell.size()) throw std::invalid_argument("");
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("path csv row " + std::to_string(row) +
                                ": non-numeric cell '" + cell +
                                "' in column " + column);
  }
}

}  // namespace

void write_path_csv(const SamplePath& path, std::ostream& out) {
  validate(path);
  out << "t,x,v\n";
  char buf[128];
  for (std::size_t i = 0; i < path.points(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", path.t(i),
                  path.x[i], path.v[i]);
    out << buf;
  }
}

void save_path_csv(const SamplePath& path, const std::string& filename) {
  std::ofstream out(filename);
  if (!out)
    throw std::invalid_argument("cannot open " + filename + " for writing");
  write_path_csv(path, out);
}

SamplePath read_path_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("path csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,x,v")
    throw std::invalid_argument("path csv: expected header 't,x,v', got '" +
                                line + "'");

  std::vector<double> t, x, v;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::string ct, cx, cv, extra;
    if (!std::getline(cells, ct, ',') || !std::getline(cells, cx, ',') ||
        !std::getline(cells, cv, ','))
      throw std::invalid_argument("path csv row " + std::to_string(row) +
                                  ": expected three columns");
    if (std::getline(cells, extra, ','))
      throw std::invalid_argument("path csv row " + std::to_string(row) +
                                  ": too many columns");
    t.push_back(parse_cell(ct, row, "t"));
    x.push_back(parse_cell(cx, row, "x"));
    v.push_back(parse_cell(cv, row, "v"));
  }
  if (t.size() < 2)
    throw std::invalid_argument("path csv: need at least two rows");
  if (t.front() != 0.0)
    throw std::invalid_argument("path csv: time must start at 0");

  SamplePath path;
  path.step = t[1];
  path.horizon = t.back();
  path.x = std::move(x);
  path.v = std::move(v);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (std::abs(t[i] - path.t(i)) > 1e-9 * std::max(1.0, std::abs(t[i])))
      throw std::invalid_argument("path csv row " + std::to_string(i + 1) +
                                  ": time grid is not uniform");
  }
  validate(path);
  return path;
}

SamplePath load_path_csv(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw std::invalid_argument("cannot open path csv " + filename);
  return read_path_csv(in);
}

}  // namespace oudw
