// Copyright 2026 The rnnt Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rnnt/lattice_export.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace rnnt {

namespace {

std::string format_value(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

double parse_value(const std::string& cell) {
  if (cell == "-inf") return kLogZero;
  if (cell == "inf") return -kLogZero;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (cell.empty() || end != cell.c_str() + cell.size()) {
    throw InputError("csv: '" + cell + "' is not a number");
  }
  return v;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace

LatticeGrids compute_lattice_grids(const Transducer& model, const DatasetRecord& record) {
  const Matrix f = transcribe(model.transcription, record.features);
  const Matrix g = predict_sequence(model.prediction, record.labels);
  const AlignmentGrid grid = forward_backward(build_lattice(f, g, record.labels));
  LatticeGrids out;
  out.log_alpha = grid.log_alpha.transpose();
  out.log_beta = grid.log_beta.transpose();
  out.log_alpha_beta = out.log_alpha + out.log_beta;
  out.log_prob = grid.log_prob;
  return out;
}

void write_grid_csv(std::ostream& out, const Matrix& grid) {
  for (Eigen::Index r = 0; r < grid.rows(); ++r) {
    for (Eigen::Index c = 0; c < grid.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_value(grid(r, c));
    }
    out << '\n';
  }
}

Matrix read_grid_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(parse_value(cell));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InputError("csv: ragged grid at row " + std::to_string(rows.size() + 1));
    }
    rows.push_back(std::move(row));
  }
  Matrix grid(static_cast<Eigen::Index>(rows.size()),
              rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) grid(r, c) = rows[r][c];
  }
  return grid;
}

void write_lattice_grids(const std::string& directory, const LatticeGrids& grids) {
  auto csv = [](const Matrix& m) {
    std::ostringstream out;
    write_grid_csv(out, m);
    return out.str();
  };
  write_file(directory + "/log_alpha.csv", csv(grids.log_alpha));
  write_file(directory + "/log_beta.csv", csv(grids.log_beta));
  write_file(directory + "/log_alpha_beta.csv", csv(grids.log_alpha_beta));
  write_file(directory + "/log_prob.txt", format_value(grids.log_prob) + "\n");
}

}  // namespace rnnt
