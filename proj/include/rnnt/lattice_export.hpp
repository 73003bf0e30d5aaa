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

#pragma once

// Forward, backward and occupancy grids of one record as CSV, for heatmap
// plotting. Grids are (U+1) x T: row u, column t. Values carry 17
// significant digits.

#include <iosfwd>
#include <string>

#include "rnnt/dataset.hpp"
#include "rnnt/lattice.hpp"
#include "rnnt/transducer.hpp"

namespace rnnt {

struct LatticeGrids {
  Matrix log_alpha;       // (U+1) x T
  Matrix log_beta;        // (U+1) x T
  Matrix log_alpha_beta;  // (U+1) x T
  double log_prob = kLogZero;
};

LatticeGrids compute_lattice_grids(const Transducer& model, const DatasetRecord& record);

void write_grid_csv(std::ostream& out, const Matrix& grid);
Matrix read_grid_csv(std::istream& in);

// Writes log_alpha.csv, log_beta.csv, log_alpha_beta.csv and log_prob.txt
// into `directory`, which must exist.
void write_lattice_grids(const std::string& directory, const LatticeGrids& grids);

}  // namespace rnnt
