// Copyright 2026 The csvqd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "csvqd/pauli.hpp"
#include "csvqd/statevector.hpp"

namespace csvqd::oracle {

/// Default largest width for which a dense matrix is built.
inline constexpr std::size_t kDefaultQubitCap = 14;

/// Ascending eigenvalues, optionally with eigenvectors.
struct SpectrumSlice {
  std::vector<double> eigenvalues;
  std::vector<Statevector> eigenvectors;
};

/// Row/column index bit q is qubit q. Throws ResourceError above `cap`.
Eigen::MatrixXcd dense_matrix(const PauliSum& h, std::size_t cap = kDefaultQubitCap);

/// The k lowest eigenpairs of a Hermitian sum by dense diagonalisation.
SpectrumSlice eigensolve_lowest(const PauliSum& h, std::size_t k,
                                bool with_vectors = false,
                                std::size_t cap = kDefaultQubitCap);

}  // namespace csvqd::oracle
