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

#include "csvqd/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

#include "csvqd/errors.hpp"
#include "csvqd/kernels.hpp"

namespace csvqd::oracle {

Eigen::MatrixXcd dense_matrix(const PauliSum& h, std::size_t cap) {
  const std::size_t n = h.n_qubits();
  if (n > cap) {
    throw ResourceError("dense matrix of " + std::to_string(n) +
                        " qubits exceeds the cap of " + std::to_string(cap));
  }
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  // Column b of a Pauli string has one nonzero, at row b ^ x.
  for (const auto& [p, c] : h) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      m(static_cast<Eigen::Index>(b ^ p.x()), static_cast<Eigen::Index>(b)) +=
          c * kernels::pauli_factor(b, p.x(), p.z(), p.phase());
    }
  }
  return m;
}

SpectrumSlice eigensolve_lowest(const PauliSum& h, std::size_t k, bool with_vectors,
                                std::size_t cap) {
  if (!h.is_hermitian()) throw ContractError("eigensolve_lowest needs a Hermitian input");
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  if (k > dim) throw RangeError("requested more eigenvalues than the dimension");
  const Eigen::MatrixXcd m = dense_matrix(h, cap);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      m, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw SolverError("dense eigensolver failed", 0.0);
  SpectrumSlice out;
  for (std::size_t i = 0; i < k; ++i) {
    out.eigenvalues.push_back(solver.eigenvalues()(static_cast<Eigen::Index>(i)));
    if (with_vectors) {
      std::vector<Complex> amps(dim);
      const auto col = solver.eigenvectors().col(static_cast<Eigen::Index>(i));
      for (std::size_t j = 0; j < dim; ++j) amps[j] = col(static_cast<Eigen::Index>(j));
      out.eigenvectors.push_back(Statevector::from_amplitudes(std::move(amps)));
    }
  }
  return out;
}

}  // namespace csvqd::oracle
