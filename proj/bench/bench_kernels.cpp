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

// OpenMP kernels against their serial references over register width.
// Run with --benchmark_filter=Rotation to narrow, OMP_NUM_THREADS to pin.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "csvqd/kernels.hpp"

namespace k = csvqd::kernels;
using k::Complex;

namespace {

std::vector<Complex> random_state(std::size_t n, std::uint64_t seed = 0) {
  std::mt19937_64 rng(seed * 64 + n);
  std::normal_distribution<double> g;
  std::vector<Complex> v(std::size_t{1} << n);
  for (auto& a : v) a = {g(rng), g(rng)};
  return v;
}

// Dense-ish masks so every amplitude pair is touched.
constexpr std::uint64_t kX = 0x5555555555555555ull;
constexpr std::uint64_t kZ = 0x3333333333333333ull;

std::uint64_t mask(std::size_t n, std::uint64_t m) { return m & ((std::uint64_t{1} << n) - 1); }

template <bool Parallel>
void Apply1q(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto psi = random_state(n);
  const double c = 0.8, s = 0.6;
  const k::Matrix2 m{Complex(c), Complex(-s), Complex(s), Complex(c)};
  for (auto _ : st) {
    for (std::size_t q = 0; q < n; ++q) {
      if constexpr (Parallel) k::apply_1q(psi, q, m);
      else k::serial::apply_1q(psi, q, m);
    }
    benchmark::DoNotOptimize(psi.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n * psi.size()));
}

template <bool Parallel>
void Apply2q(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto psi = random_state(n);
  k::Matrix4 m{};
  for (std::size_t i = 0; i < 4; ++i) m[i * 4 + (3 - i)] = 1.0;  // X (x) X
  for (auto _ : st) {
    for (std::size_t q = 0; q + 1 < n; ++q) {
      if constexpr (Parallel) k::apply_2q(psi, q, q + 1, m);
      else k::serial::apply_2q(psi, q, q + 1, m);
    }
    benchmark::DoNotOptimize(psi.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>((n - 1) * psi.size()));
}

template <bool Parallel>
void Rotation(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto psi = random_state(n);
  const auto x = mask(n, kX), z = mask(n, kZ);
  const unsigned phase = static_cast<unsigned>(__builtin_popcountll(x & z)) & 3u;  // Hermitian
  for (auto _ : st) {
    if constexpr (Parallel) k::apply_pauli_rotation(psi, x, z, (4 - phase) & 3u, 0.3);
    else k::serial::apply_pauli_rotation(psi, x, z, (4 - phase) & 3u, 0.3);
    benchmark::DoNotOptimize(psi.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(psi.size()));
}

template <bool Parallel>
void Accumulate(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto in = random_state(n);
  std::vector<Complex> out(in.size());
  const auto x = mask(n, kX), z = mask(n, kZ);
  for (auto _ : st) {
    if constexpr (Parallel) k::accumulate_pauli(in, out, x, z, 0, 0.25);
    else k::serial::accumulate_pauli(in, out, x, z, 0, 0.25);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(in.size()));
}

template <bool Parallel>
void MatrixElement(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = random_state(n), b = random_state(n, 1);
  const auto x = mask(n, kX), z = mask(n, kZ);
  for (auto _ : st) {
    Complex r;
    if constexpr (Parallel) r = k::pauli_matrix_element(a, b, x, z, 0);
    else r = k::serial::pauli_matrix_element(a, b, x, z, 0);
    benchmark::DoNotOptimize(r);
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(a.size()));
}

template <bool Parallel>
void InnerProduct(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = random_state(n), b = random_state(n, 1);
  for (auto _ : st) {
    Complex r;
    if constexpr (Parallel) r = k::inner_product(a, b);
    else r = k::serial::inner_product(a, b);
    benchmark::DoNotOptimize(r);
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(a.size()));
}

#define CSVQD_BENCH_PAIR(fn)                                              \
  BENCHMARK(fn<true>)->Name(#fn "/omp")->DenseRange(8, 22, 2);            \
  BENCHMARK(fn<false>)->Name(#fn "/serial")->DenseRange(8, 22, 2)

CSVQD_BENCH_PAIR(Apply1q);
CSVQD_BENCH_PAIR(Apply2q);
CSVQD_BENCH_PAIR(Rotation);
CSVQD_BENCH_PAIR(Accumulate);
CSVQD_BENCH_PAIR(MatrixElement);
CSVQD_BENCH_PAIR(InnerProduct);

}  // namespace

BENCHMARK_MAIN();
