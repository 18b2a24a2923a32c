// Copyright 2026 The guesswork authors.
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

// Shared helpers for the test suite: conversions into the oracle's matrix
// type, seeded random generators, and the two frozen bounds-only fixtures.

#ifndef GUESSWORK_TESTS_TEST_SUPPORT_HPP
#define GUESSWORK_TESTS_TEST_SUPPORT_HPP

#include <guesswork/guesswork.hpp>

#include "oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace test_support {

inline oracle::Mat2 to_mat2(const guesswork::ComplexMatrix& m) {
  return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

inline std::vector<oracle::Mat2> state_matrices(const guesswork::Ensemble& e) {
  std::vector<oracle::Mat2> out;
  out.reserve(static_cast<std::size_t>(e.size()));
  for (int m = 0; m < e.size(); ++m) {
    out.push_back(to_mat2(e.op(m).matrix()));
  }
  return out;
}

/// Uniform point in the closed Bloch ball (rejection sampling).
inline guesswork::BlochVector random_bloch(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  while (true) {
    guesswork::BlochVector r{coord(rng), coord(rng), coord(rng)};
    if (r.norm() <= 1.0) return r;
  }
}

inline guesswork::Ensemble random_uniform_qubit_ensemble(std::mt19937_64& rng, int k) {
  std::vector<guesswork::BlochVector> points;
  points.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    points.push_back(random_bloch(rng));
  }
  return guesswork::uniform_qubit_ensemble(points);
}

inline guesswork::HermitianOperator random_hermitian(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  guesswork::ComplexMatrix g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      g(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    }
  }
  guesswork::ComplexMatrix h = 0.5 * (g + g.adjoint());
  return guesswork::HermitianOperator(std::move(h));
}

/// Random positive semidefinite operator G G^dagger (Wishart style).
inline guesswork::HermitianOperator random_psd(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  guesswork::ComplexMatrix g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      g(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    }
  }
  guesswork::ComplexMatrix p = g * g.adjoint();
  guesswork::ComplexMatrix sym = 0.5 * (p + p.adjoint());
  return guesswork::HermitianOperator(std::move(sym));
}

/// Random ensemble with generic (non-uniform) weights in dimension d.
inline guesswork::Ensemble random_general_ensemble(std::mt19937_64& rng, int d, int k) {
  std::vector<guesswork::HermitianOperator> ops;
  ops.reserve(static_cast<std::size_t>(k));
  double total = 0;
  for (int m = 0; m < k; ++m) {
    ops.push_back(random_psd(rng, d));
    total += ops.back().trace();
  }
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(k));
  for (int m = 0; m < k; ++m) {
    ops[static_cast<std::size_t>(m)] *= 1.0 / total;
    labels.push_back("m" + std::to_string(m));
  }
  return guesswork::make_ensemble(std::move(labels), std::move(ops));
}

inline guesswork::Ordering random_ordering(std::mt19937_64& rng, int k) {
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return guesswork::Ordering(std::move(perm));
}

/// Three orthogonal "classical" states with weights 0.5 / 0.3 / 0.2.  They
/// are perfectly distinguishable (true minimum guesswork 1), but the
/// two-outcome construction only reaches 1.2 and the certificate fails, so
/// the solver must report BoundsOnly with bracket [1.0, 1.2] and best
/// ordering (a, c, b).
inline guesswork::Ensemble classical_qutrit_fixture() {
  auto basis_state = [](int slot, double weight) {
    guesswork::ComplexMatrix m = guesswork::ComplexMatrix::Zero(3, 3);
    m(slot, slot) = weight;
    return guesswork::HermitianOperator(std::move(m));
  };
  return guesswork::make_ensemble(
      {"a", "b", "c"},
      {basis_state(0, 0.5), basis_state(1, 0.3), basis_state(2, 0.2)});
}

/// Non-uniform qubit ensemble: weights 0.7 / 0.2 / 0.1 on Bloch +z, +x, -z.
/// The trace-norm maximizer is (heavy, side, light) with norm 1.6, its
/// certificate fails, and the solver reports the bracket [1.0, 1.2].
inline guesswork::Ensemble lopsided_qubit_fixture() {
  guesswork::ComplexMatrix heavy = guesswork::ComplexMatrix::Zero(2, 2);
  heavy(0, 0) = 0.7;
  guesswork::ComplexMatrix side(2, 2);
  side << 0.1, 0.1, 0.1, 0.1;
  guesswork::ComplexMatrix light = guesswork::ComplexMatrix::Zero(2, 2);
  light(1, 1) = 0.1;
  return guesswork::make_ensemble(
      {"heavy", "side", "light"},
      {guesswork::HermitianOperator(std::move(heavy)),
       guesswork::HermitianOperator(std::move(side)),
       guesswork::HermitianOperator(std::move(light))});
}

}  // namespace test_support

#endif  // GUESSWORK_TESTS_TEST_SUPPORT_HPP
