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

#ifndef GUESSWORK_LINALG_HPP
#define GUESSWORK_LINALG_HPP

#include <guesswork/errors.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace guesswork {

using ComplexMatrix = Eigen::MatrixXcd;

namespace tol {
/// Maximum allowed deviation from A = A^dagger when constructing operators.
inline constexpr double hermitian = 1e-12;
/// Eigenvalues closer than this (adjacent gap) merge into one cluster.
inline constexpr double cluster = 1e-9;
/// Spectral values within this of zero count as kernel directions.
inline constexpr double zero = 1e-10;
/// Eigenvalues above -psd are accepted as positive semidefinite.
inline constexpr double psd = 1e-10;
/// Probability vectors must sum to one within this.
inline constexpr double normalization = 1e-9;
/// Negative probabilities above -clamp are rounded up to zero.
inline constexpr double clamp = 1e-12;
/// Two search objective values within this window count as tied.
inline constexpr double tie = 1e-12;
}  // namespace tol

/// A finite-dimensional Hermitian operator (dense, double precision).
///
/// Construction validates Hermiticity to within tol::hermitian and then
/// stores the exactly symmetrized matrix (A + A^dagger)/2, so downstream
/// arithmetic never reintroduces an anti-Hermitian part.
class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix m) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
      throw validation_error("operator must be a nonempty square matrix");
    }
    const double deviation = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (!(deviation <= tol::hermitian)) {
      std::ostringstream os;
      os << "operator is not Hermitian: max |A - A^dagger| = " << deviation;
      throw validation_error(os.str());
    }
    mat_ = 0.5 * (m + m.adjoint());
  }

  static HermitianOperator zero(Eigen::Index dim) {
    return HermitianOperator(trusted_t{}, ComplexMatrix::Zero(dim, dim));
  }

  static HermitianOperator identity(Eigen::Index dim) {
    return HermitianOperator(trusted_t{}, ComplexMatrix::Identity(dim, dim));
  }

  /// Wraps a matrix known to be Hermitian by construction (projectors,
  /// sums of validated operators).  Skips the validation pass.
  static HermitianOperator trusted(ComplexMatrix m) {
    return HermitianOperator(trusted_t{}, std::move(m));
  }

  Eigen::Index dim() const { return mat_.rows(); }
  const ComplexMatrix& matrix() const { return mat_; }
  double trace() const { return mat_.trace().real(); }

  /// Largest entrywise absolute difference to another operator.
  double max_abs_diff(const HermitianOperator& other) const {
    require_same_dim(other);
    return (mat_ - other.mat_).cwiseAbs().maxCoeff();
  }

  HermitianOperator& operator+=(const HermitianOperator& other) {
    require_same_dim(other);
    mat_ += other.mat_;
    return *this;
  }
  HermitianOperator& operator-=(const HermitianOperator& other) {
    require_same_dim(other);
    mat_ -= other.mat_;
    return *this;
  }
  HermitianOperator& operator*=(double scale) {
    mat_ *= scale;
    return *this;
  }

  friend HermitianOperator operator+(HermitianOperator a, const HermitianOperator& b) {
    a += b;
    return a;
  }
  friend HermitianOperator operator-(HermitianOperator a, const HermitianOperator& b) {
    a -= b;
    return a;
  }
  friend HermitianOperator operator-(HermitianOperator a) {
    a.mat_ = -a.mat_;
    return a;
  }
  friend HermitianOperator operator*(double scale, HermitianOperator a) {
    a *= scale;
    return a;
  }
  friend HermitianOperator operator*(HermitianOperator a, double scale) {
    a *= scale;
    return a;
  }

 private:
  struct trusted_t {
    explicit trusted_t() = default;
  };
  HermitianOperator(trusted_t, ComplexMatrix m) : mat_(std::move(m)) {}

  void require_same_dim(const HermitianOperator& other) const {
    if (other.dim() != dim()) {
      throw validation_error("operator dimension mismatch");
    }
  }

  ComplexMatrix mat_;
};

/// Eigensystem of a Hermitian operator with near-degenerate eigenvalues
/// merged: `eigenvalues` lists all values ascending (with multiplicity),
/// while `cluster_values` / `projectors` give one representative value and
/// one orthogonal projector per cluster.  The projectors sum to the
/// identity, and sum_j cluster_values[j] * projectors[j] recovers the
/// operator up to clustering error.
struct Spectrum {
  std::vector<double> eigenvalues;
  std::vector<double> cluster_values;
  std::vector<HermitianOperator> projectors;
};

namespace detail {

/// Closed-form eigenvalue bounds of a 2x2 Hermitian matrix: the mean of the
/// diagonal plus/minus the radius hypot((a00-a11)/2, |a01|).
inline void eig2_values(const ComplexMatrix& m, double& lo, double& hi) {
  const double a00 = m(0, 0).real();
  const double a11 = m(1, 1).real();
  const double mean = 0.5 * (a00 + a11);
  const double half_gap = 0.5 * (a00 - a11);
  const double radius = std::hypot(half_gap, std::abs(m(0, 1)));
  lo = mean - radius;
  hi = mean + radius;
}

inline Eigen::SelfAdjointEigenSolver<ComplexMatrix> dense_eig(const ComplexMatrix& m,
                                                              bool vectors) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      m, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw error("eigendecomposition did not converge");
  }
  return solver;
}

inline double trace_norm_raw(const ComplexMatrix& m) {
  if (m.rows() == 1) return std::abs(m(0, 0).real());
  if (m.rows() == 2) {
    double lo = 0, hi = 0;
    eig2_values(m, lo, hi);
    return std::abs(lo) + std::abs(hi);
  }
  return dense_eig(m, /*vectors=*/false).eigenvalues().cwiseAbs().sum();
}

inline double min_eigenvalue_raw(const ComplexMatrix& m) {
  if (m.rows() == 1) return m(0, 0).real();
  if (m.rows() == 2) {
    double lo = 0, hi = 0;
    eig2_values(m, lo, hi);
    return lo;
  }
  return dense_eig(m, /*vectors=*/false).eigenvalues()(0);
}

inline HermitianOperator symmetrized(ComplexMatrix m) {
  ComplexMatrix s = 0.5 * (m + m.adjoint());
  return HermitianOperator::trusted(std::move(s));
}

}  // namespace detail

/// Full eigendecomposition with clustering: adjacent eigenvalues whose gap
/// is at most tol::cluster share a projector (chained, so a run of small
/// gaps forms one cluster).  d = 2 uses the closed-form two-level solution;
/// larger dimensions defer to a dense Hermitian solver.
inline Spectrum eig(const HermitianOperator& a) {
  const Eigen::Index d = a.dim();
  Spectrum s;
  if (d == 1) {
    const double v = a.matrix()(0, 0).real();
    s.eigenvalues = {v};
    s.cluster_values = {v};
    s.projectors = {HermitianOperator::identity(1)};
    return s;
  }
  if (d == 2) {
    double lo = 0, hi = 0;
    detail::eig2_values(a.matrix(), lo, hi);
    s.eigenvalues = {lo, hi};
    if (hi - lo <= tol::cluster) {
      s.cluster_values = {0.5 * (lo + hi)};
      s.projectors = {HermitianOperator::identity(2)};
      return s;
    }
    // Projector onto the upper eigenvector: (A - lo)/(hi - lo).  The smaller
    // diagonal entry is rewritten as |b|^2/(radius -+ half_gap) to avoid
    // cancellation when the off-diagonal part is small.
    const std::complex<double> b = a.matrix()(0, 1);
    const double half_gap = 0.5 * (a.matrix()(0, 0).real() - a.matrix()(1, 1).real());
    const double radius = 0.5 * (hi - lo);
    const double b2 = std::norm(b);
    ComplexMatrix p_hi(2, 2);
    if (half_gap >= 0) {
      p_hi(0, 0) = (half_gap + radius) / (2 * radius);
      p_hi(1, 1) = b2 / ((half_gap + radius) * 2 * radius);
    } else {
      p_hi(0, 0) = b2 / ((radius - half_gap) * 2 * radius);
      p_hi(1, 1) = (radius - half_gap) / (2 * radius);
    }
    p_hi(0, 1) = b / (2 * radius);
    p_hi(1, 0) = std::conj(b) / (2 * radius);
    ComplexMatrix p_lo = ComplexMatrix::Identity(2, 2) - p_hi;
    s.cluster_values = {lo, hi};
    s.projectors = {detail::symmetrized(std::move(p_lo)), detail::symmetrized(std::move(p_hi))};
    return s;
  }
  const auto solver = detail::dense_eig(a.matrix(), /*vectors=*/true);
  const auto& vals = solver.eigenvalues();
  s.eigenvalues.assign(vals.data(), vals.data() + d);
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= d; ++i) {
    if (i == d || vals(i) - vals(i - 1) > tol::cluster) {
      const Eigen::Index width = i - start;
      const auto block = solver.eigenvectors().middleCols(start, width);
      s.projectors.push_back(detail::symmetrized(block * block.adjoint()));
      s.cluster_values.push_back(vals.segment(start, width).mean());
      start = i;
    }
  }
  return s;
}

/// Operator absolute value |A| = sum_j |lambda_j| P_j.
inline HermitianOperator abs_op(const HermitianOperator& a) {
  const Spectrum s = eig(a);
  ComplexMatrix acc = ComplexMatrix::Zero(a.dim(), a.dim());
  for (std::size_t j = 0; j < s.projectors.size(); ++j) {
    acc += std::abs(s.cluster_values[j]) * s.projectors[j].matrix();
  }
  return detail::symmetrized(std::move(acc));
}

/// Trace norm ||A||_1 = sum_j |lambda_j| (closed form for d <= 2).
inline double trace_norm(const HermitianOperator& a) {
  return detail::trace_norm_raw(a.matrix());
}

/// Smallest eigenvalue (closed form for d <= 2).
inline double min_eigenvalue(const HermitianOperator& a) {
  return detail::min_eigenvalue_raw(a.matrix());
}

/// Loewner comparison A >= B up to tolerance: min eig(A - B) >= -tolerance.
inline bool psd_geq(const HermitianOperator& a, const HermitianOperator& b,
                    double tolerance = tol::psd) {
  if (a.dim() != b.dim()) {
    throw validation_error("operator dimension mismatch");
  }
  return detail::min_eigenvalue_raw(a.matrix() - b.matrix()) >= -tolerance;
}

/// Orthogonal projectors onto the strictly negative, (near-)zero and
/// strictly positive spectral subspaces of a Hermitian operator.  The three
/// projectors are mutually orthogonal and sum to the identity.
struct SignedProjectors {
  HermitianOperator negative;
  HermitianOperator zero;
  HermitianOperator positive;
};

inline SignedProjectors spectral_projectors(const HermitianOperator& a,
                                            double zero_tol = tol::zero) {
  const Spectrum s = eig(a);
  ComplexMatrix neg = ComplexMatrix::Zero(a.dim(), a.dim());
  ComplexMatrix zer = neg;
  ComplexMatrix pos = neg;
  for (std::size_t j = 0; j < s.projectors.size(); ++j) {
    const double v = s.cluster_values[j];
    if (v < -zero_tol) {
      neg += s.projectors[j].matrix();
    } else if (v > zero_tol) {
      pos += s.projectors[j].matrix();
    } else {
      zer += s.projectors[j].matrix();
    }
  }
  return {detail::symmetrized(std::move(neg)), detail::symmetrized(std::move(zer)),
          detail::symmetrized(std::move(pos))};
}

/// Pinching (dephasing) of X in the eigenbasis of A: sum_j P_j X P_j over
/// the spectral projectors of A.  Leaves X untouched when [A, X] = 0.
inline HermitianOperator pinch(const HermitianOperator& a, const HermitianOperator& x) {
  if (a.dim() != x.dim()) {
    throw validation_error("operator dimension mismatch");
  }
  const Spectrum s = eig(a);
  ComplexMatrix acc = ComplexMatrix::Zero(a.dim(), a.dim());
  for (const auto& p : s.projectors) {
    acc += p.matrix() * x.matrix() * p.matrix();
  }
  return detail::symmetrized(std::move(acc));
}

}  // namespace guesswork

#endif  // GUESSWORK_LINALG_HPP
