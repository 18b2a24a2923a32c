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

#ifndef GUESSWORK_FUNCTIONALS_HPP
#define GUESSWORK_FUNCTIONALS_HPP

#include <guesswork/ensemble.hpp>
#include <guesswork/linalg.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace guesswork {

/// Exhaustive |M|! enumerations refuse to run past this message count
/// unless the caller raises the cap.
inline constexpr int default_enumeration_cap = 10;

/// Score operator E(n) = sum_t (2t - |M| - 1) M(n(t)).  The integer
/// coefficients are antisymmetric under rank reversal, so E(reverse(n)) =
/// -E(n) holds exactly.
inline HermitianOperator score_operator(const Ensemble& ensemble, const Ordering& n) {
  const int k = ensemble.size();
  if (n.size() != k) {
    throw validation_error("ordering does not rank this ensemble's message set");
  }
  ComplexMatrix acc = ComplexMatrix::Zero(ensemble.dim(), ensemble.dim());
  for (int t = 1; t <= k; ++t) {
    const double c = static_cast<double>(2 * t - k - 1);
    acc += c * ensemble.op(n.at_rank(t)).matrix();
  }
  return detail::symmetrized(std::move(acc));
}

/// Sanity check of the reversal antisymmetry E(reverse(n)) = -E(n).
inline bool reversal_antisymmetry_check(const Ensemble& ensemble, const Ordering& n,
                                        double tolerance = 1e-12) {
  const HermitianOperator e = score_operator(ensemble, n);
  const HermitianOperator e_rev = score_operator(ensemble, n.reversed());
  return (e_rev.matrix() + e.matrix()).cwiseAbs().maxCoeff() <= tolerance;
}

/// Two-outcome measurement attached to a candidate ordering: the outcome n*
/// projects onto the negative part of E(n*), the reversed outcome onto the
/// positive part, and the kernel is split evenly between them.
inline Measurement helstrom_measurement(const Ensemble& ensemble, const Ordering& n_star) {
  const HermitianOperator e = score_operator(ensemble, n_star);
  const Ordering rev = n_star.reversed();
  if (rev == n_star) {
    // Only |M| = 1 reaches here (reversal moves rank 1 whenever |M| > 1);
    // the unique single-outcome POVM is the identity.
    return Measurement({{n_star, HermitianOperator::identity(ensemble.dim())}});
  }
  const SignedProjectors sp = spectral_projectors(e);
  const HermitianOperator half_kernel = 0.5 * sp.zero;
  return Measurement(
      {{n_star, sp.negative + half_kernel}, {rev, sp.positive + half_kernel}});
}

namespace detail {

inline void require_compatible(const Ensemble& ensemble, const Measurement& meas) {
  if (meas.dim() != ensemble.dim() || meas.message_count() != ensemble.size()) {
    throw validation_error("measurement does not match the ensemble");
  }
}

/// Runs fn(E(n)) for every ordering n of the ensemble's messages (all |M|!
/// of them, in lexicographic order).  fn returns false to stop early.
/// Throws cap_exceeded when |M| exceeds cap.
template <class Fn>
void for_each_score_operator(const Ensemble& ensemble, int cap, std::string_view what,
                             Fn&& fn) {
  const int k = ensemble.size();
  if (k > cap) {
    std::ostringstream os;
    os << what << " enumerates all |M|! orderings; |M| = " << k
       << " exceeds the enumeration cap " << cap;
    throw cap_exceeded(os.str());
  }
  std::vector<double> coeff(static_cast<std::size_t>(k) + 1);
  for (int t = 1; t <= k; ++t) {
    coeff[static_cast<std::size_t>(t)] = static_cast<double>(2 * t - k - 1);
  }
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  const Eigen::Index d = ensemble.dim();
  ComplexMatrix e(d, d);
  do {
    e.setZero();
    for (int t = 1; t <= k; ++t) {
      e += coeff[static_cast<std::size_t>(t)] *
           ensemble.op(perm[static_cast<std::size_t>(t - 1)]).matrix();
    }
    if (!fn(std::as_const(e))) return;
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace detail

/// Optimality certificate: |E(n*)| >= E(n) in the Loewner order for every
/// ordering n (up to tolerance).  Exhaustive over all |M|! orderings, hence
/// capped.
inline bool check_condition(const Ensemble& ensemble, const Ordering& n_star,
                            double tolerance = 1e-9,
                            int cap = default_enumeration_cap) {
  const HermitianOperator abs_e = abs_op(score_operator(ensemble, n_star));
  bool holds = true;
  detail::for_each_score_operator(
      ensemble, cap, "the optimality certificate", [&](const ComplexMatrix& e) {
        if (detail::min_eigenvalue_raw(abs_e.matrix() - e) < -tolerance) {
          holds = false;
          return false;
        }
        return true;
      });
  return holds;
}

/// Certified minimum guesswork (|M| + 1)/2 - ||E(n*)||_1 / 2.  Only valid
/// when check_condition(ensemble, n_star) holds.
inline double certified_value(const Ensemble& ensemble, const Ordering& n_star) {
  const double k = static_cast<double>(ensemble.size());
  return 0.5 * (k + 1.0) - 0.5 * trace_norm(score_operator(ensemble, n_star));
}

/// Lower bound from the constant dual operator lambda_min * identity, where
/// lambda_min is the smallest eigenvalue over every score operator:
/// G >= (|M| + 1)/2 + d * lambda_min / 2, clamped to the trivial bound 1.
inline double dual_lower_bound(const Ensemble& ensemble,
                               int cap = default_enumeration_cap) {
  double lambda = std::numeric_limits<double>::infinity();
  detail::for_each_score_operator(
      ensemble, cap, "the dual bound", [&](const ComplexMatrix& e) {
        lambda = std::min(lambda, detail::min_eigenvalue_raw(e));
        return true;
      });
  const double bound = 0.5 * (ensemble.size() + 1.0) +
                       0.5 * static_cast<double>(ensemble.dim()) * lambda;
  return std::max(1.0, bound);
}

/// Joint probability that the measurement announces ordering n and the true
/// message sits at the given (1-based) rank of n.  Zero when n is not an
/// outcome of the measurement.
inline double joint_probability(const Ensemble& ensemble, const Measurement& meas,
                                const Ordering& n, int rank) {
  detail::require_compatible(ensemble, meas);
  if (n.size() != ensemble.size()) {
    throw validation_error("ordering does not rank this ensemble's message set");
  }
  const int message = n.at_rank(rank);
  const HermitianOperator* element = meas.element(n);
  if (element == nullptr) return 0.0;
  return (ensemble.op(message).matrix() * element->matrix()).trace().real();
}

/// Distribution of the number of guesses: q(t) = sum_n Tr[M(n(t)) N(n)].
/// Floating-point negatives in [-tol::clamp, 0) are rounded up to zero.
inline std::vector<double> marginal(const Ensemble& ensemble, const Measurement& meas) {
  detail::require_compatible(ensemble, meas);
  const int k = ensemble.size();
  std::vector<double> q(static_cast<std::size_t>(k), 0.0);
  for (const auto& [n, element] : meas.elements()) {
    for (int t = 1; t <= k; ++t) {
      q[static_cast<std::size_t>(t - 1)] +=
          (ensemble.op(n.at_rank(t)).matrix() * element.matrix()).trace().real();
    }
  }
  for (double& v : q) {
    if (v < 0.0 && v >= -tol::clamp) v = 0.0;
  }
  return q;
}

/// Mean of the guess count under a rank distribution; rejects distributions
/// that are negative or not normalized.
inline double expected_guesses(std::span<const double> q) {
  if (q.empty()) {
    throw validation_error("rank distribution must have at least one entry");
  }
  double sum = 0;
  for (double v : q) {
    if (v < 0) {
      throw validation_error("rank distribution has a negative entry");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol::normalization) {
    std::ostringstream os;
    os << "rank distribution sums to " << sum << " (expected 1)";
    throw validation_error(os.str());
  }
  double g = 0;
  for (std::size_t t = 0; t < q.size(); ++t) {
    g += static_cast<double>(t + 1) * q[t];
  }
  return g;
}

/// Expected number of guesses achieved by a measurement on an ensemble.
inline double evaluate_measurement(const Ensemble& ensemble, const Measurement& meas) {
  const std::vector<double> q = marginal(ensemble, meas);
  return expected_guesses(q);
}

/// Weakly decreasing within tolerance.
inline bool is_decreasing(std::span<const double> q, double tolerance = 1e-10) {
  for (std::size_t t = 1; t < q.size(); ++t) {
    if (q[t] > q[t - 1] + tolerance) return false;
  }
  return true;
}

enum class SolutionStatus {
  /// The reported value is the exact minimum (certificate verified).
  certified,
  /// The certificate failed or was not checkable; only bounds are reported.
  bounds_only,
};

inline std::string_view to_string(SolutionStatus s) {
  return s == SolutionStatus::certified ? "Certified" : "BoundsOnly";
}

struct SearchStats {
  std::uint64_t orderings_evaluated = 0;
  std::string method;
  double elapsed_ms = 0;
};

/// Everything the solver knows about an instance: the value (exact when
/// certified, else the best upper bound), the ordering and measurement that
/// attain the upper bound, bracketing bounds, and the rank distribution of
/// the constructed measurement.
struct GuessworkSolution {
  double value = 0;
  SolutionStatus status = SolutionStatus::bounds_only;
  Ordering ordering;
  Measurement measurement;
  double lower_bound = 0;
  double upper_bound = 0;
  double trace_norm = 0;
  std::vector<double> rank_marginal;
  bool marginal_decreasing = false;
  SearchStats stats;
};

}  // namespace guesswork

#endif  // GUESSWORK_FUNCTIONALS_HPP
