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

#ifndef GUESSWORK_SOLVER_HPP
#define GUESSWORK_SOLVER_HPP

#include <guesswork/ensemble.hpp>
#include <guesswork/functionals.hpp>
#include <guesswork/linalg.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

namespace guesswork {

enum class Method {
  automatic,  ///< sweep for uniform two-level ensembles, brute force otherwise
  brute,      ///< exhaustive |M|!/2 search (reversal pairs deduplicated)
  symmetric,  ///< |M|!! search over centrally symmetric orderings
  sweep,      ///< rearrangement fixed point over Bloch directions
};

inline std::optional<Method> parse_method(std::string_view name) {
  if (name == "auto") return Method::automatic;
  if (name == "brute") return Method::brute;
  if (name == "symmetric") return Method::symmetric;
  if (name == "sweep") return Method::sweep;
  return std::nullopt;
}

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::automatic: return "auto";
    case Method::brute: return "brute";
    case Method::symmetric: return "symmetric";
    case Method::sweep: return "sweep";
  }
  throw validation_error("unknown method");
}

/// Double-factorial searches larger than this refuse to run unless the
/// caller opts in with SolverConfig::long_running.
inline constexpr std::uint64_t symmetric_auto_budget = 50'000'000;

struct SolverConfig {
  /// Exhaustive |M|! enumerations (brute force, certificate, dual bound)
  /// refuse to run past this message count.
  int enumeration_cap = default_enumeration_cap;
  /// Direction-sweep restarts; 0 picks max(1000, 50 |M|).
  int sweep_starts = 0;
  /// Tolerance for the optimality certificate.
  double tolerance = 1e-9;
  /// Worker threads; 0 consults GUESSWORK_THREADS, then the hardware.
  int threads = 0;
  /// Allow double-factorial searches past symmetric_auto_budget.
  bool long_running = false;
};

/// Outcome of a search: the best ordering found, the trace norm of its
/// score operator, and how many orderings were scored along the way.
struct SearchResult {
  Ordering ordering;
  double trace_norm = 0;
  std::uint64_t orderings_evaluated = 0;
};

namespace detail {

/// Running best of a search unit.  `ordering` stays empty until the unit
/// scores its first candidate, so merged units that never ran keep out of
/// the reduction.
struct Candidate {
  double trace_norm = -1.0;
  std::vector<int> ordering;
  std::uint64_t evaluated = 0;
};

/// Larger trace norm wins; values within tol::tie count as tied and
/// resolve toward the lexicographically smaller ordering.
inline bool candidate_improves(double tn, const std::vector<int>& ord,
                               const Candidate& best) {
  if (best.ordering.empty()) return true;
  if (tn > best.trace_norm + tol::tie) return true;
  if (tn < best.trace_norm - tol::tie) return false;
  return ord < best.ordering;
}

inline void absorb(Candidate& best, const Candidate& unit) {
  best.evaluated += unit.evaluated;
  if (!unit.ordering.empty() &&
      candidate_improves(unit.trace_norm, unit.ordering, best)) {
    best.trace_norm = unit.trace_norm;
    best.ordering = unit.ordering;
  }
}

inline int resolve_threads(const SolverConfig& config) {
  if (config.threads > 0) return config.threads;
  if (const char* env = std::getenv("GUESSWORK_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs fn(unit) for unit = 0..count-1 and returns the per-unit results in
/// unit order.  Work is dealt round-robin over the worker threads, and the
/// unit list never depends on the thread count, so folding the returned
/// vector in order gives the same reduction for any thread setting.
template <class Fn>
std::vector<Candidate> run_units(std::size_t count, int threads, Fn&& fn) {
  std::vector<Candidate> results(count);
  const int workers =
      std::max(1, std::min(threads, static_cast<int>(count)));
  if (workers == 1) {
    for (std::size_t u = 0; u < count; ++u) results[u] = fn(u);
    return results;
  }
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int tid = 0; tid < workers; ++tid) {
    pool.emplace_back([&, tid] {
      try {
        for (std::size_t u = static_cast<std::size_t>(tid); u < count;
             u += static_cast<std::size_t>(workers)) {
          results[u] = fn(u);
        }
      } catch (...) {
        failures[static_cast<std::size_t>(tid)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return results;
}

inline std::vector<double> rank_coefficients(int k) {
  std::vector<double> coeff(static_cast<std::size_t>(k) + 1, 0.0);
  for (int t = 1; t <= k; ++t) {
    coeff[static_cast<std::size_t>(t)] = static_cast<double>(2 * t - k - 1);
  }
  return coeff;
}

}  // namespace detail

/// Exhaustive search over all |M|!/2 orderings (one representative per
/// reversal pair: the one whose first message is smaller than its last).
/// Ties in the trace norm resolve to the lexicographically smallest
/// ordering, independent of the thread count.
inline SearchResult brute_force(const Ensemble& ensemble,
                                const SolverConfig& config = {}) {
  const int k = ensemble.size();
  if (k > config.enumeration_cap) {
    std::ostringstream os;
    os << "brute force enumerates |M|!/2 orderings; |M| = " << k
       << " exceeds the enumeration cap " << config.enumeration_cap;
    throw cap_exceeded(os.str());
  }
  if (k == 1) {
    return {Ordering({0}), 0.0, 1};
  }
  const std::vector<double> coeff = detail::rank_coefficients(k);
  const Eigen::Index d = ensemble.dim();

  // One unit per choice of first message; each unit permutes the rest in
  // lexicographic order.
  auto unit_task = [&](std::size_t u) -> detail::Candidate {
    const int first = static_cast<int>(u);
    detail::Candidate best;
    std::vector<int> rest;
    rest.reserve(static_cast<std::size_t>(k - 1));
    for (int m = 0; m < k; ++m) {
      if (m != first) rest.push_back(m);
    }
    const ComplexMatrix base = coeff[1] * ensemble.op(first).matrix();
    ComplexMatrix e(d, d);
    std::vector<int> full(static_cast<std::size_t>(k));
    auto materialize = [&] {
      full[0] = first;
      std::copy(rest.begin(), rest.end(), full.begin() + 1);
    };
    do {
      if (rest.back() < first) continue;  // reversal twin already covered
      e = base;
      for (int t = 2; t <= k; ++t) {
        e += coeff[static_cast<std::size_t>(t)] *
             ensemble.op(rest[static_cast<std::size_t>(t - 2)]).matrix();
      }
      const double tn = detail::trace_norm_raw(e);
      ++best.evaluated;
      if (best.ordering.empty() || tn > best.trace_norm + tol::tie) {
        best.trace_norm = tn;
        materialize();
        best.ordering = full;
      } else if (tn >= best.trace_norm - tol::tie) {
        materialize();
        if (full < best.ordering) {
          best.trace_norm = tn;
          best.ordering = full;
        }
      }
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
  };

  const auto units = detail::run_units(static_cast<std::size_t>(k),
                                       detail::resolve_threads(config), unit_task);
  detail::Candidate best;
  for (const auto& unit : units) detail::absorb(best, unit);
  return {Ordering(best.ordering), best.trace_norm, best.evaluated};
}

/// Search restricted to centrally symmetric orderings: rank t and rank
/// |M|+1-t always hold an antipodal pair, which shrinks the space to
/// |M|!! = (|M|/2)! 2^(|M|/2) orderings.  `pairing` maps each message to
/// its partner with M(m) + M(partner) = 1/|M| (see is_centrally_symmetric)
/// and is revalidated here.
inline SearchResult symmetric_search(const Ensemble& ensemble,
                                     const std::vector<int>& pairing,
                                     const SolverConfig& config = {}) {
  const int k = ensemble.size();
  if (k < 2 || k % 2 != 0) {
    throw validation_error("symmetric search needs an even number of messages");
  }
  if (pairing.size() != static_cast<std::size_t>(k)) {
    throw validation_error("pairing must assign a partner to every message");
  }
  for (int m = 0; m < k; ++m) {
    const int p = pairing[static_cast<std::size_t>(m)];
    if (p < 0 || p >= k || p == m || pairing[static_cast<std::size_t>(p)] != m) {
      throw validation_error("pairing is not a fixed-point-free involution");
    }
  }
  const HermitianOperator target =
      (1.0 / k) * HermitianOperator::identity(ensemble.dim());
  for (int m = 0; m < k; ++m) {
    const int p = pairing[static_cast<std::size_t>(m)];
    if ((ensemble.op(m) + ensemble.op(p)).max_abs_diff(target) > tol::pairing) {
      throw validation_error(
          "pairing violates M(m) + M(partner) = 1/|M| for message " +
          ensemble.label(m));
    }
  }
  // Paired operators summing to 1/|M| force total trace d/2 = 1, so a
  // validated pairing only exists in dimension two.
  if (ensemble.dim() != 2) {
    throw validation_error("centrally symmetric ensembles are two-dimensional");
  }

  const int h = k / 2;
  std::uint64_t total = 1;
  for (int t = 1; t <= h; ++t) total *= static_cast<std::uint64_t>(t);
  total <<= h;
  if (total > symmetric_auto_budget && !config.long_running) {
    std::ostringstream os;
    os << "symmetric search over " << total
       << " orderings exceeds the safety budget " << symmetric_auto_budget
       << "; opt in with long_running";
    throw cap_exceeded(os.str());
  }

  std::vector<std::array<int, 2>> pairs;
  pairs.reserve(static_cast<std::size_t>(h));
  for (int m = 0; m < k; ++m) {
    if (m < pairing[static_cast<std::size_t>(m)]) {
      pairs.push_back({m, pairing[static_cast<std::size_t>(m)]});
    }
  }
  // Difference operator of each pair, in two-level scalar form.
  struct Delta {
    double d00 = 0;
    double d11 = 0;
    std::complex<double> d01;
  };
  std::vector<Delta> deltas(static_cast<std::size_t>(h));
  for (int p = 0; p < h; ++p) {
    const ComplexMatrix diff = ensemble.op(pairs[static_cast<std::size_t>(p)][0]).matrix() -
                               ensemble.op(pairs[static_cast<std::size_t>(p)][1]).matrix();
    deltas[static_cast<std::size_t>(p)] = {diff(0, 0).real(), diff(1, 1).real(),
                                           diff(0, 1)};
  }
  const std::vector<double> coeff = detail::rank_coefficients(k);

  // Ranks t and k+1-t carry opposite coefficients, so a pair placed at slot
  // t contributes c_t (M(front) - M(back)) = +-c_t Delta.  Enumerate all
  // pair-to-slot assignments with both orientations; units fix the first
  // slot's pair and orientation.
  auto unit_task = [&](std::size_t u) -> detail::Candidate {
    const int first_pair = static_cast<int>(u) / 2;
    const int first_sign = (u % 2 == 0) ? 1 : -1;
    detail::Candidate best;
    std::vector<char> used(static_cast<std::size_t>(h), 0);
    std::vector<int> slot_pair(static_cast<std::size_t>(h), -1);
    std::vector<int> slot_sign(static_cast<std::size_t>(h), 0);
    std::vector<int> full(static_cast<std::size_t>(k));
    auto materialize = [&] {
      for (int t = 0; t < h; ++t) {
        const auto& pr = pairs[static_cast<std::size_t>(slot_pair[static_cast<std::size_t>(t)])];
        const int front = slot_sign[static_cast<std::size_t>(t)] > 0 ? pr[0] : pr[1];
        const int back = slot_sign[static_cast<std::size_t>(t)] > 0 ? pr[1] : pr[0];
        full[static_cast<std::size_t>(t)] = front;
        full[static_cast<std::size_t>(k - 1 - t)] = back;
      }
    };
    auto leaf = [&](double e00, double e11, std::complex<double> e01) {
      const double mean = 0.5 * (e00 + e11);
      const double radius = std::hypot(0.5 * (e00 - e11), std::abs(e01));
      const double tn = 2.0 * std::max(std::abs(mean), radius);
      ++best.evaluated;
      if (best.ordering.empty() || tn > best.trace_norm + tol::tie) {
        best.trace_norm = tn;
        materialize();
        best.ordering = full;
      } else if (tn >= best.trace_norm - tol::tie) {
        materialize();
        if (full < best.ordering) {
          best.trace_norm = tn;
          best.ordering = full;
        }
      }
    };
    auto walk = [&](auto&& self, int depth, double e00, double e11,
                    std::complex<double> e01) -> void {
      if (depth == h) {
        leaf(e00, e11, e01);
        return;
      }
      const double c = coeff[static_cast<std::size_t>(depth) + 1];
      for (int p = 0; p < h; ++p) {
        if (used[static_cast<std::size_t>(p)]) continue;
        used[static_cast<std::size_t>(p)] = 1;
        const Delta& dl = deltas[static_cast<std::size_t>(p)];
        slot_pair[static_cast<std::size_t>(depth)] = p;
        slot_sign[static_cast<std::size_t>(depth)] = 1;
        self(self, depth + 1, e00 + c * dl.d00, e11 + c * dl.d11, e01 + c * dl.d01);
        slot_sign[static_cast<std::size_t>(depth)] = -1;
        self(self, depth + 1, e00 - c * dl.d00, e11 - c * dl.d11, e01 - c * dl.d01);
        used[static_cast<std::size_t>(p)] = 0;
      }
    };
    used[static_cast<std::size_t>(first_pair)] = 1;
    slot_pair[0] = first_pair;
    slot_sign[0] = first_sign;
    const Delta& dl = deltas[static_cast<std::size_t>(first_pair)];
    const double c = coeff[1] * first_sign;
    walk(walk, 1, c * dl.d00, c * dl.d11, c * dl.d01);
    return best;
  };

  const auto units = detail::run_units(static_cast<std::size_t>(2 * h),
                                       detail::resolve_threads(config), unit_task);
  detail::Candidate best;
  for (const auto& unit : units) detail::absorb(best, unit);
  return {Ordering(best.ordering), best.trace_norm, best.evaluated};
}

/// Fixed-point iteration for uniform two-level ensembles: sort messages by
/// their Bloch component along a direction (rearrangement step), point the
/// direction at the resulting coefficient sum W, repeat.  Multi-start over
/// a Fibonacci sphere grid plus each state's own direction.  ||E(n)||_1 =
/// |W|/|M| for every ordering produced this way.
inline SearchResult direction_sweep(const Ensemble& ensemble,
                                    const SolverConfig& config = {}) {
  if (ensemble.dim() != 2) {
    throw validation_error("direction sweep requires a two-level ensemble");
  }
  if (!ensemble.has_uniform_traces()) {
    throw validation_error(
        "direction sweep requires uniform state traces (equal prior weights)");
  }
  const int k = ensemble.size();
  const std::vector<BlochVector> bloch = ensemble.bloch_vectors();
  const std::vector<double> coeff = detail::rank_coefficients(k);
  const int starts = config.sweep_starts > 0 ? config.sweep_starts
                                             : std::max(1000, 50 * k);

  std::vector<BlochVector> seeds;
  seeds.reserve(static_cast<std::size_t>(starts) + bloch.size());
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < starts; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / starts;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double theta = golden_angle * i;
    seeds.push_back({rho * std::cos(theta), rho * std::sin(theta), z});
  }
  for (const auto& r : bloch) {
    const double norm = r.norm();
    if (norm > 1e-12) seeds.push_back({r.x / norm, r.y / norm, r.z / norm});
  }

  constexpr int max_iterations = 200;
  auto unit_task = [&](std::size_t u) -> detail::Candidate {
    detail::Candidate best;
    BlochVector dir = seeds[u];
    std::vector<std::pair<double, int>> keyed(static_cast<std::size_t>(k));
    std::vector<int> order(static_cast<std::size_t>(k));
    std::vector<int> prev;
    for (int iter = 0; iter < max_iterations; ++iter) {
      for (int m = 0; m < k; ++m) {
        keyed[static_cast<std::size_t>(m)] = {bloch[static_cast<std::size_t>(m)].dot(dir), m};
      }
      // Ascending keys meet ascending coefficients (rearrangement); exact
      // index tie-break keeps the iteration deterministic.
      std::sort(keyed.begin(), keyed.end());
      for (int t = 0; t < k; ++t) {
        order[static_cast<std::size_t>(t)] = keyed[static_cast<std::size_t>(t)].second;
      }
      if (order == prev) break;
      prev = order;
      BlochVector w{0, 0, 0};
      for (int t = 1; t <= k; ++t) {
        const auto& r = bloch[static_cast<std::size_t>(order[static_cast<std::size_t>(t - 1)])];
        const double c = coeff[static_cast<std::size_t>(t)];
        w.x += c * r.x;
        w.y += c * r.y;
        w.z += c * r.z;
      }
      const double wn = w.norm();
      const double tn = wn / k;
      ++best.evaluated;
      if (best.ordering.empty() || tn > best.trace_norm + tol::tie) {
        best.trace_norm = tn;
        best.ordering = order;
      } else if (tn >= best.trace_norm - tol::tie && order < best.ordering) {
        best.trace_norm = tn;
        best.ordering = order;
      }
      if (wn <= 1e-14) break;
      dir = {w.x / wn, w.y / wn, w.z / wn};
    }
    return best;
  };

  const auto units = detail::run_units(seeds.size(),
                                       detail::resolve_threads(config), unit_task);
  detail::Candidate best;
  for (const auto& unit : units) detail::absorb(best, unit);
  return {Ordering(best.ordering), best.trace_norm, best.evaluated};
}

namespace detail {

inline void merge_results(SearchResult& base, const SearchResult& other) {
  base.orderings_evaluated += other.orderings_evaluated;
  Candidate current{base.trace_norm, base.ordering.messages(), 0};
  if (candidate_improves(other.trace_norm, other.ordering.messages(), current)) {
    base.ordering = other.ordering;
    base.trace_norm = other.trace_norm;
  }
}

/// Exhaustive confirmation passes in Method::automatic stay below this
/// double-factorial size.
inline constexpr std::uint64_t auto_confirm_budget = 1'000'000;

inline std::uint64_t double_factorial_size(int k) {
  std::uint64_t total = 1;
  for (int t = 1; t <= k / 2; ++t) total *= static_cast<std::uint64_t>(t);
  return total << (k / 2);
}

}  // namespace detail

/// End-to-end solver: search for the trace-norm-maximizing ordering, try to
/// certify it, and package the value, measurement, bounds and diagnostics.
///
/// Certification: for |M| within the enumeration cap the certificate is
/// verified by exhaustion.  Past the cap a uniform two-level ensemble is
/// certified on the strength of the total-order structure of its score
/// operators; anything else is reported as bounds only, with the dual lower
/// bound (or the trivial bound 1) and the expected guesses of the
/// constructed measurement as the upper bound.
inline GuessworkSolution solve(const Ensemble& ensemble,
                               Method method = Method::automatic,
                               const SolverConfig& config = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const int k = ensemble.size();
  const bool qubit_uniform = ensemble.dim() == 2 && ensemble.has_uniform_traces();

  std::optional<SearchResult> search;
  std::string method_name;
  switch (method) {
    case Method::brute:
      search = brute_force(ensemble, config);
      method_name = "brute";
      break;
    case Method::symmetric: {
      const auto pairing = is_centrally_symmetric(ensemble);
      if (!pairing) {
        throw validation_error(
            "ensemble is not centrally symmetric (no antipodal pairing exists)");
      }
      search = symmetric_search(ensemble, *pairing, config);
      method_name = "symmetric";
      break;
    }
    case Method::sweep:
      search = direction_sweep(ensemble, config);
      method_name = "sweep";
      break;
    case Method::automatic: {
      if (qubit_uniform) {
        search = direction_sweep(ensemble, config);
        method_name = "sweep";
        // Confirm with an exhaustive pass when one is affordable.
        const auto pairing = is_centrally_symmetric(ensemble);
        if (pairing &&
            detail::double_factorial_size(k) <= detail::auto_confirm_budget) {
          detail::merge_results(*search, symmetric_search(ensemble, *pairing, config));
          method_name += "+symmetric";
        } else if (k <= config.enumeration_cap) {
          detail::merge_results(*search, brute_force(ensemble, config));
          method_name += "+brute";
        }
      } else {
        if (k > config.enumeration_cap) {
          std::ostringstream os;
          os << "no sub-exhaustive search applies to this ensemble and |M| = "
             << k << " exceeds the enumeration cap " << config.enumeration_cap;
          throw cap_exceeded(os.str());
        }
        search = brute_force(ensemble, config);
        method_name = "brute";
      }
      break;
    }
  }

  bool certified = false;
  if (k <= config.enumeration_cap) {
    certified = check_condition(ensemble, search->ordering, config.tolerance,
                                config.enumeration_cap);
  } else {
    certified = qubit_uniform;
  }

  Measurement measurement = helstrom_measurement(ensemble, search->ordering);
  std::vector<double> q = marginal(ensemble, measurement);
  const bool decreasing = is_decreasing(q);
  // Report the canonical matrix-route trace norm so the value is bitwise
  // reproducible across search methods.
  const double tn = trace_norm(score_operator(ensemble, search->ordering));

  double value = 0;
  double lower = 0;
  double upper = 0;
  if (certified) {
    value = certified_value(ensemble, search->ordering);
    lower = value;
    upper = value;
  } else {
    upper = evaluate_measurement(ensemble, measurement);
    lower = k <= config.enumeration_cap ? dual_lower_bound(ensemble, config.enumeration_cap)
                                        : 1.0;
    value = upper;
  }

  const auto t1 = std::chrono::steady_clock::now();
  SearchStats stats;
  stats.orderings_evaluated = search->orderings_evaluated;
  stats.method = std::move(method_name);
  stats.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

  return GuessworkSolution{value,
                           certified ? SolutionStatus::certified : SolutionStatus::bounds_only,
                           std::move(search->ordering),
                           std::move(measurement),
                           lower,
                           upper,
                           tn,
                           std::move(q),
                           decreasing,
                           std::move(stats)};
}

}  // namespace guesswork

#endif  // GUESSWORK_SOLVER_HPP
