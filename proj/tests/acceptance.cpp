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

// Acceptance gate: one test case per acceptance criterion, each reported as
// a single [PASS]/[FAIL] line by the listener at the bottom.  Reference
// values are recomputed here from scratch (radicals, oracle reimplementation)
// rather than taken from the library under test.

#include <guesswork/guesswork.hpp>

#include "oracle.hpp"
#include "test_support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <vector>

using guesswork::Ensemble;
using guesswork::HermitianOperator;
using guesswork::Method;
using guesswork::Ordering;
using guesswork::Polyhedron;
using guesswork::SolverConfig;
using Catch::Matchers::WithinAbs;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

/// Shared corpus for criteria 5-7 and 10: one hundred seeded random uniform
/// qubit ensembles with 2 to 6 states, plus their exhaustive maximizers.
struct RandomCase {
  Ensemble ensemble;
  guesswork::SearchResult brute;
};

const std::vector<RandomCase>& random_corpus() {
  static const std::vector<RandomCase> corpus = [] {
    std::mt19937_64 rng(20260824ULL);
    std::uniform_int_distribution<int> size_dist(2, 6);
    std::vector<RandomCase> cases;
    cases.reserve(100);
    for (int i = 0; i < 100; ++i) {
      Ensemble e = test_support::random_uniform_qubit_ensemble(rng, size_dist(rng));
      auto best = guesswork::brute_force(e);
      cases.push_back({std::move(e), std::move(best)});
    }
    return cases;
  }();
  return corpus;
}

}  // namespace

TEST_CASE("criterion 1: brute force matches the small-solid closed forms",
          "[acceptance]") {
  const auto start = std::chrono::steady_clock::now();
  const double tetrahedron = 2.5 - 0.5 * std::sqrt(5.0 / 3.0);
  const double octahedron = 3.5 - std::sqrt(35.0) / 6.0;
  const double cube = 4.5 - 0.5 * std::sqrt(7.0);

  REQUIRE_THAT(guesswork::solve(guesswork::polyhedron_ensemble(Polyhedron::tetrahedron),
                                Method::brute)
                   .value,
               WithinAbs(tetrahedron, 1e-9));
  REQUIRE_THAT(guesswork::solve(guesswork::polyhedron_ensemble(Polyhedron::octahedron),
                                Method::brute)
                   .value,
               WithinAbs(octahedron, 1e-9));
  REQUIRE_THAT(guesswork::solve(guesswork::polyhedron_ensemble(Polyhedron::cube),
                                Method::brute)
                   .value,
               WithinAbs(cube, 1e-9));
  REQUIRE(seconds_since(start) < 10.0);
}

TEST_CASE("criterion 2: symmetric search certifies the icosahedron over 46080 orderings",
          "[acceptance]") {
  const auto start = std::chrono::steady_clock::now();
  const double reference =
      6.5 - std::sqrt(110.0 * (65.0 + 29.0 * std::sqrt(5.0))) / 60.0;
  const auto solution = guesswork::solve(
      guesswork::polyhedron_ensemble(Polyhedron::icosahedron), Method::symmetric);
  REQUIRE(solution.stats.orderings_evaluated == 46080);  // 12!!
  REQUIRE(solution.status == guesswork::SolutionStatus::certified);
  REQUIRE_THAT(solution.value, WithinAbs(reference, 1e-9));
  REQUIRE(seconds_since(start) < 60.0);
}

TEST_CASE("criterion 3: direction sweep against the 20-vertex registry entry",
          "[acceptance]") {
  // The sweep's certified optimum is ~= 7.174069, strictly below the registry
  // entry ~= 7.188787 (see the README note); the hidden long-running
  // exhaustive enumeration lands on the same value as the sweep.  This
  // criterion compares against the registry entry as stated and therefore
  // records the discrepancy as a failure.
  const auto start = std::chrono::steady_clock::now();
  const double reference =
      10.5 - std::sqrt(30.0 * (665.0 + 291.0 * std::sqrt(5.0))) / 60.0;
  const auto solution = guesswork::solve(
      guesswork::polyhedron_ensemble(Polyhedron::dodecahedron), Method::sweep);
  REQUIRE(seconds_since(start) < 60.0);
  INFO("computed certified value " << solution.value << " vs registry entry "
                                   << reference);
  REQUIRE_THAT(solution.value, WithinAbs(reference, 1e-9));
}

TEST_CASE("criterion 4: polygon closed forms match exhaustive search",
          "[acceptance]") {
  for (int k = 2; k <= 8; ++k) {
    const Ensemble polygon = guesswork::polygon_ensemble(k);
    const auto brute = guesswork::brute_force(polygon);
    CAPTURE(k);
    REQUIRE_THAT(guesswork::polygon_trace_norm(k), WithinAbs(brute.trace_norm, 1e-9));
    // Independent oracle: plain next_permutation over all k! orderings.
    REQUIRE_THAT(guesswork::polygon_trace_norm(k),
                 WithinAbs(oracle::max_trace_norm(test_support::state_matrices(polygon)),
                           1e-9));
  }
  // Antipodal pair: exactly one guess.
  REQUIRE(guesswork::solve(guesswork::polygon_ensemble(2)).value == 1.0);
  // Trine: 2 - sqrt(3)/3.
  REQUIRE_THAT(guesswork::solve(guesswork::polygon_ensemble(3)).value,
               WithinAbs(2.0 - std::sqrt(3.0) / 3.0, 1e-12));
}

TEST_CASE("criterion 5: certificates hold at exhaustive maximizers of random ensembles",
          "[acceptance]") {
  const auto& corpus = random_corpus();
  REQUIRE(corpus.size() == 100);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CAPTURE(i);
    REQUIRE(guesswork::check_condition(corpus[i].ensemble, corpus[i].brute.ordering,
                                       1e-9));
  }
}

TEST_CASE("criterion 6: rank marginals decrease at certified optima",
          "[acceptance]") {
  for (std::size_t i = 0; i < random_corpus().size(); ++i) {
    const auto& c = random_corpus()[i];
    CAPTURE(i);
    const guesswork::Measurement meas =
        guesswork::helstrom_measurement(c.ensemble, c.brute.ordering);
    const std::vector<double> q = guesswork::marginal(c.ensemble, meas);
    REQUIRE(guesswork::is_decreasing(q, 1e-10));
  }
}

TEST_CASE("criterion 7: certified measurements attain their certified values",
          "[acceptance]") {
  for (std::size_t i = 0; i < random_corpus().size(); ++i) {
    const auto& c = random_corpus()[i];
    CAPTURE(i);
    const guesswork::Measurement meas =
        guesswork::helstrom_measurement(c.ensemble, c.brute.ordering);

    // Attainment: expected guesses equal the certified value.
    const double certified =
        guesswork::certified_value(c.ensemble, c.brute.ordering);
    REQUIRE_THAT(guesswork::evaluate_measurement(c.ensemble, meas),
                 WithinAbs(certified, 1e-10));

    // POVM sanity: completeness and positivity.
    HermitianOperator total = HermitianOperator::zero(c.ensemble.dim());
    for (const auto& [n, op] : meas.elements()) {
      REQUIRE(guesswork::min_eigenvalue(op) >= -1e-10);
      total += op;
    }
    REQUIRE(total.max_abs_diff(HermitianOperator::identity(c.ensemble.dim())) <=
            1e-10);
  }
}

TEST_CASE("criterion 8: score operators flip sign under reversal", "[acceptance]") {
  std::mt19937_64 rng(88);
  int checked = 0;
  for (int batch = 0; batch < 250; ++batch) {
    const int d = 2 + static_cast<int>(rng() % 2);
    const int k = 2 + static_cast<int>(rng() % 4);
    const Ensemble e = test_support::random_general_ensemble(rng, d, k);
    for (int rep = 0; rep < 4; ++rep) {
      const Ordering n = test_support::random_ordering(rng, k);
      CAPTURE(batch, rep);
      REQUIRE(guesswork::reversal_antisymmetry_check(e, n, 1e-12));
      ++checked;
    }
  }
  REQUIRE(checked == 1000);
}

TEST_CASE("criterion 9: trace norms solve the dominating-operator program",
          "[acceptance]") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 2);
    const HermitianOperator a = test_support::random_hermitian(rng, d);
    const HermitianOperator abs_a = guesswork::abs_op(a);
    const double tn = guesswork::trace_norm(a);
    CAPTURE(trial, d);

    // Zero perturbation attains equality.
    REQUIRE_THAT(abs_a.trace(), WithinAbs(tn, 1e-12));
    REQUIRE(guesswork::psd_geq(abs_a, a));
    REQUIRE(guesswork::psd_geq(abs_a, -a));

    for (int p = 0; p < 100; ++p) {
      const HermitianOperator x = abs_a + test_support::random_psd(rng, d);
      REQUIRE(x.trace() >= tn - 1e-10);

      // Pinching in the eigenbasis of a preserves the trace and keeps the
      // point feasible.
      const HermitianOperator pinched = guesswork::pinch(a, x);
      REQUIRE_THAT(pinched.trace(), WithinAbs(x.trace(), 1e-12));
      REQUIRE(guesswork::psd_geq(pinched, a));
      REQUIRE(guesswork::psd_geq(pinched, -a));
    }
  }
}

TEST_CASE("criterion 10: direction sweep agrees with brute force", "[acceptance]") {
  for (int k = 2; k <= 8; ++k) {
    CAPTURE(k);
    const Ensemble polygon = guesswork::polygon_ensemble(k);
    REQUIRE_THAT(guesswork::direction_sweep(polygon).trace_norm,
                 WithinAbs(guesswork::brute_force(polygon).trace_norm, 1e-10));
  }
  for (Polyhedron p :
       {Polyhedron::tetrahedron, Polyhedron::octahedron, Polyhedron::cube}) {
    const Ensemble solid = guesswork::polyhedron_ensemble(p);
    REQUIRE_THAT(guesswork::direction_sweep(solid).trace_norm,
                 WithinAbs(guesswork::brute_force(solid).trace_norm, 1e-10));
  }
  for (std::size_t i = 0; i < random_corpus().size(); ++i) {
    const auto& c = random_corpus()[i];
    CAPTURE(i);
    REQUIRE_THAT(guesswork::direction_sweep(c.ensemble).trace_norm,
                 WithinAbs(c.brute.trace_norm, 1e-10));
  }
}

TEST_CASE("criterion 11: identical states give flat guesswork", "[acceptance]") {
  const Ensemble copies = guesswork::uniform_qubit_ensemble(
      {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}});

  // Every score operator vanishes identically.
  const Ordering identity_order({0, 1, 2, 3});
  REQUIRE(guesswork::score_operator(copies, identity_order).matrix().cwiseAbs().maxCoeff() ==
          0.0);
  REQUIRE(guesswork::score_operator(copies, Ordering({2, 0, 3, 1})).matrix().cwiseAbs().maxCoeff() ==
          0.0);

  const auto solution = guesswork::solve(copies);
  REQUIRE(solution.status == guesswork::SolutionStatus::certified);
  REQUIRE(solution.value == 2.5);  // (|M| + 1)/2 exactly
  REQUIRE(solution.trace_norm == 0.0);

  // The kernel split puts 1/2 of the identity on the ordering and its
  // reversal.
  const HermitianOperator half = 0.5 * HermitianOperator::identity(2);
  REQUIRE(solution.measurement.elements().size() == 2);
  for (const auto& [n, op] : solution.measurement.elements()) {
    REQUIRE(op.max_abs_diff(half) == 0.0);
  }
  for (double q : solution.rank_marginal) {
    REQUIRE(q == 0.25);
  }
}

TEST_CASE("long-running: exhaustive symmetric search of the 20-vertex solid",
          "[.][long]") {
  // 20!! = 3715891200 orderings; expect minutes to hours depending on the
  // thread count.  Run explicitly with:
  //   ./build/tests/acceptance_tests "[long]"
  const Ensemble dodecahedron =
      guesswork::polyhedron_ensemble(Polyhedron::dodecahedron);
  const auto pairing = guesswork::is_centrally_symmetric(dodecahedron);
  REQUIRE(pairing.has_value());
  SolverConfig config;
  config.long_running = true;
  const auto exhaustive = guesswork::symmetric_search(dodecahedron, *pairing, config);
  REQUIRE(exhaustive.orderings_evaluated == 3715891200ULL);
  const auto swept = guesswork::direction_sweep(dodecahedron);
  REQUIRE_THAT(exhaustive.trace_norm, WithinAbs(swept.trace_norm, 1e-9));
}

namespace {

/// Prints one [PASS]/[FAIL] line per criterion as the binary runs.
class CriterionReporter : public Catch::EventListenerBase {
 public:
  using Catch::EventListenerBase::EventListenerBase;

  void testCaseEnded(const Catch::TestCaseStats& stats) override {
    const bool passed = stats.totals.assertions.failed == 0 &&
                        stats.totals.testCases.failed == 0;
    std::cout << (passed ? "[PASS] " : "[FAIL] ") << stats.testInfo->name << '\n';
  }
};

}  // namespace

CATCH_REGISTER_LISTENER(CriterionReporter)
