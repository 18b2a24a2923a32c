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

#include <guesswork/closed_form.hpp>

#include "oracle.hpp"
#include "test_support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using guesswork::ComplexMatrix;
using guesswork::Ensemble;
using guesswork::HermitianOperator;
using guesswork::Ordering;
using guesswork::Polyhedron;
using guesswork::validation_error;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

TEST_CASE("polygon trace norms have their closed forms", "[closed_form]") {
  SECTION("two antipodal states distinguish perfectly") {
    REQUIRE(guesswork::polygon_trace_norm(2) == 1.0);
  }
  SECTION("the trine") {
    REQUIRE_THAT(guesswork::polygon_trace_norm(3),
                 WithinAbs(2.0 / std::sqrt(3.0), 1e-15));
  }
  SECTION("closed form vs exhaustive search") {
    for (int k = 2; k <= 8; ++k) {
      const auto brute = guesswork::brute_force(guesswork::polygon_ensemble(k));
      REQUIRE_THAT(guesswork::polygon_trace_norm(k), WithinAbs(brute.trace_norm, 1e-12));
    }
  }
  SECTION("vertex counts below two are rejected") {
    REQUIRE_THROWS_AS(guesswork::polygon_trace_norm(1), validation_error);
  }
}

TEST_CASE("explicit extremal score matrices reach the closed form", "[closed_form]") {
  // The extremal score operator can be written down directly in terms of
  // c = cot(pi/k) (even) or c = cot(pi/2k) (odd); its trace norm must equal
  // the closed form.
  SECTION("even vertex counts") {
    for (int k = 4; k <= 8; k += 2) {
      const double c = 1.0 / std::tan(std::numbers::pi / k);
      ComplexMatrix m(2, 2);
      m << -(2.0 * c * c + 1.0), -c, -c, 2.0 * c * c + 1.0;
      m /= static_cast<double>(k);
      REQUIRE_THAT(guesswork::trace_norm(HermitianOperator(m)),
                   WithinAbs(guesswork::polygon_trace_norm(k), 1e-12));
    }
  }
  SECTION("odd vertex counts") {
    for (int k = 3; k <= 7; k += 2) {
      const double c = 1.0 / std::tan(std::numbers::pi / (2.0 * k));
      ComplexMatrix m(2, 2);
      m << -c * c, -c, -c, c * c;
      m /= 2.0 * static_cast<double>(k);
      REQUIRE_THAT(guesswork::trace_norm(HermitianOperator(m)),
                   WithinAbs(guesswork::polygon_trace_norm(k), 1e-12));
    }
  }
}

TEST_CASE("polygon orderings are optimal zig-zags", "[closed_form]") {
  for (int k = 2; k <= 8; ++k) {
    DYNAMIC_SECTION(k << "-gon") {
      const Ordering n = guesswork::polygon_optimal_ordering(k);
      REQUIRE(n.size() == k);

      // Zig-zag structure: the t-th guess sits at circular distance
      // floor((t-1+1)/2) from the anchor.
      const int anchor = n.at_rank(1);
      for (int i = 1; i < k; ++i) {
        const int delta = ((n.at_rank(i + 1) - anchor) % k + k) % k;
        const int distance = std::min(delta, k - delta);
        REQUIRE(distance == (i + 1) / 2);
      }

      const Ensemble polygon = guesswork::polygon_ensemble(k);
      const double tn = guesswork::trace_norm(guesswork::score_operator(polygon, n));
      REQUIRE_THAT(tn, WithinAbs(guesswork::polygon_trace_norm(k), 1e-12));
      REQUIRE_THAT(tn,
                   WithinAbs(guesswork::brute_force(polygon).trace_norm, 1e-12));
      REQUIRE(guesswork::check_condition(polygon, n));
    }
  }
  SECTION("a large polygon stays on the closed form") {
    const int k = 100;
    const Ordering n = guesswork::polygon_optimal_ordering(k);
    const double tn = guesswork::trace_norm(
        guesswork::score_operator(guesswork::polygon_ensemble(k), n));
    REQUIRE_THAT(tn, WithinAbs(guesswork::polygon_trace_norm(k), 1e-9));
  }
}

TEST_CASE("polyhedron registry holds the radical closed forms", "[closed_form]") {
  // Recomputed with independent arithmetic.
  REQUIRE_THAT(guesswork::polyhedron_reference(4),
               WithinAbs(2.5 - std::sqrt(5.0) / (2.0 * std::sqrt(3.0)), 1e-14));
  REQUIRE_THAT(guesswork::polyhedron_reference(6),
               WithinAbs(3.5 - std::sqrt(5.0) * std::sqrt(7.0) / 6.0, 1e-14));
  REQUIRE_THAT(guesswork::polyhedron_reference(8),
               WithinAbs(4.5 - std::sqrt(7.0) / 2.0, 1e-14));
  const double root5 = std::sqrt(5.0);
  REQUIRE_THAT(guesswork::polyhedron_reference(12),
               WithinAbs(6.5 - std::sqrt(7150.0 + 3190.0 * root5) / 60.0, 1e-14));
  REQUIRE_THAT(guesswork::polyhedron_reference(20),
               WithinAbs(10.5 - std::sqrt(19950.0 + 8730.0 * root5) / 60.0, 1e-14));

  REQUIRE(guesswork::polyhedron_reference(Polyhedron::cube) ==
          guesswork::polyhedron_reference(8));
  REQUIRE_THROWS_WITH(guesswork::polyhedron_reference(5),
                      ContainsSubstring("no reference value"));
}

TEST_CASE("solved polyhedra match the registry where exhaustion confirms it",
          "[closed_form]") {
  const auto solution =
      guesswork::solve(guesswork::polyhedron_ensemble(Polyhedron::tetrahedron));
  REQUIRE(solution.status == guesswork::SolutionStatus::certified);
  REQUIRE_THAT(solution.value, WithinAbs(guesswork::polyhedron_reference(4), 1e-9));
}
