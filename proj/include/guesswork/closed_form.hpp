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

#ifndef GUESSWORK_CLOSED_FORM_HPP
#define GUESSWORK_CLOSED_FORM_HPP

#include <guesswork/ensemble.hpp>
#include <guesswork/functionals.hpp>
#include <guesswork/solver.hpp>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace guesswork {

/// Maximal score trace norm of the regular count-gon, in closed form:
///   even count:  2 sqrt(3 cos^2(pi/k) + 1) / (k sin^2(pi/k))
///   odd count:   cos(pi/2k) / (k sin^2(pi/2k))
/// The minimum guesswork of the polygon is (k+1)/2 - (this)/2.
inline double polygon_trace_norm(int count) {
  if (count < 2) {
    throw validation_error("a polygon ensemble needs at least 2 vertices");
  }
  const double k = static_cast<double>(count);
  if (count % 2 == 0) {
    const double angle = std::numbers::pi / k;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return 2.0 * std::sqrt(3.0 * c * c + 1.0) / (k * s * s);
  }
  const double angle = std::numbers::pi / (2.0 * k);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return c / (k * s * s);
}

namespace detail {

/// Zig-zag ordering of polygon vertices: start at `anchor`, then alternate
/// +1, -1, +2, -2, ... steps around the polygon (mirrored when chirality is
/// negative), so consecutive guesses close in on the side opposite the
/// anchor.
inline std::vector<int> zigzag(int count, int anchor, int chirality) {
  std::vector<int> order(static_cast<std::size_t>(count));
  order[0] = anchor;
  for (int i = 1; i < count; ++i) {
    const int offset = (i + 1) / 2;
    const int step = (i % 2 == 1 ? offset : -offset) * chirality;
    order[static_cast<std::size_t>(i)] =
        ((anchor + step) % count + count) % count;
  }
  return order;
}

}  // namespace detail

/// Best zig-zag ordering of the regular count-gon: all 2k anchored zig-zags
/// are scored and the trace-norm maximizer returned (lexicographically
/// smallest on ties).  Matches the exhaustive optimum wherever exhaustion
/// is affordable.
inline Ordering polygon_optimal_ordering(int count) {
  const Ensemble polygon = polygon_ensemble(count);
  detail::Candidate best;
  for (int anchor = 0; anchor < count; ++anchor) {
    for (int chirality : {1, -1}) {
      std::vector<int> order = detail::zigzag(count, anchor, chirality);
      const double tn =
          trace_norm(score_operator(polygon, Ordering(order)));
      ++best.evaluated;
      if (detail::candidate_improves(tn, order, best)) {
        best.trace_norm = tn;
        best.ordering = std::move(order);
      }
    }
  }
  return Ordering(best.ordering);
}

/// Reference registry of closed-form guesswork values for the regular
/// polyhedra, keyed by vertex count.  These are fixed registry entries, not
/// recomputed: see the README for a note on the 20-vertex entry, which
/// differs from the certified optimum this library computes.
inline double polyhedron_reference(int vertex_count) {
  switch (vertex_count) {
    case 4:
      return 2.5 - 0.5 * std::sqrt(5.0 / 3.0);
    case 6:
      return 3.5 - std::sqrt(35.0) / 6.0;
    case 8:
      return 4.5 - 0.5 * std::sqrt(7.0);
    case 12:
      return 6.5 - std::sqrt(110.0 * (65.0 + 29.0 * std::sqrt(5.0))) / 60.0;
    case 20:
      return 10.5 - std::sqrt(30.0 * (665.0 + 291.0 * std::sqrt(5.0))) / 60.0;
    default: {
      std::ostringstream os;
      os << "no reference value for a " << vertex_count << "-vertex solid "
         << "(known: 4, 6, 8, 12, 20)";
      throw validation_error(os.str());
    }
  }
}

inline double polyhedron_reference(Polyhedron p) {
  return polyhedron_reference(polyhedron_vertex_count(p));
}

}  // namespace guesswork

#endif  // GUESSWORK_CLOSED_FORM_HPP
