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

#ifndef GUESSWORK_ENSEMBLE_HPP
#define GUESSWORK_ENSEMBLE_HPP

#include <guesswork/linalg.hpp>

#include <algorithm>
#include <cmath>
#include <compare>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace guesswork {

namespace tol {
/// Ensemble traces must sum to one within this.
inline constexpr double ensemble_trace = 1e-9;
/// Per-state traces within this of 1/|M| count as uniform.
inline constexpr double uniform_trace = 1e-9;
/// Max entrywise deviation allowed in M(m) + M(m') = 1/|M| pairings.
inline constexpr double pairing = 1e-9;
/// Bloch vectors may exceed unit length by at most this.
inline constexpr double bloch = 1e-10;
}  // namespace tol

/// A point in (or on) the Bloch ball.
struct BlochVector {
  double x = 0;
  double y = 0;
  double z = 0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }
};

/// A guessing order: messages()[t-1] is the message guessed at attempt t.
/// Always a bijection onto {0, ..., size()-1}.
class Ordering {
 public:
  explicit Ordering(std::vector<int> ranks_to_messages)
      : messages_(std::move(ranks_to_messages)) {
    if (messages_.empty()) {
      throw validation_error("ordering must rank at least one message");
    }
    std::vector<char> seen(messages_.size(), 0);
    for (int m : messages_) {
      if (m < 0 || static_cast<std::size_t>(m) >= messages_.size() || seen[m]) {
        throw validation_error("ordering is not a bijection onto the message set");
      }
      seen[m] = 1;
    }
  }

  int size() const { return static_cast<int>(messages_.size()); }

  /// Message guessed at attempt t (ranks are 1-based).
  int at_rank(int t) const {
    if (t < 1 || t > size()) {
      throw validation_error("rank out of range");
    }
    return messages_[static_cast<std::size_t>(t - 1)];
  }

  const std::vector<int>& messages() const { return messages_; }

  Ordering reversed() const {
    std::vector<int> rev(messages_.rbegin(), messages_.rend());
    return Ordering(std::move(rev));
  }

  friend bool operator==(const Ordering& a, const Ordering& b) = default;
  friend std::strong_ordering operator<=>(const Ordering& a, const Ordering& b) = default;

 private:
  std::vector<int> messages_;
};

inline Ordering reverse_ordering(const Ordering& n) { return n.reversed(); }

/// A weighted ensemble: unnormalized density operators M(m) = p(m) rho_m,
/// one per message, with sum_m Tr M(m) = 1.
class Ensemble {
 public:
  Ensemble(std::vector<std::string> labels, std::vector<HermitianOperator> operators)
      : labels_(std::move(labels)), ops_(std::move(operators)) {
    if (ops_.empty()) {
      throw validation_error("ensemble must contain at least one state");
    }
    if (labels_.size() != ops_.size()) {
      throw validation_error("ensemble needs exactly one label per state");
    }
    std::set<std::string_view> unique;
    for (const auto& l : labels_) {
      if (l.empty()) {
        throw validation_error("ensemble labels must be nonempty");
      }
      if (!unique.insert(l).second) {
        throw validation_error("ensemble labels must be distinct: duplicate '" + l + "'");
      }
    }
    const Eigen::Index d = ops_.front().dim();
    double total_trace = 0;
    for (std::size_t m = 0; m < ops_.size(); ++m) {
      if (ops_[m].dim() != d) {
        throw validation_error("ensemble states must share one Hilbert space dimension");
      }
      const double lo = min_eigenvalue(ops_[m]);
      if (lo < -tol::psd) {
        std::ostringstream os;
        os << "state operator '" << labels_[m]
           << "' is not positive semidefinite (min eigenvalue " << lo << ")";
        throw validation_error(os.str());
      }
      total_trace += ops_[m].trace();
    }
    if (std::abs(total_trace - 1.0) > tol::ensemble_trace) {
      std::ostringstream os;
      os << "ensemble traces sum to " << total_trace << " (expected 1)";
      throw validation_error(os.str());
    }
  }

  Eigen::Index dim() const { return ops_.front().dim(); }
  int size() const { return static_cast<int>(ops_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int m) const { return labels_.at(static_cast<std::size_t>(m)); }
  const HermitianOperator& op(int m) const { return ops_.at(static_cast<std::size_t>(m)); }

  std::optional<int> index_of(std::string_view label) const {
    for (std::size_t m = 0; m < labels_.size(); ++m) {
      if (labels_[m] == label) return static_cast<int>(m);
    }
    return std::nullopt;
  }

  /// True when every state carries trace 1/|M| (uniform prior on messages).
  bool has_uniform_traces(double tolerance = tol::uniform_trace) const {
    const double target = 1.0 / size();
    for (const auto& op : ops_) {
      if (std::abs(op.trace() - target) > tolerance) return false;
    }
    return true;
  }

  /// Per-state Bloch directions r with M(m) = Tr M(m) (1 + r.sigma)/2.
  /// Only defined for qubit ensembles; a zero operator maps to the origin.
  std::vector<BlochVector> bloch_vectors() const {
    if (dim() != 2) {
      throw validation_error("Bloch vectors are only defined for two-level ensembles");
    }
    std::vector<BlochVector> out;
    out.reserve(ops_.size());
    for (const auto& op : ops_) {
      const auto& m = op.matrix();
      const double w = op.trace();
      if (w <= tol::psd) {
        out.push_back({0, 0, 0});
        continue;
      }
      out.push_back({2 * m(1, 0).real() / w, 2 * m(1, 0).imag() / w,
                     (m(0, 0).real() - m(1, 1).real()) / w});
    }
    return out;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<HermitianOperator> ops_;
};

/// Validating constructor (see Ensemble).
inline Ensemble make_ensemble(std::vector<std::string> labels,
                              std::vector<HermitianOperator> operators) {
  return Ensemble(std::move(labels), std::move(operators));
}

namespace detail {

/// Weighted Bloch state M = weight (1 + r.sigma)/2.  Both the qubit
/// ensemble builders and the file reader funnel through this, so equal
/// inputs give bitwise-equal operators.
inline HermitianOperator bloch_state_operator(const BlochVector& r, double weight) {
  if (r.norm() > 1.0 + tol::bloch) {
    std::ostringstream os;
    os << "Bloch vector (" << r.x << ", " << r.y << ", " << r.z
       << ") leaves the unit ball";
    throw validation_error(os.str());
  }
  if (!(weight >= 0)) {
    throw validation_error("state weight must be nonnegative");
  }
  ComplexMatrix m(2, 2);
  m(0, 0) = weight * (1.0 + r.z) / 2.0;
  m(1, 1) = weight * (1.0 - r.z) / 2.0;
  m(0, 1) = weight * std::complex<double>(r.x, -r.y) / 2.0;
  m(1, 0) = weight * std::complex<double>(r.x, r.y) / 2.0;
  return HermitianOperator::trusted(std::move(m));
}

}  // namespace detail

/// Equal-weight qubit ensemble from Bloch points: M(m) = (1 + r_m.sigma)/(2k).
/// Labels default to "m0", "m1", ...
inline Ensemble uniform_qubit_ensemble(const std::vector<BlochVector>& points,
                                       std::vector<std::string> labels = {}) {
  if (points.empty()) {
    throw validation_error("ensemble must contain at least one state");
  }
  const double weight = 1.0 / static_cast<double>(points.size());
  std::vector<HermitianOperator> ops;
  ops.reserve(points.size());
  for (const auto& r : points) {
    ops.push_back(detail::bloch_state_operator(r, weight));
  }
  if (labels.empty()) {
    for (std::size_t m = 0; m < points.size(); ++m) {
      labels.push_back("m" + std::to_string(m));
    }
  }
  return Ensemble(std::move(labels), std::move(ops));
}

/// Vertices of the regular count-gon in the x-z plane of the Bloch sphere,
/// as an equal-weight pure-state ensemble.
inline Ensemble polygon_ensemble(int count) {
  if (count < 2) {
    throw validation_error("a polygon ensemble needs at least 2 vertices");
  }
  std::vector<BlochVector> points;
  points.reserve(static_cast<std::size_t>(count));
  const double step = 2.0 * std::numbers::pi / count;
  for (int m = 0; m < count; ++m) {
    points.push_back({std::cos(step * m), 0.0, std::sin(step * m)});
  }
  return uniform_qubit_ensemble(points);
}

enum class Polyhedron {
  tetrahedron,
  octahedron,
  cube,
  icosahedron,
  dodecahedron,
};

inline std::optional<Polyhedron> parse_polyhedron(std::string_view name) {
  if (name == "tetrahedron") return Polyhedron::tetrahedron;
  if (name == "octahedron") return Polyhedron::octahedron;
  if (name == "cube") return Polyhedron::cube;
  if (name == "icosahedron") return Polyhedron::icosahedron;
  if (name == "dodecahedron") return Polyhedron::dodecahedron;
  return std::nullopt;
}

inline std::string_view polyhedron_name(Polyhedron p) {
  switch (p) {
    case Polyhedron::tetrahedron: return "tetrahedron";
    case Polyhedron::octahedron: return "octahedron";
    case Polyhedron::cube: return "cube";
    case Polyhedron::icosahedron: return "icosahedron";
    case Polyhedron::dodecahedron: return "dodecahedron";
  }
  throw validation_error("unknown polyhedron");
}

inline int polyhedron_vertex_count(Polyhedron p) {
  switch (p) {
    case Polyhedron::tetrahedron: return 4;
    case Polyhedron::octahedron: return 6;
    case Polyhedron::cube: return 8;
    case Polyhedron::icosahedron: return 12;
    case Polyhedron::dodecahedron: return 20;
  }
  throw validation_error("unknown polyhedron");
}

inline std::optional<Polyhedron> polyhedron_from_size(int vertex_count) {
  switch (vertex_count) {
    case 4: return Polyhedron::tetrahedron;
    case 6: return Polyhedron::octahedron;
    case 8: return Polyhedron::cube;
    case 12: return Polyhedron::icosahedron;
    case 20: return Polyhedron::dodecahedron;
    default: return std::nullopt;
  }
}

/// Unit vertex coordinates of the five regular polyhedra (golden ratio
/// construction for the icosahedron and dodecahedron).
inline std::vector<BlochVector> polyhedron_vertices(Polyhedron p) {
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  std::vector<BlochVector> v;
  switch (p) {
    case Polyhedron::tetrahedron: {
      const double s = 1.0 / std::sqrt(3.0);
      v = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
      break;
    }
    case Polyhedron::octahedron: {
      v = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
      break;
    }
    case Polyhedron::cube: {
      const double s = 1.0 / std::sqrt(3.0);
      for (double a : {s, -s}) {
        for (double b : {s, -s}) {
          for (double c : {s, -s}) {
            v.push_back({a, b, c});
          }
        }
      }
      break;
    }
    case Polyhedron::icosahedron: {
      const double s = 1.0 / std::sqrt(1.0 + phi * phi);
      for (double a : {s, -s}) {
        for (double b : {phi * s, -phi * s}) {
          v.push_back({0, a, b});
          v.push_back({a, b, 0});
          v.push_back({b, 0, a});
        }
      }
      break;
    }
    case Polyhedron::dodecahedron: {
      const double s = 1.0 / std::sqrt(3.0);
      for (double a : {s, -s}) {
        for (double b : {s, -s}) {
          for (double c : {s, -s}) {
            v.push_back({a, b, c});
          }
        }
      }
      for (double a : {s / phi, -s / phi}) {
        for (double b : {phi * s, -phi * s}) {
          v.push_back({0, a, b});
          v.push_back({a, b, 0});
          v.push_back({b, 0, a});
        }
      }
      break;
    }
  }
  return v;
}

inline Ensemble polyhedron_ensemble(Polyhedron p) {
  return uniform_qubit_ensemble(polyhedron_vertices(p));
}

inline Ensemble polyhedron_ensemble(std::string_view name) {
  const auto p = parse_polyhedron(name);
  if (!p) {
    throw validation_error("unknown polyhedron '" + std::string(name) +
                           "' (expected tetrahedron, octahedron, cube, icosahedron "
                           "or dodecahedron)");
  }
  return polyhedron_ensemble(*p);
}

/// Greedy antipodal pairing: returns partner[m] = m' with
/// M(m) + M(m') = 1/|M| for all m, or nullopt when no such pairing exists.
inline std::optional<std::vector<int>> is_centrally_symmetric(
    const Ensemble& ensemble, double tolerance = tol::pairing) {
  const int k = ensemble.size();
  if (k % 2 != 0) return std::nullopt;
  const HermitianOperator target =
      (1.0 / k) * HermitianOperator::identity(ensemble.dim());
  std::vector<int> partner(static_cast<std::size_t>(k), -1);
  for (int i = 0; i < k; ++i) {
    if (partner[static_cast<std::size_t>(i)] != -1) continue;
    for (int j = i + 1; j < k; ++j) {
      if (partner[static_cast<std::size_t>(j)] != -1) continue;
      const HermitianOperator sum = ensemble.op(i) + ensemble.op(j);
      if (sum.max_abs_diff(target) <= tolerance) {
        partner[static_cast<std::size_t>(i)] = j;
        partner[static_cast<std::size_t>(j)] = i;
        break;
      }
    }
    if (partner[static_cast<std::size_t>(i)] == -1) return std::nullopt;
  }
  return partner;
}

/// A POVM whose outcomes are guessing orders: pairs (n, N(n)) with every
/// N(n) positive semidefinite and sum_n N(n) = identity.  Elements are kept
/// sorted by ordering for deterministic iteration.
class Measurement {
 public:
  explicit Measurement(std::vector<std::pair<Ordering, HermitianOperator>> elements)
      : elements_(std::move(elements)) {
    if (elements_.empty()) {
      throw validation_error("measurement must have at least one outcome");
    }
    std::sort(elements_.begin(), elements_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    const Eigen::Index d = elements_.front().second.dim();
    const int k = elements_.front().first.size();
    ComplexMatrix total = ComplexMatrix::Zero(d, d);
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      const auto& [n, op] = elements_[i];
      if (op.dim() != d) {
        throw validation_error("measurement elements must share one dimension");
      }
      if (n.size() != k) {
        throw validation_error("measurement outcomes must rank the same message set");
      }
      if (i > 0 && elements_[i - 1].first == n) {
        throw validation_error("measurement outcomes must be distinct orderings");
      }
      const double lo = min_eigenvalue(op);
      if (lo < -tol::psd) {
        std::ostringstream os;
        os << "measurement element is not positive semidefinite (min eigenvalue "
           << lo << ")";
        throw validation_error(os.str());
      }
      total += op.matrix();
    }
    const double deviation =
        (total - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (deviation > tol::normalization) {
      std::ostringstream os;
      os << "measurement elements do not sum to the identity (max deviation "
         << deviation << ")";
      throw validation_error(os.str());
    }
  }

  Eigen::Index dim() const { return elements_.front().second.dim(); }

  /// Number of messages each outcome ranks.
  int message_count() const { return elements_.front().first.size(); }

  const std::vector<std::pair<Ordering, HermitianOperator>>& elements() const {
    return elements_;
  }

  /// Element attached to ordering n, or nullptr when n is not an outcome.
  const HermitianOperator* element(const Ordering& n) const {
    for (const auto& [ord, op] : elements_) {
      if (ord == n) return &op;
    }
    return nullptr;
  }

 private:
  std::vector<std::pair<Ordering, HermitianOperator>> elements_;
};

}  // namespace guesswork

#endif  // GUESSWORK_ENSEMBLE_HPP
