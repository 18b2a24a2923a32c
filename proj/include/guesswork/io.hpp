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

#ifndef GUESSWORK_IO_HPP
#define GUESSWORK_IO_HPP

#include <guesswork/ensemble.hpp>
#include <guesswork/functionals.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace guesswork {

/// JSON document type used for all input and output; insertion-ordered so
/// emitted documents keep a stable field order.
using json = nlohmann::ordered_json;

namespace detail {

inline std::size_t line_of_byte(std::string_view text, std::size_t byte) {
  // nlohmann reports 1-based byte positions.
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
}

inline Eigen::MatrixXd read_real_block(const json& block, Eigen::Index d,
                                       const std::string& context) {
  if (!block.is_array() || block.size() != static_cast<std::size_t>(d)) {
    throw validation_error(context + " must be a " + std::to_string(d) + "x" +
                           std::to_string(d) + " array of numbers");
  }
  Eigen::MatrixXd out(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const json& row = block[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(d)) {
      throw validation_error(context + " must be a " + std::to_string(d) + "x" +
                             std::to_string(d) + " array of numbers");
    }
    for (Eigen::Index j = 0; j < d; ++j) {
      const json& cell = row[static_cast<std::size_t>(j)];
      if (!cell.is_number()) {
        throw validation_error(context + " must contain only numbers");
      }
      out(i, j) = cell.get<double>();
    }
  }
  return out;
}

}  // namespace detail

/// Builds an ensemble from a parsed document:
///   { "dim": d,
///     "states": [ {"label": ..., "weight": w, "bloch": [x, y, z]}   (d = 2)
///               | {"label": ..., "matrix": {"re": [[...]], "im": [[...]]}} ] }
/// A bloch record means M = w (1 + r.sigma)/2; a matrix record carries the
/// prior folded into the matrix ("im" may be omitted for real matrices).
inline Ensemble ensemble_from_json(const json& doc) {
  if (!doc.is_object()) {
    throw validation_error("ensemble document must be a JSON object");
  }
  if (!doc.contains("dim") || !doc["dim"].is_number_integer() ||
      doc["dim"].get<std::int64_t>() < 1) {
    throw validation_error("'dim' must be a positive integer");
  }
  const Eigen::Index d = doc["dim"].get<Eigen::Index>();
  if (!doc.contains("states") || !doc["states"].is_array() || doc["states"].empty()) {
    throw validation_error("'states' must be a nonempty array");
  }
  std::vector<std::string> labels;
  std::vector<HermitianOperator> ops;
  std::size_t index = 0;
  for (const json& record : doc["states"]) {
    const std::string context = "states[" + std::to_string(index++) + "]";
    if (!record.is_object()) {
      throw validation_error(context + " must be an object");
    }
    if (!record.contains("label") || !record["label"].is_string() ||
        record["label"].get<std::string>().empty()) {
      throw validation_error(context + ": 'label' must be a nonempty string");
    }
    labels.push_back(record["label"].get<std::string>());
    const bool has_bloch = record.contains("bloch");
    const bool has_matrix = record.contains("matrix");
    if (has_bloch == has_matrix) {
      throw validation_error(context + ": exactly one of 'bloch' or 'matrix' is required");
    }
    try {
      if (has_bloch) {
        if (d != 2) {
          throw validation_error("'bloch' records require dim = 2");
        }
        if (!record.contains("weight") || !record["weight"].is_number()) {
          throw validation_error("'weight' must be a number on bloch records");
        }
        const json& b = record["bloch"];
        if (!b.is_array() || b.size() != 3 || !b[0].is_number() || !b[1].is_number() ||
            !b[2].is_number()) {
          throw validation_error("'bloch' must be an array of three numbers");
        }
        ops.push_back(detail::bloch_state_operator(
            {b[0].get<double>(), b[1].get<double>(), b[2].get<double>()},
            record["weight"].get<double>()));
      } else {
        if (record.contains("weight")) {
          throw validation_error(
              "matrix records fold the prior into the matrix; drop 'weight'");
        }
        const json& mat = record["matrix"];
        if (!mat.is_object() || !mat.contains("re")) {
          throw validation_error("'matrix' must be an object with 're' (and optional 'im')");
        }
        const Eigen::MatrixXd re = detail::read_real_block(mat["re"], d, "'re'");
        Eigen::MatrixXd im = Eigen::MatrixXd::Zero(d, d);
        if (mat.contains("im")) {
          im = detail::read_real_block(mat["im"], d, "'im'");
        }
        ComplexMatrix full(d, d);
        full.real() = re;
        full.imag() = im;
        ops.emplace_back(std::move(full));
      }
    } catch (const validation_error& e) {
      throw validation_error(context + ": " + e.what());
    }
  }
  return make_ensemble(std::move(labels), std::move(ops));
}

/// Parses an ensemble document from text, reporting the line of any JSON
/// syntax error.  `origin` names the source in error messages.
inline Ensemble parse_ensemble(const std::string& text,
                               std::string_view origin = "<input>") {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::ostringstream os;
    os << origin << ": parse error at line " << detail::line_of_byte(text, e.byte)
       << ": " << e.what();
    throw validation_error(os.str());
  }
  return ensemble_from_json(doc);
}

inline Ensemble load_ensemble(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw validation_error("cannot open ensemble file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_ensemble(buffer.str(), path.string());
}

/// Serializes an ensemble in the general matrix form.  Doubles are written
/// shortest-round-trip, so load(ensemble_to_json(e)) reproduces e bitwise
/// no matter how e was first described.
inline json ensemble_to_json(const Ensemble& ensemble) {
  const Eigen::Index d = ensemble.dim();
  json doc;
  doc["dim"] = d;
  json states = json::array();
  for (int m = 0; m < ensemble.size(); ++m) {
    const ComplexMatrix& op = ensemble.op(m).matrix();
    json re = json::array();
    json im = json::array();
    for (Eigen::Index i = 0; i < d; ++i) {
      json re_row = json::array();
      json im_row = json::array();
      for (Eigen::Index j = 0; j < d; ++j) {
        re_row.push_back(op(i, j).real());
        im_row.push_back(op(i, j).imag());
      }
      re.push_back(std::move(re_row));
      im.push_back(std::move(im_row));
    }
    json record;
    record["label"] = ensemble.label(m);
    record["matrix"] = json{{"re", std::move(re)}, {"im", std::move(im)}};
    states.push_back(std::move(record));
  }
  doc["states"] = std::move(states);
  return doc;
}

/// Flat, serializable view of a GuessworkSolution with messages replaced by
/// their labels.
struct SolutionReport {
  double g_min = 0;
  std::string status;
  std::vector<std::string> ordering;
  double trace_norm = 0;
  double lower_bound = 0;
  double upper_bound = 0;
  std::vector<double> q_marginal;
  bool decreasing = false;
  std::string method;
  std::uint64_t orderings_evaluated = 0;
  std::int64_t elapsed_ms = 0;
};

inline SolutionReport make_report(const Ensemble& ensemble,
                                  const GuessworkSolution& solution) {
  SolutionReport report;
  report.g_min = solution.value;
  report.status = std::string(to_string(solution.status));
  report.ordering.reserve(solution.ordering.messages().size());
  for (int m : solution.ordering.messages()) {
    report.ordering.push_back(ensemble.label(m));
  }
  report.trace_norm = solution.trace_norm;
  report.lower_bound = solution.lower_bound;
  report.upper_bound = solution.upper_bound;
  report.q_marginal = solution.rank_marginal;
  report.decreasing = solution.marginal_decreasing;
  report.method = solution.stats.method;
  report.orderings_evaluated = solution.stats.orderings_evaluated;
  report.elapsed_ms = std::llround(solution.stats.elapsed_ms);
  return report;
}

inline json report_to_json(const SolutionReport& report) {
  json doc;
  doc["g_min"] = report.g_min;
  doc["status"] = report.status;
  doc["ordering"] = report.ordering;
  doc["trace_norm"] = report.trace_norm;
  doc["lower_bound"] = report.lower_bound;
  doc["upper_bound"] = report.upper_bound;
  doc["q_marginal"] = report.q_marginal;
  doc["decreasing"] = report.decreasing;
  doc["method"] = report.method;
  doc["orderings_evaluated"] = report.orderings_evaluated;
  doc["elapsed_ms"] = report.elapsed_ms;
  return doc;
}

/// 12 significant digits: acceptance tolerances sit at 1e-9, so they stay
/// visible in text logs.
inline std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

inline std::string report_to_text(const SolutionReport& report) {
  std::ostringstream os;
  os << "g_min: " << format_number(report.g_min) << '\n';
  os << "status: " << report.status << '\n';
  os << "ordering: ";
  for (std::size_t i = 0; i < report.ordering.size(); ++i) {
    os << (i ? "," : "") << report.ordering[i];
  }
  os << '\n';
  os << "trace_norm: " << format_number(report.trace_norm) << '\n';
  os << "lower_bound: " << format_number(report.lower_bound) << '\n';
  os << "upper_bound: " << format_number(report.upper_bound) << '\n';
  os << "q_marginal:";
  for (double q : report.q_marginal) {
    os << ' ' << format_number(q);
  }
  os << '\n';
  os << "decreasing: " << (report.decreasing ? "true" : "false") << '\n';
  os << "method: " << report.method << '\n';
  os << "orderings_evaluated: " << report.orderings_evaluated << '\n';
  os << "elapsed_ms: " << report.elapsed_ms << '\n';
  return os.str();
}

}  // namespace guesswork

#endif  // GUESSWORK_IO_HPP
