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

#include <guesswork/guesswork.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr double kReferenceTolerance = 1e-9;

struct CommonOptions {
  std::string method = "auto";
  int cap = guesswork::default_enumeration_cap;
  int starts = 0;
  double tolerance = 1e-9;
  int threads = 0;
  bool long_running = false;
  std::string output = "text";
};

void add_search_flags(CLI::App* cmd, CommonOptions* opt) {
  cmd->add_option("--method", opt->method, "search method")
      ->check(CLI::IsMember({"auto", "brute", "symmetric", "sweep"}))
      ->capture_default_str();
  cmd->add_option("--starts", opt->starts, "direction-sweep restarts (0 = auto)")
      ->capture_default_str();
  cmd->add_option("--threads", opt->threads,
                  "worker threads (0 = GUESSWORK_THREADS, then hardware)")
      ->capture_default_str();
  cmd->add_flag("--long-running", opt->long_running,
                "allow searches past the double-factorial safety budget");
}

void add_report_flags(CLI::App* cmd, CommonOptions* opt) {
  cmd->add_option("--cap", opt->cap, "max |M| for exhaustive |M|! enumeration")
      ->capture_default_str();
  cmd->add_option("--tolerance", opt->tolerance, "optimality-certificate tolerance")
      ->capture_default_str();
  cmd->add_option("--output", opt->output, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

guesswork::SolverConfig to_config(const CommonOptions& opt) {
  guesswork::SolverConfig config;
  config.enumeration_cap = opt.cap;
  config.sweep_starts = opt.starts;
  config.tolerance = opt.tolerance;
  config.threads = opt.threads;
  config.long_running = opt.long_running;
  return config;
}

guesswork::Method to_method(const std::string& name) {
  const auto method = guesswork::parse_method(name);
  if (!method) {
    throw guesswork::validation_error("unknown method '" + name + "'");
  }
  return *method;
}

void emit(const CommonOptions& opt, const guesswork::json& doc,
          const std::string& text) {
  if (opt.output == "json") {
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << text;
  }
}

int cmd_solve(const std::string& path, const CommonOptions& opt) {
  const guesswork::Ensemble ensemble = guesswork::load_ensemble(path);
  const guesswork::GuessworkSolution solution =
      guesswork::solve(ensemble, to_method(opt.method), to_config(opt));
  const guesswork::SolutionReport report = guesswork::make_report(ensemble, solution);
  emit(opt, guesswork::report_to_json(report), guesswork::report_to_text(report));
  return 0;
}

int cmd_polygon(int count, const CommonOptions& opt) {
  const guesswork::Ensemble ensemble = guesswork::polygon_ensemble(count);
  const guesswork::GuessworkSolution solution =
      guesswork::solve(ensemble, to_method(opt.method), to_config(opt));
  const guesswork::SolutionReport report = guesswork::make_report(ensemble, solution);
  const double closed_form =
      0.5 * (count + 1.0) - 0.5 * guesswork::polygon_trace_norm(count);
  const double difference = std::abs(report.g_min - closed_form);

  guesswork::json doc = guesswork::report_to_json(report);
  doc["closed_form_g_min"] = closed_form;
  doc["closed_form_difference"] = difference;
  std::ostringstream text;
  text << guesswork::report_to_text(report);
  text << "closed_form_g_min: " << guesswork::format_number(closed_form) << '\n';
  text << "closed_form_difference: " << guesswork::format_number(difference) << '\n';
  emit(opt, doc, text.str());
  return 0;
}

int cmd_polyhedron(const std::string& name, const CommonOptions& opt) {
  const guesswork::Ensemble ensemble = guesswork::polyhedron_ensemble(name);
  const guesswork::GuessworkSolution solution =
      guesswork::solve(ensemble, to_method(opt.method), to_config(opt));
  const guesswork::SolutionReport report = guesswork::make_report(ensemble, solution);
  const double reference = guesswork::polyhedron_reference(ensemble.size());
  const double difference = std::abs(report.g_min - reference);
  const bool match = difference <= kReferenceTolerance;

  guesswork::json doc = guesswork::report_to_json(report);
  doc["solid"] = name;
  doc["reference"] = reference;
  doc["reference_difference"] = difference;
  doc["match"] = match;
  std::ostringstream text;
  text << guesswork::report_to_text(report);
  text << "solid: " << name << '\n';
  text << "reference: " << guesswork::format_number(reference) << '\n';
  text << "reference_difference: " << guesswork::format_number(difference) << '\n';
  text << "match: " << (match ? "true" : "false") << '\n';
  emit(opt, doc, text.str());
  return 0;
}

int cmd_table1(std::vector<int> rows, bool rows_given, bool method_given,
               const CommonOptions& opt) {
  if (!rows_given) {
    rows = {4, 6, 8, 12};
    if (opt.long_running) rows.push_back(20);
  }
  guesswork::json table = guesswork::json::array();
  std::ostringstream text;
  text << std::left << std::setw(14) << "solid" << std::right << std::setw(4) << "|M|"
       << "  " << std::left << std::setw(16) << "method" << std::setw(17) << "g_min"
       << std::setw(17) << "reference" << std::setw(13) << "|difference|"
       << "match" << '\n';
  bool all_match = true;
  for (int row : rows) {
    const auto solid = guesswork::polyhedron_from_size(row);
    if (!solid) {
      throw guesswork::validation_error(
          "no table row has " + std::to_string(row) + " vertices (rows: 4, 6, 8, 12, 20)");
    }
    guesswork::Method method = guesswork::Method::brute;
    if (method_given) {
      method = to_method(opt.method);
    } else if (row == 12 || row == 20) {
      method = guesswork::Method::symmetric;
    }
    const bool exhaustive = method == guesswork::Method::symmetric ||
                            method == guesswork::Method::brute;
    if (row == 20 && exhaustive && !opt.long_running) {
      throw guesswork::cap_exceeded(
          "the 20-vertex row enumerates ~3.7e9 orderings; pass --long-running "
          "to run it exhaustively or --method sweep for the fast path");
    }

    const guesswork::Ensemble ensemble = guesswork::polyhedron_ensemble(*solid);
    const guesswork::GuessworkSolution solution =
        guesswork::solve(ensemble, method, to_config(opt));
    const guesswork::SolutionReport report = guesswork::make_report(ensemble, solution);
    const double reference = guesswork::polyhedron_reference(row);
    const double difference = std::abs(report.g_min - reference);
    const bool match = difference <= kReferenceTolerance;
    all_match = all_match && match;

    guesswork::json doc = guesswork::report_to_json(report);
    doc["solid"] = std::string(guesswork::polyhedron_name(*solid));
    doc["reference"] = reference;
    doc["reference_difference"] = difference;
    doc["match"] = match;
    table.push_back(std::move(doc));

    std::ostringstream diff_str;
    diff_str << std::setprecision(2) << std::scientific << difference;
    text << std::left << std::setw(14) << guesswork::polyhedron_name(*solid)
         << std::right << std::setw(4) << row << "  " << std::left << std::setw(16)
         << report.method << std::setw(17) << guesswork::format_number(report.g_min)
         << std::setw(17) << guesswork::format_number(reference) << std::setw(13)
         << diff_str.str() << (match ? "yes" : "NO") << '\n';
  }
  emit(opt, table, text.str());
  return all_match ? 0 : 1;
}

int cmd_verify(const std::string& path, const std::string& ordering_csv,
               const CommonOptions& opt) {
  const guesswork::Ensemble ensemble = guesswork::load_ensemble(path);
  std::vector<std::string> labels;
  std::vector<int> messages;
  std::stringstream csv(ordering_csv);
  std::string token;
  while (std::getline(csv, token, ',')) {
    const auto begin = token.find_first_not_of(" \t");
    const auto end = token.find_last_not_of(" \t");
    if (begin == std::string::npos) {
      throw guesswork::validation_error("--ordering contains an empty label");
    }
    token = token.substr(begin, end - begin + 1);
    const auto index = ensemble.index_of(token);
    if (!index) {
      throw guesswork::validation_error("unknown label '" + token + "' in --ordering");
    }
    labels.push_back(token);
    messages.push_back(*index);
  }
  if (static_cast<int>(messages.size()) != ensemble.size()) {
    throw guesswork::validation_error(
        "--ordering must list every label exactly once (" +
        std::to_string(messages.size()) + " given, " +
        std::to_string(ensemble.size()) + " expected)");
  }
  const guesswork::Ordering ordering(messages);  // rejects duplicates

  const bool holds =
      guesswork::check_condition(ensemble, ordering, opt.tolerance, opt.cap);
  const guesswork::Measurement measurement =
      guesswork::helstrom_measurement(ensemble, ordering);
  const std::vector<double> q = guesswork::marginal(ensemble, measurement);
  const double tn =
      guesswork::trace_norm(guesswork::score_operator(ensemble, ordering));
  const double upper = guesswork::evaluate_measurement(ensemble, measurement);
  const bool decreasing = guesswork::is_decreasing(q);

  guesswork::json doc;
  doc["condition_holds"] = holds;
  doc["ordering"] = labels;
  doc["trace_norm"] = tn;
  if (holds) {
    doc["g_min"] = guesswork::certified_value(ensemble, ordering);
  } else {
    doc["g_min"] = nullptr;
  }
  doc["upper_bound"] = upper;
  doc["q_marginal"] = q;
  doc["decreasing"] = decreasing;

  std::ostringstream text;
  text << "condition_holds: " << (holds ? "true" : "false") << '\n';
  text << "ordering: ";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    text << (i ? "," : "") << labels[i];
  }
  text << '\n';
  text << "trace_norm: " << guesswork::format_number(tn) << '\n';
  if (holds) {
    text << "g_min: "
         << guesswork::format_number(guesswork::certified_value(ensemble, ordering))
         << '\n';
  } else {
    text << "g_min: not certified\n";
  }
  text << "upper_bound: " << guesswork::format_number(upper) << '\n';
  text << "q_marginal:";
  for (double v : q) {
    text << ' ' << guesswork::format_number(v);
  }
  text << '\n';
  text << "decreasing: " << (decreasing ? "true" : "false") << '\n';
  emit(opt, doc, text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimum guesswork of a quantum ensemble: search over guessing "
               "orders with optimality certificates"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string input_path;
  std::string solid_name;
  std::string ordering_csv;
  int polygon_count = 0;
  std::vector<int> rows;

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve an ensemble file");
  solve_cmd->add_option("input", input_path, "ensemble JSON file")->required();
  add_search_flags(solve_cmd, &opt);
  add_report_flags(solve_cmd, &opt);

  CLI::App* polygon_cmd =
      app.add_subcommand("polygon", "regular polygon: solver vs closed form");
  polygon_cmd->add_option("--count", polygon_count, "number of vertices")->required();
  add_search_flags(polygon_cmd, &opt);
  add_report_flags(polygon_cmd, &opt);

  CLI::App* polyhedron_cmd = app.add_subcommand(
      "polyhedron", "regular polyhedron vs its reference value");
  polyhedron_cmd
      ->add_option("--name", solid_name,
                   "tetrahedron|octahedron|cube|icosahedron|dodecahedron")
      ->required();
  add_search_flags(polyhedron_cmd, &opt);
  add_report_flags(polyhedron_cmd, &opt);

  CLI::App* table_cmd = app.add_subcommand(
      "table1", "solve the regular polyhedra against the reference registry");
  CLI::Option* rows_opt = table_cmd->add_option(
      "--rows", rows, "vertex counts to run (default: 4 6 8 12, plus 20 with --long-running)");
  add_search_flags(table_cmd, &opt);
  add_report_flags(table_cmd, &opt);

  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "check the optimality certificate for a given ordering");
  verify_cmd->add_option("input", input_path, "ensemble JSON file")->required();
  verify_cmd
      ->add_option("--ordering", ordering_csv, "comma-separated labels, best-first")
      ->required();
  add_report_flags(verify_cmd, &opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(input_path, opt);
    if (polygon_cmd->parsed()) return cmd_polygon(polygon_count, opt);
    if (polyhedron_cmd->parsed()) return cmd_polyhedron(solid_name, opt);
    if (table_cmd->parsed()) {
      return cmd_table1(rows, rows_opt->count() > 0,
                        table_cmd->count("--method") > 0, opt);
    }
    if (verify_cmd->parsed()) return cmd_verify(input_path, ordering_csv, opt);
  } catch (const guesswork::cap_exceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const guesswork::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
