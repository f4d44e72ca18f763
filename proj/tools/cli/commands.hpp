// Copyright 2026 The tunnel_wkb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Command-line front end: rate, scan, figure and validate subcommands writing
// CSV or JSON. Kept header-only so the test suite can drive it in-process.

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tunnel_wkb/tunnel_wkb.hpp"
#include "tunnel_wkb/validation.hpp"

namespace tunnel_wkb::cli {

using json = nlohmann::json;

enum ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kUsage = 2,
  kDomain = 3,
  kApplicability = 4,
  kConvergence = 5,
  kUnsupported = 6,
  kIo = 7,
};

inline int exit_code_for(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Domain: return kDomain;
    case ErrorCategory::Applicability: return kApplicability;
    case ErrorCategory::Convergence: return kConvergence;
    case ErrorCategory::Unsupported: return kUnsupported;
    case ErrorCategory::Usage: return kUsage;
  }
  return kUsage;
}

struct RunConfig {
  std::string command;
  std::string potential = "powerlaw";
  double s = 1.0;
  double V0 = 1.0;
  double a = 1.0;
  std::optional<int> n;
  std::optional<double> mu;
  std::optional<double> E;
  std::optional<double> F;
  std::optional<double> F_min;
  std::optional<double> F_max;
  int F_count = 0;
  std::string method = "auto";
  bool ac = false;
  std::string format = "csv";
  std::string output;
  std::string figure;
  std::string only;
  double tol_scale = 1.0;
  std::string config;

  PotentialSpec potential_spec() const {
    if (potential == "powerlaw") return PotentialSpec::power_law(s);
    if (potential == "log") return PotentialSpec::logarithmic(V0, a);
    throw UsageError("unknown potential '" + potential + "' (expected powerlaw or log)");
  }

  void validate() const {
    if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
    potential_spec().validate();
    if (command == "rate" || command == "scan") {
      if (!n && !E) throw UsageError("a bound state needs --n or --E");
      if (n && E) throw UsageError("--n and --E are mutually exclusive");
      if (method != "auto") parse_rate_method(method);
    }
    if (command == "rate" && !F) throw UsageError("rate requires --F");
    if (command == "scan") {
      if (!F_min || !F_max) throw UsageError("scan requires --F-min and --F-max");
      if (F_count < 2) throw UsageError("scan requires --F-count >= 2");
      if (!(*F_min > 0.0 && *F_max > *F_min)) throw UsageError("scan requires 0 < F-min < F-max");
    }
    if (command == "figure" && figure != "fig1" && figure != "fig2" && figure != "fig3") {
      throw UsageError("unknown figure id '" + figure + "' (expected fig1, fig2 or fig3)");
    }
  }
};

/// Fills every key present in `j` into `cfg`. Keys mirror the long flag names
/// with '-' replaced by '_'.
inline void apply_json(RunConfig& cfg, const json& j) {
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  auto take = [&](const char* key, auto& field) {
    if (auto it = j.find(key); it != j.end()) {
      using T = std::decay_t<decltype(field)>;
      if constexpr (requires { typename T::value_type; } && !std::is_same_v<T, std::string>) {
        field = it->template get<typename T::value_type>();
      } else {
        field = it->template get<T>();
      }
    }
  };
  try {
    take("potential", cfg.potential);
    take("s", cfg.s);
    take("V0", cfg.V0);
    take("a", cfg.a);
    take("n", cfg.n);
    take("mu", cfg.mu);
    take("E", cfg.E);
    take("F", cfg.F);
    take("F_min", cfg.F_min);
    take("F_max", cfg.F_max);
    take("F_count", cfg.F_count);
    take("method", cfg.method);
    take("ac", cfg.ac);
    take("format", cfg.format);
    take("output", cfg.output);
    take("figure", cfg.figure);
    take("only", cfg.only);
    take("tol_scale", cfg.tol_scale);
  } catch (const json::exception& e) {
    throw UsageError(std::string("config file: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Tables

using Cell = std::variant<std::monostate, double, long long, std::string, std::vector<std::string>>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Locale-independent formatting with 17 significant digits.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline std::string cell_text(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(const std::string& v) const { return csv_escape(v); }
    std::string operator()(const std::vector<std::string>& v) const {
      std::string out;
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ";" : "") + v[i];
      return csv_escape(out);
    }
  } visitor;
  return std::visit(visitor, c);
}

inline json cell_json(const Cell& c) {
  struct {
    json operator()(std::monostate) const { return nullptr; }
    json operator()(double v) const { return std::isfinite(v) ? json(v) : json(format_double(v)); }
    json operator()(long long v) const { return v; }
    json operator()(const std::string& v) const { return v; }
    json operator()(const std::vector<std::string>& v) const { return v; }
  } visitor;
  return std::visit(visitor, c);
}

inline void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
}

inline json table_json(const Table& t) {
  json arr = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
    arr.push_back(std::move(obj));
  }
  return arr;
}

// ---------------------------------------------------------------------------
// Commands

inline const std::vector<std::string>& record_columns() {
  static const std::vector<std::string> cols = {"potential", "s",         "n",         "E",     "F",
                                                "epsilon",   "prefactor", "exponent",  "w",     "log_w",
                                                "ac_factor", "method",    "validity_flags"};
  return cols;
}

inline unsigned thread_cap() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TUNNEL_WKB_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return std::min(hw, static_cast<unsigned>(v));
  }
  return hw;
}

inline RateMethod resolve_method(const RunConfig& cfg, const PotentialSpec& spec) {
  if (cfg.method != "auto") return parse_rate_method(cfg.method);
  const bool closed_form = spec.kind == PotentialKind::PowerLaw && (spec.s == 1.0 || spec.s == 0.5);
  return closed_form ? RateMethod::Exact : RateMethod::Oracle;
}

inline BoundState resolve_state(const RunConfig& cfg, const PotentialSpec& spec) {
  if (cfg.E) return bound_state_from_energy(spec, *cfg.E);
  if (cfg.mu) return bound_state(spec, *cfg.n, *cfg.mu);
  if (default_maslov(spec)) return bound_state(spec, *cfg.n);
  throw UsageError("no closed-form spectrum for this exponent: give --mu or an explicit --E");
}

inline std::vector<Cell> rate_row(const PotentialSpec& spec, const BoundState& st, double F,
                                  const RateResult& r) {
  std::vector<Cell> row;
  row.emplace_back(std::string(to_string(spec.kind)));
  row.push_back(spec.kind == PotentialKind::PowerLaw ? Cell(spec.s) : Cell());
  row.push_back(st.n >= 1 ? Cell(static_cast<long long>(st.n)) : Cell());
  row.emplace_back(st.E);
  row.emplace_back(F);
  row.emplace_back(r.epsilon);
  row.emplace_back(r.prefactor);
  row.emplace_back(r.exponent);
  row.emplace_back(r.w);
  row.emplace_back(r.log_w);
  row.push_back(r.ac_factor ? Cell(*r.ac_factor) : Cell());
  row.emplace_back(std::string(to_string(r.method)));
  row.emplace_back(r.flags);
  return row;
}

inline FieldSpec field_for(const RunConfig& cfg, double F) {
  return {F, cfg.ac ? FieldMode::LowFrequencyAC : FieldMode::Static};
}

inline Table cmd_rate(const RunConfig& cfg) {
  const auto spec = cfg.potential_spec();
  const auto st = resolve_state(cfg, spec);
  const auto r = compute_rate(spec, st, field_for(cfg, *cfg.F), resolve_method(cfg, spec));
  Table t{record_columns(), {}};
  t.rows.push_back(rate_row(spec, st, *cfg.F, r));
  return t;
}

inline std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) {
    v[i] = i == count - 1 ? hi : lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
  }
  return v;
}

/// One row per log-spaced F. Failing points keep their row with an `error`
/// cell naming the category and message.
inline Table cmd_scan(const RunConfig& cfg) {
  const auto spec = cfg.potential_spec();
  const auto st = resolve_state(cfg, spec);
  const auto method = resolve_method(cfg, spec);
  const auto grid = log_grid(*cfg.F_min, *cfg.F_max, cfg.F_count);
  Table t{record_columns(), std::vector<std::vector<Cell>>(grid.size())};
  t.columns.emplace_back("error");
  auto work = [&](std::size_t i) {
    const double F = grid[i];
    try {
      auto row = rate_row(spec, st, F, compute_rate(spec, st, field_for(cfg, F), method));
      row.emplace_back();
      t.rows[i] = std::move(row);
    } catch (const Error& e) {
      std::vector<Cell> row(record_columns().size());
      row[0] = std::string(to_string(spec.kind));
      if (spec.kind == PotentialKind::PowerLaw) row[1] = spec.s;
      if (st.n >= 1) row[2] = static_cast<long long>(st.n);
      row[3] = st.E;
      row[4] = F;
      row[11] = std::string(to_string(method));
      row.emplace_back(std::string(to_string(e.category())) + ": " + e.what());
      t.rows[i] = std::move(row);
    }
  };
  const unsigned threads = std::min<unsigned>(thread_cap(), static_cast<unsigned>(grid.size()));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < grid.size(); i += threads) work(i);
    });
  }
  for (auto& th : pool) th.join();
  return t;
}

inline Table figure_potential() {
  const auto spec = PotentialSpec::power_law(1.0);
  const double F = 0.01, E = -0.5;
  const RootSet roots = coulomb_roots(coulomb_epsilon(E, F), E);
  Table t{{"x", "V", "label"}, {}};
  for (double x : log_grid(0.05, 150.0, 240)) t.rows.push_back({x, potential_total(spec, F, x), std::string()});
  t.rows.push_back({roots.x_left, potential_total(spec, F, roots.x_left), std::string("x_L")});
  t.rows.push_back({roots.x_right, potential_total(spec, F, roots.x_right), std::string("x_R")});
  std::stable_sort(t.rows.begin(), t.rows.end(),
                   [](const auto& l, const auto& r) { return std::get<double>(l[0]) < std::get<double>(r[0]); });
  return t;
}

inline Table figure_f_of_s() {
  Table t{{"s", "f", "limit_s2"}, {}};
  const double limit = std::numbers::pi / 2.0 - 1.0;
  for (int i = 1; i <= 100; ++i) {
    const double s = 1.0 + 0.01 * i;
    t.rows.push_back({s, f_of_s(s), limit});
  }
  return t;
}

inline Table figure_log_action() {
  const double V0 = 1.0, a = 1.0, F = 0.01;
  Table t{{"epsilon", "improved_over_exact", "leading_over_exact", "exact"}, {}};
  for (double eps : log_grid(1e-3, 0.05, 25)) {
    const double E = V0 * std::log(eps * V0 / (a * F));
    const double i0 = action_oracle(PotentialSpec::logarithmic(V0, a), E, F).value;
    t.rows.push_back({eps, action_log_improved_from_epsilon(V0, eps, F).value / i0,
                      action_log_leading_from_epsilon(V0, eps, F).value / i0, 1.0});
  }
  return t;
}

inline Table cmd_figure(const RunConfig& cfg) {
  if (cfg.figure == "fig1") return figure_potential();
  if (cfg.figure == "fig2") return figure_f_of_s();
  if (cfg.figure == "fig3") return figure_log_action();
  throw UsageError("unknown figure id '" + cfg.figure + "'");
}

// ---------------------------------------------------------------------------
// Entry point

namespace detail {

inline void bind_options(CLI::App& app, RunConfig& cfg) {
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", cfg.config, "JSON file with default values; flags override it");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output,-o", cfg.output, "Output path (stdout when omitted)");

  auto add_state = [&](CLI::App* sub) {
    sub->add_option("--potential", cfg.potential, "powerlaw or log");
    sub->add_option("--s", cfg.s, "Power-law exponent, 0 < s < 2");
    sub->add_option("--V0", cfg.V0, "Logarithmic strength");
    sub->add_option("--a", cfg.a, "Logarithmic length scale");
    sub->add_option("--n", cfg.n, "Principal quantum number");
    sub->add_option("--mu", cfg.mu, "Maslov index for Bohr-Sommerfeld quantization");
    sub->add_option("--E", cfg.E, "Explicit bound-state energy");
    sub->add_option("--method", cfg.method, "auto, oracle, exact, asymptotic or improved");
    sub->add_flag("--ac", cfg.ac, "Average over a low-frequency AC cycle");
  };
  auto* rate = app.add_subcommand("rate", "Ionization rate at one field strength");
  add_state(rate);
  rate->add_option("--F", cfg.F, "Field strength");
  auto* scan = app.add_subcommand("scan", "Rates over a log-spaced field range");
  add_state(scan);
  scan->add_option("--F-min", cfg.F_min, "Smallest field");
  scan->add_option("--F-max", cfg.F_max, "Largest field");
  scan->add_option("--F-count", cfg.F_count, "Number of points (>= 2)");
  auto* fig = app.add_subcommand("figure", "Data behind fig1, fig2 or fig3");
  fig->add_option("id", cfg.figure, "fig1, fig2 or fig3")->required();
  auto* val = app.add_subcommand("validate", "Run the acceptance criteria");
  val->add_option("--only", cfg.only, "Run only criteria with this tag or id");
  val->add_option("--tol-scale", cfg.tol_scale, "Multiply every tolerance");
  for (auto* sub : {rate, scan, fig, val}) {
    sub->callback([&cfg, sub] { cfg.command = sub->get_name(); });
  }
}

inline json error_json(std::string_view category, std::string_view message) {
  return json{{"error", {{"category", category}, {"message", message}}}};
}

}  // namespace detail

/// Parses `args` (without the program name), merges an optional JSON config
/// underneath the flags, and returns the resulting configuration.
inline RunConfig parse_args(const std::vector<std::string>& args) {
  auto parse_into = [&](RunConfig& cfg) {
    CLI::App app{"Tunnel-ionization rates from WKB barrier actions", "tunnel_wkb"};
    detail::bind_options(app, cfg);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  };
  RunConfig first;
  parse_into(first);
  if (first.config.empty()) return first;
  std::ifstream in(first.config);
  if (!in) throw UsageError("cannot open config file '" + first.config + "'");
  RunConfig merged;
  try {
    apply_json(merged, json::parse(in));
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config file: ") + e.what());
  }
  parse_into(merged);
  return merged;
}

/// Runs one command, writing results to `out` (or the configured file) and
/// diagnostics to `err`. Returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const CLI::CallForHelp& e) {
    CLI::App app{"Tunnel-ionization rates from WKB barrier actions", "tunnel_wkb"};
    RunConfig scratch;
    detail::bind_options(app, scratch);
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << detail::error_json("usage", e.what()).dump() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << detail::error_json(to_string(e.category()), e.what()).dump() << '\n';
    return exit_code_for(e.category());
  }

  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) {
      err << detail::error_json("io", "cannot open output file '" + cfg.output + "'").dump() << '\n';
      return kIo;
    }
  }
  std::ostream& sink = cfg.output.empty() ? out : file;

  try {
    cfg.validate();
    if (cfg.command == "validate") {
      const auto list = validation::criteria();
      const auto reports = validation::run(list, cfg.only, cfg.tol_scale, thread_cap());
      if (reports.empty()) throw UsageError("--only '" + cfg.only + "' matches no criterion");
      const bool all = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.outcome.passed; });
      const auto passed = std::count_if(reports.begin(), reports.end(), [](const auto& r) { return r.outcome.passed; });
      if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& r : reports) {
          arr.push_back({{"id", r.criterion->id},
                         {"name", r.criterion->name},
                         {"passed", r.outcome.passed},
                         {"measured", cell_json(r.outcome.measured)},
                         {"threshold", r.outcome.threshold},
                         {"detail", r.outcome.detail}});
        }
        sink << json{{"passed", passed}, {"total", reports.size()}, {"criteria", arr}}.dump(2) << '\n';
      } else {
        for (const auto& r : reports) sink << validation::format_line(r) << '\n';
        sink << passed << "/" << reports.size() << " criteria passed\n";
      }
      return all ? kOk : kValidationFailed;
    }

    Table table;
    if (cfg.command == "rate") table = cmd_rate(cfg);
    else if (cfg.command == "scan") table = cmd_scan(cfg);
    else table = cmd_figure(cfg);

    if (cfg.format == "csv") {
      write_csv(sink, table);
    } else {
      json j = table_json(table);
      sink << (cfg.command == "rate" ? j.at(0) : j).dump(2) << '\n';
    }
    return kOk;
  } catch (const Error& e) {
    err << detail::error_json(to_string(e.category()), e.what()).dump() << '\n';
    return exit_code_for(e.category());
  }
}

}  // namespace tunnel_wkb::cli
