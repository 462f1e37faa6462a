// Copyright 2026 The cvw Authors
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

#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cvw/criteria.hpp"
#include "cvw/errors.hpp"
#include "cvw/generators.hpp"
#include "cvw/io.hpp"
#include "cvw/optimizers.hpp"

namespace cvw::cli {
namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Globals {
  std::optional<double> tol;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

double resolve_tol(const Globals& g) {
  if (g.tol) return *g.tol;
  if (const char* env = std::getenv("CVW_DEFAULT_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !std::isfinite(v) || v < 0.0) {
      throw UsageError(std::string("CVW_DEFAULT_TOL is not a non-negative number: '") + env + "'");
    }
    return v;
  }
  return kDefaultPhysicalityTol;
}

void emit(const Globals& g, std::ostream& out, const std::string& text) {
  if (g.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw Error("cannot write '" + g.out + "'");
  f << text;
  if (!f) throw Error("write failed for '" + g.out + "'");
}

std::string csv_bool(const std::optional<bool>& b) {
  if (!b) return "";
  return *b ? "true" : "false";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += sep;
    out += xs[i];
  }
  return out;
}

// Two-mode input reduced; larger input must already be in standard form.
StandardFormCM standard_form_of(const CovarianceMatrix& v) {
  if (v.n_modes() == 2) return standard_form_reduce_two_mode(v).params.to_standard();
  return split_standard(v);
}

// --- gen --------------------------------------------------------------

struct GenArgs {
  std::string kind;
  int n_modes = 2;
  double r = 0.0;
  std::vector<double> nbar;
  std::string side = "A";
  std::string ordering = "interleaved";
};

int cmd_gen(const Globals& g, const GenArgs& a, std::ostream& out) {
  GeneratorSpec spec;
  spec.kind = generator_kind_from_string(a.kind);
  spec.n_modes = a.n_modes;
  spec.r = a.r;
  spec.nbar = a.nbar;
  spec.noise_side = side_from_string(a.side);
  spec.seed = g.seed;
  if (spec.kind == GeneratorSpec::Kind::thermal && spec.nbar.empty()) spec.nbar = {0.0};
  const CovarianceMatrix cm = generate(spec);
  emit(g, out, cm_to_json(cm, a.ordering == "block" ? Ordering::block : Ordering::interleaved));
  return kOk;
}

// --- certify ----------------------------------------------------------

struct CertifyArgs {
  std::string path;
  bool timing = false;
  bool non_gaussian = false;
};

std::string report_csv(const Report& r) {
  std::vector<std::string> head{"input_descriptor", "physical",         "ppt",
                                "separable_necessary_met", "gaussian_separable",
                                "steerable_a_to_b", "steerable_b_to_a"};
  const CorrelationVerdict& v = r.verdict;
  std::vector<std::string> row{csv_field(r.input_descriptor),
                               v.physical ? "true" : "false",
                               csv_bool(v.ppt),
                               csv_bool(v.separable_necessary_met),
                               v.gaussian_separable ? to_string(*v.gaussian_separable) : "",
                               csv_bool(v.steerable_a_to_b),
                               csv_bool(v.steerable_b_to_a)};
  for (const auto& [name, value] : v.witnesses) {
    head.push_back(name);
    row.push_back(format_number(value));
  }
  if (r.timing_ms) {
    head.emplace_back("timing_ms");
    row.push_back(format_number(*r.timing_ms));
  }
  return join(head, ",") + "\n" + join(row, ",") + "\n";
}

int cmd_certify(const Globals& g, const CertifyArgs& a, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const CovarianceMatrix cm = read_cm_file(a.path);
  CertifyConfig cfg;
  cfg.tol = resolve_tol(g);
  cfg.gaussian = !a.non_gaussian;
  cfg.optimizer.rng_seed = g.seed;

  Report report;
  report.input_descriptor = a.path;
  report.verdict = certify(cm, cfg);
  report.tol = cfg.tol;
  report.gaussian = cfg.gaussian;
  report.optimizer = cfg.optimizer;
  if (a.timing) {
    const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - start;
    report.timing_ms = dt.count();
  }
  emit(g, out, g.format == "csv" ? report_csv(report) : report_to_json(report));
  return report.verdict.physical ? kOk : kNonPhysical;
}

// --- sweep ------------------------------------------------------------

struct SweepArgs {
  std::string kind;
  std::string param;
  std::vector<double> range;
  int n_modes = 2;
  double r = 0.0;
  std::vector<double> nbar;
  std::string side = "A";
};

struct SweepRow {
  double value = 0.0;
  CorrelationVerdict verdict;
  std::vector<std::string> crossings;
};

int cmd_sweep(const Globals& g, const SweepArgs& a, std::ostream& out) {
  if (a.range.size() != 3) throw UsageError("--range takes lo hi steps");
  const double lo = a.range[0];
  const double hi = a.range[1];
  const double steps_d = a.range[2];
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
    throw UsageError("--range needs finite lo <= hi");
  }
  if (!(steps_d >= 1.0) || steps_d != std::floor(steps_d) || steps_d > 1e6) {
    throw UsageError("--range steps must be a positive integer");
  }
  const int steps = static_cast<int>(steps_d);
  if (a.param != "r" && a.param != "nbar") throw UsageError("--param must be r or nbar");

  GeneratorSpec base;
  base.kind = generator_kind_from_string(a.kind);
  base.n_modes = a.n_modes;
  base.r = a.r;
  base.nbar = a.nbar.empty() ? std::vector<double>{0.0} : a.nbar;
  base.noise_side = side_from_string(a.side);
  base.seed = g.seed;

  CertifyConfig cfg;
  cfg.tol = resolve_tol(g);
  cfg.sigma_pm = false;
  cfg.optimizer.rng_seed = g.seed;

  std::vector<SweepRow> rows(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    SweepRow& row = rows[static_cast<std::size_t>(i)];
    row.value = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
    GeneratorSpec spec = base;
    if (a.param == "r") {
      spec.r = row.value;
    } else {
      for (double& x : spec.nbar) x = row.value;
    }
    row.verdict = certify(generate(spec), cfg);
    if (i == 0) continue;
    const CorrelationVerdict& prev = rows[static_cast<std::size_t>(i - 1)].verdict;
    auto mark = [&](const char* name, const std::optional<bool>& before,
                    const std::optional<bool>& now) {
      if (before != now) {
        row.crossings.push_back(std::string(name) + ":" + csv_bool(before) + "->" + csv_bool(now));
      }
    };
    mark("ppt", prev.ppt, row.verdict.ppt);
    mark("steerable_a_to_b", prev.steerable_a_to_b, row.verdict.steerable_a_to_b);
    mark("steerable_b_to_a", prev.steerable_b_to_a, row.verdict.steerable_b_to_a);
  }

  auto witness = [](const CorrelationVerdict& v, const char* name) -> std::string {
    const auto it = v.witnesses.find(name);
    return it == v.witnesses.end() ? "" : format_number(it->second);
  };

  std::ostringstream ss;
  if (g.format == "csv") {
    ss << "value,kappa_minus_pt,sigma_ab_min,det_ratio_ab,ppt,steerable_a_to_b,"
          "steerable_b_to_a,crossings\n";
    for (const auto& row : rows) {
      ss << format_number(row.value) << ',' << witness(row.verdict, "kappa_minus_pt") << ','
         << witness(row.verdict, "sigma_ab_min") << ',' << witness(row.verdict, "det_ratio_ab")
         << ',' << csv_bool(row.verdict.ppt) << ',' << csv_bool(row.verdict.steerable_a_to_b)
         << ',' << csv_bool(row.verdict.steerable_b_to_a) << ','
         << csv_field(join(row.crossings, ";")) << '\n';
    }
  } else {
    ss << "{\n  \"generator\": \"" << a.kind << "\",\n  \"param\": \"" << a.param
       << "\",\n  \"rows\": [";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& row = rows[i];
      auto js_bool = [](const std::optional<bool>& b) {
        return b ? std::string(*b ? "true" : "false") : std::string("null");
      };
      auto js_num = [&](const char* name) {
        const std::string s = witness(row.verdict, name);
        return s.empty() ? std::string("null") : s;
      };
      std::vector<std::string> quoted;
      for (const auto& c : row.crossings) quoted.push_back("\"" + c + "\"");
      ss << (i == 0 ? "\n" : ",\n") << "    {\"value\": " << format_number(row.value)
         << ", \"kappa_minus_pt\": " << js_num("kappa_minus_pt")
         << ", \"sigma_ab_min\": " << js_num("sigma_ab_min")
         << ", \"det_ratio_ab\": " << js_num("det_ratio_ab")
         << ", \"ppt\": " << js_bool(row.verdict.ppt)
         << ", \"steerable_a_to_b\": " << js_bool(row.verdict.steerable_a_to_b)
         << ", \"steerable_b_to_a\": " << js_bool(row.verdict.steerable_b_to_a)
         << ", \"crossings\": [" << join(quoted, ", ") << "]}";
    }
    ss << "\n  ]\n}\n";
  }
  emit(g, out, ss.str());
  return kOk;
}

// --- oracle -----------------------------------------------------------

struct OracleArgs {
  std::string path;
  std::string functional = "sigma_plus";
  long samples = 100000;
  double oracle_tol = 1e-3;
};

int cmd_oracle(const Globals& g, const OracleArgs& a, std::ostream& out, std::ostream& err) {
  const CovarianceMatrix cm = read_cm_file(a.path);
  const Functional f = functional_from_string(a.functional);
  const double tol = resolve_tol(g);
  if (!validate_bona_fide(cm, tol).bona_fide()) {
    err << "cvw oracle: input is not a bona fide covariance matrix\n";
    return kNonPhysical;
  }
  if (a.samples < 1) throw UsageError("--samples must be positive");
  const StandardFormCM sf = standard_form_of(cm);

  OptimizerConfig opt;
  opt.rng_seed = g.seed;
  const MinimizationResult num = minimize(sf, f, opt);
  GridSpec grid;
  grid.samples = a.samples;
  grid.seed = g.seed;
  const double brute = brute_force_min(sf, f, grid);

  std::optional<double> closed;
  if (f == Functional::sigma_ab) {
    closed = min_sigma_ab(sf);
  } else if (f == Functional::sigma_ba) {
    closed = min_sigma_ba(sf);
  } else if (cm.n_modes() == 2) {
    closed = min_sigma_pm_two_mode(standard_form_reduce_two_mode(cm).params, sign_of(f));
  }
  constexpr double kClosedFormTol = 1e-6;
  const bool agree_oracle = std::abs(num.value - brute) <= a.oracle_tol;
  const std::optional<bool> agree_closed =
      closed ? std::optional<bool>(std::abs(num.value - *closed) <= kClosedFormTol)
             : std::nullopt;

  std::ostringstream ss;
  const std::string closed_s = closed ? format_number(*closed) : "";
  if (g.format == "csv") {
    ss << "input_descriptor,functional,samples,seed,numeric_min,brute_force_min,closed_form,"
          "oracle_tol,agree_oracle,agree_closed_form,converged,boundary_flag\n"
       << csv_field(a.path) << ',' << a.functional << ',' << a.samples << ',' << g.seed << ','
       << format_number(num.value) << ',' << format_number(brute) << ',' << closed_s << ','
       << format_number(a.oracle_tol) << ',' << (agree_oracle ? "true" : "false") << ','
       << csv_bool(agree_closed) << ',' << (num.converged ? "true" : "false") << ','
       << (num.boundary_flag ? "true" : "false") << '\n';
  } else {
    std::ostringstream path_js;
    for (char c : a.path) {
      if (c == '"' || c == '\\') path_js << '\\';
      path_js << c;
    }
    ss << "{\n  \"input_descriptor\": \"" << path_js.str() << "\",\n"
       << "  \"functional\": \"" << a.functional << "\",\n"
       << "  \"samples\": " << a.samples << ",\n"
       << "  \"seed\": " << g.seed << ",\n"
       << "  \"numeric_min\": " << format_number(num.value) << ",\n"
       << "  \"brute_force_min\": " << format_number(brute) << ",\n"
       << "  \"closed_form\": " << (closed ? closed_s : "null") << ",\n"
       << "  \"oracle_tol\": " << format_number(a.oracle_tol) << ",\n"
       << "  \"agree_oracle\": " << (agree_oracle ? "true" : "false") << ",\n"
       << "  \"agree_closed_form\": "
       << (agree_closed ? (*agree_closed ? "true" : "false") : "null") << ",\n"
       << "  \"converged\": " << (num.converged ? "true" : "false") << ",\n"
       << "  \"boundary_flag\": " << (num.boundary_flag ? "true" : "false") << "\n}\n";
  }
  emit(g, out, ss.str());
  const bool ok = agree_oracle && agree_closed.value_or(true);
  return ok ? kOk : kOracleDisagreement;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement and EPR-steering certificates from covariance matrices", "cvw"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol", g.tol, "Verdict tolerance (default 1e-9 or $CVW_DEFAULT_TOL)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "Seed for generators, multistarts and the oracle");
  app.add_option("--out", g.out, "Write output to this file instead of stdout");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));

  const std::vector<std::string> kinds{"vacuum", "thermal", "tmsv", "noisy_tmsv",
                                       "random_standard"};

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Write a generated covariance matrix file");
  gen->fallthrough();
  gen->add_option("kind", gen_args.kind, "Generator")->required()->check(CLI::IsMember(kinds));
  gen->add_option("--n-modes", gen_args.n_modes, "Number of modes")->capture_default_str();
  gen->add_option("--r", gen_args.r, "Squeezing parameter");
  gen->add_option("--nbar", gen_args.nbar, "Thermal occupation(s), comma separated")
      ->delimiter(',');
  gen->add_option("--side", gen_args.side, "Noise side for noisy_tmsv")
      ->check(CLI::IsMember({"A", "B"}));
  gen->add_option("--ordering", gen_args.ordering, "Matrix ordering in the file")
      ->check(CLI::IsMember({"interleaved", "block"}));

  CertifyArgs cert_args;
  auto* cert = app.add_subcommand("certify", "Certify a covariance matrix file");
  cert->fallthrough();
  cert->add_option("path", cert_args.path, "CM JSON file")->required();
  cert->add_flag("--timing", cert_args.timing, "Include timing_ms in the report");
  cert->add_flag("--non-gaussian", cert_args.non_gaussian,
                 "The state is not Gaussian; separability stays undecided");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Certify a generator over a parameter range");
  sweep->fallthrough();
  sweep->add_option("kind", sweep_args.kind, "Generator")->required()->check(CLI::IsMember(kinds));
  sweep->add_option("--param", sweep_args.param, "Swept parameter (r or nbar)")->required();
  sweep->add_option("--range", sweep_args.range, "lo hi steps")->required()->expected(3);
  sweep->add_option("--n-modes", sweep_args.n_modes, "Number of modes");
  sweep->add_option("--r", sweep_args.r, "Fixed squeezing parameter");
  sweep->add_option("--nbar", sweep_args.nbar, "Fixed thermal occupation(s)")->delimiter(',');
  sweep->add_option("--side", sweep_args.side, "Noise side")->check(CLI::IsMember({"A", "B"}));

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "Compare the optimiser with brute force");
  oracle->fallthrough();
  oracle->add_option("path", oracle_args.path, "CM JSON file")->required();
  oracle->add_option("--functional", oracle_args.functional, "Functional")
      ->check(CLI::IsMember({"sigma_plus", "sigma_minus", "sigma_ab", "sigma_ba"}));
  oracle->add_option("--samples", oracle_args.samples, "Brute-force samples");
  oracle->add_option("--oracle-tol", oracle_args.oracle_tol, "Allowed |numeric - oracle|")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_gen(g, gen_args, out);
    if (*cert) return cmd_certify(g, cert_args, out);
    if (*sweep) return cmd_sweep(g, sweep_args, out);
    if (*oracle) return cmd_oracle(g, oracle_args, out, err);
  } catch (const NonPhysical& e) {
    err << "cvw: " << e.what() << '\n';
    return kNonPhysical;
  } catch (const std::exception& e) {
    err << "cvw: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace cvw::cli
