// Command-line front end for the (m,k)-expansion library.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jager/errors.hpp"
#include "jager/export.hpp"

namespace {

using namespace jager;

enum ExitCode { kOk = 0, kUsage = 1, kViolations = 2, kPrecision = 3 };

constexpr int kTextDigits = 24;

struct Common {
  int m = 0;
  std::string k = "1";
  int precision = Params::kDefaultPrecision;
  std::size_t depth = Params::kDefaultDepth;
  std::string format = "text";
  std::string out;
};

struct Experiment {
  std::size_t seeds = 1000;
  std::uint64_t rng_seed = 1;
  std::string prefix;
  std::size_t threads = 0;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--m", c.m, "orientation: 0 (Gauss-like) or 1 (Renyi-like)")
      ->check(CLI::IsMember({0, 1}));
  cmd->add_option("--k", c.k, "parameter k >= 1 as an expression, e.g. 1, 3/2, sqrt(2)");
  cmd->add_option("--precision", c.precision, "working precision in bits")
      ->check(CLI::Range(64, 1 << 20));
  cmd->add_option("--depth", c.depth, "maximum number of expansion steps")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  cmd->add_option("--format", c.format, "output format: text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  cmd->add_option("--out", c.out, "write the output to this file instead of stdout");
}

void add_experiment(CLI::App* cmd, Experiment& e) {
  cmd->add_option("--seeds", e.seeds, "number of sampled seeds")->check(CLI::PositiveNumber);
  cmd->add_option("--rng-seed", e.rng_seed, "64-bit seed of the sampler");
  cmd->add_option("--prefix", e.prefix, "force the first digits, e.g. 0,0,2");
  cmd->add_option("--threads", e.threads, "worker threads (0 = all cores); output does not depend on it");
}

Params make_params(const Common& c) { return Params(c.m, c.k, c.precision, c.depth); }

std::string config_line(const Common& c, const std::string& extra = "") {
  std::ostringstream os;
  os << "config: m=" << c.m << " k=" << c.k << " precision=" << c.precision << " depth=" << c.depth;
  if (!extra.empty()) os << ' ' << extra;
  return os.str();
}

Json config_json(const Common& c) {
  return Json{{"m", c.m}, {"k", c.k}, {"precision_bits", c.precision}, {"depth", c.depth}};
}

// Text output starts with the config line; CSV keeps its schema clean and
// echoes the config on stderr.
void begin(std::ostream& body, const Common& c, const std::string& extra = "") {
  if (c.format == "text") {
    body << config_line(c, extra) << '\n';
  } else if (c.format == "csv") {
    std::cerr << config_line(c, extra) << '\n';
  }
}

void emit(const std::string& body, const Common& c) {
  if (c.out.empty()) {
    std::cout << body;
    return;
  }
  write_text_file(c.out, body);
  if (c.format == "text" || c.format == "csv") {
    std::cerr << "wrote " << c.out << '\n';
  } else {
    std::cout << "wrote " << c.out << '\n';
  }
}

std::string short_real(const BigReal& x) { return x.to_string(kTextDigits); }

std::optional<BigReal> try_theta_direct(const Orbit& orbit, std::size_t n, const Params& params) {
  try {
    return theta_direct(orbit, n, params);
  } catch (const PrecisionLoss&) {
    return std::nullopt;
  }
}

// Orbits are printed in full; an untrusted tail or a precision failure makes
// the command exit with kPrecision after reporting the first untrusted index.
int precision_status(const Orbit& orbit, std::ostream& diag) {
  const bool truncated = orbit.precision_failure_at.has_value();
  const bool untrusted = orbit.trusted_depth < orbit.size();
  if (!truncated && !untrusted) return kOk;
  diag << "precision: first untrusted index " << orbit.trusted_depth + 1;
  if (truncated) diag << " (expansion stopped at step " << *orbit.precision_failure_at << ")";
  diag << "; rerun with a larger --precision\n";
  return kPrecision;
}

int cmd_expand(const Common& c, const std::string& x0_expr, bool theta_only) {
  const Params params = make_params(c);
  const Orbit orbit = expand(evaluate_seed(x0_expr, params), params);
  const ThetaSeq perron = theta_sequence(orbit, params, ThetaMethod::perron);
  const std::vector<Digit> classical = classical_digit_translate(orbit.digits, DigitDirection::to_classical);
  std::vector<std::optional<BigReal>> direct;
  for (std::size_t n = 1; n <= perron.size(); ++n) direct.push_back(try_theta_direct(orbit, n, params));

  std::ostringstream body;
  begin(body, c, "x0=" + x0_expr);
  if (c.format == "json") {
    Json j{{"config", config_json(c)}};
    j["config"]["x0"] = x0_expr;
    Json rows = Json::array();
    for (std::size_t n = 1; n <= (theta_only ? perron.size() : orbit.size()); ++n) {
      Json row{{"n", n}};
      if (!theta_only) {
        row["a"] = orbit.digit(n);
        row["b"] = classical[n - 1];
        row["x"] = format_real(orbit.future(n), params);
        row["Y"] = format_real(orbit.past(n), params);
      }
      const bool has_theta = n <= perron.size();
      row["theta_direct"] = has_theta && direct[n - 1] ? Json(format_real(*direct[n - 1], params)) : Json(nullptr);
      row["theta_perron"] = has_theta ? Json(format_real(perron(n), params)) : Json(nullptr);
      rows.push_back(row);
    }
    j["steps"] = rows;
    j["trusted_depth"] = orbit.trusted_depth;
    j["terminated_at"] = orbit.terminated_at ? Json(*orbit.terminated_at) : Json(nullptr);
    j["precision_failure_at"] = orbit.precision_failure_at ? Json(*orbit.precision_failure_at) : Json(nullptr);
    body << j.dump(2) << '\n';
  } else {
    const bool csv = c.format == "csv";
    const auto real = [&](const BigReal& x) { return csv ? format_real(x, params) : short_real(x); };
    const char* sep = csv ? "," : "  ";
    if (theta_only) {
      body << "n" << sep << "theta_direct" << sep << "theta_perron" << sep << "abs_diff\n";
      for (std::size_t n = 1; n <= perron.size(); ++n) {
        body << n << sep << (direct[n - 1] ? real(*direct[n - 1]) : "") << sep << real(perron(n)) << sep
             << (direct[n - 1] ? abs(*direct[n - 1] - perron(n)).to_string(6) : "") << '\n';
      }
    } else {
      body << "n" << sep << "a_n" << sep << "b_n" << sep << "x_n" << sep << "Y_n" << sep
           << "theta_direct" << sep << "theta_perron\n";
      for (std::size_t n = 1; n <= orbit.size(); ++n) {
        const bool has_theta = n <= perron.size();
        body << n << sep << orbit.digit(n) << sep << classical[n - 1] << sep << real(orbit.future(n)) << sep
             << real(orbit.past(n)) << sep << (has_theta && direct[n - 1] ? real(*direct[n - 1]) : "") << sep
             << (has_theta ? real(perron(n)) : "") << '\n';
      }
    }
    if (!csv) {
      body << "digits a_n: " << format_digit_list(orbit.digits) << '\n';
      body << "classical b_n: " << format_digit_list(classical) << '\n';
      body << "trusted depth: " << orbit.trusted_depth << '\n';
      if (orbit.terminated_at) body << "terminates at n=" << *orbit.terminated_at << '\n';
    }
  }
  emit(body.str(), c);
  return precision_status(orbit, std::cerr);
}

int cmd_region(const Common& c, std::optional<Digit> a, std::optional<Digit> b, Digit a_max, Digit b_max) {
  const Params params = make_params(c);
  std::vector<SubdivisionRegion> regions;
  if (a || b) {
    if (!a || !b) throw CLI::ValidationError("--a and --b must be given together");
    regions.push_back(subdivision(*a, *b, params));
  } else {
    regions = region_mesh(params, a_max, b_max);
  }
  std::ostringstream body;
  begin(body, c);
  if (c.format == "csv") {
    write_regions_csv(body, regions, params);
  } else if (c.format == "json") {
    Json list = Json::array();
    for (const auto& r : regions) list.push_back(to_json(r, params));
    body << Json{{"config", config_json(c)}, {"regions", list}}.dump(2) << '\n';
  } else {
    for (const auto& r : regions) {
      body << "region a=" << r.a << " b=" << r.b;
      if (r.degenerate) body << " (degenerate)";
      if (r.unbounded) body << " (unbounded)";
      body << ":";
      for (const auto& v : r.vertices) body << " (" << short_real(v.u) << ", " << short_real(v.v) << ")";
      body << " area=" << short_real(polygon_area(r, params)) << '\n';
    }
  }
  emit(body.str(), c);
  return kOk;
}

int cmd_bounds(const Common& c, const std::string& window_text, std::optional<Digit> l,
               std::optional<Digit> L) {
  const Params params = make_params(c);
  BoundsReport thm, cor;
  std::string what;
  if (!window_text.empty()) {
    if (l || L) throw CLI::ValidationError("use either --window or --l/--L");
    const std::vector<Digit> digits = parse_digit_list(window_text);
    if (digits.size() != 3) throw CLI::ValidationError("--window needs exactly three digits");
    const DigitWindow w{digits[0], digits[1], digits[2]};
    thm = theorem_bounds(w, params);
    cor = corollary_bounds(w, params);
    what = "window=" + format_digit_list(digits);
  } else {
    if (!l || !L) throw CLI::ValidationError("bounds needs --window or both --l and --L");
    thm = theorem_bounds(*l, *L, params);
    cor = corollary_bounds(*l, *L, params);
    what = "l=" + std::to_string(*l) + " L=" + std::to_string(*L);
  }
  const auto opt = [&](const std::optional<BigReal>& x, bool json) -> Json {
    if (!x) return nullptr;
    return json ? format_real(*x, params) : short_real(*x);
  };
  std::ostringstream body;
  begin(body, c, what);
  if (c.format == "json") {
    Json j{{"config", config_json(c)},
           {"l", thm.l},
           {"L", thm.L},
           {"classical_exception", thm.classical_exception},
           {"theorem", {{"upper", opt(thm.upper, true)}, {"lower", opt(thm.lower, true)}}},
           {"corollary", {{"upper", opt(cor.upper, true)}, {"lower", opt(cor.lower, true)}}}};
    if (!window_text.empty()) j["config"]["window"] = window_text;
    body << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    body << "form,upper,lower\n";
    body << "theorem," << (thm.upper ? format_real(*thm.upper, params) : "") << ','
         << (thm.lower ? format_real(*thm.lower, params) : "") << '\n';
    body << "corollary," << (cor.upper ? format_real(*cor.upper, params) : "") << ','
         << (cor.lower ? format_real(*cor.lower, params) : "") << '\n';
  } else {
    const auto show = [&](const std::optional<BigReal>& x) {
      return x ? short_real(*x) : std::string("none");
    };
    body << "l=" << thm.l << " L=" << thm.L << '\n';
    body << "theorem (sum of squared differences): upper " << show(thm.upper) << ", lower "
         << show(thm.lower) << '\n';
    body << "corollary (max/min difference): upper " << show(cor.upper) << ", lower "
         << show(cor.lower) << '\n';
    if (thm.classical_exception) body << "classical exception: no upper bound applies\n";
  }
  emit(body.str(), c);
  return kOk;
}

ExperimentConfig make_experiment(const Common& c, const Experiment& e) {
  ExperimentConfig config{make_params(c)};
  config.seed_count = e.seeds;
  config.rng_seed = e.rng_seed;
  config.depth = c.depth;
  config.threads = e.threads;
  if (!e.prefix.empty()) config.prefix = parse_digit_list(e.prefix);
  config.validate();
  return config;
}

std::string experiment_extra(const ExperimentConfig& config) {
  std::string s = "seeds=" + std::to_string(config.seed_count) + " rng-seed=" + std::to_string(config.rng_seed);
  if (config.prefix) s += " prefix=" + format_digit_list(*config.prefix);
  return s;
}

int cmd_sample(const Common& c, const Experiment& e) {
  const ExperimentConfig config = make_experiment(c, e);
  const Params& params = config.params;
  const std::vector<PairRecord> pairs = collect_pairs(config);
  std::ostringstream body;
  begin(body, c, experiment_extra(config));
  if (c.format == "json") {
    Json list = Json::array();
    for (const auto& p : pairs) {
      list.push_back(Json{{"x0_expr", p.x0_expr}, {"n", p.n}, {"a_next", p.a_next},
                          {"a_next2", p.a_next2}, {"theta_n", format_real(p.theta_n, params)},
                          {"theta_n1", format_real(p.theta_n1, params)}});
    }
    body << Json{{"config", jager::config_json(config)}, {"counts", {{"pairs", pairs.size()}}},
                 {"pairs", list}}.dump(2)
         << '\n';
  } else {
    write_pairs_csv(body, pairs, params);
  }
  emit(body.str(), c);
  return kOk;
}

int cmd_verify(const Common& c, const Experiment& e) {
  const ExperimentConfig config = make_experiment(c, e);
  const Params& params = config.params;
  const MembershipSummary membership = run_membership(config);
  const BoundsSummary bounds = run_bounds(config);
  std::optional<ClassicalSummary> classical;
  if (params.classical()) classical = classical_checks(config);

  const std::size_t fatal = membership.violations + bounds.upper_violations +
                            bounds.corollary_upper_violations + (classical ? classical->violations : 0);
  const char* status = fatal == 0 ? "pass" : "fail";

  std::ostringstream body;
  begin(body, c, experiment_extra(config));
  if (c.format == "json") {
    Json j{{"config", jager::config_json(config)},
           {"status", status},
           {"membership", to_json(membership, params)},
           {"bounds", to_json(bounds, params)},
           {"classical", classical ? to_json(*classical, params) : Json(nullptr)}};
    body << j.dump(2) << '\n';
  } else {
    const char* sep = c.format == "csv" ? "," : ": ";
    if (c.format == "csv") body << "check,checked,violations,fatal\n";
    const auto line = [&](const std::string& name, std::size_t checked, std::size_t violations, bool is_fatal) {
      if (c.format == "csv") {
        body << name << ',' << checked << ',' << violations << ',' << (is_fatal ? 1 : 0) << '\n';
      } else {
        body << name << sep << violations << " violations (" << checked << " checked"
             << (is_fatal ? "" : ", reported only") << ")\n";
      }
    };
    line("membership", membership.pairs, membership.violations, true);
    line("theorem upper bound", bounds.upper_checked, bounds.upper_violations, true);
    line("corollary upper bound", bounds.upper_checked, bounds.corollary_upper_violations, true);
    line("theorem lower bound", bounds.lower_checked, bounds.lower_violations, false);
    line("corollary lower bound", bounds.lower_checked, bounds.corollary_lower_violations, false);
    if (classical) {
      line(params.m() == 0 ? "triangle bound 1" : "growth-rate bound 1", classical->pairs,
           classical->violations, true);
    }
    if (c.format != "csv") {
      if (bounds.exception_skipped) {
        body << "upper checks skipped on " << bounds.exception_skipped << " classical-exception windows\n";
      }
      body << "status: " << status << '\n';
    }
  }
  emit(body.str(), c);
  return fatal == 0 ? kOk : kViolations;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-precision (m,k)-continued fractions and their Jager pairs"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "show help for every subcommand");

  Common common;
  Experiment experiment;
  std::string x0;
  std::string window;
  std::optional<Digit> l, L, a, b;
  Digit a_max = 6, b_max = 6;

  auto* expand_cmd = app.add_subcommand("expand", "digits, futures, pasts and theta of one seed");
  auto* theta_cmd = app.add_subcommand("theta", "theta sequence of one seed by both methods");
  for (auto* cmd : {expand_cmd, theta_cmd}) {
    add_common(cmd, common);
    cmd->add_option("--x0", x0, "seed: expression or prefix recipe [a1,a2,...|tail]")->required();
  }
  auto* region_cmd = app.add_subcommand("region", "subdivision regions of the Jager pair space");
  add_common(region_cmd, common);
  region_cmd->add_option("--a", a, "single region: first index");
  region_cmd->add_option("--b", b, "single region: second index");
  region_cmd->add_option("--a-max", a_max, "mesh: largest first index");
  region_cmd->add_option("--b-max", b_max, "mesh: largest second index");
  auto* bounds_cmd = app.add_subcommand("bounds", "difference bounds for a digit window or (l, L)");
  add_common(bounds_cmd, common);
  bounds_cmd->add_option("--window", window, "digit window a_{N+1},a_{N+2},a_{N+3}");
  bounds_cmd->add_option("--l", l, "smallest digit of the window");
  bounds_cmd->add_option("--L", L, "largest digit of the window");
  auto* sample_cmd = app.add_subcommand("sample", "export sampled Jager pairs");
  auto* verify_cmd = app.add_subcommand("verify", "membership, bound and classical checks");
  for (auto* cmd : {sample_cmd, verify_cmd}) {
    add_common(cmd, common);
    add_experiment(cmd, experiment);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*expand_cmd) return cmd_expand(common, x0, false);
    if (*theta_cmd) return cmd_expand(common, x0, true);
    if (*region_cmd) return cmd_region(common, a, b, a_max, b_max);
    if (*bounds_cmd) return cmd_bounds(common, window, l, L);
    if (*sample_cmd) return cmd_sample(common, experiment);
    if (*verify_cmd) return cmd_verify(common, experiment);
  } catch (const PrecisionLoss& e) {
    std::cerr << "precision failure: " << e.what() << '\n';
    return kPrecision;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
