#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "run_config.hpp"
#include "selmer/error.hpp"

using namespace selmer;
using namespace selmer::cli;

namespace {

struct Flags {
  RunConfig cfg;
  std::string instance = "zeta";
  std::optional<std::int64_t> d;
  std::string kind = "mertens3";
  std::string format = "csv";
  std::optional<unsigned> threads;
  std::optional<double> pmax;
  double coverage = 1e5;
  std::optional<double> leading;
  bool no_timing = false;
  std::string config;  // consumed before parsing; declared so --help lists it
};

void add_instance_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--instance", f.instance,
                  "zeta | dirichlet | dedekind | rankin-delta | rankin (dirichlet:-4 style allowed)");
  sub->add_option("--d", f.d, "fundamental discriminant for dirichlet / dedekind");
  sub->add_option("--coeffs", f.cfg.instance.coeffs_f, "coefficient file for rankin (f)");
  sub->add_option("--coeffs-g", f.cfg.instance.coeffs_g, "second coefficient file (g); defaults to f");
  sub->add_option("--weight", f.cfg.instance.weight, "weight of the coefficient files");
  sub->add_option("--coverage", f.coverage, "tau coverage for rankin-delta");
  sub->add_option("--leading", f.leading, "c_{-m} for rankin instances (skips the empirical fit)");
}

void add_common_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "flat key = value file; flags override it");
  sub->add_option("--threads", f.threads, "worker threads (0 = hardware); overrides SELMER_THREADS");
  sub->add_option("--out", f.cfg.out, "output file (written atomically)");
  sub->add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
}

void add_truncation_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--pmax", f.pmax, "prime bound P for M");
  sub->add_option("--umax", f.cfg.umax, "integration bound U for M1");
  sub->add_option("--xmax", f.cfg.xmax, "x for limit estimators and empirical fits");
}

// argv with the config file's `key = value` pairs spliced in right after the
// subcommand, so that later (command-line) occurrences win.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.empty()) return args;
  std::vector<std::string> injected;
  for (const auto& [key, value] : read_config_file(path)) {
    if (key == "config") continue;
    if (value == "true") {
      injected.push_back("--" + key);
    } else if (value != "false") {
      injected.push_back("--" + key);
      injected.push_back(value);
    }
  }
  args.insert(args.begin() + 1, injected.begin(), injected.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"selmer: Mertens-type theorems for concrete Selberg-class L-functions"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  Flags f;
  auto* table = app.add_subcommand("table", "residual table over an x grid");
  add_instance_flags(table, f);
  add_common_flags(table, f);
  add_truncation_flags(table, f);
  table->add_option("--kind", f.kind, "mertens1 | mertens2 | mertens3 | pnt");
  table->add_option("--xs", f.cfg.grid, "start:stop:log10 or a comma list");
  table->add_flag("--no-timing", f.no_timing, "write elapsed_s as 0 (byte-stable output)");

  auto* constants = app.add_subcommand("constants", "c_{-m}, M and M1 with error reports");
  add_instance_flags(constants, f);
  add_common_flags(constants, f);
  add_truncation_flags(constants, f);

  auto* verify = app.add_subcommand("verify", "exponential-integral and circle identities");
  add_common_flags(verify, f);
  verify->add_option("--tol", f.cfg.tol, "tolerance of the quadrature identities");

  auto* perron = app.add_subcommand("perron", "truncated Perron integral against the partial sum");
  add_instance_flags(perron, f);
  add_common_flags(perron, f);
  perron->add_option("--x", f.cfg.x, "height x (<= 1e4)");
  perron->add_option("--tmul", f.cfg.t_scale, "multiplier on T = exp(sqrt(log x))");
  perron->add_option("--pmax", f.pmax, "prime bound of the Euler-product cross-check");
  perron->add_option("--tol", f.cfg.tol, "quadrature tolerance x 10");

  auto* fit = app.add_subcommand("fit", "decay fit of the residual column of a table");
  add_common_flags(fit, f);
  fit->add_option("--in", f.cfg.in, "table written by `selmer table`")->required();

  try {
    auto args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }

  try {
    RunConfig& cfg = f.cfg;
    cfg.instance.name = f.instance;
    cfg.instance.discriminant = f.d;
    cfg.instance.delta_coverage = static_cast<std::uint64_t>(f.coverage);
    cfg.instance.leading = f.leading;
    cfg.pmax = f.pmax;
    cfg.format = f.format == "json" ? OutputFormat::json : OutputFormat::csv;
    cfg.timing = !f.no_timing;
    cfg.threads = resolve_thread_budget(f.threads);
    const auto kind = parse_report_kind(f.kind);
    if (!kind) throw ValidationError("unknown kind '" + f.kind + "'");
    cfg.kind = *kind;

    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "table") {
      parse_grid(cfg.grid);  // validated before any work
      return cmd_table(cfg, std::cout);
    }
    if (name == "constants") return cmd_constants(cfg, std::cout);
    if (name == "verify") return cmd_verify(cfg, std::cout);
    if (name == "perron") return cmd_perron(cfg, std::cout);
    if (name == "fit") return cmd_fit(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitFailure;
}
