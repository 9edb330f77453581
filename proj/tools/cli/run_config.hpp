#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "selmer/lfunc.hpp"
#include "selmer/mertens.hpp"
#include "selmer/primes.hpp"

namespace selmer::cli {

enum class OutputFormat { csv, json };

struct InstanceSpec {
  std::string name = "zeta";
  std::optional<std::int64_t> discriminant;
  std::filesystem::path coeffs_f;
  std::filesystem::path coeffs_g;
  int weight = 12;
  std::uint64_t delta_coverage = 100'000;
  std::optional<double> leading;  // config-supplied c_{-m}
};

struct RunConfig {
  InstanceSpec instance;
  std::string grid = "1e2:1e6:log10";
  ReportKind kind = ReportKind::mertens3;
  std::filesystem::path out;
  std::filesystem::path in;
  OutputFormat format = OutputFormat::csv;
  unsigned threads = 0;
  std::optional<double> pmax;        // P for M (1e8) or the Perron evaluator check (1e5)
  double umax = 1e8;                 // U for M1
  double xmax = 1e8;                 // limit estimators and empirical fits
  double tol = 1e-9;
  double x = 1e3;          // perron height
  double t_scale = 1.0;    // perron: multiplier on T
  double circle_c = 0.5;   // b' = c / sqrt(log x)
  bool timing = true;
};

// Thrown for an instance name the CLI does not know (exit code 2).
class UnknownInstance : public Error {
 public:
  using Error::Error;
};

// Flat `key = value` file, '#' comments.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

// "start:stop:log10" (one point per decade) or an explicit comma list.
// Result is validated: ascending, every x >= 2.
std::vector<double> parse_grid(const std::string& spec);

// Builds the instance named by `spec`. Names: zeta, dirichlet, dedekind,
// rankin-delta, rankin; "dirichlet:-4" style inline discriminants accepted.
SelbergInstance make_instance(const InstanceSpec& spec);

const std::vector<std::string>& instance_names();

// --threads wins over SELMER_THREADS; 0 means hardware concurrency.
unsigned resolve_thread_budget(std::optional<unsigned> flag);

SieveOptions sieve_options(const RunConfig& cfg);

}  // namespace selmer::cli
