#include "run_config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>

#include "selmer/coefficients.hpp"
#include "selmer/error.hpp"
#include "selmer/tau.hpp"

namespace selmer::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ValidationError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw ValidationError("not a number: '" + text + "'");
  return v;
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    out[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return out;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> xs;
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(trim(part));
    if (parts.size() != 3 || parts[2] != "log10") {
      throw ValidationError("grid spec must look like start:stop:log10");
    }
    const double start = parse_number(parts[0]);
    const double stop = parse_number(parts[1]);
    if (!(start > 0.0) || !(stop >= start)) throw ValidationError("grid needs 0 < start <= stop");
    for (int k = 0;; ++k) {
      const double x = start * std::pow(10.0, k);
      if (x > stop * (1.0 + 1e-12)) break;
      xs.push_back(x);
    }
  } else {
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!trim(part).empty()) xs.push_back(parse_number(trim(part)));
    }
  }
  if (xs.empty()) throw ValidationError("grid is empty");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] >= 2.0)) throw ValidationError("grid values must be >= 2");
    if (i > 0 && !(xs[i] > xs[i - 1])) throw ValidationError("grid must be strictly ascending");
  }
  return xs;
}

const std::vector<std::string>& instance_names() {
  static const std::vector<std::string> names = {"zeta", "dirichlet", "dedekind",
                                                 "rankin-delta", "rankin"};
  return names;
}

SelbergInstance make_instance(const InstanceSpec& spec) {
  std::string name = spec.name;
  std::optional<std::int64_t> d = spec.discriminant;
  if (const auto colon = name.find(':'); colon != std::string::npos) {
    try {
      d = std::stoll(name.substr(colon + 1));
    } catch (const std::exception&) {
      throw ValidationError("bad inline discriminant in '" + name + "'");
    }
    name = name.substr(0, colon);
  }

  if (name == "zeta") return SelbergInstance::zeta();
  if (name == "dirichlet" || name == "dedekind") {
    if (!d) throw ValidationError(name + " needs a discriminant (--d)");
    return name == "dirichlet" ? SelbergInstance::dirichlet(*d)
                               : SelbergInstance::dedekind_quadratic(*d);
  }
  if (name == "rankin-delta") {
    auto table = std::make_shared<const CoefficientTable>(delta_coefficients(spec.delta_coverage));
    return SelbergInstance::rankin_selberg(table, table, spec.leading);
  }
  if (name == "rankin") {
    if (spec.coeffs_f.empty()) throw ValidationError("rankin needs --coeffs");
    auto f = std::make_shared<const CoefficientTable>(load_coefficients(spec.coeffs_f, spec.weight));
    auto g = spec.coeffs_g.empty()
                 ? f
                 : std::make_shared<const CoefficientTable>(load_coefficients(spec.coeffs_g, spec.weight));
    return SelbergInstance::rankin_selberg(f, g, spec.leading);
  }
  std::string valid;
  for (const auto& n : instance_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw UnknownInstance("unknown instance '" + spec.name + "'; valid instances: " + valid);
}

unsigned resolve_thread_budget(std::optional<unsigned> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("SELMER_THREADS")) {
    try {
      return static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      throw ValidationError(std::string("SELMER_THREADS is not a number: ") + env);
    }
  }
  return 0;
}

SieveOptions sieve_options(const RunConfig& cfg) {
  SieveOptions opts;
  opts.threads = cfg.threads;
  return opts;
}

}  // namespace selmer::cli
