#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include <json.hpp>

#include "selmer/analysis.hpp"
#include "selmer/error.hpp"

namespace selmer::cli {

namespace {

using nlohmann::ordered_json;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double clamp_quad_tol(double tol) { return std::clamp(tol, 1e-14, 1e-6); }

std::uint64_t cap_to_coverage(const SelbergInstance& f, double x) {
  const double cap = static_cast<double>(f.coverage());
  return static_cast<std::uint64_t>(std::min(x, cap));
}

std::string_view source_name(LeadingSource::Kind k) {
  switch (k) {
    case LeadingSource::Kind::exact: return "exact";
    case LeadingSource::Kind::analytic_l1: return "analytic-L1";
    case LeadingSource::Kind::config: return "config";
    case LeadingSource::Kind::empirical_fit: return "empirical-fit";
  }
  return "?";
}

void emit(const RunConfig& cfg, std::ostream& out, const ordered_json& doc,
          const std::string& text) {
  if (!cfg.out.empty()) {
    write_file_atomic(cfg.out, [&](std::ostream& os) {
      if (cfg.format == OutputFormat::json) {
        os << doc.dump(2) << '\n';
      } else {
        os << text;
      }
    });
  }
  if (cfg.format == OutputFormat::json && cfg.out.empty()) {
    out << doc.dump(2) << '\n';
  } else {
    out << text;
  }
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    cells.push_back(cell);
  }
  return cells;
}

double parse_cell(const std::string& cell, std::size_t line_no) {
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (cell.empty() || end != cell.c_str() + cell.size()) {
    throw FormatError("not a number: '" + cell + "'", line_no);
  }
  return v;
}

}  // namespace

// --- table ---------------------------------------------------------------

std::vector<MertensReport> compute_table(const RunConfig& cfg) {
  const std::vector<double> xs = parse_grid(cfg.grid);
  const SelbergInstance f = make_instance(cfg.instance);
  f.require_coverage(static_cast<std::uint64_t>(xs.back()));
  const SieveOptions opts = sieve_options(cfg);

  ReportConstants constants;
  if (cfg.kind != ReportKind::pnt) {
    constants.leading = resolve_leading(f, cfg.xmax, opts);
  }
  if (cfg.kind == ReportKind::mertens2 || cfg.kind == ReportKind::mertens1) {
    const auto P = cap_to_coverage(f, cfg.pmax.value_or(1e8));
    constants.M = mertens_constant_M(f, *constants.leading, P, opts).value;
  }
  if (cfg.kind == ReportKind::mertens1) {
    const double U = static_cast<double>(cap_to_coverage(f, cfg.umax));
    const double xm = static_cast<double>(cap_to_coverage(f, cfg.xmax));
    constants.M1 = mertens_constant_M1(f, *constants.M, U, xm, opts).value;
  }
  return reports_on_grid(f, cfg.kind, xs, constants, opts);
}

void write_table_csv(std::ostream& out, std::span<const MertensReport> rows, bool timing) {
  out << "x,value,main_term,constant,residual,rel_residual,imag_residue,elapsed_s\n";
  for (const auto& r : rows) {
    out << num(r.x) << ',' << num(r.value) << ',' << num(r.main_term) << ','
        << num(r.constant_used) << ',' << num(r.residual) << ',' << num(r.rel_residual) << ','
        << num(r.imag_residue) << ',' << num(timing ? r.elapsed_seconds : 0.0) << '\n';
  }
}

void write_table_json(std::ostream& out, std::span<const MertensReport> rows, bool timing) {
  ordered_json doc;
  doc["instance"] = rows.empty() ? "" : rows.front().instance;
  doc["kind"] = rows.empty() ? "" : std::string(to_string(rows.front().kind));
  doc["rows"] = ordered_json::array();
  for (const auto& r : rows) {
    doc["rows"].push_back({{"x", r.x},
                           {"value", r.value},
                           {"main_term", r.main_term},
                           {"constant", r.constant_used},
                           {"residual", r.residual},
                           {"rel_residual", r.rel_residual},
                           {"imag_residue", r.imag_residue},
                           {"elapsed_s", timing ? r.elapsed_seconds : 0.0}});
  }
  out << doc.dump(2) << '\n';
}

std::vector<std::pair<double, double>> read_table_residuals(std::istream& in) {
  std::vector<std::pair<double, double>> points;
  in >> std::ws;
  if (in.peek() == '{') {
    ordered_json doc;
    try {
      doc = ordered_json::parse(in);
      for (const auto& row : doc.at("rows")) {
        points.emplace_back(row.at("x").get<double>(), row.at("residual").get<double>());
      }
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("bad JSON table: ") + e.what(), 0);
    }
    return points;
  }

  std::string line;
  std::size_t line_no = 0;
  std::size_t col_x = 0, col_r = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split_csv(line);
    if (!header) {
      const auto find = [&](const char* name) {
        const auto it = std::find(cells.begin(), cells.end(), name);
        if (it == cells.end()) throw FormatError(std::string("header lacks column ") + name, line_no);
        return static_cast<std::size_t>(it - cells.begin());
      };
      col_x = find("x");
      col_r = find("residual");
      header = true;
      continue;
    }
    if (cells.size() <= std::max(col_x, col_r)) throw FormatError("short row", line_no);
    points.emplace_back(parse_cell(cells[col_x], line_no), parse_cell(cells[col_r], line_no));
  }
  if (!header) throw FormatError("empty table", line_no);
  return points;
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& body) {
  namespace fs = std::filesystem;
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  try {
    {
      std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
      if (!os) throw IoError("cannot open " + tmp.string() + " for writing");
      body(os);
      os.flush();
      if (!os) throw IoError("write to " + tmp.string() + " failed");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename onto " + path.string() + ": " + ec.message());
  } catch (...) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw;
  }
}

int cmd_table(const RunConfig& cfg, std::ostream& out) {
  const auto rows = compute_table(cfg);
  const auto body = [&](std::ostream& os) {
    if (cfg.format == OutputFormat::json) {
      write_table_json(os, rows, cfg.timing);
    } else {
      write_table_csv(os, rows, cfg.timing);
    }
  };
  if (cfg.out.empty()) {
    body(out);
  } else {
    write_file_atomic(cfg.out, body);
    out << "wrote " << rows.size() << " rows to " << cfg.out.string() << '\n';
  }
  return kExitOk;
}

// --- constants -----------------------------------------------------------

int cmd_constants(const RunConfig& cfg, std::ostream& out) {
  const SelbergInstance f = make_instance(cfg.instance);
  const SieveOptions opts = sieve_options(cfg);
  const auto P = cap_to_coverage(f, cfg.pmax.value_or(1e8));
  const double U = static_cast<double>(cap_to_coverage(f, cfg.umax));
  const double xm = static_cast<double>(cap_to_coverage(f, cfg.xmax));
  if (P < 1000 || U < 1e4) {
    throw CoverageError("constants need P >= 1000 and U >= 1e4", f.coverage());
  }

  const LeadingCoefficient lead = resolve_leading(f, cfg.xmax, opts);
  const ConstantEstimate M = mertens_constant_M(f, lead, P, opts);
  const double M_limit = mertens_constant_M_limit(f, xm, opts);
  const M1Estimate M1 = mertens_constant_M1(f, M.value, U, xm, opts);

  ordered_json doc;
  doc["instance"] = f.name();
  doc["degree"] = f.degree();
  doc["pole_order"] = f.pole_order();
  doc["leading"] = {{"value", lead.value.real()},
                    {"uncertainty", lead.uncertainty},
                    {"source", source_name(lead.source)}};
  doc["M"] = {{"value", M.value}, {"tail_bound", M.tail_bound}, {"P", static_cast<double>(P)}};
  doc["M_limit"] = {{"value", M_limit}, {"x", xm}, {"gap", std::abs(M.value - M_limit)}};
  doc["M1"] = {{"value", M1.value},
               {"integral", M1.integral},
               {"tail_estimate", M1.tail_estimate},
               {"U", U},
               {"limit_value", M1.limit_value},
               {"x", xm},
               {"gap", M1.gap},
               {"inconsistent", M1.inconsistent}};
  if (M1.envelope) doc["M1"]["envelope_C"] = M1.envelope->C_estimate;

  std::ostringstream text;
  text << "instance      " << f.name() << "  (k = " << f.degree() << ", m = " << f.pole_order()
       << ")\n";
  text << "c_{-m}        " << short_num(lead.value.real()) << "  +/- " << short_num(lead.uncertainty)
       << "  [" << source_name(lead.source) << "]\n";
  text << "M             " << short_num(M.value) << "  (P = " << P << ", tail <= "
       << short_num(M.tail_bound) << ")\n";
  text << "M (limit)     " << short_num(M_limit) << "  (x = " << short_num(xm)
       << ", gap " << short_num(std::abs(M.value - M_limit)) << ")\n";
  text << "M1            " << short_num(M1.value) << "  (U = " << short_num(U) << ", tail ~ "
       << short_num(M1.tail_estimate) << ", not added)\n";
  text << "M1 (limit)    " << short_num(M1.limit_value) << "  (gap " << short_num(M1.gap) << ")\n";
  if (M1.inconsistent) text << "warning: M1 estimators disagree by more than 1e-2\n";
  emit(cfg, out, doc, text.str());
  return kExitOk;
}

// --- verify --------------------------------------------------------------

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  struct Check {
    std::string name;
    double param;
    double error;
    double tol;
  };
  std::vector<Check> checks;
  const double quad_tol = clamp_quad_tol(cfg.tol * 1e-3);

  for (const double w : {0.1, 1.0, 5.0}) {
    const auto r = circle_identity_report(w, quad_tol);
    checks.push_back({"full-circle", w, r.full_circle_error, cfg.tol / 10});
    checks.push_back({"theta-weighted-circle", w, r.weighted_error, cfg.tol});
    checks.push_back({"log-integral", w, r.log_integral_error, cfg.tol});
  }
  checks.push_back({"euler-gamma", 0.0, std::abs(gamma_euler() - kEulerGamma), 1e-12});
  for (const double w : {1e-3, 0.1, 1.0, 5.0, 20.0}) {
    const double err = std::abs(ein(w) - (kEulerGamma + std::log(w) + exp_integral_E1(w)));
    checks.push_back({"ein-e1", w, err, cfg.tol / 10});
  }

  bool all = true;
  ordered_json doc = ordered_json::array();
  std::ostringstream text;
  for (const auto& c : checks) {
    const bool ok = c.error <= c.tol;
    all = all && ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s  %-22s w=%-6g err=%.3e tol=%.1e\n", ok ? "PASS" : "FAIL",
                  c.name.c_str(), c.param, c.error, c.tol);
    text << buf;
    doc.push_back({{"check", c.name}, {"w", c.param}, {"error", c.error}, {"tol", c.tol},
                   {"pass", ok}});
  }
  text << (all ? "all checks passed\n" : "some checks FAILED\n");
  emit(cfg, out, doc, text.str());
  return all ? kExitOk : kExitFailure;
}

// --- perron --------------------------------------------------------------

int cmd_perron(const RunConfig& cfg, std::ostream& out) {
  const SelbergInstance f = make_instance(cfg.instance);
  ContourSpec spec = ContourSpec::for_x(cfg.x, cfg.circle_c, clamp_quad_tol(cfg.tol / 10));
  if (!(cfg.t_scale > 0.0)) throw ValidationError("--tmul must be positive");
  spec.T *= cfg.t_scale;
  spec.validate();
  const auto P = static_cast<std::uint64_t>(cfg.pmax.value_or(1e5));
  const PerronResult r = perron_truncated(f, spec, P, sieve_options(cfg));

  ordered_json doc;
  doc["instance"] = f.name();
  doc["x"] = spec.x;
  doc["b"] = spec.b;
  doc["T"] = spec.T;
  doc["integral_re"] = r.integral.real();
  doc["integral_im"] = r.integral.imag();
  doc["partial_sum"] = r.partial_sum;
  doc["difference"] = r.difference;
  doc["quad_error"] = r.quad_error;
  doc["nodes"] = r.nodes;
  doc["evaluator_gap"] = r.evaluator_gap;
  doc["evaluator_tail_bound"] = r.evaluator_tail_bound;

  std::ostringstream text;
  text << "instance       " << f.name() << "\n";
  text << "x, b, T        " << short_num(spec.x) << ", " << short_num(spec.b) << ", "
       << short_num(spec.T) << "\n";
  text << "integral       " << short_num(r.integral.real()) << " + " << short_num(r.integral.imag())
       << "i\n";
  text << "partial sum    " << short_num(r.partial_sum) << "\n";
  text << "difference     " << short_num(r.difference) << "\n";
  text << "quad error     " << short_num(r.quad_error) << "  (" << r.nodes << " nodes)\n";
  text << "evaluator gap  " << short_num(r.evaluator_gap) << "  (Euler product, P = " << P
       << ", tail bound " << short_num(r.evaluator_tail_bound) << ")\n";
  emit(cfg, out, doc, text.str());
  return kExitOk;
}

// --- fit -----------------------------------------------------------------

int cmd_fit(const RunConfig& cfg, std::ostream& out) {
  if (cfg.in.empty()) throw ValidationError("fit needs --in <table>");
  std::ifstream in(cfg.in);
  if (!in) throw IoError("cannot open " + cfg.in.string());
  const auto points = read_table_residuals(in);
  const DecayFit fit = fit_decay(points);

  ordered_json doc;
  doc["points"] = points.size();
  doc["dropped"] = fit.dropped;
  doc["C_estimate"] = fit.C_estimate;
  doc["intercept"] = fit.intercept;
  doc["rms_misfit"] = fit.rms_misfit;

  std::ostringstream text;
  text << "points      " << points.size() << " (" << fit.dropped << " dropped)\n";
  text << "C_estimate  " << num(fit.C_estimate) << "\n";
  text << "intercept   " << num(fit.intercept) << "\n";
  text << "rms_misfit  " << num(fit.rms_misfit) << "\n";
  emit(cfg, out, doc, text.str());
  return kExitOk;
}

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const UnknownInstance*>(&e)) return kExitUsage;
  if (dynamic_cast<const CoverageError*>(&e)) return kExitCoverage;
  if (dynamic_cast<const CapacityError*>(&e)) return kExitCoverage;
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  if (dynamic_cast<const ValidationError*>(&e)) return kExitUsage;
  return kExitFailure;
}

}  // namespace selmer::cli
