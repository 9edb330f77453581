#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "run_config.hpp"
#include "selmer/mertens.hpp"

namespace selmer::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // a verification check failed, or a generic error
inline constexpr int kExitUsage = 2;    // unknown instance, bad flags or config
inline constexpr int kExitCoverage = 3;
inline constexpr int kExitIo = 4;

// --- table ---------------------------------------------------------------

std::vector<MertensReport> compute_table(const RunConfig& cfg);

// CSV header: x,value,main_term,constant,residual,rel_residual,imag_residue,elapsed_s
void write_table_csv(std::ostream& out, std::span<const MertensReport> rows, bool timing);
void write_table_json(std::ostream& out, std::span<const MertensReport> rows, bool timing);

// (x, residual) pairs from a table written by either writer.
std::vector<std::pair<double, double>> read_table_residuals(std::istream& in);

// Writes through a temporary sibling file renamed into place on success;
// nothing is left behind on failure.
void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& body);

// --- subcommands (stdout receives the human-readable report) ----------------

int cmd_table(const RunConfig& cfg, std::ostream& out);
int cmd_constants(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_perron(const RunConfig& cfg, std::ostream& out);
int cmd_fit(const RunConfig& cfg, std::ostream& out);

// Maps a library exception to the documented exit code.
int exit_code_for(const std::exception& e) noexcept;

}  // namespace selmer::cli
