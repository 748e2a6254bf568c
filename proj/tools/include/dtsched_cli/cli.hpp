#pragma once

// Command implementations behind the `dtsched` executable. Each returns the
// process exit code; argument parsing lives in main.cpp.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dtsched::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitRescheduling = 3;

enum class OutputFormat { kJson, kCsv };

struct CliConfig {
  std::filesystem::path machine_path;
  std::filesystem::path order_path;
  std::filesystem::path prices_path;
  std::optional<std::filesystem::path> disturbances_path;
  int window = 2;
  std::optional<std::filesystem::path> out_path;  // stdout when unset
  OutputFormat format = OutputFormat::kJson;
  std::filesystem::path data_dir = ".dtsched";
  std::optional<std::string> against;  // "benchmark"
  std::vector<std::uint64_t> run_ids;
};

// Open-loop optimum for the order.
int cmd_plan(const CliConfig& cfg, std::ostream& out, std::ostream& err);
// Closed-loop look-ahead run; the log is appended to the store.
int cmd_run(const CliConfig& cfg, std::ostream& out, std::ostream& err);
// Utilisation-first benchmark executed as a fixed schedule; also stored.
int cmd_benchmark(const CliConfig& cfg, std::ostream& out, std::ostream& err);
// Two stored runs, one stored run against the benchmark, or (no ids) a fresh
// look-ahead run against the benchmark.
int cmd_compare(const CliConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace dtsched::cli
