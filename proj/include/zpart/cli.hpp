#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "zpart/conjecture.hpp"
#include "zpart/instance.hpp"

namespace zpart::cli {

inline constexpr int kSchemaVersion = 1;

enum class Status { Ok, Certified, Counterexample, Error };

const char* to_string(Status s);

// 0 ok, 2 certified UNSAT, 3 counterexample found, 1 error.
int exit_code(Status s);

struct CommandResult {
  Status status = Status::Ok;
  nlohmann::json payload;  // always carries "schema_version", "command" and "status"
  std::chrono::duration<double> elapsed{};

  int exit_code() const { return cli::exit_code(status); }
};

CommandResult cmd_count(const std::string& instance_path, const std::string& method, const Limits& limits = {});
CommandResult cmd_spectrum(const std::string& instance_path, const Limits& limits = {});
CommandResult cmd_stats(const std::string& instance_path, std::optional<std::uint64_t> modulus,
                        std::optional<std::pair<std::size_t, std::size_t>> pair, const Limits& limits = {});
CommandResult cmd_identity(const std::string& instance_path, std::size_t index, const Limits& limits = {});
CommandResult cmd_reduce(const std::string& cnf_path, const std::vector<unsigned>& radices,
                         const std::string& variant, const std::string& out_dir);
CommandResult cmd_estimate(const std::string& cnf_path, const std::vector<std::uint64_t>& primes,
                           const std::vector<unsigned>& radices, const Limits& limits = {});

struct ScanArgs {
  unsigned n_min = 2;
  unsigned n_max = 6;
  std::uint64_t element_bound = 8;
  std::uint64_t samples = 0;  // 0: exhaustive over the range; otherwise random samples per n
  std::uint64_t seed = 1;
};

CommandResult cmd_scan(const ScanArgs& args);

// Wraps a finished scan; status is Counterexample whenever the report lists one.
CommandResult scan_result(const ScanReport& report);

nlohmann::json scan_report_json(const ScanReport& report);

// Full command-line entry point: parses argv, runs the subcommand, prints the result.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace zpart::cli
