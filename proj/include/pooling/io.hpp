#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pooling/instance.hpp"
#include "pooling/solver.hpp"

namespace pooling {

// Exit codes are a frozen contract for harness scripting.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDisagree = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitGuard = 3;
inline constexpr int kExitGenFailed = 4;

struct GenerationError : std::runtime_error {
  explicit GenerationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parses the JSON instance format. Numeric leaves are decimal-or-fraction
/// strings ("0.1", "7/21") and are exact; bare JSON numbers are accepted and
/// read through the same literal grammar (integers directly, floats via
/// their shortest round-trip decimal form). Throws ParseError on anything
/// structurally wrong.
PoolingInstance parse_instance(const std::string& json_text);
PoolingInstance load_instance(const std::string& path);

/// Canonical serialization: every numeric value is a fraction string.
/// parse(serialize(x)) == x, and serialize is byte-deterministic.
std::string serialize_instance(const PoolingInstance& inst);

/// Machine-readable solve report (JSON text). Indices are 1-based on the
/// wire; "p" is empty when the total outflow is zero.
std::string make_report(const PoolingInstance& inst, const Solution& sol,
                        long wall_ms);

/// Rebuilds a Solution from report text so it can be re-verified.
Solution parse_report(const std::string& json_text, const PoolingInstance& inst);

struct GenParams {
  int m = 2, n = 1, q = 1;
  std::uint64_t seed = 0;
  bool general_position = false;
  int max_retries = 1000;  // fresh seeds tried when general_position is set
};

/// Deterministic seeded instance generator. Draws small rationals
/// (denominators <= 64): lambda, mu in [0,10], c_in in [0,5],
/// c_out in [-10,0], capacities in [1,20]; mu is clamped up to
/// min_i lambda so every output stays reachable. With general_position set,
/// retries consecutive seeds until the hyperplane system passes the exact
/// general-position test, else throws GenerationError.
PoolingInstance generate_instance(const GenParams& params);

// CLI entry points; each returns a process exit code and writes
// human-readable output to `out` and diagnostics to `err`.

struct SolveArgs {
  std::string path;
  Mode mode = Mode::Exact;
  std::string report_path;  // empty: no report written
  int max_inputs = 6;
};
int run_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);

struct OracleArgs {
  std::string path;
  int grid = 0;  // 0: resolution picked from m
  int max_inputs = 6;
};
int run_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err);

struct CellsArgs {
  std::string path;
  bool unrestricted = false;
  bool check_bounds = false;
  bool check_gp = false;
};
int run_cells(const CellsArgs& args, std::ostream& out, std::ostream& err);

struct GenArgs {
  GenParams params;
  std::string out_path;  // empty: stdout
};
int run_gen(const GenArgs& args, std::ostream& out, std::ostream& err);

struct BenchArgs {
  std::string sizes;     // "m,n,q;m,n,q;..." - empty: built-in grid
  std::string csv_path;  // empty: stdout
  Mode mode = Mode::Exact;
  std::uint64_t seed = 1;
  int max_inputs = 6;
};
int run_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);

int cli_main(int argc, char** argv);

}  // namespace pooling
