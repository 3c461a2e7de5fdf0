#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gaplcp/oracle.hpp"

namespace gaplcp::cli {

// Process exit codes; every outcome maps to exactly one of them.
namespace exit_code {
inline constexpr int kSolved = 0;    // solved, or unique when enumerating
inline constexpr int kUsage = 1;     // bad flags, unreadable or malformed files
inline constexpr int kInvalid = 2;   // the point produced or supplied is not a solution
inline constexpr int kNone = 3;      // no solution found (ray termination, pivot limit, none exist)
inline constexpr int kMultiple = 4;  // more than one solution exists
}  // namespace exit_code

struct SolveArgs {
  std::filesystem::path input;
  std::string solver = "lemke";  // lemke | pgs | cascade
  double tol = 1e-9;
  std::optional<std::filesystem::path> output;  // stdout when absent
  bool certify = false;                        // attach the oracle's uniqueness verdict
};

struct VerifyArgs {
  std::filesystem::path input;
  std::filesystem::path solution;
  double tol = 1e-9;
};

struct EnumerateArgs {
  std::filesystem::path input;
  double tol = 1e-9;
  std::size_t cap = kDefaultEnumerationCap;
  std::optional<std::filesystem::path> output;
};

struct GenArgs {
  std::string kind = "contact";
  std::size_t n = 3;
  std::size_t t = 2;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> output;
};

struct BenchArgs {
  std::vector<std::size_t> sizes{10, 50};
  std::size_t repetitions = 5;
  std::uint64_t seed = 1;
};

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int cmd_enumerate(const EnumerateArgs& args, std::ostream& out, std::ostream& err);
int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err);

// CSV header of cmd_bench.
inline constexpr const char* kBenchHeader = "kind,n,solver,median_wall_time_s,iterations";
int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);

}  // namespace gaplcp::cli
