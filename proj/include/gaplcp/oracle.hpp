#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gaplcp/dense.hpp"
#include "gaplcp/lcp.hpp"

namespace gaplcp {

inline constexpr std::size_t kDefaultEnumerationCap = 14;

// Bit i set means index i belongs to the support.
using SupportMask = std::uint64_t;

std::vector<std::size_t> support_indices(SupportMask mask, std::size_t n);

struct SingularSupport {
  SupportMask support = 0;
  bool consistent = false;       // M_SS z = -q_S solvable in the least-squares sense
  bool family_feasible = false;  // some member of the solution family solves the LCP
  bool family_multiple = false;  // more than one member does
};

struct EnumerationResult {
  std::vector<LcpSolution> solutions;      // deduplicated, in order of first support
  std::vector<std::size_t> multiplicity;   // supports that produced each solution
  std::vector<SupportMask> first_support;  // smallest support mask producing each solution
  std::vector<SingularSupport> singular_supports;  // ascending support mask
  bool exhaustive = false;

  // More than one solution, or a family containing more than one.
  bool multiple() const;
};

/// Brute-force enumeration of all 2^n complementary supports.
///
/// For each support S the square system M_SS z_S = -q_S is solved with full
/// pivoting LU; a smallest pivot at or below 1e-10 * |M_SS|_inf marks S
/// singular. Singular systems are tested for least-squares consistency
/// (residual <= 1e-8 * (1 + |q_S|_inf)); a consistent one describes an affine
/// family of candidate points, and a small LP decides whether that family
/// holds zero, one, or many LCP solutions. Candidates that pass validate(tol)
/// are kept, deduplicated in the max norm at distance tol.
///
/// Linear algebra here goes through Eigen, independent of the dense module
/// used by the solvers it is meant to check.
EnumerationResult enumerate_solutions(const LcpProblem& problem, double tol = 1e-9,
                                      std::size_t cap = kDefaultEnumerationCap);

enum class Uniqueness { Unique, Multiple, None };

const char* to_string(Uniqueness u);

struct UniquenessVerdict {
  Uniqueness kind = Uniqueness::None;
  std::optional<DenseVector> z;  // set iff kind == Unique
};

UniquenessVerdict certify_unique(const LcpProblem& problem, double tol = 1e-9,
                                 std::size_t cap = kDefaultEnumerationCap);
UniquenessVerdict verdict_of(const EnumerationResult& result);

}  // namespace gaplcp
