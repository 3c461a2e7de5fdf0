#pragma once

#include <cstddef>

#include "gaplcp/lcp.hpp"

namespace gaplcp {

struct LemkeOptions {
  std::size_t max_pivots = 0;  // 0 selects 10 * n^2 (at least 10)
  double zero_tol = 1e-10;
  // Lexicographic ratio test. When off, ties go to the lowest row index,
  // which can cycle on degenerate problems.
  bool lexicographic = true;
};

/// Lemke's complementary pivoting method with an all-ones covering vector.
///
/// The tableau [I | -M | -e | q] is carried densely together with the basis
/// bookkeeping. The returned z has exactly zero entries for nonbasic variables.
/// Throws RayTermination when the entering column has no positive entry,
/// PivotLimitExceeded, or NumericalBreakdown when a tie cannot be resolved or
/// the terminal point fails validation at 1e-8 * (1 + |q|_inf).
LcpSolution lemke_solve(const LcpProblem& problem, const LemkeOptions& opts = {});

}  // namespace gaplcp
