#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gaplcp/dense.hpp"

namespace gaplcp {

// LCP (q, M): find z >= 0 with w = q + M z >= 0 and z^T w = 0.
class LcpProblem {
 public:
  LcpProblem(DenseMatrix m, DenseVector q);

  std::size_t dim() const noexcept { return q_.size(); }
  const DenseMatrix& m() const noexcept { return m_; }
  const DenseVector& q() const noexcept { return q_; }

  friend bool operator==(const LcpProblem&, const LcpProblem&) = default;

 private:
  DenseMatrix m_;
  DenseVector q_;
};

struct LcpSolution {
  DenseVector z;
  DenseVector w;
  double complementarity_gap = 0.0;  // z^T w
  std::string solver_tag;
  std::size_t iterations = 0;
};

// Builds an LcpSolution with w and the gap recomputed from the problem data.
LcpSolution make_solution(const LcpProblem& problem, DenseVector z, std::string solver_tag,
                          std::size_t iterations);

/// Returns q + M z.
DenseVector assemble_w(const LcpProblem& problem, const DenseVector& z);

enum class ViolationKind { NegativeZ, NegativeW, Complementarity };

const char* to_string(ViolationKind kind);

struct Violation {
  std::size_t index = 0;
  ViolationKind kind = ViolationKind::NegativeZ;
  double magnitude = 0.0;
};

struct ValidationReport {
  double min_z = 0.0;
  double min_w = 0.0;
  double comp_gap = 0.0;
  bool feasible = false;
  bool solved = false;
  std::vector<Violation> per_index_violations;
  // z_i and w_i both within tol of zero: admissible boundary contact, not a violation.
  std::vector<std::size_t> degenerate;
};

/// Checks z >= 0, q + M z >= 0 elementwise against the absolute tolerance, and
/// the complementarity gap against tol * (1 + |q|_inf + |z|_inf). Per-index
/// complementarity violations use the same scaled bound on |z_i w_i|.
ValidationReport validate(const LcpProblem& problem, const DenseVector& z, double tol);

}  // namespace gaplcp
