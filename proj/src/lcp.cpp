#include "gaplcp/lcp.hpp"

#include <algorithm>
#include <cmath>

#include "gaplcp/error.hpp"

namespace gaplcp {

LcpProblem::LcpProblem(DenseMatrix m, DenseVector q) : m_(std::move(m)), q_(std::move(q)) {
  if (!m_.square() || m_.rows() != q_.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "LCP matrix is " + std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()) +
                    " but q has length " + std::to_string(q_.size()));
  }
}

DenseVector assemble_w(const LcpProblem& problem, const DenseVector& z) {
  if (z.size() != problem.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "z has length " + std::to_string(z.size()) +
                                                  ", problem dimension is " +
                                                  std::to_string(problem.dim()));
  }
  return problem.q() + matvec(problem.m(), z);
}

LcpSolution make_solution(const LcpProblem& problem, DenseVector z, std::string solver_tag,
                          std::size_t iterations) {
  LcpSolution out;
  out.w = assemble_w(problem, z);
  out.complementarity_gap = dot(z, out.w);
  out.z = std::move(z);
  out.solver_tag = std::move(solver_tag);
  out.iterations = iterations;
  return out;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NegativeZ: return "negative_z";
    case ViolationKind::NegativeW: return "negative_w";
    case ViolationKind::Complementarity: return "complementarity";
  }
  return "unknown";
}

ValidationReport validate(const LcpProblem& problem, const DenseVector& z, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "validate: tol must be positive");
  const DenseVector w = assemble_w(problem, z);

  ValidationReport report;
  report.min_z = z.empty() ? 0.0 : z.min();
  report.min_w = w.empty() ? 0.0 : w.min();
  report.comp_gap = dot(z, w);

  const double gap_bound = tol * (1.0 + problem.q().norm_inf() + z.norm_inf());
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] < -tol) report.per_index_violations.push_back({i, ViolationKind::NegativeZ, -z[i]});
    if (w[i] < -tol) report.per_index_violations.push_back({i, ViolationKind::NegativeW, -w[i]});
    const double prod = std::abs(z[i] * w[i]);
    if (prod > gap_bound) {
      report.per_index_violations.push_back({i, ViolationKind::Complementarity, prod});
    }
    if (std::abs(z[i]) <= tol && std::abs(w[i]) <= tol) report.degenerate.push_back(i);
  }

  report.feasible = report.min_z >= -tol && report.min_w >= -tol;
  report.solved = report.feasible && std::abs(report.comp_gap) <= gap_bound;
  return report;
}

}  // namespace gaplcp
