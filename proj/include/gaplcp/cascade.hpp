#pragma once

#include <cstddef>
#include <vector>

#include "gaplcp/contact.hpp"
#include "gaplcp/dense.hpp"
#include "gaplcp/lcp.hpp"

namespace gaplcp {

// Coupling from an earlier block `source` into the owning block. The matrix has
// one row per force of the owning block and one column per force of the
// source block.
struct Coupling {
  std::size_t source = 0;
  DenseMatrix k_tilde;

  friend bool operator==(const Coupling&, const Coupling&) = default;
};

struct CascadeBlock {
  DenseMatrix k;  // SPD, n_i x n_i
  std::vector<Coupling> couplings;
  DenseVector q1;
  DenseVector q2;

  std::size_t size() const noexcept { return q1.size(); }

  friend bool operator==(const CascadeBlock&, const CascadeBlock&) = default;
};

/// Block lower-triangular LCP whose diagonal blocks have the two-sided contact
/// form [[K_i, -K_i], [-K_i, K_i]] and whose sub-diagonal blocks are
/// [[Kt_ij, -Kt_ij], [-Kt_ij, Kt_ij]]. Every block must satisfy q_i1 + q_i2 > 0.
class CascadeProblem {
 public:
  explicit CascadeProblem(std::vector<CascadeBlock> blocks);

  std::size_t block_count() const noexcept { return blocks_.size(); }
  const std::vector<CascadeBlock>& blocks() const noexcept { return blocks_; }
  const CascadeBlock& block(std::size_t i) const { return blocks_.at(i); }
  std::size_t total_forces() const noexcept;  // sum of n_i

  friend bool operator==(const CascadeProblem&, const CascadeProblem&) = default;

 private:
  std::vector<CascadeBlock> blocks_;
};

struct CascadeBlockResult {
  ContactLcp effective;  // block LCP after the coupling shift
  ContactSolution solution;
  DenseVector q1_hat;  // q_tilde + y_star of the effective block
  DenseVector q2_hat;  // y_star - q_tilde of the effective block
};

/// Solves block by block. Block i sees the shift s_i = sum_j Kt_ij d_j from the
/// net forces d_j of the blocks already solved, and is then a contact LCP with
///   y_star = (q_i1 + q_i2) / 2,   q_tilde = (q_i1 - q_i2) / 2 + s_i.
/// The shift never touches y_star, so the gap sum of every block is the one
/// given in the input. Blocks are solved with solve_structured.
std::vector<CascadeBlockResult> solve_cascade(const CascadeProblem& p, const PgsOptions& opts = {});

/// Stacks block solutions as z = (F_1l, F_1u, F_2l, F_2u, ...), the ordering of
/// assemble_full.
DenseVector stacked_z(const std::vector<CascadeBlockResult>& results);

/// The full dense LCP. M is block lower triangular and in general not symmetric.
LcpProblem assemble_full(const CascadeProblem& p);

}  // namespace gaplcp
