#include "gaplcp/cascade.hpp"

#include <string>

#include "gaplcp/error.hpp"

namespace gaplcp {

CascadeProblem::CascadeProblem(std::vector<CascadeBlock> blocks) : blocks_(std::move(blocks)) {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const CascadeBlock& b = blocks_[i];
    const std::string where = "block " + std::to_string(i);
    const std::size_t n = b.size();
    if (b.k.rows() != n || b.k.cols() != n || b.q2.size() != n) {
      throw Error(ErrorCode::DimensionMismatch,
                  where + ": K is " + std::to_string(b.k.rows()) + "x" +
                      std::to_string(b.k.cols()) + ", q1 has " + std::to_string(n) +
                      " entries, q2 has " + std::to_string(b.q2.size()));
    }
    (void)spd_factor(b.k);
    for (std::size_t r = 0; r < n; ++r) {
      if (!(b.q1[r] + b.q2[r] > 0.0)) {
        throw Error(ErrorCode::InvariantViolation,
                    where + ": q1 + q2 must be strictly positive, entry " + std::to_string(r) +
                        " is " + std::to_string(b.q1[r] + b.q2[r]));
      }
    }
    for (const Coupling& c : b.couplings) {
      if (c.source >= i) {
        throw Error(ErrorCode::InvariantViolation,
                    where + ": coupling from block " + std::to_string(c.source) +
                        " is not strictly below the diagonal");
      }
      const std::size_t nj = blocks_[c.source].size();
      if (c.k_tilde.rows() != n || c.k_tilde.cols() != nj) {
        throw Error(ErrorCode::DimensionMismatch,
                    where + ": coupling from block " + std::to_string(c.source) + " is " +
                        std::to_string(c.k_tilde.rows()) + "x" +
                        std::to_string(c.k_tilde.cols()) + ", expected " + std::to_string(n) +
                        "x" + std::to_string(nj));
      }
    }
  }
}

std::size_t CascadeProblem::total_forces() const noexcept {
  std::size_t s = 0;
  for (const auto& b : blocks_) s += b.size();
  return s;
}

std::vector<CascadeBlockResult> solve_cascade(const CascadeProblem& p, const PgsOptions& opts) {
  std::vector<CascadeBlockResult> out;
  out.reserve(p.block_count());
  for (std::size_t i = 0; i < p.block_count(); ++i) {
    const CascadeBlock& b = p.block(i);
    const std::size_t n = b.size();

    DenseVector shift(n);
    for (const Coupling& c : b.couplings) {
      shift = shift + matvec(c.k_tilde, out[c.source].solution.d);
    }

    DenseVector y_star(n);
    DenseVector q_tilde(n);
    for (std::size_t r = 0; r < n; ++r) {
      y_star[r] = 0.5 * (b.q1[r] + b.q2[r]);
      q_tilde[r] = 0.5 * (b.q1[r] - b.q2[r]) + shift[r];
    }

    ContactLcp effective(b.k, q_tilde, y_star);
    ContactSolution sol = solve_structured(effective, opts);
    // Same ordering as gaps(): the pair sums to exactly 2 y_star whenever
    // |q_tilde| <= 3 y_star.
    DenseVector q1_hat(n);
    DenseVector q2_hat(n);
    for (std::size_t r = 0; r < n; ++r) {
      const double two_y = 2.0 * y_star[r];
      const double lower = q_tilde[r] + y_star[r];
      if (lower <= y_star[r]) {
        q2_hat[r] = two_y - lower;
        q1_hat[r] = two_y - q2_hat[r];
      } else {
        q1_hat[r] = lower;
        q2_hat[r] = two_y - lower;
      }
    }
    out.push_back({std::move(effective), std::move(sol), std::move(q1_hat), std::move(q2_hat)});
  }
  return out;
}

DenseVector stacked_z(const std::vector<CascadeBlockResult>& results) {
  std::vector<double> z;
  for (const auto& r : results) {
    z.insert(z.end(), r.solution.f_lower.begin(), r.solution.f_lower.end());
    z.insert(z.end(), r.solution.f_upper.begin(), r.solution.f_upper.end());
  }
  return DenseVector(std::move(z));
}

LcpProblem assemble_full(const CascadeProblem& p) {
  std::vector<std::size_t> offset(p.block_count());
  std::size_t dim = 0;
  for (std::size_t i = 0; i < p.block_count(); ++i) {
    offset[i] = dim;
    dim += 2 * p.block(i).size();
  }

  DenseMatrix m(dim, dim);
  std::vector<double> q(dim);
  // Writes [[A, -A], [-A, A]] with its top-left corner at (row0, col0).
  auto place = [&m](const DenseMatrix& a, std::size_t row0, std::size_t col0) {
    const std::size_t r = a.rows();
    const std::size_t c = a.cols();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        const double v = a(i, j);
        m(row0 + i, col0 + j) += v;
        m(row0 + i, col0 + c + j) -= v;
        m(row0 + r + i, col0 + j) -= v;
        m(row0 + r + i, col0 + c + j) += v;
      }
  };

  for (std::size_t i = 0; i < p.block_count(); ++i) {
    const CascadeBlock& b = p.block(i);
    const std::size_t n = b.size();
    place(b.k, offset[i], offset[i]);
    for (const Coupling& c : b.couplings) place(c.k_tilde, offset[i], offset[c.source]);
    for (std::size_t r = 0; r < n; ++r) {
      q[offset[i] + r] = b.q1[r];
      q[offset[i] + n + r] = b.q2[r];
    }
  }
  return LcpProblem(std::move(m), DenseVector(std::move(q)));
}

}  // namespace gaplcp
