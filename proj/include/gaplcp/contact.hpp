#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "gaplcp/dense.hpp"
#include "gaplcp/error.hpp"
#include "gaplcp/lcp.hpp"

namespace gaplcp {

/// Two-sided contact LCP for n stabilizers between a lower and an upper wall:
///
///   [gamma_l]   [ K  -K] [F_l]   [ q_tilde + y_star]
///   [gamma_u] = [-K   K] [F_u] + [-q_tilde + y_star],   0 <= w  _|_  z >= 0
///
/// K maps contact forces to displacements, so it plays the role of a
/// compliance (flexibility) matrix even though it is often called the
/// stiffness matrix in the drilling literature. It must be SPD and every
/// nominal gap y_star must be strictly positive; under those conditions the
/// LCP has exactly one solution.
class ContactLcp {
 public:
  ContactLcp(DenseMatrix k, DenseVector q_tilde, DenseVector y_star);

  std::size_t size() const noexcept { return y_star_.size(); }
  const DenseMatrix& k() const noexcept { return k_; }
  const DenseVector& q_tilde() const noexcept { return q_tilde_; }
  const DenseVector& y_star() const noexcept { return y_star_; }
  const LowerTriangularFactor& factor() const noexcept { return factor_; }

  friend bool operator==(const ContactLcp& a, const ContactLcp& b) {
    return a.k_ == b.k_ && a.q_tilde_ == b.q_tilde_ && a.y_star_ == b.y_star_;
  }

 private:
  DenseMatrix k_;
  DenseVector q_tilde_;
  DenseVector y_star_;
  LowerTriangularFactor factor_;
};

struct ContactSolution {
  DenseVector f_lower;
  DenseVector f_upper;
  DenseVector gamma_lower;
  DenseVector gamma_upper;
  DenseVector d;  // signed net force f_lower - f_upper

  std::size_t iterations = 0;
  double residual = 0.0;  // solver-specific optimality residual, 0 when not applicable

  DenseVector z() const { return concat(f_lower, f_upper); }
  DenseVector w() const { return concat(gamma_lower, gamma_upper); }
};

struct PgsOptions {
  // Converged once max_i dist(0, subdifferential_i) <= rel_tol * (1 + |q_tilde + y_star|_inf).
  double rel_tol = 1e-12;
  std::size_t max_sweeps = 0;  // 0 selects 200 * n
};

/// Builds the 2n-dimensional LCP, lower block first.
LcpProblem assemble(const ContactLcp& c);

/// Feasible point from d = -K^{-1}(q_tilde + y_star): z = (d+, d-), for which
/// gamma_l = 0 and gamma_u = 2 y_star. Feasible, but generally not complementary.
LcpSolution feasible_point(const ContactLcp& c);

struct Gaps {
  DenseVector lower;
  DenseVector upper;
};

/// gamma_l = K d + q_tilde + y_star and gamma_u = 2 y_star - gamma_l.
///
/// Whichever of the two is below y_star is produced first and the other is
/// recovered from 2 y_star by subtraction. For every d with
/// -2 y_star <= K d + q_tilde + y_star <= 4 y_star (in particular every feasible
/// point) both subtractions are exact, so gamma_l + gamma_u == 2 y_star holds
/// bit for bit in floating point.
Gaps gaps(const ContactLcp& c, const DenseVector& d);

struct ForcePair {
  DenseVector lower;
  DenseVector upper;
};

/// Positive and negative parts of d: lower_i = max(d_i, 0), upper_i = max(-d_i, 0).
ForcePair split_signed(const DenseVector& d);

/// max_i f_lower_i * f_upper_i; zero for any genuine solution.
double force_complementarity(const DenseVector& f_lower, const DenseVector& f_upper);
double force_complementarity(const ContactSolution& sol);

/// Canonical ContactSolution from the net force d (split plus gaps).
ContactSolution solution_from_net_force(const ContactLcp& c, const DenseVector& d);

/// Canonical ContactSolution from a raw 2n vector z = (F_l, F_u), normalized
/// through d = F_l - F_u.
ContactSolution solution_from_lcp(const ContactLcp& c, const DenseVector& z);

/// Structure-exploiting solver. Minimizes the strictly convex function
///   f(d) = 1/2 d^T K d + (q_tilde + y_star)^T d + sum_i 2 y_star_i max(-d_i, 0)
/// by cyclic coordinate descent with exact one-dimensional minimization, whose
/// minimizer is the net force of the unique LCP solution.
///
/// Throws MaxIterationsExceededError (carrying the last iterate) when the sweep
/// budget runs out before the residual test passes.
ContactSolution solve_structured(const ContactLcp& c, const PgsOptions& opts = {});

/// max_i dist(0, partial_i f(d)) for the function above.
double structured_residual(const ContactLcp& c, const DenseVector& d);

class MaxIterationsExceededError : public Error {
 public:
  MaxIterationsExceededError(ContactSolution last, double residual)
      : Error(ErrorCode::MaxIterationsExceeded,
              "residual " + std::to_string(residual) + " after " +
                  std::to_string(last.iterations) + " sweeps"),
        last_(std::move(last)) {}

  const ContactSolution& last_iterate() const noexcept { return last_; }

 private:
  ContactSolution last_;
};

}  // namespace gaplcp
