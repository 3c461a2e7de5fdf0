#include "gaplcp/contact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gaplcp {

ContactLcp::ContactLcp(DenseMatrix k, DenseVector q_tilde, DenseVector y_star)
    : k_(std::move(k)),
      q_tilde_(std::move(q_tilde)),
      y_star_(std::move(y_star)),
      factor_(spd_factor(k_)) {
  const std::size_t n = k_.rows();
  if (q_tilde_.size() != n || y_star_.size() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "K is " + std::to_string(n) + "x" + std::to_string(n) + ", q_tilde has " +
                    std::to_string(q_tilde_.size()) + " entries, y_star has " +
                    std::to_string(y_star_.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(y_star_[i] > 0.0)) {
      throw Error(ErrorCode::InvariantViolation,
                  "y_star[" + std::to_string(i) + "] = " + std::to_string(y_star_[i]) +
                      " must be strictly positive");
    }
  }
}

LcpProblem assemble(const ContactLcp& c) {
  const std::size_t n = c.size();
  DenseMatrix m(2 * n, 2 * n);
  std::vector<double> q(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double kij = c.k()(i, j);
      m(i, j) = kij;
      m(i, n + j) = -kij;
      m(n + i, j) = -kij;
      m(n + i, n + j) = kij;
    }
    q[i] = c.q_tilde()[i] + c.y_star()[i];
    q[n + i] = -c.q_tilde()[i] + c.y_star()[i];
  }
  return LcpProblem(std::move(m), DenseVector(std::move(q)));
}

Gaps gaps(const ContactLcp& c, const DenseVector& d) {
  const std::size_t n = c.size();
  if (d.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "d has length " + std::to_string(d.size()) +
                                                  ", expected " + std::to_string(n));
  }
  const DenseVector kd = matvec(c.k(), d);
  Gaps out{DenseVector(n), DenseVector(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double y = c.y_star()[i];
    const double two_y = 2.0 * y;
    const double g = kd[i] + (c.q_tilde()[i] + y);
    if (g <= y) {
      out.upper[i] = two_y - g;
      out.lower[i] = two_y - out.upper[i];
    } else {
      out.lower[i] = g;
      out.upper[i] = two_y - g;
    }
  }
  return out;
}

ForcePair split_signed(const DenseVector& d) {
  ForcePair out{DenseVector(d.size()), DenseVector(d.size())};
  for (std::size_t i = 0; i < d.size(); ++i) {
    // d_i = 0 (including -0.0) leaves both parts at +0.0
    if (d[i] > 0.0) out.lower[i] = d[i];
    if (d[i] < 0.0) out.upper[i] = -d[i];
  }
  return out;
}

double force_complementarity(const DenseVector& f_lower, const DenseVector& f_upper) {
  if (f_lower.size() != f_upper.size()) {
    throw Error(ErrorCode::DimensionMismatch, "force vectors differ in length");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < f_lower.size(); ++i) m = std::max(m, f_lower[i] * f_upper[i]);
  return m;
}

double force_complementarity(const ContactSolution& sol) {
  return force_complementarity(sol.f_lower, sol.f_upper);
}

ContactSolution solution_from_net_force(const ContactLcp& c, const DenseVector& d) {
  Gaps g = gaps(c, d);
  ForcePair f = split_signed(d);
  ContactSolution out;
  out.f_lower = std::move(f.lower);
  out.f_upper = std::move(f.upper);
  out.gamma_lower = std::move(g.lower);
  out.gamma_upper = std::move(g.upper);
  out.d = d;
  return out;
}

ContactSolution solution_from_lcp(const ContactLcp& c, const DenseVector& z) {
  const std::size_t n = c.size();
  if (z.size() != 2 * n) {
    throw Error(ErrorCode::DimensionMismatch, "z has length " + std::to_string(z.size()) +
                                                  ", expected " + std::to_string(2 * n));
  }
  return solution_from_net_force(c, z.segment(0, n) - z.segment(n, n));
}

LcpSolution feasible_point(const ContactLcp& c) {
  const DenseVector d = -1.0 * spd_solve(c.factor(), c.q_tilde() + c.y_star());
  const ContactSolution s = solution_from_net_force(c, d);
  LcpSolution out;
  out.z = s.z();
  out.w = s.w();
  out.complementarity_gap = dot(out.z, out.w);
  out.solver_tag = "feasible_point";
  return out;
}

namespace {

// Distance from 0 to the i-th partial subdifferential, given g = K d + q_tilde + y_star.
double coordinate_residual(double d, double g, double two_y) {
  if (d > 0.0) return std::abs(g);
  if (d < 0.0) return std::abs(g - two_y);
  return std::max({0.0, -g, g - two_y});
}

DenseVector offset_of(const ContactLcp& c) { return c.q_tilde() + c.y_star(); }

}  // namespace

double structured_residual(const ContactLcp& c, const DenseVector& d) {
  const DenseVector g = matvec(c.k(), d) + offset_of(c);
  double r = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    r = std::max(r, coordinate_residual(d[i], g[i], 2.0 * c.y_star()[i]));
  }
  return r;
}

ContactSolution solve_structured(const ContactLcp& c, const PgsOptions& opts) {
  const std::size_t n = c.size();
  const DenseMatrix& k = c.k();
  const DenseVector b = offset_of(c);
  const double tol = opts.rel_tol * (1.0 + b.norm_inf());
  const std::size_t max_sweeps = opts.max_sweeps > 0 ? opts.max_sweeps : 200 * n;

  DenseVector d(n);
  std::size_t sweeps = 0;
  double res = structured_residual(c, d);
  while (res > tol) {
    if (sweeps >= max_sweeps) {
      ContactSolution last = solution_from_net_force(c, d);
      last.iterations = sweeps;
      last.residual = res;
      throw MaxIterationsExceededError(std::move(last), res);
    }

    // g tracks K d + b through the sweep; it is rebuilt from scratch afterwards.
    DenseVector g = matvec(k, d) + b;
    for (std::size_t i = 0; i < n; ++i) {
      const double kii = k(i, i);
      const double r = g[i] - kii * d[i];
      double next = 0.0;
      if (const double up = -r / kii; up > 0.0) {
        next = up;
      } else if (const double down = (2.0 * c.y_star()[i] - r) / kii; down < 0.0) {
        next = down;
      }
      const double delta = next - d[i];
      if (delta == 0.0) continue;
      d[i] = next;
      const auto col = k.row(i);  // K symmetric
      for (std::size_t j = 0; j < n; ++j) g[j] += delta * col[j];
    }
    ++sweeps;
    res = structured_residual(c, d);
  }

  ContactSolution out = solution_from_net_force(c, d);
  out.iterations = sweeps;
  out.residual = res;
  return out;
}

}  // namespace gaplcp
