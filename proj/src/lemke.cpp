#include "gaplcp/lemke.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "gaplcp/error.hpp"

namespace gaplcp {
namespace {

// Column layout of the tableau: w_0..w_{n-1}, z_0..z_{n-1}, z0 (artificial).
// The w block of the current tableau always holds B^{-1}, which is what the
// lexicographic ratio test compares.
class Tableau {
 public:
  explicit Tableau(const LcpProblem& problem)
      : n_(problem.dim()), cols_(2 * n_ + 1), a_(n_ * cols_, 0.0), rhs_(problem.q().entries()),
        basis_(n_) {
    const DenseMatrix& m = problem.m();
    for (std::size_t i = 0; i < n_; ++i) {
      at(i, i) = 1.0;
      for (std::size_t j = 0; j < n_; ++j) at(i, n_ + j) = -m(i, j);
      at(i, artificial()) = -1.0;
      basis_[i] = i;
    }
  }

  std::size_t artificial() const { return 2 * n_; }
  std::size_t complement(std::size_t var) const { return var < n_ ? var + n_ : var - n_; }

  double& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  double rhs(std::size_t i) const { return rhs_[i]; }
  std::size_t basic(std::size_t row) const { return basis_[row]; }

  // Gauss-Jordan pivot; returns the variable that left the basis.
  std::size_t pivot(std::size_t r, std::size_t c) {
    const double p = at(r, c);
    for (std::size_t j = 0; j < cols_; ++j) at(r, j) /= p;
    rhs_[r] /= p;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) at(i, j) -= f * at(r, j);
      rhs_[i] -= f * rhs_[r];
      at(i, c) = 0.0;
    }
    const std::size_t leaving = basis_[r];
    basis_[r] = c;
    return leaving;
  }

 private:
  std::size_t n_;
  std::size_t cols_;
  std::vector<double> a_;
  std::vector<double> rhs_;
  std::vector<std::size_t> basis_;
};

bool nearly_equal(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Chooses the pivot row for entering column `col`. On the first pivot (z0
// entering) every row is a candidate and the keys are the rows themselves;
// afterwards only rows with a positive column entry qualify and keys are the
// rows divided by that entry.
std::optional<std::size_t> choose_row(const Tableau& t, std::size_t n, std::size_t col,
                                      bool first, const LemkeOptions& opts) {
  std::vector<std::size_t> cand;
  std::vector<double> divisor;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = t.at(i, col);
    if (first) {
      cand.push_back(i);
      divisor.push_back(1.0);
    } else if (a > opts.zero_tol) {
      cand.push_back(i);
      divisor.push_back(a);
    }
  }
  if (cand.empty()) return std::nullopt;

  // component 0 is the rhs, component k >= 1 is column k-1 of B^{-1}
  auto key = [&](std::size_t c, std::size_t k) {
    const std::size_t i = cand[c];
    const double v = k == 0 ? t.rhs(i) : t.at(i, k - 1);
    return v / divisor[c];
  };

  std::vector<std::size_t> ties(cand.size());
  for (std::size_t c = 0; c < cand.size(); ++c) ties[c] = c;

  auto narrow = [&](std::size_t k) {
    double best = key(ties.front(), k);
    for (std::size_t c : ties) best = std::min(best, key(c, k));
    std::vector<std::size_t> kept;
    for (std::size_t c : ties)
      if (nearly_equal(key(c, k), best, opts.zero_tol)) kept.push_back(c);
    ties.swap(kept);
  };

  narrow(0);
  if (!first) {
    for (std::size_t c : ties)
      if (t.basic(cand[c]) == t.artificial()) return cand[c];
  }
  if (ties.size() == 1 || !opts.lexicographic) return cand[ties.front()];

  for (std::size_t k = 1; k <= n && ties.size() > 1; ++k) narrow(k);
  if (ties.size() > 1) {
    throw Error(ErrorCode::NumericalBreakdown,
                "lexicographic ratio test could not separate " + std::to_string(ties.size()) +
                    " rows");
  }
  return cand[ties.front()];
}

}  // namespace

LcpSolution lemke_solve(const LcpProblem& problem, const LemkeOptions& opts) {
  const std::size_t n = problem.dim();
  if (!(opts.zero_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "zero_tol must be positive");
  const std::size_t max_pivots = opts.max_pivots > 0 ? opts.max_pivots : std::max<std::size_t>(10, 10 * n * n);

  if (n == 0 || problem.q().min() >= 0.0) {
    return make_solution(problem, DenseVector(n), "lemke", 0);
  }

  Tableau t(problem);
  std::size_t entering = t.artificial();
  std::size_t pivots = 0;
  bool first = true;
  for (;;) {
    if (pivots >= max_pivots) {
      throw Error(ErrorCode::PivotLimitExceeded, std::to_string(pivots) + " pivots");
    }
    const auto row = choose_row(t, n, entering, first, opts);
    if (!row) {
      throw Error(ErrorCode::RayTermination,
                  "secondary ray after " + std::to_string(pivots) + " pivots");
    }
    const std::size_t leaving = t.pivot(*row, entering);
    ++pivots;
    first = false;
    if (leaving == t.artificial()) break;
    entering = t.complement(leaving);
  }

  DenseVector z(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t var = t.basic(i);
    if (var >= n && var < 2 * n) z[var - n] = t.rhs(i);
  }

  LcpSolution sol = make_solution(problem, std::move(z), "lemke", pivots);
  const ValidationReport check = validate(problem, sol.z, 1e-8 * (1.0 + problem.q().norm_inf()));
  if (!check.solved) {
    throw Error(ErrorCode::NumericalBreakdown,
                "terminal point fails validation (min_z " + std::to_string(check.min_z) +
                    ", min_w " + std::to_string(check.min_w) + ", gap " +
                    std::to_string(check.comp_gap) + ")");
  }
  return sol;
}

}  // namespace gaplcp
