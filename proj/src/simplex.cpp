#include "simplex.hpp"

#include <cmath>

namespace gaplcp::detail {

FeasibleSimplex::FeasibleSimplex(const Polyhedron& p, double eps) : eps_(eps) {
  const int m1 = static_cast<int>(p.a.rows());
  const int m2 = static_cast<int>(p.c.rows());
  const int m = m1 + m2;
  vars_ = static_cast<int>(m1 > 0 ? p.a.cols() : p.c.cols());
  structural_ = vars_ + m2;
  const int cols = structural_ + m;

  State s;
  s.t = Eigen::MatrixXd::Zero(m, cols + 1);
  s.basis.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    if (i < m1) {
      s.t.row(i).head(vars_) = p.a.row(i);
      s.t(i, cols) = p.b(i);
    } else {
      const int j = i - m1;
      s.t.row(i).head(vars_) = p.c.row(j);
      s.t(i, vars_ + j) = -1.0;
      s.t(i, cols) = p.h(j);
    }
    if (s.t(i, cols) < 0.0) s.t.row(i) *= -1.0;
    s.t(i, structural_ + i) = 1.0;
    s.basis[static_cast<std::size_t>(i)] = structural_ + i;
  }

  // phase one: minimize the sum of artificials
  Eigen::VectorXd obj = Eigen::VectorXd::Zero(cols);
  double value = 0.0;
  for (int i = 0; i < m; ++i) {
    obj.head(structural_) -= s.t.row(i).head(structural_).transpose();
    value += s.t(i, cols);
  }
  const double scale = 1.0 + (m > 0 ? s.t.col(cols).cwiseAbs().maxCoeff() : 0.0);
  run(s, obj, value, structural_);
  feasible_ = value <= 1e-8 * scale;
  if (!feasible_) return;

  // drive remaining artificials out of the basis, dropping redundant rows
  for (int i = 0; i < static_cast<int>(s.basis.size());) {
    if (s.basis[static_cast<std::size_t>(i)] < structural_) {
      ++i;
      continue;
    }
    int col = -1;
    for (int j = 0; j < structural_ && col < 0; ++j)
      if (std::abs(s.t(i, j)) > eps_) col = j;
    if (col >= 0) {
      pivot(s, i, col);
      ++i;
      continue;
    }
    const int rows = static_cast<int>(s.t.rows());
    Eigen::MatrixXd kept(rows - 1, s.t.cols());
    kept << s.t.topRows(i), s.t.bottomRows(rows - i - 1);
    s.t = std::move(kept);
    s.basis.erase(s.basis.begin() + i);
  }
  state_ = std::move(s);
}

void FeasibleSimplex::pivot(State& s, int row, int col) {
  s.t.row(row) /= s.t(row, col);
  for (int i = 0; i < s.t.rows(); ++i) {
    if (i == row) continue;
    const double f = s.t(i, col);
    if (f != 0.0) s.t.row(i) -= f * s.t.row(row);
  }
  s.basis[static_cast<std::size_t>(row)] = col;
}

bool FeasibleSimplex::run(State& s, Eigen::VectorXd& obj, double& value, int allowed_cols) const {
  const int rhs = static_cast<int>(s.t.cols()) - 1;
  for (int guard = 0; guard < 10000; ++guard) {
    int enter = -1;
    for (int j = 0; j < allowed_cols; ++j) {
      if (obj(j) < -eps_) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return true;

    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < s.t.rows(); ++i) {
      const double a = s.t(i, enter);
      if (a <= eps_) continue;
      const double ratio = s.t(i, rhs) / a;
      if (leave < 0 || ratio < best - eps_ ||
          (std::abs(ratio - best) <= eps_ &&
           s.basis[static_cast<std::size_t>(i)] < s.basis[static_cast<std::size_t>(leave)])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) return false;

    pivot(s, leave, enter);
    const double rj = obj(enter);
    value += rj * s.t(leave, rhs);
    obj -= rj * s.t.row(leave).head(obj.size()).transpose();
  }
  return true;
}

Eigen::VectorXd FeasibleSimplex::extract(const State& s) const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(vars_);
  const int rhs = static_cast<int>(s.t.cols()) - 1;
  for (int i = 0; i < s.t.rows(); ++i) {
    const int var = s.basis[static_cast<std::size_t>(i)];
    if (var < vars_) x(var) = s.t(i, rhs);
  }
  return x;
}

Eigen::VectorXd FeasibleSimplex::point() const { return extract(state_); }

LpOutcome FeasibleSimplex::minimize(const Eigen::VectorXd& cost) const {
  State s = state_;
  const int cols = static_cast<int>(s.t.cols()) - 1;
  Eigen::VectorXd full = Eigen::VectorXd::Zero(cols);
  full.head(vars_) = cost;

  Eigen::VectorXd obj = full;
  double value = 0.0;
  for (int i = 0; i < s.t.rows(); ++i) {
    const double cb = full(s.basis[static_cast<std::size_t>(i)]);
    if (cb == 0.0) continue;
    obj -= cb * s.t.row(i).head(cols).transpose();
    value += cb * s.t(i, cols);
  }

  LpOutcome out;
  if (!run(s, obj, value, structural_)) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  out.status = LpStatus::Optimal;
  out.value = value;
  out.x = extract(s);
  return out;
}

}  // namespace gaplcp::detail
