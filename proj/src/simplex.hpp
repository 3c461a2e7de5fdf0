#pragma once

// Small dense two-phase simplex used by the enumeration oracle to inspect the
// solution family of a singular support. Not a general-purpose LP solver:
// sizes are tiny and Bland's rule is used throughout.

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace gaplcp::detail {

// Polyhedron {x : A x = b, C x >= h, x >= 0}.
struct Polyhedron {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::MatrixXd c;
  Eigen::VectorXd h;
};

enum class LpStatus { Optimal, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Optimal;
  double value = 0.0;
  Eigen::VectorXd x;
};

class FeasibleSimplex {
 public:
  // Runs phase one; feasible() reports whether the polyhedron is nonempty.
  FeasibleSimplex(const Polyhedron& p, double eps);

  bool feasible() const noexcept { return feasible_; }
  Eigen::VectorXd point() const;  // current vertex, first `vars` coordinates

  // Minimizes cost^T x from the phase-one vertex (the instance is not modified).
  LpOutcome minimize(const Eigen::VectorXd& cost) const;

 private:
  struct State {
    Eigen::MatrixXd t;  // rows x (cols + 1), last column is the rhs
    std::vector<int> basis;
  };

  static void pivot(State& s, int row, int col);
  // Iterates until optimal for the objective row `obj`; returns false if unbounded.
  bool run(State& s, Eigen::VectorXd& obj, double& obj_value, int allowed_cols) const;
  Eigen::VectorXd extract(const State& s) const;

  int vars_ = 0;       // original x variables
  int structural_ = 0;  // x plus slack columns
  double eps_ = 1e-9;
  bool feasible_ = false;
  State state_;
};

}  // namespace gaplcp::detail
