#include "gaplcp/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "gaplcp/error.hpp"
#include "simplex.hpp"

namespace gaplcp {

std::vector<std::size_t> support_indices(SupportMask mask, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (mask & (SupportMask{1} << i)) out.push_back(i);
  return out;
}

bool EnumerationResult::multiple() const {
  if (solutions.size() > 1) return true;
  return std::any_of(singular_supports.begin(), singular_supports.end(),
                     [](const SingularSupport& s) { return s.family_multiple; });
}

const char* to_string(Uniqueness u) {
  switch (u) {
    case Uniqueness::Unique: return "unique";
    case Uniqueness::Multiple: return "multiple";
    case Uniqueness::None: return "none";
  }
  return "unknown";
}

namespace {

Eigen::MatrixXd to_eigen(const DenseMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

Eigen::MatrixXd select(const Eigen::MatrixXd& m, const std::vector<std::size_t>& rows,
                       const std::vector<std::size_t>& cols) {
  Eigen::MatrixXd out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

Eigen::VectorXd select(const Eigen::VectorXd& v, const std::vector<std::size_t>& idx) {
  Eigen::VectorXd out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out(i) = v(idx[i]);
  return out;
}

double inf_norm(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff();
}

double inf_norm(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

DenseVector scatter(const Eigen::VectorXd& z_s, const std::vector<std::size_t>& support,
                    std::size_t n) {
  DenseVector z(n);
  for (std::size_t i = 0; i < support.size(); ++i) z[support[i]] = z_s(static_cast<Eigen::Index>(i));
  return z;
}

struct Collector {
  const LcpProblem& problem;
  double tol;
  EnumerationResult& result;

  void offer(const DenseVector& z, SupportMask mask) {
    if (!validate(problem, z, tol).solved) return;
    for (std::size_t k = 0; k < result.solutions.size(); ++k) {
      if (max_abs_diff(result.solutions[k].z, z) <= tol) {
        ++result.multiplicity[k];
        return;
      }
    }
    result.solutions.push_back(make_solution(problem, z, "enumeration", 0));
    result.multiplicity.push_back(1);
    result.first_support.push_back(mask);
  }
};

// Examines the affine family {z_S : M_SS z_S = -q_S} of a consistent singular
// support: z_S >= 0 and w on the complement >= 0 cut out a polyhedron whose
// points are exactly the LCP solutions with this support. Two points differ
// along the null space, so the polyhedron is a single point iff every
// orthonormal null direction has a zero range over it.
void inspect_family(const Eigen::MatrixXd& m_ss, const Eigen::VectorXd& rhs,
                    const Eigen::MatrixXd& m_cs, const Eigen::VectorXd& q_c, double sing_tol,
                    SupportMask mask, const std::vector<std::size_t>& support,
                    SingularSupport& record, Collector& collector) {
  detail::Polyhedron poly{m_ss, rhs, m_cs, -q_c};
  const detail::FeasibleSimplex lp(poly, 1e-11);
  if (!lp.feasible()) return;
  record.family_feasible = true;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m_ss, Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const Eigen::Index k = m_ss.cols();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > sing_tol) ++rank;
  rank = std::min(rank, k - 1);  // the LU test already declared the block singular

  const double range_tol = collector.tol;
  for (Eigen::Index c = rank; c < k; ++c) {
    const Eigen::VectorXd v = svd.matrixV().col(c);
    const detail::LpOutcome lo = lp.minimize(v);
    const detail::LpOutcome hi = lp.minimize(-v);
    if (lo.status == detail::LpStatus::Unbounded || hi.status == detail::LpStatus::Unbounded ||
        (-hi.value) - lo.value > range_tol) {
      record.family_multiple = true;
      return;
    }
  }
  // single point
  collector.offer(scatter(lp.point(), support, collector.problem.dim()), mask);
}

}  // namespace

EnumerationResult enumerate_solutions(const LcpProblem& problem, double tol, std::size_t cap) {
  const std::size_t n = problem.dim();
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (n > cap || n >= 63) {
    throw Error(ErrorCode::DimensionTooLarge,
                "dimension " + std::to_string(n) + " exceeds enumeration cap " + std::to_string(cap));
  }

  const Eigen::MatrixXd m = to_eigen(problem.m());
  Eigen::VectorXd q(n);
  for (std::size_t i = 0; i < n; ++i) q(static_cast<Eigen::Index>(i)) = problem.q()[i];

  EnumerationResult result;
  result.exhaustive = true;
  Collector collector{problem, tol, result};

  const SupportMask count = SupportMask{1} << n;
  for (SupportMask mask = 0; mask < count; ++mask) {
    const std::vector<std::size_t> s = support_indices(mask, n);
    if (s.empty()) {
      collector.offer(DenseVector(n), mask);
      continue;
    }
    std::vector<std::size_t> comp;
    for (std::size_t i = 0; i < n; ++i)
      if (!(mask & (SupportMask{1} << i))) comp.push_back(i);

    const Eigen::MatrixXd m_ss = select(m, s, s);
    const Eigen::VectorXd rhs = -select(q, s);
    const double scale = inf_norm(m_ss);
    const double sing_tol = 1e-10 * scale;

    Eigen::FullPivLU<Eigen::MatrixXd> lu(m_ss);
    const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (min_pivot > sing_tol) {
      collector.offer(scatter(lu.solve(rhs), s, n), mask);
      continue;
    }

    SingularSupport record;
    record.support = mask;
    const Eigen::VectorXd ls = m_ss.completeOrthogonalDecomposition().solve(rhs);
    const double residual = inf_norm(Eigen::VectorXd(m_ss * ls - rhs));
    record.consistent = residual <= 1e-8 * (1.0 + inf_norm(rhs));
    if (record.consistent) {
      inspect_family(m_ss, rhs, select(m, comp, s), select(q, comp), sing_tol, mask, s, record,
                     collector);
    }
    result.singular_supports.push_back(record);
  }
  return result;
}

UniquenessVerdict verdict_of(const EnumerationResult& result) {
  UniquenessVerdict v;
  if (result.multiple()) {
    v.kind = Uniqueness::Multiple;
  } else if (result.solutions.size() == 1) {
    v.kind = Uniqueness::Unique;
    v.z = result.solutions.front().z;
  } else {
    v.kind = Uniqueness::None;
  }
  return v;
}

UniquenessVerdict certify_unique(const LcpProblem& problem, double tol, std::size_t cap) {
  return verdict_of(enumerate_solutions(problem, tol, cap));
}

}  // namespace gaplcp
