#include "gaplcp/beam.hpp"

#include <cmath>
#include <string>

#include "gaplcp/error.hpp"

namespace gaplcp {
namespace {

void require_interior(double length, double p, const std::string& what) {
  if (!(p > 0.0 && p < length)) {
    throw Error(ErrorCode::OutOfDomain, what + " at " + std::to_string(p) +
                                            " is not strictly inside (0, " +
                                            std::to_string(length) + ")");
  }
}

}  // namespace

BeamConfig::BeamConfig(double length, double bending_stiffness,
                       std::vector<Stabilizer> stabilizers, std::vector<PointLoad> loads)
    : length_(length),
      bending_stiffness_(bending_stiffness),
      stabilizers_(std::move(stabilizers)),
      loads_(std::move(loads)) {
  if (!(std::isfinite(length_) && length_ > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "beam length must be positive");
  }
  if (!(std::isfinite(bending_stiffness_) && bending_stiffness_ > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "bending stiffness must be positive");
  }
  for (std::size_t i = 0; i < stabilizers_.size(); ++i) {
    const Stabilizer& s = stabilizers_[i];
    const std::string name = "stabilizer " + std::to_string(i);
    require_interior(length_, s.position, name);
    if (!(std::isfinite(s.nominal_gap) && s.nominal_gap > 0.0)) {
      throw Error(ErrorCode::InvariantViolation, name + ": nominal gap must be strictly positive");
    }
    if (i > 0) {
      const double prev = stabilizers_[i - 1].position;
      if (s.position == prev) {
        throw Error(ErrorCode::DuplicatePositions,
                    name + " shares position " + std::to_string(prev) + " with its predecessor");
      }
      if (s.position < prev) {
        throw Error(ErrorCode::InvalidArgument, name + ": positions must be strictly increasing");
      }
    }
  }
  for (std::size_t i = 0; i < loads_.size(); ++i) {
    require_interior(length_, loads_[i].position, "load " + std::to_string(i));
    if (!std::isfinite(loads_[i].magnitude)) {
      throw Error(ErrorCode::NonFinite, "load " + std::to_string(i) + " magnitude");
    }
  }
}

double influence(double length, double bending_stiffness, double x, double a) {
  require_interior(length, x, "evaluation point");
  require_interior(length, a, "load point");
  if (x > a) std::swap(x, a);
  const double b = length - a;
  return b * x * (length * length - b * b - x * x) / (6.0 * length * bending_stiffness);
}

DenseMatrix flexibility_matrix(const BeamConfig& cfg) {
  const auto& st = cfg.stabilizers();
  const std::size_t n = st.size();
  DenseMatrix k(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v =
          influence(cfg.length(), cfg.bending_stiffness(), st[i].position, st[j].position);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

DenseVector load_vector(const BeamConfig& cfg) {
  const auto& st = cfg.stabilizers();
  DenseVector q(st.size());
  for (std::size_t i = 0; i < st.size(); ++i) {
    double s = 0.0;
    for (const PointLoad& p : cfg.loads()) {
      s += p.magnitude * influence(cfg.length(), cfg.bending_stiffness(), st[i].position, p.position);
    }
    q[i] = s;
  }
  return q;
}

ContactLcp to_contact_lcp(const BeamConfig& cfg) {
  std::vector<double> gaps;
  gaps.reserve(cfg.stabilizers().size());
  for (const auto& s : cfg.stabilizers()) gaps.push_back(s.nominal_gap);
  return ContactLcp(flexibility_matrix(cfg), load_vector(cfg), DenseVector(std::move(gaps)));
}

}  // namespace gaplcp
