#pragma once

#include <vector>

#include "gaplcp/contact.hpp"
#include "gaplcp/dense.hpp"

namespace gaplcp {

struct Stabilizer {
  double position = 0.0;
  double nominal_gap = 0.0;

  friend bool operator==(const Stabilizer&, const Stabilizer&) = default;
};

// Transverse point load; positive magnitude pushes toward the upper wall.
struct PointLoad {
  double position = 0.0;
  double magnitude = 0.0;

  friend bool operator==(const PointLoad&, const PointLoad&) = default;
};

// Simply supported Euler-Bernoulli beam carrying stabilizers between two walls.
// Units are whatever the caller uses, as long as they are consistent.
class BeamConfig {
 public:
  BeamConfig(double length, double bending_stiffness, std::vector<Stabilizer> stabilizers,
             std::vector<PointLoad> loads = {});

  double length() const noexcept { return length_; }
  double bending_stiffness() const noexcept { return bending_stiffness_; }
  const std::vector<Stabilizer>& stabilizers() const noexcept { return stabilizers_; }
  const std::vector<PointLoad>& loads() const noexcept { return loads_; }

  friend bool operator==(const BeamConfig&, const BeamConfig&) = default;

 private:
  double length_;
  double bending_stiffness_;
  std::vector<Stabilizer> stabilizers_;
  std::vector<PointLoad> loads_;
};

/// Deflection at x due to a unit transverse force at a, for a simply supported
/// span of length L and bending stiffness EI. With b = L - a and x <= a,
///   delta = b x (L^2 - b^2 - x^2) / (6 L EI),
/// and delta(x, a) = delta(a, x) otherwise. Throws OutOfDomain unless both
/// points are strictly inside the span.
double influence(double length, double bending_stiffness, double x, double a);

/// K_ij = influence(x_i, x_j). Symmetric by construction (only the upper
/// triangle is evaluated).
DenseMatrix flexibility_matrix(const BeamConfig& cfg);

/// q_tilde_i = sum over loads of P * influence(x_i, a).
DenseVector load_vector(const BeamConfig& cfg);

ContactLcp to_contact_lcp(const BeamConfig& cfg);

}  // namespace gaplcp
