#include "gaplcp/cli/generate.hpp"

#include <string>

#include "gaplcp/error.hpp"

namespace gaplcp::cli {

DenseMatrix random_spd(Rng& rng, std::size_t n) {
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  DenseMatrix k(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < n; ++r) s += a(r, i) * a(r, j);
      if (i == j) s += static_cast<double>(n);
      k(i, j) = s;
      k(j, i) = s;
    }
  }
  return k;
}

namespace {

double gap(Rng& rng) { return 2.0 - 1.9 * rng.unit(); }  // (0.1, 2]

}  // namespace

ContactLcp random_contact(Rng& rng, std::size_t n) {
  DenseMatrix k = random_spd(rng, n);
  DenseVector q_tilde(n);
  DenseVector y_star(n);
  for (std::size_t i = 0; i < n; ++i) q_tilde[i] = rng.uniform(-5.0, 5.0);
  for (std::size_t i = 0; i < n; ++i) y_star[i] = gap(rng);
  return ContactLcp(std::move(k), std::move(q_tilde), std::move(y_star));
}

CascadeProblem random_cascade(Rng& rng, std::size_t t, std::size_t max_block) {
  std::vector<CascadeBlock> blocks;
  for (std::size_t i = 0; i < t; ++i) {
    const std::size_t n = rng.index(1, max_block);
    CascadeBlock b;
    b.k = random_spd(rng, n);
    for (std::size_t j = 0; j < i; ++j) {
      DenseMatrix kt(n, blocks[j].size());
      for (std::size_t r = 0; r < kt.rows(); ++r)
        for (std::size_t c = 0; c < kt.cols(); ++c) kt(r, c) = rng.uniform(-1.0, 1.0);
      b.couplings.push_back({j, std::move(kt)});
    }
    b.q1 = DenseVector(n);
    b.q2 = DenseVector(n);
    for (std::size_t r = 0; r < n; ++r) {
      const double q_tilde = rng.uniform(-5.0, 5.0);
      const double y_star = gap(rng);
      b.q1[r] = q_tilde + y_star;
      b.q2[r] = -q_tilde + y_star;
    }
    blocks.push_back(std::move(b));
  }
  return CascadeProblem(std::move(blocks));
}

LcpProblem random_general(Rng& rng, std::size_t n) {
  DenseMatrix m = random_spd(rng, n);
  DenseVector q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = rng.uniform(-5.0, 5.0);
  return LcpProblem(std::move(m), std::move(q));
}

BeamConfig random_beam(Rng& rng, std::size_t n) {
  const double length = rng.uniform(5.0, 20.0);
  const double ei = rng.uniform(0.5, 5.0);
  const double slot = length / static_cast<double>(n + 1);
  std::vector<Stabilizer> st;
  for (std::size_t i = 1; i <= n; ++i) {
    const double x = slot * (static_cast<double>(i) + rng.uniform(-0.4, 0.4));
    st.push_back({x, gap(rng)});
  }
  // unit load at midspan deflects the midspan by L^3 / (48 EI)
  const double unit_deflection = length * length * length / (48.0 * ei);
  const std::size_t load_count = rng.index(1, 3);
  std::vector<PointLoad> loads;
  for (std::size_t i = 0; i < load_count; ++i) {
    const double a = length * rng.uniform(0.05, 0.95);
    loads.push_back({a, rng.uniform(-5.0, 5.0) / unit_deflection});
  }
  return BeamConfig(length, ei, std::move(st), std::move(loads));
}

ProblemFile generate(ProblemKind kind, std::size_t n, std::size_t t, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be at least 1");
  Rng rng(seed);
  ProblemMetadata meta;
  meta.seed = seed;
  meta.name = std::string(to_string(kind)) + "-n" + std::to_string(n) +
              (kind == ProblemKind::Cascade ? "-t" + std::to_string(t) : "") + "-s" +
              std::to_string(seed);
  switch (kind) {
    case ProblemKind::General: return {random_general(rng, n), meta};
    case ProblemKind::Contact: return {random_contact(rng, n), meta};
    case ProblemKind::Cascade:
      if (t == 0) throw Error(ErrorCode::InvalidArgument, "t must be at least 1");
      return {random_cascade(rng, t, n), meta};
    case ProblemKind::Beam: return {random_beam(rng, n), meta};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown kind");
}

}  // namespace gaplcp::cli
