#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "gaplcp/cli/generate.hpp"
#include "gaplcp/contact.hpp"
#include "gaplcp/error.hpp"
#include "gaplcp/lemke.hpp"
#include "gaplcp/oracle.hpp"

using namespace gaplcp;
using namespace gaplcp::testing;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

bool gap_sum_exact(const ContactLcp& c, const ContactSolution& s) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (s.gamma_lower[i] + s.gamma_upper[i] != 2.0 * c.y_star()[i]) return false;
  return true;
}

}  // namespace

TEST_CASE("construction invariants") {
  CHECK(code_of([] { ContactLcp({{1.0}}, {0.0}, {0.0}); }) == ErrorCode::InvariantViolation);
  CHECK(code_of([] { ContactLcp({{1.0}}, {0.0}, {-1.0}); }) == ErrorCode::InvariantViolation);
  CHECK(code_of([] { ContactLcp({{1.0, 2.0}, {2.0, 1.0}}, {0.0, 0.0}, {1.0, 1.0}); }) ==
        ErrorCode::NotPositiveDefinite);
  CHECK(code_of([] { ContactLcp({{1.0}}, {0.0, 0.0}, {1.0}); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("assemble") {
  const LcpProblem b = assemble(fix_b());
  CHECK(b.m() == DenseMatrix{{1.0, -1.0}, {-1.0, 1.0}});
  CHECK(b.q() == DenseVector{1.0, 1.0});
  CHECK(assemble(fix_a()).q() == DenseVector{-1.0, 3.0});
  const LcpProblem c = assemble(fix_c());
  // -q_tilde + y_star = (4, 0.5)
  CHECK(c.q() == DenseVector{-2.0, 1.5, 4.0, 0.5});
  CHECK(c.m() == DenseMatrix{{2.0, 1.0, -2.0, -1.0},
                             {1.0, 2.0, -1.0, -2.0},
                             {-2.0, -1.0, 2.0, 1.0},
                             {-1.0, -2.0, 1.0, 2.0}});
}

TEST_CASE("feasible point") {
  const auto a = feasible_point(fix_a());
  CHECK(a.z == DenseVector{1.0, 0.0});
  CHECK(a.w == DenseVector{0.0, 2.0});
  CHECK(validate(assemble(fix_a()), a.z, 1e-9).solved);

  const auto b = feasible_point(fix_b());
  CHECK(b.z == DenseVector{0.0, 1.0});
  CHECK(b.w == DenseVector{0.0, 2.0});
  const auto rb = validate(assemble(fix_b()), b.z, 1e-9);
  CHECK(rb.feasible);
  CHECK_FALSE(rb.solved);
  CHECK(rb.comp_gap == 2.0);

  const ContactLcp balanced({{3.0}}, {-0.5}, {0.5});
  const auto z = feasible_point(balanced);
  CHECK(z.z == DenseVector{0.0, 0.0});
  CHECK(z.w == DenseVector{0.0, 1.0});
}

TEST_CASE("gaps") {
  const Gaps a = gaps(fix_a(), {1.0});
  CHECK(a.lower == DenseVector{0.0});
  CHECK(a.upper == DenseVector{2.0});
  const Gaps c = gaps(fix_c(), {7.0 / 6.0, -1.0 / 3.0});
  CHECK(std::abs(c.lower[0]) <= 1e-15);
  CHECK(c.lower[1] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(c.upper[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::abs(c.upper[1]) <= 1e-15);
  const Gaps zero = gaps(fix_c(), {0.0, 0.0});
  CHECK(zero.lower == DenseVector{-2.0, 1.5});
  CHECK(zero.upper == DenseVector{4.0, 0.5});
  CHECK_THROWS_AS(gaps(fix_c(), {1.0}), Error);
}

TEST_CASE("split_signed and force complementarity") {
  const ForcePair p = split_signed({1.0, -2.0, 0.0});
  CHECK(p.lower == DenseVector{1.0, 0.0, 0.0});
  CHECK(p.upper == DenseVector{0.0, 2.0, 0.0});
  const ForcePair z = split_signed({0.0, 0.0});
  CHECK(z.lower == DenseVector{0.0, 0.0});
  CHECK(z.upper == DenseVector{0.0, 0.0});
  const ForcePair c = split_signed({7.0 / 6.0, -1.0 / 3.0});
  CHECK(c.lower == DenseVector{7.0 / 6.0, 0.0});
  CHECK(c.upper == DenseVector{0.0, 1.0 / 3.0});

  CHECK(force_complementarity({1.0, 0.0}, {0.0, 1.0}) == 0.0);
  CHECK(force_complementarity({1.0}, {2.0}) == 2.0);
}

TEST_CASE("structured solver on the fixtures") {
  const auto a = solve_structured(fix_a());
  CHECK(a.f_lower == DenseVector{1.0});
  CHECK(a.f_upper == DenseVector{0.0});
  CHECK(a.gamma_lower == DenseVector{0.0});
  CHECK(a.gamma_upper == DenseVector{2.0});

  const auto b = solve_structured(fix_b());
  CHECK(b.f_lower == DenseVector{0.0});
  CHECK(b.f_upper == DenseVector{0.0});
  CHECK(b.gamma_lower == DenseVector{1.0});
  CHECK(b.gamma_upper == DenseVector{1.0});

  const auto c = solve_structured(fix_c());
  CHECK(max_abs_diff(c.f_lower, {7.0 / 6.0, 0.0}) <= 1e-9);
  CHECK(max_abs_diff(c.f_upper, {0.0, 1.0 / 3.0}) <= 1e-9);
  CHECK(max_abs_diff(c.gamma_lower, {0.0, 2.0}) <= 1e-9);
  CHECK(max_abs_diff(c.gamma_upper, {2.0, 0.0}) <= 1e-9);
  CHECK(force_complementarity(c) == 0.0);
  CHECK(gap_sum_exact(fix_c(), c));
}

TEST_CASE("sweep budget exhaustion carries the last iterate") {
  PgsOptions opts;
  opts.max_sweeps = 1;
  opts.rel_tol = 1e-300;
  const ContactLcp c({{2.0, 1.9}, {1.9, 2.0}}, {-3.0, 0.5}, {1.0, 1.0});
  try {
    solve_structured(c, opts);
    FAIL("expected MaxIterationsExceeded");
  } catch (const MaxIterationsExceededError& e) {
    CHECK(e.code() == ErrorCode::MaxIterationsExceeded);
    CHECK(e.last_iterate().iterations == 1);
    CHECK(e.last_iterate().d.size() == 2);
  }
}

TEST_CASE("contact matrix is positive semidefinite with null space (x, x)") {
  cli::Rng rng(4);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = rng.index(1, 8);
    const ContactLcp c = cli::random_contact(rng, n);
    const DenseMatrix m = assemble(c).m();
    DenseVector u(n);
    DenseVector v(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = rng.uniform(-1.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);

    const DenseVector x = concat(u, v);
    REQUIRE(dot(x, matvec(m, x)) >= -1e-9 * dot(x, x));
    const DenseVector xx = concat(u, u);
    REQUIRE(std::abs(dot(xx, matvec(m, xx))) <= 1e-9 * dot(xx, xx));
    const DenseVector null = matvec(m, xx);
    REQUIRE(std::all_of(null.begin(), null.end(), [](double e) { return e == 0.0; }));
  }
}

TEST_CASE("gap identity is exact for feasible points and solutions") {
  cli::Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const ContactLcp c = cli::random_contact(rng, rng.index(1, 6));
    const LcpSolution fp = feasible_point(c);
    const auto fs = solution_from_lcp(c, fp.z);
    REQUIRE(gap_sum_exact(c, fs));
    const auto s = solve_structured(c);
    REQUIRE(gap_sum_exact(c, s));
    REQUIRE(force_complementarity(s) == 0.0);
  }
}

TEST_CASE("structured solver agrees with Lemke and the oracle") {
  cli::Rng rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    const ContactLcp c = cli::random_contact(rng, rng.index(1, 3));
    const LcpProblem p = assemble(c);
    const auto verdict = certify_unique(p, 1e-9);
    REQUIRE(verdict.kind == Uniqueness::Unique);
    const auto s = solve_structured(c);
    const auto l = lemke_solve(p);
    REQUIRE(max_abs_diff(s.z(), *verdict.z) <= 1e-7);
    REQUIRE(max_abs_diff(l.z, *verdict.z) <= 1e-7);
    REQUIRE(structured_residual(c, s.d) <= 1e-12 * (1.0 + (c.q_tilde() + c.y_star()).norm_inf()));
  }
}

TEST_CASE("raw LCP vectors are normalized through the net force") {
  // (2, 1) and (1, 0) carry the same net force on the one-stabilizer fixture
  const auto s = solution_from_lcp(fix_a(), {2.0, 1.0});
  CHECK(s.f_lower == DenseVector{1.0});
  CHECK(s.f_upper == DenseVector{0.0});
  CHECK(s.d == DenseVector{1.0});
}
