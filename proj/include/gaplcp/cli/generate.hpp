#pragma once

#include <cstdint>
#include <random>

#include "gaplcp/beam.hpp"
#include "gaplcp/cascade.hpp"
#include "gaplcp/cli/problem_file.hpp"
#include "gaplcp/contact.hpp"
#include "gaplcp/lcp.hpp"

namespace gaplcp::cli {

// Seeded source of the generators. mt19937_64 is fully specified by the
// standard and the mapping to doubles is done here, so a given seed yields the
// same instances with every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }    // [lo, hi)
  std::size_t index(std::size_t lo, std::size_t hi) {                          // [lo, hi]
    return lo + static_cast<std::size_t>(engine_() % (hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

// A^T A + n I with A uniform in [-1, 1]; exactly symmetric.
DenseMatrix random_spd(Rng& rng, std::size_t n);

// q_tilde uniform in [-5, 5], y_star uniform in (0.1, 2].
ContactLcp random_contact(Rng& rng, std::size_t n);

// t blocks of size uniform in [1, max_block]; every block is coupled to every
// earlier block with entries uniform in [-1, 1].
CascadeProblem random_cascade(Rng& rng, std::size_t t, std::size_t max_block);

// M = A^T A + n I, q uniform in [-5, 5].
LcpProblem random_general(Rng& rng, std::size_t n);

// Span in [5, 20], EI in [0.5, 5], n stabilizers spread over the span (one per
// slot of width L/(n+1), jittered by at most 40% of a slot), gaps in (0.1, 2],
// one to three loads scaled so load-induced deflections are of order 5.
BeamConfig random_beam(Rng& rng, std::size_t n);

ProblemFile generate(ProblemKind kind, std::size_t n, std::size_t t, std::uint64_t seed);

}  // namespace gaplcp::cli
