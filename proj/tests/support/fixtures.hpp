#pragma once

#include "gaplcp/cascade.hpp"
#include "gaplcp/contact.hpp"
#include "gaplcp/lcp.hpp"

namespace gaplcp::testing {

// One stabilizer pushed onto the lower wall.
inline ContactLcp fix_a() { return ContactLcp({{1.0}}, {-2.0}, {1.0}); }

// One stabilizer, no load.
inline ContactLcp fix_b() { return ContactLcp({{1.0}}, {0.0}, {1.0}); }

// Two stabilizers; the first touches the lower wall, the second the upper wall.
inline ContactLcp fix_c() { return ContactLcp({{2.0, 1.0}, {1.0, 2.0}}, {-3.0, 0.5}, {1.0, 1.0}); }

// Two coupled one-stabilizer blocks.
inline CascadeProblem fix_d() {
  CascadeBlock first{{{1.0}}, {}, {-1.0}, {3.0}};
  CascadeBlock second{{{1.0}}, {Coupling{0, {{1.0}}}}, {-2.0}, {3.0}};
  return CascadeProblem({first, second});
}

// Zero nominal gap: the contact matrix with q = (-1, 1), solved by every z = (1 + t, t).
inline LcpProblem zero_gap() { return LcpProblem({{1.0, -1.0}, {-1.0, 1.0}}, {-1.0, 1.0}); }

}  // namespace gaplcp::testing
