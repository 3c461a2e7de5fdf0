// Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "fixtures.hpp"
#include "gaplcp/beam.hpp"
#include "gaplcp/cascade.hpp"
#include "gaplcp/cli/commands.hpp"
#include "gaplcp/cli/generate.hpp"
#include "gaplcp/cli/problem_file.hpp"
#include "gaplcp/contact.hpp"
#include "gaplcp/error.hpp"
#include "gaplcp/lemke.hpp"
#include "gaplcp/oracle.hpp"

using namespace gaplcp;
using namespace gaplcp::testing;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

// Every contact solution produced anywhere in the suite, checked by criterion 3.
struct ProducedSolution {
  std::string origin;
  DenseVector y_star;
  ContactSolution solution;
  DenseVector raw_z;  // the solver's own 2n vector
};
std::vector<ProducedSolution> produced;

void record(const std::string& origin, const ContactLcp& c, const ContactSolution& s,
            const DenseVector& raw_z) {
  produced.push_back({origin, c.y_star(), s, raw_z});
}

void record_lemke(const std::string& origin, const ContactLcp& c, const LcpSolution& l) {
  record(origin, c, solution_from_lcp(c, l.z), l.z);
}

void record_structured(const std::string& origin, const ContactLcp& c, const ContactSolution& s) {
  record(origin, c, s, s.z());
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome contact_matrix_semidefinite() {
  Outcome o;
  cli::Rng rng(101);
  double worst_neg = 0.0;
  for (int trial = 0; trial < 1000 && o.pass; ++trial) {
    const std::size_t n = rng.index(1, 8);
    const ContactLcp c = cli::random_contact(rng, n);
    const DenseMatrix m = assemble(c).m();
    DenseVector u(n), v(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = rng.uniform(-1.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);

    const DenseVector x = concat(u, v);
    const double form = dot(x, matvec(m, x));
    worst_neg = std::min(worst_neg, form / dot(x, x));
    if (form < -1e-9 * dot(x, x)) o.fail("x^T M x = " + fmt(form) + " at trial " + std::to_string(trial));

    const DenseVector xx = concat(u, u);
    const DenseVector mxx = matvec(m, xx);
    if (std::abs(dot(xx, mxx)) > 1e-9 * dot(xx, xx))
      o.fail("equal halves give x^T M x = " + fmt(dot(xx, mxx)));
    if (std::any_of(mxx.begin(), mxx.end(), [](double e) { return e != 0.0; }))
      o.fail("M (x, x) is not exactly zero at trial " + std::to_string(trial));
  }
  if (o.pass) o.detail = "1000 instances, min x^T M x / |x|^2 = " + fmt(worst_neg);
  return o;
}

Outcome feasible_point_and_lemke() {
  Outcome o;
  cli::Rng rng(202);
  for (int trial = 0; trial < 1000 && o.pass; ++trial) {
    const ContactLcp c = cli::random_contact(rng, rng.index(1, 6));
    const std::size_t n = c.size();
    const LcpProblem p = assemble(c);

    const LcpSolution fp = feasible_point(c);
    if (fp.z.min() < 0.0) o.fail("feasible point has a negative force");
    const DenseVector expected_w = concat(DenseVector(n), 2.0 * c.y_star());
    if (max_abs_diff(fp.w, expected_w) > 1e-9)
      o.fail("feasible point w off (0, 2y*) by " + fmt(max_abs_diff(fp.w, expected_w)));

    try {
      const LcpSolution l = lemke_solve(p);
      if (!validate(p, l.z, 1e-8 * (1.0 + p.q().norm_inf())).solved)
        o.fail("Lemke result does not validate at trial " + std::to_string(trial));
      record_lemke("feasible-point suite / lemke", c, l);
    } catch (const Error& e) {
      o.fail(std::string("Lemke raised ") + to_string(e.code()) + " at trial " +
             std::to_string(trial));
    }
  }
  if (o.pass) o.detail = "1000 instances, no ray termination";
  return o;
}

Outcome uniqueness() {
  Outcome o;
  cli::Rng rng(404);
  double worst = 0.0;
  for (int trial = 0; trial < 500 && o.pass; ++trial) {
    const ContactLcp c = cli::random_contact(rng, rng.index(1, 3));
    const LcpProblem p = assemble(c);
    const UniquenessVerdict v = certify_unique(p, 1e-9);
    if (v.kind != Uniqueness::Unique) {
      o.fail(std::string("verdict ") + to_string(v.kind) + " at trial " + std::to_string(trial));
      break;
    }
    const LcpSolution l = lemke_solve(p);
    const ContactSolution s = solve_structured(c);
    record_lemke("uniqueness suite / lemke", c, l);
    record_structured("uniqueness suite / structured", c, s);
    const double diff = std::max(max_abs_diff(l.z, *v.z), max_abs_diff(s.z(), *v.z));
    worst = std::max(worst, diff);
    if (diff > 1e-7) o.fail("solver disagrees with oracle by " + fmt(diff));
  }

  // zero nominal gap: solutions form the ray z = (1 + t, t)
  const LcpProblem b = zero_gap();
  const EnumerationResult r = enumerate_solutions(b);
  if (verdict_of(r).kind != Uniqueness::Multiple) o.fail("zero-gap fixture not flagged multiple");
  std::vector<DenseVector> points;
  for (const auto& s : r.solutions) points.push_back(s.z);
  for (double t : {0.25, 1.0, 7.5}) points.push_back({1.0 + t, t});
  for (const auto& p1 : points) {
    if (!validate(b, p1, 1e-9).solved) o.fail("zero-gap family member does not solve");
    for (const auto& p2 : points) {
      if (max_abs_diff(matvec(b.m(), p1), matvec(b.m(), p2)) > 1e-8) o.fail("M z differs");
      if (!validate(b, 0.5 * (p1 + p2), 1e-9).solved) o.fail("midpoint does not solve");
    }
  }
  if (o.pass)
    o.detail = "500 instances unique, max solver/oracle gap " + fmt(worst) +
               "; zero-gap fixture multiple";
  return o;
}

Outcome cascades() {
  Outcome o;
  cli::Rng rng(505);
  double worst = 0.0;
  std::size_t rows = 0, literal = 0;
  for (int trial = 0; trial < 200 && o.pass; ++trial) {
    const CascadeProblem p = cli::random_cascade(rng, rng.index(1, 3), 3);
    std::vector<CascadeBlockResult> blocks;
    try {
      blocks = solve_cascade(p);
    } catch (const Error& e) {
      o.fail(std::string("cascade solver raised ") + e.what());
      break;
    }
    for (std::size_t i = 0; i < p.block_count(); ++i) {
      const CascadeBlock& b = p.block(i);
      const CascadeBlockResult& r = blocks[i];
      record_structured("cascade suite / block", r.effective, r.solution);
      for (std::size_t k = 0; k < b.size(); ++k) {
        ++rows;
        if (2.0 * r.effective.y_star()[k] != b.q1[k] + b.q2[k])
          o.fail("effective gap sum differs from q1 + q2 in block " + std::to_string(i));
        if (r.q1_hat[k] + r.q2_hat[k] == b.q1[k] + b.q2[k]) ++literal;
      }
    }
    const LcpProblem full = assemble_full(p);
    try {
      const LcpSolution l = lemke_solve(full);
      const double diff = max_abs_diff(l.z, stacked_z(blocks));
      worst = std::max(worst, diff);
      if (diff > 1e-7) o.fail("cascade and Lemke differ by " + fmt(diff));
    } catch (const Error& e) {
      o.fail(std::string("Lemke on the assembled cascade raised ") + to_string(e.code()) +
             " at trial " + std::to_string(trial));
    }
  }

  const auto d = solve_cascade(fix_d());
  if (stacked_z(d) != DenseVector{1.0, 0.0, 1.0, 0.0}) o.fail("two-block fixture z wrong");
  if (d[1].q1_hat != DenseVector{-1.0} || d[1].q2_hat != DenseVector{2.0})
    o.fail("two-block fixture shifted data wrong");
  if (o.pass)
    o.detail = "200 cascades, max gap to Lemke " + fmt(worst) + "; effective gap sum exact on " +
               std::to_string(rows) + " rows (shifted pair sums bit-equal on " +
               std::to_string(literal) + ")";
  return o;
}

Outcome beams() {
  Outcome o;
  const double mid = influence(10.0, 1.0, 5.0, 5.0);
  if (std::abs(mid - 1000.0 / 48.0) > 1e-12 * (1000.0 / 48.0)) o.fail("midspan influence " + fmt(mid));
  cli::Rng rng(606);
  for (int i = 0; i < 20; ++i) {
    const double length = rng.uniform(1.0, 40.0), ei = rng.uniform(0.1, 10.0);
    const double exact = length * length * length / (48.0 * ei);
    const double got = influence(length, ei, length / 2.0, length / 2.0);
    if (std::abs(got - exact) > 1e-12 * exact) o.fail("midspan influence off for L=" + fmt(length));
  }

  const DenseMatrix k = flexibility_matrix(BeamConfig(10.0, 1.0, {{3.0, 1.0}, {7.0, 1.0}}));
  const DenseMatrix expected{{14.7, 12.3}, {12.3, 14.7}};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      if (std::abs(k(i, j) - expected(i, j)) > 1e-12 * expected(i, j))
        o.fail("two-stabilizer matrix entry (" + std::to_string(i) + "," + std::to_string(j) + ")");

  int count = 0;
  for (std::uint64_t seed = 0; seed < 200 && o.pass; ++seed) {
    const auto file = cli::generate(cli::ProblemKind::Beam, 1 + seed % 4, 1, seed);
    const ContactLcp c = to_contact_lcp(std::get<BeamConfig>(file.payload));
    const UniquenessVerdict v = certify_unique(assemble(c));
    if (v.kind != Uniqueness::Unique) {
      o.fail("generated beam seed " + std::to_string(seed) + " not unique");
      break;
    }
    const ContactSolution s = solve_structured(c);
    record_structured("beam suite / structured", c, s);
    if (max_abs_diff(s.z(), *v.z) > 1e-7) o.fail("beam solution differs from oracle");
    ++count;
  }
  if (o.pass) o.detail = std::to_string(count) + " generated beams certified unique";
  return o;
}

Outcome fixtures() {
  Outcome o;
  struct Case {
    const char* name;
    ContactLcp c;
    DenseVector z;
  };
  const Case cases[] = {{"one-stabilizer contact", fix_a(), {1.0, 0.0}},
                        {"one-stabilizer free", fix_b(), {0.0, 0.0}},
                        {"two-stabilizer", fix_c(), {7.0 / 6.0, 0.0, 0.0, 1.0 / 3.0}}};
  for (const Case& k : cases) {
    const LcpProblem p = assemble(k.c);
    const LcpSolution l = lemke_solve(p);
    const ContactSolution s = solve_structured(k.c);
    const UniquenessVerdict v = certify_unique(p);
    record_lemke(std::string("fixtures / lemke / ") + k.name, k.c, l);
    record_structured(std::string("fixtures / structured / ") + k.name, k.c, s);
    if (max_abs_diff(l.z, k.z) > 1e-9) o.fail(std::string(k.name) + ": Lemke off");
    if (max_abs_diff(s.z(), k.z) > 1e-9) o.fail(std::string(k.name) + ": structured off");
    if (v.kind != Uniqueness::Unique || max_abs_diff(*v.z, k.z) > 1e-9)
      o.fail(std::string(k.name) + ": oracle disagrees");
  }
  const ContactSolution c = solve_structured(fix_c());
  if (max_abs_diff(c.gamma_lower, {0.0, 2.0}) > 1e-9 || max_abs_diff(c.gamma_upper, {2.0, 0.0}) > 1e-9)
    o.fail("two-stabilizer gaps off");
  if (o.pass) o.detail = "3 fixtures, Lemke = structured = oracle";
  return o;
}

struct CommandRun {
  int code;
  std::string out;
};

CommandRun run(const std::function<int(std::ostream&, std::ostream&)>& fn) {
  std::ostringstream out, err;
  const int code = fn(out, err);
  return {code, out.str()};
}

int tool_exit(const std::string& args) {
  const std::string cmd = std::string(GAPLCP_TOOL) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome command_line() {
  using namespace gaplcp::cli;
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / ("gaplcp_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto put = [&](const std::string& name, const std::string& text) {
    write_text(dir / name, text);
    return dir / name;
  };
  const auto put_problem = [&](const std::string& name, ProblemPayload payload) {
    return put(name, serialize(ProblemFile{std::move(payload), {}}));
  };

  // round trip and generator determinism
  int files = 0;
  for (const char* kind : {"general", "contact", "cascade", "beam"}) {
    for (std::uint64_t seed : {0ull, 7ull, 42ull, 123456789ull, 18446744073709551615ull}) {
      GenArgs g;
      g.kind = kind;
      g.n = 4;
      g.t = 3;
      g.seed = seed;
      const CommandRun first = run([&](auto& out, auto& err) { return cmd_gen(g, out, err); });
      const CommandRun second = run([&](auto& out, auto& err) { return cmd_gen(g, out, err); });
      if (first.code != 0 || first.out != second.out)
        o.fail(std::string("gen not deterministic for ") + kind);
      const ProblemFile parsed = parse_problem(first.out);
      if (!(parse_problem(serialize(parsed)) == parsed) || serialize(parsed) != first.out)
        o.fail(std::string("round trip not bit exact for ") + kind);
      ++files;
    }
  }

  // exit-code table on the fixture set
  const fs::path a = put_problem("a.json", fix_a());
  const fs::path b = put_problem("b.json", fix_b());
  const fs::path c = put_problem("c.json", fix_c());
  const fs::path zg = put_problem("zero_gap.json", zero_gap());
  const fs::path none = put_problem("none.json", LcpProblem({{0.0}}, {-1.0}));
  const fs::path bad =
      put("bad.json", R"({"kind":"general","payload":{"M":[[1,0],[0,1]],"q":[1]}})");

  const auto solve = [&](const fs::path& in, const char* solver) {
    SolveArgs s;
    s.input = in;
    s.solver = solver;
    return run([&](auto& out, auto& err) { return cmd_solve(s, out, err); });
  };
  const auto verify = [&](const fs::path& in, const std::string& z) {
    VerifyArgs v;
    v.input = in;
    v.solution = put("z.json", z);
    return run([&](auto& out, auto& err) { return cmd_verify(v, out, err); }).code;
  };
  const auto enumerate = [&](const fs::path& in, std::size_t cap) {
    EnumerateArgs e;
    e.input = in;
    e.cap = cap;
    return run([&](auto& out, auto& err) { return cmd_enumerate(e, out, err); }).code;
  };

  struct Expect {
    const char* what;
    int got;
    int want;
  };
  const CommandRun lemke_a = solve(a, "lemke");
  const CommandRun pgs_a = solve(a, "pgs");
  const Expect table[] = {
      {"solve lemke one-stabilizer", lemke_a.code, 0},
      {"solve pgs one-stabilizer", pgs_a.code, 0},
      {"solve malformed", solve(bad, "lemke").code, 1},
      {"solve missing file", solve(dir / "missing.json", "lemke").code, 1},
      {"solve infeasible", solve(none, "lemke").code, 3},
      {"verify solution", verify(a, R"({"z":[1,0]})"), 0},
      {"verify negative w", verify(a, R"({"z":[0,0]})"), 2},
      {"verify feasible non-solution", verify(b, R"({"z":[0,1]})"), 2},
      {"enumerate two-stabilizer", enumerate(c, 14), 0},
      {"enumerate zero gap", enumerate(zg, 14), 4},
      {"enumerate infeasible", enumerate(none, 14), 3},
      {"enumerate over cap", enumerate(c, 3), 1},
      {"binary unknown flag", tool_exit("solve --input " + a.string() + " --frobnicate"), 1},
      {"binary solve", tool_exit("solve --input " + a.string() + " --solver pgs"), 0},
      {"binary enumerate", tool_exit("enumerate --input " + zg.string()), 4},
  };
  for (const Expect& e : table) {
    if (e.got != e.want)
      o.fail(std::string(e.what) + ": exit " + std::to_string(e.got) + ", expected " +
             std::to_string(e.want));
  }
  if (lemke_a.code == 0 && pgs_a.code == 0) {
    const DenseVector zl = parse_report(lemke_a.out).z;
    if (zl != DenseVector{1.0, 0.0}) o.fail("solve lemke z wrong");
    if (max_abs_diff(parse_report(pgs_a.out).z, zl) > 1e-7) o.fail("solve pgs z differs");
  }

  fs::remove_all(dir);
  if (o.pass)
    o.detail = std::to_string(files) + " generated files round-trip bit-exactly; " +
               std::to_string(std::size(table)) + " exit codes match";
  return o;
}

Outcome performance() {
  Outcome o;
  cli::Rng rng(909);
  const ContactLcp c = cli::random_contact(rng, 50);
  std::vector<double> times;
  for (int rep = 0; rep < 21; ++rep) {
    const auto t0 = Clock::now();
    const ContactSolution s = solve_structured(c);
    times.push_back(std::chrono::duration<double>(Clock::now() - t0).count());
    if (rep == 0) record_structured("performance / structured", c, s);
  }
  std::sort(times.begin(), times.end());
  const double median = times[times.size() / 2];
  o.detail = "n = 50 median " + fmt(median * 1e3) + " ms (limit 100 ms)";
  if (median >= 0.1) o.fail(o.detail);
  return o;
}

Outcome force_split() {
  Outcome o;
  double worst_ratio = 0.0;
  for (const ProducedSolution& p : produced) {
    const ContactSolution& s = p.solution;
    const std::size_t n = p.y_star.size();
    const double scale = (1.0 + p.raw_z.norm_inf()) * (1.0 + p.raw_z.norm_inf());
    const double raw = force_complementarity(p.raw_z.segment(0, n), p.raw_z.segment(n, n));
    const double canon = force_complementarity(s);
    worst_ratio = std::max(worst_ratio, std::max(raw, canon) / scale);
    if (raw > 1e-10 * scale || canon > 1e-10 * scale) o.fail(p.origin + ": F_l F_u = " + fmt(raw));
    for (std::size_t i = 0; i < n; ++i) {
      if (s.gamma_lower[i] + s.gamma_upper[i] - 2.0 * p.y_star[i] != 0.0)
        o.fail(p.origin + ": gap sum not exact");
    }
  }
  if (o.pass)
    o.detail = std::to_string(produced.size()) + " solutions, max F_l F_u / (1+|z|)^2 = " +
               fmt(worst_ratio) + ", gap sums exact";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0 when no runtime bound applies
    Outcome (*check)();
  };
  // criterion 3 audits the solutions collected by the others, so it runs last
  const Criterion criteria[] = {
      {1, "contact matrix semidefinite, null space (x, x)", 10.0, contact_matrix_semidefinite},
      {2, "feasible point and Lemke termination", 30.0, feasible_point_and_lemke},
      {4, "uniqueness certified, solvers agree", 120.0, uniqueness},
      {5, "cascade solver", 30.0, cascades},
      {6, "beam influence and generated beams", 0.0, beams},
      {7, "fixtures across solvers and oracle", 0.0, fixtures},
      {8, "command line", 0.0, command_line},
      {9, "structured solver speed", 0.0, performance},
      {3, "force complementarity and exact gap sums", 0.0, force_split},
  };

  std::vector<std::pair<int, std::string>> lines;
  bool all = true;
  for (const Criterion& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.fail(std::string("unexpected exception: ") + e.what());
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.limit_s > 0.0 && elapsed >= c.limit_s)
      o.fail("took " + fmt(elapsed) + " s, limit " + fmt(c.limit_s) + " s");
    all = all && o.pass;
    std::string line = std::string(o.pass ? "PASS" : "FAIL") + " criterion " +
                       std::to_string(c.id) + " (" + c.name + "): " + o.detail + " [" +
                       fmt(elapsed) + " s]";
    lines.emplace_back(c.id, std::move(line));
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all ? 0 : 1;
}
