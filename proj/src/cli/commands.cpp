#include "gaplcp/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <json.hpp>
#include <ostream>

#include "gaplcp/cascade.hpp"
#include "gaplcp/cli/generate.hpp"
#include "gaplcp/cli/problem_file.hpp"
#include "gaplcp/contact.hpp"
#include "gaplcp/error.hpp"
#include "gaplcp/lemke.hpp"

namespace gaplcp::cli {
namespace {

using Clock = std::chrono::steady_clock;

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void emit(const std::optional<std::filesystem::path>& output, const std::string& text,
          std::ostream& out) {
  if (output) {
    write_text(*output, text);
  } else {
    out << text;
  }
}

// Net forces and gap vectors of a stacked block layout (F_1l, F_1u, F_2l, ...)
// read back from a full z and w.
ContactFields fields_from_blocks(const std::vector<std::size_t>& sizes, const DenseVector& z,
                                 const DenseVector& w) {
  std::vector<double> fl, fu, gl, gu;
  std::size_t off = 0;
  for (std::size_t n : sizes) {
    const ForcePair f = split_signed(z.segment(off, n) - z.segment(off + n, n));
    fl.insert(fl.end(), f.lower.begin(), f.lower.end());
    fu.insert(fu.end(), f.upper.begin(), f.upper.end());
    const DenseVector lo = w.segment(off, n);
    const DenseVector up = w.segment(off + n, n);
    gl.insert(gl.end(), lo.begin(), lo.end());
    gu.insert(gu.end(), up.begin(), up.end());
    off += 2 * n;
  }
  return {DenseVector(fl), DenseVector(fu), DenseVector(gl), DenseVector(gu)};
}

ContactFields fields_from(const ContactSolution& s) {
  return {s.f_lower, s.f_upper, s.gamma_lower, s.gamma_upper};
}

std::vector<std::size_t> block_sizes(const CascadeProblem& p) {
  std::vector<std::size_t> sizes;
  for (const auto& b : p.blocks()) sizes.push_back(b.size());
  return sizes;
}

std::optional<ContactLcp> contact_of(const ProblemFile& file) {
  if (const auto* c = std::get_if<ContactLcp>(&file.payload)) return *c;
  if (const auto* b = std::get_if<BeamConfig>(&file.payload)) return to_contact_lcp(*b);
  return std::nullopt;
}

struct Produced {
  DenseVector z;
  std::string tag;
  std::size_t iterations = 0;
  std::optional<ContactFields> contact;
};

// Runs the requested solver. Solver failures surface as gaplcp::Error.
Produced run_solver(const ProblemFile& file, const LcpProblem& lcp, const std::string& solver,
                    std::ostream& err) {
  const auto contact = contact_of(file);
  const auto* cascade = std::get_if<CascadeProblem>(&file.payload);

  if (solver == "lemke") {
    const LcpSolution s = lemke_solve(lcp);
    Produced p{s.z, s.solver_tag, s.iterations, std::nullopt};
    if (contact) p.contact = fields_from(solution_from_lcp(*contact, s.z));
    if (cascade) p.contact = fields_from_blocks(block_sizes(*cascade), s.z, s.w);
    return p;
  }

  if (contact) {
    ContactSolution s;
    try {
      s = solve_structured(*contact);
    } catch (const MaxIterationsExceededError& e) {
      err << "warning: " << e.what() << "; reporting the last iterate\n";
      s = e.last_iterate();
    }
    return {s.z(), "pgs", s.iterations, fields_from(s)};
  }

  if (cascade) {
    const std::vector<CascadeBlockResult> blocks = solve_cascade(*cascade);
    std::size_t iterations = 0;
    std::vector<double> fl, fu, gl, gu;
    for (const auto& b : blocks) {
      iterations += b.solution.iterations;
      fl.insert(fl.end(), b.solution.f_lower.begin(), b.solution.f_lower.end());
      fu.insert(fu.end(), b.solution.f_upper.begin(), b.solution.f_upper.end());
      gl.insert(gl.end(), b.solution.gamma_lower.begin(), b.solution.gamma_lower.end());
      gu.insert(gu.end(), b.solution.gamma_upper.begin(), b.solution.gamma_upper.end());
    }
    return {stacked_z(blocks), "cascade", iterations,
            ContactFields{DenseVector(fl), DenseVector(fu), DenseVector(gl), DenseVector(gu)}};
  }

  throw std::invalid_argument("solver '" + solver + "' needs a contact, beam or cascade problem");
}

int exit_for_solver_error(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  switch (e.code()) {
    case ErrorCode::RayTermination:
    case ErrorCode::PivotLimitExceeded:
    case ErrorCode::NumericalBreakdown:
    case ErrorCode::MaxIterationsExceeded:
      return exit_code::kNone;
    default:
      return exit_code::kUsage;
  }
}

// max_i |w_lower_i + w_upper_i - (q_lower_i + q_upper_i)| over every block;
// the coupling terms cancel in the sum, so this is the gap-sum identity.
double gap_sum_residual(const std::vector<std::size_t>& sizes, const LcpProblem& lcp,
                        const DenseVector& w) {
  double r = 0.0;
  std::size_t off = 0;
  for (std::size_t n : sizes) {
    for (std::size_t i = 0; i < n; ++i) {
      const double lhs = w[off + i] + w[off + n + i];
      const double rhs = lcp.q()[off + i] + lcp.q()[off + n + i];
      r = std::max(r, std::abs(lhs - rhs));
    }
    off += 2 * n;
  }
  return r;
}

std::optional<std::vector<std::size_t>> structured_sizes(const ProblemFile& file) {
  if (const auto c = contact_of(file)) return std::vector<std::size_t>{c->size()};
  if (const auto* p = std::get_if<CascadeProblem>(&file.payload)) return block_sizes(*p);
  return std::nullopt;
}

}  // namespace

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  if (args.solver != "lemke" && args.solver != "pgs" && args.solver != "cascade") {
    err << "error: unknown solver '" << args.solver << "' (expected lemke, pgs or cascade)\n";
    return exit_code::kUsage;
  }
  if (!(args.tol > 0.0)) {
    err << "error: --tol must be positive\n";
    return exit_code::kUsage;
  }
  try {
    const ProblemFile file = parse_problem(read_text(args.input));
    const LcpProblem lcp = as_lcp(file);

    const auto start = Clock::now();
    Produced produced;
    try {
      produced = run_solver(file, lcp, args.solver, err);
    } catch (const Error& e) {
      return exit_for_solver_error(e, err);
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << "\n";
      return exit_code::kUsage;
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();

    const ValidationReport check = validate(lcp, produced.z, args.tol);
    SolveReport report;
    report.solver_tag = produced.tag;
    report.w = assemble_w(lcp, produced.z);
    report.z = produced.z;
    report.residuals = {check.min_z, check.min_w, check.comp_gap};
    report.iterations = produced.iterations;
    report.wall_time = elapsed;
    report.contact = produced.contact;
    if (args.certify) {
      try {
        report.uniqueness_verdict = to_string(certify_unique(lcp, args.tol).kind);
      } catch (const Error& e) {
        err << "warning: uniqueness not certified: " << e.what() << "\n";
      }
    }
    emit(args.output, serialize(report), out);

    if (!check.solved) {
      err << "error: produced point fails validation at tol " << num(args.tol) << "\n";
      return exit_code::kInvalid;
    }
    return exit_code::kSolved;
  } catch (const SchemaError& e) {
    err << "error: " << args.input.string() << ": " << e.what() << "\n";
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
  }
  return exit_code::kUsage;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  if (!(args.tol > 0.0)) {
    err << "error: --tol must be positive\n";
    return exit_code::kUsage;
  }
  std::optional<ProblemFile> file;
  SolveReport sol;
  try {
    file = parse_problem(read_text(args.input));
  } catch (const SchemaError& e) {
    err << "error: " << args.input.string() << ": " << e.what() << "\n";
    return exit_code::kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kUsage;
  }
  try {
    sol = parse_report(read_text(args.solution));
  } catch (const SchemaError& e) {
    err << "error: " << args.solution.string() << ": " << e.what() << "\n";
    return exit_code::kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kUsage;
  }

  const LcpProblem lcp = as_lcp(*file);
  if (sol.z.size() != lcp.dim()) {
    err << "error: solution has " << sol.z.size() << " entries, problem dimension is "
        << lcp.dim() << "\n";
    return exit_code::kUsage;
  }

  const ValidationReport r = validate(lcp, sol.z, args.tol);
  out << "feasible: " << (r.feasible ? "true" : "false") << "\n"
      << "solved: " << (r.solved ? "true" : "false") << "\n"
      << "min_z: " << num(r.min_z) << "\n"
      << "min_w: " << num(r.min_w) << "\n"
      << "comp_gap: " << num(r.comp_gap) << "\n";
  for (const Violation& v : r.per_index_violations) {
    out << "violation: index " << v.index << " " << to_string(v.kind) << " " << num(v.magnitude)
        << "\n";
  }
  if (!r.degenerate.empty()) {
    out << "degenerate:";
    for (std::size_t i : r.degenerate) out << " " << i;
    out << "\n";
  }
  if (const auto sizes = structured_sizes(*file)) {
    const DenseVector w = assemble_w(lcp, sol.z);
    double fc = 0.0;
    std::size_t off = 0;
    for (std::size_t n : *sizes) {
      fc = std::max(fc, force_complementarity(sol.z.segment(off, n), sol.z.segment(off + n, n)));
      off += 2 * n;
    }
    out << "force_complementarity: " << num(fc) << "\n"
        << "gap_sum_residual: " << num(gap_sum_residual(*sizes, lcp, w)) << "\n";
  }
  return r.solved ? exit_code::kSolved : exit_code::kInvalid;
}

int cmd_enumerate(const EnumerateArgs& args, std::ostream& out, std::ostream& err) {
  if (!(args.tol > 0.0)) {
    err << "error: --tol must be positive\n";
    return exit_code::kUsage;
  }
  try {
    const LcpProblem lcp = as_lcp(parse_problem(read_text(args.input)));
    const EnumerationResult result = enumerate_solutions(lcp, args.tol, args.cap);
    const UniquenessVerdict verdict = verdict_of(result);

    using Json = nlohmann::ordered_json;
    auto vec = [](const DenseVector& v) { return Json(v.entries()); };
    Json j = Json::object();
    j["dimension"] = lcp.dim();
    j["supports_examined"] = std::uint64_t{1} << lcp.dim();
    Json sols = Json::array();
    for (std::size_t k = 0; k < result.solutions.size(); ++k) {
      sols.push_back({{"z", vec(result.solutions[k].z)},
                      {"w", vec(result.solutions[k].w)},
                      {"support", support_indices(result.first_support[k], lcp.dim())},
                      {"multiplicity", result.multiplicity[k]}});
    }
    j["solutions"] = std::move(sols);
    Json sing = Json::array();
    for (const SingularSupport& s : result.singular_supports) {
      sing.push_back({{"support", support_indices(s.support, lcp.dim())},
                      {"consistent", s.consistent},
                      {"family_feasible", s.family_feasible},
                      {"family_multiple", s.family_multiple}});
    }
    j["singular_supports"] = std::move(sing);
    j["exhaustive"] = result.exhaustive;
    j["verdict"] = to_string(verdict.kind);
    emit(args.output, j.dump(2) + "\n", out);

    switch (verdict.kind) {
      case Uniqueness::Unique: return exit_code::kSolved;
      case Uniqueness::Multiple: return exit_code::kMultiple;
      case Uniqueness::None: return exit_code::kNone;
    }
  } catch (const SchemaError& e) {
    err << "error: " << args.input.string() << ": " << e.what() << "\n";
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  }
  return exit_code::kUsage;
}

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  const auto kind = parse_kind(args.kind);
  if (!kind) {
    err << "error: unknown kind '" << args.kind << "' (expected general, contact, cascade or beam)\n";
    return exit_code::kUsage;
  }
  if (args.n == 0 || (*kind == ProblemKind::Cascade && args.t == 0)) {
    err << "error: --n and --t must be at least 1\n";
    return exit_code::kUsage;
  }
  try {
    emit(args.output, serialize(generate(*kind, args.n, args.t, args.seed)), out);
    return exit_code::kSolved;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  }
  return exit_code::kUsage;
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  if (args.sizes.empty() || args.repetitions == 0 ||
      std::any_of(args.sizes.begin(), args.sizes.end(), [](std::size_t n) { return n == 0; })) {
    err << "error: sizes must be nonempty and positive, repetitions at least 1\n";
    return exit_code::kUsage;
  }

  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
  };

  out << kBenchHeader << "\n";
  for (std::size_t n : args.sizes) {
    Rng rng(args.seed + n);
    const ContactLcp c = random_contact(rng, n);
    const LcpProblem lcp = assemble(c);

    std::vector<double> lemke_t, pgs_t;
    std::size_t lemke_it = 0, pgs_it = 0;
    try {
      for (std::size_t r = 0; r < args.repetitions; ++r) {
        auto t0 = Clock::now();
        lemke_it = lemke_solve(lcp).iterations;
        lemke_t.push_back(std::chrono::duration<double>(Clock::now() - t0).count());

        t0 = Clock::now();
        pgs_it = solve_structured(c).iterations;
        pgs_t.push_back(std::chrono::duration<double>(Clock::now() - t0).count());
      }
    } catch (const Error& e) {
      err << "error: n=" << n << ": " << e.what() << "\n";
      return exit_code::kNone;
    }
    out << "contact," << n << ",lemke," << num(median(lemke_t)) << "," << lemke_it << "\n";
    out << "contact," << n << ",pgs," << num(median(pgs_t)) << "," << pgs_it << "\n";
  }
  return exit_code::kSolved;
}

}  // namespace gaplcp::cli
