#include "gaplcp/cli/problem_file.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "gaplcp/error.hpp"

namespace gaplcp::cli {

using Json = nlohmann::ordered_json;

const char* to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::General: return "general";
    case ProblemKind::Contact: return "contact";
    case ProblemKind::Cascade: return "cascade";
    case ProblemKind::Beam: return "beam";
  }
  return "unknown";
}

std::optional<ProblemKind> parse_kind(std::string_view text) {
  if (text == "general") return ProblemKind::General;
  if (text == "contact") return ProblemKind::Contact;
  if (text == "cascade") return ProblemKind::Cascade;
  if (text == "beam") return ProblemKind::Beam;
  return std::nullopt;
}

ProblemKind ProblemFile::kind() const noexcept {
  return static_cast<ProblemKind>(payload.index());
}

LcpProblem as_lcp(const ProblemFile& file) {
  struct Visitor {
    LcpProblem operator()(const LcpProblem& p) const { return p; }
    LcpProblem operator()(const ContactLcp& c) const { return assemble(c); }
    LcpProblem operator()(const CascadeProblem& p) const { return assemble_full(p); }
    LcpProblem operator()(const BeamConfig& b) const { return assemble(to_contact_lcp(b)); }
  };
  return std::visit(Visitor{}, file.payload);
}

// ---------------------------------------------------------------------------
// writing

namespace {

Json to_json(const DenseVector& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Json to_json(const DenseMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (double x : m.row(i)) r.push_back(x);
    rows.push_back(std::move(r));
  }
  return rows;
}

Json payload_json(const ProblemPayload& payload) {
  struct Visitor {
    Json operator()(const LcpProblem& p) const {
      Json j = Json::object();
      j["M"] = to_json(p.m());
      j["q"] = to_json(p.q());
      return j;
    }
    Json operator()(const ContactLcp& c) const {
      Json j = Json::object();
      j["K"] = to_json(c.k());
      j["q_tilde"] = to_json(c.q_tilde());
      j["y_star"] = to_json(c.y_star());
      return j;
    }
    Json operator()(const CascadeProblem& p) const {
      Json blocks = Json::array();
      for (const CascadeBlock& b : p.blocks()) {
        Json jb = Json::object();
        jb["K"] = to_json(b.k);
        Json cs = Json::array();
        for (const Coupling& c : b.couplings) {
          Json jc = Json::object();
          jc["source"] = c.source;
          jc["K_tilde"] = to_json(c.k_tilde);
          cs.push_back(std::move(jc));
        }
        jb["couplings"] = std::move(cs);
        jb["q1"] = to_json(b.q1);
        jb["q2"] = to_json(b.q2);
        blocks.push_back(std::move(jb));
      }
      Json j = Json::object();
      j["blocks"] = std::move(blocks);
      return j;
    }
    Json operator()(const BeamConfig& b) const {
      Json j = Json::object();
      j["length"] = b.length();
      j["EI"] = b.bending_stiffness();
      Json st = Json::array();
      for (const Stabilizer& s : b.stabilizers()) st.push_back({{"x", s.position}, {"gap", s.nominal_gap}});
      j["stabilizers"] = std::move(st);
      Json loads = Json::array();
      for (const PointLoad& p : b.loads()) loads.push_back({{"a", p.position}, {"P", p.magnitude}});
      j["loads"] = std::move(loads);
      return j;
    }
  };
  return std::visit(Visitor{}, payload);
}

}  // namespace

std::string serialize(const ProblemFile& file) {
  Json j = Json::object();
  j["kind"] = to_string(file.kind());
  Json meta = Json::object();
  if (file.metadata.name) meta["name"] = *file.metadata.name;
  if (file.metadata.seed) meta["seed"] = *file.metadata.seed;
  if (!meta.empty()) j["metadata"] = std::move(meta);
  j["payload"] = payload_json(file.payload);
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// reading

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "/" + key;
}

const Json& member(const Json& obj, const std::string& path, const std::string& key) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(join(path, key), "missing");
  return *it;
}

double read_number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  return j.get<double>();
}

std::size_t read_index(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw SchemaError(path, "expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

DenseVector read_vector(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of numbers");
  std::vector<double> v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_number(j[i], join(path, std::to_string(i))));
  return DenseVector(std::move(v));
}

DenseMatrix read_matrix(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string rp = join(path, std::to_string(i));
    rows.push_back(read_vector(j[i], rp).entries());
    if (rows.back().size() != rows.front().size()) {
      throw SchemaError(rp, "row has " + std::to_string(rows.back().size()) +
                                " entries, expected " + std::to_string(rows.front().size()));
    }
  }
  return DenseMatrix::from_rows(rows);
}

void expect_length(const DenseVector& v, std::size_t n, const std::string& path) {
  if (v.size() != n) {
    throw SchemaError(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
  }
}

void expect_square(const DenseMatrix& m, const std::string& path) {
  if (m.rows() == 0) throw SchemaError(path, "matrix is empty");
  if (!m.square()) {
    throw SchemaError(path, "expected a square matrix, got " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
  }
}

// Library invariant failures while building an object are reported against `path`.
template <typename F>
auto build(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw SchemaError(path, e.what());
  }
}

LcpProblem read_general(const Json& p, const std::string& path) {
  const DenseMatrix m = read_matrix(member(p, path, "M"), join(path, "M"));
  expect_square(m, join(path, "M"));
  const DenseVector q = read_vector(member(p, path, "q"), join(path, "q"));
  expect_length(q, m.rows(), join(path, "q"));
  return LcpProblem(m, q);
}

ContactLcp read_contact(const Json& p, const std::string& path) {
  const DenseMatrix k = read_matrix(member(p, path, "K"), join(path, "K"));
  expect_square(k, join(path, "K"));
  const DenseVector qt = read_vector(member(p, path, "q_tilde"), join(path, "q_tilde"));
  expect_length(qt, k.rows(), join(path, "q_tilde"));
  const DenseVector ys = read_vector(member(p, path, "y_star"), join(path, "y_star"));
  expect_length(ys, k.rows(), join(path, "y_star"));
  return build(path, [&] { return ContactLcp(k, qt, ys); });
}

CascadeProblem read_cascade(const Json& p, const std::string& path) {
  const std::string bp = join(path, "blocks");
  const Json& jb = member(p, path, "blocks");
  if (!jb.is_array() || jb.empty()) throw SchemaError(bp, "expected a nonempty array of blocks");
  std::vector<CascadeBlock> blocks;
  for (std::size_t i = 0; i < jb.size(); ++i) {
    const std::string path_i = join(bp, std::to_string(i));
    CascadeBlock b;
    b.k = read_matrix(member(jb[i], path_i, "K"), join(path_i, "K"));
    expect_square(b.k, join(path_i, "K"));
    const std::size_t n = b.k.rows();
    build(join(path_i, "K"), [&] { return spd_factor(b.k); });
    b.q1 = read_vector(member(jb[i], path_i, "q1"), join(path_i, "q1"));
    expect_length(b.q1, n, join(path_i, "q1"));
    b.q2 = read_vector(member(jb[i], path_i, "q2"), join(path_i, "q2"));
    expect_length(b.q2, n, join(path_i, "q2"));

    const std::string cp = join(path_i, "couplings");
    const auto it = jb[i].find("couplings");
    if (it != jb[i].end()) {
      if (!it->is_array()) throw SchemaError(cp, "expected an array");
      for (std::size_t c = 0; c < it->size(); ++c) {
        const std::string path_c = join(cp, std::to_string(c));
        Coupling coupling;
        coupling.source = read_index(member((*it)[c], path_c, "source"), join(path_c, "source"));
        if (coupling.source >= i) {
          throw SchemaError(join(path_c, "source"), "must refer to an earlier block");
        }
        coupling.k_tilde = read_matrix(member((*it)[c], path_c, "K_tilde"), join(path_c, "K_tilde"));
        const std::size_t nj = blocks[coupling.source].size();
        if (coupling.k_tilde.rows() != n || coupling.k_tilde.cols() != nj) {
          throw SchemaError(join(path_c, "K_tilde"),
                            "expected " + std::to_string(n) + "x" + std::to_string(nj) + ", got " +
                                std::to_string(coupling.k_tilde.rows()) + "x" +
                                std::to_string(coupling.k_tilde.cols()));
        }
        b.couplings.push_back(std::move(coupling));
      }
    }
    blocks.push_back(std::move(b));
  }
  return build(path, [&] { return CascadeProblem(std::move(blocks)); });
}

BeamConfig read_beam(const Json& p, const std::string& path) {
  const double length = read_number(member(p, path, "length"), join(path, "length"));
  const double ei = read_number(member(p, path, "EI"), join(path, "EI"));
  std::vector<Stabilizer> st;
  const std::string sp = join(path, "stabilizers");
  const Json& js = member(p, path, "stabilizers");
  if (!js.is_array() || js.empty()) throw SchemaError(sp, "expected a nonempty array");
  for (std::size_t i = 0; i < js.size(); ++i) {
    const std::string pi = join(sp, std::to_string(i));
    st.push_back({read_number(member(js[i], pi, "x"), join(pi, "x")),
                  read_number(member(js[i], pi, "gap"), join(pi, "gap"))});
  }
  std::vector<PointLoad> loads;
  if (const auto it = p.find("loads"); it != p.end()) {
    const std::string lp = join(path, "loads");
    if (!it->is_array()) throw SchemaError(lp, "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string pi = join(lp, std::to_string(i));
      loads.push_back({read_number(member((*it)[i], pi, "a"), join(pi, "a")),
                       read_number(member((*it)[i], pi, "P"), join(pi, "P"))});
    }
  }
  BeamConfig cfg = build(path, [&] { return BeamConfig(length, ei, st, loads); });
  // K must be usable by the contact solvers
  build(path, [&] { return to_contact_lcp(cfg); });
  return cfg;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

ProblemFile parse_problem(std::string_view json_text) {
  const Json j = parse_json(json_text);
  if (!j.is_object()) throw SchemaError("", "expected a JSON object");
  const Json& jk = member(j, "", "kind");
  if (!jk.is_string()) throw SchemaError("kind", "expected a string");
  const auto kind = parse_kind(jk.get<std::string>());
  if (!kind) throw SchemaError("kind", "unknown kind '" + jk.get<std::string>() + "'");

  for (const auto& [key, value] : j.items()) {
    if (key != "kind" && key != "metadata" && key != "payload") {
      throw SchemaError(key, "unexpected field");
    }
  }

  ProblemMetadata meta;
  if (const auto it = j.find("metadata"); it != j.end()) {
    if (!it->is_object()) throw SchemaError("metadata", "expected an object");
    if (const auto n = it->find("name"); n != it->end()) {
      if (!n->is_string()) throw SchemaError("metadata/name", "expected a string");
      meta.name = n->get<std::string>();
    }
    if (const auto s = it->find("seed"); s != it->end()) {
      if (!s->is_number_unsigned() && !(s->is_number_integer() && s->get<std::int64_t>() >= 0)) {
        throw SchemaError("metadata/seed", "expected an unsigned 64-bit integer");
      }
      meta.seed = s->get<std::uint64_t>();
    }
  }

  const Json& p = member(j, "", "payload");
  const std::string path = "payload";
  switch (*kind) {
    case ProblemKind::General: return {read_general(p, path), meta};
    case ProblemKind::Contact: return {read_contact(p, path), meta};
    case ProblemKind::Cascade: return {read_cascade(p, path), meta};
    case ProblemKind::Beam: return {read_beam(p, path), meta};
  }
  throw SchemaError("kind", "unhandled kind");
}

// ---------------------------------------------------------------------------
// solve reports

std::string serialize(const SolveReport& r) {
  Json j = Json::object();
  j["solver_tag"] = r.solver_tag;
  j["z"] = to_json(r.z);
  j["w"] = to_json(r.w);
  j["residuals"] = {{"min_z", r.residuals.min_z},
                    {"min_w", r.residuals.min_w},
                    {"comp_gap", r.residuals.comp_gap}};
  j["iterations"] = r.iterations;
  j["wall_time"] = r.wall_time;
  if (r.contact) {
    j["F_l"] = to_json(r.contact->f_lower);
    j["F_u"] = to_json(r.contact->f_upper);
    j["gamma_l"] = to_json(r.contact->gamma_lower);
    j["gamma_u"] = to_json(r.contact->gamma_upper);
  }
  if (r.uniqueness_verdict) j["uniqueness_verdict"] = *r.uniqueness_verdict;
  return j.dump(2) + "\n";
}

SolveReport parse_report(std::string_view json_text) {
  const Json j = parse_json(json_text);
  if (!j.is_object()) throw SchemaError("", "expected a JSON object");
  SolveReport r;
  r.z = read_vector(member(j, "", "z"), "z");
  if (const auto it = j.find("solver_tag"); it != j.end()) {
    if (!it->is_string()) throw SchemaError("solver_tag", "expected a string");
    r.solver_tag = it->get<std::string>();
  }
  if (const auto it = j.find("w"); it != j.end()) r.w = read_vector(*it, "w");
  if (const auto it = j.find("residuals"); it != j.end()) {
    r.residuals.min_z = read_number(member(*it, "residuals", "min_z"), "residuals/min_z");
    r.residuals.min_w = read_number(member(*it, "residuals", "min_w"), "residuals/min_w");
    r.residuals.comp_gap = read_number(member(*it, "residuals", "comp_gap"), "residuals/comp_gap");
  }
  if (const auto it = j.find("iterations"); it != j.end()) r.iterations = read_index(*it, "iterations");
  if (const auto it = j.find("wall_time"); it != j.end()) r.wall_time = read_number(*it, "wall_time");
  if (j.contains("F_l")) {
    ContactFields c;
    c.f_lower = read_vector(member(j, "", "F_l"), "F_l");
    c.f_upper = read_vector(member(j, "", "F_u"), "F_u");
    c.gamma_lower = read_vector(member(j, "", "gamma_l"), "gamma_l");
    c.gamma_upper = read_vector(member(j, "", "gamma_u"), "gamma_u");
    r.contact = std::move(c);
  }
  if (const auto it = j.find("uniqueness_verdict"); it != j.end()) {
    if (!it->is_string()) throw SchemaError("uniqueness_verdict", "expected a string");
    r.uniqueness_verdict = it->get<std::string>();
  }
  return r;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace gaplcp::cli
