#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "gaplcp/beam.hpp"
#include "gaplcp/cascade.hpp"
#include "gaplcp/contact.hpp"
#include "gaplcp/lcp.hpp"

namespace gaplcp::cli {

// Malformed or inconsistent input. `field` is a JSON-pointer-like path such
// as "payload/blocks/1/q2".
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string field, const std::string& message)
      : std::runtime_error("field '" + field + "': " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ProblemKind { General, Contact, Cascade, Beam };

const char* to_string(ProblemKind kind);
std::optional<ProblemKind> parse_kind(std::string_view text);

struct ProblemMetadata {
  std::optional<std::string> name;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const ProblemMetadata&, const ProblemMetadata&) = default;
};

using ProblemPayload = std::variant<LcpProblem, ContactLcp, CascadeProblem, BeamConfig>;

struct ProblemFile {
  ProblemPayload payload;
  ProblemMetadata metadata;

  ProblemKind kind() const noexcept;
  bool has_contact_structure() const noexcept { return kind() != ProblemKind::General; }

  friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

// The general LCP behind any kind (assembled for the structured ones).
LcpProblem as_lcp(const ProblemFile& file);

// {"kind": ..., "metadata": {...}, "payload": {...}}. Numbers are written in
// shortest round-trip form, so parse(serialize(p)) == p bit for bit.
std::string serialize(const ProblemFile& file);
ProblemFile parse_problem(std::string_view json_text);

struct Residuals {
  double min_z = 0.0;
  double min_w = 0.0;
  double comp_gap = 0.0;

  friend bool operator==(const Residuals&, const Residuals&) = default;
};

struct ContactFields {
  DenseVector f_lower;
  DenseVector f_upper;
  DenseVector gamma_lower;
  DenseVector gamma_upper;

  friend bool operator==(const ContactFields&, const ContactFields&) = default;
};

struct SolveReport {
  std::string solver_tag;
  DenseVector z;
  DenseVector w;
  Residuals residuals;
  std::uint64_t iterations = 0;
  double wall_time = 0.0;  // seconds
  std::optional<ContactFields> contact;
  std::optional<std::string> uniqueness_verdict;

  friend bool operator==(const SolveReport&, const SolveReport&) = default;
};

std::string serialize(const SolveReport& report);

// Only "z" is required, so a hand-written {"z": [...]} works as a solution file.
SolveReport parse_report(std::string_view json_text);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace gaplcp::cli
