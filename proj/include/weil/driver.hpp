#pragma once

// Command-line driver: verifies single fields or every fundamental
// discriminant up to a bound and emits reports as a text table or JSON.

#include "weil/weil_cohomology.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace weil::cli {

struct RunConfig {
  std::vector<nf::FieldId> fields;
  // Every fundamental |d| <= range_bound, plus Q.
  std::optional<long> range_bound;
  long double tolerance = 1e-9L;
  // "-" writes JSON to the output stream.
  std::optional<std::string> json_path;
  bool table = false;
  unsigned jobs = 1;
  bool show_profile = false;
};

// Throws ValidationError when tolerance <= 0, range bound < 3, jobs == 0 or
// there are no targets.
void validate(const RunConfig& config);

struct GroupRecord {
  std::uint64_t rank = 0;
  std::vector<std::int64_t> factors;
  bool operator==(const GroupRecord&) const = default;
};

struct UnitRecord {
  std::string x;
  std::string y;
  int norm = 0;
  bool operator==(const UnitRecord&) const = default;
};

// Machine-readable mirror of a VerificationReport.
struct ReportRecord {
  std::string field;
  std::int64_t discriminant = 1;
  int r1 = 0;
  int r2 = 0;
  std::int64_t h = 0;
  std::optional<std::int64_t> narrow_h;
  int w = 0;
  double regulator = 0;
  std::optional<UnitRecord> unit;
  std::vector<GroupRecord> compact;
  std::vector<GroupRecord> open;
  std::string metadata;
  double chi = 0;
  std::optional<std::string> chi_exact;
  unsigned zeta_order = 0;
  double zeta_leading = 0;
  std::optional<std::string> zeta_exact;
  double ratio = 0;
  double relative_error = 0;
  double identity_error = 0;
  std::string convention;
  std::string verdict;
  double tolerance = 0;
  double elapsed_ms = 0;
  std::vector<std::string> notes;

  bool operator==(const ReportRecord&) const = default;
};

ReportRecord make_record(const etale::VerificationReport& report);

void to_json(nlohmann::json& j, const ReportRecord& r);
void from_json(const nlohmann::json& j, ReportRecord& r);

struct RunResult {
  int exit_status = 0;
  std::vector<etale::VerificationReport> reports;
  std::size_t skipped = 0;
};

// Verifies every target and writes table / JSON / profile output to `out`,
// notices to `err`. Exit status 0 iff every verdict passes, otherwise 1.
RunResult run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv and calls run(). Usage errors return 2.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace weil::cli
