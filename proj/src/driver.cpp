#include "weil/driver.hpp"

#include "weil/errors.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace weil::cli {

namespace {

GroupRecord group_record(const abelian::FgAbGroup& g) {
  GroupRecord r;
  r.rank = g.free_rank();
  for (const auto& f : g.invariant_factors()) r.factors.push_back(f.get_si());
  return r;
}

std::string rational_string(const mpq_class& q) { return q.get_str(); }

std::string format_sci(long double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Le", digits, v);
  return buf;
}

std::vector<nf::FieldId> collect_targets(const RunConfig& config, std::size_t& skipped) {
  std::vector<nf::FieldId> targets = config.fields;
  skipped = 0;
  if (config.range_bound) {
    const auto range = nf::corpus(*config.range_bound);
    targets.insert(targets.end(), range.begin(), range.end());
    // Candidates are +-2 .. +-N; 1 stands for Q.
    skipped = 2 * static_cast<std::size_t>(*config.range_bound - 1) - (range.size() - 1);
  }
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  return targets;
}

void write_table(std::ostream& out, const std::vector<etale::VerificationReport>& reports) {
  out << std::setw(8) << "d" << std::setw(6) << "h" << std::setw(22) << "R" << std::setw(4) << "w"
      << std::setw(22) << "|chi|" << std::setw(22) << "|zeta*(0)|" << std::setw(12) << "rel.err"
      << "  verdict\n";
  for (const auto& r : reports) {
    const auto& inv = r.invariants;
    out << std::setw(8) << inv.field.name() << std::setw(6) << inv.h << std::setw(22)
        << format_sci(inv.regulator, 14) << std::setw(4) << inv.w << std::setw(22)
        << format_sci(std::fabs(r.chi), 14) << std::setw(22)
        << format_sci(std::fabs(r.zeta_star.leading), 14) << std::setw(12)
        << format_sci(r.relative_error, 2) << "  "
        << (r.verdict == etale::Verdict::Pass ? "pass" : "FAIL") << '\n';
  }
}

void write_profile(std::ostream& out, const etale::VerificationReport& r) {
  auto line = [&](const char* label, const etale::GroupProfile& g) {
    out << "  " << label;
    for (std::size_t q = 0; q < g.size(); ++q)
      out << (q ? ", " : "") << "H^" << q << " = " << g[q].to_string();
    out << '\n';
  };
  out << "field " << r.invariants.field.name() << '\n';
  line("compact support  ", r.profile.compact);
  line("open             ", r.profile.open);
  out << "  psi-complex exact: " << (r.psi_exact ? "yes" : "no")
      << ", orientation: " << etale::orientation_name(r.orientation) << '\n';
  out << "  note: " << r.profile.metadata << '\n';
}

}  // namespace

void validate(const RunConfig& config) {
  if (!(config.tolerance > 0)) throw ValidationError("--tol must be positive");
  if (config.range_bound && *config.range_bound < 3) throw ValidationError("--range must be at least 3");
  if (config.jobs == 0) throw ValidationError("--jobs must be at least 1");
  if (config.fields.empty() && !config.range_bound)
    throw ValidationError("nothing to verify: give --field or --range");
}

ReportRecord make_record(const etale::VerificationReport& rep) {
  const auto& inv = rep.invariants;
  ReportRecord r;
  r.field = inv.field.name();
  r.discriminant = inv.field.discriminant();
  r.r1 = inv.r1;
  r.r2 = inv.r2;
  r.h = inv.h;
  r.narrow_h = inv.narrow_h;
  r.w = inv.w;
  r.regulator = static_cast<double>(inv.regulator);
  if (inv.fundamental_unit)
    r.unit = UnitRecord{inv.fundamental_unit->x.get_str(), inv.fundamental_unit->y.get_str(),
                        inv.unit_norm};
  for (const auto& g : rep.profile.compact) r.compact.push_back(group_record(g));
  for (const auto& g : rep.profile.open) r.open.push_back(group_record(g));
  r.metadata = rep.profile.metadata;
  r.chi = static_cast<double>(rep.chi);
  if (rep.chi_exact) r.chi_exact = rational_string(*rep.chi_exact);
  r.zeta_order = rep.zeta_star.order;
  r.zeta_leading = static_cast<double>(rep.zeta_star.leading);
  if (rep.zeta_star.exact_leading) r.zeta_exact = rational_string(*rep.zeta_star.exact_leading);
  r.ratio = static_cast<double>(rep.ratio);
  r.relative_error = static_cast<double>(rep.relative_error);
  r.identity_error = static_cast<double>(rep.identity_error);
  r.convention = std::string(etale::orientation_name(rep.orientation));
  r.verdict = rep.verdict == etale::Verdict::Pass ? "pass" : "fail";
  r.tolerance = static_cast<double>(rep.tolerance);
  r.elapsed_ms = rep.elapsed_ms;
  r.notes = rep.notes;
  return r;
}

void to_json(nlohmann::json& j, const GroupRecord& g) {
  j = nlohmann::json{{"rank", g.rank}, {"factors", g.factors}};
}

void from_json(const nlohmann::json& j, GroupRecord& g) {
  j.at("rank").get_to(g.rank);
  j.at("factors").get_to(g.factors);
}

template <class T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <class T>
std::optional<T> optional_from(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

void to_json(nlohmann::json& j, const ReportRecord& r) {
  nlohmann::json unit = nullptr;
  if (r.unit) unit = {{"x", r.unit->x}, {"y", r.unit->y}, {"denominator", 2}, {"norm", r.unit->norm}};
  nlohmann::json zeta{{"order", r.zeta_order}, {"leading", r.zeta_leading},
                      {"exact", optional_json(r.zeta_exact)}};
  j = nlohmann::json{
      {"field", r.field},
      {"discriminant", r.discriminant},
      {"r1", r.r1},
      {"r2", r.r2},
      {"h", r.h},
      {"narrow_h", optional_json(r.narrow_h)},
      {"w", r.w},
      {"regulator", r.regulator},
      {"unit", unit},
      {"cohomology", {{"compact", r.compact}, {"open", r.open}, {"metadata", r.metadata}}},
      {"chi", r.chi},
      {"chi_exact", optional_json(r.chi_exact)},
      {"zeta_star", zeta},
      {"ratio", r.ratio},
      {"relative_error", r.relative_error},
      {"identity_error", r.identity_error},
      {"convention", r.convention},
      {"verdict", r.verdict},
      {"tolerance", r.tolerance},
      {"elapsed_ms", r.elapsed_ms},
      {"notes", r.notes},
  };
}

void from_json(const nlohmann::json& j, ReportRecord& r) {
  j.at("field").get_to(r.field);
  j.at("discriminant").get_to(r.discriminant);
  j.at("r1").get_to(r.r1);
  j.at("r2").get_to(r.r2);
  j.at("h").get_to(r.h);
  r.narrow_h = optional_from<std::int64_t>(j, "narrow_h");
  j.at("w").get_to(r.w);
  j.at("regulator").get_to(r.regulator);
  if (j.at("unit").is_null()) {
    r.unit.reset();
  } else {
    const auto& u = j.at("unit");
    r.unit = UnitRecord{u.at("x").get<std::string>(), u.at("y").get<std::string>(),
                        u.at("norm").get<int>()};
  }
  const auto& coh = j.at("cohomology");
  coh.at("compact").get_to(r.compact);
  coh.at("open").get_to(r.open);
  coh.at("metadata").get_to(r.metadata);
  j.at("chi").get_to(r.chi);
  r.chi_exact = optional_from<std::string>(j, "chi_exact");
  const auto& z = j.at("zeta_star");
  z.at("order").get_to(r.zeta_order);
  z.at("leading").get_to(r.zeta_leading);
  r.zeta_exact = optional_from<std::string>(z, "exact");
  j.at("ratio").get_to(r.ratio);
  j.at("relative_error").get_to(r.relative_error);
  j.at("identity_error").get_to(r.identity_error);
  j.at("convention").get_to(r.convention);
  j.at("verdict").get_to(r.verdict);
  j.at("tolerance").get_to(r.tolerance);
  j.at("elapsed_ms").get_to(r.elapsed_ms);
  j.at("notes").get_to(r.notes);
}

RunResult run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  validate(config);
  RunResult result;
  const std::vector<nf::FieldId> targets = collect_targets(config, result.skipped);
  if (result.skipped > 0)
    err << "notice: skipped " << result.skipped << " non-fundamental values in range\n";

  result.reports.resize(targets.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < targets.size();) {
      try {
        result.reports[i] = etale::verify_field(targets[i], config.tolerance);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::min<unsigned>(config.jobs, static_cast<unsigned>(targets.size()));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  const bool json_to_out = config.json_path && *config.json_path == "-";
  if (config.json_path) {
    nlohmann::json array = nlohmann::json::array();
    for (const auto& r : result.reports) array.push_back(make_record(r));
    if (json_to_out) {
      out << array.dump(2) << '\n';
    } else {
      std::ofstream file(*config.json_path);
      if (!file) throw std::runtime_error("cannot open " + *config.json_path + " for writing");
      file << array.dump(2) << '\n';
    }
  }
  if (config.show_profile)
    for (const auto& r : result.reports) write_profile(out, r);
  if (config.table || (!config.json_path && !config.show_profile)) write_table(out, result.reports);

  std::size_t passed = 0;
  long double worst = 0;
  for (const auto& r : result.reports) {
    if (r.verdict == etale::Verdict::Pass) ++passed;
    worst = std::max(worst, r.relative_error);
  }
  const std::size_t failed = result.reports.size() - passed;
  std::ostream& summary = json_to_out ? err : out;
  summary << "summary: " << result.reports.size() << " fields, " << passed << " passed, " << failed
          << " failed, max relative error " << format_sci(worst, 3) << '\n';
  result.exit_status = failed == 0 ? 0 : 1;
  return result;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verify |chi(H^*_c(Y-bar, Z))| = |zeta*_F(0)| for Q and quadratic fields", "weilchi"};
  std::vector<std::string> fields;
  std::optional<long> range;
  double tol = 1e-9;
  std::string json_path;
  bool table = false;
  unsigned jobs = 1;
  bool show_profile = false;
  app.add_option("--field", fields, "Fundamental discriminant d, or Q (repeatable)");
  app.add_option("--range", range, "Verify Q and every fundamental |d| <= N");
  app.add_option("--tol", tol, "Relative tolerance for |chi| / |zeta*(0)| (default 1e-9)");
  app.add_option("--json", json_path, "Write JSON reports to this path ('-' for stdout)");
  app.add_flag("--table", table, "Print the human-readable table");
  app.add_option("--jobs", jobs, "Worker threads (default 1)");
  app.add_flag("--show-profile", show_profile, "Print the cohomology groups of each field");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return 2;
  }

  RunConfig config;
  try {
    for (const auto& f : fields) config.fields.push_back(nf::FieldId::parse(f));
    config.range_bound = range;
    config.tolerance = tol;
    if (!json_path.empty()) config.json_path = json_path;
    config.table = table;
    config.jobs = jobs;
    config.show_profile = show_profile;
    validate(config);
  } catch (const ValidationError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    return run(config, out, err).exit_status;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace weil::cli
