#include <algorithm>
#include <cstdio>
#include <string>

#include "pinpat/cyclic.hpp"
#include "pinpat/errors.hpp"
#include "pinpat/lab/commands.hpp"
#include "pinpat/lab/output.hpp"

namespace pinpat::lab {

int cmd_rm_table(const ExperimentConfig& cfg) {
  require(cfg.n_min >= 1 && cfg.n_max >= cfg.n_min, ErrorCode::ConfigError, "need 1 <= n_min <= n_max");
  for (int m : cfg.m_values) require(m >= 2, ErrorCode::ConfigError, "m_values must be >= 2");
  RunReport rep("rm-table", cfg);
  Stopwatch sw;
  CsvTable csv({"N", "m", "r_exact", "gowers_bound", "status", "witness"});
  ojson rows = ojson::array();
  std::uint64_t too_large = 0, bound_violations = 0, witness_failures = 0, r2_failures = 0;
  ojson first_bad = nullptr;

  for (int m : cfg.m_values) {
    for (std::uint32_t n = std::max<std::uint32_t>(cfg.n_min, static_cast<std::uint32_t>(m)); n <= cfg.n_max; ++n) {
      ojson row;
      row["N"] = n;
      row["m"] = m;
      std::string bound_cell, status = "ok", witness_cell;
      double bound = static_cast<double>(n);
      try {
        const GowersBound g = gowers_bound_log(n, m);
        bound = std::min(bound, g.value);
        row["gowers_bound"] = g.value;
        bound_cell = csv_number(g.value);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DomainError) throw;
        row["gowers_bound"] = nullptr;  // ln ln N < 1: compared against N only
      }
      try {
        const RmResult r = r_m_exact(n, m, cfg.exact_limit);
        const auto members = r.witness.members();
        row["r_exact"] = r.size;
        row["witness"] = members;
        for (std::size_t i = 0; i < members.size(); ++i) witness_cell += (i ? " " : "") + std::to_string(members[i]);
        const bool free = !has_ap(r.witness, m).has_value() && r.witness.size() == r.size;
        const bool within = static_cast<double>(r.size) <= bound;
        if (!free) ++witness_failures;
        if (!within) ++bound_violations;
        if (m == 2 && r.size != 1) ++r2_failures;
        if ((!free || !within || (m == 2 && r.size != 1)) && first_bad.is_null()) first_bad = row;
        csv.add({std::to_string(n), std::to_string(m), std::to_string(r.size), bound_cell, status, witness_cell});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::TooLarge) throw;
        ++too_large;
        status = "too_large";
        row["r_exact"] = nullptr;
        row["status"] = status;
        csv.add({std::to_string(n), std::to_string(m), "", bound_cell, status, ""});
      }
      rows.push_back(std::move(row));
    }
  }
  rep.time("table", sw.seconds());
  rep.results()["rows"] = std::move(rows);
  rep.results()["too_large_rows"] = too_large;
  rep.check("witness_ap_free", witness_failures == 0,
            std::to_string(witness_failures) + " witness sets contain an AP", first_bad);
  rep.check("bounded_by_min_n_gowers", bound_violations == 0,
            std::to_string(bound_violations) + " rows exceed min(N, gowers_bound)", first_bad);
  rep.check("r2_equals_one", r2_failures == 0, std::to_string(r2_failures) + " m = 2 rows differ from 1", first_bad);
  if (too_large > 0)
    rep.check("exact_limit", Verdict::warn, std::to_string(too_large) + " rows beyond the exact limit were skipped");

  ensure_dir(cfg.out);
  csv.write(cfg.out + "/rm_table.csv");
  rep.write(cfg.out);
  return rep.exit_code();
}

}  // namespace pinpat::lab
