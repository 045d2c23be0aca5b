#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "fracineq/harness.hpp"

namespace fracineq {

enum class ReportFormat { jsonl, csv };

ReportFormat parse_report_format(std::string_view text);
std::string to_string(ReportFormat f);

/// Bound records: id, scenario_digest, lhs, rhs, margin, quad_error, holds,
/// seed, waived, error. Empty summaries write nothing.
void emit_report(const harness::RunSummary& summary, ReportFormat format, std::ostream& out);

/// Audit records: id, alpha, s, p, printed_value, oracle_value, oracle_error,
/// classification, seed. Absent s or p render as null (jsonl) or empty (csv).
void emit_report(const std::vector<harness::AuditReport>& audit, ReportFormat format, std::ostream& out,
                 std::uint64_t seed = 0);

/// Reduction records: kind, id, corollary, discrepancy, applicable, pass, seed.
struct ReductionRecord {
  catalog::ReductionReport report;
  catalog::InequalityId id = catalog::InequalityId::T3_2;
  std::string scenario_digest;
  bool pass = true;
};
void emit_report(const std::vector<ReductionRecord>& records, ReportFormat format, std::ostream& out,
                 std::uint64_t seed = 0);

}  // namespace fracineq
