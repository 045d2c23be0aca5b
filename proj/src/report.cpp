#include "fracineq/report.hpp"

#include <cmath>
#include <optional>

#include <json.hpp>

#include "fracineq/error.hpp"
#include "fracineq/format.hpp"

namespace fracineq {
namespace {

// One record, rendered as a JSON object or a CSV row with the same fields.
class Record {
 public:
  void str(const char* key, const std::string& v) { fields_.push_back({key, nlohmann::json(v).dump(), csv_quote(v)}); }
  void str(const char* key, const std::optional<std::string>& v) {
    if (v) {
      str(key, *v);
    } else {
      fields_.push_back({key, "null", ""});
    }
  }
  void num(const char* key, double v) {
    if (std::isfinite(v)) {
      const std::string s = format_double(v);
      fields_.push_back({key, s, s});
    } else {
      fields_.push_back({key, "null", format_double(v)});
    }
  }
  void num(const char* key, const std::optional<double>& v) {
    if (v) {
      num(key, *v);
    } else {
      fields_.push_back({key, "null", ""});
    }
  }
  void uint(const char* key, std::uint64_t v) {
    const std::string s = std::to_string(v);
    fields_.push_back({key, s, s});
  }
  void boolean(const char* key, bool v) {
    const char* s = v ? "true" : "false";
    fields_.push_back({key, s, s});
  }

  void write(ReportFormat format, std::ostream& out, bool header) const {
    if (format == ReportFormat::jsonl) {
      out << '{';
      for (std::size_t i = 0; i < fields_.size(); ++i) {
        if (i) out << ',';
        out << '"' << fields_[i].key << "\":" << fields_[i].json;
      }
      out << "}\n";
      return;
    }
    if (header) {
      for (std::size_t i = 0; i < fields_.size(); ++i) out << (i ? "," : "") << fields_[i].key;
      out << '\n';
    }
    for (std::size_t i = 0; i < fields_.size(); ++i) out << (i ? "," : "") << fields_[i].csv;
    out << '\n';
  }

 private:
  static std::string csv_quote(const std::string& v) {
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string q = "\"";
    for (char c : v) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  }

  struct Field {
    const char* key;
    std::string json;
    std::string csv;
  };
  std::vector<Field> fields_;
};

template <class Items, class Build>
void emit_all(const Items& items, ReportFormat format, std::ostream& out, Build&& build) {
  bool first = true;
  for (const auto& item : items) {
    Record r;
    build(r, item);
    r.write(format, out, first);
    first = false;
  }
}

}  // namespace

ReportFormat parse_report_format(std::string_view text) {
  if (text == "jsonl") return ReportFormat::jsonl;
  if (text == "csv") return ReportFormat::csv;
  throw ParseError("unknown report format '" + std::string(text) + "' (expected jsonl or csv)");
}

std::string to_string(ReportFormat f) { return f == ReportFormat::jsonl ? "jsonl" : "csv"; }

void emit_report(const harness::RunSummary& summary, ReportFormat format, std::ostream& out) {
  emit_all(summary.reports, format, out, [&](Record& r, const catalog::BoundReport& b) {
    r.str("id", catalog::to_string(b.id));
    r.str("scenario_digest", b.scenario_digest);
    r.num("lhs", b.lhs);
    r.num("rhs", b.rhs);
    r.num("margin", b.margin);
    r.num("quad_error", b.quad_error);
    r.boolean("holds", b.holds);
    r.uint("seed", summary.seed);
    r.boolean("waived", b.waived);
    r.str("error", b.error);
  });
}

void emit_report(const std::vector<harness::AuditReport>& audit, ReportFormat format, std::ostream& out,
                 std::uint64_t seed) {
  emit_all(audit, format, out, [&](Record& r, const harness::AuditReport& a) {
    r.str("id", catalog::to_string(a.corollary));
    r.num("alpha", a.alpha);
    r.num("s", a.s);
    r.num("p", a.p);
    r.num("printed_value", a.printed_value);
    r.num("oracle_value", a.oracle_value);
    r.num("oracle_error", a.oracle_error);
    r.str("classification", harness::to_string(a.classification));
    r.uint("seed", seed);
  });
}

void emit_report(const std::vector<ReductionRecord>& records, ReportFormat format, std::ostream& out,
                 std::uint64_t seed) {
  emit_all(records, format, out, [&](Record& r, const ReductionRecord& rec) {
    r.str("kind", catalog::to_string(rec.report.kind));
    r.str("id", catalog::to_string(rec.id));
    r.str("scenario_digest", rec.scenario_digest);
    std::optional<std::string> cor;
    if (rec.report.corollary) cor = catalog::to_string(*rec.report.corollary);
    r.str("corollary", cor);
    r.num("discrepancy", rec.report.max_abs_discrepancy);
    r.boolean("applicable", rec.report.applicable);
    r.boolean("pass", rec.pass);
    r.uint("seed", seed);
  });
}

}  // namespace fracineq
