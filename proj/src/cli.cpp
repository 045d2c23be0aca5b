#include "fracineq/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "fracineq/error.hpp"
#include "fracineq/format.hpp"
#include "fracineq/harness.hpp"

namespace fracineq::cli {
namespace {

const std::vector<std::string> kValueKeys = {"ineq", "corollary", "f",    "h",      "eta",    "lambda",
                                             "a",    "b",         "alpha", "alpha-grid", "s", "p",
                                             "seed", "n",         "budget", "out",    "format", "quad-tol"};
constexpr const char* kWaiveKey = "waive-certification";

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& text, const std::string& key) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    std::string item = trim(std::string_view(text).substr(start, comma == std::string::npos ? comma : comma - start));
    if (item.empty()) throw ParseError("empty list element in --" + key + " '" + text + "'");
    items.push_back(std::move(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return items;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split_list(text, key)) out.push_back(parse_double(item));
  return out;
}

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + format_double(values[i]);
  return out;
}

std::vector<double> expand_grid(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? first : text.find(':', first + 1);
  if (second == std::string::npos) throw ParseError("--alpha-grid expects lo:hi:step, got '" + text + "'");
  const double lo = parse_double(text.substr(0, first));
  const double hi = parse_double(text.substr(first + 1, second - first - 1));
  const double step = parse_double(text.substr(second + 1));
  if (!(step > 0.0) || !(hi >= lo)) throw ParseError("--alpha-grid needs lo <= hi and step > 0, got '" + text + "'");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (count > 100000) throw ParseError("--alpha-grid '" + text + "' has too many points");
  std::vector<double> grid;
  for (std::size_t k = 0; k < count; ++k) grid.push_back(lo + static_cast<double>(k) * step);
  return grid;
}

bool parse_bool(const std::string& text, const std::string& key) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ParseError("invalid boolean '" + text + "' for " + key);
}

// Flat `key = value` lines; `#` starts a comment.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected key = value, got '" + body + "'");
    }
    std::string key = trim(std::string_view(body).substr(0, eq));
    std::string value = trim(std::string_view(body).substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    const bool known = key == kWaiveKey || std::find(kValueKeys.begin(), kValueKeys.end(), key) != kValueKeys.end();
    if (!known) throw ParseError(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    values[key] = value;
  }
  return values;
}

Command parse_command(const std::string& text) {
  if (text == "verify") return Command::verify;
  if (text == "audit") return Command::audit;
  if (text == "search") return Command::search;
  if (text == "reduce") return Command::reduce;
  throw ParseError("unknown command '" + text + "' (expected verify, audit, search or reduce)");
}

std::string usage() {
  return "usage: fracineq <verify|audit|search|reduce> [--ineq IDS] [--corollary IDS] [--f SPEC] [--h SPEC]\n"
         "                [--eta SPEC] [--lambda X] [--a X] [--b X] [--alpha LIST | --alpha-grid lo:hi:step]\n"
         "                [--s LIST] [--p LIST] [--seed N] [--n N] [--budget N] [--waive-certification]\n"
         "                [--out PATH] [--format jsonl|csv] [--config PATH]\n";
}

// ---------------------------------------------------------------------------

quad::QuadConfig scenario_quad(const RunPlan& plan) {
  quad::QuadConfig cfg = harness::GenerationConfig::defaults().quad;
  if (plan.quad_tol) cfg.abs_tol = cfg.rel_tol = *plan.quad_tol;
  return cfg;
}

std::vector<Scenario> explicit_scenarios(const RunPlan& plan) {
  const FunctionSpec f = parse_function_spec(*plan.f);
  const HClass h = parse_hclass(plan.h);
  const InvexityMap map = parse_invexity_map(plan.eta, plan.lambda);
  std::vector<Scenario> out;
  for (double alpha : plan.alpha) {
    for (double p : plan.p) {
      Scenario s;
      s.f = f;
      s.a = plan.a;
      s.b = plan.b;
      s.alpha = alpha;
      s.p = p;
      s.h = h;
      s.map = map;
      s.quad_cfg = scenario_quad(plan);
      s.validate();
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<Scenario> generated_scenarios(const RunPlan& plan, std::ostream& err) {
  harness::GenerationConfig gen = harness::GenerationConfig::defaults();
  gen.quad = scenario_quad(plan);
  auto result = harness::generate_scenarios(gen, plan.seed, plan.n);
  for (const auto& note : result.notes) err << "note: " << note << '\n';
  return std::move(result.scenarios);
}

std::vector<Scenario> plan_scenarios(const RunPlan& plan, std::ostream& err) {
  return plan.f ? explicit_scenarios(plan) : generated_scenarios(plan, err);
}

int run_verify(const RunPlan& plan, std::ostream& records, std::ostream& err) {
  const auto summary =
      harness::run_verification(plan.ids, plan_scenarios(plan, err), plan.waive_certification, plan.seed);
  emit_report(summary, plan.format, records);
  err << "verify: " << summary.reports.size() << " reports over " << summary.scenarios_run << " scenarios, "
      << summary.violations << " violations, min margin " << format_double(summary.min_margin) << '\n';
  return exit_code_for(summary.reports);
}

int run_audit(const RunPlan& plan, std::ostream& records, std::ostream& err) {
  quad::QuadConfig cfg = harness::audit_quad_config();
  if (plan.quad_tol) cfg.abs_tol = cfg.rel_tol = *plan.quad_tol;
  const auto audit = harness::audit_constants(plan.corollaries, plan.alpha, plan.s, plan.p, cfg);
  emit_report(audit, plan.format, records, plan.seed);
  std::map<harness::Classification, std::size_t> counts;
  for (const auto& r : audit) ++counts[r.classification];
  err << "audit: " << audit.size() << " entries";
  for (const auto& [cls, count] : counts) err << ", " << harness::to_string(cls) << " " << count;
  err << '\n';
  return exit_code_for(audit);
}

int run_search(const RunPlan& plan, std::ostream& records, std::ostream& err) {
  harness::RunSummary merged;
  merged.seed = plan.seed;
  for (auto id : plan.ids) {
    harness::SearchConfig cfg;
    cfg.budget = plan.budget;
    cfg.seed = plan.seed;
    cfg.generation.quad = scenario_quad(plan);
    auto outcome = harness::search_counterexamples(id, cfg, plan.waive_certification);
    err << "search " << catalog::to_string(id) << ": " << outcome.summary.scenarios_run << " evaluations, "
        << outcome.summary.violations << " violations, min margin "
        << format_double(outcome.summary.min_margin);
    if (outcome.best) err << " at " << outcome.best->describe();
    err << '\n';
    merged.scenarios_run += outcome.summary.scenarios_run;
    for (auto& r : outcome.summary.reports) merged.reports.push_back(std::move(r));
  }
  emit_report(merged, plan.format, records);
  return exit_code_for(merged.reports);
}

int run_reduce(const RunPlan& plan, std::ostream& records, std::ostream& err) {
  using catalog::ReductionKind;
  std::vector<ReductionRecord> out;
  std::map<std::tuple<catalog::CorollaryId, double, double>, harness::Classification> classes;
  const auto corollary_class = [&](catalog::CorollaryId id, const Scenario& s) {
    std::optional<double> s_param;
    if (const auto* pw = std::get_if<HClass::Power>(&s.h.kind())) s_param = pw->s;
    const auto key = std::make_tuple(id, s_param.value_or(0.0), s.p);
    if (auto it = classes.find(key); it != classes.end()) return it->second;
    const double printed = catalog::corollary_constant(id, 1.0, s_param, s.p);
    const auto oracle = catalog::generic_constant(id, 1.0, s_param, s.p, harness::audit_quad_config());
    return classes[key] = harness::classify(printed, oracle.value, oracle.error, oracle.converged);
  };

  for (const Scenario& s : plan_scenarios(plan, err)) {
    const double scale = std::max(1.0, std::abs(s.f.value(s.a)) + std::abs(s.f.value(s.b)));
    const double tol = 1e-9 * scale;
    for (auto id : plan.ids) {
      ReductionRecord rec{catalog::reduction_check(ReductionKind::alpha_one, s, id), id, s.digest(), true};
      if (rec.report.applicable && rec.report.corollary) {
        // Only corollaries that match the generic theorem are expected to agree.
        const auto cls = corollary_class(*rec.report.corollary, s);
        rec.pass = cls == harness::Classification::exact ? rec.report.max_abs_discrepancy <= tol
                                                         : cls != harness::Classification::under_oracle;
      }
      out.push_back(std::move(rec));
    }
    for (auto kind : {ReductionKind::phi_zero, ReductionKind::both}) {
      ReductionRecord rec{catalog::reduction_check(kind, s), plan.ids.front(), s.digest(), true};
      rec.pass = rec.report.max_abs_discrepancy <= tol;
      out.push_back(std::move(rec));
    }
  }
  emit_report(out, plan.format, records, plan.seed);
  const auto failures = std::count_if(out.begin(), out.end(), [](const auto& r) { return !r.pass; });
  err << "reduce: " << out.size() << " checks, " << failures << " failed\n";
  return failures ? kExitFindings : kExitOk;
}

void write_atomically(const std::string& path, const std::string& bytes) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("cannot open '" + tmp.string() + "' for writing");
    file << bytes;
    file.flush();
    if (!file) throw Error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("cannot move output into place at '" + path + "'");
  }
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::verify:
      return "verify";
    case Command::audit:
      return "audit";
    case Command::search:
      return "search";
    case Command::reduce:
      return "reduce";
  }
  return "?";
}

RunPlan parse_args(const std::vector<std::string>& argv, const std::map<std::string, std::string>& env) {
  CLI::App app{"fracineq"};
  app.set_help_flag();
  app.allow_extras(false);

  std::string command_text;
  app.add_option("command", command_text)->required();
  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option*> options;
  for (const auto& key : kValueKeys) {
    options[key] = app.add_option("--" + key, flag_values[key]);
  }
  std::string config_path;
  auto* config_opt = app.add_option("--config", config_path);
  auto* waive_opt = app.add_flag("--waive-certification");

  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw ParseError(e.what());
  }

  // Resolve layers: defaults < env < config < flags.
  std::map<std::string, std::string> values;
  std::string tol_origin = "--quad-tol";
  if (auto it = env.find("FRACINEQ_QUAD_TOL"); it != env.end() && !it->second.empty()) {
    values["quad-tol"] = it->second;
    tol_origin = "FRACINEQ_QUAD_TOL";
  }
  if (config_opt->count()) {
    for (auto& [k, v] : read_config(config_path)) {
      if (k == "quad-tol") tol_origin = "config key quad-tol";
      values[k] = v;
    }
  }
  for (const auto& key : kValueKeys) {
    if (options[key]->count()) values[key] = flag_values[key];
  }
  if (options["quad-tol"]->count()) tol_origin = "--quad-tol";
  if (waive_opt->count()) values[kWaiveKey] = "true";

  RunPlan plan;
  plan.command = parse_command(command_text);
  const auto get = [&](const std::string& key) -> const std::string* {
    auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  };

  if (const auto* v = get("ineq")) {
    for (const auto& item : split_list(*v, "ineq")) plan.ids.push_back(catalog::parse_inequality_id(item));
  } else {
    plan.ids.assign(catalog::kTheorems.begin(), catalog::kTheorems.end());
  }
  if (const auto* v = get("corollary")) {
    for (const auto& item : split_list(*v, "corollary")) plan.corollaries.push_back(catalog::parse_corollary_id(item));
  } else {
    plan.corollaries.assign(catalog::kCorollaries.begin(), catalog::kCorollaries.end());
  }
  if (const auto* v = get("f")) plan.f = parse_function_spec(*v).render();
  if (const auto* v = get("h")) plan.h = parse_hclass(*v).render();
  if (const auto* v = get("lambda")) plan.lambda = parse_double(*v);
  if (const auto* v = get("eta")) plan.eta = parse_invexity_map(*v, plan.lambda).render_eta();
  if (const auto* v = get("a")) plan.a = parse_double(*v);
  if (const auto* v = get("b")) plan.b = parse_double(*v);

  const bool audit = plan.command == Command::audit;
  const auto* alpha = get("alpha");
  const auto* grid = get("alpha-grid");
  if (alpha && grid) throw ParseError("--alpha and --alpha-grid are mutually exclusive");
  if (alpha) {
    plan.alpha = parse_double_list(*alpha, "alpha");
  } else if (grid) {
    plan.alpha = expand_grid(*grid);
  } else {
    plan.alpha = audit ? std::vector<double>{0.5, 1.0, 2.0} : std::vector<double>{1.0};
  }
  const auto* s = get("s");
  plan.s = s ? parse_double_list(*s, "s") : std::vector<double>{0.25, 0.5, 1.0};
  const auto* p = get("p");
  plan.p = p ? parse_double_list(*p, "p") : audit ? std::vector<double>{1.5, 2.0, 3.0} : std::vector<double>{2.0};

  if (const auto* v = get("seed")) plan.seed = parse_uint(*v);
  if (const auto* v = get("n")) {
    plan.n = parse_uint(*v);
    if (plan.n == 0) throw ParseError("--n must be at least 1");
  } else {
    plan.n = plan.command == Command::reduce ? 20 : 100;
  }
  if (const auto* v = get("budget")) {
    plan.budget = parse_uint(*v);
    if (plan.budget == 0) throw ParseError("--budget must be at least 1");
  }
  if (const auto* v = get(kWaiveKey)) plan.waive_certification = parse_bool(*v, kWaiveKey);
  if (const auto* v = get("out")) plan.out = *v;
  if (const auto* v = get("format")) plan.format = parse_report_format(*v);
  if (const auto* v = get("quad-tol")) {
    try {
      plan.quad_tol = parse_double(*v);
    } catch (const ParseError& e) {
      throw ParseError(tol_origin + ": " + e.what());
    }
    if (!(*plan.quad_tol > 0.0)) throw ParseError(tol_origin + " must be positive, got '" + *v + "'");
  }

  for (double x : plan.alpha) {
    if (!(x > 0.0)) throw ParseError("alpha must be positive, got " + format_double(x));
  }
  for (double x : plan.p) {
    if (!(x > 1.0)) throw ParseError("p must exceed 1, got " + format_double(x));
  }
  for (double x : plan.s) {
    if (!(x > 0.0 && x <= 1.0)) throw ParseError("s must lie in (0,1], got " + format_double(x));
  }
  return plan;
}

std::vector<std::string> render_args(const RunPlan& plan) {
  std::vector<std::string> args{to_string(plan.command)};
  const auto add = [&](const std::string& key, const std::string& value) {
    args.push_back("--" + key);
    args.push_back(value);
  };
  std::string ids;
  for (std::size_t i = 0; i < plan.ids.size(); ++i) ids += (i ? "," : "") + catalog::to_string(plan.ids[i]);
  add("ineq", ids);
  std::string cors;
  for (std::size_t i = 0; i < plan.corollaries.size(); ++i) {
    cors += (i ? "," : "") + catalog::to_string(plan.corollaries[i]);
  }
  add("corollary", cors);
  if (plan.f) add("f", *plan.f);
  add("h", plan.h);
  add("eta", plan.eta);
  add("lambda", format_double(plan.lambda));
  add("a", format_double(plan.a));
  add("b", format_double(plan.b));
  add("alpha", join_doubles(plan.alpha));
  add("s", join_doubles(plan.s));
  add("p", join_doubles(plan.p));
  add("seed", std::to_string(plan.seed));
  add("n", std::to_string(plan.n));
  add("budget", std::to_string(plan.budget));
  if (plan.waive_certification) args.push_back("--waive-certification");
  if (plan.out) add("out", *plan.out);
  add("format", to_string(plan.format));
  if (plan.quad_tol) add("quad-tol", format_double(*plan.quad_tol));
  return args;
}

int exit_code_for(const std::vector<catalog::BoundReport>& reports) {
  return std::any_of(reports.begin(), reports.end(), [](const auto& r) { return !r.holds; }) ? kExitFindings
                                                                                            : kExitOk;
}

int exit_code_for(const std::vector<harness::AuditReport>& audit) {
  return std::any_of(audit.begin(), audit.end(),
                     [](const auto& r) { return r.classification == harness::Classification::under_oracle; })
             ? kExitFindings
             : kExitOk;
}

int execute_plan(const RunPlan& plan, std::ostream& out, std::ostream& err) {
  std::ostringstream records;
  int code = kExitOk;
  try {
    switch (plan.command) {
      case Command::verify:
        code = run_verify(plan, records, err);
        break;
      case Command::audit:
        code = run_audit(plan, records, err);
        break;
      case Command::search:
        code = run_search(plan, records, err);
        break;
      case Command::reduce:
        code = run_reduce(plan, records, err);
        break;
    }
    if (plan.out) {
      write_atomically(*plan.out, records.str());
    } else {
      out << records.str();
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return code;
}

int run(const std::vector<std::string>& argv, const std::map<std::string, std::string>& env, std::ostream& out,
        std::ostream& err) {
  if (argv.empty() || std::find(argv.begin(), argv.end(), "--help") != argv.end()) {
    (argv.empty() ? err : out) << usage();
    return argv.empty() ? kExitError : kExitOk;
  }
  RunPlan plan;
  try {
    plan = parse_args(argv, env);
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << '\n' << usage();
    return kExitError;
  }
  return execute_plan(plan, out, err);
}

}  // namespace fracineq::cli
