#include "cli.hpp"

#include "report.hpp"

#include "CLI11.hpp"

#include "rumorlab/ctmc.hpp"
#include "rumorlab/errors.hpp"
#include "rumorlab/gw.hpp"
#include "rumorlab/laws.hpp"
#include "rumorlab/rng.hpp"
#include "rumorlab/thresholds.hpp"
#include "rumorlab/treegen.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <random>

#ifndef RUMORLAB_VERSION
#define RUMORLAB_VERSION "0.0.0"
#endif

namespace rumorlab::cli {
namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Globals {
  std::string format = "json";
  std::string out_path;
  int threads = 0;
  bool exact = false;
  bool floating = false;
  std::string beta_form = "paper";

  Arithmetic arithmetic() const {
    if (exact) return Arithmetic::exact;
    if (floating) return Arithmetic::log_space;
    return Arithmetic::automatic;
  }
  BetaForm form() const { return parse_beta_form(beta_form); }
};

// Exact rational cells: numerator and denominator as decimal strings (null
// when only a float value exists) and the float value.
void put_scalar(Json& object, const std::string& prefix, const ExactScalar& x) {
  if (x.is_exact()) {
    object[prefix + "_numerator"] = x.numerator_string();
    object[prefix + "_denominator"] = x.denominator_string();
  } else {
    object[prefix + "_numerator"] = nullptr;
    object[prefix + "_denominator"] = nullptr;
  }
  object[prefix + "_float"] = x.to_double();
}

std::vector<Json> scalar_cells(const ExactScalar& x) {
  if (!x.is_exact()) return {nullptr, nullptr, x.to_double()};
  return {x.numerator_string(), x.denominator_string(), x.to_double()};
}

// nlohmann writes non-finite doubles as null; keep them readable instead.
Json number(double value) {
  if (std::isfinite(value)) return value;
  return format_double(value);
}

Json ci_json(const EstimateCI& ci) {
  Json j = Json::object();
  j["estimate"] = ci.estimate;
  j["ci_low"] = ci.ci_low;
  j["ci_high"] = ci.ci_high;
  j["standard_error"] = ci.standard_error();
  j["replicas"] = ci.replicas;
  j["successes"] = ci.successes;
  j["method"] = ci.method;
  return j;
}

Probability parse_p(const std::string& text) { return Probability::parse(text); }

void require_replicas(std::int64_t replicas) {
  if (replicas < 1) throw UsageError("--replicas must be at least 1");
}

// ---------------------------------------------------------------- commands

struct PcTableArgs {
  int d_min = 3;
  int d_max = 11;
};

CommandResult pc_table(const PcTableArgs& a, const Globals& g, Json& params) {
  params["d_min"] = a.d_min;
  params["d_max"] = a.d_max;
  if (a.d_min < 3) {
    throw UsageError("pc-table needs d_min >= 3: p_c(d) lies in (0,1) only when d >= 3 (got d_min = " +
                     std::to_string(a.d_min) + ")");
  }
  if (a.d_max < a.d_min) {
    throw UsageError("pc-table range is empty: d_max = " + std::to_string(a.d_max) + " < d_min = " +
                     std::to_string(a.d_min));
  }
  Table t{{"d", "pc_numerator", "pc_denominator", "pc_float", "pc_asymptotic"}, {}};
  for (int d = a.d_min; d <= a.d_max; ++d) {
    const ThresholdReport r = p_critical(d, g.arithmetic());
    std::vector<Json> row{d};
    for (Json& cell : scalar_cells(r.scalar)) row.push_back(std::move(cell));
    row.push_back(r.asymptotic ? Json(*r.asymptotic) : Json(nullptr));
    t.rows.push_back(std::move(row));
  }
  CommandResult result;
  result.body["rows"] = t.to_json();
  result.table = std::move(t);
  return result;
}

struct ThetaArgs {
  int d = 3;
  std::string p = "1";
  std::vector<std::string> methods{"analytic"};
  std::int64_t replicas = 100'000;
  int horizon = kDefaultHorizon;
  std::int64_t population_cap = kDefaultPopulationCap;
  int level = kDefaultCayleyLevel;
  std::int64_t event_cap = kDefaultEventCap;
};

CommandResult theta_cmd(const ThetaArgs& a, const Globals& g, std::uint64_t seed, Json& params) {
  params["d"] = a.d;
  params["p"] = a.p;
  params["methods"] = a.methods;
  params["replicas"] = a.replicas;
  params["horizon"] = a.horizon;
  params["population_cap"] = a.population_cap;
  params["level"] = a.level;
  params["event_cap"] = a.event_cap;
  const Probability p = parse_p(a.p);
  if (a.d < 2) throw DomainError("d must be >= 2");

  std::vector<std::string> methods;
  for (const std::string& m : a.methods) {
    if (m == "all") {
      methods = {"analytic", "gw_mc", "ctmc_mc"};
      break;
    }
    methods.push_back(m);
  }

  Table t{{"method", "estimate", "ci_low", "ci_high", "standard_error", "replicas", "cap_hits"}, {}};
  CommandResult result;
  const double analytic = theta(a.d, p);
  result.body["d"] = a.d;
  result.body["p"] = p.to_string();
  result.body["psi"] = psi_root(a.d, p).psi;
  result.body["supercritical"] = is_supercritical(a.d, p);
  Json methods_json = Json::object();
  for (const std::string& m : methods) {
    if (m == "analytic") {
      t.rows.push_back({m, analytic, nullptr, nullptr, nullptr, nullptr, nullptr});
      methods_json[m] = Json{{"estimate", analytic}};
    } else if (m == "gw_mc") {
      require_replicas(a.replicas);
      const EstimateCI ci =
          survival_mc(a.d, p, a.replicas, a.horizon, a.population_cap, derive_key(seed, 1), g.threads);
      t.rows.push_back({m, ci.estimate, ci.ci_low, ci.ci_high, ci.standard_error(), ci.replicas, nullptr});
      methods_json[m] = ci_json(ci);
      methods_json[m]["separation_se"] = separation_in_se(ci.estimate, ci.standard_error(), analytic);
    } else if (m == "ctmc_mc") {
      require_replicas(a.replicas);
      const SurvivalEstimate s = estimate_survival_ctmc(TreeTopology::cayley(a.d), p.value(), a.level,
                                                        a.replicas, a.event_cap, derive_key(seed, 2),
                                                        LevelMeasure::graph_distance, g.threads);
      t.rows.push_back({m, s.ci.estimate, s.ci.ci_low, s.ci.ci_high, s.ci.standard_error(), s.ci.replicas,
                        s.cap_hits});
      methods_json[m] = ci_json(s.ci);
      methods_json[m]["cap_hits"] = s.cap_hits;
      methods_json[m]["separation_se"] = separation_in_se(s.ci.estimate, s.ci.standard_error(), analytic);
    } else {
      throw UsageError("unknown theta method '" + m + "' (expected analytic, gw_mc, ctmc_mc or all)");
    }
  }
  result.body["methods"] = methods_json;
  result.table = std::move(t);
  return result;
}

struct PsiArgs {
  int d = 3;
  std::string p = "1";
};

CommandResult psi_cmd(const PsiArgs& a, Json& params) {
  params["d"] = a.d;
  params["p"] = a.p;
  const Probability p = parse_p(a.p);
  const RootResult r = psi_root(a.d, p);
  CommandResult result;
  result.body["d"] = a.d;
  result.body["p"] = p.to_string();
  result.body["supercritical"] = is_supercritical(a.d, p);
  result.body["psi"] = r.psi;
  result.body["iterations"] = r.iterations;
  result.body["residual"] = r.residual;
  result.body["cross_check_gap"] = r.cross_check_gap;
  result.table = Table{{"d", "p", "psi", "iterations", "residual", "cross_check_gap"},
                       {{a.d, p.to_string(), r.psi, r.iterations, r.residual, r.cross_check_gap}}};
  return result;
}

struct HubArgs {
  int d = 3;
  int k = 2;
  int h = 1;
};

CommandResult alpha_c_cmd(const HubArgs& a, const Globals& g, Json& params) {
  params["d"] = a.d;
  params["k"] = a.k;
  params["h"] = a.h;
  const ThresholdReport r = alpha_critical(a.d, a.k, a.h, g.form(), g.arithmetic());
  CommandResult result;
  result.body["d"] = a.d;
  result.body["k"] = a.k;
  result.body["h"] = a.h;
  result.body["beta_form"] = to_string(g.form());
  if (std::isfinite(r.value)) {
    put_scalar(result.body, "alpha_c", r.scalar);
  } else {
    result.body["alpha_c_numerator"] = nullptr;
    result.body["alpha_c_denominator"] = nullptr;
    result.body["alpha_c_float"] = number(r.value);
  }
  result.body["feasible"] = r.feasible;
  put_scalar(result.body, "p_critical", p_critical(a.d, g.arithmetic()).scalar);
  put_scalar(result.body, "path_beta", path_beta(a.k, g.form(), g.arithmetic()));
  result.body["warnings"] = r.warnings;
  result.warnings = r.warnings;

  Table t{{"d", "k", "h", "beta_form", "alpha_c_numerator", "alpha_c_denominator", "alpha_c_float", "feasible"},
          {}};
  std::vector<Json> row{a.d, a.k, a.h, to_string(g.form())};
  if (std::isfinite(r.value)) {
    for (Json& cell : scalar_cells(r.scalar)) row.push_back(std::move(cell));
  } else {
    row.insert(row.end(), {nullptr, nullptr, number(r.value)});
  }
  row.push_back(r.feasible);
  t.rows.push_back(std::move(row));
  result.table = std::move(t);
  return result;
}

CommandResult max_h_cmd(const HubArgs& a, const Globals& g, Json& params) {
  params["d"] = a.d;
  params["k"] = a.k;
  const int h = max_h(a.d, a.k, g.form(), g.arithmetic());
  const double bound = asymptotic_h_bound(a.d, a.k);
  const double log_d = std::log(static_cast<double>(a.d));
  const bool log_scale = a.k >= 0.5 * log_d && a.k <= 2.0 * log_d;

  CommandResult result;
  result.body["d"] = a.d;
  result.body["k"] = a.k;
  result.body["beta_form"] = to_string(g.form());
  result.body["max_h"] = h;
  result.body["alpha_c_at_max_h"] = number(alpha_critical(a.d, a.k, h, g.form(), g.arithmetic()).value);
  result.body["alpha_c_at_max_h_plus_1"] = number(alpha_critical(a.d, a.k, h + 1, g.form(), g.arithmetic()).value);
  result.body["log_d_over_log_k"] = bound;
  Json scaling = nullptr;
  if (log_scale) {
    scaling = log_d / std::log(log_d);
    result.body["log_d_over_log_log_d"] = scaling;
    result.body["note"] = "k = Theta(log d): h_max grows like log d / log log d";
  }
  if (a.k >= a.d) result.warnings.push_back("k >= d: the hub-tree threshold assumes k < d");
  result.body["warnings"] = result.warnings;
  result.table = Table{{"d", "k", "beta_form", "max_h", "log_d_over_log_k", "log_d_over_log_log_d"},
                       {{a.d, a.k, to_string(g.form()), h, bound, scaling}}};
  return result;
}

struct AuditArgs {
  int k = 3;
  std::int64_t replicas = 1'000'000;
};

CommandResult audit_beta_cmd(const AuditArgs& a, const Globals& g, std::uint64_t seed, Json& params) {
  params["k"] = a.k;
  params["replicas"] = a.replicas;
  if (a.k < 3) throw UsageError("audit-beta needs k >= 3");
  require_replicas(a.replicas);
  const ExactScalar paper = path_beta(a.k, BetaForm::paper, Arithmetic::exact);
  const ExactScalar series = path_beta(a.k, BetaForm::series, Arithmetic::exact);
  const ExactScalar gap(series.rational() - paper.rational());
  const EstimateCI ci = path_traversal_empirical(a.k, a.replicas, seed, g.threads);

  CommandResult result;
  result.body["k"] = a.k;
  put_scalar(result.body, "paper", paper);
  put_scalar(result.body, "series", series);
  put_scalar(result.body, "gap", gap);
  result.body["gap_formula"] = "(k-2)!/k^(k-1)";
  result.body["relative_gap"] = gap.to_double() / series.to_double();
  result.body["empirical"] = ci_json(ci);
  result.body["empirical_covers_series"] = ci.covers(series.to_double());
  result.body["empirical_covers_paper"] = ci.covers(paper.to_double());
  result.body["series_separation_se"] = separation_in_se(ci.estimate, ci.standard_error(), series.to_double());
  result.body["paper_separation_se"] = separation_in_se(ci.estimate, ci.standard_error(), paper.to_double());

  Table t{{"quantity", "numerator", "denominator", "float", "ci_low", "ci_high"}, {}};
  auto exact_row = [&](const char* name, const ExactScalar& x) {
    std::vector<Json> row{name};
    for (Json& cell : scalar_cells(x)) row.push_back(std::move(cell));
    row.insert(row.end(), {nullptr, nullptr});
    t.rows.push_back(std::move(row));
  };
  exact_row("paper", paper);
  exact_row("series", series);
  exact_row("gap", gap);
  t.rows.push_back({"empirical", nullptr, nullptr, ci.estimate, ci.ci_low, ci.ci_high});
  result.table = std::move(t);
  return result;
}

struct OffspringArgs {
  int d = 3;
  std::string p = "1";
  std::int64_t replicas = 1'000'000;
};

CommandResult offspring_cmd(const OffspringArgs& a, const Globals& g, std::uint64_t seed, Json& params) {
  params["d"] = a.d;
  params["p"] = a.p;
  params["replicas"] = a.replicas;
  require_replicas(a.replicas);
  const Probability p = parse_p(a.p);
  const Pmf analytic = law_X_prime(a.d, p, g.arithmetic());
  const Pmf empirical = offspring_empirical(a.d, p.value(), a.replicas, seed, g.threads);

  Table t{{"i", "analytic_numerator", "analytic_denominator", "analytic_float", "empirical"}, {}};
  for (int i = analytic.support_min(); i <= analytic.support_max(); ++i) {
    std::vector<Json> row{i};
    if (analytic.is_exact()) {
      const mpq_class q = analytic.exact_at(i);
      row.insert(row.end(), {q.get_num().get_str(), q.get_den().get_str()});
    } else {
      row.insert(row.end(), {nullptr, nullptr});
    }
    row.push_back(analytic.at(i));
    row.push_back(empirical.at(i));
    t.rows.push_back(std::move(row));
  }
  CommandResult result;
  result.body["d"] = a.d;
  result.body["p"] = p.to_string();
  result.body["replicas"] = a.replicas;
  result.body["mean_analytic"] = analytic.mean();
  result.body["mean_empirical"] = empirical.mean();
  result.body["total_variation"] = total_variation(analytic, empirical);
  result.body["rows"] = t.to_json();
  result.table = std::move(t);
  return result;
}

struct SimulateArgs {
  std::string topology = "cayley";
  int d = 3;
  std::optional<int> k;
  std::optional<double> alpha;
  std::optional<int> h;
  std::string p = "1";
  std::optional<int> level;
  std::optional<std::string> level_measure;
  std::int64_t replicas = 10'000;
  std::int64_t event_cap = kDefaultEventCap;
  std::vector<int> sweep;
};

CommandResult simulate_cmd(const SimulateArgs& a, const Globals& g, std::uint64_t seed, Json& params) {
  params["topology"] = a.topology;
  params["d"] = a.d;
  params["p"] = a.p;
  params["replicas"] = a.replicas;
  params["event_cap"] = a.event_cap;
  require_replicas(a.replicas);
  TreeTopology topo;
  if (a.topology == "cayley") {
    if (a.k || a.alpha || a.h) throw UsageError("--k, --alpha and --h only apply to --topology hub_path");
    topo = TreeTopology::cayley(a.d);
  } else if (a.topology == "hub_path") {
    if (!a.k || !a.alpha || !a.h) throw UsageError("--topology hub_path needs --k, --alpha and --h");
    topo = TreeTopology::hub_path(a.d, *a.k, *a.alpha, *a.h);
    params["k"] = *a.k;
    params["alpha"] = *a.alpha;
    params["h"] = *a.h;
    try {
      topo.validate_for_survival();
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  } else {
    throw UsageError("--topology must be cayley or hub_path");
  }
  topo.validate();
  const Probability p = parse_p(a.p);

  LevelMeasure measure = default_level_measure(topo);
  if (a.level_measure) {
    if (*a.level_measure == "graph_distance") {
      measure = LevelMeasure::graph_distance;
    } else if (*a.level_measure == "hub_generation") {
      measure = LevelMeasure::hub_generation;
    } else {
      throw UsageError("--level-measure must be graph_distance or hub_generation");
    }
  }
  const int level = a.level.value_or(default_target_level(topo));
  if (level < 1) throw UsageError("--level must be >= 1");
  for (int l : a.sweep) {
    if (l < 1) throw UsageError("--levels entries must be >= 1");
  }
  params["level"] = level;
  params["level_measure"] = to_string(measure);
  if (!a.sweep.empty()) params["levels"] = a.sweep;

  const SurvivalEstimate s =
      estimate_survival_ctmc(topo, p.value(), level, a.replicas, a.event_cap, seed, measure, g.threads);
  CommandResult result;
  result.body["estimate"] = s.ci.estimate;
  result.body["ci_low"] = s.ci.ci_low;
  result.body["ci_high"] = s.ci.ci_high;
  result.body["replicas"] = s.ci.replicas;
  result.body["cap_hits"] = s.cap_hits;
  result.body["topology"] = topo.describe();
  result.body["level"] = level;
  result.body["level_measure"] = to_string(measure);
  result.warnings = topo.warnings();

  if (a.sweep.empty()) {
    result.table = Table{{"level", "estimate", "ci_low", "ci_high", "replicas", "cap_hits"},
                         {{level, s.ci.estimate, s.ci.ci_low, s.ci.ci_high, s.ci.replicas, s.cap_hits}}};
    return result;
  }
  Table t{{"level", "estimate", "ci_low", "ci_high"}, {}};
  for (int l : a.sweep) {
    const SurvivalEstimate e =
        estimate_survival_ctmc(topo, p.value(), l, a.replicas, a.event_cap, seed, measure, g.threads);
    t.rows.push_back({l, e.ci.estimate, e.ci.ci_low, e.ci.ci_high});
  }
  result.body["series"] = t.to_json();
  result.table = std::move(t);
  return result;
}

struct GwArgs {
  int d = 3;
  std::string p = "1";
  std::int64_t replicas = 100'000;
  int horizon = kDefaultHorizon;
  std::int64_t population_cap = kDefaultPopulationCap;
};

CommandResult gw_cmd(const GwArgs& a, const Globals& g, std::uint64_t seed, Json& params) {
  params["d"] = a.d;
  params["p"] = a.p;
  params["replicas"] = a.replicas;
  params["horizon"] = a.horizon;
  params["population_cap"] = a.population_cap;
  require_replicas(a.replicas);
  const Probability p = parse_p(a.p);
  const EstimateCI ci = survival_mc(a.d, p, a.replicas, a.horizon, a.population_cap, seed, g.threads);
  const double analytic = theta(a.d, p);
  CommandResult result;
  result.body["estimate"] = ci.estimate;
  result.body["ci_low"] = ci.ci_low;
  result.body["ci_high"] = ci.ci_high;
  result.body["replicas"] = ci.replicas;
  result.body["theta_analytic"] = analytic;
  result.body["separation_se"] = separation_in_se(ci.estimate, ci.standard_error(), analytic);
  result.table = Table{{"d", "p", "estimate", "ci_low", "ci_high", "replicas", "theta_analytic"},
                       {{a.d, p.to_string(), ci.estimate, ci.ci_low, ci.ci_high, ci.replicas, analytic}}};
  return result;
}

std::uint64_t entropy_seed() {
  std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

void emit(const CommandResult& result, const RunManifest& manifest, const Globals& g, std::ostream& out,
          std::ostream& err) {
  std::ofstream file;
  std::ostream* target = &out;
  if (!g.out_path.empty()) {
    file.open(g.out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + g.out_path + " for writing");
    target = &file;
  }
  if (g.format == "json") {
    Json report = Json::object();
    report["manifest"] = manifest.to_json();
    for (const auto& [key, value] : result.body.items()) report[key] = value;
    *target << report.dump(2) << '\n';
  } else {
    write_csv(*target, result.table.value_or(Table{}));
    // CSV carries no metadata, so the manifest goes next to it.
    if (!g.out_path.empty()) {
      std::ofstream side(g.out_path + ".manifest.json", std::ios::binary);
      side << manifest.to_json().dump(2) << '\n';
    } else {
      err << "manifest: " << manifest.to_json().dump() << '\n';
    }
  }
  target->flush();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rumor spreading thresholds and simulations on trees", "rumorlab"};
  app.require_subcommand(1);
  // -h is left free so --h can name the path length.
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", RUMORLAB_VERSION);

  Globals g;
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "Master seed (64-bit unsigned)")->envname("RUMORLAB_SEED");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--out", g.out_path, "Output file (default stdout)");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  auto* exact_flag = app.add_flag("--exact", g.exact, "Exact rationals at any size");
  app.add_flag("--float", g.floating, "Log-space floating point")->excludes(exact_flag);
  app.add_option("--beta-form", g.beta_form, "beta(k-1) expression for hub-tree thresholds")
      ->check(CLI::IsMember({"paper", "series"}))
      ->capture_default_str();

  std::function<CommandResult(std::uint64_t, Json&)> action;

  auto* pc = app.add_subcommand("pc-table", "Critical spread probability p_c(d) over a range of d");
  PcTableArgs pc_args;
  pc->add_option("--d-min", pc_args.d_min)->capture_default_str();
  pc->add_option("--d-max", pc_args.d_max)->capture_default_str();
  pc->callback([&] { action = [&](std::uint64_t, Json& p) { return pc_table(pc_args, g, p); }; });

  auto* th = app.add_subcommand("theta", "Survival probability theta(d, p)");
  ThetaArgs th_args;
  th->add_option("--d", th_args.d)->required();
  th->add_option("--p", th_args.p)->required();
  th->add_option("--method", th_args.methods, "analytic, gw_mc, ctmc_mc or all")->capture_default_str();
  th->add_option("--replicas", th_args.replicas)->capture_default_str();
  th->add_option("--horizon", th_args.horizon)->capture_default_str();
  th->add_option("--population-cap", th_args.population_cap)->capture_default_str();
  th->add_option("--level", th_args.level)->capture_default_str();
  th->add_option("--event-cap", th_args.event_cap)->capture_default_str();
  th->callback([&] { action = [&](std::uint64_t s, Json& p) { return theta_cmd(th_args, g, s, p); }; });

  auto* ps = app.add_subcommand("psi", "Extinction root psi(d, p)");
  PsiArgs ps_args;
  ps->add_option("--d", ps_args.d)->required();
  ps->add_option("--p", ps_args.p)->required();
  ps->callback([&] { action = [&](std::uint64_t, Json& p) { return psi_cmd(ps_args, p); }; });

  auto* ac = app.add_subcommand("alpha-c", "Critical hub-path probability alpha_c(d, k, h)");
  HubArgs ac_args;
  ac->add_option("--d", ac_args.d)->required();
  ac->add_option("--k", ac_args.k)->required();
  ac->add_option("--h", ac_args.h)->required();
  ac->callback([&] { action = [&](std::uint64_t, Json& p) { return alpha_c_cmd(ac_args, g, p); }; });

  auto* mh = app.add_subcommand("max-h", "Largest path length h with alpha_c(d, k, h) < 1");
  HubArgs mh_args;
  mh->add_option("--d", mh_args.d)->required();
  mh->add_option("--k", mh_args.k)->required();
  mh->callback([&] { action = [&](std::uint64_t, Json& p) { return max_h_cmd(mh_args, g, p); }; });

  auto* ab = app.add_subcommand("audit-beta", "Compare both beta expressions with simulated path traversal");
  AuditArgs ab_args;
  ab->add_option("--k", ab_args.k)->required();
  ab->add_option("--replicas", ab_args.replicas)->capture_default_str();
  ab->callback([&] { action = [&](std::uint64_t s, Json& p) { return audit_beta_cmd(ab_args, g, s, p); }; });

  auto* of = app.add_subcommand("offspring", "Offspring law of a spreader, exact and simulated");
  OffspringArgs of_args;
  of->add_option("--d", of_args.d)->required();
  of->add_option("--p", of_args.p)->required();
  of->add_option("--replicas", of_args.replicas)->capture_default_str();
  of->callback([&] { action = [&](std::uint64_t s, Json& p) { return offspring_cmd(of_args, g, s, p); }; });

  auto* sim = app.add_subcommand("simulate", "Monte Carlo level-reach probability of the rumor");
  SimulateArgs sim_args;
  sim->add_option("--topology", sim_args.topology)->capture_default_str();
  sim->add_option("--d", sim_args.d)->required();
  sim->add_option("--k", sim_args.k);
  sim->add_option("--alpha", sim_args.alpha);
  sim->add_option("--h", sim_args.h);
  sim->add_option("--p", sim_args.p)->capture_default_str();
  sim->add_option("--level", sim_args.level);
  sim->add_option("--level-measure", sim_args.level_measure, "graph_distance or hub_generation");
  sim->add_option("--replicas", sim_args.replicas)->capture_default_str();
  sim->add_option("--event-cap", sim_args.event_cap)->capture_default_str();
  sim->add_option("--levels", sim_args.sweep, "Level sweep, e.g. --levels 1,5,10")->delimiter(',');
  sim->callback([&] { action = [&](std::uint64_t s, Json& p) { return simulate_cmd(sim_args, g, s, p); }; });

  auto* gwc = app.add_subcommand("gw", "Galton-Watson survival Monte Carlo");
  GwArgs gw_args;
  gwc->add_option("--d", gw_args.d)->required();
  gwc->add_option("--p", gw_args.p)->required();
  gwc->add_option("--replicas", gw_args.replicas)->capture_default_str();
  gwc->add_option("--horizon", gw_args.horizon)->capture_default_str();
  gwc->add_option("--population-cap", gw_args.population_cap)->capture_default_str();
  gwc->callback([&] { action = [&](std::uint64_t s, Json& p) { return gw_cmd(gw_args, g, s, p); }; });

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << RUMORLAB_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    err << "run with --help for usage\n";
    return kExitUsage;
  }

  const std::uint64_t seed = seed_opt->count() > 0 ? seed_value : entropy_seed();
  err << "seed: " << seed << '\n';

  RunManifest manifest;
  manifest.command = app.get_subcommands().front()->get_name();
  manifest.seed = seed;
  manifest.version = RUMORLAB_VERSION;
  const auto start = std::chrono::steady_clock::now();
  try {
    Json params = Json::object();
    CommandResult result = action(seed, params);
    params["format"] = g.format;
    params["threads"] = g.threads;
    params["arithmetic"] = g.exact ? "exact" : g.floating ? "float" : "automatic";
    params["beta_form"] = g.beta_form;
    manifest.parameters = std::move(params);
    manifest.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const std::string& w : result.warnings) err << "warning: " << w << '\n';
    emit(result, manifest, g, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericFault& e) {
    err << "numeric fault: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}

}  // namespace rumorlab::cli
