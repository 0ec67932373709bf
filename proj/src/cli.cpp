#include "bhlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "bhlab/bh.hpp"
#include "bhlab/bohr.hpp"
#include "bhlab/harmonic.hpp"
#include "bhlab/multiindex.hpp"
#include "bhlab/seeding.hpp"

namespace bhlab::cli {

namespace fs = std::filesystem;

Json to_json(const ExperimentRecord& r) {
  Json j;
  j["command"] = r.command;
  j["params"] = r.params;
  j["seed"] = r.seed;
  j["value"] = r.value;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["certificate"] = r.certificate;
  j["witness_path"] = r.witness_path ? Json(*r.witness_path) : Json(nullptr);
  j["runtime_ms"] = r.runtime_ms;
  j["tool_version"] = r.tool_version;
  j["created_at"] = r.created_at;
  return j;
}

ExperimentRecord record_from_json(const Json& j) {
  ExperimentRecord r;
  r.command = j.at("command").get<std::string>();
  r.params = j.value("params", Json::object());
  r.seed = j.value("seed", std::uint64_t{0});
  auto num = [&](const char* key) {
    const auto& v = j.at(key);
    return v.is_null() ? std::nan("") : v.get<double>();
  };
  r.value = num("value");
  r.lower = num("lower");
  r.upper = num("upper");
  r.certificate = j.value("certificate", Json::object());
  if (j.contains("witness_path") && !j.at("witness_path").is_null())
    r.witness_path = j.at("witness_path").get<std::string>();
  r.runtime_ms = j.value("runtime_ms", std::int64_t{0});
  r.tool_version = j.value("tool_version", std::string{});
  r.created_at = j.value("created_at", std::string{});
  return r;
}

namespace {

std::string number(double v) {
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  if (std::isnan(v))
    return "nan";
  return Json(v).dump();
}

std::string param_text(const Json& params, const char* key) {
  if (!params.contains(key))
    return "";
  const auto& v = params.at(key);
  if (v.is_string())
    return v.get<std::string>();
  if (v.is_number_float())
    return number(v.get<double>());
  return v.dump();
}

double param_key(const Json& params, const char* key) {
  if (!params.contains(key))
    return -1.0;
  const auto& v = params.at(key);
  if (v.is_number())
    return v.get<double>();
  if (v.is_string()) {
    try {
      return parse_p(v.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  return -1.0;
}

} // namespace

std::string report_csv(const std::vector<ExperimentRecord>& records) {
  std::vector<const ExperimentRecord*> rows;
  for (const auto& r : records)
    rows.push_back(&r);
  auto key = [](const ExperimentRecord* r) {
    return std::make_tuple(r->command, param_key(r->params, "m"), param_key(r->params, "n"),
                           param_key(r->params, "p"), r->seed);
  };
  std::stable_sort(rows.begin(), rows.end(),
                   [&](const auto* a, const auto* b) { return key(a) < key(b); });
  std::ostringstream os;
  os << "m,n,p,command,value,lower,upper,seed\n";
  for (const auto* r : rows) {
    os << param_text(r->params, "m") << ',' << param_text(r->params, "n") << ','
       << param_text(r->params, "p") << ',' << r->command << ',' << number(r->value) << ','
       << number(r->lower) << ',' << number(r->upper) << ',' << r->seed << '\n';
  }
  return os.str();
}

namespace {

struct Options {
  std::string command;
  int m = 2;
  int n = 2;
  std::string p = "inf";
  int degree = -1;    // command-specific default when negative
  int trials = -1;
  std::string budget = "16x200";
  int restarts = 16;
  std::uint64_t seed = 1;
  int threads = 0;
  double tolerance = std::numeric_limits<double>::quiet_NaN(); // unset
  std::string out;
  std::string format = "text";
  std::string family = "moebius";
  int quad_nodes = 16;
  std::string objective = "bh_poly";
  std::string in;
};

struct Outcome {
  ExperimentRecord record;
  bool verified = true;
  std::string text;        // plain output
  std::string csv;         // optional command-specific CSV body
  std::optional<Json> witness;
};

std::string fixed9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

double tol_or(const Options& o, double fallback) {
  return std::isnan(o.tolerance) ? fallback : o.tolerance;
}
int trials_or(const Options& o, int fallback) { return o.trials >= 0 ? o.trials : fallback; }
int degree_or(const Options& o, int fallback) { return o.degree >= 0 ? o.degree : fallback; }

void require(bool ok, const std::string& what) {
  if (!ok)
    throw std::invalid_argument(what);
}

OptimizerSpec optimizer(const Options& o) {
  require(o.restarts >= 1, "--restarts must be >= 1");
  OptimizerSpec s;
  s.restarts = o.restarts;
  s.seed = o.seed;
  s.threads = o.threads;
  return s;
}

QuadratureSpec quadrature(const Options& o) {
  require(o.quad_nodes >= 1, "--quad-nodes must be >= 1");
  QuadratureSpec q;
  q.nodes_per_dim = o.quad_nodes;
  q.seed = o.seed;
  q.threads = o.threads;
  return q;
}

void base_params(ExperimentRecord& r, const Options& o, std::initializer_list<const char*> keys) {
  for (const char* k : keys) {
    const std::string key = k;
    if (key == "m")
      r.params["m"] = o.m;
    else if (key == "n")
      r.params["n"] = o.n;
    else if (key == "p")
      r.params["p"] = format_p(parse_p(o.p));
    else if (key == "restarts")
      r.params["restarts"] = o.restarts;
    else if (key == "budget")
      r.params["budget"] = o.budget;
    else if (key == "quad-nodes")
      r.params["quad-nodes"] = o.quad_nodes;
    else if (key == "family")
      r.params["family"] = o.family;
    else if (key == "objective")
      r.params["objective"] = o.objective;
  }
  r.params["threads"] = o.threads;
}

// Min and max of a per-trial statistic, with the index of the extreme one.
struct Extremes {
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  void add(double v) {
    min = std::min(min, v);
    max = std::max(max, v);
  }
};

Ensemble trial_ensemble(int i) { return static_cast<Ensemble>(i % 3); }

Outcome cmd_dim(const Options& o) {
  Outcome out;
  auto& r = out.record;
  base_params(r, o, {"m", "n"});
  const auto d = dimension(o.m, o.n);
  r.value = r.lower = r.upper = static_cast<double>(d);
  const double tol = tol_or(o, 0.0);
  r.params["tolerance"] = tol;
  if (d <= 1000000)
    out.verified = std::abs(static_cast<double>(enumerate_exponents(o.m, o.n).size()) - r.value) <= tol;
  r.certificate = {{"dimension", d}, {"log_dimension", log_dimension(o.m, o.n)}};
  out.text = std::to_string(d);
  return out;
}

Outcome cmd_bh_verify(const Options& o) {
  Outcome out;
  auto& r = out.record;
  const int trials = trials_or(o, 20);
  const auto objective = parse_objective(o.objective);
  require(objective != SearchObjective::sidon, "bh-verify: objective must be bh_poly or bh_multilinear");
  base_params(r, o, {"m", "n", "restarts", "objective"});
  r.params["trials"] = trials;
  const double tol = tol_or(o, 1e-3);
  r.params["tolerance"] = tol;
  const auto row = constant_row(o.m);
  const double bound = objective == SearchObjective::bh_poly ? row.step4 : row.davie_kaijser;
  Extremes ratios;
  Extremes conservative;
  bool converged = true;
  for (int i = 0; i < trials; ++i) {
    OptimizerSpec opt = optimizer(o);
    opt.seed = derive_seed(o.seed, static_cast<std::uint64_t>(i));
    const std::uint64_t coeff_seed = derive_seed(o.seed ^ 0x5bd1e995ULL, static_cast<std::uint64_t>(i));
    RatioResult res;
    if (objective == SearchObjective::bh_poly) {
      res = bh_ratio_poly(random_polynomial(o.m, o.n, trial_ensemble(i), coeff_seed), opt);
    } else {
      const auto p = random_polynomial(1, static_cast<int>(tuple_count(o.m, o.n)),
                                       trial_ensemble(i), coeff_seed);
      std::vector<Complex> c;
      for (const auto& [alpha, v] : p.terms())
        c.push_back(v);
      res = bh_ratio_multilinear(MultilinearTensor(o.m, o.n, std::move(c)), opt);
    }
    ratios.add(res.ratio);
    conservative.add(res.conservative_ratio);
    converged = converged && res.denominator.converged;
  }
  r.value = ratios.max;
  r.lower = conservative.min;
  r.upper = ratios.max;
  r.certificate = {{"bound", bound},
                   {"bound_name", objective == SearchObjective::bh_poly ? "step4" : "davie_kaijser"},
                   {"max_ratio", ratios.max},
                   {"min_ratio", ratios.min},
                   {"all_converged", converged}};
  out.verified = ratios.max <= bound * (1.0 + tol);
  out.text = fixed9(r.value);
  return out;
}

Outcome search_outcome(const Options& o, SearchObjective objective, const std::string& command) {
  Outcome out;
  auto& r = out.record;
  base_params(r, o, {"m", "n", "budget"});
  r.params["objective"] = std::string(objective_name(objective));
  const double tol = tol_or(o, 1e-3);
  r.params["tolerance"] = tol;
  SearchOptions so;
  so.threads = o.threads;
  const auto res = extremal_search(objective, o.m, o.n, parse_budget(o.budget), o.seed, so);
  r.value = res.ratio;
  r.lower = res.conservative_ratio;
  r.upper = res.ratio;
  const auto row = constant_row(o.m);
  double bound = row.step4;
  std::string bound_name = "step4";
  if (objective == SearchObjective::bh_multilinear) {
    bound = row.davie_kaijser;
    bound_name = "davie_kaijser";
  } else if (objective == SearchObjective::sidon) {
    bound = std::exp((o.m - 1.0) / (2.0 * o.m) * log_dimension(o.m, o.n)) * row.step4;
    bound_name = "holder_sidon";
  }
  r.certificate = {{"denominator", to_json(res.denominator)},
                   {"numerator", res.numerator.value},
                   {"q", res.numerator.q},
                   {"bound", bound},
                   {"bound_name", bound_name}};
  out.verified = res.ratio <= bound * (1.0 + tol) && res.ratio >= 1.0 - tol;
  out.witness = res.polynomial ? to_json(*res.polynomial) : to_json(*res.tensor);
  std::ostringstream name;
  name << "witness-" << command << "-" << objective_name(objective) << "-m" << o.m << "-n" << o.n
       << "-seed" << o.seed << ".json";
  r.witness_path = name.str();
  out.text = fixed9(r.value);
  return out;
}

Outcome cmd_blei(const Options& o) {
  Outcome out;
  auto& r = out.record;
  const int trials = trials_or(o, 500);
  base_params(r, o, {"m", "n"});
  r.params["trials"] = trials;
  const double tol = tol_or(o, 1e-9);
  r.params["tolerance"] = tol;
  Extremes margins;
  for (int i = 0; i < trials; ++i) {
    const auto p = random_polynomial(1, static_cast<int>(tuple_count(o.m, o.n)), trial_ensemble(i),
                                     derive_seed(o.seed, static_cast<std::uint64_t>(i)));
    std::vector<Complex> c;
    for (const auto& [alpha, v] : p.terms())
      c.push_back(v);
    margins.add(blei_check(MultilinearTensor(o.m, o.n, std::move(c))).margin);
  }
  r.value = r.lower = margins.min;
  r.upper = margins.max;
  r.certificate = {{"min_margin", margins.min}, {"max_margin", margins.max}};
  out.verified = margins.min >= -tol;
  out.text = fixed9(r.value);
  return out;
}

Outcome cmd_bonami(const Options& o) {
  Outcome out;
  auto& r = out.record;
  const int trials = trials_or(o, 1000);
  const int degree = degree_or(o, 8);
  require(degree >= 0, "--degree must be >= 0");
  base_params(r, o, {"quad-nodes"});
  r.params["degree"] = degree;
  r.params["trials"] = trials;
  const double tol = tol_or(o, 1e-6);
  r.params["tolerance"] = tol;
  Extremes margins;
  bool converged = true;
  const QuadratureSpec q = quadrature(o);
  for (int i = 0; i < trials; ++i) {
    const int d = degree == 0 ? 0 : 1 + i % degree;
    const auto p = random_graded_polynomial(d, 1, trial_ensemble(i),
                                            derive_seed(o.seed, static_cast<std::uint64_t>(i)));
    const auto rep = bonami_check(p, q);
    margins.add(rep.margin);
    converged = converged && rep.rhs.converged;
  }
  r.value = r.lower = margins.min;
  r.upper = margins.max;
  r.certificate = {{"min_margin", margins.min}, {"max_margin", margins.max}, {"all_converged", converged}};
  out.verified = margins.min >= -tol;
  out.text = fixed9(r.value);
  return out;
}

Outcome cmd_hyper(const Options& o) {
  Outcome out;
  auto& r = out.record;
  const int trials = trials_or(o, 200);
  base_params(r, o, {"m", "n", "quad-nodes"});
  r.params["trials"] = trials;
  const double tol = tol_or(o, 1e-6);
  r.params["tolerance"] = tol;
  Extremes ratios;
  Extremes slack;
  bool converged = true;
  const QuadratureSpec q = quadrature(o);
  for (int i = 0; i < trials; ++i) {
    const auto p = random_polynomial(o.m, o.n, Ensemble::steinhaus,
                                     derive_seed(o.seed, static_cast<std::uint64_t>(i)));
    const auto rep = hypercontractive_l2_l1_check(p, q);
    ratios.add(rep.ratio);
    slack.add(rep.slack);
    converged = converged && rep.l1.converged;
  }
  const double bound = std::pow(std::sqrt(2.0), o.m);
  r.value = ratios.max;
  r.lower = ratios.min;
  r.upper = ratios.max;
  r.certificate = {{"bound", bound}, {"min_slack", slack.min}, {"all_converged", converged}};
  out.verified = ratios.max <= bound + tol;
  out.text = fixed9(r.value);
  return out;
}

Outcome cmd_constants(const Options& o) {
  Outcome out;
  auto& r = out.record;
  r.params["m"] = o.m;
  r.params["threads"] = o.threads;
  const double tol = tol_or(o, 0.0);
  r.params["tolerance"] = tol;
  const auto rows = constant_table(o.m);
  Json table = Json::array();
  std::ostringstream csv;
  std::ostringstream text;
  csv << "m,bhh_original,davie_kaijser,harris,queffelec,step4\n";
  bool ordered = true;
  for (const auto& row : rows) {
    table.push_back({{"m", row.m},
                     {"bhh_original", row.bhh_original},
                     {"davie_kaijser", row.davie_kaijser},
                     {"harris", row.harris},
                     {"queffelec", row.queffelec},
                     {"step4", row.step4}});
    csv << row.m << ',' << number(row.bhh_original) << ',' << number(row.davie_kaijser) << ','
        << number(row.harris) << ',' << number(row.queffelec) << ',' << number(row.step4) << '\n';
    text << row.m << ' ' << fixed9(row.bhh_original) << ' ' << fixed9(row.davie_kaijser) << ' '
         << fixed9(row.harris) << ' ' << fixed9(row.queffelec) << ' ' << fixed9(row.step4) << '\n';
    ordered = ordered && row.queffelec <= row.harris * (1.0 + tol);
  }
  r.value = r.upper = rows.back().step4;
  r.lower = rows.front().step4;
  r.certificate = {{"rows", table}};
  out.verified = ordered;
  out.text = text.str();
  if (!out.text.empty())
    out.text.pop_back();
  out.csv = csv.str();
  return out;
}

Outcome cmd_chi_bound(const Options& o) {
  Outcome out;
  auto& r = out.record;
  base_params(r, o, {"m", "n", "p"});
  const double tol = tol_or(o, 0.0);
  r.params["tolerance"] = tol;
  const auto b = chi_upper_bound(o.m, o.n, parse_p(o.p));
  r.value = r.upper = b.upper;
  r.lower = 1.0;
  Json comps = Json::object();
  for (const auto& [k, v] : b.components)
    comps[k] = v;
  r.certificate = {{"route", std::string(route_name(b.route))}, {"log_upper", b.log_upper},
                   {"components", comps}};
  out.verified = b.upper >= 1.0 - tol;
  out.text = fixed9(r.value);
  return out;
}

Json factors_json(const std::map<std::string, double>& f) {
  Json j = Json::object();
  for (const auto& [k, v] : f)
    j[k] = v;
  return j;
}

Outcome cmd_bohr_lower(const Options& o) {
  Outcome out;
  auto& r = out.record;
  base_params(r, o, {"n", "p"});
  const double tol = tol_or(o, 1e-12);
  r.params["tolerance"] = tol;
  const auto res = bohr_lower_bound(BallSpec(o.n, parse_p(o.p)));
  r.value = r.lower = r.upper = res.radius;
  out.verified = res.radius <= 1.0 / 3.0 + tol;
  r.certificate = {{"kind", std::string(kind_name(res.kind))}, {"factors", factors_json(res.factors)}};
  out.text = fixed9(r.value);
  return out;
}

FamilySpec family_spec(const Options& o, const BallSpec& ball) {
  FamilySpec f;
  f.family = parse_family(o.family);
  const auto budget = parse_budget(o.budget);
  f.count = budget.restarts;
  f.search_iterations = budget.iterations;
  f.seed = o.seed;
  switch (f.family) {
  case BohrFamily::moebius:
    f.degree = degree_or(o, 80);
    break;
  case BohrFamily::random_graded:
    f.degree = degree_or(o, ball.n == 1 ? 10 : 4);
    break;
  case BohrFamily::search_witnesses:
    f.degree = degree_or(o, 2);
    break;
  case BohrFamily::coordinate:
    f.degree = 1;
    break;
  }
  return f;
}

Json bohr_json(const BohrResult& res) {
  Json j = {{"kind", std::string(kind_name(res.kind))},
            {"radius", res.radius},
            {"witness", res.witness_label},
            {"sup", to_json(res.sup)},
            {"iterations", res.iterations},
            {"factors", factors_json(res.factors)}};
  return j;
}

Outcome cmd_bohr_upper(const Options& o) {
  Outcome out;
  auto& r = out.record;
  base_params(r, o, {"n", "p", "family", "budget", "restarts"});
  const BallSpec ball(o.n, parse_p(o.p));
  const FamilySpec f = family_spec(o, ball);
  r.params["degree"] = f.degree;
  const double tol = tol_or(o, 1e-6);
  r.params["tolerance"] = tol;
  const auto res = bohr_upper_bound(ball, f, optimizer(o));
  r.value = r.lower = r.upper = res.radius;
  out.verified = res.radius >= bohr_lower_bound(ball).radius - tol;
  r.certificate = bohr_json(res);
  if (res.witness) {
    out.witness = to_json(*res.witness);
    std::ostringstream name;
    name << "witness-bohr-upper-" << family_name(f.family) << "-n" << o.n << "-p" << format_p(ball.p)
         << "-seed" << o.seed << ".json";
    r.witness_path = name.str();
  }
  out.text = fixed9(r.value);
  return out;
}

Outcome cmd_bohr_check(const Options& o) {
  Outcome out;
  auto& r = out.record;
  base_params(r, o, {"n", "p", "family", "budget", "restarts"});
  const double tol = tol_or(o, 1e-6);
  r.params["tolerance"] = tol;
  const BallSpec ball(o.n, parse_p(o.p));
  FamilySpec f = family_spec(o, ball);
  r.params["degree"] = f.degree;
  auto candidates = build_family(f, ball, o.threads);
  // one-variable slice close to the extremal Moebius limit
  const BohrCandidate slice = moebius_candidate(1.0 - 1e-7, 80, ball.n);
  candidates.push_back(slice);
  const auto upper = bohr_upper_bound(ball, candidates, optimizer(o));
  const auto lower = bohr_lower_bound(ball);
  const auto link = link_consistency(lower, upper, tol);
  r.value = upper.radius - lower.radius;
  r.lower = lower.radius;
  r.upper = upper.radius;
  r.certificate = {{"lower", bohr_json(lower)},
                   {"upper", bohr_json(upper)},
                   {"lower_below_upper", link.lower_below_upper},
                   {"upper_checked_against_third", link.upper_checked_against_third},
                   {"upper_below_third", link.upper_below_third}};
  out.verified = link.pass;
  out.text = fixed9(lower.radius) + " " + fixed9(upper.radius);
  return out;
}

std::vector<ExperimentRecord> read_records(const fs::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("report: cannot read " + path.string());
  std::vector<ExperimentRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    out.push_back(record_from_json(Json::parse(line)));
  }
  return out;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

fs::path output_dir(const Options& o) {
  if (!o.out.empty())
    return o.out;
  if (const char* env = std::getenv("BHLAB_OUT"); env != nullptr && *env != '\0')
    return env;
  return "bhlab-out";
}

int run_report(const Options& o, std::ostream& out, std::ostream& err) {
  const fs::path dir = output_dir(o);
  const fs::path source = o.in.empty() ? dir / "records.jsonl" : fs::path(o.in);
  std::vector<ExperimentRecord> records;
  if (fs::exists(source))
    records = read_records(source);
  if (records.empty()) {
    err << "report: no records in " << source.string() << "\n";
    return invalid_args;
  }
  const std::string csv = report_csv(records);
  std::map<std::string, Json> groups;
  for (const auto& r : records) {
    auto& g = groups[r.command];
    if (g.is_null())
      g = {{"count", 0}, {"min_value", r.value}, {"max_value", r.value}};
    g["count"] = g["count"].get<int>() + 1;
    g["min_value"] = std::min(g["min_value"].get<double>(), r.value);
    g["max_value"] = std::max(g["max_value"].get<double>(), r.value);
  }
  Json summary = {{"records", records.size()}, {"commands", groups}};
  fs::create_directories(dir);
  std::ofstream(dir / "report.csv") << csv;
  std::ofstream(dir / "summary.json") << summary.dump(2) << "\n";
  if (o.format == "json")
    out << summary.dump() << "\n";
  else
    out << csv;
  return ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> commands = {
      "dim",    "bh-verify", "bh-search", "blei",       "bonami",     "hyper",      "sidon",
      "constants", "chi-bound", "bohr-lower", "bohr-upper", "bohr-check", "report"};
  Options o;
  CLI::App app{"Bohnenblust-Hille and Bohr radius laboratory", "bhlab"};
  app.set_config("--config", "", "key=value file presetting flags");
  app.add_option("command", o.command, "subcommand")->required()->check(CLI::IsMember(commands));
  app.add_option("--m", o.m, "degree m");
  app.add_option("--n", o.n, "dimension n");
  app.add_option("--p", o.p, "ball exponent: real >= 1 or inf");
  app.add_option("--degree", o.degree, "polynomial degree (bonami, families)");
  app.add_option("--trials", o.trials, "number of random instances");
  app.add_option("--budget", o.budget, "search budget RxI (restarts x iterations)");
  app.add_option("--restarts", o.restarts, "sup-norm optimizer restarts");
  app.add_option("--seed", o.seed, "master seed");
  app.add_option("--threads", o.threads, "worker threads (0: OpenMP default)");
  app.add_option("--tolerance", o.tolerance, "verification tolerance");
  app.add_option("--out", o.out, "output directory (default $BHLAB_OUT or ./bhlab-out)");
  app.add_option("--format", o.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--family", o.family, "bohr-upper family: moebius, random-graded, search-witnesses, coordinate");
  app.add_option("--quad-nodes", o.quad_nodes, "starting phase-grid nodes per variable");
  app.add_option("--objective", o.objective, "bh_poly, bh_multilinear or sidon");
  app.add_option("--in", o.in, "report: records file (default <out>/records.jsonl)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "bhlab: " << e.what() << "\n";
    return invalid_args;
  }

  try {
    require(o.threads >= 0, "--threads must be >= 0");
    if (o.command == "report")
      return run_report(o, out, err);

    static const std::map<std::string, std::function<Outcome(const Options&)>> dispatch = {
        {"dim", cmd_dim},
        {"bh-verify", cmd_bh_verify},
        {"bh-search",
         [](const Options& opt) { return search_outcome(opt, parse_objective(opt.objective), "bh-search"); }},
        {"blei", cmd_blei},
        {"bonami", cmd_bonami},
        {"hyper", cmd_hyper},
        {"sidon", [](const Options& opt) { return search_outcome(opt, SearchObjective::sidon, "sidon"); }},
        {"constants", cmd_constants},
        {"chi-bound", cmd_chi_bound},
        {"bohr-lower", cmd_bohr_lower},
        {"bohr-upper", cmd_bohr_upper},
        {"bohr-check", cmd_bohr_check}};

    const auto start = std::chrono::steady_clock::now();
    Outcome res = dispatch.at(o.command)(o);
    auto& rec = res.record;
    rec.command = o.command;
    rec.seed = o.seed;
    rec.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    rec.created_at = timestamp();
    rec.certificate["verified"] = res.verified;

    const fs::path dir = output_dir(o);
    fs::create_directories(dir);
    if (res.witness && rec.witness_path)
      std::ofstream(dir / *rec.witness_path) << res.witness->dump() << "\n";
    std::ofstream(dir / "records.jsonl", std::ios::app) << to_json(rec).dump() << "\n";

    if (o.format == "json") {
      out << to_json(rec).dump() << "\n";
    } else if (o.format == "csv") {
      out << (res.csv.empty() ? report_csv({rec}) : res.csv);
    } else {
      out << res.text << "\n";
    }
    if (!res.verified) {
      err << "bhlab: " << o.command << ": verification failed beyond tolerance\n";
      return verification_failure;
    }
    return ok;
  } catch (const std::invalid_argument& e) {
    err << "bhlab: " << e.what() << "\n";
    return invalid_args;
  } catch (const std::range_error& e) {
    err << "bhlab: " << e.what() << "\n";
    return invalid_args;
  } catch (const std::logic_error& e) {
    err << "bhlab: " << e.what() << "\n";
    return invalid_args;
  } catch (const CLI::Error& e) {
    err << "bhlab: " << e.what() << "\n";
    return invalid_args;
  } catch (const Json::exception& e) {
    err << "bhlab: " << e.what() << "\n";
    return invalid_args;
  }
}

} // namespace bhlab::cli
