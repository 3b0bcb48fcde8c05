#include <fmt/core.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <random>

#include "output.hpp"
#include "whittaker/errors.hpp"
#include "whittaker/mellin.hpp"
#include "whittaker/quad.hpp"
#include "whittaker/special.hpp"
#include "whittaker/verify.hpp"

namespace whittaker::cli {
namespace {

using json = nlohmann::ordered_json;
using cd = std::complex<double>;

enum ExitCode { kPass = 0, kFailure = 1, kUsage = 2, kNonConvergence = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Method { Mb, Cone, Cross };

struct RunConfig {
  std::string group = "gl";
  int rank = 2;
  std::vector<double> lambda;
  std::vector<double> x;
  std::string method = "mb";
  double tol = 0;
  std::uint64_t seed = 1;
  std::string output;
  std::string format = "json";
};

// Fields of a JSON run config; flags given on the command line take precedence.
void load_config(const std::string& path, RunConfig& c, const CLI::App& sub) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config: ") + e.what());
  }
  auto take = [&](const char* key, const char* flag, auto& field) {
    if (!j.contains(key)) return;
    if (sub.get_option_no_throw(flag) && sub.get_option(flag)->count() > 0) return;
    try {
      j.at(key).get_to(field);
    } catch (const json::exception& e) {
      throw UsageError(std::string("bad config field ") + key + ": " + e.what());
    }
  };
  take("group", "--group", c.group);
  take("rank", "--rank", c.rank);
  take("lambda", "--lambda", c.lambda);
  take("x", "--x", c.x);
  take("method", "--method", c.method);
  take("tol", "--tol", c.tol);
  take("seed", "--seed", c.seed);
  take("output", "--output", c.output);
  take("format", "--format", c.format);
}

Family family_of(const RunConfig& c) {
  try {
    return parse_family(c.group);
  } catch (const std::exception&) {
    throw UsageError("unknown group " + c.group);
  }
}

Format format_of(const RunConfig& c) {
  if (c.format == "json") return Format::Json;
  if (c.format == "csv") return Format::Csv;
  throw UsageError("unknown format " + c.format);
}

Method method_of(const RunConfig& c) {
  if (c.method == "mb") return Method::Mb;
  if (c.method == "cone") return Method::Cone;
  if (c.method == "cross") return Method::Cross;
  throw UsageError("unknown method " + c.method);
}

std::shared_ptr<const RootSystem> system_of(Family f, int rank) {
  try {
    return root_system(f, rank);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

void validate_point(const RunConfig& c) {
  if (static_cast<int>(c.lambda.size()) != c.rank)
    throw UsageError(fmt::format("lambda has {} entries, rank is {}", c.lambda.size(), c.rank));
  if (static_cast<int>(c.x.size()) != c.rank)
    throw UsageError(fmt::format("x has {} entries, rank is {}", c.x.size(), c.rank));
  if (c.tol < 0) throw UsageError("tol must be positive");
}

json config_json(const RunConfig& c) {
  return json{{"group", c.group}, {"rank", c.rank}, {"lambda", c.lambda}, {"x", c.x},     {"method", c.method},
              {"tol", c.tol},     {"seed", c.seed}, {"format", c.format}};
}

std::string rational(const Rational& r) { return r.get_str(); }

void add_options(CLI::App* sub, RunConfig& c, std::string& config_path, bool point) {
  sub->add_option("--group", c.group, "gl, so-even, so-odd or sp")
      ->check(CLI::IsMember({"gl", "so-even", "so-odd", "sp"}));
  sub->add_option("--rank", c.rank, "rank n");
  if (point) {
    sub->add_option("--lambda", c.lambda, "spectral parameter, comma separated")->delimiter(',');
    sub->add_option("--x", c.x, "Cartan coordinate, comma separated")->delimiter(',');
    sub->add_option("--method", c.method, "mb, cone or cross")->check(CLI::IsMember({"mb", "cone", "cross"}));
    sub->add_option("--tol", c.tol, "relative tolerance (0 picks a default by dimension)");
  }
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_option("--output,-o", c.output, "output file (stdout when omitted)");
  sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--config", config_path, "JSON run configuration");
}

// verify

struct VerifyArgs {
  int trials = 100;
  int tamper = -1;
};

int cmd_verify(const RunConfig& c, const VerifyArgs& a) {
  Family f = family_of(c);
  auto rs = system_of(f, c.rank);
  if (a.trials <= 0) throw UsageError("trials must be positive");
  if (a.tamper >= rs->dimension()) throw UsageError("tamper index out of range");
  VerifyOptions o;
  o.trials = a.trials;
  o.seed = c.seed;
  o.tamper = a.tamper;
  o.jacobian_trials = std::min(a.trials, 20);
  std::vector<CheckResult> checks = verify_group(f, c.rank, o);
  for (auto& r : verify_mutations(o)) checks.push_back(r);
  bool ok = true;
  for (const auto& r : checks) ok = ok && r.ok();

  if (format_of(c) == Format::Csv) {
    Table t{{"check", "trials", "passed", "status", "counterexample"}, {}};
    for (const auto& r : checks)
      t.rows.push_back({r.name, std::to_string(r.trials), std::to_string(r.passed), r.ok() ? "pass" : "fail",
                        r.counterexample.value_or("")});
    emit(to_csv(t), c.output);
  } else {
    json j{{"command", "verify"}, {"group", c.group}, {"rank", c.rank}, {"trials", a.trials}, {"seed", c.seed}};
    if (a.tamper >= 0) j["tamper"] = a.tamper;
    json arr = json::array();
    for (const auto& r : checks) {
      json e{{"name", r.name}, {"trials", r.trials}, {"passed", r.passed}, {"status", r.ok() ? "pass" : "fail"}};
      if (r.counterexample) e["counterexample"] = *r.counterexample;
      arr.push_back(e);
    }
    j["checks"] = arr;
    j["status"] = ok ? "pass" : "fail";
    emit(to_json(j), c.output);
  }
  return ok ? kPass : kFailure;
}

// eval

struct EvalArgs {
  bool random_point = false;
  double cross_tol = 0;
  long long max_evaluations = 0;
};

json result_json(const std::string& method, const QuadResult& r) {
  return json{{"method", method},         {"re", r.value.real()},         {"im", r.value.imag()},
              {"abs", std::abs(r.value)}, {"est_error", r.est_error},     {"evaluations", r.evaluations},
              {"converged", r.converged}};
}

int cmd_eval(RunConfig c, const EvalArgs& a) {
  Family f = family_of(c);
  auto rs = system_of(f, c.rank);
  Method m = method_of(c);
  if (a.random_point) {
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> ul(-2, 2), ux(-1, 1);
    c.lambda.clear();
    c.x.clear();
    for (int k = 0; k < c.rank; ++k) c.lambda.push_back(ul(rng));
    for (int k = 0; k < c.rank; ++k) c.x.push_back(ux(rng));
  }
  validate_point(c);
  const int d = rs->dimension();
  std::vector<std::pair<std::string, QuadResult>> results;
  if (m != Method::Cone) {
    if (d > 4) throw UsageError(fmt::format("mb supports dimension <= 4, {} has {}", c.group, d));
    MBOptions o;
    o.tol = c.tol;
    o.throw_on_failure = false;
    if (a.max_evaluations > 0) o.max_evaluations = a.max_evaluations;
    results.emplace_back("mb", eval_mb(assemble_mb_integrand(f, c.rank), c.x, c.lambda, o));
  }
  if (m != Method::Mb) {
    if (d > 8) throw UsageError(fmt::format("cone supports dimension <= 8, {} has {}", c.group, d));
    ConeOptions o;
    o.tol = c.tol;
    o.seed = c.seed;
    o.throw_on_failure = false;
    if (a.max_evaluations > 0) o.max_evaluations = a.max_evaluations;
    results.emplace_back("cone", eval_cone(f, c.rank, c.lambda, c.x, o));
  }
  for (const auto& [name, r] : results)
    spdlog::debug("{}: {} evaluations in {:.3f}s", name, r.evaluations, r.wall_time.count());

  bool converged = true;
  for (const auto& [name, r] : results) converged = converged && r.converged;
  std::optional<double> dev;
  double cross_tol = a.cross_tol > 0 ? a.cross_tol : (d >= 4 ? 1e-3 : 1e-4);
  if (m == Method::Cross)
    dev = std::abs(results[0].second.value - results[1].second.value) / std::abs(results[1].second.value);
  int code = !converged ? kNonConvergence : (dev && *dev > cross_tol) ? kFailure : kPass;
  const char* status = code == kPass ? "pass" : code == kFailure ? "fail" : "nonconvergence";

  if (format_of(c) == Format::Csv) {
    Table t{{"method", "re", "im", "abs", "est_error", "evaluations", "converged", "rel_dev"}, {}};
    for (const auto& [name, r] : results)
      t.rows.push_back({name, number(r.value.real()), number(r.value.imag()), number(std::abs(r.value)),
                        number(r.est_error), std::to_string(r.evaluations), r.converged ? "true" : "false",
                        dev ? number(*dev) : ""});
    emit(to_csv(t), c.output);
  } else {
    json j{{"command", "eval"}};
    json config = config_json(c);
    for (auto& [k, v] : config.items()) j[k] = v;
    json arr = json::array();
    for (const auto& [name, r] : results) arr.push_back(result_json(name, r));
    j["results"] = arr;
    if (dev) {
      j["rel_dev"] = *dev;
      j["cross_tol"] = cross_tol;
    }
    j["status"] = status;
    emit(to_json(j), c.output);
  }
  return code;
}

// mellin-table

struct TableArgs {
  std::string grid = "0.5:1.5:5";
  std::vector<double> imag;
  double check_tol = 1e-6;
};

std::vector<double> parse_grid(const std::string& spec) {
  double lo = 0, hi = 0;
  int count = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(spec);
  if (!(in >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count < 1 || !in.eof())
    throw UsageError("grid must be LO:HI:COUNT, got " + spec);
  std::vector<double> v;
  for (int k = 0; k < count; ++k) {
    double s = count == 1 ? lo : (lo * (count - 1 - k) + hi * k) / (count - 1);
    v.push_back(std::stod(fmt::format("{:.12g}", s)));  // 0.6 + 0.2 -> 0.8, not 0.7999999999999999
  }
  return v;
}

std::string complex_text(cd z) { return fmt::format("{}{:+}i", z.real(), z.imag()); }

std::optional<cd> table_oracle(Family f, int n, const std::vector<double>& lambda, const std::vector<cd>& s) {
  if (f == Family::A && n == 3) return bump_gl3(lambda, s[0], s[1]);
  if (f == Family::A && n == 2) {
    cd half(0, (lambda[0] - lambda[1]) / 2);
    return std::exp(log_gamma_complex(s[0] + half) + log_gamma_complex(s[0] - half));
  }
  return std::nullopt;
}

int cmd_mellin_table(const RunConfig& c, const TableArgs& a) {
  Family f = family_of(c);
  system_of(f, c.rank);
  if (static_cast<int>(c.lambda.size()) != c.rank)
    throw UsageError(fmt::format("lambda has {} entries, rank is {}", c.lambda.size(), c.rank));
  MellinSplit split = mellin_of_whittaker(f, c.rank);
  const int outer = split.outer;
  if (split.integrand.dimension - outer > 4) throw UsageError("inner dimension above 4 is not supported");
  std::vector<double> re = parse_grid(a.grid);
  std::vector<double> im = a.imag;
  if (im.empty()) im.assign(outer, 0.0);
  if (static_cast<int>(im.size()) != outer)
    throw UsageError(fmt::format("--s-imag needs {} entries", outer));

  MBOptions o;
  o.tol = c.tol;
  o.throw_on_failure = false;
  bool converged = true, within = true;
  Table t;
  for (int k = 1; k <= outer; ++k) t.header.push_back("s" + std::to_string(k));
  for (const char* h : {"re", "im", "abs", "oracle_re", "oracle_im", "rel_dev"}) t.header.push_back(h);
  json rows = json::array();
  std::vector<int> idx(outer, 0);
  while (true) {
    std::vector<cd> s;
    for (int k = 0; k < outer; ++k) s.emplace_back(re[idx[k]], im[k]);
    QuadResult r;
    try {
      r = eval_mellin(split, s, c.lambda, o);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Infeasible || e.kind() == ErrorKind::PoleHit)
        throw UsageError("s outside the domain of the Mellin transform: " + std::string(e.what()));
      throw;
    }
    converged = converged && r.converged;
    std::optional<cd> oracle = table_oracle(f, c.rank, c.lambda, s);
    std::optional<double> dev;
    if (oracle) {
      dev = std::abs(r.value - *oracle) / std::abs(*oracle);
      within = within && *dev <= a.check_tol;
    }
    std::vector<std::string> cells;
    for (const auto& z : s) cells.push_back(complex_text(z));
    cells.insert(cells.end(), {number(r.value.real()), number(r.value.imag()), number(std::abs(r.value)),
                               oracle ? number(oracle->real()) : "", oracle ? number(oracle->imag()) : "",
                               dev ? number(*dev) : ""});
    t.rows.push_back(cells);
    json sj = json::array();
    for (const auto& z : s) sj.push_back({z.real(), z.imag()});
    json row{{"s", sj},         {"re", r.value.real()}, {"im", r.value.imag()},
             {"abs", std::abs(r.value)}, {"est_error", r.est_error}, {"converged", r.converged}};
    if (oracle) {
      row["oracle_re"] = oracle->real();
      row["oracle_im"] = oracle->imag();
      row["rel_dev"] = *dev;
    }
    rows.push_back(row);
    int k = outer - 1;
    while (k >= 0 && ++idx[k] == static_cast<int>(re.size())) idx[k--] = 0;
    if (k < 0) break;
  }
  int code = !converged ? kNonConvergence : within ? kPass : kFailure;
  if (format_of(c) == Format::Csv) {
    emit(to_csv(t), c.output);
  } else {
    json j{{"command", "mellin-table"}, {"group", c.group}, {"rank", c.rank}, {"lambda", c.lambda},
           {"tol", c.tol},              {"grid", a.grid},   {"s_imag", im},   {"check_tol", a.check_tol},
           {"rows", rows},              {"status", code == kPass ? "pass" : code == kFailure ? "fail" : "nonconvergence"}};
    emit(to_json(j), c.output);
  }
  return code;
}

// integrand

json form_json(const AffineForm& a, const std::vector<std::string>& names) {
  json coeffs = json::object(), lam = json::object();
  for (const auto& [id, v] : a.coeffs) coeffs[names.at(id)] = rational(v);
  for (const auto& [k, v] : a.lambda_coeffs) lam["lambda_" + std::to_string(k + 1)] = rational(v);
  return json{{"coeffs", coeffs}, {"lambda", lam}, {"constant", rational(a.constant)}, {"text", a.str(names)}};
}

json matrix_json(const std::vector<std::vector<Rational>>& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& v : row) r.push_back(rational(v));
    out.push_back(r);
  }
  return out;
}

int cmd_integrand(const RunConfig& c, bool mellin) {
  Family f = family_of(c);
  system_of(f, c.rank);
  MBIntegrand m;
  std::optional<MellinSplit> split;
  if (mellin) {
    split = mellin_of_whittaker(f, c.rank);
    m = split->integrand;
  } else {
    m = assemble_mb_integrand(f, c.rank);
  }
  ConstraintSet cs = m.constraints();
  std::optional<std::vector<Rational>> base;
  if (!mellin) base = contour_base_point(cs, m.dimension);

  if (format_of(c) == Format::Csv) {
    Table t{{"kind", "index", "expression"}, {}};
    auto add = [&](const char* kind, const std::vector<AffineForm>& v) {
      for (size_t k = 0; k < v.size(); ++k) t.rows.push_back({kind, std::to_string(k), v[k].str(m.variables)});
    };
    add("num", m.num);
    add("den", m.den);
    add("constraint", cs);
    if (split) {
      std::vector<std::string> telescoped = assemble_mb_integrand(f, c.rank).variables;
      for (size_t k = 0; k < split->s_definition.size(); ++k)
        t.rows.push_back({"s_definition", std::to_string(k), split->s_definition[k].str(telescoped)});
    }
    emit(to_csv(t), c.output);
    return kPass;
  }
  json j{{"command", "integrand"}, {"group", c.group}, {"rank", c.rank}, {"mellin", mellin},
         {"dimension", m.dimension}, {"variables", m.variables}};
  auto forms = [&](const std::vector<AffineForm>& v) {
    json arr = json::array();
    for (const auto& a : v) arr.push_back(form_json(a, m.variables));
    return arr;
  };
  j["num"] = forms(m.num);
  j["den"] = forms(m.den);
  j["exponent"] = matrix_json(m.exponent);
  j["phase"] = matrix_json(m.phase);
  j["scale"] = rational(m.scale);
  j["constraints"] = forms(cs);
  if (base) {
    json b = json::array();
    for (const auto& v : *base) b.push_back(rational(v));
    j["base_point"] = b;
    j["min_slack"] = rational(min_slack(cs, *base));
  }
  if (split) {
    std::vector<std::string> telescoped = assemble_mb_integrand(f, c.rank).variables;
    j["outer"] = split->outer;
    json defs = json::array();
    for (const auto& a : split->s_definition) defs.push_back(form_json(a, telescoped));
    j["s_definition"] = defs;
    std::vector<std::string> central;
    for (const auto& v : split->central) central.push_back(rational(v));
    j["central"] = central;
  }
  emit(to_json(j), c.output);
  return kPass;
}

int run(int argc, char** argv) {
  CLI::App app{"Whittaker wave functions: exact chart checks and Mellin-Barnes evaluation", "whittaker"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("--verbose,-v", verbose, "log progress to stderr");

  RunConfig cfg;
  std::string config_path;

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "exact property suites with counterexamples");
  add_options(verify, cfg, config_path, false);
  verify->add_option("--trials", va.trials, "random charts per check");
  verify->add_option("--tamper", va.tamper, "perturb one closed-form coordinate (negative control)")
      ->group("Testing");

  EvalArgs ea;
  CLI::App* eval = app.add_subcommand("eval", "evaluate the wave function at (lambda, x)");
  add_options(eval, cfg, config_path, true);
  eval->add_flag("--random-point", ea.random_point, "draw lambda in [-2,2]^n and x in [-1,1]^n from the seed");
  eval->add_option("--cross-tol", ea.cross_tol, "allowed relative deviation for cross (default 1e-4, 1e-3 for d >= 4)");
  eval->add_option("--max-evaluations", ea.max_evaluations, "evaluation budget for refinement passes; the first pass always runs");

  TableArgs ta;
  CLI::App* table = app.add_subcommand("mellin-table", "tabulate the Mellin transform on a grid of s");
  add_options(table, cfg, config_path, true);
  table->add_option("--s-grid", ta.grid, "real parts LO:HI:COUNT, shared by every s variable");
  table->add_option("--s-imag", ta.imag, "imaginary part of each s variable")->delimiter(',');
  table->add_option("--check-tol", ta.check_tol, "allowed relative deviation from the closed form");

  bool mellin = false;
  CLI::App* integrand = app.add_subcommand("integrand", "print the Mellin-Barnes integrand");
  add_options(integrand, cfg, config_path, false);
  integrand->add_flag("--mellin", mellin, "the split into outer s variables and inner variables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  auto logger = spdlog::stderr_color_st("whittaker");
  spdlog::set_default_logger(logger);
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::warn);

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (!config_path.empty()) load_config(config_path, cfg, *sub);
    auto start = std::chrono::steady_clock::now();
    int code = kPass;
    if (sub == verify) code = cmd_verify(cfg, va);
    if (sub == eval) code = cmd_eval(cfg, ea);
    if (sub == table) code = cmd_mellin_table(cfg, ta);
    if (sub == integrand) code = cmd_integrand(cfg, mellin);
    spdlog::debug("{} finished with exit code {} after {:.3f}s", sub->get_name(), code,
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    return code;
  } catch (const UsageError& e) {
    fmt::print(stderr, "usage error: {}\n", e.what());
    return kUsage;
  } catch (const NotConverged& e) {
    fmt::print(stderr, "not converged: {} (partial {}, est_error {})\n", e.what(), complex_text(e.partial),
               e.est_error);
    return kNonConvergence;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kFailure;
  }
}

}  // namespace
}  // namespace whittaker::cli

int main(int argc, char** argv) { return whittaker::cli::run(argc, argv); }
