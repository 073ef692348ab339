#include "zomd/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace zomd::bench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json vec_to_json(const Vec& v) { return json(v); }

std::optional<Vec> opt_vec_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<Vec>();
}

std::optional<double> opt_double_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

void put_opt(json& j, const char* key, const std::optional<double>& v) {
  j[key] = v ? json(*v) : json(nullptr);
}

void put_opt(json& j, const char* key, const std::optional<Vec>& v) {
  j[key] = v ? vec_to_json(*v) : json(nullptr);
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << content;
}

/// Run fn(0..count-1) on up to `workers` threads; rethrows the first error.
void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& fn) {
  const int nthreads =
      std::max(1, std::min<int>(workers, static_cast<int>(count)));
  if (nthreads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

NoiseModel::Kind noise_kind_from(const std::string& s) {
  if (s == "none") return NoiseModel::Kind::none;
  if (s == "constant_plus") return NoiseModel::Kind::constant_plus;
  if (s == "uniform") return NoiseModel::Kind::uniform;
  if (s == "adversarial_align") return NoiseModel::Kind::adversarial_align;
  throw std::invalid_argument("unknown noise kind '" + s + "'");
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  if (!j.contains("problem") || !j.at("problem").contains("name") ||
      !j.at("problem").contains("n"))
    throw std::invalid_argument("config needs problem.name and problem.n");
  const json& p = j.at("problem");
  cfg.problem.name = p.at("name").get<std::string>();
  cfg.problem.n = p.at("n").get<std::size_t>();
  if (cfg.problem.n == 0)
    throw std::invalid_argument("problem.n must be >= 1");
  cfg.problem.M = p.value("M", 1.0);
  cfg.problem.gamma = opt_double_from(p, "gamma");
  cfg.problem.xi_scale = opt_double_from(p, "xi_scale");
  cfg.problem.x_star = opt_vec_from(p, "x_star");
  cfg.problem.domain_margin = opt_double_from(p, "domain_margin");

  if (j.contains("prox")) {
    const json& x = j.at("prox");
    cfg.prox.kind = x.value("kind", std::string("auto"));
    cfg.prox.set = x.value("set", std::string("auto"));
    cfg.prox.radius = x.value("radius", 1.0);
    cfg.prox.center = opt_vec_from(x, "center");
    cfg.prox.lower = opt_vec_from(x, "lower");
    cfg.prox.upper = opt_vec_from(x, "upper");
    cfg.prox.x0 = opt_vec_from(x, "x0");
  }
  cfg.epsilon = j.value("epsilon", 0.25);
  if (j.contains("noise")) {
    const json& x = j.at("noise");
    cfg.noise.kind = x.value("kind", std::string("none"));
    cfg.noise.delta = x.value("delta", 0.0);
    cfg.noise.delta_in_delta0 = x.value("delta_in_delta0", false);
  }
  if (j.contains("step")) {
    const json& x = j.at("step");
    cfg.step.rule = x.value("rule", std::string("auto"));
    cfg.step.h = x.value("h", 0.0);
    cfg.step.gamma = opt_double_from(x, "gamma");
  }
  if (j.contains("iterations")) {
    const json& it = j.at("iterations");
    if (it.is_string()) {
      if (it.get<std::string>() != "auto")
        throw std::invalid_argument("iterations must be a count or \"auto\"");
      cfg.iterations = 0;
    } else {
      cfg.iterations = it.get<std::uint64_t>();
    }
  }
  if (j.contains("seeds")) cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  if (cfg.seeds.empty()) throw std::invalid_argument("seeds must be nonempty");
  cfg.report_points = j.value("report_points", std::string("center"));
  if (cfg.report_points != "center" && cfg.report_points != "perturbed")
    throw std::invalid_argument("report_points must be center|perturbed");
  cfg.gradient = j.value("gradient", std::string("two_point"));
  if (cfg.gradient != "two_point" && cfg.gradient != "exact_mean")
    throw std::invalid_argument("gradient must be two_point|exact_mean");
  cfg.record_iterates = j.value("record_iterates", false);
  cfg.workers = j.value("workers", 1);
  if (cfg.workers < 1) throw std::invalid_argument("workers must be >= 1");
  cfg.out_dir = j.value("out", std::string("out"));
  cfg.label = j.value("label", std::string("run"));
  if (j.contains("verify")) {
    const json& x = j.at("verify");
    cfg.verify.samples = x.value("samples", std::uint64_t{1000000});
    cfg.verify.bound_scale = x.value("bound_scale", 1.0);
    cfg.verify.seed = x.value("seed", std::uint64_t{90001});
    if (cfg.verify.samples == 0)
      throw std::invalid_argument("verify.samples must be >= 1");
  }
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json p;
  p["name"] = cfg.problem.name;
  p["n"] = cfg.problem.n;
  p["M"] = cfg.problem.M;
  put_opt(p, "gamma", cfg.problem.gamma);
  put_opt(p, "xi_scale", cfg.problem.xi_scale);
  put_opt(p, "x_star", cfg.problem.x_star);
  put_opt(p, "domain_margin", cfg.problem.domain_margin);

  json x;
  x["kind"] = cfg.prox.kind;
  x["set"] = cfg.prox.set;
  x["radius"] = cfg.prox.radius;
  put_opt(x, "center", cfg.prox.center);
  put_opt(x, "lower", cfg.prox.lower);
  put_opt(x, "upper", cfg.prox.upper);
  put_opt(x, "x0", cfg.prox.x0);

  json noise;
  noise["kind"] = cfg.noise.kind;
  noise["delta"] = cfg.noise.delta;
  noise["delta_in_delta0"] = cfg.noise.delta_in_delta0;

  json step;
  step["rule"] = cfg.step.rule;
  step["h"] = cfg.step.h;
  put_opt(step, "gamma", cfg.step.gamma);

  json verify;
  verify["samples"] = cfg.verify.samples;
  verify["bound_scale"] = cfg.verify.bound_scale;
  verify["seed"] = cfg.verify.seed;

  json j;
  j["problem"] = std::move(p);
  j["prox"] = std::move(x);
  j["epsilon"] = cfg.epsilon;
  j["noise"] = std::move(noise);
  j["step"] = std::move(step);
  j["iterations"] = cfg.iterations;
  j["seeds"] = cfg.seeds;
  j["report_points"] = cfg.report_points;
  j["gradient"] = cfg.gradient;
  j["record_iterates"] = cfg.record_iterates;
  j["workers"] = cfg.workers;
  j["out"] = cfg.out_dir;
  j["label"] = cfg.label;
  j["verify"] = std::move(verify);
  return j;
}

void apply_override(json& j, const std::string& key_eq_value) {
  auto eq = key_eq_value.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("--set expects key=value, got '" +
                                key_eq_value + "'");
  std::string path = key_eq_value.substr(0, eq);
  std::string value = key_eq_value.substr(eq + 1);
  std::string pointer = "/";
  for (char c : path) pointer += c == '.' ? '/' : c;
  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::exception&) {
    parsed = value;  // plain string
  }
  j[json::json_pointer(pointer)] = parsed;
}

BuiltExperiment build_experiment(const ExperimentConfig& cfg) {
  BuiltinOptions opts;
  opts.xi_scale = cfg.problem.xi_scale;
  opts.x_star = cfg.problem.x_star;
  StochasticProblem problem = builtin_problem(
      cfg.problem.name, cfg.problem.n, cfg.problem.M, cfg.problem.gamma, opts);

  const std::size_t n = cfg.problem.n;
  std::string kind = cfg.prox.kind;
  std::string set = cfg.prox.set;
  if (kind == "auto") kind = problem.name == "l1_weighted" ? "entropy" : "euclidean";
  if (set == "auto") set = kind == "entropy" ? "simplex" : "ball";

  auto make_prox = [&]() -> ProxSetup {
    if (kind == "entropy") {
      if (set != "simplex")
        throw std::invalid_argument("entropy prox requires set=simplex");
      return ProxSetup::entropy(n);
    }
    if (kind != "euclidean")
      throw std::invalid_argument("prox.kind must be euclidean|entropy|auto");
    if (set == "ball") {
      Vec center = cfg.prox.center.value_or(Vec(n, 0.0));
      FeasibleSet fs = FeasibleSet::euclidean_ball(center, cfg.prox.radius);
      Vec x0 = cfg.prox.x0.value_or(center);
      return ProxSetup::euclidean(std::move(fs), std::move(x0));
    }
    if (set == "box") {
      Vec lower = cfg.prox.lower.value_or(Vec(n, -1.0));
      Vec upper = cfg.prox.upper.value_or(Vec(n, 1.0));
      Vec x0 = cfg.prox.x0.value_or([&] {
        Vec m(n);
        for (std::size_t i = 0; i < n; ++i) m[i] = 0.5 * (lower[i] + upper[i]);
        return m;
      }());
      return ProxSetup::euclidean(FeasibleSet::box(lower, upper), std::move(x0));
    }
    throw std::invalid_argument("prox.set must be ball|box|simplex|auto");
  };
  ProxSetup prox = make_prox();

  if (problem.optimum &&
      !prox.feasible_set().contains(problem.optimum->x_star, 1e-9))
    throw std::invalid_argument(
        "the problem minimizer is not inside the feasible set");
  if (cfg.problem.domain_margin)
    problem.domain = DomainGuard{prox.feasible_set(), *cfg.problem.domain_margin};

  BuiltExperiment built{std::move(problem),
                        NoiseModel{},
                        std::move(prox),
                        choose_params(cfg.epsilon, cfg.problem.M, n),
                        StepRule{},
                        0.0,
                        0.0,
                        0.0,
                        0,
                        0};

  if (!built.problem.optimum)
    throw std::invalid_argument("built-in problems must expose a minimizer");
  built.r_squared = initial_radius_sq(built.prox, built.problem.optimum->x_star);
  const double R = std::sqrt(built.r_squared);
  built.m_tilde_sq =
      second_moment_bound(built.prox.q(), n, built.problem.lipschitz);
  built.delta0 = R > 0.0 ? noise_threshold(cfg.epsilon, built.problem.lipschitz,
                                           R, n)
                         : 0.0;

  built.noise.kind = noise_kind_from(cfg.noise.kind);
  built.noise.delta_bound =
      cfg.noise.delta_in_delta0 ? cfg.noise.delta * built.delta0 : cfg.noise.delta;
  if (built.noise.delta_bound < 0.0)
    throw std::invalid_argument("noise delta must be >= 0");

  built.prescribed_iterations =
      R > 0.0 ? iteration_count(cfg.epsilon, built.problem.lipschitz, R, n,
                                built.prox.q())
              : 1;
  built.iterations = cfg.iterations ? cfg.iterations : built.prescribed_iterations;

  if (cfg.step.rule == "auto") {
    built.step.kind = StepRule::Kind::auto_constant;
  } else if (cfg.step.rule == "constant") {
    built.step.kind = StepRule::Kind::constant;
    built.step.h = cfg.step.h;
  } else if (cfg.step.rule == "strongly_convex") {
    built.step.kind = StepRule::Kind::strongly_convex;
    std::optional<double> gamma = cfg.step.gamma;
    if (!gamma) gamma = built.problem.strong_convexity;
    if (!gamma || !(*gamma > 0.0))
      throw std::invalid_argument(
          "strongly_convex step rule needs a positive gamma");
    built.step.gamma = *gamma;
  } else {
    throw std::invalid_argument(
        "step.rule must be auto|constant|strongly_convex");
  }
  return built;
}

Trace run_seed(const BuiltExperiment& built, const ExperimentConfig& cfg,
               std::uint64_t seed) {
  RunConfig rc;
  rc.step = built.step;
  rc.iterations = built.iterations;
  rc.epsilon = cfg.epsilon;
  rc.seed = seed;
  rc.record_iterates = cfg.record_iterates;
  rc.report_points = cfg.report_points == "perturbed" ? ReportPoints::perturbed
                                                      : ReportPoints::center;
  rc.gradient = cfg.gradient == "exact_mean" ? GradientKind::exact_mean
                                             : GradientKind::two_point;
  return run(built.problem, built.noise, built.prox, built.params, rc);
}

namespace {

json derived_to_json(const BuiltExperiment& built) {
  json d;
  d["tau"] = built.params.tau;
  d["mu"] = built.params.mu;
  d["delta0"] = built.delta0;
  d["delta_used"] = built.noise.delta_bound;
  d["R2"] = built.r_squared;
  d["M_tilde_sq"] = built.m_tilde_sq;
  d["N_prescribed"] = built.prescribed_iterations;
  d["N_used"] = built.iterations;
  d["stream_roles"] = {{"xi", kStreamXi}, {"e1", kStreamE1}, {"e2", kStreamE2}};
  if (built.step.kind != StepRule::Kind::strongly_convex &&
      built.r_squared > 0.0) {
    double h = built.step.kind == StepRule::Kind::constant
                   ? built.step.h
                   : step_size_constant(std::sqrt(built.r_squared),
                                        std::sqrt(built.m_tilde_sq),
                                        built.iterations);
    d["h"] = h;
  }
  return d;
}

std::uint64_t unix_now() {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count());
}

}  // namespace

int cmd_run(const ExperimentConfig& cfg, std::ostream& log) {
  BuiltExperiment built = build_experiment(cfg);
  const std::size_t k = cfg.seeds.size();
  std::vector<double> final_regret(k, 0.0);
  std::vector<std::string> files(k);
  parallel_for(k, cfg.workers, [&](std::size_t i) {
    Trace t = run_seed(built, cfg, cfg.seeds[i]);
    fs::path path = fs::path(cfg.out_dir) /
                    (cfg.label + "_seed" + std::to_string(cfg.seeds[i]) + ".csv");
    write_file(path, trace_csv(t));
    final_regret[i] = t.final_running_regret();
    files[i] = path.string();
  });

  json meta;
  meta["config"] = config_to_json(cfg);
  meta["derived"] = derived_to_json(built);
  meta["outputs"] = files;
  json per_seed = json::object();
  for (std::size_t i = 0; i < k; ++i)
    per_seed[std::to_string(cfg.seeds[i])] = final_regret[i];
  meta["final_running_regret"] = std::move(per_seed);
  meta["generated_at_unix"] = unix_now();
  write_file(fs::path(cfg.out_dir) / (cfg.label + "_meta.json"),
             meta.dump(2) + "\n");

  log << "wrote " << k << " trace(s) to " << cfg.out_dir << "\n";
  return 0;
}

int cmd_sweep(const ExperimentConfig& cfg, const std::string& axis,
              const std::vector<double>& values, std::ostream& log) {
  if (values.empty()) throw std::invalid_argument("sweep: no values given");
  if (axis != "N" && axis != "delta" && axis != "n")
    throw std::invalid_argument("sweep axis must be N|delta|n");

  struct Row {
    double value;
    std::uint64_t seed;
    BuiltExperiment* built;
    double final_regret;
  };

  std::vector<ExperimentConfig> configs;
  std::vector<BuiltExperiment> builts;
  configs.reserve(values.size());
  builts.reserve(values.size());
  for (double v : values) {
    ExperimentConfig c = cfg;
    if (axis == "N") {
      if (!(v >= 1.0)) throw std::invalid_argument("sweep: N values must be >= 1");
      c.iterations = static_cast<std::uint64_t>(v);
    } else if (axis == "delta") {
      if (v < 0.0) throw std::invalid_argument("sweep: delta values must be >= 0");
      c.noise.delta = v;
    } else {
      if (!(v >= 1.0)) throw std::invalid_argument("sweep: n values must be >= 1");
      c.problem.n = static_cast<std::size_t>(v);
    }
    configs.push_back(std::move(c));
    builts.push_back(build_experiment(configs.back()));
  }

  const std::size_t per = cfg.seeds.size();
  std::vector<Row> rows(values.size() * per);
  parallel_for(rows.size(), cfg.workers, [&](std::size_t t) {
    const std::size_t vi = t / per;
    const std::size_t si = t % per;
    Trace trace = run_seed(builts[vi], configs[vi], cfg.seeds[si]);
    rows[t] = {values[vi], cfg.seeds[si], &builts[vi],
               trace.final_running_regret()};
  });

  std::ostringstream csv;
  csv << "axis,value,seed,n,epsilon,M,delta,N_theorem,N_used,h,tau,mu,R2,"
         "M_tilde_sq,final_regret\n";
  for (const Row& r : rows) {
    const BuiltExperiment& b = *r.built;
    double h = 0.0;
    if (b.step.kind == StepRule::Kind::constant) h = b.step.h;
    else if (b.step.kind == StepRule::Kind::auto_constant && b.r_squared > 0.0)
      h = step_size_constant(std::sqrt(b.r_squared), std::sqrt(b.m_tilde_sq),
                             b.iterations);
    csv << axis << ',' << fmt_double(r.value) << ',' << r.seed << ','
        << b.problem.n << ',' << fmt_double(b.params.epsilon) << ','
        << fmt_double(b.problem.lipschitz) << ','
        << fmt_double(b.noise.delta_bound) << ',' << b.prescribed_iterations
        << ',' << b.iterations << ',' << fmt_double(h) << ','
        << fmt_double(b.params.tau) << ',' << fmt_double(b.params.mu) << ','
        << fmt_double(b.r_squared) << ',' << fmt_double(b.m_tilde_sq) << ','
        << fmt_double(r.final_regret) << '\n';
  }
  fs::path csv_path = fs::path(cfg.out_dir) / (cfg.label + "_summary.csv");
  write_file(csv_path, csv.str());

  json meta;
  meta["config"] = config_to_json(cfg);
  meta["axis"] = axis;
  meta["values"] = values;
  meta["outputs"] = {csv_path.string()};
  meta["generated_at_unix"] = unix_now();
  write_file(fs::path(cfg.out_dir) / (cfg.label + "_sweep_meta.json"),
             meta.dump(2) + "\n");

  log << "wrote " << rows.size() << " summary rows to " << csv_path.string()
      << "\n";
  return 0;
}

json report_to_json(const VerificationReport& r) {
  json j;
  j["id"] = r.id;
  j["lhs"] = r.lhs;
  j["lhs_std_error"] = r.lhs_std_error;
  j["rhs"] = r.rhs;
  j["pass"] = r.pass;
  j["samples"] = r.samples;
  j["params"] = r.params;
  return j;
}

std::vector<VerificationReport> default_verify_suite(const VerifySpec& spec) {
  const std::uint64_t S = spec.samples;
  const double inf = kInfiniteExponent;
  RandomStream rs(spec.seed, 777);
  std::vector<VerificationReport> reports;

  const std::vector<std::pair<std::size_t, double>> sphere_cases = {
      {2, 2.0}, {10, 2.0}, {10, 4.0}, {100, inf}, {2, inf}};
  for (auto [n, q] : sphere_cases)
    reports.push_back(verify_lemma4_23(n, q, S, rs));
  for (auto [n, q] : sphere_cases) {
    Vec c = sample_sphere(n, rs);
    reports.push_back(verify_lemma4_24(n, q, c, S, rs));
  }

  reports.push_back(verify_lemma6(1.0, 0.1, 0.01, S, rs));
  reports.push_back(verify_lemma6(2.0, 0.05, 0.005, S, rs));

  // estimator second moment on two geometries, noiseless and at the noise
  // threshold
  {
    auto problem = builtin_problem("l2_distance", 4, 1.0);
    auto fs = FeasibleSet::euclidean_ball(Vec(4, 0.0), 1.0);
    auto prox = ProxSetup::euclidean(fs, Vec(4, 0.0));
    auto params = choose_params(0.25, 1.0, 4);
    double R = std::sqrt(initial_radius_sq(prox, problem.optimum->x_star));
    double delta0 = noise_threshold(0.25, 1.0, R, 4);
    for (double delta : {0.0, delta0}) {
      NoiseModel nm{NoiseModel::Kind::adversarial_align, delta};
      for (int rep = 0; rep < 2; ++rep) {
        Vec x = fs.sample(rs);
        reports.push_back(verify_moment_27(problem, nm, x, params, 2.0, S, rs));
      }
    }
  }
  {
    auto problem = builtin_problem("l1_weighted", 10, 1.0);
    auto prox = ProxSetup::entropy(10);
    auto params = choose_params(0.25, 1.0, 10);
    NoiseModel nm{};
    for (int rep = 0; rep < 2; ++rep) {
      Vec x = prox.feasible_set().sample(rs);
      reports.push_back(
          verify_moment_27(problem, nm, x, params, inf, S, rs));
    }
  }

  // estimator mean against closed-form smoothed gradients
  for (std::size_t n : {std::size_t{1}, std::size_t{4}}) {
    Vec a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = 0.5 + 0.25 * static_cast<double>(i);
    auto linear = make_max_affine({a}, {0.0},
                                  {XiLaw::Kind::gaussian_scalar, 0, 0.1});
    linear.lipschitz = norm2(a);
    auto params = choose_params(0.2, std::max(1.0, linear.lipschitz), n);
    Vec x(n, 0.1);
    reports.push_back(verify_unbiasedness(linear, x, params, S, rs));

    auto quad = builtin_problem("strongly_convex_quadratic", n, 2.0, 1.0);
    auto qparams = choose_params(0.2, 2.0, n);
    Vec xq(n, 0.4);
    reports.push_back(verify_unbiasedness(quad, xq, qparams, S, rs));
  }

  // single-smoothing gap on the l2 problem
  {
    auto problem = builtin_problem("l2_distance", 4, 1.0);
    std::vector<Vec> points = {problem.optimum->x_star, Vec(4, 0.0),
                               Vec{0.2, -0.1, 0.3, 0.0}};
    reports.push_back(verify_smoothing_gap(problem, points, 0.05, S, rs));
  }

  // iterate-distance bound on a small batch of noiseless runs
  {
    auto problem = builtin_problem("l2_distance", 4, 1.0);
    auto prox = ProxSetup::euclidean(
        FeasibleSet::euclidean_ball(Vec(4, 0.0), 1.0), Vec(4, 0.0));
    auto params = choose_params(0.25, 1.0, 4);
    std::vector<Trace> traces;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      RunConfig rc;
      rc.step.kind = StepRule::Kind::auto_constant;
      rc.iterations = 400;
      rc.epsilon = 0.25;
      rc.seed = seed;
      traces.push_back(run(problem, NoiseModel{}, prox, params, rc));
    }
    reports.push_back(verify_distance_bound(
        traces, initial_radius_sq(prox, problem.optimum->x_star)));
  }

  for (VerificationReport& r : reports) apply_bound_scale(r, spec.bound_scale);
  return reports;
}

int cmd_verify(const ExperimentConfig& cfg, std::ostream& log) {
  std::vector<VerificationReport> reports = default_verify_suite(cfg.verify);
  bool all_pass = true;
  json arr = json::array();
  for (const VerificationReport& r : reports) {
    all_pass = all_pass && r.pass;
    arr.push_back(report_to_json(r));
    log << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << "  lhs="
        << fmt_double(r.lhs) << "  rhs=" << fmt_double(r.rhs)
        << "  se=" << fmt_double(r.lhs_std_error) << "  samples=" << r.samples;
    for (const auto& [k, v] : r.params)
      if (k == "n" || k == "q" || k == "delta" || k == "M")
        log << "  " << k << "=" << fmt_double(v);
    log << "\n";
  }
  json out;
  out["reports"] = std::move(arr);
  out["all_pass"] = all_pass;
  out["samples"] = cfg.verify.samples;
  out["bound_scale"] = cfg.verify.bound_scale;
  out["seed"] = cfg.verify.seed;
  out["generated_at_unix"] = unix_now();
  write_file(fs::path(cfg.out_dir) / (cfg.label + "_verify.json"),
             out.dump(2) + "\n");
  log << (all_pass ? "all reports pass\n" : "some reports FAILED\n");
  return all_pass ? 0 : 1;
}

}  // namespace zomd::bench
