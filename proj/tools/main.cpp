// blockqn experiment runner: configures single runs and multi-seed sweeps of
// the sampled-curvature trust-region optimizer, emitting one CSV convergence
// trace per run plus a summary.json with per-variant aggregates.

#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "blockqn.h"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct Variant {
  std::string update = "sr1";
  std::string strategy = "s4";
  int pflag = 0;
  int w = 4;

  std::string name() const {
    return update + "_" + strategy + "_pflag" + std::to_string(pflag) + "_w" +
           std::to_string(w);
  }
};

struct Plan {
  std::string problem = "rosenbrock";
  std::int64_t n = 100;
  double a = 100.0;
  double eig_lo = 1.0;   // quadratic spectrum bounds
  double eig_hi = 100.0;
  std::uint64_t problem_seed = 0;
  double epsilon = 1e-5;
  double delta = 1e-12;
  double delta_max = 100.0;
  std::int64_t max_iterations = 100000;
  std::int64_t max_ghs = 100000;
  std::vector<Variant> variants;
  std::vector<std::uint64_t> seeds = {0};
  std::string out_dir = "out";
  int jobs = 0;               // 0: one per hardware thread
  std::uint64_t shuffle = 0;  // nonzero: permute execution order (results unchanged)
};

struct RunOutcome {
  Variant variant;
  std::uint64_t seed = 0;
  std::string status = "Error";
  std::string classification = "none";
  bool discarded = false;
  double f_final = 0.0;
  double grad_norm_final = 0.0;
  std::int64_t n_ghs = 0;
  std::int64_t n_f = 0;
  std::int64_t n_iterations = 0;
  double wall_ms = 0.0;
  std::string error;
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int parse_update(const std::string& s) {
  if (s == "sr1") return BQN_UPDATE_SR1;
  if (s == "psb") return BQN_UPDATE_PSB;
  throw CLI::ValidationError("--update", "must be sr1 or psb");
}

int parse_strategy(const std::string& s) {
  if (s.size() == 2 && s[0] == 's' && s[1] >= '1' && s[1] <= '6')
    return BQN_STRATEGY_S1 + (s[1] - '1');
  throw CLI::ValidationError("--strategy", "must be one of s1..s6");
}

// Accepts "3", "0..19", and comma-separated mixtures of both.
std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string token = text.substr(pos, comma - pos);
    if (token.empty()) throw CLI::ValidationError("--seeds", "empty seed token");
    const std::size_t dots = token.find("..");
    try {
      if (dots == std::string::npos) {
        seeds.push_back(std::stoull(token));
      } else {
        const std::uint64_t lo = std::stoull(token.substr(0, dots));
        const std::uint64_t hi = std::stoull(token.substr(dots + 2));
        if (hi < lo) throw CLI::ValidationError("--seeds", "descending range");
        for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
      }
    } catch (const std::invalid_argument&) {
      throw CLI::ValidationError("--seeds", "cannot parse '" + token + "'");
    } catch (const std::out_of_range&) {
      throw CLI::ValidationError("--seeds", "seed out of range in '" + token + "'");
    }
    pos = comma + 1;
  }
  if (seeds.empty()) throw CLI::ValidationError("--seeds", "need at least one seed");
  return seeds;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    out.push_back(text.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

void validate_plan(const Plan& plan) {
  if (plan.problem != "rosenbrock" && plan.problem != "quadratic")
    throw CLI::ValidationError("--problem", "must be rosenbrock or quadratic");
  if (plan.n < 2) throw CLI::ValidationError("--n", "must be >= 2");
  if (!(plan.a > 0.0)) throw CLI::ValidationError("--a", "must be > 0");
  if (plan.variants.empty()) throw CLI::ValidationError("plan", "no variants");
  for (const Variant& v : plan.variants) {
    parse_update(v.update);
    parse_strategy(v.strategy);
    if (v.pflag != 0 && v.pflag != 1) throw CLI::ValidationError("--pflag", "must be 0 or 1");
    if (v.w < 1) throw CLI::ValidationError("--w", "must be >= 1");
    if (2 * static_cast<std::int64_t>(v.w) - 1 > plan.n)
      throw CLI::ValidationError("--w", "2w-1 = " + std::to_string(2 * v.w - 1) +
                                            " exceeds n = " + std::to_string(plan.n));
  }
}

std::string status_string(int status) {
  switch (status) {
    case BQN_STATUS_CONVERGED: return "Converged";
    case BQN_STATUS_MAX_ITERATIONS: return "MaxIterations";
    case BQN_STATUS_MAX_GHS: return "MaxGhs";
    case BQN_STATUS_TRUST_REGION_COLLAPSE: return "TrustRegionCollapse";
    case BQN_STATUS_NUMERICAL_FAILURE: return "NumericalFailure";
  }
  return "Unknown";
}

std::string classification_string(int cls) {
  switch (cls) {
    case BQN_CLASS_GLOBAL_MIN: return "GlobalMin";
    case BQN_CLASS_SECONDARY_MIN: return "SecondaryMin";
    case BQN_CLASS_OTHER: return "Other";
  }
  return "none";
}

bqn_problem* create_problem(const Plan& plan) {
  bqn_problem* p = nullptr;
  int rc;
  if (plan.problem == "rosenbrock") {
    rc = bqn_problem_create_rosenbrock(&p, plan.n, plan.a);
  } else {
    rc = bqn_problem_create_quadratic_spd(&p, plan.n, plan.eig_lo, plan.eig_hi,
                                          plan.problem_seed);
  }
  if (rc != BQN_OK) throw std::runtime_error(bqn_last_error());
  return p;
}

void write_trace_csv(const fs::path& path, const bqn_result* result) {
  std::ofstream out(path, std::ios::binary);  // LF newlines on every platform
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "k,n_ghs,n_f,f,grad_norm,delta,rho,accepted\n";
  const std::int64_t rows = bqn_result_trace_size(result);
  for (std::int64_t i = 0; i < rows; ++i) {
    bqn_trace_record rec;
    bqn_result_trace_get(result, i, &rec);
    out << rec.k << ',' << rec.n_ghs << ',' << rec.n_f << ',' << format_double(rec.f)
        << ',' << format_double(rec.grad_norm) << ',' << format_double(rec.delta) << ','
        << format_double(rec.rho) << ',' << rec.accepted << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

RunOutcome execute_one(const Plan& plan, const bqn_problem* problem, const Variant& variant,
                       std::uint64_t seed) {
  RunOutcome outcome;
  outcome.variant = variant;
  outcome.seed = seed;

  bqn_options opts;
  bqn_options_defaults(&opts);
  opts.w = variant.w;
  opts.update = parse_update(variant.update);
  opts.strategy = parse_strategy(variant.strategy);
  opts.pflag = variant.pflag;
  opts.epsilon = plan.epsilon;
  opts.delta = plan.delta;
  opts.delta_max = plan.delta_max;
  opts.max_iterations = plan.max_iterations;
  opts.max_ghs = plan.max_ghs;
  opts.rng_seed = bqn_mix_seed(seed, 0);

  std::vector<double> x0(static_cast<std::size_t>(plan.n));
  bqn_draw_uniform(bqn_mix_seed(seed, 1), plan.n, -1.0, 1.0, x0.data());

  const auto start = std::chrono::steady_clock::now();
  bqn_result* result = nullptr;
  const int rc = bqn_minimize(problem, x0.data(), &opts, &result);
  outcome.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  if (rc != BQN_OK) {
    outcome.error = bqn_last_error();
    return outcome;
  }

  outcome.status = status_string(bqn_result_status(result));
  outcome.f_final = bqn_result_f(result);
  outcome.grad_norm_final = bqn_result_grad_norm(result);
  outcome.n_ghs = bqn_result_n_ghs(result);
  outcome.n_f = bqn_result_n_f(result);
  outcome.n_iterations = bqn_result_n_iterations(result);

  if (plan.problem == "rosenbrock") {
    std::vector<double> x(static_cast<std::size_t>(plan.n));
    bqn_result_x(result, x.data(), plan.n);
    outcome.classification = classification_string(bqn_classify_rosenbrock(x.data(), plan.n));
    // Terminations in the secondary basin are marked and excluded from
    // aggregates rather than silently re-run.
    outcome.discarded = outcome.classification == "SecondaryMin";
  }

  const fs::path dir = fs::path(plan.out_dir) / variant.name();
  write_trace_csv(dir / (std::to_string(seed) + ".csv"), result);
  bqn_result_destroy(result);
  return outcome;
}

json aggregate_variant(const std::vector<const RunOutcome*>& runs) {
  json agg;
  std::int64_t discarded = 0;
  std::vector<std::int64_t> to_convergence;  // -1 encodes "did not converge"
  std::int64_t converged = 0;
  for (const RunOutcome* r : runs) {
    if (r->discarded) {
      ++discarded;
      continue;
    }
    if (r->status == "Converged") {
      to_convergence.push_back(r->n_ghs);
      ++converged;
    } else {
      to_convergence.push_back(-1);
    }
  }
  agg["n_runs"] = runs.size();
  agg["n_discarded"] = discarded;
  agg["n_converged"] = converged;
  agg["n_unconverged"] = static_cast<std::int64_t>(to_convergence.size()) - converged;

  // Lower median with unconverged runs sorted past every converged one.
  if (to_convergence.empty()) {
    agg["median_n_ghs"] = nullptr;
  } else {
    std::sort(to_convergence.begin(), to_convergence.end(),
              [](std::int64_t x, std::int64_t y) {
                const auto key = [](std::int64_t v) {
                  return v < 0 ? std::numeric_limits<std::int64_t>::max() : v;
                };
                return key(x) < key(y);
              });
    const std::int64_t median = to_convergence[(to_convergence.size() - 1) / 2];
    if (median < 0) {
      agg["median_n_ghs"] = nullptr;
    } else {
      agg["median_n_ghs"] = median;
    }
  }
  if (converged == 0) {
    agg["mean_n_ghs"] = nullptr;
  } else {
    double sum = 0.0;
    for (std::int64_t v : to_convergence)
      if (v >= 0) sum += static_cast<double>(v);
    agg["mean_n_ghs"] = sum / static_cast<double>(converged);
  }
  return agg;
}

json summarize(const Plan& plan, const std::vector<RunOutcome>& outcomes) {
  json summary;
  json problem;
  problem["kind"] = plan.problem;
  problem["n"] = plan.n;
  if (plan.problem == "rosenbrock") {
    problem["a"] = plan.a;
  } else {
    problem["eig_lo"] = plan.eig_lo;
    problem["eig_hi"] = plan.eig_hi;
    problem["problem_seed"] = plan.problem_seed;
  }
  summary["problem"] = problem;
  summary["epsilon"] = plan.epsilon;

  json runs = json::array();
  for (const RunOutcome& r : outcomes) {
    json row;
    row["variant"] = r.variant.name();
    row["seed"] = r.seed;
    row["status"] = r.status;
    row["classification"] = r.classification;
    row["discarded"] = r.discarded;
    row["f_final"] = r.f_final;
    row["grad_norm_final"] = r.grad_norm_final;
    row["n_ghs"] = r.n_ghs;
    row["n_f"] = r.n_f;
    row["n_iterations"] = r.n_iterations;
    row["wall_ms"] = r.wall_ms;
    if (!r.error.empty()) row["error"] = r.error;
    runs.push_back(row);
  }
  summary["runs"] = runs;

  json variants;
  for (const Variant& v : plan.variants) {
    std::vector<const RunOutcome*> group;
    for (const RunOutcome& r : outcomes)
      if (r.variant.name() == v.name()) group.push_back(&r);
    variants[v.name()] = aggregate_variant(group);
  }
  summary["variants"] = variants;
  return summary;
}

int execute_plan(const Plan& plan) {
  validate_plan(plan);

  struct Job {
    std::size_t variant_index;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t vi = 0; vi < plan.variants.size(); ++vi)
    for (std::uint64_t seed : plan.seeds) jobs.push_back({vi, seed});
  if (plan.shuffle != 0) {
    std::mt19937_64 rng(plan.shuffle);
    std::shuffle(jobs.begin(), jobs.end(), rng);
  }

  for (const Variant& v : plan.variants)
    fs::create_directories(fs::path(plan.out_dir) / v.name());

  bqn_problem* problem = create_problem(plan);
  std::vector<RunOutcome> outcomes(jobs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> io_failed{false};
  std::string io_error;
  std::mutex io_error_mutex;

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers =
      std::min(jobs.size(), static_cast<std::size_t>(plan.jobs > 0 ? plan.jobs : hw));
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
      const Job& job = jobs[i];
      try {
        outcomes[i] = execute_one(plan, problem, plan.variants[job.variant_index], job.seed);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(io_error_mutex);
        io_failed = true;
        io_error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  bqn_problem_destroy(problem);

  if (io_failed) {
    std::cerr << "error: " << io_error << "\n";
    return kExitRuntime;
  }

  // Summaries are assembled in plan order so execution order cannot leak in.
  std::vector<RunOutcome> ordered;
  ordered.reserve(outcomes.size());
  for (std::size_t vi = 0; vi < plan.variants.size(); ++vi)
    for (std::uint64_t seed : plan.seeds)
      for (std::size_t i = 0; i < jobs.size(); ++i)
        if (jobs[i].variant_index == vi && jobs[i].seed == seed)
          ordered.push_back(outcomes[i]);

  const json summary = summarize(plan, ordered);
  std::ofstream out(fs::path(plan.out_dir) / "summary.json", std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write summary.json\n";
    return kExitRuntime;
  }
  out << summary.dump(2) << "\n";
  if (!out) {
    std::cerr << "error: failed writing summary.json\n";
    return kExitRuntime;
  }

  std::int64_t failed = 0;
  for (const RunOutcome& r : ordered)
    if (!r.error.empty()) ++failed;
  std::cout << "completed " << ordered.size() << " run(s)";
  if (failed > 0) std::cout << " (" << failed << " failed; see summary.json)";
  std::cout << ", summary at " << (fs::path(plan.out_dir) / "summary.json").string() << "\n";
  return 0;
}

int run_compare(const std::string& summary_path, const std::string& variant_a,
                const std::string& variant_b) {
  std::ifstream in(summary_path);
  if (!in) {
    std::cerr << "error: cannot open " << summary_path << "\n";
    return kExitRuntime;
  }
  json summary;
  try {
    in >> summary;
  } catch (const json::exception& e) {
    std::cerr << "error: cannot parse " << summary_path << ": " << e.what() << "\n";
    return kExitRuntime;
  }
  if (!summary.contains("variants") || !summary["variants"].contains(variant_a) ||
      !summary["variants"].contains(variant_b)) {
    std::cerr << "error: variant not present in summary\n";
    return kExitUsage;
  }

  const auto describe = [&](const std::string& name) {
    const json& agg = summary["variants"][name];
    const std::int64_t usable =
        agg["n_runs"].get<std::int64_t>() - agg["n_discarded"].get<std::int64_t>();
    std::cout << name << ": runs=" << agg["n_runs"] << " discarded=" << agg["n_discarded"]
              << " converged=" << agg["n_converged"]
              << " median_n_ghs=" << agg["median_n_ghs"].dump()
              << " mean_n_ghs=" << agg["mean_n_ghs"].dump() << "\n";
    return usable;
  };
  const std::int64_t usable_a = describe(variant_a);
  const std::int64_t usable_b = describe(variant_b);
  if (usable_a < 1 || usable_b < 1) {
    std::cout << "insufficient data: a variant has no non-discarded runs\n";
    return 0;
  }

  // Null medians mean "did not converge within budget"; order them last.
  const auto median_key = [&](const std::string& name) {
    const json& m = summary["variants"][name]["median_n_ghs"];
    return m.is_null() ? std::numeric_limits<double>::infinity() : m.get<double>();
  };
  const double ma = median_key(variant_a);
  const double mb = median_key(variant_b);
  const char* rel = ma < mb ? "<" : (ma > mb ? ">" : "==");
  std::cout << "median n_ghs to convergence: " << variant_a << " " << rel << " " << variant_b
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Plan plan;
  std::string seeds_text;
  std::string updates_text, strategies_text, pflags_text, ws_text;
  Variant single;
  std::string config_path;
  std::string summary_path = "out/summary.json";
  std::string variant_a, variant_b;

  // Flags override config-file values: the file is applied to the plan first,
  // then CLI11 re-assigns whatever was passed explicitly.
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
  }
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot open config file " << config_path << "\n";
      return kExitUsage;
    }
    try {
      json cfg;
      in >> cfg;
      if (cfg.contains("problem")) plan.problem = cfg["problem"].get<std::string>();
      if (cfg.contains("n")) plan.n = cfg["n"].get<std::int64_t>();
      if (cfg.contains("a")) plan.a = cfg["a"].get<double>();
      if (cfg.contains("eig_lo")) plan.eig_lo = cfg["eig_lo"].get<double>();
      if (cfg.contains("eig_hi")) plan.eig_hi = cfg["eig_hi"].get<double>();
      if (cfg.contains("problem_seed")) plan.problem_seed = cfg["problem_seed"].get<std::uint64_t>();
      if (cfg.contains("epsilon")) plan.epsilon = cfg["epsilon"].get<double>();
      if (cfg.contains("delta")) plan.delta = cfg["delta"].get<double>();
      if (cfg.contains("delta_max")) plan.delta_max = cfg["delta_max"].get<double>();
      if (cfg.contains("max_iterations")) plan.max_iterations = cfg["max_iterations"].get<std::int64_t>();
      if (cfg.contains("max_ghs")) plan.max_ghs = cfg["max_ghs"].get<std::int64_t>();
      if (cfg.contains("w")) single.w = cfg["w"].get<int>();
      if (cfg.contains("update")) single.update = cfg["update"].get<std::string>();
      if (cfg.contains("strategy")) single.strategy = cfg["strategy"].get<std::string>();
      if (cfg.contains("pflag")) single.pflag = cfg["pflag"].get<int>();
      if (cfg.contains("seeds")) seeds_text = cfg["seeds"].get<std::string>();
      if (cfg.contains("out")) plan.out_dir = cfg["out"].get<std::string>();
      if (cfg.contains("jobs")) plan.jobs = cfg["jobs"].get<int>();
    } catch (const json::exception& e) {
      std::cerr << "error: bad config file: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  if (const char* env_out = std::getenv("BLOCKQN_OUT")) plan.out_dir = env_out;

  CLI::App app{"Sampled-curvature trust-region quasi-Newton experiment runner"};
  app.require_subcommand(1);

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file (flags override it)");
    cmd->add_option("--problem", plan.problem, "rosenbrock or quadratic");
    cmd->add_option("--n", plan.n, "problem dimension");
    cmd->add_option("--a", plan.a, "Rosenbrock coupling coefficient");
    cmd->add_option("--eig-lo", plan.eig_lo, "quadratic: smallest eigenvalue");
    cmd->add_option("--eig-hi", plan.eig_hi, "quadratic: largest eigenvalue");
    cmd->add_option("--problem-seed", plan.problem_seed, "quadratic: eigenbasis seed");
    cmd->add_option("--epsilon", plan.epsilon, "gradient-norm tolerance");
    cmd->add_option("--delta", plan.delta, "pseudo-inverse tolerance");
    cmd->add_option("--delta-max", plan.delta_max, "trust-region radius cap");
    cmd->add_option("--max-iterations", plan.max_iterations, "iteration budget");
    cmd->add_option("--max-ghs", plan.max_ghs, "Hessian-sample budget");
    cmd->add_option("--seeds", seeds_text, "seed list, e.g. 0..19 or 0,3,7");
    cmd->add_option("--out", plan.out_dir, "output directory (env BLOCKQN_OUT overrides default)");
    cmd->add_option("--jobs", plan.jobs, "worker threads (default: hardware)");
    cmd->add_option("--shuffle", plan.shuffle, "permute run execution order with this seed");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "execute one variant across seeds");
  add_common(run_cmd);
  run_cmd->add_option("--update", single.update, "sr1 or psb");
  run_cmd->add_option("--strategy", single.strategy, "direction strategy s1..s6");
  run_cmd->add_option("--pflag", single.pflag, "preliminary secant update (0 or 1)");
  run_cmd->add_option("--w", single.w, "sample half-width");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "cross-product of variant axes across seeds");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--updates", updates_text, "comma list of updates (default sr1)");
  sweep_cmd->add_option("--strategies", strategies_text, "comma list of strategies (default s4)");
  sweep_cmd->add_option("--pflags", pflags_text, "comma list of pflag values (default 0)");
  sweep_cmd->add_option("--ws", ws_text, "comma list of sample half-widths (default 4)");

  CLI::App* compare_cmd = app.add_subcommand("compare", "compare two variants from a summary");
  compare_cmd->add_option("--summary", summary_path, "summary.json path");
  compare_cmd->add_option("--variant-a", variant_a, "first variant name")->required();
  compare_cmd->add_option("--variant-b", variant_b, "second variant name")->required();

  try {
    app.parse(argc, argv);
    if (!seeds_text.empty()) plan.seeds = parse_seed_list(seeds_text);

    if (run_cmd->parsed()) {
      plan.variants = {single};
      return execute_plan(plan);
    }
    if (sweep_cmd->parsed()) {
      const std::vector<std::string> updates =
          updates_text.empty() ? std::vector<std::string>{single.update} : split_list(updates_text);
      const std::vector<std::string> strategies =
          strategies_text.empty() ? std::vector<std::string>{single.strategy}
                                  : split_list(strategies_text);
      std::vector<int> pflags, ws;
      for (const std::string& s : pflags_text.empty() ? std::vector<std::string>{std::to_string(single.pflag)}
                                                      : split_list(pflags_text))
        pflags.push_back(std::stoi(s));
      for (const std::string& s :
           ws_text.empty() ? std::vector<std::string>{std::to_string(single.w)} : split_list(ws_text))
        ws.push_back(std::stoi(s));
      for (const std::string& u : updates)
        for (const std::string& s : strategies)
          for (int pf : pflags)
            for (int w : ws) plan.variants.push_back({u, s, pf, w});
      return execute_plan(plan);
    }
    return run_compare(summary_path, variant_a, variant_b);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
