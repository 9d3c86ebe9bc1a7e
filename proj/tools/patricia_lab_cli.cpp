// patricia-lab: command-line front end over the patricia_lab C API.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "patricia_lab/patricia_lab.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RuntimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parse and argument problems are the caller's fault; everything else is a runtime failure.
void check(pl_status status, const std::string& context) {
  if (status == PL_OK) return;
  const std::string msg = context + ": " + pl_last_error();
  if (status == PL_ERR_PARSE || status == PL_ERR_INVALID_ARGUMENT) throw UsageError(msg);
  throw RuntimeError(msg);
}

struct DistHandle {
  pl_dist* ptr = nullptr;
  explicit DistHandle(const std::string& json) { check(pl_dist_from_json(json.c_str(), &ptr), "--dist"); }
  ~DistHandle() { pl_dist_free(ptr); }
  DistHandle(const DistHandle&) = delete;
  DistHandle& operator=(const DistHandle&) = delete;
};

void print_value(double v) { std::printf("%.10g\n", v); }

struct SimulateArgs {
  std::string config_path;
  std::string dist;
  std::vector<std::uint64_t> n_grid;
  std::optional<std::uint32_t> trials;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::uint64_t> max_depth;
  std::optional<unsigned> threads;
  bool timing = false;
  bool summary_only = false;
};

int run_simulate(const SimulateArgs& args) {
  nlohmann::json config = nlohmann::json::object();
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in) throw RuntimeError("cannot open config " + args.config_path);
    try {
      config = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("config " + args.config_path + ": " + e.what());
    }
    if (!config.is_object()) throw UsageError("config must be a JSON object");
  }
  // Inline flags win over the config file.
  try {
    if (!args.dist.empty()) config["dist"] = nlohmann::json::parse(args.dist);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("--dist: ") + e.what());
  }
  if (!args.n_grid.empty()) config["n"] = args.n_grid;
  if (args.trials) config["trials"] = *args.trials;
  if (args.seed) config["seed"] = *args.seed;
  if (!args.out.empty()) config["out"] = args.out;
  if (args.max_depth) config["max_depth"] = *args.max_depth;
  if (args.threads) config["threads"] = *args.threads;
  if (args.timing) config["timing"] = true;
  if (args.summary_only) config["emit_per_trial"] = false;

  for (const char* key : {"dist", "n", "seed", "out"}) {
    if (!config.contains(key)) throw UsageError(std::string("simulate needs ") + key + " (flag or config)");
  }
  std::vector<std::uint64_t> grid;
  std::uint32_t trials = 1;
  std::uint64_t seed = 0;
  std::string out_dir;
  try {
    grid = config.at("n").get<std::vector<std::uint64_t>>();
    trials = config.value("trials", 1U);
    seed = config.at("seed").get<std::uint64_t>();
    out_dir = config.at("out").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }

  DistHandle dist(config.at("dist").dump());
  pl_experiment* exp = nullptr;
  check(pl_experiment_create(dist.ptr, grid.data(), grid.size(), trials, seed, &exp), "simulate");
  std::unique_ptr<pl_experiment, decltype(&pl_experiment_free)> exp_guard(exp, pl_experiment_free);
  if (config.contains("threads")) check(pl_experiment_set_threads(exp, config.at("threads").get<unsigned>()), "threads");
  if (config.contains("max_depth")) {
    check(pl_experiment_set_max_depth(exp, config.at("max_depth").get<std::uint64_t>()), "max_depth");
  }
  check(pl_experiment_set_timing(exp, config.value("timing", false) ? 1 : 0), "timing");

  pl_results* results = nullptr;
  check(pl_experiment_run(exp, &results), "simulate");
  std::unique_ptr<pl_results, decltype(&pl_results_free)> results_guard(results, pl_results_free);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw RuntimeError("cannot create " + out_dir + ": " + ec.message());
  const auto dir = std::filesystem::path(out_dir);
  if (config.value("emit_per_trial", true)) {
    const std::string trials_path = (dir / "trials.csv").string();
    check(pl_results_write_trials_csv(results, trials_path.c_str()), "write");
    std::cout << "wrote " << trials_path << '\n';
  }
  const std::string summary_path = (dir / "summary.csv").string();
  check(pl_results_write_summary_csv(results, summary_path.c_str()), "write");
  std::cout << "wrote " << summary_path << '\n';
  return kExitOk;
}

void print_criterion(int id, const char* name, int passed, const char* detail, double seconds, void*) {
  std::printf("[%s] %2d %s (%.3gs): %s\n", passed ? "PASS" : "FAIL", id, name, seconds, detail);
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PATRICIA tree height laboratory: random string laws, bounds and Monte Carlo checks"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a seeded Monte Carlo grid and write trials.csv / summary.csv");
  simulate->add_option("--config", sim.config_path, "JSON config file (inline flags override it)");
  simulate->add_option("--dist", sim.dist, R"(Distribution JSON, e.g. '{"law":"mu_n","N":1000}')");
  simulate->add_option("--n", sim.n_grid, "Comma-separated ascending n grid")->delimiter(',');
  simulate->add_option("--trials", sim.trials, "Trials per n");
  simulate->add_option("--seed", sim.seed, "Seed (required; no wall-clock seeding)");
  simulate->add_option("--out", sim.out, "Output directory");
  simulate->add_option("--max-depth", sim.max_depth, "Tail bits a string may materialize");
  simulate->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
  simulate->add_flag("--timing", sim.timing, "Record wall-clock elapsed_ms (makes output nondeterministic)");
  simulate->add_flag("--summary-only", sim.summary_only, "Skip trials.csv");

  auto* bounds = app.add_subcommand("bounds", "Evaluate closed-form bounds");
  bounds->require_subcommand(1);
  std::uint64_t b_n = 0, b_k = 0, b_support = 0;
  double b_eps = 0, b_alpha = 0, b_t = 0;
  auto* chernoff = bounds->add_subcommand("chernoff", "2^k exp(-eps n / 2)");
  chernoff->add_option("--n", b_n)->required();
  chernoff->add_option("--k", b_k)->required();
  chernoff->add_option("--eps", b_eps)->required();
  auto* okamoto = bounds->add_subcommand("okamoto", "exp(-n / (2 alpha_n))");
  okamoto->add_option("--n", b_n)->required();
  okamoto->add_option("--alpha", b_alpha, "alpha_n")->required();
  auto* devroye = bounds->add_subcommand("devroye", "exp(-t^2 / (2n))");
  devroye->add_option("--n", b_n)->required();
  devroye->add_option("--t", b_t)->required();
  auto* distinct = bounds->add_subcommand("distinct", "n - n^2 / (2 N^2)");
  distinct->add_option("--n", b_n)->required();
  distinct->add_option("--N", b_support, "Support root N of mu_N")->required();
  auto* floor = bounds->add_subcommand("mixture-floor", "n / alpha_n");
  floor->add_option("--n", b_n)->required();
  floor->add_option("--alpha", b_alpha, "alpha_n")->required();

  auto* prefix = app.add_subcommand("prefix-prob", "Exact (and optionally Monte Carlo) prefix probability");
  std::string p_dist, p_bits;
  std::optional<std::uint64_t> p_samples, p_seed;
  prefix->add_option("--dist", p_dist, "Distribution JSON")->required();
  prefix->add_option("--prefix", p_bits, "Prefix as 0/1 characters")->required();
  prefix->add_option("--samples", p_samples, "Also estimate by sampling this many strings");
  prefix->add_option("--seed", p_seed, "Seed for --samples");

  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria, one PASS/FAIL line each");
  unsigned v_threads = 0;
  std::vector<int> v_only;
  verify->add_option("--threads", v_threads, "Worker threads (0 = all cores)");
  verify->add_option("--criterion", v_only, "Run only these criteria (repeatable)");

  auto* plot = app.add_subcommand("plot", "Render summary CSV columns as an SVG line chart");
  std::string g_csv, g_x = "n", g_y, g_out;
  plot->add_option("--csv", g_csv, "Summary CSV written by simulate")->required();
  plot->add_option("--x", g_x, "x column")->capture_default_str();
  plot->add_option("--y", g_y, "y column")->required();
  plot->add_option("--out", g_out, "Output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*simulate) return run_simulate(sim);

    if (*bounds) {
      double value = 0;
      if (*chernoff) check(pl_bound_chernoff(b_n, b_k, b_eps, &value), "chernoff");
      if (*devroye) check(pl_bound_devroye(b_n, b_t, &value), "devroye");
      if (*floor) check(pl_bound_mixture_floor(b_n, b_alpha, &value), "mixture-floor");
      if (*okamoto) {
        int in_regime = 1;
        check(pl_bound_okamoto(b_n, b_alpha, &value, &in_regime), "okamoto");
        if (!in_regime) std::cerr << "warning: alpha_n < 8 is outside the bound's proven regime\n";
      }
      if (*distinct) {
        int in_regime = 1;
        check(pl_bound_distinct(b_n, b_support, &value, &in_regime), "distinct");
        if (!in_regime) std::cerr << "warning: n > N, the n-1 floor does not apply\n";
      }
      print_value(value);
      return kExitOk;
    }

    if (*prefix) {
      DistHandle dist(p_dist);
      double exact = 0;
      check(pl_prefix_probability(dist.ptr, p_bits.c_str(), &exact), "prefix-prob");
      print_value(exact);
      if (p_samples) {
        if (!p_seed) throw UsageError("--samples needs --seed");
        double freq = 0;
        check(pl_prefix_frequency(dist.ptr, p_bits.c_str(), *p_samples, *p_seed, &freq), "prefix-prob");
        std::printf("monte_carlo %.10g (samples=%llu)\n", freq, static_cast<unsigned long long>(*p_samples));
      }
      return kExitOk;
    }

    if (*verify) {
      int all_passed = 0;
      check(pl_verify_run(v_only.data(), v_only.size(), v_threads, print_criterion, nullptr, &all_passed), "verify");
      std::printf("%s\n", all_passed ? "all criteria passed" : "some criteria FAILED");
      return all_passed ? kExitOk : kExitFailure;
    }

    if (*plot) {
      check(pl_plot_svg(g_csv.c_str(), g_x.c_str(), g_y.c_str(), g_out.c_str()), "plot");
      std::cout << "wrote " << g_out << '\n';
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const RuntimeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
