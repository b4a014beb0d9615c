// gridnav command line: plan tours, simulate missions, batch seeds, and
// render traces. Exit codes: 0 success, 2 parse error, 3 validation
// error, 4 disconnected key point, 5 tick budget exhausted, 1 anything
// else (including bad usage).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "gridnav/gridnav.hpp"

namespace fs = std::filesystem;
using namespace gridnav;

namespace {

constexpr int kExitOther = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitDisconnected = 4;
constexpr int kExitBudget = 5;

// --out flag beats GRIDNAV_OUT beats the working directory.
fs::path resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("GRIDNAV_OUT"); env && *env) return env;
  return ".";
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

int failure_exit(FailureReason f) {
  switch (f) {
    case FailureReason::None: return 0;
    case FailureReason::Disconnected: return kExitDisconnected;
    default: return kExitBudget;
  }
}

std::string join_order(const std::vector<int>& order) {
  std::ostringstream out;
  for (size_t i = 0; i < order.size(); ++i) {
    if (i) out << ";";
    out << order[i];
  }
  return out.str();
}

int cmd_plan(const std::string& scenario_path, uint64_t seed, bool seed_given,
             const std::string& out_flag) {
  Scenario sc = load_scenario(scenario_path);
  if (seed_given) sc.sa.rng_seed = seed;
  std::cout << describe_scenario(sc);

  const DistanceMatrix m = pairwise_distances(sc.map, sc.keypoints);
  std::vector<SaSample> history;
  const Tour tour = sa_optimize(m, sc.sa, &history);
  const int identity_cost = identity_tour_length(m);
  const Tour nn = nearest_neighbor_tour(m);

  std::cout << "tour order: " << join_order(tour.order) << "\n";
  std::cout << "legs:\n";
  auto print_leg = [&](int a, int b) {
    std::cout << "  " << to_string(m.cells[static_cast<size_t>(a)]) << " -> "
              << to_string(m.cells[static_cast<size_t>(b)]) << "  cost "
              << m.dist(a, b) << "\n";
  };
  for (size_t k = 1; k < tour.order.size(); ++k)
    print_leg(tour.order[k - 1], tour.order[k]);
  if (tour.order.size() > 1) print_leg(tour.order.back(), tour.order.front());
  std::cout << "total cost (sa): " << tour.total_cost << "\n";
  std::cout << "total cost (identity order): " << identity_cost << "\n";
  std::cout << "total cost (nearest neighbor): " << nn.total_cost << "\n";
  std::cout << "sa samples: " << history.size() << " temperature levels\n";

  std::ostringstream plan;
  plan << "# gridnav plan v1\n";
  plan << "scenario=" << fs::path(scenario_path).filename().string() << "\n";
  plan << "sa_seed=" << sc.sa.rng_seed << "\n";
  plan << "order=" << join_order(tour.order) << "\n";
  plan << "total_cost=" << tour.total_cost << "\n";
  plan << "identity_cost=" << identity_cost << "\n";
  plan << "nearest_neighbor_cost=" << nn.total_cost << "\n";
  for (size_t k = 1; k < tour.order.size(); ++k) {
    const int a = tour.order[k - 1];
    const int b = tour.order[k];
    plan << "leg=" << a << ";" << b << ";" << m.dist(a, b) << "\n";
  }
  if (tour.order.size() > 1) {
    const int a = tour.order.back();
    const int b = tour.order.front();
    plan << "leg=" << a << ";" << b << ";" << m.dist(a, b) << "\n";
  }
  for (const auto& s : history)
    plan << "sa=" << s.iteration << ";" << s.temperature << ";" << s.current_cost
         << ";" << s.best_cost << "\n";

  const fs::path out =
      resolve_out_dir(out_flag) / (fs::path(scenario_path).stem().string() + "_plan.txt");
  write_file(out, plan.str());
  std::cout << "plan written to " << out.string() << "\n";
  return 0;
}

int cmd_simulate(const std::string& scenario_path, uint64_t seed,
                 const std::string& out_flag, const std::string& render_style) {
  Scenario sc = load_scenario(scenario_path);
  std::cout << describe_scenario(sc);

  auto [result, trace] = run_mission(sc, seed);

  const std::string stem =
      fs::path(scenario_path).stem().string() + "_seed" + std::to_string(seed);
  const fs::path out_dir = resolve_out_dir(out_flag);
  const fs::path trace_path = out_dir / (stem + ".trace");
  write_file(trace_path, serialize_trace(trace));

  std::cout << "seed: " << seed << "\n";
  std::cout << "success: " << (result.success ? "yes" : "no") << "\n";
  std::cout << "covered order: " << join_order(result.covered_order) << "\n";
  std::cout << "planned cost: " << result.planned_cost << "\n";
  std::cout << "executed cost: " << result.executed_cost << "\n";
  std::cout << "ticks: " << result.ticks << "\n";
  std::cout << "replans: " << result.replans << "\n";
  if (result.failure != FailureReason::None)
    std::cout << "failure: " << failure_name(result.failure) << "\n";
  std::cout << "trace written to " << trace_path.string() << "\n";

  if (!render_style.empty()) {
    const std::string doc = render_trace(trace, sc, render_style);
    const fs::path render_path =
        out_dir / (stem + (render_style == "svg" ? ".svg" : ".txt"));
    write_file(render_path, doc);
    std::cout << "rendering written to " << render_path.string() << "\n";
    if (render_style == "ascii") std::cout << doc;
  }
  return failure_exit(result.failure);
}

int cmd_batch(const std::string& scenario_path, const std::string& seeds_arg) {
  const auto dots = seeds_arg.find("..");
  if (dots == std::string::npos)
    throw ValidationError("--seeds expects a range like 1..50, got '" + seeds_arg + "'");
  uint64_t lo = 0, hi = 0;
  try {
    lo = std::stoull(seeds_arg.substr(0, dots));
    hi = std::stoull(seeds_arg.substr(dots + 2));
  } catch (const std::exception&) {
    throw ValidationError("--seeds expects integers like 1..50, got '" + seeds_arg + "'");
  }
  if (hi < lo) throw ValidationError("--seeds range is empty: " + seeds_arg);

  const Scenario sc = load_scenario(scenario_path);
  std::cout << describe_scenario(sc);

  const size_t n = static_cast<size_t>(hi - lo + 1);
  const size_t workers =
      std::min<size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
  std::vector<MissionResult> results(n);

  // Fan out in fixed-size chunks; missions share nothing mutable.
  std::vector<std::future<void>> futures;
  futures.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&, w] {
      for (size_t i = w; i < n; i += workers)
        results[i] = run_mission(sc, lo + i).first;
    }));
  }
  for (auto& f : futures) f.get();

  size_t successes = 0;
  long long total_executed = 0;
  long max_ticks = 0;
  int total_replans = 0;
  for (size_t i = 0; i < n; ++i) {
    const auto& r = results[i];
    std::cout << "seed " << lo + i << ": " << (r.success ? "success" : "failure")
              << " planned " << r.planned_cost << " executed " << r.executed_cost
              << " ticks " << r.ticks << " replans " << r.replans;
    if (r.failure != FailureReason::None) std::cout << " (" << failure_name(r.failure) << ")";
    std::cout << "\n";
    successes += r.success ? 1 : 0;
    total_executed += r.executed_cost;
    max_ticks = std::max(max_ticks, r.ticks);
    total_replans += r.replans;
  }
  std::cout << "batch: " << successes << "/" << n << " succeeded, mean executed cost "
            << (n ? static_cast<double>(total_executed) / static_cast<double>(n) : 0)
            << ", max ticks " << max_ticks << ", total replans " << total_replans
            << "\n";
  return successes == n ? 0 : kExitOther;
}

int cmd_render(const std::string& trace_path, const std::string& scenario_path,
               const std::string& style) {
  const Scenario sc = load_scenario(scenario_path);
  std::ifstream in(trace_path, std::ios::binary);
  if (!in) throw ParseError("cannot open trace file '" + trace_path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const MissionTrace trace = parse_trace(buf.str());
  std::cout << render_trace(trace, sc, style);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gridnav: key point tour planning and mission simulation"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string trace_path;
  std::string out_flag;
  std::string render_style;
  std::string seeds_arg;
  uint64_t seed = 1;

  auto* plan = app.add_subcommand("plan", "plan a tour and report SA convergence");
  plan->add_option("scenario", scenario_path, "scenario file")->required();
  auto* plan_seed = plan->add_option("--seed", seed, "override the SA seed");
  plan->add_option("--out", out_flag, "output directory");

  auto* sim = app.add_subcommand("simulate", "run one mission and write its trace");
  sim->add_option("scenario", scenario_path, "scenario file")->required();
  sim->add_option("--seed", seed, "mission noise seed (default 1)");
  sim->add_option("--out", out_flag, "output directory");
  sim->add_option("--render", render_style, "also write a rendering")
      ->check(CLI::IsMember({"ascii", "svg"}));

  auto* batch = app.add_subcommand("batch", "run a seed range and aggregate stats");
  batch->add_option("scenario", scenario_path, "scenario file")->required();
  batch->add_option("--seeds", seeds_arg, "inclusive seed range A..B")->required();

  auto* render = app.add_subcommand("render", "render an existing trace");
  render->add_option("trace", trace_path, "trace file")->required();
  render->add_option("scenario", scenario_path, "scenario file")->required();
  render->add_option("--style", render_style, "ascii (default) or svg")
      ->check(CLI::IsMember({"ascii", "svg"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitOther;
  }

  try {
    if (app.got_subcommand(plan))
      return cmd_plan(scenario_path, seed, plan_seed->count() > 0, out_flag);
    if (app.got_subcommand(sim)) return cmd_simulate(scenario_path, seed, out_flag, render_style);
    if (app.got_subcommand(batch)) return cmd_batch(scenario_path, seeds_arg);
    if (app.got_subcommand(render))
      return cmd_render(trace_path, scenario_path,
                        render_style.empty() ? "ascii" : render_style);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DisconnectedKeyPointError& e) {
    std::cerr << "disconnected key point: " << e.what() << "\n";
    return kExitDisconnected;
  } catch (const TickBudgetError& e) {
    std::cerr << "tick budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return kExitOther;
}
