// Command-line front end: detect communities on an edge list, evaluate a
// partition, generate planted benchmarks, sweep the cohesion parameter, or
// time detection across graph sizes.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "attractor/attractor.hpp"

namespace {

// Grids come as "a,b,c" or "start:stop:step" (stop inclusive within a hair).
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  auto parse_one = [](const std::string& tok) {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw CLI::ValidationError("--grid", "bad number '" + tok + "'");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::istringstream ss(text);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
      throw CLI::ValidationError("--grid", "range form is start:stop:step");
    double start = parse_one(a), stop = parse_one(b), step = parse_one(c);
    if (step <= 0) throw CLI::ValidationError("--grid", "step must be positive");
    for (double v = start; v <= stop + step * 1e-9; v += step) out.push_back(v);
  } else {
    std::istringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) out.push_back(parse_one(tok));
  }
  if (out.empty()) throw CLI::ValidationError("--grid", "no values");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community detection by distance dynamics on edges"};
  app.require_subcommand(1);

  attractor::DetectOptions detect;
  auto* cmd_d = app.add_subcommand("detect", "Find communities in an edge list");
  cmd_d->add_option("--input", detect.input, "edge list file")->required();
  cmd_d->add_option("--lambda", detect.lambda, "cohesion parameter")->capture_default_str();
  cmd_d->add_option("--max-steps", detect.max_steps, "sweep cap")->capture_default_str();
  cmd_d->add_flag("--weighted", detect.weighted, "read the third column as weights");
  cmd_d->add_option("--min-size", detect.min_size, "smallest non-anomalous community")
      ->capture_default_str();
  cmd_d->add_option("--output", detect.output, "partition file to write")->required();

  attractor::EvalOptions eval;
  std::string metrics_arg;
  auto* cmd_e = app.add_subcommand("eval", "Score a partition");
  cmd_e->add_option("--pred", eval.pred, "predicted partition file")->required();
  cmd_e->add_option("--truth", eval.truth, "ground-truth partition file");
  cmd_e->add_option("--input", eval.input, "graph file, enables modularity and cut");
  cmd_e->add_flag("--weighted", eval.weighted, "read the third column as weights");
  cmd_e->add_option("--metrics", metrics_arg,
                    "comma list from nmi,ari,purity,modularity,cut (default: all feasible)");

  attractor::GenerateOptions gen;
  auto* cmd_g = app.add_subcommand("generate", "Write a planted-partition benchmark");
  cmd_g->add_option("--nodes", gen.config.nodes, "node count")->required();
  cmd_g->add_option("--avg-degree", gen.config.avg_degree, "stubs per node")->required();
  cmd_g->add_option("--communities", gen.config.communities, "planted community count")
      ->required();
  cmd_g->add_option("--mu", gen.config.mu, "fraction of each node's edges leaving its community")
      ->capture_default_str();
  cmd_g->add_option("--seed", gen.config.seed, "generator seed")->capture_default_str();
  cmd_g->add_option("--output", gen.output, "edge list to write (truth lands beside it)")
      ->required();

  attractor::SweepOptions sweep;
  std::string sweep_grid;
  auto* cmd_s = app.add_subcommand("sweep-lambda", "Detect across a cohesion grid");
  cmd_s->add_option("--input", sweep.input, "edge list file")->required();
  cmd_s->add_option("--truth", sweep.truth, "ground-truth partition, adds an nmi column");
  cmd_s->add_option("--grid", sweep_grid, "cohesion values, 'a,b,c' or 'start:stop:step'")
      ->required();
  cmd_s->add_option("--max-steps", sweep.max_steps, "sweep cap")->capture_default_str();
  cmd_s->add_flag("--weighted", sweep.weighted, "read the third column as weights");
  cmd_s->add_option("--min-size", sweep.min_size, "smallest non-anomalous community")
      ->capture_default_str();
  cmd_s->add_option("--output", sweep.output, "table file (default: stdout)");

  attractor::BenchOptions bench;
  std::string bench_grid;
  auto* cmd_b = app.add_subcommand("bench", "Time detection across graph sizes");
  cmd_b->add_option("--grid", bench_grid, "target edge counts, 'a,b,c'")->required();
  cmd_b->add_option("--seed", bench.seed, "generator seed")->capture_default_str();
  cmd_b->add_option("--lambda", bench.lambda, "cohesion parameter")->capture_default_str();
  cmd_b->add_option("--max-steps", bench.max_steps, "fixed sweep cap")->capture_default_str();
  cmd_b->add_option("--repeats", bench.repeats, "timed repeats per size, fastest wins")
      ->capture_default_str();
  cmd_b->add_option("--output", bench.output, "table file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_d->parsed()) return attractor::cmd_detect(detect, std::cout, std::cerr);
    if (cmd_e->parsed()) {
      std::istringstream ss(metrics_arg);
      std::string tok;
      while (std::getline(ss, tok, ','))
        if (!tok.empty()) eval.metrics.push_back(tok);
      return attractor::cmd_eval(eval, std::cout, std::cerr);
    }
    if (cmd_g->parsed()) return attractor::cmd_generate(gen, std::cout, std::cerr);
    if (cmd_s->parsed()) {
      sweep.grid = parse_grid(sweep_grid);
      return attractor::cmd_sweep_lambda(sweep, std::cout, std::cerr);
    }
    if (cmd_b->parsed()) {
      bench.grid = parse_grid(bench_grid);
      return attractor::cmd_bench(bench, std::cout, std::cerr);
    }
  } catch (const CLI::ValidationError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
