// Command-line front end: generate, run, experiment, compare, calibrate.
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lsmapper/error.hpp"
#include "lsmapper/generators.hpp"
#include "lsmapper/io.hpp"
#include "lsmapper/pipeline.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitStage = 3;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  bool exact_crossings = false;
  std::optional<std::size_t> s;
  std::optional<double> delta;
};

lsm::RunConfig load_config(const std::string& path, const Overrides& o) {
  lsm::RunConfig c;
  try {
    c = lsm::RunConfig::from_json(lsm::read_text_file(path));
  } catch (const lsm::Error& e) {
    // An unreadable config file is a usage problem, not a pipeline failure.
    throw lsm::Error(lsm::ErrorKind::Parameter, e.what());
  }
  if (o.seed) c.seed = *o.seed;
  if (o.out) c.out = *o.out;
  if (o.exact_crossings) c.crossings.mode = lsm::CrossingOptions::Mode::Exact;
  if (o.s) c.s = *o.s;
  if (o.delta) c.delta = *o.delta;
  c.validate();
  return c;
}

void add_common(CLI::App* cmd, std::string& config, Overrides& o, bool with_out) {
  cmd->add_option("--config", config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "Override the configured seed");
  if (with_out) cmd->add_option("--out", o.out, "Output directory");
  cmd->add_flag("--exact-crossings", o.exact_crossings, "Require exact crossing detection");
  cmd->add_option("--s", o.s, "Fix the subdivision count instead of calibrating it");
  cmd->add_option("--delta", o.delta, "Fix the neighborhood scale instead of calibrating it");
}

int generate(const lsm::RunConfig& c, const std::filesystem::path& out) {
  lsm::Rng rng(c.seed);
  lsm::Dataset data = lsm::load_or_generate(c.input, rng);
  std::filesystem::create_directories(out);
  lsm::save_point_cloud(data.cloud, out / "points.csv");
  if (!data.responses.empty()) lsm::save_scalar_column(data.responses, out / "responses.csv");
  if (c.filter.kind == "er_graphs") {
    auto graphs = lsm::gen_er_graph_data(data.cloud, c.filter.graph_nodes, rng);
    std::filesystem::create_directories(out / "graphs");
    for (std::size_t i = 0; i < graphs.size(); ++i)
      lsm::write_text_file(out / "graphs" / (std::to_string(i) + ".txt"), lsm::format_edge_list(graphs[i]));
  }
  std::cout << "wrote " << data.cloud.size() << " points to " << out.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mapper estimators on length-space valued filters"};
  app.require_subcommand(1);

  std::string config;
  Overrides o;

  auto* gen = app.add_subcommand("generate", "Write the configured input data as CSV");
  std::string gen_out;
  gen->add_option("--config", config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
  gen->add_option("--seed", o.seed, "Override the configured seed");
  gen->add_option("--out", gen_out, "Output directory")->required();

  auto* run = app.add_subcommand("run", "Run the estimator and write its artifacts");
  add_common(run, config, o, true);

  auto* cal = app.add_subcommand("calibrate", "Print delta_n, ell and s_n without building the Mapper");
  add_common(cal, config, o, false);

  auto* exp = app.add_subcommand("experiment", "Reproduce a named scenario");
  std::string name;
  std::uint64_t seed = 0;
  std::size_t seeds = 1, n = 0;
  bool paper_scale = false;
  double bandwidth = 0.0;
  std::optional<std::string> exp_out;
  exp->add_option("name", name, "Scenario name")
      ->required()
      ->check(CLI::IsMember(lsm::experiment_names()));
  exp->add_option("--seed", seed, "First seed");
  exp->add_option("--seeds", seeds, "Number of consecutive seeds")->check(CLI::PositiveNumber);
  exp->add_option("--n", n, "Sample size (default: scenario default)");
  exp->add_flag("--paper-scale", paper_scale, "Use the full sample size");
  exp->add_option("--bandwidth", bandwidth, "Nadaraya-Watson bandwidth (annulus scenarios)")
      ->check(CLI::PositiveNumber);
  exp->add_option("--out", exp_out, "Output directory");

  auto* cmp = app.add_subcommand("compare", "Compare two pseudometric CSV files");
  std::string path_a, path_b;
  cmp->add_option("a", path_a, "First space")->required()->check(CLI::ExistingFile);
  cmp->add_option("b", path_b, "Second space")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*gen) return generate(load_config(config, o), gen_out);
    if (*run) {
      auto c = load_config(config, o);
      auto r = lsm::run_estimator(c);
      std::cout << r.summary_json() << "\n";
      return 0;
    }
    if (*cal) {
      auto c = load_config(config, o);
      auto rec = lsm::run_calibration(c);
      lsm::RunResult shell;
      shell.calibration = rec;
      std::cout << shell.calibration_json() << "\n";
      return 0;
    }
    if (*exp) {
      for (std::size_t i = 0; i < seeds; ++i) {
        lsm::ExperimentOptions opts;
        opts.n = n;
        opts.paper_scale = paper_scale;
        opts.bandwidth = bandwidth;
        if (exp_out) opts.out = std::filesystem::path(*exp_out) / ("seed_" + std::to_string(seed + i));
        auto rep = lsm::run_experiment(name, seed + i, opts);
        std::cout << "# " << name << " seed " << rep.seed << " n " << rep.n << "\n" << rep.betti_table();
      }
      return 0;
    }
    if (*cmp) {
      std::cout << lsm::compare_spaces(std::filesystem::path(path_a), std::filesystem::path(path_b)).to_json()
                << "\n";
      return 0;
    }
  } catch (const lsm::StageError& e) {
    std::cerr << "error in stage " << e.stage() << ": " << e.what() << "\n";
    return kExitStage;
  } catch (const lsm::Error& e) {
    std::cerr << "error (" << lsm::to_string(e.kind()) << "): " << e.what() << "\n";
    bool validation = e.kind() == lsm::ErrorKind::Parameter || e.kind() == lsm::ErrorKind::Format;
    return validation ? kExitValidation : kExitStage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitStage;
  }
  return 0;
}
