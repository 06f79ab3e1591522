// SPDX-License-Identifier: Apache-2.0
//
// phasesynth: phase-only planar array synthesis with SGA / fuzzy GA.
//
//   phasesynth run     --config cfg.json [--seed N] [--mode sga|fga] [--trials N] [--output DIR]
//   phasesynth compare --config cfg.json [--seed N] [--trials N] [--output DIR]
//   phasesynth pattern --config cfg.json (--summary FILE | --x-half a,b,.. --y-half c,..) [--output DIR]
//   phasesynth defaults [--config-out FILE] [--rules-out FILE]

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phasesynth/error.hpp"
#include "phasesynth/report_io.hpp"
#include "phasesynth/rng.hpp"
#include "phasesynth/synthesis.hpp"

using namespace phasesynth;

namespace {

struct common_options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> generations;
  std::string output;
};

run_config resolve(const common_options& opt) {
  run_config cfg = opt.config_path.empty() ? run_config{} : load_config(opt.config_path);
  if (opt.seed) {
    cfg.ga.rng_seed = *opt.seed;
  }
  if (opt.trials) {
    cfg.trials = *opt.trials;
  }
  if (opt.generations) {
    cfg.ga.max_generations = *opt.generations;
  }
  if (!opt.output.empty()) {
    cfg.output_dir = opt.output;
  }
  cfg.validate();
  return cfg;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) {
      out.push_back(std::stod(item));
    }
  }
  return out;
}

void add_common(CLI::App* cmd, common_options& opt) {
  cmd->add_option("-c,--config", opt.config_path, "run configuration (JSON)");
  cmd->add_option("-s,--seed", opt.seed, "campaign / run seed");
  cmd->add_option("-o,--output", opt.output, "output directory");
}

int cmd_run(const common_options& opt, const std::string& mode_override) {
  auto cfg = resolve(opt);
  if (!mode_override.empty()) {
    cfg.mode = parse_mode(mode_override);
  }
  const auto base_seed = cfg.ga.rng_seed;
  for (int k = 0; k < cfg.trials; ++k) {
    run_config trial = cfg;
    trial.ga.rng_seed = derive_trial_seed(base_seed, static_cast<std::uint64_t>(k));
    const auto report = run_synthesis(trial);
    char name[32];
    std::snprintf(name, sizeof name, "trial_%03d", k);
    const auto dir = cfg.trials == 1 ? cfg.output_dir : cfg.output_dir / name;
    write_report(report, dir);
    const auto& m = report.measurement;
    std::cout << to_string(cfg.mode) << " trial " << k << " seed " << trial.ga.rng_seed << ": fitness "
              << report.best_fitness << ", peak " << m.peak_deg << " deg, beamwidth " << m.beamwidth_3db_deg
              << " deg, max SLL " << m.max_sll_db << " dB -> " << dir.string() << "\n";
  }
  return 0;
}

int cmd_compare(const common_options& opt) {
  const auto cfg = resolve(opt);
  run_config sga = cfg;
  run_config fga = cfg;
  sga.mode = ga_mode::sga;
  fga.mode = ga_mode::fga;
  const auto result = compare_campaign(sga, fga, cfg.trials, cfg.ga.rng_seed);
  write_campaign(result, "sga", "fga", cfg.output_dir);
  const auto& s = result.summary;
  std::cout << "trials: " << result.pairs.size() << "\n"
            << "median final fitness: sga " << s.first_median_final << ", fga " << s.second_median_final << "\n"
            << "median generations to 90%: sga " << s.first_median_generations_to_90 << ", fga "
            << s.second_median_generations_to_90 << "\n"
            << "wins: fga " << s.second_wins << ", sga " << s.first_wins << ", ties " << s.ties << "\n"
            << "written to " << cfg.output_dir.string() << "\n";
  return 0;
}

int cmd_pattern(const common_options& opt, const std::string& summary_path, const std::string& x_half,
                const std::string& y_half) {
  const auto cfg = resolve(opt);
  phase_vector pv;
  if (!summary_path.empty()) {
    pv = parse_summary(read_text(summary_path)).best_phases;
  } else {
    pv.x_half = parse_list(x_half);
    pv.y_half = parse_list(y_half);
  }
  const auto grid = sample_grid(cfg.mask, cfg.sampling);
  const auto pattern = array_factor_separable(pv, cfg.geometry, grid);
  const auto m = measure_pattern(pattern, cfg.mask.steer_deg);
  write_pattern_report(pattern, m, pv, cfg.output_dir);
  std::cout << "fitness " << fitness(pattern, cfg.mask) << ", peak " << m.peak_deg << " deg, beamwidth "
            << m.beamwidth_3db_deg << " deg, max SLL " << m.max_sll_db << " dB -> " << cfg.output_dir.string()
            << "\n";
  return 0;
}

int cmd_defaults(const std::string& config_out, const std::string& rules_out) {
  if (config_out.empty() && rules_out.empty()) {
    std::cout << serialize_config(run_config{});
    return 0;
  }
  if (!config_out.empty()) {
    write_text(config_out, serialize_config(run_config{}));
  }
  if (!rules_out.empty()) {
    write_text(rules_out, serialize_rule_base(default_rule_base()));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-only planar array synthesis with standard and fuzzy-adaptive genetic algorithms"};
  app.require_subcommand(1);

  common_options run_opt;
  std::string mode;
  auto* run = app.add_subcommand("run", "run seeded synthesis trials in one mode");
  add_common(run, run_opt);
  run->add_option("-m,--mode", mode, "sga or fga (overrides the config)");
  run->add_option("-t,--trials", run_opt.trials, "number of trials");
  run->add_option("-g,--generations", run_opt.generations, "generation budget");

  common_options cmp_opt;
  auto* compare = app.add_subcommand("compare", "paired SGA vs FGA campaign on shared seeds");
  add_common(compare, cmp_opt);
  compare->add_option("-t,--trials", cmp_opt.trials, "number of paired trials");
  compare->add_option("-g,--generations", cmp_opt.generations, "generation budget");

  common_options pat_opt;
  std::string summary_path;
  std::string x_half;
  std::string y_half;
  auto* pattern = app.add_subcommand("pattern", "evaluate the pattern of a given phase vector");
  add_common(pattern, pat_opt);
  auto* from_summary = pattern->add_option("--summary", summary_path, "summary.json holding best_phases");
  auto* x_opt = pattern->add_option("--x-half", x_half, "comma-separated x half-phases (rad)");
  auto* y_opt = pattern->add_option("--y-half", y_half, "comma-separated y half-phases (rad)");
  x_opt->excludes(from_summary);
  y_opt->excludes(from_summary);
  x_opt->needs(y_opt);
  y_opt->needs(x_opt);

  std::string config_out;
  std::string rules_out;
  auto* defaults = app.add_subcommand("defaults", "print or write the default config and rule base");
  defaults->add_option("--config-out", config_out, "write the default config here");
  defaults->add_option("--rules-out", rules_out, "write the default fuzzy rule base here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      return cmd_run(run_opt, mode);
    }
    if (*compare) {
      return cmd_compare(cmp_opt);
    }
    if (*pattern) {
      if (summary_path.empty() && x_half.empty()) {
        std::cerr << "pattern: give --summary or --x-half/--y-half\n";
        return 2;
      }
      return cmd_pattern(pat_opt, summary_path, x_half, y_half);
    }
    return cmd_defaults(config_out, rules_out);
  } catch (const contract_violation& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
