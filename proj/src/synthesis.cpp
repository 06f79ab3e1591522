// SPDX-License-Identifier: Apache-2.0

#include "phasesynth/synthesis.hpp"

#include <algorithm>
#include <cmath>

#include "phasesynth/adaptive_control.hpp"
#include "phasesynth/error.hpp"
#include "phasesynth/rng.hpp"

namespace phasesynth {

std::string to_string(ga_mode mode) { return mode == ga_mode::sga ? "sga" : "fga"; }

ga_mode parse_mode(const std::string& text) {
  if (text == "sga" || text == "SGA") {
    return ga_mode::sga;
  }
  if (text == "fga" || text == "FGA") {
    return ga_mode::fga;
  }
  throw contract_violation("unknown mode '" + text + "' (expected sga or fga)");
}

void run_config::validate() const {
  geometry.validate();
  mask.validate();
  ga.validate();
  rules.validate();
  require(trials >= 1, "trials must be at least 1");
  // Throws when the step does not tile the grid or the beam is too narrow.
  (void)sample_grid(mask, sampling);
}

phase_objective::phase_objective(array_geometry g, angle_grid grid, mask_spec mask, int bits_per_gene)
    : geometry_(std::move(g)), grid_(std::move(grid)), mask_(mask), bits_per_gene_(bits_per_gene) {
  geometry_.validate();
  grid_.validate();
  require(grid_.beam.has_value(), "objective grid needs a beam partition");
}

pattern_samples phase_objective::pattern(const phase_vector& pv) const {
  return array_factor_separable(pv, geometry_, grid_);
}

pattern_samples phase_objective::pattern(const chromosome& c) const {
  return pattern(decode(c, geometry_, bits_per_gene_));
}

double phase_objective::operator()(const chromosome& c) const { return fitness(pattern(c), mask_); }

pattern_measurement measure_pattern(const pattern_samples& p, double steer_deg) {
  require(!p.values_db.empty() && p.values_db.size() == p.angles_deg.size(), "pattern samples are malformed");
  require(p.beam.has_value(), "pattern has no beam/sidelobe partition");
  const auto& v = p.values_db;
  const auto& a = p.angles_deg;
  const double top = *std::max_element(v.begin(), v.end());

  pattern_measurement out;
  std::size_t peak = v.size();
  int ties = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] >= top - 1e-12) {
      ++ties;
      if (peak == v.size() || std::abs(a[i] - steer_deg) < std::abs(a[peak] - steer_deg)) {
        peak = i;
      }
    }
  }
  out.peak_deg = a[peak];
  out.ambiguous_peak = ties > 1;

  const double level = top - 3.0;
  const auto crossing = [&](std::size_t inside, std::size_t outside) {
    const double t = (v[inside] - level) / (v[inside] - v[outside]);
    return a[inside] + t * (a[outside] - a[inside]);
  };
  std::size_t lo = peak;
  while (lo > 0 && v[lo - 1] >= level) {
    --lo;
  }
  std::size_t hi = peak;
  while (hi + 1 < v.size() && v[hi + 1] >= level) {
    ++hi;
  }
  const double left = lo == 0 ? a.front() : crossing(lo, lo - 1);
  const double right = hi + 1 == v.size() ? a.back() : crossing(hi, hi + 1);
  out.beamwidth_3db_deg = right - left;

  double sll = pattern_floor_db;
  bool any = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!p.beam->contains(i)) {
      sll = any ? std::max(sll, v[i]) : v[i];
      any = true;
    }
  }
  require(any, "pattern has no sidelobe samples");
  out.max_sll_db = sll;
  return out;
}

run_report run_synthesis(const run_config& cfg) {
  cfg.validate();
  const phase_objective objective(cfg.geometry, sample_grid(cfg.mask, cfg.sampling), cfg.mask, cfg.ga.bits_per_gene);
  const fitness_function eval = [&objective](const chromosome& c) { return objective(c); };

  rng gen(cfg.ga.rng_seed);
  auto pop = initialize_population(cfg.ga, chromosome_length(cfg.geometry, cfg.ga.bits_per_gene), eval, gen);

  run_report report;
  report.mode = cfg.mode;
  report.seed = cfg.ga.rng_seed;
  report.initial_best = pop.best_fitness();
  report.initial_mean = pop.mean_fitness();
  report.records.reserve(static_cast<std::size_t>(cfg.ga.max_generations));

  stagnation_tracker stagnation;
  stagnation.record(report.initial_best);

  for (int t = 1; t <= cfg.ga.max_generations; ++t) {
    control_output probs{cfg.ga.p_c, cfg.ga.p_m};
    // The configured probabilities breed the first generation in both modes;
    // afterwards the controller takes over in FGA mode.
    if (cfg.mode == ga_mode::fga && t > 1) {
      probs = infer(take_snapshot(pop, stagnation.count()), cfg.rules);
    }
    pop = step_generation(pop, cfg.ga, eval, probs.p_c, probs.p_m, gen);
    const double best = pop.best_fitness();
    stagnation.record(best);
    report.records.push_back({t, best, pop.mean_fitness(), gene_diversity(pop), stagnation.count(), probs.p_c, probs.p_m});
  }

  report.best_phases = decode(pop.best_ever, cfg.geometry, cfg.ga.bits_per_gene);
  report.best_fitness = *pop.best_ever.fitness();
  report.pattern = objective.pattern(report.best_phases);
  report.measurement = measure_pattern(report.pattern, cfg.mask.steer_deg);
  return report;
}

int generations_to_fraction(const run_report& report, double fraction) {
  const double start = report.initial_best;
  const double target = start + fraction * (report.best_fitness - start);
  if (report.best_fitness <= start) {
    return 0;
  }
  for (const auto& r : report.records) {
    if (r.best >= target) {
      return r.generation;
    }
  }
  return report.records.empty() ? 0 : report.records.back().generation;
}

trial_outcome summarize(const run_report& report) {
  return {report.best_fitness, generations_to_fraction(report, 0.9), report.measurement.peak_deg,
          report.measurement.beamwidth_3db_deg, report.measurement.max_sll_db};
}

double median(std::vector<double> values) {
  require(!values.empty(), "median of an empty set");
  std::sort(values.begin(), values.end());
  const auto n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

campaign_result compare_campaign(const run_config& first, const run_config& second, int trials,
                                 std::uint64_t campaign_seed) {
  require(trials >= 1, "campaign needs at least one trial");
  const auto& g1 = first.geometry;
  const auto& g2 = second.geometry;
  require(g1.m_elems == g2.m_elems && g1.n_elems == g2.n_elems && g1.dx == g2.dx && g1.dy == g2.dy &&
              g1.frequency_hz == g2.frequency_hz && g1.element.index() == g2.element.index(),
          "campaign configurations use different geometries");
  const auto& m1 = first.mask;
  const auto& m2 = second.mask;
  require(m1.steer_deg == m2.steer_deg && m1.beam_lo_deg == m2.beam_lo_deg && m1.beam_hi_deg == m2.beam_hi_deg &&
              m1.w1 == m2.w1 && first.sampling.step_deg == second.sampling.step_deg &&
              first.sampling.phi_deg == second.sampling.phi_deg,
          "campaign configurations use different masks or sampling");
  require(first.ga.pop_size == second.ga.pop_size && first.ga.bits_per_gene == second.ga.bits_per_gene &&
              first.ga.max_generations == second.ga.max_generations,
          "campaign configurations use different budgets");

  campaign_result result;
  std::vector<double> f1;
  std::vector<double> f2;
  std::vector<double> g90_1;
  std::vector<double> g90_2;
  for (int k = 0; k < trials; ++k) {
    const auto seed = derive_trial_seed(campaign_seed, static_cast<std::uint64_t>(k));
    run_config c1 = first;
    run_config c2 = second;
    c1.ga.rng_seed = seed;
    c2.ga.rng_seed = seed;
    result.first_reports.push_back(run_synthesis(c1));
    result.second_reports.push_back(run_synthesis(c2));

    paired_record rec;
    rec.trial = k;
    rec.seed = seed;
    rec.first = summarize(result.first_reports.back());
    rec.second = summarize(result.second_reports.back());
    rec.fitness_difference = rec.second.final_best - rec.first.final_best;
    rec.second_wins = rec.fitness_difference > 0.0;
    if (rec.fitness_difference > 0.0) {
      ++result.summary.second_wins;
    } else if (rec.fitness_difference < 0.0) {
      ++result.summary.first_wins;
    } else {
      ++result.summary.ties;
    }
    f1.push_back(rec.first.final_best);
    f2.push_back(rec.second.final_best);
    g90_1.push_back(rec.first.generations_to_90);
    g90_2.push_back(rec.second.generations_to_90);
    result.pairs.push_back(rec);
  }
  result.summary.first_median_final = median(f1);
  result.summary.second_median_final = median(f2);
  result.summary.first_median_generations_to_90 = median(g90_1);
  result.summary.second_median_generations_to_90 = median(g90_2);
  return result;
}

}  // namespace phasesynth
