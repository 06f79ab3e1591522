// SPDX-License-Identifier: Apache-2.0

#include "phasesynth/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "phasesynth/error.hpp"

namespace phasesynth {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& section) {
  require(j.is_object(), "config section '" + section + "' must be an object");
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, value] : j.items()) {
    require(allowed.count(key) == 1, "unknown config key '" + section + "." + key + "'");
  }
}

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
  if (j.contains(key)) {
    out = j.at(key).get<T>();
  }
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) {
    out.push_back(field);
  }
  return out;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text, const std::string& expected_header) {
  std::istringstream in(text);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)) && line == expected_header,
          "unexpected CSV header (wanted '" + expected_header + "')");
  const auto columns = split(expected_header, ',').size();
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    auto fields = split(line, ',');
    require(fields.size() == columns, "CSV row has " + std::to_string(fields.size()) + " fields: " + line);
    rows.push_back(std::move(fields));
  }
  return rows;
}

json phases_to_json(const phase_vector& pv) { return {{"x_half", pv.x_half}, {"y_half", pv.y_half}}; }

json outcome_to_json(const trial_outcome& o) {
  return {{"final_best", o.final_best},
          {"generations_to_90", o.generations_to_90},
          {"peak_deg", o.peak_deg},
          {"beamwidth_3db_deg", o.beamwidth_3db_deg},
          {"max_sll_db", o.max_sll_db}};
}

}  // namespace

run_config parse_config(const std::string& json_text, const fs::path& base_dir) {
  run_config cfg;
  try {
    const auto j = json::parse(json_text);
    reject_unknown(j, {"geometry", "mask", "sampling", "ga", "mode", "trials", "output_dir", "rule_base"}, "root");

    if (j.contains("geometry")) {
      const auto& g = j.at("geometry");
      reject_unknown(g, {"m_elems", "n_elems", "dx", "dy", "frequency_hz", "element"}, "geometry");
      read_opt(g, "m_elems", cfg.geometry.m_elems);
      read_opt(g, "n_elems", cfg.geometry.n_elems);
      read_opt(g, "dx", cfg.geometry.dx);
      read_opt(g, "dy", cfg.geometry.dy);
      read_opt(g, "frequency_hz", cfg.geometry.frequency_hz);
      if (g.contains("element")) {
        const auto& e = g.at("element");
        reject_unknown(e, {"type", "width_m", "length_m"}, "geometry.element");
        const auto type = e.value("type", std::string("isotropic"));
        if (type == "isotropic") {
          cfg.geometry.element = isotropic_element{};
        } else if (type == "rectangular_patch") {
          rectangular_patch patch;
          read_opt(e, "width_m", patch.width_m);
          read_opt(e, "length_m", patch.length_m);
          cfg.geometry.element = patch;
        } else {
          throw contract_violation("unknown element type '" + type + "'");
        }
      }
    }
    if (j.contains("mask")) {
      const auto& m = j.at("mask");
      reject_unknown(m, {"steer_deg", "beam_lo_deg", "beam_hi_deg", "sll_db", "beamwidth_3db_deg", "w1"}, "mask");
      read_opt(m, "steer_deg", cfg.mask.steer_deg);
      read_opt(m, "beam_lo_deg", cfg.mask.beam_lo_deg);
      read_opt(m, "beam_hi_deg", cfg.mask.beam_hi_deg);
      read_opt(m, "sll_db", cfg.mask.sll_db);
      read_opt(m, "beamwidth_3db_deg", cfg.mask.beamwidth_3db_deg);
      read_opt(m, "w1", cfg.mask.w1);
    }
    if (j.contains("sampling")) {
      const auto& s = j.at("sampling");
      reject_unknown(s, {"step_deg", "phi_deg"}, "sampling");
      read_opt(s, "step_deg", cfg.sampling.step_deg);
      read_opt(s, "phi_deg", cfg.sampling.phi_deg);
    }
    if (j.contains("ga")) {
      const auto& g = j.at("ga");
      reject_unknown(g, {"pop_size", "bits_per_gene", "p_c", "p_m", "max_generations", "elitism_count", "rng_seed"},
                     "ga");
      read_opt(g, "pop_size", cfg.ga.pop_size);
      read_opt(g, "bits_per_gene", cfg.ga.bits_per_gene);
      read_opt(g, "p_c", cfg.ga.p_c);
      read_opt(g, "p_m", cfg.ga.p_m);
      read_opt(g, "max_generations", cfg.ga.max_generations);
      read_opt(g, "elitism_count", cfg.ga.elitism_count);
      read_opt(g, "rng_seed", cfg.ga.rng_seed);
    }
    if (j.contains("mode")) {
      cfg.mode = parse_mode(j.at("mode").get<std::string>());
    }
    read_opt(j, "trials", cfg.trials);
    if (j.contains("output_dir")) {
      cfg.output_dir = j.at("output_dir").get<std::string>();
    }
    if (j.contains("rule_base")) {
      fs::path p = j.at("rule_base").get<std::string>();
      if (p.is_relative() && !base_dir.empty()) {
        p = base_dir / p;
      }
      cfg.rule_base_path = p;
      cfg.rules = load_rule_base(p);
    }
  } catch (const json::exception& e) {
    throw contract_violation(std::string("malformed config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

run_config load_config(const fs::path& path) { return parse_config(read_text(path), path.parent_path()); }

std::string serialize_config(const run_config& cfg) {
  json element = {{"type", "isotropic"}};
  if (const auto* patch = std::get_if<rectangular_patch>(&cfg.geometry.element)) {
    element = {{"type", "rectangular_patch"}, {"width_m", patch->width_m}, {"length_m", patch->length_m}};
  }
  json j = {{"geometry",
             {{"m_elems", cfg.geometry.m_elems},
              {"n_elems", cfg.geometry.n_elems},
              {"dx", cfg.geometry.dx},
              {"dy", cfg.geometry.dy},
              {"frequency_hz", cfg.geometry.frequency_hz},
              {"element", element}}},
            {"mask",
             {{"steer_deg", cfg.mask.steer_deg},
              {"beam_lo_deg", cfg.mask.beam_lo_deg},
              {"beam_hi_deg", cfg.mask.beam_hi_deg},
              {"sll_db", cfg.mask.sll_db},
              {"beamwidth_3db_deg", cfg.mask.beamwidth_3db_deg},
              {"w1", cfg.mask.w1}}},
            {"sampling", {{"step_deg", cfg.sampling.step_deg}, {"phi_deg", cfg.sampling.phi_deg}}},
            {"ga",
             {{"pop_size", cfg.ga.pop_size},
              {"bits_per_gene", cfg.ga.bits_per_gene},
              {"p_c", cfg.ga.p_c},
              {"p_m", cfg.ga.p_m},
              {"max_generations", cfg.ga.max_generations},
              {"elitism_count", cfg.ga.elitism_count},
              {"rng_seed", cfg.ga.rng_seed}}},
            {"mode", to_string(cfg.mode)},
            {"trials", cfg.trials},
            {"output_dir", cfg.output_dir.string()}};
  if (!cfg.rule_base_path.empty()) {
    j["rule_base"] = cfg.rule_base_path.string();
  }
  return j.dump(2) + "\n";
}

run_summary summary_of(const run_report& report) {
  return {report.mode,
          report.seed,
          static_cast<int>(report.records.size()),
          report.initial_best,
          report.best_fitness,
          generations_to_fraction(report, 0.9),
          report.measurement,
          report.best_phases};
}

std::string format_pattern_csv(const pattern_samples& p) {
  require(p.angles_deg.size() == p.values_db.size(), "pattern samples are malformed");
  std::string out = "theta_deg,value_db,region\n";
  for (std::size_t i = 0; i < p.angles_deg.size(); ++i) {
    const bool beam = p.beam && p.beam->contains(i);
    out += num(p.angles_deg[i]) + "," + num(p.values_db[i]) + "," + (beam ? "beam" : "sidelobe") + "\n";
  }
  return out;
}

std::string format_convergence_csv(const std::vector<generation_record>& records) {
  std::string out = "generation,best,mean,d_gw,number,p_c,p_m\n";
  for (const auto& r : records) {
    out += std::to_string(r.generation) + "," + num(r.best) + "," + num(r.mean) + "," + num(r.d_gw) + "," +
           std::to_string(r.number) + "," + num(r.p_c) + "," + num(r.p_m) + "\n";
  }
  return out;
}

std::string format_summary(const run_summary& s) {
  json j = {{"mode", to_string(s.mode)},
            {"seed", s.seed},
            {"generations", s.generations},
            {"initial_best_fitness", s.initial_best},
            {"best_fitness", s.best_fitness},
            {"generations_to_90", s.generations_to_90},
            {"peak_deg", s.measurement.peak_deg},
            {"beamwidth_3db_deg", s.measurement.beamwidth_3db_deg},
            {"max_sll_db", s.measurement.max_sll_db},
            {"ambiguous_peak", s.measurement.ambiguous_peak},
            {"best_phases", phases_to_json(s.best_phases)}};
  return j.dump(2) + "\n";
}

pattern_samples parse_pattern_csv(const std::string& text) {
  pattern_samples p;
  std::optional<std::size_t> first;
  std::size_t count = 0;
  const auto rows = csv_rows(text, "theta_deg,value_db,region");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    p.angles_deg.push_back(std::stod(rows[i][0]));
    p.values_db.push_back(std::stod(rows[i][1]));
    const auto& region = rows[i][2];
    require(region == "beam" || region == "sidelobe", "unknown pattern region '" + region + "'");
    if (region == "beam") {
      if (!first) {
        first = i;
      }
      require(*first + count == i, "beam region in pattern.csv is not contiguous");
      ++count;
    }
  }
  if (first) {
    p.beam = index_span{*first, count};
  }
  return p;
}

std::vector<generation_record> parse_convergence_csv(const std::string& text) {
  std::vector<generation_record> out;
  for (const auto& row : csv_rows(text, "generation,best,mean,d_gw,number,p_c,p_m")) {
    out.push_back({std::stoi(row[0]), std::stod(row[1]), std::stod(row[2]), std::stod(row[3]), std::stoi(row[4]),
                   std::stod(row[5]), std::stod(row[6])});
  }
  return out;
}

run_summary parse_summary(const std::string& text) {
  run_summary s;
  try {
    const auto j = json::parse(text);
    s.mode = parse_mode(j.at("mode").get<std::string>());
    s.seed = j.at("seed").get<std::uint64_t>();
    s.generations = j.at("generations").get<int>();
    s.initial_best = j.at("initial_best_fitness").get<double>();
    s.best_fitness = j.at("best_fitness").get<double>();
    s.generations_to_90 = j.at("generations_to_90").get<int>();
    s.measurement.peak_deg = j.at("peak_deg").get<double>();
    s.measurement.beamwidth_3db_deg = j.at("beamwidth_3db_deg").get<double>();
    s.measurement.max_sll_db = j.at("max_sll_db").get<double>();
    s.measurement.ambiguous_peak = j.at("ambiguous_peak").get<bool>();
    s.best_phases.x_half = j.at("best_phases").at("x_half").get<std::vector<double>>();
    s.best_phases.y_half = j.at("best_phases").at("y_half").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw contract_violation(std::string("malformed summary: ") + e.what());
  }
  return s;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << text;
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw std::runtime_error("cannot create output directory " + dir.string());
  }
}

std::string trial_dir_name(int trial) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "trial_%03d", trial);
  return buf;
}

}  // namespace

void write_report(const run_report& report, const fs::path& dir) {
  ensure_dir(dir);
  write_text(dir / "pattern.csv", format_pattern_csv(report.pattern));
  write_text(dir / "convergence.csv", format_convergence_csv(report.records));
  write_text(dir / "summary.json", format_summary(summary_of(report)));
}

void write_pattern_report(const pattern_samples& p, const pattern_measurement& m, const phase_vector& pv,
                          const fs::path& dir) {
  ensure_dir(dir);
  write_text(dir / "pattern.csv", format_pattern_csv(p));
  json j = {{"peak_deg", m.peak_deg},
            {"beamwidth_3db_deg", m.beamwidth_3db_deg},
            {"max_sll_db", m.max_sll_db},
            {"ambiguous_peak", m.ambiguous_peak},
            {"phases", phases_to_json(pv)}};
  write_text(dir / "summary.json", j.dump(2) + "\n");
}

void write_campaign(const campaign_result& result, const std::string& first_label, const std::string& second_label,
                    const fs::path& dir) {
  ensure_dir(dir);
  for (std::size_t k = 0; k < result.pairs.size(); ++k) {
    const auto name = trial_dir_name(result.pairs[k].trial);
    write_report(result.first_reports[k], dir / first_label / name);
    write_report(result.second_reports[k], dir / second_label / name);
  }

  std::string csv = "trial,seed," + first_label + "_final," + second_label + "_final," + first_label + "_g90," +
                    second_label + "_g90," + first_label + "_sll_db," + second_label + "_sll_db,difference\n";
  json pairs = json::array();
  for (const auto& p : result.pairs) {
    csv += std::to_string(p.trial) + "," + std::to_string(p.seed) + "," + num(p.first.final_best) + "," +
           num(p.second.final_best) + "," + std::to_string(p.first.generations_to_90) + "," +
           std::to_string(p.second.generations_to_90) + "," + num(p.first.max_sll_db) + "," +
           num(p.second.max_sll_db) + "," + num(p.fitness_difference) + "\n";
    pairs.push_back({{"trial", p.trial},
                     {"seed", p.seed},
                     {first_label, outcome_to_json(p.first)},
                     {second_label, outcome_to_json(p.second)},
                     {"difference", p.fitness_difference}});
  }
  write_text(dir / "comparison.csv", csv);

  const auto& s = result.summary;
  json j = {{"labels", {first_label, second_label}},
            {"median_final_fitness", {{first_label, s.first_median_final}, {second_label, s.second_median_final}}},
            {"median_generations_to_90",
             {{first_label, s.first_median_generations_to_90}, {second_label, s.second_median_generations_to_90}}},
            {"wins", {{first_label, s.first_wins}, {second_label, s.second_wins}, {"ties", s.ties}}},
            {"pairs", pairs}};
  write_text(dir / "comparison.json", j.dump(2) + "\n");
}

}  // namespace phasesynth
