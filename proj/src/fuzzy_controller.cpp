// SPDX-License-Identifier: Apache-2.0

#include "phasesynth/fuzzy_controller.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "phasesynth/error.hpp"

namespace phasesynth {

using nlohmann::json;

void linguistic_variable::validate() const {
  require(hi > lo, "variable '" + name + "' has an empty range");
  require(peaks.size() >= 2, "variable '" + name + "' needs at least two terms");
  require(term_names.size() == peaks.size(), "variable '" + name + "' has mismatched term names and peaks");
  require(peaks.front() == lo && peaks.back() == hi, "variable '" + name + "' terms must peak at both range ends");
  for (std::size_t t = 1; t < peaks.size(); ++t) {
    require(peaks[t] > peaks[t - 1], "variable '" + name + "' peaks must be strictly increasing");
  }
  std::set<std::string> unique(term_names.begin(), term_names.end());
  require(unique.size() == term_names.size(), "variable '" + name + "' has duplicate term names");
}

int linguistic_variable::term_index(const std::string& term) const {
  const auto it = std::find(term_names.begin(), term_names.end(), term);
  return it == term_names.end() ? -1 : static_cast<int>(it - term_names.begin());
}

double linguistic_variable::membership(std::size_t t, double x) const {
  x = std::clamp(x, lo, hi);
  const double peak = peaks[t];
  if (x == peak) {
    return 1.0;
  }
  if (x < peak) {
    if (t == 0) {
      return 1.0;
    }
    const double left = peaks[t - 1];
    return x <= left ? 0.0 : (x - left) / (peak - left);
  }
  if (t + 1 == peaks.size()) {
    return 1.0;
  }
  const double right = peaks[t + 1];
  return x >= right ? 0.0 : (right - x) / (right - peak);
}

std::vector<double> linguistic_variable::fuzzify(double x) const {
  std::vector<double> degrees(peaks.size());
  for (std::size_t t = 0; t < peaks.size(); ++t) {
    degrees[t] = membership(t, x);
  }
  return degrees;
}

void fuzzy_rule_base::validate() const {
  for (const auto& v : inputs) {
    v.validate();
  }
  p_c.validate();
  p_m.validate();
  require(resolution >= 2, "defuzzification resolution must be at least 2");

  const auto n0 = inputs[0].term_count();
  const auto n1 = inputs[1].term_count();
  const auto n2 = inputs[2].term_count();
  std::vector<int> seen(n0 * n1 * n2, 0);
  for (const auto& r : rules) {
    for (std::size_t i = 0; i < 3; ++i) {
      require(r.antecedent[i] >= 0 && static_cast<std::size_t>(r.antecedent[i]) < inputs[i].term_count(),
              "rule references an unknown term of '" + inputs[i].name + "'");
    }
    require(r.p_c_term >= 0 && static_cast<std::size_t>(r.p_c_term) < p_c.term_count(), "rule has an unknown p_c term");
    require(r.p_m_term >= 0 && static_cast<std::size_t>(r.p_m_term) < p_m.term_count(), "rule has an unknown p_m term");
    const auto key = (static_cast<std::size_t>(r.antecedent[0]) * n1 + static_cast<std::size_t>(r.antecedent[1])) * n2 +
                     static_cast<std::size_t>(r.antecedent[2]);
    ++seen[key];
  }
  require(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }),
          "rule table must cover every input term combination exactly once");
}

namespace {

linguistic_variable three_terms(std::string name, double lo, double hi) {
  return {std::move(name), lo, hi, {"low", "medium", "high"}, {lo, 0.5 * (lo + hi), hi}};
}

json variable_to_json(const linguistic_variable& v) {
  json terms = json::array();
  for (std::size_t t = 0; t < v.peaks.size(); ++t) {
    terms.push_back({{"name", v.term_names[t]}, {"peak", v.peaks[t]}});
  }
  return {{"name", v.name}, {"range", {v.lo, v.hi}}, {"terms", terms}};
}

linguistic_variable variable_from_json(const json& j) {
  linguistic_variable v;
  v.name = j.at("name").get<std::string>();
  const auto& range = j.at("range");
  require(range.is_array() && range.size() == 2, "variable range must be a [lo, hi] pair");
  v.lo = range[0].get<double>();
  v.hi = range[1].get<double>();
  for (const auto& t : j.at("terms")) {
    v.term_names.push_back(t.at("name").get<std::string>());
    v.peaks.push_back(t.at("peak").get<double>());
  }
  return v;
}

int lookup(const linguistic_variable& v, const std::string& term) {
  const int idx = v.term_index(term);
  require(idx >= 0, "unknown term '" + term + "' for variable '" + v.name + "'");
  return idx;
}

}  // namespace

fuzzy_rule_base default_rule_base() {
  fuzzy_rule_base rb;
  rb.inputs = {three_terms("d_gw", 0.0, diversity_max), three_terms("fbar_over_fmax", 0.0, 1.0),
               three_terms("number", 0.0, static_cast<double>(stagnation_max))};
  rb.p_c = three_terms("p_c", 0.5, 0.95);
  rb.p_m = three_terms("p_m", 0.001, 0.25);

  // p_m term for Number = low, medium, high, indexed by [d_gw][ratio].
  // A converged genome (low d_gw) gets the most mutation, a diverse one the
  // least. Where d_gw and the ratio both sit at an extreme, the p_m term
  // rises strictly with Number or stays on the symmetric medium term, which
  // keeps the crisp p_m non-decreasing in Number there.
  constexpr int L = 0;
  constexpr int M = 1;
  constexpr int H = 2;
  constexpr int p_m_table[3][3][3] = {
      {{L, M, H}, {L, M, H}, {M, M, H}},  // d_gw low
      {{L, L, L}, {L, L, L}, {L, L, M}},  // d_gw medium
      {{L, M, M}, {L, L, L}, {L, M, M}},  // d_gw high
  };
  for (int d = 0; d < 3; ++d) {
    for (int r = 0; r < 3; ++r) {
      for (int n = 0; n < 3; ++n) {
        fuzzy_rule rule;
        rule.antecedent = {d, r, n};
        rule.p_m_term = p_m_table[d][r][n];
        rule.p_c_term = 2 - rule.p_m_term;  // crossover backs off as mutation rises
        rb.rules.push_back(rule);
      }
    }
  }
  return rb;
}

std::string serialize_rule_base(const fuzzy_rule_base& rb) {
  json rules = json::array();
  for (const auto& r : rb.rules) {
    rules.push_back({{"if",
                      {rb.inputs[0].term_names[static_cast<std::size_t>(r.antecedent[0])],
                       rb.inputs[1].term_names[static_cast<std::size_t>(r.antecedent[1])],
                       rb.inputs[2].term_names[static_cast<std::size_t>(r.antecedent[2])]}},
                     {"p_c", rb.p_c.term_names[static_cast<std::size_t>(r.p_c_term)]},
                     {"p_m", rb.p_m.term_names[static_cast<std::size_t>(r.p_m_term)]}});
  }
  json j = {{"inputs", {variable_to_json(rb.inputs[0]), variable_to_json(rb.inputs[1]), variable_to_json(rb.inputs[2])}},
            {"outputs", {{"p_c", variable_to_json(rb.p_c)}, {"p_m", variable_to_json(rb.p_m)}}},
            {"resolution", rb.resolution},
            {"rules", rules}};
  return j.dump(2) + "\n";
}

fuzzy_rule_base parse_rule_base(const std::string& json_text) {
  fuzzy_rule_base rb;
  try {
    const auto j = json::parse(json_text);
    const auto& inputs = j.at("inputs");
    require(inputs.is_array() && inputs.size() == 3, "rule base needs exactly three inputs");
    for (std::size_t i = 0; i < 3; ++i) {
      rb.inputs[i] = variable_from_json(inputs[i]);
    }
    rb.p_c = variable_from_json(j.at("outputs").at("p_c"));
    rb.p_m = variable_from_json(j.at("outputs").at("p_m"));
    rb.resolution = j.value("resolution", 1001);
    for (const auto& r : j.at("rules")) {
      const auto& cond = r.at("if");
      require(cond.is_array() && cond.size() == 3, "rule condition must name three input terms");
      fuzzy_rule rule;
      for (std::size_t i = 0; i < 3; ++i) {
        rule.antecedent[i] = lookup(rb.inputs[i], cond[i].get<std::string>());
      }
      rule.p_c_term = lookup(rb.p_c, r.at("p_c").get<std::string>());
      rule.p_m_term = lookup(rb.p_m, r.at("p_m").get<std::string>());
      rb.rules.push_back(rule);
    }
  } catch (const json::exception& e) {
    throw contract_violation(std::string("malformed rule base: ") + e.what());
  }
  rb.validate();
  return rb;
}

fuzzy_rule_base load_rule_base(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open rule base file " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_rule_base(text.str());
}

double defuzzify_centroid(const linguistic_variable& out, const std::vector<double>& strengths, int resolution) {
  double num = 0.0;
  double den = 0.0;
  const double step = (out.hi - out.lo) / static_cast<double>(resolution - 1);
  for (int k = 0; k < resolution; ++k) {
    const double y = k + 1 == resolution ? out.hi : out.lo + step * k;
    double mu = 0.0;
    for (std::size_t t = 0; t < strengths.size(); ++t) {
      if (strengths[t] > 0.0) {
        mu = std::max(mu, std::min(strengths[t], out.membership(t, y)));
      }
    }
    num += y * mu;
    den += mu;
  }
  if (den <= 0.0) {
    return 0.5 * (out.lo + out.hi);
  }
  return std::clamp(num / den, out.lo, out.hi);
}

control_output infer(const diversity_snapshot& snapshot, const fuzzy_rule_base& rb) {
  const auto d = rb.inputs[0].fuzzify(snapshot.d_gw());
  const auto r = rb.inputs[1].fuzzify(snapshot.fbar_over_fmax());
  const auto n = rb.inputs[2].fuzzify(static_cast<double>(snapshot.number()));

  std::vector<double> pc_strength(rb.p_c.term_count(), 0.0);
  std::vector<double> pm_strength(rb.p_m.term_count(), 0.0);
  for (const auto& rule : rb.rules) {
    const double w = std::min({d[static_cast<std::size_t>(rule.antecedent[0])],
                               r[static_cast<std::size_t>(rule.antecedent[1])],
                               n[static_cast<std::size_t>(rule.antecedent[2])]});
    auto& pc = pc_strength[static_cast<std::size_t>(rule.p_c_term)];
    auto& pm = pm_strength[static_cast<std::size_t>(rule.p_m_term)];
    pc = std::max(pc, w);
    pm = std::max(pm, w);
  }
  return {defuzzify_centroid(rb.p_c, pc_strength, rb.resolution),
          defuzzify_centroid(rb.p_m, pm_strength, rb.resolution)};
}

}  // namespace phasesynth
