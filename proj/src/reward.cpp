//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#include "rcmt/reward.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rcmt {
namespace {
// Shewchuk partials summation; the result is the correctly rounded sum.
double exact_sum(std::span<const double> values) {
  std::vector<double> partials;
  for (double x: values) {
    std::size_t used = 0;
    for (double y: partials) {
      if (std::fabs(x) < std::fabs(y))
        std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0)
        partials[used++] = lo;
      x = hi;
    }
    partials.resize(used);
    partials.push_back(x);
  }
  if (partials.empty())
    return 0;

  // Sum from the top, then fix a half-way rounding as math.fsum does.
  std::size_t n = partials.size();
  double hi = partials[--n];
  double lo = 0;
  while (n > 0) {
    const double x = hi;
    const double y = partials[--n];
    hi = x + y;
    const double yr = hi - x;
    lo = y - yr;
    if (lo != 0)
      break;
  }
  if (n > 0 && ((lo < 0 && partials[n - 1] < 0)
                || (lo > 0 && partials[n - 1] > 0))) {
    const double y = lo * 2;
    const double x = hi + y;
    if (y == x - hi)
      hi = x;
  }
  return hi;
}

double boltzmann(double energy, double reference, double kt) {
  if (!std::isfinite(energy))
    throw RewardError("energy oracle returned a non-finite value");
  return std::exp(-(energy - reference) / kt);
}
}  // namespace

Thermostat::Thermostat(double kt): kt_(kt) {
  if (!(kt > 0) || !std::isfinite(kt))
    throw RewardError("kT must be positive and finite");
}

RewardWeights::RewardWeights(double w_mol, double w_atom, double w_div,
                             double w_valid)
    : w_mol_(w_mol), w_atom_(w_atom), w_div_(w_div), w_valid_(w_valid) {
  for (double w: { w_mol, w_atom, w_div, w_valid }) {
    if (!(w >= 0) || !std::isfinite(w))
      throw RewardError("reward weights must be nonnegative and finite");
  }
  if (!(w_mol + w_atom > w_div + w_valid)) {
    throw RewardError(
        "reward weights must satisfy w_mol + w_atom > w_div + w_valid");
  }
}

double molecular_stability_score(const MolecularGraph &g,
                                 const EnergyOracle &oracle,
                                 const Thermostat &thermo) {
  return boltzmann(oracle.total_energy(g), oracle.reference_energy(),
                   thermo.kt());
}

double atomic_stability_score(const MolecularGraph &g,
                              const EnergyOracle &oracle,
                              const Thermostat &thermo) {
  if (g.empty())
    throw RewardError("atomic stability is undefined for an empty molecule");
  const auto local = oracle.local_energies(g);
  double sum = 0;
  for (std::size_t k = 0; k < g.num_atoms(); ++k) {
    sum += boltzmann(local[k], oracle.local_reference(g.atoms()[k].element),
                     thermo.kt());
  }
  return sum / static_cast<double>(g.num_atoms());
}

double diversity(const MolecularGraph &g, const DigestSet &seen) {
  return seen.contains(canonical_hash(g)) ? 0.0 : 1.0;
}

RewardBreakdown combine(const RewardTerms &terms, const RewardWeights &weights) {
  const double parts[] = {
    weights.w_mol() * terms.s_mol,
    weights.w_atom() * terms.s_atom,
    weights.w_div() * terms.diversity,
    weights.w_valid() * terms.validity,
  };
  return RewardBreakdown { terms.s_mol, terms.s_atom, terms.diversity,
                           terms.validity, exact_sum(parts) };
}

RewardBreakdown reward(const MolecularGraph &g, const RewardWeights &weights,
                       const EnergyOracle &oracle, const Thermostat &thermo,
                       const DigestSet &seen, const ValenceTable &table) {
  const RewardTerms terms {
    molecular_stability_score(g, oracle, thermo),
    atomic_stability_score(g, oracle, thermo),
    diversity(g, seen),
    is_valid(g, table) ? 1.0 : 0.0,
  };
  return combine(terms, weights);
}

double ppo_clip_objective(std::span<const double> ratios,
                          std::span<const double> advantages, double epsilon) {
  if (ratios.size() != advantages.size())
    throw RewardError("ratios and advantages differ in length");
  if (ratios.empty())
    throw RewardError("ppo objective needs at least one sample");
  if (!(epsilon > 0 && epsilon < 1))
    throw RewardError("epsilon must lie in (0, 1)");

  double sum = 0;
  for (std::size_t t = 0; t < ratios.size(); ++t) {
    const double r = ratios[t];
    if (!(r > 0))
      throw RewardError("probability ratios must be positive");
    const double a = advantages[t];
    const double clipped = std::clamp(r, 1 - epsilon, 1 + epsilon);
    sum += std::min(r * a, clipped * a);
  }
  return sum / static_cast<double>(ratios.size());
}

std::vector<double> policy_step(std::span<const double> params,
                                std::span<const double> gradient, double lr) {
  if (params.size() != gradient.size())
    throw RewardError("parameter and gradient lengths differ");
  std::vector<double> out(params.size());
  for (std::size_t k = 0; k < params.size(); ++k)
    out[k] = params[k] + lr * gradient[k];
  return out;
}

RewardConfig RewardConfig::from_json_text(const std::string &text,
                                          const std::filesystem::path &base) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw RewardError(std::string("malformed reward config: ") + e.what());
  }
  if (!doc.is_object())
    throw RewardError("reward config must be a JSON object");

  auto number = [](const nlohmann::json &j, const char *key, double fallback) {
    if (!j.contains(key))
      return fallback;
    if (!j.at(key).is_number())
      throw RewardError(std::string("config key '") + key + "' must be a number");
    return j.at(key).get<double>();
  };

  RewardConfig cfg;
  if (doc.contains("weights")) {
    const auto &w = doc.at("weights");
    if (!w.is_object())
      throw RewardError("config key 'weights' must be an object");
    cfg.weights = RewardWeights(number(w, "mol", 0.4), number(w, "atom", 0.3),
                                number(w, "div", 0.2), number(w, "valid", 0.1));
  }
  cfg.thermostat = Thermostat(number(doc, "kT", 1.0));
  cfg.epsilon = number(doc, "epsilon", 0.2);
  if (!(cfg.epsilon > 0 && cfg.epsilon < 1))
    throw RewardError("epsilon must lie in (0, 1)");
  cfg.lr = number(doc, "lr", 1e-4);
  if (!(cfg.lr > 0) || !std::isfinite(cfg.lr))
    throw RewardError("lr must be positive");
  if (doc.contains("reference_corpus")) {
    const auto &p = doc.at("reference_corpus");
    if (!p.is_string())
      throw RewardError("config key 'reference_corpus' must be a string");
    std::filesystem::path path = p.get<std::string>();
    cfg.reference_corpus = path.is_relative() ? base / path : path;
  }
  return cfg;
}

RewardConfig RewardConfig::load(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw RewardError("cannot read reward config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str(), path.parent_path());
}

}  // namespace rcmt
