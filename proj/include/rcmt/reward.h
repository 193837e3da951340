//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RCMT_REWARD_H_
#define RCMT_REWARD_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "rcmt/energy.h"
#include "rcmt/metrics.h"
#include "rcmt/molgraph.h"

namespace rcmt {

class RewardError: public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// k_B * T in reduced energy units.
class Thermostat {
public:
  Thermostat() = default;
  /// Throws RewardError unless kT is finite and positive.
  explicit Thermostat(double kt);

  double kt() const { return kt_; }

private:
  double kt_ = 1.0;
};

/// Weights of the four reward terms. Construction enforces nonnegative
/// weights with w_mol + w_atom > w_div + w_valid.
class RewardWeights {
public:
  RewardWeights() = default;
  RewardWeights(double w_mol, double w_atom, double w_div, double w_valid);

  double w_mol() const { return w_mol_; }
  double w_atom() const { return w_atom_; }
  double w_div() const { return w_div_; }
  double w_valid() const { return w_valid_; }

private:
  double w_mol_ = 0.4;
  double w_atom_ = 0.3;
  double w_div_ = 0.2;
  double w_valid_ = 0.1;
};

struct RewardTerms {
  double s_mol;
  double s_atom;
  double diversity;
  double validity;
};

struct RewardBreakdown {
  double s_mol;
  double s_atom;
  double diversity;
  double validity;
  double total;
};

/// exp(-(E_total - E_ref) / kT). Throws RewardError on a non-finite energy.
double molecular_stability_score(const MolecularGraph &g,
                                 const EnergyOracle &oracle,
                                 const Thermostat &thermo);

/// Mean over atoms of exp(-(E_local - E_local,ref) / kT). Throws RewardError
/// for an empty molecule or a non-finite local energy.
double atomic_stability_score(const MolecularGraph &g,
                              const EnergyOracle &oracle,
                              const Thermostat &thermo);

using DigestSet = std::unordered_set<std::uint64_t>;

/// 1 if g's topology is not in `seen`, else 0. Does not modify `seen`.
double diversity(const MolecularGraph &g, const DigestSet &seen);

/// Weighted sum of the terms, correctly rounded, so unit terms with the
/// default weights give exactly 1.0.
RewardBreakdown combine(const RewardTerms &terms, const RewardWeights &weights);

RewardBreakdown reward(const MolecularGraph &g, const RewardWeights &weights,
                       const EnergyOracle &oracle, const Thermostat &thermo,
                       const DigestSet &seen,
                       const ValenceTable &table = ValenceTable::defaults());

/// Mean over t of min(r_t A_t, clip(r_t, 1 - eps, 1 + eps) A_t).
///
/// Throws RewardError for mismatched or empty inputs, a nonpositive ratio,
/// or eps outside (0, 1).
double ppo_clip_objective(std::span<const double> ratios,
                          std::span<const double> advantages,
                          double epsilon = 0.2);

/// Gradient ascent step: params + lr * gradient.
std::vector<double> policy_step(std::span<const double> params,
                                std::span<const double> gradient, double lr);

/// Reward settings read from a JSON document:
///
///   {"weights": {"mol": 0.4, "atom": 0.3, "div": 0.2, "valid": 0.1},
///    "kT": 1.0, "epsilon": 0.2, "lr": 1e-4,
///    "reference_corpus": "refs.sdf"}
///
/// Every key is optional. A relative corpus path resolves against the
/// config file's directory.
struct RewardConfig {
  RewardWeights weights;
  Thermostat thermostat;
  double epsilon = 0.2;
  double lr = 1e-4;
  std::optional<std::filesystem::path> reference_corpus;

  /// Throws RewardError for bad values or malformed JSON.
  static RewardConfig from_json_text(const std::string &text,
                                     const std::filesystem::path &base = {});
  static RewardConfig load(const std::filesystem::path &path);
};

}  // namespace rcmt

#endif  // RCMT_REWARD_H_
