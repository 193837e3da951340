//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#include "rcmt/metrics.h"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace rcmt {

ValenceTable::ValenceTable(std::map<ElementSymbol, std::vector<int>> allowed)
    : allowed_(std::move(allowed)) {
  for (auto &[element, valences]: allowed_) {
    if (valences.empty())
      throw std::invalid_argument("empty valence set for "
                                  + std::string(element.symbol()));
    for (int v: valences) {
      if (v < 1)
        throw std::invalid_argument("allowed valence below 1 for "
                                    + std::string(element.symbol()));
    }
    std::sort(valences.begin(), valences.end());
  }
}

const ValenceTable &ValenceTable::defaults() {
  static const ValenceTable table = [] {
    std::map<ElementSymbol, std::vector<int>> m;
    auto add = [&m](const char *sym, std::vector<int> v) {
      m.emplace(*ElementSymbol::from_symbol(sym), std::move(v));
    };
    add("H", { 1 });
    add("C", { 4 });
    add("N", { 3 });
    add("O", { 2 });
    add("F", { 1 });
    add("B", { 3 });
    add("Si", { 4 });
    add("P", { 3, 5 });
    add("S", { 2, 4, 6 });
    add("Cl", { 1 });
    add("Br", { 1 });
    add("I", { 1 });
    return ValenceTable(std::move(m));
  }();
  return table;
}

const std::vector<int> *ValenceTable::allowed(ElementSymbol element) const {
  auto it = allowed_.find(element);
  return it == allowed_.end() ? nullptr : &it->second;
}

namespace {
bool stable_with(double valence, const std::vector<int> *allowed,
                 StabilityMode mode) {
  if (allowed == nullptr)
    return false;
  if (mode == StabilityMode::kImplicitH)
    return valence <= allowed->back();
  return std::any_of(allowed->begin(), allowed->end(),
                     [valence](int v) { return valence == v; });
}
}  // namespace

bool atom_stable(const MolecularGraph &g, std::size_t i,
                 const ValenceTable &table, StabilityMode mode,
                 AromaticValence aromatic) {
  const double valence = valence_sum(g, i, aromatic);
  return stable_with(valence, table.allowed(g.atoms()[i - 1].element), mode);
}

bool molecule_stable(const MolecularGraph &g, const ValenceTable &table,
                     StabilityMode mode, AromaticValence aromatic) {
  const auto valences = valence_sums(g, aromatic);
  for (std::size_t k = 0; k < g.num_atoms(); ++k) {
    if (!stable_with(valences[k], table.allowed(g.atoms()[k].element), mode))
      return false;
  }
  return true;
}

bool is_valid(const MolecularGraph &g, const ValenceTable &table) {
  return !g.empty() && molecule_stable(g, table, StabilityMode::kImplicitH);
}

MetricsReport batch_metrics(std::span<const MolecularGraph> molecules,
                            const ValenceTable &table, StabilityMode mode) {
  if (molecules.empty())
    throw std::invalid_argument("batch_metrics needs at least one molecule");

  MetricsReport r;
  std::unordered_set<std::uint64_t> unique;
  for (const MolecularGraph &g: molecules) {
    ++r.n_molecules;
    const auto valences = valence_sums(g);
    bool all_stable = true, all_implicit = true;
    for (std::size_t k = 0; k < g.num_atoms(); ++k) {
      const auto *allowed = table.allowed(g.atoms()[k].element);
      ++r.n_atoms;
      if (allowed == nullptr)
        ++r.n_unknown_element_atoms;
      if (stable_with(valences[k], allowed, mode))
        ++r.n_stable_atoms;
      else
        all_stable = false;
      all_implicit = all_implicit
                     && stable_with(valences[k], allowed,
                                    StabilityMode::kImplicitH);
    }
    if (all_stable)
      ++r.n_stable_molecules;
    if (!g.empty() && all_implicit) {
      ++r.n_valid;
      unique.insert(canonical_hash(g));
    }
  }
  r.n_unique = unique.size();

  auto pct = [](std::size_t count, std::size_t total) {
    return total == 0 ? 0.0
                      : 100.0 * static_cast<double>(count)
                            / static_cast<double>(total);
  };
  r.atom_stability_pct = pct(r.n_stable_atoms, r.n_atoms);
  r.mol_stability_pct = pct(r.n_stable_molecules, r.n_molecules);
  r.validity_pct = pct(r.n_valid, r.n_molecules);
  r.uniqueness_pct = pct(r.n_unique, r.n_valid);
  return r;
}

}  // namespace rcmt
