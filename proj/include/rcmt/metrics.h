//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RCMT_METRICS_H_
#define RCMT_METRICS_H_

#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "rcmt/molgraph.h"

namespace rcmt {

/// Allowed total valences per element. Elements missing from the table are
/// "unknown": their atoms are never stable.
class ValenceTable {
public:
  ValenceTable() = default;
  /// Throws std::invalid_argument if any allowed valence is below 1.
  explicit ValenceTable(std::map<ElementSymbol, std::vector<int>> allowed);

  /// H1 C4 N3 O2 F1 B3 Si4 P{3,5} S{2,4,6} Cl1 Br1 I1.
  static const ValenceTable &defaults();

  /// Sorted allowed valences, or nullptr for an unknown element.
  const std::vector<int> *allowed(ElementSymbol element) const;

private:
  std::map<ElementSymbol, std::vector<int>> allowed_;
};

enum class StabilityMode {
  /// Hydrogens are explicit atoms: valence must equal an allowed value.
  kExplicitH,
  /// Hydrogens may be implicit: valence must not exceed the largest one.
  kImplicitH,
};

/// Stability of 1-based atom i.
bool atom_stable(const MolecularGraph &g, std::size_t i,
                 const ValenceTable &table, StabilityMode mode,
                 AromaticValence aromatic = AromaticValence::kInteger);

/// Every atom stable. Vacuously true for an empty molecule.
bool molecule_stable(const MolecularGraph &g, const ValenceTable &table,
                     StabilityMode mode,
                     AromaticValence aromatic = AromaticValence::kInteger);

/// At least one atom and every atom stable under kImplicitH. Disconnected
/// fragments are allowed.
bool is_valid(const MolecularGraph &g,
              const ValenceTable &table = ValenceTable::defaults());

/// Batch metrics. Each percentage is 100.0 * count / total; uniqueness is
/// over valid molecules only and is 0 when none are valid.
struct MetricsReport {
  double atom_stability_pct = 0;
  double mol_stability_pct = 0;
  double validity_pct = 0;
  double uniqueness_pct = 0;
  std::size_t n_molecules = 0;
  std::size_t n_atoms = 0;
  std::size_t n_stable_atoms = 0;
  std::size_t n_stable_molecules = 0;
  std::size_t n_valid = 0;
  std::size_t n_unique = 0;
  std::size_t n_unknown_element_atoms = 0;

  friend bool operator==(const MetricsReport &, const MetricsReport &) = default;
};

/// Throws std::invalid_argument on an empty batch.
MetricsReport batch_metrics(std::span<const MolecularGraph> molecules,
                            const ValenceTable &table, StabilityMode mode);

}  // namespace rcmt

#endif  // RCMT_METRICS_H_
