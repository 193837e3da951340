//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RCMT_ENERGY_H_
#define RCMT_ENERGY_H_

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "rcmt/metrics.h"
#include "rcmt/molgraph.h"

namespace rcmt {

using Vec3 = std::array<double, 3>;

/// Source of total and per-atom energies for the stability scores.
class EnergyOracle {
public:
  virtual ~EnergyOracle() = default;

  virtual double total_energy(const MolecularGraph &g) const = 0;
  /// Energy attributed to 1-based atom i.
  virtual double local_energy(const MolecularGraph &g, std::size_t i) const = 0;
  /// local_energy for every atom; index 0 is atom 1.
  virtual std::vector<double> local_energies(const MolecularGraph &g) const;

  /// E_ref for the molecular score.
  virtual double reference_energy() const = 0;
  /// Per-element reference for the atomic score.
  virtual double local_reference(ElementSymbol element) const = 0;
};

/// Harmonic bond-stretch plus valence-penalty model in reduced units:
///
///   E = sum_bonds k (l - l0)^2 + sum_atoms p d^2
///
/// where l0 comes from a small (element pair, order) length table, falling
/// back to 1.5 A, and d is the distance from the atom's valence sum to the
/// nearest allowed valence (0 for elements outside the table). An atom's
/// local energy is half of each incident bond term plus its own valence
/// term, so local energies sum to the total.
class HarmonicOracle final: public EnergyOracle {
public:
  struct Params {
    double bond_k = 10.0;
    double valence_p = 5.0;
    double fallback_length = 1.5;
  };

  HarmonicOracle();
  explicit HarmonicOracle(Params params,
                          const ValenceTable &table = ValenceTable::defaults());

  double total_energy(const MolecularGraph &g) const override;
  double local_energy(const MolecularGraph &g, std::size_t i) const override;
  std::vector<double> local_energies(const MolecularGraph &g) const override;
  double reference_energy() const override { return e_ref_; }
  double local_reference(ElementSymbol element) const override;

  /// Energy at arbitrary real positions (angstrom), one per atom.
  double total_energy(const MolecularGraph &g,
                      std::span<const Vec3> positions) const;
  /// Analytic dE/dr for each atom at the given positions.
  std::vector<Vec3> gradient(const MolecularGraph &g,
                             std::span<const Vec3> positions) const;

  /// Equilibrium length for a bond, in angstrom.
  double reference_length(ElementSymbol a, ElementSymbol b,
                          BondOrder order) const;

  /// Sets E_ref to the mean total energy of the corpus and each element's
  /// local reference to the mean local energy of its atoms. An empty corpus
  /// resets every reference to 0.
  void calibrate(std::span<const MolecularGraph> corpus);

  void set_reference_energy(double e_ref) { e_ref_ = e_ref; }
  void set_local_reference(ElementSymbol element, double value) {
    local_ref_[element] = value;
  }

  const Params &params() const { return params_; }

private:
  double valence_term(const MolecularGraph &g, std::size_t i,
                      double valence) const;
  double bond_term(const MolecularGraph &g, const Bond &b,
                   std::span<const Vec3> positions) const;

  Params params_;
  const ValenceTable *table_;
  double e_ref_ = 0;
  std::map<ElementSymbol, double> local_ref_;
};

/// Atom positions of g in angstrom.
std::vector<Vec3> positions_of(const MolecularGraph &g);

}  // namespace rcmt

#endif  // RCMT_ENERGY_H_
