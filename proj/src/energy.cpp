//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#include "rcmt/energy.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace rcmt {
namespace {
struct LengthEntry {
  const char *a;
  const char *b;
  BondOrder order;
  double length;
};

constexpr LengthEntry kLengths[] = {
  { "C", "C", BondOrder::kSingle, 1.54 },
  { "C", "C", BondOrder::kDouble, 1.34 },
  { "C", "C", BondOrder::kTriple, 1.20 },
  { "C", "C", BondOrder::kAromatic, 1.40 },
  { "C", "H", BondOrder::kSingle, 1.09 },
  { "C", "O", BondOrder::kSingle, 1.43 },
  { "C", "O", BondOrder::kDouble, 1.23 },
  { "C", "N", BondOrder::kSingle, 1.47 },
  { "C", "N", BondOrder::kDouble, 1.29 },
  { "C", "N", BondOrder::kTriple, 1.16 },
  { "C", "N", BondOrder::kAromatic, 1.34 },
  { "C", "F", BondOrder::kSingle, 1.35 },
  { "O", "H", BondOrder::kSingle, 0.96 },
  { "N", "H", BondOrder::kSingle, 1.01 },
  { "N", "N", BondOrder::kSingle, 1.45 },
  { "N", "O", BondOrder::kSingle, 1.40 },
};

double dist(const Vec3 &p, const Vec3 &q) {
  const double dx = p[0] - q[0], dy = p[1] - q[1], dz = p[2] - q[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}
}  // namespace

std::vector<double> EnergyOracle::local_energies(const MolecularGraph &g) const {
  std::vector<double> out(g.num_atoms());
  for (std::size_t k = 1; k <= g.num_atoms(); ++k)
    out[k - 1] = local_energy(g, k);
  return out;
}

std::vector<Vec3> positions_of(const MolecularGraph &g) {
  std::vector<Vec3> out;
  out.reserve(g.num_atoms());
  for (const Atom &a: g.atoms()) {
    out.push_back({ a.position.x_angstrom(), a.position.y_angstrom(),
                    a.position.z_angstrom() });
  }
  return out;
}

HarmonicOracle::HarmonicOracle(): HarmonicOracle(Params {}) { }

HarmonicOracle::HarmonicOracle(Params params, const ValenceTable &table)
    : params_(params), table_(&table) { }

double HarmonicOracle::reference_length(ElementSymbol a, ElementSymbol b,
                                        BondOrder order) const {
  for (const LengthEntry &e: kLengths) {
    const auto ea = *ElementSymbol::from_symbol(e.a);
    const auto eb = *ElementSymbol::from_symbol(e.b);
    if (e.order == order && ((ea == a && eb == b) || (ea == b && eb == a)))
      return e.length;
  }
  return params_.fallback_length;
}

double HarmonicOracle::valence_term(const MolecularGraph &g, std::size_t i,
                                    double valence) const {
  const auto *allowed = table_->allowed(g.atoms()[i - 1].element);
  if (allowed == nullptr)
    return 0;
  double best = std::numeric_limits<double>::infinity();
  for (int v: *allowed)
    best = std::min(best, std::fabs(valence - v));
  return params_.valence_p * best * best;
}

double HarmonicOracle::bond_term(const MolecularGraph &g, const Bond &b,
                                 std::span<const Vec3> positions) const {
  const double l0 = reference_length(g.atoms()[b.i - 1].element,
                                     g.atoms()[b.j - 1].element, b.order);
  const double stretch = dist(positions[b.i - 1], positions[b.j - 1]) - l0;
  return params_.bond_k * stretch * stretch;
}

double HarmonicOracle::total_energy(const MolecularGraph &g,
                                    std::span<const Vec3> positions) const {
  if (positions.size() != g.num_atoms())
    throw std::invalid_argument("one position per atom required");
  double e = 0;
  for (const Bond &b: g.bonds())
    e += bond_term(g, b, positions);
  const auto valences = valence_sums(g);
  for (std::size_t k = 1; k <= g.num_atoms(); ++k)
    e += valence_term(g, k, valences[k - 1]);
  return e;
}

double HarmonicOracle::total_energy(const MolecularGraph &g) const {
  const auto pos = positions_of(g);
  return total_energy(g, pos);
}

double HarmonicOracle::local_energy(const MolecularGraph &g,
                                    std::size_t i) const {
  const double valence = valence_sum(g, i, AromaticValence::kInteger);
  const auto pos = positions_of(g);
  const int idx = static_cast<int>(i);
  double e = valence_term(g, i, valence);
  for (const Bond &b: g.bonds()) {
    if (b.i == idx || b.j == idx)
      e += 0.5 * bond_term(g, b, pos);
  }
  return e;
}

std::vector<double> HarmonicOracle::local_energies(
    const MolecularGraph &g) const {
  const auto pos = positions_of(g);
  const auto valences = valence_sums(g);
  std::vector<double> e(g.num_atoms());
  for (std::size_t k = 1; k <= g.num_atoms(); ++k)
    e[k - 1] = valence_term(g, k, valences[k - 1]);
  for (const Bond &b: g.bonds()) {
    const double half = 0.5 * bond_term(g, b, pos);
    e[b.i - 1] += half;
    e[b.j - 1] += half;
  }
  return e;
}

std::vector<Vec3> HarmonicOracle::gradient(
    const MolecularGraph &g, std::span<const Vec3> positions) const {
  if (positions.size() != g.num_atoms())
    throw std::invalid_argument("one position per atom required");
  std::vector<Vec3> grad(g.num_atoms(), Vec3 { 0, 0, 0 });
  for (const Bond &b: g.bonds()) {
    const Vec3 &p = positions[b.i - 1];
    const Vec3 &q = positions[b.j - 1];
    const double l = dist(p, q);
    if (l == 0)
      continue;  // coincident atoms: gradient undefined, taken as zero
    const double l0 = reference_length(g.atoms()[b.i - 1].element,
                                       g.atoms()[b.j - 1].element, b.order);
    const double scale = 2 * params_.bond_k * (l - l0) / l;
    for (std::size_t d = 0; d < 3; ++d) {
      const double f = scale * (p[d] - q[d]);
      grad[b.i - 1][d] += f;
      grad[b.j - 1][d] -= f;
    }
  }
  return grad;
}

double HarmonicOracle::local_reference(ElementSymbol element) const {
  auto it = local_ref_.find(element);
  return it == local_ref_.end() ? 0.0 : it->second;
}

void HarmonicOracle::calibrate(std::span<const MolecularGraph> corpus) {
  e_ref_ = 0;
  local_ref_.clear();
  if (corpus.empty())
    return;

  double total = 0;
  std::map<ElementSymbol, std::pair<double, std::size_t>> acc;
  for (const MolecularGraph &g: corpus) {
    total += total_energy(g);
    const auto local = local_energies(g);
    for (std::size_t k = 0; k < g.num_atoms(); ++k) {
      auto &slot = acc[g.atoms()[k].element];
      slot.first += local[k];
      ++slot.second;
    }
  }
  e_ref_ = total / static_cast<double>(corpus.size());
  for (const auto &[element, sum_count]: acc)
    local_ref_[element] = sum_count.first / static_cast<double>(sum_count.second);
}

}  // namespace rcmt
