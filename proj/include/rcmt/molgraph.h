//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RCMT_MOLGRAPH_H_
#define RCMT_MOLGRAPH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rcmt/element.h"

namespace rcmt {

/// Coordinates are stored as integer multiples of this grid, in angstrom.
inline constexpr double kGridAngstrom = 1e-4;
/// Grid units per angstrom.
inline constexpr std::int64_t kUnitsPerAngstrom = 10'000;
/// Largest admissible |component| in grid units (10^4 angstrom).
inline constexpr std::int64_t kMaxCoordUnits = 100'000'000;

class GraphError: public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Renders a grid value as a decimal with exactly four fractional digits.
/// Negative values carry a leading '-'; zero is always "0.0000".
std::string render_fixed4(std::int64_t units);
void append_fixed4(std::string &out, std::int64_t units);

/// Strict inverse of render_fixed4. Rejects anything render_fixed4 would not
/// produce (missing digits, "+", leading zeros, "-0.0000", out of range).
std::optional<std::int64_t> parse_fixed4(std::string_view text);

/// A 3D position on the 10^-4 angstrom grid. Exact; no floating point.
class QuantizedCoord {
public:
  constexpr QuantizedCoord() = default;
  /// Throws GraphError if any component exceeds kMaxCoordUnits in magnitude.
  QuantizedCoord(std::int64_t x, std::int64_t y, std::int64_t z);

  std::int64_t x() const { return v_[0]; }
  std::int64_t y() const { return v_[1]; }
  std::int64_t z() const { return v_[2]; }
  std::int64_t operator[](std::size_t i) const { return v_[i]; }

  double x_angstrom() const { return v_[0] * kGridAngstrom; }
  double y_angstrom() const { return v_[1] * kGridAngstrom; }
  double z_angstrom() const { return v_[2] * kGridAngstrom; }

  static bool in_range(std::int64_t units) {
    return units >= -kMaxCoordUnits && units <= kMaxCoordUnits;
  }

  friend bool operator==(const QuantizedCoord &,
                         const QuantizedCoord &) = default;

private:
  std::int64_t v_[3] = { 0, 0, 0 };
};

struct Atom {
  ElementSymbol element;
  QuantizedCoord position;

  friend bool operator==(const Atom &, const Atom &) = default;
};

enum class BondOrder : std::uint8_t {
  kSingle = 1,
  kDouble = 2,
  kTriple = 3,
  kAromatic = 4,
};

std::optional<BondOrder> bond_order_from_int(int value);

inline int to_int(BondOrder order) {
  return static_cast<int>(order);
}

/// An undirected bond between 1-based atom indices, stored with i < j.
struct Bond {
  int i;
  int j;
  BondOrder order;

  friend bool operator==(const Bond &, const Bond &) = default;
};

/// G = (V, E, A, C): an ordered atom list plus typed bonds.
///
/// Immutable once constructed. The constructor checks that every bond
/// references existing atoms with 1 <= i < j <= N and that no (i, j) pair
/// appears twice; violations throw GraphError. Bonds keep the order they
/// were given in, but equality compares bond sets.
class MolecularGraph {
public:
  MolecularGraph() = default;
  MolecularGraph(std::vector<Atom> atoms, std::vector<Bond> bonds);

  /// Accepts bonds in either orientation and flips them to i < j.
  static MolecularGraph from_unoriented(std::vector<Atom> atoms,
                                        std::vector<Bond> bonds);

  const std::vector<Atom> &atoms() const { return atoms_; }
  const std::vector<Bond> &bonds() const { return bonds_; }
  std::size_t num_atoms() const { return atoms_.size(); }
  std::size_t num_bonds() const { return bonds_.size(); }
  bool empty() const { return atoms_.empty(); }

  /// Bonds ordered ascending by (i, j), in O(N + |E|).
  std::vector<Bond> sorted_bonds() const;

  friend bool operator==(const MolecularGraph &lhs, const MolecularGraph &rhs);

private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
};

/// Two graphs placed side by side; bond indices of rhs are shifted by
/// lhs.num_atoms().
MolecularGraph disjoint_union(const MolecularGraph &lhs,
                              const MolecularGraph &rhs);

/// Dense symmetric bond-order matrix, row-major, entries in {0..4}.
class BondMatrix {
public:
  explicit BondMatrix(std::size_t n): n_(n), data_(n * n, 0) { }

  std::size_t size() const { return n_; }
  /// 1-based access, matching bond indices.
  int at(std::size_t i, std::size_t j) const {
    return data_[(i - 1) * n_ + (j - 1)];
  }
  void set(std::size_t i, std::size_t j, int value) {
    data_[(i - 1) * n_ + (j - 1)] = static_cast<std::uint8_t>(value);
  }

private:
  std::size_t n_;
  std::vector<std::uint8_t> data_;
};

BondMatrix bond_matrix(const MolecularGraph &g);

/// How an aromatic bond contributes to a valence sum.
enum class AromaticValence {
  kInteger,    // counts 1
  kKekuleFree, // counts 1.5
};

/// Sum of explicit bond orders at 1-based atom i, aromatic counted as 1.
/// Throws std::out_of_range for a bad index.
int valence_sum(const MolecularGraph &g, std::size_t i);

/// Same, with a selectable aromatic contribution. Results are exact
/// half-integers.
double valence_sum(const MolecularGraph &g, std::size_t i,
                   AromaticValence mode);

/// valence_sum for every atom at once, in O(N + |E|). Index 0 is atom 1.
std::vector<double> valence_sums(const MolecularGraph &g,
                                 AromaticValence mode = AromaticValence::kInteger);

/// Topological digest: invariant under atom permutation and independent of
/// coordinates. Computed by Weisfeiler-Lehman color refinement over
/// (element, bond order) labels.
std::uint64_t canonical_hash(const MolecularGraph &g);

}  // namespace rcmt

#endif  // RCMT_MOLGRAPH_H_
