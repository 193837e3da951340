//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#include "rcmt/molgraph.h"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <string>
#include <unordered_set>
#include <utility>

namespace rcmt {

void append_fixed4(std::string &out, std::int64_t units) {
  if (units < 0)
    out.push_back('-');
  std::uint64_t mag = units < 0 ? 0 - static_cast<std::uint64_t>(units)
                                : static_cast<std::uint64_t>(units);
  char buf[24];
  auto res = std::to_chars(buf, buf + sizeof(buf), mag / kUnitsPerAngstrom);
  out.append(buf, res.ptr);
  out.push_back('.');
  std::uint64_t frac = mag % kUnitsPerAngstrom;
  char digits[4];
  for (int k = 3; k >= 0; --k) {
    digits[k] = static_cast<char>('0' + frac % 10);
    frac /= 10;
  }
  out.append(digits, 4);
}

std::string render_fixed4(std::int64_t units) {
  std::string out;
  append_fixed4(out, units);
  return out;
}

std::optional<std::int64_t> parse_fixed4(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  if (dot == std::string_view::npos || dot == 0 || text.size() - dot - 1 != 4)
    return std::nullopt;
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac = text.substr(dot + 1);
  if (whole.size() > 1 && whole.front() == '0')
    return std::nullopt;
  auto all_digits = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!all_digits(whole) || !all_digits(frac) || whole.size() > 5)
    return std::nullopt;

  std::int64_t value = 0;
  for (char c: whole)
    value = value * 10 + (c - '0');
  for (char c: frac)
    value = value * 10 + (c - '0');
  if (negative) {
    if (value == 0)
      return std::nullopt;
    value = -value;
  }
  if (!QuantizedCoord::in_range(value))
    return std::nullopt;
  return value;
}

QuantizedCoord::QuantizedCoord(std::int64_t x, std::int64_t y, std::int64_t z)
    : v_ { x, y, z } {
  if (!in_range(x) || !in_range(y) || !in_range(z))
    throw GraphError("coordinate exceeds 10^4 angstrom");
}

std::optional<BondOrder> bond_order_from_int(int value) {
  if (value < 1 || value > 4)
    return std::nullopt;
  return static_cast<BondOrder>(value);
}

namespace {
std::uint64_t pair_key(int i, int j) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32)
         | static_cast<std::uint32_t>(j);
}
}  // namespace

MolecularGraph::MolecularGraph(std::vector<Atom> atoms, std::vector<Bond> bonds)
    : atoms_(std::move(atoms)), bonds_(std::move(bonds)) {
  const auto n = static_cast<long long>(atoms_.size());
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(bonds_.size());
  for (const Bond &b: bonds_) {
    if (b.i < 1 || b.j < 1 || b.i > n || b.j > n) {
      throw GraphError("bond " + std::to_string(b.i) + "-" + std::to_string(b.j)
                       + " references a missing atom");
    }
    if (b.i == b.j)
      throw GraphError("self-bond on atom " + std::to_string(b.i));
    if (b.i > b.j) {
      throw GraphError("bond " + std::to_string(b.i) + "-" + std::to_string(b.j)
                       + " is not oriented i < j");
    }
    if (!bond_order_from_int(to_int(b.order)))
      throw GraphError("invalid bond order");
    if (!seen.insert(pair_key(b.i, b.j)).second) {
      throw GraphError("duplicate bond " + std::to_string(b.i) + "-"
                       + std::to_string(b.j));
    }
  }
}

MolecularGraph MolecularGraph::from_unoriented(std::vector<Atom> atoms,
                                               std::vector<Bond> bonds) {
  for (Bond &b: bonds) {
    if (b.i > b.j)
      std::swap(b.i, b.j);
  }
  return MolecularGraph(std::move(atoms), std::move(bonds));
}

std::vector<Bond> MolecularGraph::sorted_bonds() const {
  // Two stable counting-sort passes: by j, then by i.
  const std::size_t n = atoms_.size();
  auto pass = [n](const std::vector<Bond> &in, auto key) {
    std::vector<std::size_t> start(n + 2, 0);
    for (const Bond &b: in)
      ++start[key(b) + 1];
    for (std::size_t k = 1; k < start.size(); ++k)
      start[k] += start[k - 1];
    std::vector<Bond> out(in.size());
    for (const Bond &b: in)
      out[start[key(b)]++] = b;
    return out;
  };
  auto by_j = pass(bonds_, [](const Bond &b) { return b.j; });
  return pass(by_j, [](const Bond &b) { return b.i; });
}

bool operator==(const MolecularGraph &lhs, const MolecularGraph &rhs) {
  return lhs.atoms_ == rhs.atoms_ && lhs.bonds_.size() == rhs.bonds_.size()
         && lhs.sorted_bonds() == rhs.sorted_bonds();
}

MolecularGraph disjoint_union(const MolecularGraph &lhs,
                              const MolecularGraph &rhs) {
  std::vector<Atom> atoms = lhs.atoms();
  atoms.insert(atoms.end(), rhs.atoms().begin(), rhs.atoms().end());
  std::vector<Bond> bonds = lhs.bonds();
  const int shift = static_cast<int>(lhs.num_atoms());
  for (Bond b: rhs.bonds()) {
    b.i += shift;
    b.j += shift;
    bonds.push_back(b);
  }
  return MolecularGraph(std::move(atoms), std::move(bonds));
}

BondMatrix bond_matrix(const MolecularGraph &g) {
  BondMatrix m(g.num_atoms());
  for (const Bond &b: g.bonds()) {
    m.set(b.i, b.j, to_int(b.order));
    m.set(b.j, b.i, to_int(b.order));
  }
  return m;
}

namespace {
void check_index(const MolecularGraph &g, std::size_t i) {
  if (i < 1 || i > g.num_atoms()) {
    throw std::out_of_range("atom index " + std::to_string(i)
                            + " out of range 1.."
                            + std::to_string(g.num_atoms()));
  }
}
}  // namespace

int valence_sum(const MolecularGraph &g, std::size_t i) {
  check_index(g, i);
  int sum = 0;
  const int idx = static_cast<int>(i);
  for (const Bond &b: g.bonds()) {
    if (b.i == idx || b.j == idx)
      sum += b.order == BondOrder::kAromatic ? 1 : to_int(b.order);
  }
  return sum;
}

double valence_sum(const MolecularGraph &g, std::size_t i,
                   AromaticValence mode) {
  check_index(g, i);
  int halves = 0;
  const int idx = static_cast<int>(i);
  for (const Bond &b: g.bonds()) {
    if (b.i != idx && b.j != idx)
      continue;
    if (b.order == BondOrder::kAromatic)
      halves += mode == AromaticValence::kKekuleFree ? 3 : 2;
    else
      halves += 2 * to_int(b.order);
  }
  return halves / 2.0;
}

std::vector<double> valence_sums(const MolecularGraph &g,
                                 AromaticValence mode) {
  std::vector<int> halves(g.num_atoms(), 0);
  for (const Bond &b: g.bonds()) {
    int h = 2 * to_int(b.order);
    if (b.order == BondOrder::kAromatic)
      h = mode == AromaticValence::kKekuleFree ? 3 : 2;
    halves[b.i - 1] += h;
    halves[b.j - 1] += h;
  }
  std::vector<double> out(halves.size());
  std::transform(halves.begin(), halves.end(), out.begin(),
                 [](int h) { return h / 2.0; });
  return out;
}

}  // namespace rcmt
