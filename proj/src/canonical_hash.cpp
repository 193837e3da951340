//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cstdint>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rcmt/molgraph.h"

namespace rcmt {
namespace {
std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t combine(std::uint64_t seed, std::uint64_t value) {
  return splitmix(seed ^ (splitmix(value) + 0x9e3779b97f4a7c15ULL
                          + (seed << 6) + (seed >> 2)));
}

std::size_t count_distinct(const std::vector<std::uint64_t> &colors) {
  return std::unordered_set<std::uint64_t>(colors.begin(), colors.end()).size();
}
}  // namespace

std::uint64_t canonical_hash(const MolecularGraph &g) {
  const std::size_t n = g.num_atoms();

  // CSR adjacency: (neighbor, order) per atom.
  std::vector<std::size_t> offset(n + 1, 0);
  for (const Bond &b: g.bonds()) {
    ++offset[b.i];
    ++offset[b.j];
  }
  for (std::size_t k = 1; k <= n; ++k)
    offset[k] += offset[k - 1];
  std::vector<std::pair<std::size_t, int>> adj(offset[n]);
  {
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (const Bond &b: g.bonds()) {
      adj[fill[b.i - 1]++] = { static_cast<std::size_t>(b.j - 1),
                               to_int(b.order) };
      adj[fill[b.j - 1]++] = { static_cast<std::size_t>(b.i - 1),
                               to_int(b.order) };
    }
  }

  std::vector<std::uint64_t> colors(n);
  for (std::size_t v = 0; v < n; ++v)
    colors[v] = splitmix(g.atoms()[v].element.atomic_number());

  // The class count is isomorphism-invariant, so stopping once it stops
  // growing keeps the digest permutation-invariant.
  std::size_t classes = count_distinct(colors);
  std::vector<std::uint64_t> next(n);
  std::vector<std::pair<std::uint64_t, int>> around;
  for (std::size_t round = 0; round < n; ++round) {
    for (std::size_t v = 0; v < n; ++v) {
      around.clear();
      for (std::size_t e = offset[v]; e < offset[v + 1]; ++e)
        around.emplace_back(colors[adj[e].first], adj[e].second);
      std::sort(around.begin(), around.end());
      std::uint64_t h = combine(colors[v], around.size());
      for (const auto &[c, order]: around)
        h = combine(combine(h, c), static_cast<std::uint64_t>(order));
      next[v] = h;
    }
    colors.swap(next);
    const std::size_t refined = count_distinct(colors);
    if (refined == classes)
      break;
    classes = refined;
  }

  std::sort(colors.begin(), colors.end());
  std::uint64_t digest = combine(n, g.num_bonds());
  for (std::uint64_t c: colors)
    digest = combine(digest, c);
  return digest;
}

}  // namespace rcmt
