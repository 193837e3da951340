//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RCMT_ANALYSIS_H_
#define RCMT_ANALYSIS_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rcmt/sdf.h"

namespace rcmt {

/// Character counts of one molecule in SDF and in compact text.
struct CompressionReport {
  std::size_t sdf_chars = 0;
  std::size_t rcmt_chars = 0;
  double ratio = 0;  // sdf_chars / rcmt_chars
  double rate = 0;   // rcmt_chars / sdf_chars
  std::size_t n_atoms = 0;
  std::size_t n_bonds = 0;

  friend bool operator==(const CompressionReport &,
                         const CompressionReport &) = default;
};

struct RecordFailure {
  std::size_t record;  // 0-based
  std::string message;
};

struct CorpusSummary {
  std::vector<CompressionReport> per_molecule;
  /// Record titles (first header line), parallel to per_molecule.
  std::vector<std::string> names;
  double mean_ratio = 0;
  double median_ratio = 0;
  double mean_rate = 0;
  std::vector<RecordFailure> failures;
};

/// Number of characters (UTF-8 code points) in text.
std::size_t count_chars(std::string_view text);

/// Measures a record against its canonical write_sdf() rendering.
CompressionReport measure(const SdfRecord &record);

/// Measures a graph against the SDF text it was read from.
CompressionReport measure(std::string_view sdf_text, const MolecularGraph &graph);

/// Lower bound on the compression ratio from the alphabet/grid accounting:
///
///   (3N log10 L + N |Sigma|) / (N (|Sigma| + 3 log10(1/delta)) + |E| log10 4)
///
/// Informational only; measured ratios are not required to exceed it.
/// Throws std::invalid_argument unless n_atoms >= 1, n_bonds >= 0 and
/// coord_range, delta, sigma_size are positive.
double theoretical_bound(double n_atoms, double n_bonds, double coord_range,
                         double delta = 1e-4, double sigma_size = 118);

/// Recomputes mean_ratio, median_ratio and mean_rate from per_molecule.
void summarize(CorpusSummary &summary);

/// Throws std::invalid_argument on an empty corpus.
CorpusSummary corpus_stats(std::span<const SdfRecord> records);

/// Corpus statistics straight from file text, measuring each record against
/// its original bytes. Unparseable records land in failures.
CorpusSummary corpus_stats_from_sdf(std::string_view text,
                                    const SdfParseOptions &options = {});

}  // namespace rcmt

#endif  // RCMT_ANALYSIS_H_
