//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#include "rcmt/analysis.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rcmt/codec.h"

namespace rcmt {

std::size_t count_chars(std::string_view text) {
  return static_cast<std::size_t>(
      std::count_if(text.begin(), text.end(), [](char c) {
        return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
      }));
}

CompressionReport measure(std::string_view sdf_text,
                          const MolecularGraph &graph) {
  CompressionReport r;
  r.sdf_chars = count_chars(sdf_text);
  r.rcmt_chars = count_chars(encode(graph));
  r.ratio = static_cast<double>(r.sdf_chars) / static_cast<double>(r.rcmt_chars);
  r.rate = static_cast<double>(r.rcmt_chars) / static_cast<double>(r.sdf_chars);
  r.n_atoms = graph.num_atoms();
  r.n_bonds = graph.num_bonds();
  return r;
}

CompressionReport measure(const SdfRecord &record) {
  return measure(write_sdf(record), record.graph);
}

double theoretical_bound(double n_atoms, double n_bonds, double coord_range,
                         double delta, double sigma_size) {
  if (!(n_atoms >= 1) || !(n_bonds >= 0) || !(coord_range > 0) || !(delta > 0)
      || !(sigma_size > 0)) {
    throw std::invalid_argument(
        "theoretical_bound needs N >= 1, E >= 0 and positive L, delta, |Sigma|");
  }
  const double numerator =
      3 * n_atoms * std::log10(coord_range) + n_atoms * sigma_size;
  const double denominator =
      n_atoms * (sigma_size + 3 * std::log10(1 / delta))
      + n_bonds * std::log10(4.0);
  return numerator / denominator;
}

void summarize(CorpusSummary &summary) {
  const auto &reports = summary.per_molecule;
  if (reports.empty()) {
    summary.mean_ratio = summary.median_ratio = summary.mean_rate = 0;
    return;
  }
  double ratio_sum = 0, rate_sum = 0;
  std::vector<double> ratios;
  ratios.reserve(reports.size());
  for (const auto &r: reports) {
    ratio_sum += r.ratio;
    rate_sum += r.rate;
    ratios.push_back(r.ratio);
  }
  const auto n = static_cast<double>(reports.size());
  summary.mean_ratio = ratio_sum / n;
  summary.mean_rate = rate_sum / n;

  std::sort(ratios.begin(), ratios.end());
  const std::size_t mid = ratios.size() / 2;
  summary.median_ratio = ratios.size() % 2 == 1
                             ? ratios[mid]
                             : (ratios[mid - 1] + ratios[mid]) / 2;
}

CorpusSummary corpus_stats(std::span<const SdfRecord> records) {
  if (records.empty())
    throw std::invalid_argument("corpus_stats needs at least one record");
  CorpusSummary summary;
  for (std::size_t k = 0; k < records.size(); ++k) {
    try {
      summary.per_molecule.push_back(measure(records[k]));
      summary.names.push_back(records[k].header[0]);
    } catch (const std::exception &e) {
      summary.failures.push_back({ k, e.what() });
    }
  }
  summarize(summary);
  return summary;
}

CorpusSummary corpus_stats_from_sdf(std::string_view text,
                                    const SdfParseOptions &options) {
  const auto chunks = parse_sdf_tolerant(text, nullptr, options);
  if (chunks.empty())
    throw std::invalid_argument("corpus_stats needs at least one record");
  CorpusSummary summary;
  for (std::size_t k = 0; k < chunks.size(); ++k) {
    const SdfChunk &c = chunks[k];
    if (c.error) {
      summary.failures.push_back({ k, c.error->what() });
      continue;
    }
    summary.per_molecule.push_back(measure(c.text, c.record->graph));
    summary.names.push_back(c.record->header[0]);
  }
  summarize(summary);
  return summary;
}

}  // namespace rcmt
