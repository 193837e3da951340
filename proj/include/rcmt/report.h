//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RCMT_REPORT_H_
#define RCMT_REPORT_H_

#include <optional>
#include <vector>

#include <json.hpp>

#include "rcmt/analysis.h"
#include "rcmt/codec.h"
#include "rcmt/metrics.h"
#include "rcmt/reward.h"

namespace rcmt {

// Machine-readable report documents. Keys keep declaration order so output
// is byte-stable across runs.
using Json = nlohmann::ordered_json;

Json to_json(const CompressionReport &r);
/// bounds, when given, is parallel to summary.per_molecule.
Json to_json(const CorpusSummary &summary,
             const std::optional<std::vector<double>> &bounds = std::nullopt);
/// Percentages are rounded to two decimals.
Json to_json(const MetricsReport &r);
Json to_json(const RewardBreakdown &r);
Json to_json(const RoundtripReport &r);

/// Rounds to two decimals, the precision metric percentages are reported at.
double round2(double pct);

}  // namespace rcmt

#endif  // RCMT_REPORT_H_
