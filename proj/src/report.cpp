//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#include "rcmt/report.h"

#include <cmath>

namespace rcmt {

double round2(double pct) {
  return std::round(pct * 100.0) / 100.0;
}

Json to_json(const CompressionReport &r) {
  Json j;
  j["sdf_chars"] = r.sdf_chars;
  j["rcmt_chars"] = r.rcmt_chars;
  j["ratio"] = r.ratio;
  j["rate"] = r.rate;
  j["n_atoms"] = r.n_atoms;
  j["n_bonds"] = r.n_bonds;
  return j;
}

Json to_json(const CorpusSummary &summary,
             const std::optional<std::vector<double>> &bounds) {
  Json per = Json::array();
  for (std::size_t k = 0; k < summary.per_molecule.size(); ++k) {
    Json item = to_json(summary.per_molecule[k]);
    item["name"] = summary.names.at(k);
    if (bounds)
      item["bound"] = bounds->at(k);
    per.push_back(std::move(item));
  }
  Json failures = Json::array();
  for (const auto &f: summary.failures)
    failures.push_back(Json { { "record", f.record }, { "message", f.message } });

  Json j;
  j["per_molecule"] = std::move(per);
  j["mean_ratio"] = summary.mean_ratio;
  j["median_ratio"] = summary.median_ratio;
  j["mean_rate"] = summary.mean_rate;
  j["failures"] = std::move(failures);
  return j;
}

Json to_json(const MetricsReport &r) {
  Json j;
  j["atom_stability_pct"] = round2(r.atom_stability_pct);
  j["mol_stability_pct"] = round2(r.mol_stability_pct);
  j["validity_pct"] = round2(r.validity_pct);
  j["uniqueness_pct"] = round2(r.uniqueness_pct);
  j["n_molecules"] = r.n_molecules;
  j["n_atoms"] = r.n_atoms;
  j["n_valid"] = r.n_valid;
  j["n_unique"] = r.n_unique;
  j["n_unknown_element_atoms"] = r.n_unknown_element_atoms;
  return j;
}

Json to_json(const RewardBreakdown &r) {
  Json j;
  j["s_mol"] = r.s_mol;
  j["s_atom"] = r.s_atom;
  j["diversity"] = r.diversity;
  j["validity"] = r.validity;
  j["total"] = r.total;
  return j;
}

Json to_json(const RoundtripReport &r) {
  Json j;
  j["elements_equal"] = r.elements_equal;
  j["coords_equal"] = r.coords_equal;
  j["bonds_equal"] = r.bonds_equal;
  j["rmsd"] = r.rmsd;
  return j;
}

}  // namespace rcmt
