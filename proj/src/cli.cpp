//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#include "rcmt/cli.h"

#include <algorithm>
#include <atomic>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <utility>

#include <CLI11.hpp>

#include "rcmt/analysis.h"
#include "rcmt/energy.h"
#include "rcmt/metrics.h"
#include "rcmt/report.h"
#include "rcmt/reward.h"
#include "rcmt/sdf.h"

namespace rcmt::cli {
namespace {

struct Options {
  std::string input;
  std::string output;
  unsigned jobs = 0;
  std::string format = "table";
  std::optional<double> bound;
  std::string mode = "explicit";
  std::string config;
};

class UsageError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InputError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string strf(const char *format, ...) __attribute__((format(printf, 1, 2)));

std::string strf(const char *format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn &&fn) {
  const std::size_t workers = std::min<std::size_t>(jobs, n);
  if (workers <= 1) {
    for (std::size_t k = 0; k < n; ++k)
      fn(k);
    return;
  }
  std::atomic<std::size_t> next { 0 };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k; (k = next.fetch_add(1)) < n;)
        fn(k);
    });
  }
  for (auto &t: pool)
    t.join();
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_rcmt_path(const std::string &path) {
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".rcmt") == 0;
}

std::vector<std::pair<std::size_t, std::string_view>> split_lines(
    std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t pos = 0, number = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    lines.emplace_back(++number, text.substr(pos, end - pos));
    pos = end + 1;
  }
  return lines;
}

Grid grid_from(const Hooks &hooks) {
  std::optional<std::string> delta = hooks.delta;
  if (!delta) {
    if (const char *env = std::getenv("RCMT_DELTA"))
      delta = env;
  }
  if (!delta)
    return Grid {};
  try {
    return Grid::from_delta(*delta);
  } catch (const QuantizeError &e) {
    throw UsageError(std::string("RCMT_DELTA: ") + e.what());
  }
}

/// Molecules from an .sdf or .rcmt file; failures are reported and counted.
struct Loaded {
  std::vector<MolecularGraph> graphs;
  std::size_t failed = 0;
};

Loaded load_graphs(const std::string &path, Grid grid, std::ostream &err) {
  const std::string text = read_file(path);
  Loaded loaded;
  if (is_rcmt_path(path)) {
    for (const auto &[number, line]: split_lines(text)) {
      try {
        loaded.graphs.push_back(decode(line));
      } catch (const std::exception &e) {
        err << "line " << number << ": " << e.what() << '\n';
        ++loaded.failed;
      }
    }
    return loaded;
  }
  for (auto &chunk: parse_sdf_tolerant(text, nullptr, SdfParseOptions { grid })) {
    if (chunk.error) {
      err << chunk.error->what() << '\n';
      ++loaded.failed;
    } else {
      loaded.graphs.push_back(std::move(chunk.record->graph));
    }
  }
  return loaded;
}

class Command {
public:
  Command(const Options &opts, const Hooks &hooks, std::ostream &out,
          std::ostream &err)
      : opts_(opts), hooks_(hooks), out_(out), err_(err), grid_(grid_from(hooks)) {
    if (opts_.format != "table" && opts_.format != "machine")
      throw UsageError("--format must be 'table' or 'machine'");
    jobs_ = opts_.jobs != 0 ? opts_.jobs
                            : std::max(1u, std::thread::hardware_concurrency());
  }

  ExitStatus encode_cmd() {
    const std::string text = read_file(opts_.input);
    SdfParseStats stats;
    auto chunks = parse_sdf_tolerant(text, &stats, SdfParseOptions { grid_ });
    std::vector<std::string> lines(chunks.size());
    parallel_for(chunks.size(), jobs_, [&](std::size_t k) {
      if (chunks[k].record)
        lines[k] = encode(chunks[k].record->graph);
    });

    std::string data;
    std::size_t failed = 0;
    for (std::size_t k = 0; k < chunks.size(); ++k) {
      if (chunks[k].error) {
        err_ << chunks[k].error->what() << '\n';
        ++failed;
        continue;
      }
      data += lines[k];
      data += '\n';
    }
    report_stats(stats);
    emit(data);
    return finish(failed, chunks.size());
  }

  ExitStatus decode_cmd() {
    const std::string text = read_file(opts_.input);
    const auto lines = split_lines(text);
    std::vector<std::optional<SdfRecord>> records(lines.size());
    std::vector<std::string> errors(lines.size());
    parallel_for(lines.size(), jobs_, [&](std::size_t k) {
      try {
        records[k] = SdfRecord::with_default_header(decode(lines[k].second));
      } catch (const std::exception &e) {
        errors[k] = e.what();
      }
    });

    std::string data;
    std::size_t failed = 0;
    for (std::size_t k = 0; k < lines.size(); ++k) {
      if (!records[k]) {
        err_ << "line " << lines[k].first << ": " << errors[k] << '\n';
        ++failed;
        continue;
      }
      try {
        data += write_sdf(*records[k]);
      } catch (const std::length_error &e) {
        err_ << "line " << lines[k].first << ": " << e.what() << '\n';
        ++failed;
      }
    }
    emit(data);
    return finish(failed, lines.size());
  }

  ExitStatus roundtrip_cmd() {
    const std::string text = read_file(opts_.input);
    auto chunks = parse_sdf_tolerant(text, nullptr, SdfParseOptions { grid_ });
    const Decoder decoder = hooks_.roundtrip_decoder ? hooks_.roundtrip_decoder
                                                     : Decoder(decode);
    std::vector<std::optional<RoundtripReport>> reports(chunks.size());
    std::vector<std::string> errors(chunks.size());
    parallel_for(chunks.size(), jobs_, [&](std::size_t k) {
      if (!chunks[k].record)
        return;
      try {
        reports[k] = roundtrip_report(chunks[k].record->graph, decoder);
      } catch (const std::exception &e) {
        errors[k] = e.what();
      }
    });

    std::size_t parse_failed = 0, passed = 0, mismatched = 0;
    double max_rmsd = 0;
    Json records = Json::array();
    std::string table;
    for (std::size_t k = 0; k < chunks.size(); ++k) {
      if (chunks[k].error) {
        err_ << chunks[k].error->what() << '\n';
        ++parse_failed;
        continue;
      }
      const bool ok = reports[k] && reports[k]->ok();
      ok ? ++passed : ++mismatched;
      if (!reports[k])
        err_ << "record " << k + 1 << ": decode failed: " << errors[k] << '\n';
      else
        max_rmsd = std::max(max_rmsd, reports[k]->rmsd);

      Json item { { "record", k + 1 }, { "pass", ok } };
      if (reports[k])
        item.update(to_json(*reports[k]));
      records.push_back(std::move(item));
      table += strf("record %zu %s rmsd %s\n", k + 1, ok ? "PASS" : "FAIL",
                    reports[k] ? strf("%.4f", reports[k]->rmsd).c_str() : "n/a");
    }

    if (machine()) {
      Json doc { { "records", std::move(records) },
                 { "passed", passed },
                 { "failed", mismatched },
                 { "unparsed", parse_failed },
                 { "max_rmsd", max_rmsd } };
      emit(doc.dump(2) + "\n");
    } else {
      table += strf("passed %zu failed %zu unparsed %zu\nmax_rmsd %.4f\n",
                    passed, mismatched, parse_failed, max_rmsd);
      emit(table);
    }
    if (mismatched > 0)
      return ExitStatus::kVerification;
    return parse_failed > 0 ? ExitStatus::kInput : ExitStatus::kOk;
  }

  ExitStatus stats_cmd() {
    const std::string text = read_file(opts_.input);
    CorpusSummary summary;
    try {
      summary = corpus_stats_from_sdf(text, SdfParseOptions { grid_ });
    } catch (const std::invalid_argument &e) {
      throw InputError(e.what());
    }
    for (const auto &f: summary.failures)
      err_ << f.message << '\n';

    std::optional<std::vector<double>> bounds;
    if (opts_.bound) {
      if (!(*opts_.bound > 0))
        throw UsageError("--bound must be positive");
      bounds.emplace();
      for (const auto &r: summary.per_molecule) {
        bounds->push_back(
            r.n_atoms == 0
                ? 0.0
                : theoretical_bound(static_cast<double>(r.n_atoms),
                                    static_cast<double>(r.n_bonds),
                                    *opts_.bound, grid_.delta()));
      }
    }

    if (machine()) {
      emit(to_json(summary, bounds).dump(2) + "\n");
    } else {
      std::string table = strf("%-24s %10s %10s %8s", "name", "sdf_chars",
                               "rcmt_chars", "rate");
      if (bounds)
        table += strf(" %10s", "bound");
      table += '\n';
      for (std::size_t k = 0; k < summary.per_molecule.size(); ++k) {
        const auto &r = summary.per_molecule[k];
        const std::string name = summary.names[k].empty()
                                     ? "record-" + std::to_string(k + 1)
                                     : summary.names[k];
        table += strf("%-24s %10zu %10zu %7.2f%%", name.c_str(), r.sdf_chars,
                      r.rcmt_chars, 100.0 * r.rate);
        if (bounds)
          table += strf(" %10.4f", (*bounds)[k]);
        table += '\n';
      }
      table += strf("molecules %zu\nmean_ratio %.4f\nmedian_ratio %.4f\n"
                    "mean_rate %.4f (%.2f%%)\n",
                    summary.per_molecule.size(), summary.mean_ratio,
                    summary.median_ratio, summary.mean_rate,
                    100.0 * summary.mean_rate);
      emit(table);
    }
    return finish(summary.failures.size(),
                  summary.failures.size() + summary.per_molecule.size());
  }

  ExitStatus metrics_cmd() {
    StabilityMode mode;
    if (opts_.mode == "explicit")
      mode = StabilityMode::kExplicitH;
    else if (opts_.mode == "implicit")
      mode = StabilityMode::kImplicitH;
    else
      throw UsageError("--mode must be 'explicit' or 'implicit'");

    Loaded loaded = load_graphs(opts_.input, grid_, err_);
    if (loaded.graphs.empty())
      throw InputError("no molecules to evaluate");
    const MetricsReport r =
        batch_metrics(loaded.graphs, ValenceTable::defaults(), mode);

    if (machine()) {
      emit(to_json(r).dump(2) + "\n");
    } else {
      emit(strf("%-18s  %-17s  %-9s  %-10s\n%18.2f  %17.2f  %9.2f  %10.2f\n"
                "molecules %zu atoms %zu\n",
                "Atom Stability (%)", "Mol Stability (%)", "Valid (%)",
                "Unique (%)", r.atom_stability_pct, r.mol_stability_pct,
                r.validity_pct, r.uniqueness_pct, r.n_molecules, r.n_atoms));
    }
    return finish(loaded.failed, loaded.failed + loaded.graphs.size());
  }

  ExitStatus reward_cmd() {
    RewardConfig cfg;
    if (!opts_.config.empty()) {
      try {
        cfg = RewardConfig::load(opts_.config);
      } catch (const RewardError &e) {
        throw UsageError(e.what());
      }
    }

    HarmonicOracle oracle;
    if (cfg.reference_corpus) {
      Loaded refs = load_graphs(cfg.reference_corpus->string(), grid_, err_);
      if (refs.failed > 0)
        throw InputError("reference corpus has unreadable records");
      oracle.calibrate(refs.graphs);
    }

    Loaded loaded = load_graphs(opts_.input, grid_, err_);
    DigestSet seen;
    Json items = Json::array();
    std::string table = strf("%-8s %12s %12s %9s %8s %12s\n", "index", "s_mol",
                             "s_atom", "diversity", "validity", "total");
    double total_sum = 0;
    std::size_t scored = 0, failed = loaded.failed;
    for (std::size_t k = 0; k < loaded.graphs.size(); ++k) {
      const MolecularGraph &g = loaded.graphs[k];
      RewardBreakdown b;
      try {
        b = reward(g, cfg.weights, oracle, cfg.thermostat, seen);
      } catch (const RewardError &e) {
        err_ << "molecule " << k + 1 << ": " << e.what() << '\n';
        ++failed;
        continue;
      }
      seen.insert(canonical_hash(g));
      total_sum += b.total;
      ++scored;
      Json item { { "index", k + 1 } };
      item.update(to_json(b));
      items.push_back(std::move(item));
      table += strf("%-8zu %12.6f %12.6f %9.0f %8.0f %12.6f\n", k + 1, b.s_mol,
                    b.s_atom, b.diversity, b.validity, b.total);
    }
    const double mean = scored == 0 ? 0.0 : total_sum / static_cast<double>(scored);

    if (machine()) {
      Json doc { { "molecules", std::move(items) }, { "mean_total", mean } };
      emit(doc.dump(2) + "\n");
    } else {
      table += strf("mean_total %.6f\n", mean);
      emit(table);
    }
    return finish(failed, failed + scored);
  }

private:
  bool machine() const { return opts_.format == "machine"; }

  void report_stats(const SdfParseStats &stats) {
    if (stats.coords_floored > 0)
      err_ << "warning: " << stats.coords_floored
           << " coordinates had sub-grid digits and were floored\n";
    if (stats.property_lines_skipped > 0)
      err_ << "warning: skipped " << stats.property_lines_skipped
           << " property lines\n";
    if (stats.stereo_flags_discarded > 0)
      err_ << "warning: discarded " << stats.stereo_flags_discarded
           << " bond stereo flags\n";
  }

  void emit(const std::string &data) {
    if (opts_.output.empty() || opts_.output == "-") {
      out_ << data;
      return;
    }
    std::ofstream file(opts_.output, std::ios::binary);
    file << data;
    if (!file)
      throw InputError("cannot write " + opts_.output);
  }

  ExitStatus finish(std::size_t failed, std::size_t total) {
    if (failed == 0)
      return ExitStatus::kOk;
    err_ << failed << " failed (of " << total << ")\n";
    return ExitStatus::kInput;
  }

  const Options &opts_;
  const Hooks &hooks_;
  std::ostream &out_;
  std::ostream &err_;
  Grid grid_;
  unsigned jobs_ = 1;
};

}  // namespace

ExitStatus run(const std::vector<std::string> &args, std::ostream &out,
               std::ostream &err, const Hooks &hooks) {
  CLI::App app { "Lossless compact text codec for 3D molecular structures",
                 "rcmt" };
  app.require_subcommand(1);
  Options opts;

  auto add_common = [&opts](CLI::App *sub, const char *input_help) {
    sub->add_option("input", opts.input, input_help)->required();
    sub->add_option("-o,--output", opts.output, "Output path (default stdout)");
    sub->add_option("--jobs", opts.jobs, "Worker threads (default: all cores)");
    sub->add_option("--format", opts.format, "table or machine")
        ->check(CLI::IsMember({ "table", "machine" }));
  };

  auto *enc = app.add_subcommand("encode", "SDF to compact text, one line per record");
  add_common(enc, ".sdf input");
  auto *dec = app.add_subcommand("decode", "Compact text back to SDF");
  add_common(dec, ".rcmt input");
  auto *rt = app.add_subcommand("roundtrip", "Verify decode(encode(g)) == g");
  add_common(rt, ".sdf input");
  auto *st = app.add_subcommand("stats", "Character-count compression statistics");
  add_common(st, ".sdf input");
  st->add_option("--bound", opts.bound, "Coordinate range L for the bound");
  auto *me = app.add_subcommand("metrics", "Stability, validity, uniqueness");
  add_common(me, ".sdf or .rcmt input");
  me->add_option("--mode", opts.mode, "explicit or implicit hydrogens")
      ->check(CLI::IsMember({ "explicit", "implicit" }));
  auto *rw = app.add_subcommand("reward", "Stability reward per molecule");
  add_common(rw, ".sdf or .rcmt input");
  rw->add_option("--config", opts.config, "Reward config (JSON)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ExitStatus::kOk : ExitStatus::kUsage;
  }

  try {
    Command cmd(opts, hooks, out, err);
    if (enc->parsed())
      return cmd.encode_cmd();
    if (dec->parsed())
      return cmd.decode_cmd();
    if (rt->parsed())
      return cmd.roundtrip_cmd();
    if (st->parsed())
      return cmd.stats_cmd();
    if (me->parsed())
      return cmd.metrics_cmd();
    return cmd.reward_cmd();
  } catch (const UsageError &e) {
    err << "error: " << e.what() << '\n';
    return ExitStatus::kUsage;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return ExitStatus::kInput;
  }
}

}  // namespace rcmt::cli
