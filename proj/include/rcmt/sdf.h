//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RCMT_SDF_H_
#define RCMT_SDF_H_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rcmt/codec.h"
#include "rcmt/molgraph.h"

namespace rcmt {

/// One V2000 record: the three header lines plus the graph.
struct SdfRecord {
  std::array<std::string, 3> header;
  MolecularGraph graph;

  /// Header used for records rebuilt from compact text.
  static SdfRecord with_default_header(MolecularGraph graph) {
    return SdfRecord { { "", "RCMT", "" }, std::move(graph) };
  }
};

/// A parse failure located by 0-based record index and 1-based file line.
class SdfError: public std::runtime_error {
public:
  SdfError(const std::string &what, std::size_t record, std::size_t line);

  std::size_t record() const { return record_; }
  std::size_t line() const { return line_; }
  const std::string &reason() const { return reason_; }

private:
  std::string reason_;
  std::size_t record_;
  std::size_t line_;
};

struct SdfParseOptions {
  Grid grid;
};

/// Counters for inputs that parse but lose information.
struct SdfParseStats {
  /// Coordinates with digits below the grid, floored at parse time.
  std::size_t coords_floored = 0;
  /// "M  CHG" style property lines that were skipped.
  std::size_t property_lines_skipped = 0;
  /// Nonzero bond stereo flags that were discarded.
  std::size_t stereo_flags_discarded = 0;

  SdfParseStats &operator+=(const SdfParseStats &other);
};

/// Per-record outcome of a tolerant parse.
struct SdfChunk {
  std::size_t first_line;  // 1-based
  std::string_view text;   // raw record text, terminator included if present
  std::optional<SdfRecord> record;
  std::optional<SdfError> error;
};

/// Parses every record, throwing SdfError at the first malformed one.
std::vector<SdfRecord> parse_sdf(std::string_view text,
                                 SdfParseStats *stats = nullptr,
                                 const SdfParseOptions &options = {});

/// Parses records independently so one bad record does not hide the rest.
/// The returned chunks view into `text`.
std::vector<SdfChunk> parse_sdf_tolerant(std::string_view text,
                                         SdfParseStats *stats = nullptr,
                                         const SdfParseOptions &options = {});

/// Emits RDKit-style V2000 text with "M  END" and "$$$$" terminators.
/// Throws std::length_error if a record exceeds the V2000 fixed-width limits
/// (999 atoms or bonds, coordinates wider than 10 columns).
std::string write_sdf(std::span<const SdfRecord> records);
std::string write_sdf(const SdfRecord &record);

}  // namespace rcmt

#endif  // RCMT_SDF_H_
