//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RCMT_CODEC_H_
#define RCMT_CODEC_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rcmt/molgraph.h"

namespace rcmt {

class QuantizeError: public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Quantization grid. The step is an integer number of 10^-4 angstrom units,
/// so the default grid is delta = 10^-4.
class Grid {
public:
  constexpr Grid() = default;
  /// Throws QuantizeError unless step_units >= 1.
  explicit Grid(std::int64_t step_units);

  /// Parses a delta such as "1e-4" or "0.001". It must be a positive whole
  /// multiple of 10^-4; anything else throws QuantizeError.
  static Grid from_delta(std::string_view delta);

  std::int64_t step_units() const { return step_; }
  double delta() const { return static_cast<double>(step_) * kGridAngstrom; }

  friend bool operator==(Grid, Grid) = default;

private:
  std::int64_t step_ = 1;
};

struct QuantizedComponent {
  std::int64_t units;
  /// False when the input had digits below the grid that were floored away.
  bool exact;
};

/// Floors one decimal number onto the grid: k = floor(r / delta) * step.
///
/// Exact decimal arithmetic on the text; accepts an optional sign, digits,
/// and an optional fractional part. Throws QuantizeError on malformed text
/// or |r| > 10^4 angstrom.
QuantizedComponent quantize_component(std::string_view decimal,
                                      Grid grid = {});

QuantizedCoord quantize(const std::array<std::string_view, 3> &r,
                        Grid grid = {});

/// Binary doubles are first rendered as their shortest round-trip decimal,
/// so grid-aligned literals such as -2.9010 stay on their grid point.
QuantizedCoord quantize(const std::array<double, 3> &r, Grid grid = {});

/// Floors an already-quantized coordinate onto a coarser grid.
QuantizedCoord regrid(const QuantizedCoord &c, Grid grid);

/// A decode failure, with the 1-based column where the grammar broke.
class DecodeError: public std::runtime_error {
public:
  DecodeError(const std::string &what, std::size_t column)
      : std::runtime_error(what + " at column " + std::to_string(column)),
        column_(column) { }

  std::size_t column() const { return column_; }

private:
  std::size_t column_;
};

/// phi(G): atom tokens "El@x,y,z" in atom order, then " | ", then sparse
/// bond triples "i-j:o" ascending by (i, j). Runs in O(N + |E|).
std::string encode(const MolecularGraph &g);
void encode_into(std::string &out, const MolecularGraph &g);

/// phi^-1(T). Strict: any text encode() could not have produced (bar bond
/// order) is rejected with a DecodeError.
MolecularGraph decode(std::string_view text);

using Decoder = std::function<MolecularGraph(std::string_view)>;

struct RoundtripReport {
  bool elements_equal;
  bool coords_equal;
  bool bonds_equal;
  /// Angstrom; infinite when the atom counts differ.
  double rmsd;

  bool ok() const {
    return elements_equal && coords_equal && bonds_equal && rmsd == 0.0;
  }
};

/// Runs decode(encode(g)) and compares field by field. The decoder is a
/// parameter so broken decoders can be exercised in tests.
RoundtripReport roundtrip_report(const MolecularGraph &g,
                                 const Decoder &decoder = decode);

}  // namespace rcmt

#endif  // RCMT_CODEC_H_
