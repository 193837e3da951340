//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RCMT_ELEMENT_H_
#define RCMT_ELEMENT_H_

#include <cstdint>
#include <optional>
#include <string_view>

namespace rcmt {

/// Number of entries in the periodic-table alphabet.
inline constexpr int kPeriodicTableSize = 118;

/// A chemical element, identified by atomic number (1-118).
///
/// Symbols are matched case-sensitively with standard capitalization, so
/// "Cl" is chlorine while "CL" and "cl" are rejected.
class ElementSymbol {
public:
  /// Looks up a symbol; returns std::nullopt for anything outside the table.
  static std::optional<ElementSymbol> from_symbol(std::string_view symbol);
  static std::optional<ElementSymbol> from_atomic_number(int z);

  int atomic_number() const { return z_; }
  std::string_view symbol() const;

  friend bool operator==(ElementSymbol, ElementSymbol) = default;
  friend auto operator<=>(ElementSymbol, ElementSymbol) = default;

private:
  explicit constexpr ElementSymbol(std::uint8_t z): z_(z) { }

  std::uint8_t z_;
};

}  // namespace rcmt

#endif  // RCMT_ELEMENT_H_
