//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#include "rcmt/element.h"

#include <array>
#include <string_view>

namespace rcmt {
namespace {
constexpr std::array<std::string_view, kPeriodicTableSize> kSymbols = {
  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg",
  "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr",
  "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr",
  "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd",
  "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
  "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf",
  "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po",
  "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am", "Cm",
  "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs",
  "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og",
};
}  // namespace

std::optional<ElementSymbol> ElementSymbol::from_symbol(std::string_view symbol) {
  for (std::size_t i = 0; i < kSymbols.size(); ++i) {
    if (kSymbols[i] == symbol)
      return ElementSymbol(static_cast<std::uint8_t>(i + 1));
  }
  return std::nullopt;
}

std::optional<ElementSymbol> ElementSymbol::from_atomic_number(int z) {
  if (z < 1 || z > kPeriodicTableSize)
    return std::nullopt;
  return ElementSymbol(static_cast<std::uint8_t>(z));
}

std::string_view ElementSymbol::symbol() const {
  return kSymbols[z_ - 1];
}

}  // namespace rcmt
