//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#include "rcmt/codec.h"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace rcmt {
namespace {
bool is_digit(char c) {
  return c >= '0' && c <= '9';
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

std::string to_string(std::string_view s) {
  return std::string(s);
}
}  // namespace

Grid::Grid(std::int64_t step_units): step_(step_units) {
  if (step_units < 1)
    throw QuantizeError("grid step must be a positive multiple of 1e-4");
}

Grid Grid::from_delta(std::string_view delta) {
  const std::string original(delta);
  auto fail = [&original]() -> Grid {
    throw QuantizeError("delta '" + original
                        + "' is not a positive multiple of 1e-4");
  };

  std::string_view mant = delta;
  int exp10 = 0;
  if (auto e = delta.find_first_of("eE"); e != std::string_view::npos) {
    mant = delta.substr(0, e);
    std::string_view ex = delta.substr(e + 1);
    if (!ex.empty() && ex.front() == '+')
      ex.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(ex.data(), ex.data() + ex.size(), exp10);
    if (ec != std::errc() || ptr != ex.data() + ex.size() || ex.empty()
        || exp10 < -30 || exp10 > 30) {
      return fail();
    }
  }

  // value = digits * 10^exp10, digits an integer.
  std::string digits;
  bool seen_dot = false, any = false;
  for (char c: mant) {
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (is_digit(c)) {
      any = true;
      digits.push_back(c);
      if (seen_dot)
        --exp10;
    } else {
      return fail();
    }
  }
  if (!any)
    return fail();
  while (digits.size() > 1 && digits.front() == '0')
    digits.erase(digits.begin());
  // Move trailing zeros into the exponent.
  while (digits.size() > 1 && digits.back() == '0') {
    digits.pop_back();
    ++exp10;
  }
  if (digits == "0" || digits.size() > 12)
    return fail();

  const int shift = exp10 + 4;
  if (shift < 0 || shift > 8)
    return fail();
  std::int64_t units = std::stoll(digits);
  for (int k = 0; k < shift; ++k)
    units *= 10;
  if (units > kMaxCoordUnits)
    return fail();
  return Grid(units);
}

QuantizedComponent quantize_component(std::string_view decimal, Grid grid) {
  const std::string_view original = decimal;
  auto fail = [&original](const char *why) -> QuantizedComponent {
    throw QuantizeError("cannot quantize '" + to_string(original) + "': " + why);
  };

  bool negative = false;
  if (!decimal.empty() && (decimal.front() == '-' || decimal.front() == '+')) {
    negative = decimal.front() == '-';
    decimal.remove_prefix(1);
  }
  std::string_view whole = decimal, frac;
  if (auto dot = decimal.find('.'); dot != std::string_view::npos) {
    whole = decimal.substr(0, dot);
    frac = decimal.substr(dot + 1);
  }
  if (whole.empty() && frac.empty())
    return fail("no digits");
  for (char c: whole) {
    if (!is_digit(c))
      return fail("not a decimal number");
  }
  for (char c: frac) {
    if (!is_digit(c))
      return fail("not a decimal number");
  }

  while (!whole.empty() && whole.front() == '0')
    whole.remove_prefix(1);
  if (whole.size() > 5)
    return fail("magnitude exceeds 1e4 angstrom");

  std::int64_t mag = 0;
  for (char c: whole)
    mag = mag * 10 + (c - '0');
  for (std::size_t k = 0; k < 4; ++k)
    mag = mag * 10 + (k < frac.size() ? frac[k] - '0' : 0);
  bool remainder = false;
  for (std::size_t k = 4; k < frac.size(); ++k)
    remainder = remainder || frac[k] != '0';

  // floor toward -inf: a negative value with a dropped tail moves down.
  std::int64_t units = negative ? -mag : mag;
  if (negative && remainder)
    --units;

  const std::int64_t step = grid.step_units();
  const std::int64_t snapped = floor_div(units, step) * step;
  const bool exact = !remainder && snapped == units;
  if (!QuantizedCoord::in_range(snapped))
    return fail("magnitude exceeds 1e4 angstrom");
  return { snapped, exact };
}

QuantizedCoord quantize(const std::array<std::string_view, 3> &r, Grid grid) {
  return QuantizedCoord(quantize_component(r[0], grid).units,
                        quantize_component(r[1], grid).units,
                        quantize_component(r[2], grid).units);
}

QuantizedCoord quantize(const std::array<double, 3> &r, Grid grid) {
  std::array<std::string, 3> text;
  for (std::size_t k = 0; k < 3; ++k) {
    if (!std::isfinite(r[k]) || std::fabs(r[k]) > 1e4)
      throw QuantizeError("coordinate out of range");
    char buf[512];
    auto res = std::to_chars(buf, buf + sizeof(buf), r[k],
                             std::chars_format::fixed);
    text[k].assign(buf, res.ptr);
  }
  return quantize({ std::string_view(text[0]), std::string_view(text[1]),
                    std::string_view(text[2]) },
                  grid);
}

QuantizedCoord regrid(const QuantizedCoord &c, Grid grid) {
  const std::int64_t s = grid.step_units();
  return QuantizedCoord(floor_div(c.x(), s) * s, floor_div(c.y(), s) * s,
                        floor_div(c.z(), s) * s);
}

void encode_into(std::string &out, const MolecularGraph &g) {
  out.reserve(out.size() + g.num_atoms() * 28 + g.num_bonds() * 8 + 3);
  bool first = true;
  for (const Atom &a: g.atoms()) {
    if (!first)
      out.push_back(' ');
    first = false;
    out.append(a.element.symbol());
    out.push_back('@');
    append_fixed4(out, a.position.x());
    out.push_back(',');
    append_fixed4(out, a.position.y());
    out.push_back(',');
    append_fixed4(out, a.position.z());
  }
  out.append(" | ");
  first = true;
  char buf[16];
  for (const Bond &b: g.sorted_bonds()) {
    if (!first)
      out.push_back(' ');
    first = false;
    auto r = std::to_chars(buf, buf + sizeof(buf), b.i);
    out.append(buf, r.ptr);
    out.push_back('-');
    r = std::to_chars(buf, buf + sizeof(buf), b.j);
    out.append(buf, r.ptr);
    out.push_back(':');
    out.push_back(static_cast<char>('0' + to_int(b.order)));
  }
}

std::string encode(const MolecularGraph &g) {
  std::string out;
  encode_into(out, g);
  return out;
}

namespace {
class LineDecoder {
public:
  explicit LineDecoder(std::string_view text): text_(text) { }

  MolecularGraph run() {
    const auto sep = text_.find(" | ");
    if (sep == std::string_view::npos)
      error("missing ' | ' section separator", text_.size());

    std::vector<Atom> atoms;
    if (sep > 0) {
      for_each_token(0, sep, [&](std::size_t pos, std::string_view tok) {
        atoms.push_back(atom_token(pos, tok));
      });
    }

    std::vector<Bond> bonds;
    const std::size_t bstart = sep + 3;
    if (bstart < text_.size()) {
      std::unordered_set<std::uint64_t> seen;
      for_each_token(bstart, text_.size(),
                     [&](std::size_t pos, std::string_view tok) {
                       Bond b = bond_token(pos, tok, atoms.size());
                       const auto key = (static_cast<std::uint64_t>(b.i) << 32)
                                        | static_cast<std::uint32_t>(b.j);
                       if (!seen.insert(key).second)
                         error("duplicate bond " + to_string(tok), pos);
                       bonds.push_back(b);
                     });
    }
    return MolecularGraph(std::move(atoms), std::move(bonds));
  }

private:
  [[noreturn]] void error(const std::string &what, std::size_t pos) const {
    throw DecodeError(what, pos + 1);
  }

  template <class Fn>
  void for_each_token(std::size_t begin, std::size_t end, Fn &&fn) const {
    std::size_t pos = begin;
    while (true) {
      std::size_t space = text_.find(' ', pos);
      if (space == std::string_view::npos || space > end)
        space = end;
      if (space == pos)
        error("empty token", pos);
      fn(pos, text_.substr(pos, space - pos));
      if (space == end)
        break;
      pos = space + 1;
    }
  }

  Atom atom_token(std::size_t pos, std::string_view tok) const {
    const auto at = tok.find('@');
    if (at == std::string_view::npos)
      error("atom token without '@'", pos);
    const auto element = ElementSymbol::from_symbol(tok.substr(0, at));
    if (!element)
      error("unknown element '" + to_string(tok.substr(0, at)) + "'", pos);

    std::int64_t v[3];
    std::size_t start = at + 1;
    for (int k = 0; k < 3; ++k) {
      std::size_t stop = k < 2 ? tok.find(',', start) : tok.size();
      if (stop == std::string_view::npos)
        error("atom token needs three coordinates", pos + start);
      const auto parsed = parse_fixed4(tok.substr(start, stop - start));
      if (!parsed)
        error("malformed coordinate '"
                  + to_string(tok.substr(start, stop - start)) + "'",
              pos + start);
      v[k] = *parsed;
      start = stop + 1;
    }
    return Atom { *element, QuantizedCoord(v[0], v[1], v[2]) };
  }

  std::optional<int> index(std::string_view s) const {
    if (s.empty() || s.size() > 9 || s.front() == '0')
      return std::nullopt;
    int value = 0;
    for (char c: s) {
      if (!is_digit(c))
        return std::nullopt;
      value = value * 10 + (c - '0');
    }
    return value;
  }

  Bond bond_token(std::size_t pos, std::string_view tok,
                  std::size_t n_atoms) const {
    const auto dash = tok.find('-');
    const auto colon = tok.find(':');
    if (dash == std::string_view::npos || colon == std::string_view::npos
        || colon < dash || colon + 2 != tok.size()) {
      error("malformed bond token '" + to_string(tok) + "'", pos);
    }
    const auto i = index(tok.substr(0, dash));
    const auto j = index(tok.substr(dash + 1, colon - dash - 1));
    if (!i || !j)
      error("malformed bond index in '" + to_string(tok) + "'", pos);
    const auto order = bond_order_from_int(tok.back() - '0');
    if (!order)
      error("bond order outside 1-4 in '" + to_string(tok) + "'", pos + colon + 1);
    if (*i >= *j)
      error("bond " + to_string(tok) + " must satisfy i < j", pos);
    if (static_cast<std::size_t>(*j) > n_atoms)
      error("bond " + to_string(tok) + " references atom beyond "
                + std::to_string(n_atoms),
            pos);
    return Bond { *i, *j, *order };
  }

  std::string_view text_;
};
}  // namespace

MolecularGraph decode(std::string_view text) {
  return LineDecoder(text).run();
}

RoundtripReport roundtrip_report(const MolecularGraph &g,
                                 const Decoder &decoder) {
  const MolecularGraph back = decoder(encode(g));
  RoundtripReport report {};

  const auto &a = g.atoms();
  const auto &b = back.atoms();
  const bool same_count = a.size() == b.size();
  report.elements_equal = same_count;
  report.coords_equal = same_count;
  long double sq = 0;  // exact while the sum stays below 2^64
  for (std::size_t k = 0; same_count && k < a.size(); ++k) {
    report.elements_equal = report.elements_equal && a[k].element == b[k].element;
    report.coords_equal = report.coords_equal && a[k].position == b[k].position;
    for (std::size_t d = 0; d < 3; ++d) {
      const auto diff = static_cast<long double>(a[k].position[d]
                                                 - b[k].position[d]);
      sq += diff * diff;
    }
  }
  report.bonds_equal = g.num_bonds() == back.num_bonds()
                       && g.sorted_bonds() == back.sorted_bonds();
  if (!same_count)
    report.rmsd = INFINITY;
  else if (a.empty() || sq == 0)
    report.rmsd = 0.0;
  else
    report.rmsd = std::sqrt(sq / static_cast<long double>(a.size()))
                  * kGridAngstrom;
  return report;
}

}  // namespace rcmt
