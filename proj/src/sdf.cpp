//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#include "rcmt/sdf.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace rcmt {

SdfError::SdfError(const std::string &what, std::size_t record,
                   std::size_t line)
    : std::runtime_error("record " + std::to_string(record + 1) + ", line "
                         + std::to_string(line) + ": " + what),
      reason_(what), record_(record), line_(line) { }

SdfParseStats &SdfParseStats::operator+=(const SdfParseStats &other) {
  coords_floored += other.coords_floored;
  property_lines_skipped += other.property_lines_skipped;
  stereo_flags_discarded += other.stereo_flags_discarded;
  return *this;
}

namespace {
std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty()
         && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\r'))
      ++pos;
    std::size_t end = pos;
    while (end < s.size() && s[end] != ' ' && s[end] != '\t' && s[end] != '\r')
      ++end;
    if (end > pos)
      out.push_back(s.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

std::optional<long> to_long(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+')
    s.remove_prefix(1);
  long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    return std::nullopt;
  return value;
}

/// Fixed-width field, clamped to the line.
std::string_view field(std::string_view line, std::size_t pos, std::size_t len) {
  if (pos >= line.size())
    return {};
  return line.substr(pos, len);
}

bool contains_ci(std::string_view hay, std::string_view needle) {
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end(),
                     [](char a, char b) {
                       return std::toupper(static_cast<unsigned char>(a))
                              == std::toupper(static_cast<unsigned char>(b));
                     })
         != hay.end();
}

struct Line {
  std::string_view text;
  std::size_t number;
};

class RecordParser {
public:
  RecordParser(std::vector<Line> lines, std::size_t record,
               std::size_t end_line, const SdfParseOptions &options,
               SdfParseStats &stats)
      : lines_(std::move(lines)), record_(record), end_line_(end_line),
        options_(options), stats_(stats) { }

  SdfRecord run() {
    if (lines_.size() < 4)
      error("truncated record: missing counts line", end_line_);

    SdfRecord rec;
    for (std::size_t k = 0; k < 3; ++k)
      rec.header[k] = std::string(trim_eol(lines_[k].text));

    const Line &counts = lines_[3];
    if (contains_ci(counts.text, "V3000"))
      error("V3000 records are not supported", counts.number);
    auto [n_atoms, n_bonds] = parse_counts(counts);

    if (lines_.size() < 4 + n_atoms + n_bonds)
      error("truncated record: expected " + std::to_string(n_atoms)
                + " atom and " + std::to_string(n_bonds) + " bond lines",
            end_line_);

    std::vector<Atom> atoms;
    atoms.reserve(n_atoms);
    for (std::size_t k = 0; k < n_atoms; ++k)
      atoms.push_back(parse_atom(lines_[4 + k]));

    std::vector<Bond> bonds;
    bonds.reserve(n_bonds);
    std::unordered_set<long> seen;
    for (std::size_t k = 0; k < n_bonds; ++k) {
      const Line &ln = lines_[4 + n_atoms + k];
      Bond b = parse_bond(ln, n_atoms);
      if (!seen.insert(static_cast<long>(b.i) * 1'000'003L + b.j).second)
        error("duplicate bond " + std::to_string(b.i) + "-"
                  + std::to_string(b.j),
              ln.number);
      bonds.push_back(b);
    }

    bool ended = false;
    for (std::size_t k = 4 + n_atoms + n_bonds; k < lines_.size(); ++k) {
      const std::string_view t = trim_eol(lines_[k].text);
      if (t == "M  END") {
        ended = true;
        break;
      }
      if (!trim(t).empty())
        ++stats_.property_lines_skipped;
    }
    if (!ended)
      error("truncated record: missing 'M  END'", end_line_);

    rec.graph = MolecularGraph(std::move(atoms), std::move(bonds));
    return rec;
  }

private:
  [[noreturn]] void error(const std::string &what, std::size_t line) const {
    throw SdfError(what, record_, line);
  }

  static std::string_view trim_eol(std::string_view s) {
    if (!s.empty() && s.back() == '\r')
      s.remove_suffix(1);
    return s;
  }

  std::pair<std::size_t, std::size_t> parse_counts(const Line &ln) const {
    auto a = to_long(field(ln.text, 0, 3));
    auto b = to_long(field(ln.text, 3, 3));
    if (!a || !b) {
      const auto tok = split_ws(ln.text);
      if (tok.size() >= 2) {
        a = to_long(tok[0]);
        b = to_long(tok[1]);
      }
    }
    if (!a || !b || *a < 0 || *b < 0 || *a > 100'000'000 || *b > 100'000'000)
      error("malformed counts line", ln.number);
    return { static_cast<std::size_t>(*a), static_cast<std::size_t>(*b) };
  }

  std::optional<Atom> try_atom(const std::array<std::string_view, 3> &xyz,
                               std::string_view symbol,
                               std::size_t &floored) const {
    const auto element = ElementSymbol::from_symbol(symbol);
    if (!element)
      return std::nullopt;
    std::int64_t units[3];
    floored = 0;
    for (std::size_t d = 0; d < 3; ++d) {
      try {
        const auto q = quantize_component(xyz[d], options_.grid);
        units[d] = q.units;
        floored += q.exact ? 0 : 1;
      } catch (const QuantizeError &) {
        return std::nullopt;
      }
    }
    return Atom { *element, QuantizedCoord(units[0], units[1], units[2]) };
  }

  // Fixed V2000 columns first; whitespace tokens for hand-edited files.
  Atom parse_atom(const Line &ln) const {
    std::size_t floored = 0;
    if (ln.text.size() >= 32 && ln.text[30] == ' ') {
      std::array<std::string_view, 3> xyz;
      for (std::size_t d = 0; d < 3; ++d)
        xyz[d] = trim(field(ln.text, d * 10, 10));
      if (auto atom = try_atom(xyz, trim(field(ln.text, 31, 3)), floored)) {
        stats_.coords_floored += floored;
        return *atom;
      }
    }

    const auto tok = split_ws(ln.text);
    if (tok.size() < 4)
      error("malformed atom line", ln.number);
    for (std::size_t d = 0; d < 3; ++d) {
      try {
        quantize_component(tok[d], options_.grid);
      } catch (const QuantizeError &e) {
        error(e.what(), ln.number);
      }
    }
    auto atom = try_atom({ tok[0], tok[1], tok[2] }, tok[3], floored);
    if (!atom)
      error("unrecognized element symbol '" + std::string(tok[3]) + "'",
            ln.number);
    stats_.coords_floored += floored;
    return *atom;
  }

  Bond parse_bond(const Line &ln, std::size_t n_atoms) const {
    auto i = to_long(field(ln.text, 0, 3));
    auto j = to_long(field(ln.text, 3, 3));
    auto order = to_long(field(ln.text, 6, 3));
    auto stereo = to_long(field(ln.text, 9, 3));
    if (!i || !j || !order) {
      const auto tok = split_ws(ln.text);
      if (tok.size() < 3)
        error("malformed bond line", ln.number);
      i = to_long(tok[0]);
      j = to_long(tok[1]);
      order = to_long(tok[2]);
      stereo = tok.size() > 3 ? to_long(tok[3]) : std::nullopt;
      if (!i || !j || !order)
        error("malformed bond line", ln.number);
    }
    const long n = static_cast<long>(n_atoms);
    if (*i < 1 || *i > n || *j < 1 || *j > n)
      error("bond references atom outside 1.." + std::to_string(n_atoms),
            ln.number);
    if (*i == *j)
      error("self-bond on atom " + std::to_string(*i), ln.number);
    const auto bo = *order >= 1 && *order <= 4
                        ? bond_order_from_int(static_cast<int>(*order))
                        : std::nullopt;
    if (!bo)
      error("bond order " + std::to_string(*order) + " outside 1-4",
            ln.number);
    if (stereo && *stereo != 0)
      ++stats_.stereo_flags_discarded;
    int lo = static_cast<int>(std::min(*i, *j));
    int hi = static_cast<int>(std::max(*i, *j));
    return Bond { lo, hi, *bo };
  }

  std::vector<Line> lines_;
  std::size_t record_;
  std::size_t end_line_;
  const SdfParseOptions &options_;
  SdfParseStats &stats_;
};

bool is_terminator(std::string_view line) {
  return trim(line) == "$$$$";
}
}  // namespace

std::vector<SdfChunk> parse_sdf_tolerant(std::string_view text,
                                         SdfParseStats *stats,
                                         const SdfParseOptions &options) {
  std::vector<SdfChunk> chunks;
  std::vector<Line> lines;
  std::size_t line_no = 0, chunk_begin = 0;
  std::size_t pos = 0;

  auto flush = [&](std::size_t end_pos, std::size_t end_line) {
    SdfChunk chunk;
    chunk.first_line = lines.empty() ? end_line : lines.front().number;
    chunk.text = text.substr(chunk_begin, end_pos - chunk_begin);
    SdfParseStats local;
    try {
      chunk.record = RecordParser(std::move(lines), chunks.size(), end_line,
                                  options, local)
                         .run();
      if (stats)
        *stats += local;
    } catch (const SdfError &e) {
      chunk.error = e;
    } catch (const GraphError &e) {
      chunk.error = SdfError(e.what(), chunks.size(), end_line);
    }
    chunks.push_back(std::move(chunk));
    lines.clear();
    chunk_begin = end_pos;
  };

  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    const std::size_t next = nl == std::string_view::npos ? text.size() : nl + 1;
    const std::string_view line =
        text.substr(pos, (nl == std::string_view::npos ? text.size() : nl) - pos);
    ++line_no;
    if (is_terminator(line)) {
      flush(next, line_no);
    } else {
      lines.push_back(Line { line, line_no });
    }
    pos = next;
  }

  const bool trailing_content = std::any_of(
      lines.begin(), lines.end(),
      [](const Line &l) { return !trim(l.text).empty(); });
  if (trailing_content)
    flush(text.size(), line_no);
  return chunks;
}

std::vector<SdfRecord> parse_sdf(std::string_view text, SdfParseStats *stats,
                                 const SdfParseOptions &options) {
  std::vector<SdfRecord> records;
  for (auto &chunk: parse_sdf_tolerant(text, stats, options)) {
    if (chunk.error)
      throw *chunk.error;
    records.push_back(std::move(*chunk.record));
  }
  return records;
}

namespace {
void append_padded(std::string &out, std::string_view s, std::size_t width) {
  if (s.size() < width)
    out.append(width - s.size(), ' ');
  out.append(s);
}

void append_int3(std::string &out, std::size_t value) {
  char buf[24];
  auto r = std::to_chars(buf, buf + sizeof(buf), value);
  append_padded(out, std::string_view(buf, r.ptr - buf), 3);
}

void write_record(std::string &out, const SdfRecord &rec) {
  const MolecularGraph &g = rec.graph;
  if (g.num_atoms() > 999 || g.num_bonds() > 999)
    throw std::length_error("V2000 records hold at most 999 atoms and bonds");

  for (const std::string &h: rec.header) {
    out.append(h);
    out.push_back('\n');
  }
  append_int3(out, g.num_atoms());
  append_int3(out, g.num_bonds());
  out.append("  0  0  0  0  0  0  0  0999 V2000\n");

  std::string coord;
  for (const Atom &a: g.atoms()) {
    for (std::size_t d = 0; d < 3; ++d) {
      coord.clear();
      append_fixed4(coord, a.position[d]);
      if (coord.size() > 10)
        throw std::length_error("coordinate " + coord
                                + " does not fit a V2000 field");
      append_padded(out, coord, 10);
    }
    out.push_back(' ');
    const std::string_view sym = a.element.symbol();
    out.append(sym);
    out.append(3 - sym.size(), ' ');
    out.append(" 0  0  0  0  0  0  0  0  0  0  0  0\n");
  }
  for (const Bond &b: g.bonds()) {
    append_int3(out, static_cast<std::size_t>(b.i));
    append_int3(out, static_cast<std::size_t>(b.j));
    append_int3(out, static_cast<std::size_t>(to_int(b.order)));
    out.append("  0\n");
  }
  out.append("M  END\n$$$$\n");
}
}  // namespace

std::string write_sdf(std::span<const SdfRecord> records) {
  std::string out;
  for (const SdfRecord &rec: records)
    write_record(out, rec);
  return out;
}

std::string write_sdf(const SdfRecord &record) {
  std::string out;
  write_record(out, record);
  return out;
}

}  // namespace rcmt
