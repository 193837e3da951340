//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#include <random>
#include <string>

#include <gtest/gtest.h>

#include "rcmt/codec.h"
#include "test_util.h"

namespace rcmt {
namespace {
using test::atom;
using test::bond;

constexpr const char *kTenAtomText =
    "C@-2.9010,12.7890,-16.4760 O@-3.6540,13.0410,-15.5400 "
    "C@-2.7620,11.3220,-16.8420 O@-1.7390,10.9930,-17.5170 "
    "O@-3.6980,10.5520,-16.4260 C@-1.8410,14.9530,-16.4260 "
    "N@-2.2290,13.7370,-17.1450 C@-1.3860,16.1600,-17.2870 "
    "O@-2.2170,17.1100,-17.3780 O@-0.2300,16.1240,-17.7680 | "
    "1-2:2 1-3:1 1-7:1 3-4:2 3-5:1 6-7:2 6-8:1 8-9:2 8-10:1";

// Independent floor oracle: scale every digit into one integer, then
// floor-divide by the surplus power of ten.
std::int64_t floor_oracle(bool negative, std::int64_t whole,
                          const std::string &frac) {
  std::int64_t scaled = whole;
  for (char c: frac)
    scaled = scaled * 10 + (c - '0');
  if (negative)
    scaled = -scaled;
  std::int64_t div = 1;
  for (std::size_t k = 4; k < frac.size(); ++k)
    div *= 10;
  std::int64_t q = scaled / div;
  if (scaled % div != 0 && scaled < 0)
    --q;
  return q;
}

TEST(QuantizeTest, GridAlignedInputIsUnchanged) {
  EXPECT_EQ(quantize({ "-2.9010", "12.7890", "-16.4760" }),
            QuantizedCoord(-29010, 127890, -164760));
  EXPECT_EQ(quantize(std::array<double, 3> { -2.9010, 12.7890, -16.4760 }),
            QuantizedCoord(-29010, 127890, -164760));
  EXPECT_EQ(quantize(std::array<double, 3> { 0, 0, 0 }), QuantizedCoord());
  EXPECT_EQ(quantize({ "0", "-0.0", "+0.00000" }), QuantizedCoord());
}

TEST(QuantizeTest, FloorsTowardNegativeInfinity) {
  EXPECT_EQ(quantize({ "-2.90104", "12.78905", "0" }),
            QuantizedCoord(-29011, 127890, 0));
  EXPECT_EQ(quantize(std::array<double, 3> { -2.90104, 12.78905, 0 }),
            QuantizedCoord(-29011, 127890, 0));
  EXPECT_EQ(quantize_component("-0.00001").units, -1);
  EXPECT_EQ(quantize_component("0.00009").units, 0);
  EXPECT_FALSE(quantize_component("0.00009").exact);
  EXPECT_TRUE(quantize_component("1.50000000").exact);
}

TEST(QuantizeTest, RejectsMalformedAndOutOfRange) {
  for (const char *bad: { "", "-", ".", "1e3", "1.2.3", "abc", "10000.0001",
                          "-10000.00001", "123456" }) {
    EXPECT_THROW(quantize_component(bad), QuantizeError) << bad;
  }
  EXPECT_EQ(quantize_component("-10000").units, -kMaxCoordUnits);
  EXPECT_THROW(quantize(std::array<double, 3> { 1e5, 0, 0 }), QuantizeError);
  EXPECT_THROW(quantize(std::array<double, 3> { NAN, 0, 0 }), QuantizeError);
}

TEST(QuantizeTest, MatchesIntegerFloorOracle) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::int64_t> whole(0, 9999);
  std::uniform_int_distribution<int> digits(0, 8);
  std::uniform_int_distribution<int> digit(0, 9);
  for (int trial = 0; trial < 20000; ++trial) {
    const bool negative = rng() & 1;
    const std::int64_t w = whole(rng);
    std::string frac;
    for (int k = digits(rng); k > 0; --k)
      frac.push_back(static_cast<char>('0' + digit(rng)));
    std::string text = (negative ? "-" : "") + std::to_string(w);
    if (!frac.empty())
      text += "." + frac;
    std::string padded = frac;
    while (padded.size() < 4)
      padded.push_back('0');
    ASSERT_EQ(quantize_component(text).units, floor_oracle(negative, w, padded))
        << text;
  }
}

TEST(QuantizeTest, IdempotentProperty) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-9999.0, 9999.0);
  for (int trial = 0; trial < 5000; ++trial) {
    const std::array<double, 3> r { dist(rng), dist(rng), dist(rng) };
    const QuantizedCoord q = quantize(r);
    const std::string x = render_fixed4(q.x()), y = render_fixed4(q.y()),
                      z = render_fixed4(q.z());
    ASSERT_EQ(quantize({ x, y, z }), q);
  }
}

TEST(GridTest, FromDelta) {
  EXPECT_EQ(Grid::from_delta("1e-4").step_units(), 1);
  EXPECT_EQ(Grid::from_delta("0.0001").step_units(), 1);
  EXPECT_EQ(Grid::from_delta("0.001").step_units(), 10);
  EXPECT_EQ(Grid::from_delta("1E-1").step_units(), 1000);
  EXPECT_EQ(Grid::from_delta("1").step_units(), 10000);
  EXPECT_EQ(Grid::from_delta("2.5e-3").step_units(), 25);
  for (const char *bad: { "1e-5", "0", "-0.001", "abc", "", "0.00015", "1e" })
    EXPECT_THROW(Grid::from_delta(bad), QuantizeError) << bad;
}

TEST(GridTest, CoarserGridFloors) {
  const Grid g(10);
  EXPECT_EQ(quantize_component("-2.90104", g).units, -29020);
  EXPECT_EQ(quantize_component("12.78905", g).units, 127890);
  EXPECT_EQ(regrid(QuantizedCoord(-29011, 127899, 5), g),
            QuantizedCoord(-29020, 127890, 0));
}

TEST(EncodeTest, TenAtom) {
  EXPECT_EQ(encode(test::ten_atom_graph()), kTenAtomText);
}

TEST(EncodeTest, TrivialMolecules) {
  EXPECT_EQ(encode(MolecularGraph({ atom("H", 0, 0, 0) }, {})),
            "H@0.0000,0.0000,0.0000 | ");
  EXPECT_EQ(encode(MolecularGraph()), " | ");
}

TEST(EncodeTest, TokenCountsMatchGraph) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = test::random_graph(rng);
    const std::string text = encode(g);
    const auto sep = text.find(" | ");
    const std::string atoms = text.substr(0, sep);
    const std::string bonds = text.substr(sep + 3);
    EXPECT_EQ(std::count(atoms.begin(), atoms.end(), '@'),
              static_cast<long>(g.num_atoms()));
    EXPECT_EQ(std::count(bonds.begin(), bonds.end(), ':'),
              static_cast<long>(g.num_bonds()));
  }
}

TEST(DecodeTest, TenAtom) {
  EXPECT_EQ(decode(kTenAtomText), test::ten_atom_graph());
}

TEST(DecodeTest, SingleCarbon) {
  const auto g = decode("C@0.0000,0.0000,0.0000 | ");
  ASSERT_EQ(g.num_atoms(), 1u);
  EXPECT_EQ(g.atoms()[0], atom("C", 0, 0, 0));
  EXPECT_EQ(g.num_bonds(), 0u);
  EXPECT_TRUE(decode(" | ").empty());
}

void expect_decode_error(const std::string &text, std::size_t column) {
  try {
    decode(text);
    ADD_FAILURE() << "accepted: " << text;
  } catch (const DecodeError &e) {
    EXPECT_EQ(e.column(), column) << text << ": " << e.what();
  }
}

TEST(DecodeTest, GrammarErrorsArePositioned) {
  expect_decode_error("C@0,0,0 | ", 3);
  expect_decode_error("C@0.0000,0.0000 | ", 10);
  expect_decode_error("Xx@0.0000,0.0000,0.0000 | ", 1);
  expect_decode_error("C0.0000,0.0000,0.0000 | ", 1);
  expect_decode_error("C@0.0000,0.0000,0.0000", 23);
  expect_decode_error("C@0.0000,0.0000,0.0000 |", 25);
  expect_decode_error("C@0.0000,0.0000,0.0000  C@1.0000,0.0000,0.0000 | ", 24);
  expect_decode_error("C@0.0000,0.0000,-0.0000 | ", 17);
  expect_decode_error("C@0.0000,0.0000,0.0000 C@1.0000,0.0000,0.0000 | 1-2:1 ", 55);
}

TEST(DecodeTest, BondErrors) {
  const std::string two = "C@0.0000,0.0000,0.0000 C@1.5000,0.0000,0.0000 | ";
  const std::size_t b = two.size() + 1;
  expect_decode_error(two + "2-1:1", b);
  expect_decode_error(two + "1-1:1", b);
  expect_decode_error(two + "1-3:1", b);
  expect_decode_error(two + "1-2:5", b + 4);
  expect_decode_error(two + "1-2:0", b + 4);
  expect_decode_error(two + "1-2:1 1-2:2", b + 6);
  expect_decode_error(two + "01-2:1", b);
  expect_decode_error(two + "1-2:11", b);
  expect_decode_error(two + "1-2", b);
  expect_decode_error(two + "a-2:1", b);
}

TEST(RoundtripTest, TenAtomIsExact) {
  const auto report = roundtrip_report(test::ten_atom_graph());
  EXPECT_TRUE(report.elements_equal);
  EXPECT_TRUE(report.coords_equal);
  EXPECT_TRUE(report.bonds_equal);
  EXPECT_EQ(report.rmsd, 0.0);
  EXPECT_TRUE(roundtrip_report(MolecularGraph()).ok());
}

TEST(RoundtripTest, RandomGraphsProperty) {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 1000; ++trial) {
    test::RandomGraphOptions opt;
    opt.wide_coords = trial % 2 == 0;
    const auto g = test::random_graph(rng, opt);
    const std::string text = encode(g);
    const auto back = decode(text);
    ASSERT_EQ(back, g) << text;
    ASSERT_EQ(encode(back), text);
    ASSERT_TRUE(roundtrip_report(g).ok());
  }
}

TEST(RoundtripTest, DetectsCorruptedDecoder) {
  const Decoder shift_first_atom = [](std::string_view text) {
    const auto g = decode(text);
    auto atoms = g.atoms();
    atoms[0].position = QuantizedCoord(atoms[0].position.x() + 3,
                                       atoms[0].position.y() + 4,
                                       atoms[0].position.z());
    return MolecularGraph(atoms, g.bonds());
  };
  const auto g = test::ten_atom_graph();
  const auto report = roundtrip_report(g, shift_first_atom);
  EXPECT_TRUE(report.elements_equal);
  EXPECT_FALSE(report.coords_equal);
  EXPECT_TRUE(report.bonds_equal);
  // sqrt((3^2 + 4^2) / 10) grid units.
  EXPECT_NEAR(report.rmsd, std::sqrt(25.0 / 10.0) * 1e-4, 1e-15);
  EXPECT_FALSE(report.ok());

  const Decoder drop_bonds = [](std::string_view text) {
    return MolecularGraph(decode(text).atoms(), {});
  };
  EXPECT_FALSE(roundtrip_report(g, drop_bonds).bonds_equal);
}

}  // namespace
}  // namespace rcmt
