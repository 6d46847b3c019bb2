#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "pseudoplap/error.hpp"
#include "pseudoplap/field_io.hpp"

using namespace pseudoplap;

namespace {

ScalarField random_field(const GridPtr& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1e3, 1e3);
  return ScalarField::from_function(g, [&](const auto&) { return dist(rng) / 7.0; });
}

}  // namespace

TEST(FieldIo, RoundTripIsBitwise) {
  for (int N = 1; N <= 3; ++N) {
    auto g = make_grid({N, 9, DomainShape::ball});
    const auto f = random_field(g, 17u + N);
    std::stringstream ss;
    write_field(ss, f, "pseudoplap test");
    const auto back = read_field(ss, g);
    for (std::size_t i = 0; i < g->size(); ++i) {
      if (f.is_set(i)) {
        ASSERT_EQ(f[i], back[i]);
      } else {
        ASSERT_FALSE(back.is_set(i));
      }
    }
  }
}

TEST(FieldIo, InfersGrid) {
  auto g = make_grid({2, 11, DomainShape::cube});
  const auto f = random_field(g, 3);
  std::stringstream ss;
  write_field(ss, f);
  const auto back = read_field(ss);
  EXPECT_EQ(back.grid().spec(), g->spec());
}

TEST(FieldIo, HeaderOnlyIsEmptyFieldError) {
  auto g = make_grid({1, 9, DomainShape::ball});
  std::stringstream ss("x1,value\n");
  try {
    read_field(ss, g);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("empty"), std::string::npos) << e.what();
  }
}

TEST(FieldIo, NaNRowRejectedWithLine) {
  auto g = make_grid({1, 9, DomainShape::ball});
  std::stringstream out;
  write_field(out, ScalarField::from_function(g, [](const auto&) { return 1.0; }));
  std::string text = out.str();
  // third data row -> line 4
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) pos = text.find('\n', pos) + 1;
  const auto comma = text.find(',', pos);
  const auto eol = text.find('\n', pos);
  text.replace(comma + 1, eol - comma - 1, "NaN");
  std::stringstream in(text);
  try {
    read_field(in, g);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
  }
}

TEST(FieldIo, DimensionMismatchRejected) {
  auto g1 = make_grid({1, 9, DomainShape::ball});
  auto g2 = make_grid({2, 9, DomainShape::ball});
  std::stringstream ss;
  write_field(ss, ScalarField::from_function(g1, [](const auto&) { return 0.5; }));
  EXPECT_THROW(read_field(ss, g2), ParseError);
}

TEST(FieldIo, MalformedRowRejected) {
  auto g = make_grid({1, 9, DomainShape::ball});
  std::stringstream ss("x1,value\n-1,0\n-0.75\n");
  try {
    read_field(ss, g);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}
