// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "peekgrad/csv.hpp"
#include "peekgrad/keyvalue.hpp"

namespace peekgrad {
namespace {

TEST(KeyValuesTest, ParsesEntriesCommentsAndLists) {
  const auto kv = KeyValues::parse(
      "# experiment\n"
      "model = dynamnews\n"
      "\n"
      "sigma = 1, 2 ,4   # trailing comment\n"
      "reps=500\n"
      "exact = yes\n"
      "model = hotel\n");
  EXPECT_EQ(kv.get_string("model", ""), "hotel");
  EXPECT_EQ(kv.get_doubles("sigma", {}), (std::vector<double>{1, 2, 4}));
  EXPECT_EQ(kv.get_int("reps", 0), 500);
  EXPECT_TRUE(kv.get_bool("exact", false));
  EXPECT_EQ(kv.get_double("missing", 2.5), 2.5);
  EXPECT_FALSE(kv.contains("missing"));
}

TEST(KeyValuesTest, ReportsLocation) {
  try {
    KeyValues::parse("a = 1\nnot a pair\n", "exp.cfg");
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("exp.cfg:2"), std::string::npos);
  }
  const auto kv = KeyValues::parse("n = 1.5x\nflag = maybe\n");
  EXPECT_THROW(kv.get_double("n", 0.0), std::runtime_error);
  EXPECT_THROW(kv.get_int("n", 0), std::runtime_error);
  EXPECT_THROW(kv.get_bool("flag", false), std::runtime_error);
  EXPECT_THROW(KeyValues::load("/nonexistent/peekgrad.cfg"), std::runtime_error);
}

TEST(KeyValuesTest, SplitList) {
  EXPECT_EQ(split_list(" a, b ,,c "), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(split_list("").empty());
}

TEST(Csv, FormatsShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(-0.0), "0");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(format_double(std::nan("")), "nan");
  for (double v : {1.2119306142308912, 1e-300, 123456789.125, -3.25}) {
    EXPECT_EQ(parse_double(format_double(v), "v"), v);
  }
}

TEST(Csv, EscapesAndRoundTrips) {
  std::ostringstream out;
  CsvWriter w(out);
  w.row({"model", "note"});
  w.row({"hotel", "a,b"});
  w.row({"x", "say \"hi\""});
  w.row({"y", "two\nlines"});
  const std::string text = out.str();
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(text.substr(0, 11), "model,note\n");

  const auto rows = parse_csv(text);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1], (CsvRow{"hotel", "a,b"}));
  EXPECT_EQ(rows[2], (CsvRow{"x", "say \"hi\""}));
  EXPECT_EQ(rows[3], (CsvRow{"y", "two\nlines"}));
}

TEST(Csv, ParserEdgeCases) {
  EXPECT_EQ(parse_csv("a,,b\r\n"), (std::vector<CsvRow>{{"a", "", "b"}}));
  EXPECT_EQ(parse_csv("a,b"), (std::vector<CsvRow>{{"a", "b"}}));
  EXPECT_TRUE(parse_csv("").empty());
  EXPECT_THROW(parse_csv("\"open"), std::runtime_error);
}

}  // namespace
}  // namespace peekgrad
