// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "peekgrad/peek.hpp"

namespace peekgrad {
namespace {

using Row = std::vector<double>;
using Mask = std::vector<std::uint8_t>;

Row as_row(std::span<const double> s) { return Row(s.begin(), s.end()); }
Mask as_mask(std::span<const std::uint8_t> s) { return Mask(s.begin(), s.end()); }

class WorkedExample : public ::testing::Test {
 protected:
  const std::vector<std::int64_t> x{3, 1, 5};
  const std::vector<std::int64_t> r{-1, 0, 2};
  PeekContext ctx{x, r, 2};
};

TEST_F(WorkedExample, GridsAndPrimals) {
  EXPECT_EQ(ctx.width(), 5u);
  EXPECT_EQ(ctx.grid(0), (std::vector<std::int64_t>{1, 2, 3, 4, 5}));
  EXPECT_EQ(ctx.grid(1), (std::vector<std::int64_t>{-1, 0, 1, 2, 3}));
  EXPECT_EQ(ctx.grid(2), (std::vector<std::int64_t>{3, 4, 5, 6, 7}));
  EXPECT_EQ(ctx.primal_value(0), 2);
  EXPECT_EQ(ctx.primal_value(1), 1);
  EXPECT_EQ(ctx.primal_value(2), 7);
  EXPECT_EQ(ctx.primal_index(0), 1u);
  EXPECT_EQ(ctx.primal_index(1), 2u);
  EXPECT_EQ(ctx.primal_index(2), 4u);
  EXPECT_EQ(ctx.peeked_count(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(as_mask(ctx.mask(i)), Mask(5, 1));
}

TEST_F(WorkedExample, LiftedRows) {
  const auto a = lift_input(ctx, 0);
  EXPECT_EQ(a.primal(), 2.0);
  ASSERT_EQ(a.dependency_count(), 1u);
  EXPECT_EQ(as_row(a.row(0)), (Row{1, 2, 3, 4, 5}));
  const auto c = lift_input(ctx, 2);
  EXPECT_EQ(c.primal(), 7.0);
  EXPECT_EQ(as_row(c.row(0)), (Row{3, 4, 5, 6, 7}));
  EXPECT_THROW(lift_input(ctx, 3), std::out_of_range);
}

TEST_F(WorkedExample, SameDimensionProduct) {
  const auto a = lift_input(ctx, 0);
  const auto b = 2.0 * a + 1.0;  // [3, 5, 7, 9, 11]
  const auto p = a * b;
  EXPECT_EQ(p.primal(), 10.0);
  ASSERT_EQ(p.dependency_count(), 1u);
  EXPECT_EQ(as_row(p.row(0)), (Row{3, 10, 21, 36, 55}));
}

TEST_F(WorkedExample, CrossDimensionProduct) {
  const auto p = lift_input(ctx, 0) * lift_input(ctx, 1);
  EXPECT_EQ(p.primal(), 2.0);
  ASSERT_EQ(p.dependency_count(), 2u);
  EXPECT_EQ(p.dimensions()[0], 0u);
  EXPECT_EQ(p.dimensions()[1], 1u);
  EXPECT_EQ(as_row(p.row(0)), (Row{1, 2, 3, 4, 5}));
  EXPECT_EQ(as_row(p.row(1)), (Row{-2, 0, 2, 4, 6}));
}

TEST_F(WorkedExample, MergeKeepsDimensionsSorted) {
  const auto p = lift_input(ctx, 2) + lift_input(ctx, 0);
  const auto q = p + lift_input(ctx, 1);
  ASSERT_EQ(q.dependency_count(), 3u);
  EXPECT_EQ(q.dimensions()[0], 0u);
  EXPECT_EQ(q.dimensions()[1], 1u);
  EXPECT_EQ(q.dimensions()[2], 2u);
  EXPECT_EQ(q.primal(), 10.0);
  EXPECT_EQ(as_row(q.find_row(1)), (Row{8, 9, 10, 11, 12}));
  EXPECT_EQ(as_row(q.find_row(2)), (Row{6, 7, 8, 9, 10}));
}

TEST_F(WorkedExample, AdditiveIdentity) {
  const auto a = lift_input(ctx, 1);
  const auto b = a + 0.0;
  EXPECT_EQ(b.primal(), a.primal());
  EXPECT_EQ(as_row(b.row(0)), as_row(a.row(0)));
}

TEST_F(WorkedExample, FigureTwoMasks) {
  const auto x0 = lift_input(ctx, 0);
  const auto x1 = lift_input(ctx, 1);
  const auto x2 = lift_input(ctx, 2);
  const auto y = x0 * (2.0 * x1 + x2);
  EXPECT_EQ(y.primal(), 18.0);
  EXPECT_TRUE(y < 20.0);
  EXPECT_EQ(as_mask(ctx.mask(0)), (Mask{1, 1, 0, 0, 0}));
  EXPECT_EQ(as_mask(ctx.mask(1)), (Mask{1, 1, 1, 0, 0}));
  EXPECT_EQ(as_mask(ctx.mask(2)), (Mask{1, 1, 1, 1, 1}));

  const auto e = extract(ctx, y, 2);
  EXPECT_EQ(e.row, (Row{10, 12, 14, 16, 18}));
  EXPECT_EQ(e.mask, Mask(5, 1));
}

TEST_F(WorkedExample, MasksOnlyLoseBits) {
  const auto x0 = lift_input(ctx, 0);
  EXPECT_TRUE(x0 < 3.0);  // clears 3, 4, 5
  EXPECT_EQ(as_mask(ctx.mask(0)), (Mask{1, 1, 0, 0, 0}));
  EXPECT_FALSE(x0 > 100.0);  // all agree, nothing changes
  EXPECT_TRUE(x0 >= 2.0);    // clears 1
  EXPECT_EQ(as_mask(ctx.mask(0)), (Mask{0, 1, 0, 0, 0}));
}

TEST_F(WorkedExample, ComparisonBetweenPeekScalars) {
  const auto x0 = lift_input(ctx, 0);  // primal 2
  const auto x1 = lift_input(ctx, 1);  // primal 1
  EXPECT_TRUE(x0 > x1);
  // x0 row vs x1 primal: [1,2,3,4,5] > 1 -> F T T T T
  EXPECT_EQ(as_mask(ctx.mask(0)), (Mask{0, 1, 1, 1, 1}));
  // x0 primal vs x1 row: 2 > [-1,0,1,2,3] -> T T T F F
  EXPECT_EQ(as_mask(ctx.mask(1)), (Mask{1, 1, 1, 0, 0}));
}

TEST_F(WorkedExample, MirroredComparisonWithDoubleOnLeft) {
  const auto x2 = lift_input(ctx, 2);
  EXPECT_TRUE(5.0 < x2);  // [3..7] > 5 -> F F F T T
  EXPECT_EQ(as_mask(ctx.mask(2)), (Mask{0, 0, 0, 1, 1}));
}

TEST_F(WorkedExample, ExtractBroadcastsPrimalWithoutDependency) {
  const auto y = lift_input(ctx, 0) * 4.0;
  const auto e = extract(ctx, y, 1);
  EXPECT_EQ(e.row, Row(5, 8.0));
}

TEST(PeekContextTest, FallbackDimension) {
  const std::vector<std::int64_t> x{0};
  const std::vector<std::int64_t> r{3};
  PeekContext ctx(x, r, 2);
  EXPECT_FALSE(ctx.peeked(0));
  EXPECT_THROW(ctx.primal_index(0), std::logic_error);
  const auto a = lift_input(ctx, 0);
  EXPECT_EQ(a.primal(), 3.0);
  EXPECT_EQ(a.dependency_count(), 0u);
  EXPECT_THROW(extract(ctx, a, 0), std::logic_error);
}

TEST(PeekContextTest, ZeroRadius) {
  const std::vector<std::int64_t> x{4, 4};
  const std::vector<std::int64_t> r{0, 1};
  PeekContext ctx(x, r, 0);
  EXPECT_EQ(ctx.width(), 1u);
  EXPECT_TRUE(ctx.peeked(0));
  EXPECT_FALSE(ctx.peeked(1));
  EXPECT_EQ(ctx.grid(0), (std::vector<std::int64_t>{4}));
}

TEST(PeekContextTest, RejectsBadShapes) {
  const std::vector<std::int64_t> x{1, 2};
  const std::vector<std::int64_t> r{0};
  EXPECT_THROW(PeekContext(x, r, 1), std::invalid_argument);
  EXPECT_THROW(PeekContext(x, x, -1), std::invalid_argument);
}

TEST(PeekScalarTest, UnaryOps) {
  const std::vector<std::int64_t> x{2, 0};
  const std::vector<std::int64_t> r{0, 0};
  PeekContext ctx(x, r, 1);
  const auto a = lift_input(ctx, 0);  // [1, 2, 3]
  const auto n = -a;
  EXPECT_EQ(n.primal(), -2.0);
  EXPECT_EQ(as_row(n.row(0)), (Row{-1, -2, -3}));

  const auto b = 2.0 * lift_input(ctx, 1);  // [-2, 0, 2], primal 0
  const auto c = b + 2.0;                   // [0, 2, 4], primal 2
  const auto d = abs(c - 2.0);              // [2, 0, 2]
  EXPECT_EQ(as_row(d.row(0)), (Row{2, 0, 2}));

  const auto e = exp(PeekScalar(0.0));
  EXPECT_EQ(e.primal(), 1.0);
  EXPECT_EQ(e.dependency_count(), 0u);
  EXPECT_EQ(as_row(sqrt(a * a).row(0)), (Row{1, 2, 3}));
  EXPECT_EQ(as_row(floor(a / 2.0).row(0)), (Row{0, 1, 1}));
  EXPECT_EQ(as_row(round(a / 2.0).row(0)), (Row{1, 1, 2}));
  EXPECT_NEAR(log(a).row(0)[2], std::log(3.0), 1e-15);
}

TEST(PeekScalarTest, BinaryFunctions) {
  const std::vector<std::int64_t> x{2};
  const std::vector<std::int64_t> r{0};
  PeekContext ctx(x, r, 1);
  const auto a = lift_input(ctx, 0);  // [1, 2, 3]
  EXPECT_EQ(as_row(pow(a, 2.0).row(0)), (Row{1, 4, 9}));
  EXPECT_EQ(as_row(pow(2.0, a).row(0)), (Row{2, 4, 8}));
  EXPECT_EQ(as_row(min(a, 2.0).row(0)), (Row{1, 2, 2}));
  EXPECT_EQ(as_row(max(a, 2.0).row(0)), (Row{2, 2, 3}));
  EXPECT_EQ(as_row((6.0 / a).row(0)), (Row{6, 3, 2}));
  EXPECT_EQ(as_row((a - a).row(0)), (Row{0, 0, 0}));
}

TEST(PeekScalarTest, CompoundAssignment) {
  const std::vector<std::int64_t> x{2, 10};
  const std::vector<std::int64_t> r{0, 0};
  PeekContext ctx(x, r, 1);
  PeekScalar acc(0.0);
  acc += lift_input(ctx, 0);
  acc *= 2.0;
  acc -= lift_input(ctx, 1);
  EXPECT_EQ(acc.primal(), -6.0);
  EXPECT_EQ(as_row(acc.find_row(0)), (Row{-8, -6, -4}));
  EXPECT_EQ(as_row(acc.find_row(1)), (Row{-5, -6, -7}));
  acc /= 2.0;
  EXPECT_EQ(acc.primal(), -3.0);
}

TEST(PeekScalarTest, DivisionByZeroPropagatesPerEntry) {
  const std::vector<std::int64_t> x{0};
  const std::vector<std::int64_t> r{1};
  PeekContext ctx(x, r, 1);
  const auto a = lift_input(ctx, 0);  // [-1, 0, 1], primal 1
  const auto q = 1.0 / a;
  EXPECT_EQ(q.primal(), 1.0);
  EXPECT_TRUE(std::isinf(q.row(0)[1]));
  const auto z = a / a;
  EXPECT_TRUE(std::isnan(z.row(0)[1]));
  EXPECT_EQ(z.primal(), 1.0);
  EXPECT_TRUE(z > 0.5);
  // The NaN entry cannot follow the primal branch; the finite ones agree.
  EXPECT_EQ(as_mask(ctx.mask(0)), (Mask{1, 0, 1}));
}

TEST(PeekScalarTest, ToIndex) {
  const std::vector<std::int64_t> x{3};
  const std::vector<std::int64_t> r{0};
  PeekContext ctx(x, r, 1);
  const auto a = min(lift_input(ctx, 0), 3.0);  // [2, 3, 3]
  EXPECT_EQ(to_index(a), 3);
  EXPECT_EQ(as_mask(ctx.mask(0)), (Mask{0, 1, 1}));

  EXPECT_EQ(to_index(PeekScalar(5.2)), 5);
  EXPECT_EQ(to_index(5.2), 5);
  EXPECT_THROW(to_index(PeekScalar(NAN)), std::domain_error);
  EXPECT_THROW(to_index(INFINITY), std::domain_error);
}

TEST(PeekScalarTest, ToIndexKeepsMaskWhenRowIsConstant) {
  const std::vector<std::int64_t> x{3};
  const std::vector<std::int64_t> r{0};
  PeekContext ctx(x, r, 1);
  const auto a = lift_input(ctx, 0) * 0.0 + 4.0;
  EXPECT_EQ(to_index(a), 4);
  EXPECT_EQ(as_mask(ctx.mask(0)), Mask(3, 1));
}

TEST(PeekScalarTest, MixingContextsThrows) {
  const std::vector<std::int64_t> x{3};
  const std::vector<std::int64_t> r{0};
  PeekContext c1(x, r, 1);
  PeekContext c2(x, r, 1);
  EXPECT_THROW(lift_input(c1, 0) + lift_input(c2, 0), std::logic_error);
  const auto y = lift_input(c1, 0);
  EXPECT_THROW(extract(c2, y, 0), std::logic_error);
}

TEST(DecisionLogTest, RecordsPrimalOutcomes) {
  const std::vector<std::int64_t> x{3};
  const std::vector<std::int64_t> r{0};
  PeekContext ctx(x, r, 1);
  const auto a = lift_input(ctx, 0);
  DecisionLog log;
  {
    ScopedDecisionLog scope(log);
    (void)(a < 2.0);
    (void)(a >= 3.0);
    (void)to_index(a);
  }
  (void)(a < 10.0);
  EXPECT_EQ(log.entries, (std::vector<std::int64_t>{0, 1, 3}));
}

}  // namespace
}  // namespace peekgrad
