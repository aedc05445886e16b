#include <gtest/gtest.h>

#include "borderforge/errors.hpp"
#include "borderforge/order_ideal.hpp"
#include "borderforge/sampling.hpp"

using namespace borderforge;

namespace {

std::vector<Term> T(std::initializer_list<Term> ts) { return ts; }

}  // namespace

TEST(OrderIdeal, Membership) {
  const Term one{0, 0}, x{1, 0}, y{0, 1};
  EXPECT_TRUE(is_order_ideal(T({one, y})));
  EXPECT_FALSE(is_order_ideal(T({y})));
  EXPECT_TRUE(is_order_ideal(std::vector<Term>{}));
  Ring ring(7, 2);
  EXPECT_THROW(OrderIdeal(ring, T({x, y})), NotAnOrderIdeal);
}

TEST(OrderIdeal, BorderExamples) {
  Ring ring(7, 2);
  const Term one{0, 0}, x{1, 0}, y{0, 1}, xy{1, 1};
  EXPECT_EQ(border(ring, OrderIdeal(ring, T({one, y}))), T({xy, Term{0, 2}, x}));
  EXPECT_EQ(border(ring, OrderIdeal(ring, T({one}))), T({x, y}));
  EXPECT_EQ(border(ring, OrderIdeal(ring, T({one, x, y, xy}))),
            T({Term{2, 1}, Term{1, 2}, Term{2, 0}, Term{0, 2}}));
  EXPECT_TRUE(border(ring, OrderIdeal{}).empty());
}

TEST(OrderIdeal, CornerExamples) {
  Ring ring(7, 2);
  const Term one{0, 0}, x{1, 0}, y{0, 1};
  EXPECT_EQ(corner_terms(ring, OrderIdeal(ring, T({one}))), T({one}));
  EXPECT_EQ(corner_terms(ring, OrderIdeal(ring, T({one, y}))), T({y}));
  EXPECT_EQ(corner_terms(ring, OrderIdeal(ring, T({one, x, y}))), T({x, y}));
}

TEST(OrderIdeal, ReconstructExamples) {
  Ring ring(7, 2);
  const Term one{0, 0}, x{1, 0}, y{0, 1};
  EXPECT_EQ(reconstruct_from_corners(ring, T({y})), OrderIdeal(ring, T({one, y})));
  EXPECT_EQ(reconstruct_from_corners(ring, T({x, y})), OrderIdeal(ring, T({one, x, y})));
  EXPECT_TRUE(reconstruct_from_corners(ring, std::vector<Term>{}).empty());
}

TEST(OrderIdeal, SampledIdealProperties) {
  Ring ring(31, 3);
  Rng rng(21);
  for (int i = 0; i < 1000; ++i) {
    const auto O = sample_order_ideal(ring, {3, 3, 3}, rng).ideal;
    ASSERT_EQ(reconstruct_from_corners(ring, corner_terms(ring, O)), O);
    const auto B = border(ring, O);
    std::vector<Term> both = O.terms();
    for (const auto& b : B) {
      ASSERT_FALSE(O.contains(b));
      both.push_back(b);
    }
    ASSERT_TRUE(is_order_ideal(both));
  }
}

TEST(Universe, SizesAndCorners) {
  for (std::size_t n = 1; n <= 5; ++n) {
    Ring ring(31, n);
    for (unsigned d = 0; d <= 8; ++d) {
      const Universe L(n, d);
      ASSERT_EQ(L.size(), binomial(n + d, n));
      ASSERT_EQ(L.terms(ring).size(), L.size());
      if (d <= 4) {
        const OrderIdeal O(ring, L.terms(ring));
        ASSERT_EQ(corner_terms(ring, O), L.corners(ring));
        ASSERT_EQ(L.corners(ring).size(), terms_of_degree(n, d).size());
      }
    }
  }
  EXPECT_EQ(Universe(2, 2).enlarged().size(), 10u);
}
