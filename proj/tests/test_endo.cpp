#include "simplex_operad/endo.hpp"
#include "simplex_operad/random.hpp"

#include <gtest/gtest.h>

#include <vector>

namespace so = simplex_operad;
using so::Dist;
using so::EndoFn;
using so::Point;
using so::Scalar;

namespace {

double at(const EndoFn& f, std::vector<double> x) { return so::evaluate(f, Point(std::move(x))); }

}  // namespace

TEST(EndoFn, Primitives) {
  EXPECT_EQ(at(EndoFn::constant(2, 3.5), {1, 2}), 3.5);
  EXPECT_EQ(at(EndoFn::projection(3, 2), {4, 5, 6}), 5);
  EXPECT_EQ(at(EndoFn::zero(1), {9}), 0);
  EXPECT_THROW(EndoFn::projection(2, 3), std::out_of_range);
  EXPECT_THROW(EndoFn::constant(0, 1), std::invalid_argument);
}

TEST(EndoFn, ArityIsChecked) {
  EXPECT_THROW(at(EndoFn::projection(2, 1), {1}), std::invalid_argument);
  EXPECT_THROW(EndoFn::zero(2) + EndoFn::zero(3), std::invalid_argument);
}

TEST(EndoFn, RepresentationIsExpectation) {
  Dist p{Scalar(1, 4), Scalar(1, 4), Scalar(1, 2)};
  EXPECT_DOUBLE_EQ(at(so::represent(p), {1, 2, 3}), 2.25);
  EXPECT_DOUBLE_EQ(at(so::represent(Dist::uniform(2)), {1, 2}), 1.5);
}

TEST(EndoFn, LeftCompositionUsesOnlyTheWindow) {
  Dist p{Scalar(1, 2), Scalar(1, 2)};
  // (p o_2^L f)(x1, x2, x3) = p_2 f(x2, x3), with f = x1 + x2.
  EndoFn f = EndoFn::projection(2, 1) + EndoFn::projection(2, 2);
  EndoFn g = so::left_compose(p, 2, f);
  EXPECT_EQ(g.arity(), 3u);
  EXPECT_DOUBLE_EQ(at(g, {100, 4, 5}), 4.5);
  EXPECT_DOUBLE_EQ(at(g, {-7, 4, 5}), 4.5);
}

TEST(EndoFn, RightCompositionFeedsTheAverage) {
  Dist q{Scalar(1, 2), Scalar(1, 2)};
  // (g o_1^R q)(x1, x2, x3) = g(<q,(x1,x2)>, x3), with g = 2 x1 + x2 made of sums.
  EndoFn g = EndoFn::projection(2, 1) + EndoFn::projection(2, 1) + EndoFn::projection(2, 2);
  EndoFn h = so::right_compose(g, 1, q);
  EXPECT_DOUBLE_EQ(at(h, {2, 4, 1.5}), 7.5);
}

TEST(EndoFn, EndoCompositionSubstitutes) {
  EndoFn f = EndoFn::projection(2, 1) + EndoFn::projection(2, 2);
  EndoFn g = EndoFn::constant(3, 10.0);
  EndoFn h = so::endo_compose(f, 2, g);
  EXPECT_EQ(h.arity(), 4u);
  EXPECT_DOUBLE_EQ(at(h, {1, 0, 0, 0}), 11.0);
}

TEST(EndoFn, SlotRangeChecked) {
  Dist p = Dist::uniform(2);
  EXPECT_THROW(so::left_compose(p, 3, so::identity_fn()), std::out_of_range);
  EXPECT_THROW(so::right_compose(so::identity_fn(), 2, p), std::out_of_range);
  EXPECT_THROW(so::endo_compose(so::identity_fn(), 0, so::identity_fn()), std::out_of_range);
}

TEST(EndoFn, IdentityIsRepresentationOfUnit) {
  for (double x : {-3.0, 0.0, 2.5}) {
    EXPECT_EQ(at(so::identity_fn(), {x}), x);
    EXPECT_EQ(at(so::represent(so::unit_dist()), {x}), x);
  }
}

TEST(Point, SubtupleBounds) {
  Point x(std::vector<double>{1, 2, 3, 4});
  auto w = x.subtuple(2, 2);
  EXPECT_EQ(w.size(), 2u);
  EXPECT_EQ(w[0], 2);
  EXPECT_THROW(x.subtuple(4, 2), std::out_of_range);
  EXPECT_THROW(x.coord(0), std::out_of_range);
}

TEST(EndoFn, RandomTreesHaveRequestedArity) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    so::Rng rng = so::sample_rng(31, s);
    std::size_t n = so::uniform_index(rng, 1, 5);
    EndoFn f = so::random_endofn(rng, n);
    EXPECT_EQ(f.arity(), n);
    EXPECT_NO_THROW(so::evaluate(f, so::random_point(rng, n)));
  }
}
