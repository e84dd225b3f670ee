#include <doctest.h>

#include <cmath>

#include "gogc/coords.hpp"
#include "gogc/error.hpp"
#include "support.hpp"

using namespace gogc;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::IllegalLink;
}

}  // namespace

TEST_SUITE("coords") {

TEST_CASE("frame") {
  PlotFrame f;
  CHECK(f.inner_width() == 520.0);
  CHECK(f.inner_height() == 320.0);
  CHECK(f.center() == Point{300, 200});
  CHECK(f.polar_radius() == 160.0);
}

TEST_CASE("cartesian puts v = 0 on the inner bottom edge") {
  PlotFrame f;
  CHECK(to_canvas_cartesian(f, 0, 0) == Point{40, 360});
  CHECK(to_canvas_cartesian(f, 520, 320) == Point{560, 40});
  CHECK(to_canvas_flip(f, 0, 520) == Point{560, 360});
}

TEST_CASE("coordinate names") {
  CHECK(coord_kind_from("x") == CoordKind::Cartesian);
  CHECK(coord_kind_from("coord_polar_parallel") == CoordKind::PolarParallel);
  CHECK_FALSE(coord_kind_from("coord_sphere").has_value());
  CHECK(to_string(CoordKind::Flip) == "coord_flip");
}

TEST_CASE("equal coordinates give both axes one unit length") {
  PlotFrame f;
  EqualFit fit = fit_equal(f, {0, 10}, {0, 10});
  CHECK(fit.unit == 32.0);
  CHECK(fit.x_range.lo == 100.0);
  CHECK(fit.x_range.hi == 420.0);
  CHECK(to_canvas_equal(f, {0, 10}, {0, 10}, 10, 10) == Point{460, 40});
  CHECK(code_of([&] { fit_equal(f, {1, 1}, {0, 1}); }) == ErrorCode::DegenerateDomain);
}

TEST_CASE("polar angles run clockwise from twelve o'clock") {
  const Point c{100, 100};
  Point top = polar_point(c, 0, 10);
  CHECK(top.x == doctest::Approx(100));
  CHECK(top.y == doctest::Approx(90));
  Point right = polar_point(c, kPi / 2, 10);
  CHECK(right.x == doctest::Approx(110));
  CHECK(right.y == doctest::Approx(100));
  Point inner = to_canvas_polar(PlotFrame{}, 0, 0, 0.5);
  CHECK(inner.y == doctest::Approx(200 - 80));
}

TEST_CASE("parallel axes") {
  PlotFrame f;
  auto axes = parallel_axis_positions(f, 3, CoordKind::Parallel);
  REQUIRE(axes.size() == 3);
  CHECK(axes[0].low == Point{40, 360});
  CHECK(axes[1].high == Point{300, 40});
  CHECK(axes[2].low.x == 560.0);
  CHECK(code_of([&] { parallel_axis_positions(f, 1, CoordKind::Parallel); }) == ErrorCode::TooFewAxes);
  CHECK(code_of([&] { parallel_axis_positions(f, 3, CoordKind::Polar); }) == ErrorCode::IllegalLink);
}

TEST_CASE("record polylines") {
  PlotFrame f;
  auto axes = parallel_axis_positions(f, 2, CoordKind::Parallel);
  const std::vector<double> v = {0, 1};
  auto pts = polyline_for_record(v, axes, CoordKind::Parallel);
  CHECK(pts == std::vector<Point>{{40, 360}, {560, 40}});
  auto spokes = parallel_axis_positions(f, 4, CoordKind::PolarParallel);
  const std::vector<double> w = {1, 1, 1, 1};
  auto loop = polyline_for_record(w, spokes, CoordKind::PolarParallel);
  REQUIRE(loop.size() == 5);
  CHECK(loop.front() == loop.back());
  CHECK(code_of([&] { polyline_for_record(v, spokes, CoordKind::PolarParallel); }) == ErrorCode::ArityMismatch);
}

TEST_CASE("coordinate systems") {
  PlotFrame f;
  CHECK(CoordSystem(CoordKind::Flip, f).extent(NamedExtent::Width) == 320.0);
  CHECK(CoordSystem(CoordKind::Cartesian, f).extent(NamedExtent::Width) == 520.0);
  CHECK(code_of([&] { CoordSystem(CoordKind::Polar, f, 1.0); }) == ErrorCode::BadProperties);
  CHECK(code_of([&] { CoordSystem(CoordKind::Cartesian, PlotFrame{60, 60, 40}); }) == ErrorCode::BadProperties);
  CHECK(code_of([&] { CoordSystem(CoordKind::Parallel, f, 0, 1); }) == ErrorCode::TooFewAxes);
  CoordSystem polar(CoordKind::Polar, f);
  CHECK(polar.project(0, 320).y == doctest::Approx(40));
}

TEST_CASE("property: polar positions invert back to angle and radius") {
  testing::Rng rng(21);
  for (int iter = 0; iter < 500; ++iter) {
    PlotFrame f{testing::uniform(rng, 200, 900), testing::uniform(rng, 200, 900), testing::uniform(rng, 0, 60)};
    const double theta = testing::uniform(rng, 0, 1), r = testing::uniform(rng, 0.01, 1);
    const double inset = testing::uniform(rng, 0, 0.9);
    const Point p = to_canvas_polar(f, theta, r, inset);
    const double dx = p.x - f.center().x, dy = p.y - f.center().y;
    const double radius = std::hypot(dx, dy);
    double angle = std::atan2(dx, -dy);
    if (angle < 0) angle += kTwoPi;
    const double r_back = (radius / f.polar_radius() - inset) / (1 - inset);
    CHECK(std::abs(r_back - r) <= 1e-9);
    CHECK(std::abs(angle / kTwoPi - theta) <= 1e-9);
  }
}

TEST_CASE("property: flip is the cartesian map with u and v exchanged") {
  testing::Rng rng(22);
  for (int iter = 0; iter < 500; ++iter) {
    PlotFrame f{testing::uniform(rng, 100, 900), testing::uniform(rng, 100, 900), testing::uniform(rng, 0, 40)};
    const double u = testing::uniform(rng, -100, 1000), v = testing::uniform(rng, -100, 1000);
    CHECK(to_canvas_flip(f, v, u) == to_canvas_cartesian(f, u, v));
    CHECK(CoordSystem(CoordKind::Flip, f).project(v, u) == to_canvas_cartesian(f, u, v));
  }
}

TEST_CASE("property: spokes are spaced 2pi/n apart") {
  testing::Rng rng(23);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t n = 2 + testing::pick(rng, 30);
    auto axes = parallel_axis_positions(PlotFrame{}, n, CoordKind::PolarParallel, testing::uniform(rng, 0, 0.9));
    for (std::size_t i = 0; i + 1 < n; ++i) {
      CHECK(std::abs(axes[i + 1].angle - axes[i].angle - kTwoPi / double(n)) <= 1e-12);
    }
    CHECK(std::abs(kTwoPi - axes.back().angle - kTwoPi / double(n)) <= 1e-12);
  }
}

}  // TEST_SUITE
