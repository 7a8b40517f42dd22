#include <doctest.h>

#include "msed/spatial_grid.hpp"

using namespace msed;

namespace {
const BoundingBox kNycBox{40.4957, 40.9176, -74.2557, -73.6895};
}

TEST_CASE("cell assignment uses half-open intervals") {
  const Projection proj(BoundingBox{0, 10, 0, 10}, CoordMode::planar_km);
  const Grid grid(proj, 1000.0);  // 1 km cells
  CHECK(grid.n_rows() == 10);
  CHECK(grid.n_cols() == 10);
  CHECK(grid.cell_of(0, 0) == 0);
  CHECK(grid.cell_of(0, 1.0) == 1);     // exactly one cell east
  CHECK(grid.cell_of(0, 0.999) == 0);
  CHECK(grid.cell_of(10, 10) == 99);    // outer max edge clamps inward
  CHECK_THROWS_AS(grid.cell_of(-1, 0), std::out_of_range);
}

TEST_CASE("NYC grid dimensions at 100 m resolution") {
  const Projection proj(kNycBox, CoordMode::geographic);
  const Grid grid(proj, 100.0);
  // frozen from a hand evaluation of the equirectangular extent / 100
  CHECK(grid.n_cols() == 478);
  CHECK(grid.n_rows() == 470);
}

TEST_CASE("cell distances are a metric on centers") {
  const Projection proj(BoundingBox{0, 4, 0, 4}, CoordMode::planar_km);
  const Grid grid(proj, 1000.0);
  for (int a = 0; a < grid.n_cells(); ++a)
    for (int b = 0; b < grid.n_cells(); ++b) {
      CHECK(grid.cell_distance_m(a, b) == grid.cell_distance_m(b, a));
      CHECK(grid.cell_distance_m(a, b) >= 0.0);
      CHECK((grid.cell_distance_m(a, b) == 0.0) == (a == b));
    }
}

TEST_CASE("log-equispaced boundaries") {
  const auto b = ScaleBoundaries::make(1.0, 16.0, 4);
  REQUIRE(b.boundaries.size() == 5);
  CHECK(b.boundaries[0] == 1.0);
  CHECK(b.boundaries[4] == 16.0);
  for (int i = 1; i < 4; ++i)
    CHECK(b.boundaries[i + 1] / b.boundaries[i] ==
          doctest::Approx(b.boundaries[1] / b.boundaries[0]).epsilon(1e-9));

  SUBCASE("scale lookup") {
    CHECK(spatial_scale_of(b, 3.0) == 3);   // in (2, 4]
    CHECK(spatial_scale_of(b, 0.0) == kSameCell);
    CHECK(spatial_scale_of(b, 16.0) == 1);
    CHECK(spatial_scale_of(b, 0.5) == 4);   // below d_min clamps fine
    CHECK(spatial_scale_of(b, 100.0) == 1); // above d_max clamps coarse
    CHECK_THROWS_AS(spatial_scale_of(b, -1.0), std::invalid_argument);
  }
  SUBCASE("monotone non-increasing in distance") {
    int prev = 1000;
    for (double d = 0.01; d < 20.0; d += 0.01) {
      const int s = spatial_scale_of(b, d);
      CHECK(s <= prev);
      prev = s;
    }
  }
}

TEST_CASE("temporal scale is the inverse of the spatial scale") {
  CHECK(temporal_scale_for(4, 1) == 4);
  CHECK(temporal_scale_for(4, 2) == 3);
  CHECK(temporal_scale_for(4, 3) == 2);
  CHECK(temporal_scale_for(4, 4) == 1);
  CHECK(temporal_scale_for(1, 1) == 1);
  CHECK_THROWS_AS(temporal_scale_for(4, 0), std::out_of_range);
  CHECK_THROWS_AS(temporal_scale_for(4, 5), std::out_of_range);
  // involution pairing
  for (int n = 1; n <= 6; ++n)
    for (int s = 1; s <= n; ++s) CHECK(temporal_scale_for(n, temporal_scale_for(n, s)) == s);
}

TEST_CASE("n_scale upper bound") {
  CHECK(nscale_upper_bound(10, 64) == 4);
  CHECK(nscale_upper_bound(1, 1) == 0);
  CHECK(nscale_upper_bound(16, 16) == 4);
  CHECK(nscale_upper_bound(16, 64) == 4);
}

TEST_CASE("boundaries from occupied cells") {
  const Projection proj(BoundingBox{0, 10, 0, 10}, CoordMode::planar_km);
  const Grid grid(proj, 1000.0);
  SUBCASE("regular case spans min/max occupied center distances") {
    const auto b = ScaleBoundaries::from_occupied_cells(grid, {0, 1, 9}, 3);
    CHECK(b.boundaries.front() == doctest::Approx(1000.0));
    CHECK(b.boundaries.back() == doctest::Approx(9000.0));
  }
  SUBCASE("single occupied cell degenerates to the cell size") {
    const auto b = ScaleBoundaries::from_occupied_cells(grid, {5}, 4);
    for (double d : b.boundaries) CHECK(d == grid.delta_d());
  }
}
