#pragma once

#include <optional>
#include <vector>

#include "msed/geometry.hpp"

namespace msed {

// Discretization of the bounding box into square delta_d cells. Cell index
// is row * n_cols + col, row 0 at the box's south edge.
class Grid {
 public:
  Grid(const Projection& proj, double delta_d_m);

  // Half-open intervals: a point on a shared cell edge goes to the
  // higher-index cell; the outer max edge clamps into the last cell.
  int cell_of(double lat, double lon) const;

  std::pair<double, double> center_xy(int cell) const;
  double cell_distance_m(int cell_a, int cell_b) const;

  int n_rows() const { return n_rows_; }
  int n_cols() const { return n_cols_; }
  int n_cells() const { return n_rows_ * n_cols_; }
  double delta_d() const { return delta_d_; }
  const Projection& projection() const { return proj_; }

 private:
  Projection proj_;
  double delta_d_;
  int n_rows_;
  int n_cols_;
};

// Sentinel spatial scale for two points in the same cell.
inline constexpr int kSameCell = 0;

// Log-equispaced distance boundaries mapping center-to-center distances to
// spatial scales 1 (coarsest, largest distances) .. n_scale (finest).
struct ScaleBoundaries {
  int n_scale = 1;
  std::vector<double> boundaries;  // n_scale + 1 monotone distances

  static ScaleBoundaries make(double d_min, double d_max, int n_scale);

  // d_min/d_max over center distances of distinct occupied cell pairs.
  static ScaleBoundaries from_occupied_cells(const Grid& grid,
                                             const std::vector<int>& occupied_cells, int n_scale);
};

// kSameCell for d == 0; otherwise the spatial scale of d, clamped to
// n_scale below d_min and to 1 above d_max. Throws on negative d.
int spatial_scale_of(const ScaleBoundaries& b, double d);

// S_t = n_scale + 1 - S_s; the DWT level used downstream equals S_s.
int temporal_scale_for(int n_scale, int spatial_scale);

// ceil(min(log2 l_d, log2 l_t))
int nscale_upper_bound(int l_d, int l_t);

}  // namespace msed
