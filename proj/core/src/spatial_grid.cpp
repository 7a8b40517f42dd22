#include "msed/spatial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace msed {

Grid::Grid(const Projection& proj, double delta_d_m) : proj_(proj), delta_d_(delta_d_m) {
  if (delta_d_m <= 0) throw std::invalid_argument("grid: delta_d must be positive");
  n_cols_ = std::max(1, static_cast<int>(std::ceil(proj_.width_m() / delta_d_ - 1e-12)));
  n_rows_ = std::max(1, static_cast<int>(std::ceil(proj_.height_m() / delta_d_ - 1e-12)));
}

int Grid::cell_of(double lat, double lon) const {
  if (!proj_.box().contains(lat, lon))
    throw std::out_of_range("grid: point outside bounding box");
  auto [x, y] = proj_.to_xy(lat, lon);
  int col = static_cast<int>(std::floor(x / delta_d_));
  int row = static_cast<int>(std::floor(y / delta_d_));
  col = std::clamp(col, 0, n_cols_ - 1);
  row = std::clamp(row, 0, n_rows_ - 1);
  return row * n_cols_ + col;
}

std::pair<double, double> Grid::center_xy(int cell) const {
  const int row = cell / n_cols_;
  const int col = cell % n_cols_;
  return {(col + 0.5) * delta_d_, (row + 0.5) * delta_d_};
}

double Grid::cell_distance_m(int cell_a, int cell_b) const {
  if (cell_a == cell_b) return 0.0;
  auto [xa, ya] = center_xy(cell_a);
  auto [xb, yb] = center_xy(cell_b);
  return std::hypot(xa - xb, ya - yb);
}

ScaleBoundaries ScaleBoundaries::make(double d_min, double d_max, int n_scale) {
  if (n_scale < 1) throw std::invalid_argument("n_scale must be >= 1");
  if (d_min <= 0 || d_max < d_min)
    throw std::invalid_argument("scale boundaries need 0 < d_min <= d_max");
  ScaleBoundaries b;
  b.n_scale = n_scale;
  b.boundaries.resize(n_scale + 1);
  const double ratio = std::pow(d_max / d_min, 1.0 / n_scale);
  for (int i = 0; i <= n_scale; ++i) b.boundaries[i] = d_min * std::pow(ratio, i);
  b.boundaries[0] = d_min;
  b.boundaries[n_scale] = d_max;
  return b;
}

ScaleBoundaries ScaleBoundaries::from_occupied_cells(const Grid& grid,
                                                     const std::vector<int>& occupied_cells,
                                                     int n_scale) {
  double d_min = 0.0, d_max = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < occupied_cells.size(); ++i) {
    for (std::size_t j = i + 1; j < occupied_cells.size(); ++j) {
      const double d = grid.cell_distance_m(occupied_cells[i], occupied_cells[j]);
      if (!any) {
        d_min = d_max = d;
        any = true;
      } else {
        d_min = std::min(d_min, d);
        d_max = std::max(d_max, d);
      }
    }
  }
  if (!any) {
    // single occupied cell: only same-cell lookups can occur downstream
    ScaleBoundaries b;
    b.n_scale = n_scale;
    b.boundaries.assign(n_scale + 1, grid.delta_d());
    return b;
  }
  if (d_max <= d_min) {
    ScaleBoundaries b;
    b.n_scale = n_scale;
    b.boundaries.assign(n_scale + 1, d_min);
    return b;
  }
  return make(d_min, d_max, n_scale);
}

int spatial_scale_of(const ScaleBoundaries& b, double d) {
  if (d < 0) throw std::invalid_argument("spatial_scale_of: negative distance");
  if (d == 0.0) return kSameCell;
  if (d <= b.boundaries.front()) return b.n_scale;
  if (d > b.boundaries.back()) return 1;
  for (int k = 0; k < b.n_scale; ++k) {
    if (d <= b.boundaries[k + 1]) return b.n_scale - k;
  }
  return 1;  // unreachable
}

int temporal_scale_for(int n_scale, int spatial_scale) {
  if (spatial_scale < 1 || spatial_scale > n_scale)
    throw std::out_of_range("spatial scale out of range");
  return n_scale + 1 - spatial_scale;
}

int nscale_upper_bound(int l_d, int l_t) {
  if (l_d < 1 || l_t < 1) throw std::invalid_argument("grid dimensions must be >= 1");
  const double m = std::min(std::log2(static_cast<double>(l_d)), std::log2(static_cast<double>(l_t)));
  return static_cast<int>(std::ceil(m - 1e-12));
}

}  // namespace msed
