#pragma once

#include <stdexcept>
#include <utility>

namespace msed {

struct BoundingBox {
  double lat_min = 0.0;
  double lat_max = 0.0;
  double lon_min = 0.0;
  double lon_max = 0.0;

  bool contains(double lat, double lon) const {
    return lat >= lat_min && lat <= lat_max && lon >= lon_min && lon <= lon_max;
  }

  void validate() const {
    if (!(lat_min < lat_max) || !(lon_min < lon_max))
      throw std::invalid_argument("bounding box: min must be strictly below max");
  }
};

// How record coordinates are interpreted. In geographic mode lat/lon are
// degrees and distances come from an equirectangular approximation at the
// box's mean latitude. In planar mode lat/lon are already planar coordinates
// in kilometers (used by the synthetic harness).
enum class CoordMode { geographic, planar_km };

// Maps (lat, lon) to planar (x, y) in meters relative to the box's
// bottom-left corner.
class Projection {
 public:
  Projection(const BoundingBox& box, CoordMode mode);

  std::pair<double, double> to_xy(double lat, double lon) const {
    return {(lon - box_.lon_min) * meters_per_lon_, (lat - box_.lat_min) * meters_per_lat_};
  }

  double distance_m(double lat_a, double lon_a, double lat_b, double lon_b) const;

  double width_m() const { return (box_.lon_max - box_.lon_min) * meters_per_lon_; }
  double height_m() const { return (box_.lat_max - box_.lat_min) * meters_per_lat_; }
  double area_km2() const { return width_m() * height_m() * 1e-6; }

  const BoundingBox& box() const { return box_; }
  CoordMode mode() const { return mode_; }

 private:
  BoundingBox box_;
  CoordMode mode_;
  double meters_per_lat_;
  double meters_per_lon_;
};

}  // namespace msed
