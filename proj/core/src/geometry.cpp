#include "msed/geometry.hpp"

#include <cmath>

namespace msed {

namespace {
constexpr double kEarthRadiusM = 6371000.0;
constexpr double kPi = 3.14159265358979323846;
}  // namespace

Projection::Projection(const BoundingBox& box, CoordMode mode) : box_(box), mode_(mode) {
  box_.validate();
  if (mode_ == CoordMode::geographic) {
    const double mean_lat = 0.5 * (box_.lat_min + box_.lat_max) * kPi / 180.0;
    meters_per_lat_ = kEarthRadiusM * kPi / 180.0;
    meters_per_lon_ = meters_per_lat_ * std::cos(mean_lat);
  } else {
    meters_per_lat_ = 1000.0;
    meters_per_lon_ = 1000.0;
  }
}

double Projection::distance_m(double lat_a, double lon_a, double lat_b, double lon_b) const {
  const double dx = (lon_a - lon_b) * meters_per_lon_;
  const double dy = (lat_a - lat_b) * meters_per_lat_;
  return std::hypot(dx, dy);
}

}  // namespace msed
