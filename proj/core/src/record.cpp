#include "msed/record.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace msed {

std::vector<Record> validate_corpus(const std::vector<Record>& records, const BoundingBox& box,
                                    const TimeWindow& window) {
  box.validate();
  window.validate();
  std::unordered_set<std::string> seen;
  seen.reserve(records.size());
  std::vector<Record> out;
  out.reserve(records.size());
  for (const Record& r : records) {
    if (!seen.insert(r.id).second)
      throw CorpusError("duplicate record id: " + r.id);
    if (box.contains(r.lat, r.lon) && window.contains(r.timestamp)) out.push_back(r);
  }
  return out;
}

BoundingBox bounding_box_of(const std::vector<Record>& records) {
  if (records.empty()) throw CorpusError("cannot derive bounding box from empty corpus");
  BoundingBox b{records[0].lat, records[0].lat, records[0].lon, records[0].lon};
  for (const Record& r : records) {
    b.lat_min = std::min(b.lat_min, r.lat);
    b.lat_max = std::max(b.lat_max, r.lat);
    b.lon_min = std::min(b.lon_min, r.lon);
    b.lon_max = std::max(b.lon_max, r.lon);
  }
  const double pad_lat = std::max(1e-6, 1e-9 * std::abs(b.lat_max));
  const double pad_lon = std::max(1e-6, 1e-9 * std::abs(b.lon_max));
  b.lat_min -= pad_lat;
  b.lat_max += pad_lat;
  b.lon_min -= pad_lon;
  b.lon_max += pad_lon;
  return b;
}

TimeWindow time_window_of(const std::vector<Record>& records) {
  if (records.empty()) throw CorpusError("cannot derive time window from empty corpus");
  TimeWindow w{records[0].timestamp, records[0].timestamp};
  for (const Record& r : records) {
    w.start = std::min(w.start, r.timestamp);
    w.end = std::max(w.end, r.timestamp);
  }
  if (w.end == w.start) w.end = w.start + 1;
  return w;
}

}  // namespace msed
