#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "msed/geometry.hpp"

namespace msed {

// One geotagged, timestamped short-text record.
struct Record {
  std::string id;
  std::string user;
  std::int64_t timestamp = 0;  // UTC seconds since epoch
  double lat = 0.0;
  double lon = 0.0;
  std::string text;
  std::vector<std::string> tokens;  // filled by tokenize_records()
};

struct TimeWindow {
  std::int64_t start = 0;
  std::int64_t end = 0;  // inclusive

  bool contains(std::int64_t ts) const { return ts >= start && ts <= end; }
  std::int64_t length() const { return end - start; }

  void validate() const {
    if (end <= start) throw std::invalid_argument("time window: end must be after start");
  }
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Keeps only records inside the box and window, preserving order.
// Throws CorpusError on a duplicate id.
std::vector<Record> validate_corpus(const std::vector<Record>& records, const BoundingBox& box,
                                    const TimeWindow& window);

// Smallest box/window containing every record, padded by a tiny margin so
// boundary records stay strictly inside.
BoundingBox bounding_box_of(const std::vector<Record>& records);
TimeWindow time_window_of(const std::vector<Record>& records);

}  // namespace msed
