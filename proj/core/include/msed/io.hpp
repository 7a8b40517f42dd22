#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "msed/config.hpp"
#include "msed/detectors.hpp"
#include "msed/record.hpp"

namespace msed {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// JSON-lines corpus: one object per line with fields id, user, ts (epoch
// seconds or ISO-8601), lat, lon, text. Throws ParseError with the
// offending line number.
std::vector<Record> read_records_jsonl(const std::string& path);
void write_records_jsonl(const std::vector<Record>& records, const std::string& path);

// ISO-8601 "YYYY-MM-DDTHH:MM:SS[Z|+HH:MM|-HH:MM]" to UTC epoch seconds.
std::int64_t parse_timestamp(const std::string& value);

std::uint64_t fnv1a64_file(const std::string& path);

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> config;  // flat snapshot
  std::string input_digest;                   // hex fnv-1a of input bytes
  std::uint64_t seed = 0;
  std::string version;
  std::map<std::string, double> timings_ms;   // per stage
};

std::map<std::string, std::string> config_snapshot(const DetectionConfig& cfg);

void write_clusters_json(const PipelineResult& result, const std::string& path);
void write_clusters_geojson(const PipelineResult& result, const std::vector<Record>& records,
                            const std::string& path);
void write_dropped_json(const PipelineResult& result, const std::string& path);
void write_manifest_json(const RunManifest& manifest, const std::string& path);

}  // namespace msed
