#include "msed/io.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace msed {

using ordered_json = nlohmann::ordered_json;

namespace {

// days since 1970-01-01 for a proleptic Gregorian date
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

}  // namespace

std::int64_t parse_timestamp(const std::string& value) {
  // plain integer: epoch seconds
  if (!value.empty() &&
      value.find_first_not_of("0123456789-", value[0] == '-' ? 1 : 0) == std::string::npos &&
      value.find('-', 1) == std::string::npos) {
    return std::stoll(value);
  }
  int y, mo, d, h, mi, s;
  char sep;
  if (std::sscanf(value.c_str(), "%d-%d-%d%c%d:%d:%d", &y, &mo, &d, &sep, &h, &mi, &s) != 7 ||
      (sep != 'T' && sep != 't' && sep != ' '))
    throw std::invalid_argument("unparseable timestamp: " + value);
  std::int64_t ts = days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
  // optional offset suffix
  const auto tail = value.find_first_of("Zz+", 19);
  auto minus = value.rfind('-');
  if (minus != std::string::npos && minus < 19) minus = std::string::npos;
  std::size_t off_pos = tail;
  if (off_pos == std::string::npos && minus != std::string::npos) off_pos = minus;
  if (off_pos != std::string::npos && value[off_pos] != 'Z' && value[off_pos] != 'z') {
    int oh = 0, om = 0;
    if (std::sscanf(value.c_str() + off_pos + 1, "%d:%d", &oh, &om) < 1)
      throw std::invalid_argument("unparseable timezone offset: " + value);
    const int sign = value[off_pos] == '-' ? -1 : 1;
    ts -= sign * (oh * 3600 + om * 60);
  }
  return ts;
}

std::vector<Record> read_records_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::vector<Record> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      Record r;
      r.id = j.at("id").get<std::string>();
      r.user = j.at("user").get<std::string>();
      const auto& ts = j.at("ts");
      if (ts.is_number())
        r.timestamp = ts.get<std::int64_t>();
      else
        r.timestamp = parse_timestamp(ts.get<std::string>());
      r.lat = j.at("lat").get<double>();
      r.lon = j.at("lon").get<double>();
      r.text = j.at("text").get<std::string>();
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what(), line_no);
    }
  }
  return out;
}

void write_records_jsonl(const std::vector<Record>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  for (const Record& r : records) {
    ordered_json j;
    j["id"] = r.id;
    j["user"] = r.user;
    j["ts"] = r.timestamp;
    j["lat"] = r.lat;
    j["lon"] = r.lon;
    j["text"] = r.text;
    out << j.dump() << '\n';
  }
}

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file for hashing: " + path);
  std::uint64_t hash = 0xcbf29ce484222325ull;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize n = in.gcount();
    for (std::streamsize i = 0; i < n; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001b3ull;
    }
  }
  return hash;
}

std::map<std::string, std::string> config_snapshot(const DetectionConfig& cfg) {
  auto fmt = [](double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  };
  std::map<std::string, std::string> m;
  m["tt_minutes"] = fmt(cfg.tt_minutes);
  m["td_meters"] = fmt(cfg.td_meters);
  m["delta_t_minutes"] = fmt(cfg.delta_t_minutes);
  m["delta_d_meters"] = fmt(cfg.delta_d_meters);
  m["n_scale"] = std::to_string(cfg.n_scale);
  m["min_term_support"] = std::to_string(cfg.min_term_support);
  {
    std::ostringstream os;
    for (std::size_t i = 0; i < cfg.l_filter_probes_km.size(); ++i)
      os << (i ? "," : "") << cfg.l_filter_probes_km[i];
    m["l_filter_probes_km"] = os.str();
  }
  m["l_filter_threshold"] = fmt(cfg.l_filter_threshold);
  m["l_filter_enabled"] = cfg.l_filter_enabled ? "true" : "false";
  m["min_term_len"] = std::to_string(cfg.min_term_len);
  m["max_term_len"] = std::to_string(cfg.max_term_len);
  m["min_cluster_records"] = std::to_string(cfg.min_cluster_records);
  m["min_cluster_users"] = std::to_string(cfg.min_cluster_users);
  m["max_single_user_fraction"] = fmt(cfg.max_single_user_fraction);
  {
    std::ostringstream os;
    for (std::size_t i = 0; i < cfg.blacklist_terms.size(); ++i)
      os << (i ? "," : "") << cfg.blacklist_terms[i];
    m["blacklist_terms"] = os.str();
  }
  m["coord_mode"] = cfg.coord_mode == CoordMode::planar_km ? "planar" : "geographic";
  return m;
}

namespace {

ordered_json cluster_to_json(const EventCluster& c) {
  ordered_json j;
  j["id"] = c.id;
  j["record_ids"] = c.record_ids;
  j["n_records"] = c.n_records;
  j["n_users"] = c.n_users;
  j["median_timestamp"] = c.median_timestamp;
  j["t80_interval_seconds"] = c.t80_interval_seconds;
  j["centroid"] = {{"lat", c.centroid_lat}, {"lon", c.centroid_lon}};
  j["top_terms"] = c.top_terms;
  return j;
}

void write_json_file(const ordered_json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace

void write_clusters_json(const PipelineResult& result, const std::string& path) {
  ordered_json j;
  j["method"] = result.method;
  j["seed"] = result.seed;
  j["n_clusters"] = result.clusters.size();
  if (!result.warning.empty()) j["warning"] = result.warning;
  j["graph"] = {{"n_vertices", result.graph_stats.n_vertices},
                {"n_edges", result.graph_stats.n_edges},
                {"total_weight", result.graph_stats.total_weight},
                {"modularity", result.graph_stats.modularity_q},
                {"n_communities", result.graph_stats.n_communities}};
  j["clusters"] = ordered_json::array();
  for (const auto& c : result.clusters) j["clusters"].push_back(cluster_to_json(c));
  write_json_file(j, path);
}

void write_clusters_geojson(const PipelineResult& result, const std::vector<Record>& records,
                            const std::string& path) {
  ordered_json features = ordered_json::array();
  for (const auto& c : result.clusters) {
    for (int r : c.record_indices) {
      ordered_json f;
      f["type"] = "Feature";
      f["geometry"] = {{"type", "Point"},
                       {"coordinates", {records[r].lon, records[r].lat}}};
      f["properties"] = {{"cluster_id", c.id}, {"record_id", records[r].id}};
      features.push_back(std::move(f));
    }
  }
  ordered_json j;
  j["type"] = "FeatureCollection";
  j["features"] = std::move(features);
  write_json_file(j, path);
}

void write_dropped_json(const PipelineResult& result, const std::string& path) {
  ordered_json j;
  j["n_dropped"] = result.dropped.size();
  j["dropped"] = ordered_json::array();
  for (const auto& d : result.dropped) {
    ordered_json e = cluster_to_json(d.cluster);
    e["reason"] = drop_reason_name(d.reason);
    j["dropped"].push_back(std::move(e));
  }
  write_json_file(j, path);
}

void write_manifest_json(const RunManifest& manifest, const std::string& path) {
  ordered_json j;
  j["command"] = manifest.command;
  j["version"] = manifest.version;
  j["input_digest"] = manifest.input_digest;
  j["seed"] = manifest.seed;
  j["config"] = manifest.config;
  j["timings_ms"] = manifest.timings_ms;
  write_json_file(j, path);
}

}  // namespace msed
