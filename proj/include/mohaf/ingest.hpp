#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mohaf/model.hpp"
#include "mohaf/rng.hpp"

namespace mohaf {

// One cluster-trace job event row. Only submissions (event_type = 0) become
// requests.
struct JobEvent {
  long long timestamp = 0;
  long long job_id = 0;
  int event_type = 0;
  int scheduling_class = 0;  // clamped to [0,3]
  int priority = 0;          // clamped to [0,10]
};

// Column indices of the five consumed fields within a trace row.
struct ColumnMap {
  int timestamp = 0;
  int job_id = 1;
  int event_type = 2;
  int scheduling_class = 3;
  int priority = 4;
};

// Parses "a,b,c,d,e" into a ColumnMap.
inline ColumnMap parse_column_map(const std::string& s) {
  ColumnMap m;
  int values[5];
  if (std::sscanf(s.c_str(), "%d,%d,%d,%d,%d", &values[0], &values[1], &values[2], &values[3],
                  &values[4]) != 5)
    throw std::invalid_argument("column map must be five comma-separated indices");
  for (const int v : values)
    if (v < 0) throw std::invalid_argument("column indices must be >= 0");
  m.timestamp = values[0];
  m.job_id = values[1];
  m.event_type = values[2];
  m.scheduling_class = values[3];
  m.priority = values[4];
  return m;
}

struct QosDefaults {
  double min_reliability = 0.95;
  double min_availability = 0.95;
  double max_latency = 150.0;
};

struct GenerationConfig {
  int n_requests = 0;
  int n_resources = 0;
  std::uint64_t seed = 0;
  QosDefaults qos;
};

inline void check_config(const GenerationConfig& cfg) {
  if (cfg.n_requests < 1 || cfg.n_resources < 1)
    throw std::invalid_argument("generation config requires n_requests, n_resources >= 1");
}

struct TraceParseResult {
  std::vector<JobEvent> events;  // submission events only
  std::size_t malformed = 0;     // rows skipped, never fatal
};

namespace detail {

inline bool parse_ll(const std::string& s, long long& out) {
  if (s.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stoll(s, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == s.size();
}

}  // namespace detail

// Reads comma-separated job event rows, keeping submissions. Malformed rows
// (missing columns, non-numeric fields) are counted and skipped.
inline TraceParseResult parse_job_events(std::istream& in, const ColumnMap& cols) {
  if (!in.good()) throw std::runtime_error("unreadable trace stream");
  const int max_col = std::max({cols.timestamp, cols.job_id, cols.event_type,
                                cols.scheduling_class, cols.priority});
  TraceParseResult result;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    if (static_cast<int>(fields.size()) <= max_col) {
      ++result.malformed;
      continue;
    }
    long long ts, job, type, cls, prio;
    if (!detail::parse_ll(fields[cols.timestamp], ts) || !detail::parse_ll(fields[cols.job_id], job) ||
        !detail::parse_ll(fields[cols.event_type], type) ||
        !detail::parse_ll(fields[cols.scheduling_class], cls) ||
        !detail::parse_ll(fields[cols.priority], prio)) {
      ++result.malformed;
      continue;
    }
    if (type != 0) continue;  // submissions only
    JobEvent e;
    e.timestamp = ts;
    e.job_id = job;
    e.event_type = 0;
    e.scheduling_class = static_cast<int>(std::clamp(cls, 0LL, 3LL));
    e.priority = static_cast<int>(std::clamp(prio, 0LL, 10LL));
    result.events.push_back(e);
  }
  return result;
}

// Demand floor for scheduling class 0, which would otherwise map to zero
// demand: half of class 1's value.
inline constexpr double kClassZeroDemand = 1.0 / 6.0;

// Maps a submission event to a request: demand = class/3 (class 0 floored),
// priority = priority/10, budget = demand*20 + priority*5, location uniform
// on (-100,100)^2 from the seeded stream.
inline Request request_from_job(const JobEvent& e, Rng& rng, const QosDefaults& qos,
                                std::string id) {
  Request req;
  req.id = std::move(id);
  req.demand = e.scheduling_class == 0 ? kClassZeroDemand
                                       : static_cast<double>(e.scheduling_class) / 3.0;
  req.priority = static_cast<double>(e.priority) / 10.0;
  req.budget = req.demand * 20.0 + req.priority * 5.0;
  req.min_reliability = qos.min_reliability;
  req.min_availability = qos.min_availability;
  req.max_latency = qos.max_latency;
  req.location.x = rng.uniform(-100.0, 100.0);
  req.location.y = rng.uniform(-100.0, 100.0);
  return req;
}

namespace detail {

inline std::string padded_id(char prefix, std::size_t n) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%c%06zu", prefix, n);
  return buf;
}

// Sub-stream tags for seed derivation.
inline constexpr std::uint64_t kStreamResources = 1;
inline constexpr std::uint64_t kStreamRequests = 2;

}  // namespace detail

// n synthetic resources with capacity ~ U(0.5,1.0), cost ~ U(0.3,0.8),
// reliability and availability ~ U(0.95,1.0), energy ~ U(0.6,0.9), location
// uniform on (-100,100)^2. Draw order per resource is fixed.
inline std::vector<Resource> generate_resources(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  Rng rng(mix_seed(seed, detail::kStreamResources));
  std::vector<Resource> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    Resource r;
    r.id = detail::padded_id('s', static_cast<std::size_t>(j));
    r.capacity = rng.uniform(0.5, 1.0);
    r.cost = rng.uniform(0.3, 0.8);
    r.reliability = rng.uniform(0.95, 1.0);
    r.availability = rng.uniform(0.95, 1.0);
    r.energy_eff = rng.uniform(0.6, 0.9);
    r.location.x = rng.uniform(-100.0, 100.0);
    r.location.y = rng.uniform(-100.0, 100.0);
    out.push_back(r);
  }
  return out;
}

// Synthesized submission events: scheduling_class ~ U{0..3}, priority ~
// U{0..10}.
inline std::vector<JobEvent> synthesize_job_events(int n, Rng& rng) {
  std::vector<JobEvent> events;
  events.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    JobEvent e;
    e.timestamp = i;
    e.job_id = i;
    e.event_type = 0;
    e.scheduling_class = static_cast<int>(rng.uniform_int(0, 3));
    e.priority = static_cast<int>(rng.uniform_int(0, 10));
    events.push_back(e);
  }
  return events;
}

// Builds an instance from parsed trace submissions: first n_requests events
// become requests, resources are synthetic. Throws when the trace runs short.
inline Instance build_instance_from_events(const GenerationConfig& cfg,
                                           const std::vector<JobEvent>& events) {
  check_config(cfg);
  if (static_cast<int>(events.size()) < cfg.n_requests)
    throw std::runtime_error("trace exhausted: need " + std::to_string(cfg.n_requests) +
                             " submission events, have " + std::to_string(events.size()));
  Instance inst;
  inst.resources = generate_resources(cfg.n_resources, cfg.seed);
  Rng rng(mix_seed(cfg.seed, detail::kStreamRequests));
  inst.requests.reserve(static_cast<std::size_t>(cfg.n_requests));
  for (int i = 0; i < cfg.n_requests; ++i)
    inst.requests.push_back(
        request_from_job(events[static_cast<std::size_t>(i)], rng, cfg.qos,
                         detail::padded_id('r', static_cast<std::size_t>(i))));
  check_instance(inst);
  return inst;
}

// Fully synthetic instance: events are synthesized from the seeded stream,
// then converted exactly like trace events.
inline Instance build_instance(const GenerationConfig& cfg) {
  check_config(cfg);
  Instance inst;
  inst.resources = generate_resources(cfg.n_resources, cfg.seed);
  Rng rng(mix_seed(cfg.seed, detail::kStreamRequests));
  const std::vector<JobEvent> events = synthesize_job_events(cfg.n_requests, rng);
  inst.requests.reserve(static_cast<std::size_t>(cfg.n_requests));
  for (int i = 0; i < cfg.n_requests; ++i)
    inst.requests.push_back(request_from_job(events[static_cast<std::size_t>(i)], rng, cfg.qos,
                                             detail::padded_id('r', static_cast<std::size_t>(i))));
  check_instance(inst);
  return inst;
}

}  // namespace mohaf
