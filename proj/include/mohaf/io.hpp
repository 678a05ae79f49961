#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mohaf/model.hpp"

namespace mohaf {

using json = nlohmann::json;

// Shortest round-trip decimal form; identical bytes for identical doubles.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// RFC 4180: quote fields containing comma, quote or newline.
inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

inline json instance_to_json(const Instance& inst) {
  json j;
  j["resources"] = json::array();
  for (const auto& r : inst.resources) {
    j["resources"].push_back({{"id", r.id},
                              {"capacity", r.capacity},
                              {"cost", r.cost},
                              {"reliability", r.reliability},
                              {"availability", r.availability},
                              {"energy_eff", r.energy_eff},
                              {"location", {r.location.x, r.location.y}}});
  }
  j["requests"] = json::array();
  for (const auto& q : inst.requests) {
    j["requests"].push_back({{"id", q.id},
                             {"demand", q.demand},
                             {"budget", q.budget},
                             {"priority", q.priority},
                             {"min_reliability", q.min_reliability},
                             {"min_availability", q.min_availability},
                             {"max_latency", q.max_latency},
                             {"location", {q.location.x, q.location.y}}});
  }
  return j;
}

inline Instance instance_from_json(const json& j) {
  Instance inst;
  for (const auto& e : j.at("resources")) {
    Resource r;
    r.id = e.at("id").get<std::string>();
    r.capacity = e.at("capacity").get<double>();
    r.cost = e.at("cost").get<double>();
    r.reliability = e.at("reliability").get<double>();
    r.availability = e.at("availability").get<double>();
    r.energy_eff = e.at("energy_eff").get<double>();
    r.location.x = e.at("location").at(0).get<double>();
    r.location.y = e.at("location").at(1).get<double>();
    inst.resources.push_back(std::move(r));
  }
  for (const auto& e : j.at("requests")) {
    Request q;
    q.id = e.at("id").get<std::string>();
    q.demand = e.at("demand").get<double>();
    q.budget = e.at("budget").get<double>();
    q.priority = e.at("priority").get<double>();
    q.min_reliability = e.at("min_reliability").get<double>();
    q.min_availability = e.at("min_availability").get<double>();
    q.max_latency = e.at("max_latency").get<double>();
    q.location.x = e.at("location").at(0).get<double>();
    q.location.y = e.at("location").at(1).get<double>();
    inst.requests.push_back(std::move(q));
  }
  check_instance(inst);
  return inst;
}

inline void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << instance_to_json(inst).dump(2) << "\n";
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return instance_from_json(j);
}

inline std::string allocation_to_csv(const AllocationSet& alloc) {
  std::string out = "request_id,resource_id,price,utility\n";
  for (const auto& p : alloc.pairs) {
    out += csv_escape(p.request_id);
    out += ',';
    out += csv_escape(p.resource_id);
    out += ',';
    out += format_double(p.price);
    out += ',';
    out += format_double(p.utility);
    out += '\n';
  }
  return out;
}

inline json allocation_to_json(const AllocationSet& alloc) {
  json j;
  j["pairs"] = json::array();
  for (const auto& p : alloc.pairs)
    j["pairs"].push_back({{"request_id", p.request_id},
                          {"resource_id", p.resource_id},
                          {"price", p.price},
                          {"utility", p.utility}});
  j["used_capacity"] = json::object();
  for (const auto& [id, used] : alloc.used_capacity) j["used_capacity"][id] = used;
  return j;
}

inline AllocationSet allocation_from_json(const json& j) {
  AllocationSet alloc;
  for (const auto& e : j.at("pairs"))
    alloc.pairs.push_back({e.at("request_id").get<std::string>(),
                           e.at("resource_id").get<std::string>(), e.at("price").get<double>(),
                           e.at("utility").get<double>()});
  if (j.contains("used_capacity"))
    for (const auto& [id, used] : j.at("used_capacity").items())
      alloc.used_capacity[id] = used.get<double>();
  return alloc;
}

// CSV pairs with used_capacity rebuilt from the instance's demands.
inline AllocationSet allocation_from_csv(std::istream& in, const Instance& inst) {
  const InstanceIndex idx = build_index(inst);
  AllocationSet alloc;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {  // header
      first = false;
      continue;
    }
    std::istringstream row(line);
    std::string request_id, resource_id, price_s, utility_s;
    if (!std::getline(row, request_id, ',') || !std::getline(row, resource_id, ',') ||
        !std::getline(row, price_s, ',') || !std::getline(row, utility_s, ','))
      throw std::runtime_error("malformed allocation row: " + line);
    AllocationPair p;
    p.request_id = request_id;
    p.resource_id = resource_id;
    p.price = std::stod(price_s);
    p.utility = std::stod(utility_s);
    const auto it = idx.request.find(p.request_id);
    if (it == idx.request.end()) throw std::out_of_range("unknown request id " + p.request_id);
    alloc.used_capacity[p.resource_id] += inst.requests[it->second].demand;
    alloc.pairs.push_back(std::move(p));
  }
  return alloc;
}

}  // namespace mohaf
