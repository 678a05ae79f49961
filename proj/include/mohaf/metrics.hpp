#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "mohaf/model.hpp"

namespace mohaf {

// Total achieved utility normalized by the number of requests. Reported as a
// fraction.
inline double allocation_efficiency(const AllocationSet& alloc, const Instance& inst) {
  if (inst.requests.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& p : alloc.pairs) sum += p.utility;
  return sum / static_cast<double>(inst.requests.size());
}

inline double revenue(const AllocationSet& alloc) {
  double sum = 0.0;
  for (const auto& p : alloc.pairs) sum += p.price;
  return sum;
}

// Fraction of requests that received an allocation.
inline double satisfaction_rate(const AllocationSet& alloc, const Instance& inst) {
  if (inst.requests.empty()) return 0.0;
  return static_cast<double>(alloc.pairs.size()) / static_cast<double>(inst.requests.size());
}

// Fraction of resources with at least one assignment.
inline double resource_utilization(const AllocationSet& alloc, const Instance& inst) {
  if (inst.resources.empty()) return 0.0;
  std::set<std::string> touched;
  for (const auto& p : alloc.pairs) touched.insert(p.resource_id);
  return static_cast<double>(touched.size()) / static_cast<double>(inst.resources.size());
}

// Jain's index (sum x)^2 / (N * sum x^2) over non-negative values; 1 for
// equal shares, 1/N for total concentration. Undefined on all-zero input.
inline double jain_index(const std::vector<double>& values) {
  if (values.empty()) throw std::domain_error("jain_index: empty input");
  double sum = 0.0, sum_sq = 0.0;
  for (const double v : values) {
    if (v < 0.0) throw std::domain_error("jain_index: negative value");
    sum += v;
    sum_sq += v * v;
  }
  if (sum_sq == 0.0) throw std::domain_error("jain_index: all-zero input");
  return (sum * sum) / (static_cast<double>(values.size()) * sum_sq);
}

// Per-pair utilities, i.e. the allocated requesters' utilities (one pair per
// requester under single assignment).
inline std::vector<double> allocated_utilities(const AllocationSet& alloc) {
  std::vector<double> out;
  out.reserve(alloc.pairs.size());
  for (const auto& p : alloc.pairs) out.push_back(p.utility);
  return out;
}

// Mean energy efficiency over assigned resources, one term per pair.
inline double energy_efficiency_score(const AllocationSet& alloc, const Instance& inst) {
  if (alloc.pairs.empty()) throw std::domain_error("energy_efficiency_score: empty allocation");
  const InstanceIndex idx = build_index(inst);
  double sum = 0.0;
  for (const auto& p : alloc.pairs) {
    const auto it = idx.resource.find(p.resource_id);
    if (it == idx.resource.end()) throw std::out_of_range("unknown resource id " + p.resource_id);
    sum += inst.resources[it->second].energy_eff;
  }
  return sum / static_cast<double>(alloc.pairs.size());
}

struct MeanCi {
  double mean = 0.0;
  double half_width = 0.0;  // 95% t-interval half-width, n-1 dof
};

inline MeanCi mean_ci95(const std::vector<double>& samples) {
  const std::size_t n = samples.size();
  if (n < 2) throw std::invalid_argument("mean_ci95: need at least 2 samples");
  double mean = 0.0;
  for (const double s : samples) mean += s;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (const double s : samples) ss += (s - mean) * (s - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const boost::math::students_t dist(static_cast<double>(n - 1));
  const double t = boost::math::quantile(dist, 0.975);
  return {mean, t * sd / std::sqrt(static_cast<double>(n))};
}

struct PairedTResult {
  double t = 0.0;  // +/-infinity signals zero-variance nonzero differences
  int df = 0;
};

inline PairedTResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("paired_t_test: length mismatch");
  const std::size_t n = a.size();
  if (n < 2) throw std::invalid_argument("paired_t_test: need at least 2 pairs");
  double mean_d = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean_d += a[i] - b[i];
  mean_d /= static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    ss += (d - mean_d) * (d - mean_d);
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  PairedTResult res;
  res.df = static_cast<int>(n) - 1;
  if (sd == 0.0) {
    res.t = mean_d == 0.0 ? 0.0
                          : std::copysign(std::numeric_limits<double>::infinity(), mean_d);
  } else {
    res.t = mean_d / (sd / std::sqrt(static_cast<double>(n)));
  }
  return res;
}

// Two-sided p-value for a paired t statistic.
inline double t_test_p_value(const PairedTResult& r) {
  if (std::isinf(r.t)) return 0.0;
  const boost::math::students_t dist(static_cast<double>(r.df));
  return 2.0 * boost::math::cdf(dist, -std::abs(r.t));
}

}  // namespace mohaf
