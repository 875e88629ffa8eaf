#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flowshop/instance.hpp"

namespace flowshop {

// A named bound value with optional (p,s) parameters and measured runtime.
struct BoundResult {
  std::string id;
  Time value = 0;
  std::optional<std::pair<int, int>> params;
  double runtime_ms = 0.0;
};

// Per-column sums above/below each machine row, shared by the machine-load
// bounds: pre[i][j] = sum_{i'<i} t(i',j), suf[i][j] = sum_{i'>i} t(i',j).
struct ColumnSums {
  std::vector<std::vector<Time>> pre;
  std::vector<std::vector<Time>> suf;

  static ColumnSums of(const Instance& inst) {
    const std::size_t m = static_cast<std::size_t>(inst.machines);
    const std::size_t n = static_cast<std::size_t>(inst.jobs);
    ColumnSums cs;
    cs.pre.assign(m, std::vector<Time>(n, 0));
    cs.suf.assign(m, std::vector<Time>(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 1; i < m; ++i)
        cs.pre[i][j] = cs.pre[i - 1][j] + inst.times[i - 1][j];
      for (std::size_t i = m - 1; i-- > 0;)
        cs.suf[i][j] = cs.suf[i + 1][j] + inst.times[i + 1][j];
    }
    return cs;
  }
};

inline std::vector<Time> row_sums(const Instance& inst) {
  std::vector<Time> rs(static_cast<std::size_t>(inst.machines), 0);
  for (int i = 0; i < inst.machines; ++i)
    for (int j = 0; j < inst.jobs; ++j) rs[static_cast<std::size_t>(i)] += inst.t(i, j);
  return rs;
}

inline std::vector<Time> column_sums(const Instance& inst) {
  std::vector<Time> cs(static_cast<std::size_t>(inst.jobs), 0);
  for (int i = 0; i < inst.machines; ++i)
    for (int j = 0; j < inst.jobs; ++j) cs[static_cast<std::size_t>(j)] += inst.t(i, j);
  return cs;
}

// LB_M: every machine must process all jobs.
inline Time lb_machine(const Instance& inst) {
  Time best = 0;
  for (const Time rs : row_sums(inst)) best = std::max(best, rs);
  return best;
}

// LB_M+: adds the minimum lead-in before and lead-out after each machine.
inline Time lb_machine_plus(const Instance& inst, const ColumnSums& cs) {
  const auto rs = row_sums(inst);
  Time best = 0;
  for (int i = 0; i < inst.machines; ++i) {
    Time min_pre = std::numeric_limits<Time>::max();
    Time min_suf = std::numeric_limits<Time>::max();
    for (int j = 0; j < inst.jobs; ++j) {
      min_pre = std::min(min_pre, cs.pre[i][j]);
      min_suf = std::min(min_suf, cs.suf[i][j]);
    }
    best = std::max(best, min_pre + rs[static_cast<std::size_t>(i)] + min_suf);
  }
  return best;
}

inline Time lb_machine_plus(const Instance& inst) {
  return lb_machine_plus(inst, ColumnSums::of(inst));
}

namespace detail {

// Index of the smallest and second-smallest entries of v.
inline std::pair<int, int> two_smallest(const std::vector<Time>& v) {
  int first = 0;
  for (std::size_t j = 1; j < v.size(); ++j)
    if (v[j] < v[static_cast<std::size_t>(first)]) first = static_cast<int>(j);
  int second = -1;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (static_cast<int>(j) == first) continue;
    if (second < 0 || v[j] < v[static_cast<std::size_t>(second)]) second = static_cast<int>(j);
  }
  return {first, second};
}

}  // namespace detail

// LB_M++: like LB_M+ but the lead-in and lead-out jobs must differ (N >= 2).
// The pairwise minimum uses the two smallest lead-in/lead-out column sums per
// machine, keeping the whole bound O(NM). Falls back to LB_M+ for N = 1.
inline Time lb_machine_plus_plus(const Instance& inst, const ColumnSums& cs) {
  if (inst.jobs < 2) return lb_machine_plus(inst, cs);
  const auto rs = row_sums(inst);
  Time best = 0;
  for (int i = 0; i < inst.machines; ++i) {
    const auto [p1, p2] = detail::two_smallest(cs.pre[i]);
    const auto [s1, s2] = detail::two_smallest(cs.suf[i]);
    Time pair_min;
    if (p1 != s1) {
      pair_min = cs.pre[i][static_cast<std::size_t>(p1)] + cs.suf[i][static_cast<std::size_t>(s1)];
    } else {
      pair_min = std::min(
          cs.pre[i][static_cast<std::size_t>(p1)] + cs.suf[i][static_cast<std::size_t>(s2)],
          cs.pre[i][static_cast<std::size_t>(p2)] + cs.suf[i][static_cast<std::size_t>(s1)]);
    }
    best = std::max(best, rs[static_cast<std::size_t>(i)] + pair_min);
  }
  return best;
}

inline Time lb_machine_plus_plus(const Instance& inst) {
  return lb_machine_plus_plus(inst, ColumnSums::of(inst));
}

// LB_J: every job must be processed on all machines.
inline Time lb_job(const Instance& inst) {
  Time best = 0;
  for (const Time cs : column_sums(inst)) best = std::max(best, cs);
  return best;
}

// LB_J+: every other job runs before it on machine 1 or after it on machine M.
inline Time lb_job_plus(const Instance& inst) {
  const auto cols = column_sums(inst);
  const int last = inst.machines - 1;
  Time total_min = 0;
  for (int j = 0; j < inst.jobs; ++j) total_min += std::min(inst.t(0, j), inst.t(last, j));
  Time best = 0;
  for (int j = 0; j < inst.jobs; ++j) {
    const Time others = total_min - std::min(inst.t(0, j), inst.t(last, j));
    best = std::max(best, cols[static_cast<std::size_t>(j)] + others);
  }
  return best;
}

// UB_H: jobs processed one after another with no overlap.
inline Time ub_heller(const Instance& inst) {
  Time total = 0;
  for (const auto& row : inst.times)
    for (const Time v : row) total += v;
  return total;
}

// Bounds from the path-length argument: every corner-to-corner path has
// exactly N+M-1 cells, each between the grid min a and grid max b.
struct RangeBounds {
  Time min_time = 0;  // a
  Time max_time = 0;  // b
  Time lower = 0;     // a(N+M-1)
  Time upper = 0;     // b(N+M-1)
};

inline RangeBounds range_bounds(const Instance& inst) {
  Time a = std::numeric_limits<Time>::max();
  Time b = std::numeric_limits<Time>::min();
  for (const auto& row : inst.times)
    for (const Time v : row) {
      a = std::min(a, v);
      b = std::max(b, v);
    }
  const Time cells = static_cast<Time>(inst.jobs) + inst.machines - 1;
  return {a, b, a * cells, b * cells};
}

// Distinct-makespan estimate (N+M-1)(b-a)+1 from the path-length bounds.
inline Time count_makespans_new(const Instance& inst) {
  const RangeBounds rb = range_bounds(inst);
  const Time cells = static_cast<Time>(inst.jobs) + inst.machines - 1;
  return cells * (rb.max_time - rb.min_time) + 1;
}

// Heller-style estimate refined with LB_M+: UB_H - LB_M+ + 1.
inline Time count_makespans_heller(const Instance& inst) {
  return ub_heller(inst) - lb_machine_plus(inst) + 1;
}

// Compares the two distinct-makespan estimates. When M > b/a the interval
// estimate (N+M-1)(b-a)+1 beats UB_H - LB_M+ + 1 for every N past a finite
// threshold; threshold_n is the smallest such N.
struct EstimateComparison {
  bool new_better_eventually = false;
  long long threshold_n = 0;
  bool guaranteed_at_n = false;
};

inline EstimateComparison estimate_comparison(long long n, long long m, Time a, Time b) {
  if (a <= 0 || a >= b) throw std::invalid_argument("estimate_comparison requires 1 <= a < b");
  if (m < 1) throw std::invalid_argument("estimate_comparison requires M >= 1");
  EstimateComparison out;
  if (m * a <= b) return out;  // hypothesis M > b/a fails: no guarantee
  out.new_better_eventually = true;
  // Smallest integer strictly above (M-1)b / (Ma - b); both terms positive.
  const long long num = (m - 1) * b;
  const long long den = m * a - b;
  out.threshold_n = num / den + 1;
  out.guaranteed_at_n = n >= out.threshold_n;
  return out;
}

}  // namespace flowshop
