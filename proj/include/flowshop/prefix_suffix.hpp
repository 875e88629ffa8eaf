#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "flowshop/classic_bounds.hpp"
#include "flowshop/instance.hpp"
#include "flowshop/makespan.hpp"
#include "flowshop/parallel.hpp"

namespace flowshop {

// Prefix width p and suffix width s of the path family; p,s >= 1, p+s <= N.
struct PSParams {
  int prefix = 1;
  int suffix = 1;
};

namespace detail {

inline void check_ps(const PSParams& ps, int jobs) {
  if (ps.prefix < 1 || ps.suffix < 1)
    throw std::invalid_argument("prefix and suffix widths must be >= 1");
  if (ps.prefix + ps.suffix > jobs)
    throw std::invalid_argument("prefix + suffix widths exceed the job count (" +
                                std::to_string(ps.prefix) + "+" + std::to_string(ps.suffix) +
                                " > " + std::to_string(jobs) + ")");
}

// Number of ordered k-tuples of distinct values from [0,n): n!/(n-k)!.
inline std::optional<std::uint64_t> ordered_tuple_count(int n, int k) {
  unsigned __int128 r = 1;
  for (int i = 0; i < k; ++i) {
    r *= static_cast<unsigned __int128>(n - i);
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return static_cast<std::uint64_t>(r);
}

// Visits every ordered k-tuple of distinct values in [0,n) whose first
// element lies in [first_lo, first_hi), in lexicographic order.
template <class Fn>
inline void for_each_ordered_tuple(int n, int k, int first_lo, int first_hi, Fn&& fn) {
  std::vector<int> tuple(static_cast<std::size_t>(k));
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == k) {
      fn(tuple.data());
      return;
    }
    const int lo = depth == 0 ? first_lo : 0;
    const int hi = depth == 0 ? first_hi : n;
    for (int v = lo; v < hi; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = 1;
      tuple[static_cast<std::size_t>(depth)] = v;
      self(self, depth + 1);
      used[static_cast<std::size_t>(v)] = 0;
    }
  };
  rec(rec, 0);
}

// Head profile of an ordered column tuple: out[i] = (max RD-path sum from
// (0, first column) to (i, last column) over the tuple columns) minus the
// tuple's entries in row i. Adding the full row sum later reconstructs
// "prefix path + middle segment" without double counting.
inline void head_profile(const Instance& inst, const int* cols, int k, Time* out) {
  const int m = inst.machines;
  static thread_local std::vector<Time> dp;
  dp.assign(static_cast<std::size_t>(m), 0);
  dp[0] = inst.t(0, cols[0]);
  for (int i = 1; i < m; ++i) dp[static_cast<std::size_t>(i)] =
      dp[static_cast<std::size_t>(i - 1)] + inst.t(i, cols[0]);
  for (int c = 1; c < k; ++c) {
    dp[0] += inst.t(0, cols[c]);
    for (int i = 1; i < m; ++i)
      dp[static_cast<std::size_t>(i)] =
          std::max(dp[static_cast<std::size_t>(i - 1)], dp[static_cast<std::size_t>(i)]) +
          inst.t(i, cols[c]);
  }
  for (int i = 0; i < m; ++i) {
    Time row = 0;
    for (int c = 0; c < k; ++c) row += inst.t(i, cols[c]);
    out[i] = dp[static_cast<std::size_t>(i)] - row;
  }
}

// Tail profile, the mirror image: out[i] = (max RD-path sum from (i, first
// column) to (M-1, last column) over the tuple columns) minus the tuple's
// entries in row i.
inline void tail_profile(const Instance& inst, const int* cols, int k, Time* out) {
  const int m = inst.machines;
  std::vector<Time> dp(static_cast<std::size_t>(m));
  dp[static_cast<std::size_t>(m - 1)] = inst.t(m - 1, cols[k - 1]);
  for (int i = m - 2; i >= 0; --i)
    dp[static_cast<std::size_t>(i)] = dp[static_cast<std::size_t>(i + 1)] + inst.t(i, cols[k - 1]);
  for (int c = k - 2; c >= 0; --c) {
    dp[static_cast<std::size_t>(m - 1)] += inst.t(m - 1, cols[c]);
    for (int i = m - 2; i >= 0; --i)
      dp[static_cast<std::size_t>(i)] =
          std::max(dp[static_cast<std::size_t>(i + 1)], dp[static_cast<std::size_t>(i)]) +
          inst.t(i, cols[c]);
  }
  for (int i = 0; i < m; ++i) {
    Time row = 0;
    for (int c = 0; c < k; ++c) row += inst.t(i, cols[c]);
    out[i] = dp[static_cast<std::size_t>(i)] - row;
  }
}

// Precomputed profiles for every ordered tuple of one side.
struct SideTable {
  int width = 0;
  std::uint64_t count = 0;
  std::vector<Time> profiles;  // count x M
  std::vector<int> jobs;       // count x width
};

inline constexpr std::uint64_t kSideTableCapEntries = 1ull << 24;

inline std::optional<SideTable> build_side_table(const Instance& inst, int width, bool tail) {
  const auto count = ordered_tuple_count(inst.jobs, width);
  if (!count) return std::nullopt;
  const std::uint64_t entries = *count * static_cast<std::uint64_t>(inst.machines);
  if (*count == 0 || entries / static_cast<std::uint64_t>(inst.machines) != *count ||
      entries > kSideTableCapEntries)
    return std::nullopt;
  SideTable table;
  table.width = width;
  table.count = *count;
  table.profiles.resize(static_cast<std::size_t>(entries));
  table.jobs.resize(static_cast<std::size_t>(*count) * static_cast<std::size_t>(width));
  std::uint64_t idx = 0;
  for_each_ordered_tuple(inst.jobs, width, 0, inst.jobs, [&](const int* cols) {
    Time* prof = table.profiles.data() + idx * static_cast<std::uint64_t>(inst.machines);
    if (tail)
      tail_profile(inst, cols, width, prof);
    else
      head_profile(inst, cols, width, prof);
    std::copy(cols, cols + width,
              table.jobs.data() + idx * static_cast<std::uint64_t>(width));
    ++idx;
  });
  return table;
}

}  // namespace detail

// Lower bound from the prefix-suffix path family: the minimum over ordered
// selections of p first jobs and s last jobs of the maximum, over rows i, of
//   (best head path into (i, p-th prefix column))
// + (row-i sum of the unselected jobs)
// + (best tail path from (i, first suffix column)).
// The middle segment is order-free, so only the selection matters; the value
// solves the min-max expression over the family exactly and is a valid lower
// bound on the optimal makespan. Worker chunks split the outer tuple space by
// first job and merge by min, so the result is independent of thread count.
inline Time lb_prefix_suffix(const Instance& inst, PSParams ps, int threads = 1) {
  detail::check_ps(ps, inst.jobs);
  const int m = inst.machines;
  const int n = inst.jobs;
  const auto rs = row_sums(inst);

  // The side with fewer tuples becomes the precomputed inner table; the other
  // side streams. If even the smaller side exceeds the memory cap, the inner
  // profiles are recomputed per pair (same value, more time).
  const bool inner_is_tail = ps.suffix <= ps.prefix;
  const int inner_w = inner_is_tail ? ps.suffix : ps.prefix;
  const int outer_w = inner_is_tail ? ps.prefix : ps.suffix;
  const auto inner_table = detail::build_side_table(inst, inner_w, inner_is_tail);

  std::vector<Time> chunk_min(
      static_cast<std::size_t>(std::max(1, detail::resolve_threads(threads))),
      std::numeric_limits<Time>::max());

  detail::parallel_chunks(static_cast<std::size_t>(n), threads, [&](std::size_t chunk,
                                                                    std::size_t lo,
                                                                    std::size_t hi) {
    Time local_min = std::numeric_limits<Time>::max();
    std::vector<Time> outer_prof(static_cast<std::size_t>(m));
    std::vector<Time> inner_prof(static_cast<std::size_t>(m));
    std::vector<char> taken(static_cast<std::size_t>(n), 0);

    detail::for_each_ordered_tuple(n, outer_w, static_cast<int>(lo), static_cast<int>(hi),
                                   [&](const int* outer_cols) {
      if (inner_is_tail)
        detail::head_profile(inst, outer_cols, outer_w, outer_prof.data());
      else
        detail::tail_profile(inst, outer_cols, outer_w, outer_prof.data());
      // Fold the full row sums into the outer profile once per tuple.
      for (int i = 0; i < m; ++i) outer_prof[static_cast<std::size_t>(i)] += rs[static_cast<std::size_t>(i)];
      for (int c = 0; c < outer_w; ++c) taken[static_cast<std::size_t>(outer_cols[c])] = 1;

      const auto combine = [&](const Time* inner) {
        Time fmax = std::numeric_limits<Time>::min();
        bool pruned = false;
        for (int i = 0; i < m; ++i) {
          const Time v = outer_prof[static_cast<std::size_t>(i)] + inner[i];
          if (v > fmax) fmax = v;
          if (fmax >= local_min) {  // this selection cannot improve the minimum
            pruned = true;
            break;
          }
        }
        if (!pruned) local_min = fmax;
      };

      if (inner_table) {
        const Time* prof = inner_table->profiles.data();
        const int* jobs = inner_table->jobs.data();
        for (std::uint64_t t = 0; t < inner_table->count; ++t, prof += m, jobs += inner_w) {
          bool overlap = false;
          for (int c = 0; c < inner_w; ++c)
            if (taken[static_cast<std::size_t>(jobs[c])]) {
              overlap = true;
              break;
            }
          if (!overlap) combine(prof);
        }
      } else {
        detail::for_each_ordered_tuple(n, inner_w, 0, n, [&](const int* inner_cols) {
          for (int c = 0; c < inner_w; ++c)
            if (taken[static_cast<std::size_t>(inner_cols[c])]) return;
          if (inner_is_tail)
            detail::tail_profile(inst, inner_cols, inner_w, inner_prof.data());
          else
            detail::head_profile(inst, inner_cols, inner_w, inner_prof.data());
          combine(inner_prof.data());
        });
      }

      for (int c = 0; c < outer_w; ++c) taken[static_cast<std::size_t>(outer_cols[c])] = 0;
    });
    chunk_min[chunk] = local_min;
  });

  Time best = std::numeric_limits<Time>::max();
  for (const Time v : chunk_min) best = std::min(best, v);
  return best;
}

// Maximum of lb_prefix_suffix over all p+s = budget; ties go to the smallest
// prefix width.
struct BestBound {
  Time value = 0;
  PSParams params;
};

inline BestBound lb_best(const Instance& inst, int budget, int threads = 1) {
  if (budget < 2 || budget > inst.jobs)
    throw std::invalid_argument("budget must satisfy 2 <= k <= N");
  BestBound best;
  best.value = std::numeric_limits<Time>::min();
  for (int p = 1; p < budget; ++p) {
    const PSParams ps{p, budget - p};
    const Time v = lb_prefix_suffix(inst, ps, threads);
    if (v > best.value) {
      best.value = v;
      best.params = ps;
    }
  }
  return best;
}

namespace detail {

inline std::optional<std::uint64_t> binomial_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace detail

// Family cardinality C(M+p+s-2, p+s-1); nullopt when it exceeds 64 bits.
inline std::optional<std::uint64_t> path_family_size(int machines, PSParams ps) {
  if (machines < 1 || ps.prefix < 1 || ps.suffix < 1)
    throw std::invalid_argument("machines, prefix and suffix must all be >= 1");
  const std::uint64_t k = static_cast<std::uint64_t>(ps.prefix) + static_cast<std::uint64_t>(ps.suffix);
  return detail::binomial_u64(static_cast<std::uint64_t>(machines) + k - 2, k - 1);
}

// Streams every path of the family exactly once: any RD-path to (i, p-th
// prefix column), straight right along row i, then any RD-path from
// (i, first suffix column) to the bottom-right corner. Testing/debug aid.
inline void enumerate_family(int machines, int jobs, PSParams ps,
                             const std::function<void(const RDPath&)>& yield) {
  detail::check_ps(ps, jobs);
  if (machines < 1) throw std::invalid_argument("machines must be >= 1");
  if (machines + ps.prefix + ps.suffix > 20)
    throw GuardError("enumerate_family: M + p + s exceeds the enumeration guard (20)");
  const int k = ps.prefix + ps.suffix;
  // Enumerate RD-paths of the compressed M x (p+s) grid, then splice the
  // middle run of row i between compressed columns p-1 and p.
  std::vector<Cell> compressed;
  compressed.push_back({0, 0});
  auto emit = [&] {
    RDPath path;
    for (std::size_t idx = 0; idx < compressed.size(); ++idx) {
      const Cell c = compressed[idx];
      if (c.col < ps.prefix) {
        path.cells.push_back({c.row, c.col});
      } else {
        if (c.col == ps.prefix && idx > 0 && compressed[idx - 1].col == ps.prefix - 1)
          for (int mid = ps.prefix; mid < jobs - ps.suffix; ++mid)
            path.cells.push_back({c.row, mid});
        path.cells.push_back({c.row, c.col + jobs - k});
      }
    }
    yield(path);
  };
  auto rec = [&](auto&& self, int row, int col) -> void {
    if (row == machines - 1 && col == k - 1) {
      emit();
      return;
    }
    if (col + 1 < k) {
      compressed.push_back({row, col + 1});
      self(self, row, col + 1);
      compressed.pop_back();
    }
    if (row + 1 < machines) {
      compressed.push_back({row + 1, col});
      self(self, row + 1, col);
      compressed.pop_back();
    }
  };
  rec(rec, 0, 0);
}

}  // namespace flowshop
