#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "flowshop/instance.hpp"

namespace flowshop {

// Grid coordinate, 0-based internally (display helpers are 1-based).
struct Cell {
  int row = 0;
  int col = 0;
  bool operator==(const Cell&) const = default;
};

// Lattice path restricted to unit right/down steps.
struct RDPath {
  std::vector<Cell> cells;

  bool is_rd() const {
    for (std::size_t k = 1; k < cells.size(); ++k) {
      const int dr = cells[k].row - cells[k - 1].row;
      const int dc = cells[k].col - cells[k - 1].col;
      if (!((dr == 1 && dc == 0) || (dr == 0 && dc == 1))) return false;
    }
    return true;
  }

  bool within_grid(int machines, int jobs) const {
    for (const Cell& c : cells)
      if (c.row < 0 || c.row >= machines || c.col < 0 || c.col >= jobs) return false;
    return true;
  }

  bool corner_to_corner(int machines, int jobs) const {
    return !cells.empty() && cells.front() == Cell{0, 0} &&
           cells.back() == Cell{machines - 1, jobs - 1} && is_rd();
  }

  bool operator==(const RDPath&) const = default;
};

inline void require_permutation(const Instance& inst, const Permutation& perm) {
  if (!perm.is_valid(inst.jobs))
    throw std::invalid_argument("permutation is not a bijection on the instance's " +
                                std::to_string(inst.jobs) + " jobs");
}

// C_max via the completion-time recursion; O(NM) time, O(N) extra space.
inline Time makespan(const Instance& inst, const Permutation& perm) {
  require_permutation(inst, perm);
  std::vector<Time> c(static_cast<std::size_t>(inst.jobs), 0);
  for (int i = 0; i < inst.machines; ++i) {
    for (int j = 0; j < inst.jobs; ++j) {
      const Time above = c[static_cast<std::size_t>(j)];
      const Time left = j > 0 ? c[static_cast<std::size_t>(j - 1)] : 0;
      c[static_cast<std::size_t>(j)] = inst.t(i, perm.order[static_cast<std::size_t>(j)]) +
                                       std::max(above, left);
    }
  }
  return c[static_cast<std::size_t>(inst.jobs - 1)];
}

// Full completion-time matrix; debugging aid (makespan() uses a rolling row).
inline std::vector<std::vector<Time>> schedule_matrix(const Instance& inst,
                                                      const Permutation& perm) {
  require_permutation(inst, perm);
  std::vector<std::vector<Time>> c(static_cast<std::size_t>(inst.machines),
                                   std::vector<Time>(static_cast<std::size_t>(inst.jobs), 0));
  for (int i = 0; i < inst.machines; ++i) {
    for (int j = 0; j < inst.jobs; ++j) {
      const Time above = i > 0 ? c[i - 1][j] : 0;
      const Time left = j > 0 ? c[i][j - 1] : 0;
      c[i][j] = inst.t(i, perm.order[static_cast<std::size_t>(j)]) + std::max(above, left);
    }
  }
  return c;
}

// Maximum-sum corner-to-corner path of the permuted grid; its sum equals the
// makespan. Equal predecessors resolve to the one above, so output is
// deterministic.
inline RDPath critical_path(const Instance& inst, const Permutation& perm) {
  const auto c = schedule_matrix(inst, perm);
  RDPath path;
  int i = inst.machines - 1;
  int j = inst.jobs - 1;
  path.cells.push_back({i, j});
  while (i != 0 || j != 0) {
    if (i == 0) {
      --j;
    } else if (j == 0) {
      --i;
    } else if (c[i - 1][j] >= c[i][j - 1]) {
      --i;
    } else {
      --j;
    }
    path.cells.push_back({i, j});
  }
  std::reverse(path.cells.begin(), path.cells.end());
  return path;
}

// Sum of t(i, perm[j]) over the path cells.
inline Time path_sum(const Instance& inst, const Permutation& perm, const RDPath& path) {
  require_permutation(inst, perm);
  if (!path.within_grid(inst.machines, inst.jobs))
    throw std::out_of_range("path cell outside the instance grid");
  Time sum = 0;
  for (const Cell& c : path.cells)
    sum += inst.t(c.row, perm.order[static_cast<std::size_t>(c.col)]);
  return sum;
}

}  // namespace flowshop
