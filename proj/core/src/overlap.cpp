#include "edgecluster/overlap.hpp"

#include <cstdint>
#include <limits>
#include <vector>

#include "edgecluster/error.hpp"

namespace edgecluster {

namespace {

// Min-cost assignment on a square integer matrix, O(k^3) Hungarian with
// potentials. Returns the optimal total cost.
std::int64_t min_cost_assignment(const std::vector<std::int64_t>& cost, std::size_t k) {
  const std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> u(k + 1, 0), v(k + 1, 0);
  std::vector<std::size_t> match(k + 1, 0);  // column -> row (1-based rows)
  for (std::size_t row = 1; row <= k; ++row) {
    std::vector<std::int64_t> min_slack(k + 1, kInf);
    std::vector<std::size_t> slack_from(k + 1, 0);
    std::vector<bool> used(k + 1, false);
    std::size_t col = 0;
    match[0] = row;
    do {
      used[col] = true;
      const std::size_t r = match[col];
      std::int64_t delta = kInf;
      std::size_t next_col = 0;
      for (std::size_t j = 1; j <= k; ++j) {
        if (used[j]) continue;
        const std::int64_t slack = cost[(r - 1) * k + (j - 1)] - u[r] - v[j];
        if (slack < min_slack[j]) {
          min_slack[j] = slack;
          slack_from[j] = col;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          next_col = j;
        }
      }
      for (std::size_t j = 0; j <= k; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      col = next_col;
    } while (match[col] != 0);
    while (col != 0) {
      const std::size_t prev = slack_from[col];
      match[col] = match[prev];
      col = prev;
    }
  }
  std::int64_t total = 0;
  for (std::size_t j = 1; j <= k; ++j) {
    if (match[j] != 0) total += cost[(match[j] - 1) * k + (j - 1)];
  }
  return total;
}

}  // namespace

double cluster_overlap(std::span<const int> a, std::span<const int> b,
                       std::size_t k) {
  if (a.size() != b.size()) {
    fail(Errc::LengthMismatch, "label sequences must have equal length");
  }
  if (a.empty()) fail(Errc::LengthMismatch, "cannot compare empty labelings");
  if (k == 0) fail(Errc::InvalidLabel, "k must be >= 1");

  std::vector<std::int64_t> intersection(k * k, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int la = a[i];
    const int lb = b[i];
    if (la < 0 || lb < 0 || static_cast<std::size_t>(la) >= k ||
        static_cast<std::size_t>(lb) >= k) {
      fail(Errc::InvalidLabel, "label outside [0, k)");
    }
    intersection[static_cast<std::size_t>(la) * k + static_cast<std::size_t>(lb)] += 1;
  }
  // Maximize matched intersections == minimize negated weights.
  std::vector<std::int64_t> cost(k * k);
  for (std::size_t i = 0; i < k * k; ++i) cost[i] = -intersection[i];
  const std::int64_t matched = -min_cost_assignment(cost, k);
  return static_cast<double>(matched) / static_cast<double>(a.size());
}

}  // namespace edgecluster
