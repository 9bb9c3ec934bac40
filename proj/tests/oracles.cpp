#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace oracles {

Mat to_rows(const edgecluster::VecArray& array) {
  Mat rows;
  for (std::size_t i = 0; i < array.size(); ++i) {
    const auto row = array[i];
    rows.emplace_back(row.begin(), row.end());
  }
  return rows;
}

edgecluster::VecArray from_rows(const Mat& rows) {
  edgecluster::VecArray array;
  for (const Vec& row : rows) array.push_back(row);
  return array;
}

Mat reference_extract(const edgecluster::GrayImage& image,
                      const edgecluster::ExtractorParams& params) {
  Mat descriptors;
  const int patch = params.patch_size;
  for (int r0 = 0; r0 + patch <= image.height; r0 += params.stride) {
    for (int c0 = 0; c0 + patch <= image.width; c0 += params.stride) {
      // normalized patch copy
      std::vector<std::vector<double>> v(patch, std::vector<double>(patch));
      for (int r = 0; r < patch; ++r) {
        for (int c = 0; c < patch; ++c) {
          v[r][c] = static_cast<double>(image.at(r0 + r, c0 + c)) / image.maxval;
        }
      }
      Vec hist(128, 0.0);
      double energy = 0.0;
      for (int r = 0; r < patch; ++r) {
        for (int c = 0; c < patch; ++c) {
          double gx;
          if (c == 0) {
            gx = v[r][1] - v[r][0];
          } else if (c == patch - 1) {
            gx = v[r][patch - 1] - v[r][patch - 2];
          } else {
            gx = (v[r][c + 1] - v[r][c - 1]) / 2.0;
          }
          double gy;
          if (r == 0) {
            gy = v[1][c] - v[0][c];
          } else if (r == patch - 1) {
            gy = v[patch - 1][c] - v[patch - 2][c];
          } else {
            gy = (v[r + 1][c] - v[r - 1][c]) / 2.0;
          }
          const double mag = std::sqrt(gx * gx + gy * gy);
          if (mag == 0.0) continue;
          energy += mag;
          double deg = std::atan2(gy, gx) * 180.0 / 3.14159265358979323846;
          if (deg < 0.0) deg += 360.0;
          int bin = static_cast<int>(deg / 45.0);
          if (bin > 7) bin = 7;
          const int cell_row = r / (patch / 4);
          const int cell_col = c / (patch / 4);
          hist[static_cast<std::size_t>((cell_row * 4 + cell_col) * 8 + bin)] += mag;
        }
      }
      if (energy < params.energy_threshold || energy == 0.0) continue;
      double norm = 0.0;
      for (const double h : hist) norm += h * h;
      norm = std::sqrt(norm);
      for (double& h : hist) h /= norm;
      descriptors.push_back(hist);
    }
  }
  return descriptors;
}

namespace {

double sq_dist(const Vec& a, const Vec& b) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += (a[i] - b[i]) * (a[i] - b[i]);
  return total;
}

}  // namespace

std::vector<int> brute_force_assign(const Mat& points, const Mat& centroids) {
  std::vector<int> labels(points.size(), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    int best = 0;
    double best_d = sq_dist(points[i], centroids[0]);
    for (std::size_t j = 1; j < centroids.size(); ++j) {
      const double d = sq_dist(points[i], centroids[j]);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(j);
      }
    }
    labels[i] = best;
  }
  return labels;
}

double brute_force_objective(const Mat& points, const Mat& centroids,
                             const std::vector<int>& labels) {
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    total += sq_dist(points[i], centroids[static_cast<std::size_t>(labels[i])]);
  }
  return total;
}

Mat reference_update(const Mat& points, const std::vector<int>& labels, std::size_t k) {
  const std::size_t d = points[0].size();
  Mat means(k, Vec(d, 0.0));
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto j = static_cast<std::size_t>(labels[i]);
    for (std::size_t c = 0; c < d; ++c) means[j][c] += points[i][c];
    counts[j] += 1;
  }
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t c = 0; c < d; ++c) means[j][c] /= static_cast<double>(counts[j]);
  }
  return means;
}

ReferenceRun reference_lloyd(const Mat& points, const Mat& seeds, int max_iterations,
                             bool stop_on_no_change) {
  ReferenceRun run;
  Mat centroids = seeds;
  const std::size_t k = seeds.size();
  for (int it = 1; it <= max_iterations; ++it) {
    std::vector<int> labels = brute_force_assign(points, centroids);
    run.label_trace.push_back(labels);
    run.objective_trace.push_back(brute_force_objective(points, centroids, labels));
    run.iterations = it;

    std::vector<std::size_t> counts(k, 0);
    for (const int label : labels) counts[static_cast<std::size_t>(label)] += 1;
    if (std::any_of(counts.begin(), counts.end(), [](std::size_t c) { return c == 0; })) {
      run.hit_empty_cluster = true;
      return run;
    }
    Mat next = reference_update(points, labels, k);
    bool changed = false;
    for (std::size_t j = 0; j < k; ++j) {
      if (next[j] != centroids[j]) changed = true;
    }
    centroids = next;
    if (stop_on_no_change && !changed) break;
  }
  run.centroids = centroids;
  return run;
}

double brute_overlap(const std::vector<int>& a, const std::vector<int>& b, std::size_t k) {
  std::vector<std::vector<long>> inter(k, std::vector<long>(k, 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    inter[static_cast<std::size_t>(a[i])][static_cast<std::size_t>(b[i])] += 1;
  }
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  long best = 0;
  do {
    long total = 0;
    for (std::size_t j = 0; j < k; ++j) total += inter[j][perm[j]];
    best = std::max(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(a.size());
}

std::vector<std::uint32_t> reference_vectorize(const Mat& descriptors, const Mat& words) {
  std::vector<std::uint32_t> counts(words.size(), 0);
  for (const Vec& desc : descriptors) {
    std::size_t best = 0;
    double best_d = sq_dist(desc, words[0]);
    for (std::size_t j = 1; j < words.size(); ++j) {
      const double d = sq_dist(desc, words[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    counts[best] += 1;
  }
  return counts;
}

std::vector<std::pair<int, std::size_t>> reference_representatives(
    const Mat& points, const std::vector<int>& labels, const Mat& centroids) {
  std::vector<std::pair<int, std::size_t>> reps;
  for (std::size_t j = 0; j < centroids.size(); ++j) {
    bool found = false;
    double best_d = 0.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (static_cast<std::size_t>(labels[i]) != j) continue;
      const double d = sq_dist(points[i], centroids[j]);
      if (!found || d < best_d) {
        found = true;
        best_d = d;
        best_i = i;
      }
    }
    if (found) reps.emplace_back(static_cast<int>(j), best_i);
  }
  return reps;
}

}  // namespace oracles
