#pragma once

#include <cstddef>
#include <span>

namespace edgecluster {

// Fraction of items placed consistently by two k-clusterings under the best
// one-to-one matching of their clusters (exact assignment optimum, so 1.0
// exactly when b is a relabeling of a). Symmetric; always >= 1/k.
double cluster_overlap(std::span<const int> a, std::span<const int> b,
                       std::size_t k);

}  // namespace edgecluster
