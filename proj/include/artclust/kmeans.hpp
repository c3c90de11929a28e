#pragma once

#include <cstdint>
#include <span>

#include "artclust/bitvector.hpp"
#include "artclust/metrics.hpp"

namespace artclust {

struct KMeansOptions {
    int k = 1;
    std::uint64_t seed = 0;
    int restarts = 10;
    int max_iter = 300;
    double tol = 1e-6;  ///< converged when no centroid moves further than this
    int jobs = 0;       ///< worker cap for the restarts; 0 = library default
};

struct KMeansResult {
    Clustering clustering;
    double inertia = 0.0;
    int best_restart = 0;
};

/// Lloyd's algorithm over binary vectors treated as reals, with k-means++
/// seeding. Runs `restarts` independently seeded rounds (possibly in
/// parallel) and returns the one with the lowest within-cluster sum of
/// squares; ties go to the lowest restart index, so the result is a pure
/// function of (vectors, options). Empty clusters are reseeded to the point
/// farthest from its centroid.
KMeansResult kmeans_baseline(std::span<const BitVector> vectors,
                             const KMeansOptions& options);

}  // namespace artclust
