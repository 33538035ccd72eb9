#pragma once

#include <cstdint>
#include <vector>

namespace lexsub {

struct KMeansResult {
    std::vector<int> assignment;                 // point -> cluster
    std::vector<std::vector<double>> centroids;  // k entries; empty clusters keep last position
    std::vector<int> sizes;
    double objective = 0.0;  // sum of squared distances to assigned centroids
    int iterations = 0;
};

/// Lloyd's algorithm with k-means++ initialization on raw Euclidean
/// coordinates. Converges when assignments stop changing (max_iter cap).
/// Empty clusters are reseeded to the point farthest from its assigned
/// centroid. Runs `restarts` independent initializations and keeps the
/// lowest objective (ties keep the earliest run). Deterministic given seed.
KMeansResult kmeans(const std::vector<std::vector<double>>& points, int k,
                    std::uint64_t seed, int max_iter = 100, int restarts = 8);

double kmeans_objective(const std::vector<std::vector<double>>& points,
                        const std::vector<int>& assignment, int k);

}  // namespace lexsub
