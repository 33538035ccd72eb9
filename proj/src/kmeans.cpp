#include "lexsub/kmeans.hpp"

#include <algorithm>
#include <limits>

#include "lexsub/errors.hpp"
#include "lexsub/util.hpp"

namespace lexsub {

namespace {

std::vector<std::vector<double>> compute_centroids(
    const std::vector<std::vector<double>>& points, const std::vector<int>& assignment,
    int k, std::vector<int>& sizes) {
    const std::size_t dim = points.front().size();
    std::vector<std::vector<double>> centroids(k, std::vector<double>(dim, 0.0));
    sizes.assign(k, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const int c = assignment[i];
        ++sizes[c];
        for (std::size_t d = 0; d < dim; ++d) centroids[c][d] += points[i][d];
    }
    for (int c = 0; c < k; ++c) {
        if (sizes[c] == 0) continue;
        for (double& v : centroids[c]) v /= sizes[c];
    }
    return centroids;
}

int nearest(const std::vector<std::vector<double>>& centroids,
            const std::vector<int>& sizes, const std::vector<double>& p) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centroids.size(); ++c) {
        if (sizes[c] == 0) continue;
        const double d = squared_distance(centroids[c], p);
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(c);
        }
    }
    return best;
}

}  // namespace

double kmeans_objective(const std::vector<std::vector<double>>& points,
                        const std::vector<int>& assignment, int k) {
    if (points.empty()) return 0.0;
    std::vector<int> sizes;
    const auto centroids = compute_centroids(points, assignment, k, sizes);
    double obj = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        obj += squared_distance(points[i], centroids[assignment[i]]);
    return obj;
}

namespace {

KMeansResult lloyd_once(const std::vector<std::vector<double>>& points, int k,
                        std::uint64_t seed, int max_iter) {
    KMeansResult res;
    const std::size_t n = points.size();
    Rng rng(seed);

    // k-means++ seeding
    std::vector<std::vector<double>> centers;
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());
    centers.push_back(points[rng.bounded(n)]);
    while (static_cast<int>(centers.size()) < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], squared_distance(points[i], centers.back()));
            total += d2[i];
        }
        std::size_t pick;
        if (total == 0.0) {
            pick = rng.bounded(n);  // all points coincide with chosen centers
        } else {
            double r = rng.next_double() * total;
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                r -= d2[i];
                if (r <= 0.0) {
                    pick = i;
                    break;
                }
            }
        }
        centers.push_back(points[pick]);
    }

    std::vector<int> sizes(k, 1);  // all centers valid during first assignment
    std::vector<int> assignment(n, -1);
    std::vector<std::vector<double>> centroids = std::move(centers);
    for (int iter = 0; iter < max_iter; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            const int c = nearest(centroids, sizes, points[i]);
            if (c != assignment[i]) {
                assignment[i] = c;
                changed = true;
            }
        }
        centroids = compute_centroids(points, assignment, k, sizes);

        // Reseed empty clusters to the point farthest from its centroid.
        for (int c = 0; c < k; ++c) {
            if (sizes[c] != 0) continue;
            std::size_t far_i = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (sizes[assignment[i]] <= 1) continue;
                const double d = squared_distance(points[i], centroids[assignment[i]]);
                if (d > far_d) {
                    far_d = d;
                    far_i = i;
                }
            }
            // Tolerance absorbs 1-ulp drift of duplicate-point centroids so
            // coincident points are never split across clusters.
            if (far_d <= 1e-20) break;
            --sizes[assignment[far_i]];
            assignment[far_i] = c;
            sizes[c] = 1;
            centroids = compute_centroids(points, assignment, k, sizes);
            changed = true;
        }

        res.iterations = iter + 1;
        if (!changed) break;
    }

    res.assignment = std::move(assignment);
    res.centroids = std::move(centroids);
    res.sizes = std::move(sizes);
    res.objective = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        res.objective += squared_distance(points[i], res.centroids[res.assignment[i]]);
    return res;
}

}  // namespace

KMeansResult kmeans(const std::vector<std::vector<double>>& points, int k,
                    std::uint64_t seed, int max_iter, int restarts) {
    if (k < 1) throw UsageError("kmeans: k must be >= 1");
    if (restarts < 1) throw UsageError("kmeans: restarts must be >= 1");
    if (points.empty()) {
        KMeansResult res;
        res.sizes.assign(k, 0);
        res.centroids.assign(k, {});
        return res;
    }
    KMeansResult best;
    std::uint64_t state = seed;
    for (int r = 0; r < restarts; ++r) {
        auto run = lloyd_once(points, k, splitmix64(state), max_iter);
        if (r == 0 || run.objective < best.objective) best = std::move(run);
    }
    return best;
}

}  // namespace lexsub
