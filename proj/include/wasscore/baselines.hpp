#pragma once

#include <cstdint>
#include <vector>

#include "wasscore/distances.hpp"
#include "wasscore/selection.hpp"

namespace wasscore {

struct KMedoidsResult {
  Selection medoids;
  // Sum of point-to-assigned-medoid distances after initialization and after
  // every sweep (nonincreasing).
  std::vector<double> objective_history;
  int sweeps = 0;
};

// Alternating (Voronoi-style) k-medoids: assign every point to its nearest
// medoid, then move each medoid to the member minimizing the within-cluster
// distance sum, until nothing changes or 100 sweeps. Seeded k-means++-style
// initialization over the distance matrix. Indices in fixed_one are medoids
// from the start and never move.
KMedoidsResult kmedoids(const DistanceMatrix& dist, std::size_t budget, std::uint64_t seed,
                        const std::vector<int>& fixed_one = {});
Selection kmedoids_select(const DistanceMatrix& dist, std::size_t budget, std::uint64_t seed,
                          const std::vector<int>& fixed_one = {});

// Greedy farthest-first traversal starting from fixed_one (or one seeded
// uniform index when fixed_one is empty). Ties go to the lowest index.
Selection kcenters_select(const DistanceMatrix& dist, std::size_t budget,
                          const std::vector<int>& fixed_one, std::uint64_t seed);

// fixed_one plus a uniform sample without replacement from the rest.
Selection random_select(std::size_t n, std::size_t budget, const std::vector<int>& fixed_one,
                        std::uint64_t seed);

// max_i min_{j in sel} D(i, j)
double covering_radius(const DistanceMatrix& dist, const Selection& sel);

}  // namespace wasscore
