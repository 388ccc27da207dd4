#pragma once

#include <optional>
#include <string>
#include <vector>

#include "folia/chart.hpp"

namespace folia {

/// Coordinate box with optional strict inequalities (each expression must
/// evaluate > 0 for a point to be kept).
struct Region {
    Vec4d lo{-1.0, -1.0, -1.0, -1.0};
    Vec4d hi{1.0, 1.0, 1.0, 1.0};
    std::vector<ExprPtr> keep;
};

struct Scene {
    std::string name;
    Chart chart;
    Distribution dist;
    ExprPtr potential;  // may be null
    Region region;
};

/// Deterministic low-discrepancy sample plan over the region box (Halton,
/// bases 2/3/5/7; the seed offsets the sequence index). Points violating a
/// keep-inequality are skipped, not counted.
std::vector<Vec4d> sample_plan(const Scene& scene, int count, unsigned seed);

/// Stable digest of a scene's defining data (name-independent).
unsigned long long scene_digest(const Scene& scene);

}  // namespace folia
