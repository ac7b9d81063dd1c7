#pragma once

#include <convrad/rational.hpp>

#include <optional>
#include <vector>

namespace convrad {

// Finite family of polygon points (j, value) with strictly increasing integer
// abscissae. An absent value marks a zero coefficient (valuation -infinity);
// absent points never contribute to a hull.
struct HullPoints {
    struct Entry {
        long j = 0;
        std::optional<Rat> value;
    };
    std::vector<Entry> points;

    static HullPoints dense(const std::vector<std::optional<Rat>>& values);
    std::size_t present_count() const;
};

enum class HullSide { UpperConcave, LowerConvex };

// Slopes of the requested hull read from the smallest to the largest present
// index, one slope per unit of index span (repeated across multi-unit hull
// edges). UpperConcave slopes are non-increasing, LowerConvex non-decreasing.
// Throws std::invalid_argument with fewer than two present points.
std::vector<Rat> newton_hull(const HullPoints& pts, HullSide side);

// Value of the hull boundary at integer abscissa k (the least concave
// majorant for UpperConcave, the greatest convex minorant for LowerConvex),
// for k between the first and last present indices. Used by the Young
// calculus, where partial sums of hull slopes are hull heights.
Rat hull_value(const HullPoints& pts, HullSide side, long k);

}  // namespace convrad
