#pragma once

#include <convrad/profile.hpp>
#include <convrad/skeleton.hpp>

#include <string>
#include <vector>

namespace convrad {

// Deterministic SVG plot of the radius functions along one stored edge or
// ray: one polyline per index (or the single requested index), with the
// solvability line sigma = -dist drawn dashed. Exact rational coordinates
// are mapped into a fixed viewBox; identical inputs produce byte-identical
// output.
std::string plot_svg(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& element_id,
                     long index = 0);

}  // namespace convrad
