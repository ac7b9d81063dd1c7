#pragma once

#include <convrad/plf.hpp>
#include <convrad/skeleton.hpp>

#include <map>
#include <string>
#include <vector>

namespace convrad {

// Multiradius profile on a skeleton: for every stored edge and ray, one exact
// PL function per index i in {1..r} giving log R_{S,i} along it; constants on
// disk markers; and per-index constants for vertices with no incident stored
// elements (point skeletons). Index arguments in the public API are 1-based,
// matching the Newton-polygon convention.
struct MultiRadiusProfile {
    long rank = 1;
    std::map<std::string, std::vector<PLFunction>> edge_fns;
    std::map<std::string, std::vector<PLFunction>> ray_fns;
    std::map<std::string, std::vector<Rat>> marker_consts;
    std::map<std::string, std::vector<Rat>> isolated_vertex_values;

    // Invariant check against the carrying skeleton: per-index functions for
    // every element with matching domains; ordering log R_1 <= ... <= log R_r
    // and log R <= 0 at every breakpoint; continuity at shared vertices;
    // oversolvable constancy (a value strictly above sigma only occurs on
    // flat pieces); partial-height slope denominators bounded by the index.
    std::vector<Violation> validate(const CurveSkeleton& sk) const;

    // log R_{S,i}(x): evaluates incident stored functions (continuity makes
    // the choice immaterial) or the isolated-vertex table.
    Rat value_at(const CurveSkeleton& sk, const std::string& vertex_id, long i) const;
    std::vector<Rat> values_at(const CurveSkeleton& sk, const std::string& vertex_id) const;

    // Outward slope of log R_{S,i} on a germ out of its base vertex.
    Rat germ_slope(const CurveSkeleton& sk, const Germ& g, long i) const;
    // Outward slope of the i-th partial height log H_{S,i} on a germ.
    Rat germ_height_slope(const CurveSkeleton& sk, const Germ& g, long i) const;

    const PLFunction& fn(const Germ& g, long i) const;
    const std::vector<PLFunction>& fns_for_edge(const std::string& id) const;
    const std::vector<PLFunction>& fns_for_ray(const std::string& id) const;

    // log H_{S,i} = sum of the first i radius functions, as a PL function on
    // the given stored element.
    PLFunction height_plf_edge(const std::string& edge_id, long i) const;
    PLFunction height_plf_ray(const std::string& ray_id, long i) const;
    Rat height_at(const CurveSkeleton& sk, const std::string& vertex_id, long i) const;
};

enum class RadiusClass { SpectralNonsolvable, Solvable, Oversolvable };

// Per-vertex classification against the solvability threshold
// sigma(x) = -dist_to_GammaS(x), with the spectral and over-solvable
// cutoffs i_sp and i_sol.
struct VertexClassification {
    std::vector<RadiusClass> cls;  // by index, 0-based storage
    long i_sp = 0;   // largest prefix of spectral non-solvable indices
    long i_sol = 0;  // smallest index beyond which all are oversolvable
};

VertexClassification classify(const CurveSkeleton& sk, const MultiRadiusProfile& prof,
                              const std::string& vertex_id);

}  // namespace convrad
