#pragma once

#include <convrad/field.hpp>
#include <convrad/profile.hpp>
#include <convrad/skeleton.hpp>

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace convrad {

// Laplacian dd^c F(x): degree-weighted sum of outward slopes over the stored
// germs at x. Unstored germs contribute 0 (radii are constant off the stored
// graph).
Rat laplacian(const CurveSkeleton& sk, const std::string& vertex_id,
              const std::function<Rat(const Germ&)>& outward_slope);
// dd^c of log H_{S,i} and of log R_{S,i}.
Rat laplacian_height(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id, long i);
Rat laplacian_radius(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id, long i);

// Intrinsic Laplacian Delta_i(x) = dd^c H_{S,i}(x) + [x in S] * i * chi(x,S);
// independent of the pseudo-triangulation for i <= i_sp(x).
Rat intrinsic_laplacian(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id, long i);

// Whether the index i is a vertex of the convergence Newton polygon at x
// (i = r, or i+1 separates the radii at x) and whether it is free of
// solvability there (no index j <= i is solvable at x).
bool is_polygon_vertex(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id, long i);
bool free_of_solvability_at(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id,
                            long i);

// Controlling graph Gamma_{S,i}(F): the stored elements where log R_{S,i} is
// non-constant, together with Gamma_S. i = 0 selects the union over all
// indices (the total controlling graph Gamma_S(F)).
struct ControllingGraph {
    std::set<std::string> edges;
    std::set<std::string> rays;
};
ControllingGraph controlling_graph(const CurveSkeleton& sk, const MultiRadiusProfile& prof, long i);

// Whether the germ out of its base vertex belongs to Gamma_{S,i}(F)
// (i = 0: the total controlling graph): a Gamma_S germ, or a germ along
// which the radius moves. A germ with zero slope at the vertex does not
// belong even if the radius breaks farther out.
bool germ_in_controlling(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const Germ& g, long i);
bool vertex_in_controlling(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id,
                           long i);
// Whether x is an end-point of Gamma_{S,i}(F): member with at most one
// incident controlling germ.
bool endpoint_of_controlling(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id,
                             long i);
// Whether some germ at x carries a nonzero slope of the partial height
// H_{S,i} (membership in the controlling graph of the height).
bool vertex_in_height_controlling(const CurveSkeleton& sk, const MultiRadiusProfile& prof,
                                  const std::string& vertex_id, long i);

// Solutions counted through the stored data: h0 of the open disk behind an
// off-skeleton germ b (indices with zero slope on b and value >= sigma at the
// base point) and h0 of the overconvergent closed disk at an off-skeleton
// vertex (indices with value strictly above sigma).
long h0_disk_germ(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id,
                  const Germ& g);
long h0_dagger(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id);

// Slope of the total height along b after localization to an annulus
// representing b:
//   (i)   x on Gamma_S, b inside Gamma_S: unchanged;
//   (ii)  b into a disk: + (r - h0(D_b));
//   (iii) b toward Gamma_S at an off-skeleton x: - (r - h0(D_x^dag)).
Rat localized_boundary_slope(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id,
                             const Germ& g);
// The same, one entry per index (the internal consistency oracle: summing
// these reproduces localized_boundary_slope exactly).
std::vector<Rat> localized_slopes_per_index(const CurveSkeleton& sk, const MultiRadiusProfile& prof,
                                            const std::string& vertex_id, const Germ& g);

// An elementary tube centered at x, given by its singular directions among
// the stored germs at x. Adaptedness requires every non-singular stored germ
// to carry constant radii.
struct TubeSpec {
    std::vector<Germ> singular;
};
// Canonical tube: singular directions are the stored germs in the total
// controlling graph (plus the germ toward Gamma_S off the skeleton).
TubeSpec canonical_tube(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id);

// dd^c H_{{x},r}(x, F|V^dag) after localization to the tube.
Rat localize_tube_laplacian(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id,
                            const TubeSpec& tube);

// Weak super-harmonicity report. Every failed inequality or equality case is
// listed; hypothesis failures (condition (TR) missing at a positive-genus
// point) are recorded as skipped, never as violations.
struct WshItem {
    std::string vertex;
    long index = 0;
    std::string kind;  // "gamma-bound", "off-S-bound", "equality"
    Rat lhs;           // dd^c H_{S,i}(x)
    Rat rhs;           // the bound
    bool ok = true;
};
struct WshReport {
    std::vector<WshItem> checks;
    std::vector<WshItem> violations;
    std::vector<std::string> skipped;
    bool pass = true;
};
WshReport check_weak_superharmonicity(const CurveSkeleton& sk, const MultiRadiusProfile& prof);

// The pathological sets: C_{S,i} built inductively from solvable end-points
// of controlling graphs, and E_{S,i} = {x : dd^c H_{S,i}(x) > 0}. Results
// are per index, 1-based (front() is i = 1).
struct PathologicalSets {
    std::vector<std::set<std::string>> C;
    std::vector<std::set<std::string>> E;
};
PathologicalSets pathological_sets(const CurveSkeleton& sk, const MultiRadiusProfile& prof);

// Super-harmonicity at a point of C_{S,r}(F): a claim only under the three
// hypotheses; without them the checker reports "no claim" rather than pass
// or fail.
struct CSuperharmonicityFlags {
    bool h0_dagger_equality = false;
    bool dual_compatible = false;
    bool liouville_free = false;
};
struct CSuperharmonicityVerdict {
    enum class Kind { Pass, Violation, NoClaim };
    Kind kind = Kind::NoClaim;
    std::string detail;
    std::vector<Rat> laplacians;  // dd^c H_{S,i}(x) for i = 1..r
};
CSuperharmonicityVerdict check_superharmonicity_at_C(const CurveSkeleton& sk, const MultiRadiusProfile& prof,
                                                     const std::string& vertex_id,
                                                     const CSuperharmonicityFlags& flags);

// Passage to a finer pseudo-triangulation S' with Gamma_S' containing
// Gamma_S: vertices added to S, branch edges added to the skeleton, disk
// markers promoted to one-point components at a given depth. Radii transform
// by log R' = min(0, log f + log R) with log f = dist_S - dist_S'.
struct TriangulationRefinement {
    std::set<std::string> add_to_S;
    std::set<std::string> add_to_gamma;
    std::map<std::string, Rat> promote_markers;  // marker id -> depth (> 0)
};
struct RefinedInstance {
    CurveSkeleton sk;
    MultiRadiusProfile prof;
};
RefinedInstance change_triangulation(const CurveSkeleton& sk, const MultiRadiusProfile& prof,
                                     const TriangulationRefinement& ref);

// Integrality suite: every slope of log H_{S,i} has denominator at most i,
// and the height slope is an integer wherever i is a vertex of the
// convergence Newton polygon (checked at stored vertices and at interior
// breakpoints). Violations are data.
std::vector<Violation> integrality_check(const CurveSkeleton& sk, const MultiRadiusProfile& prof);

// Splitting by a separating index: succeeds iff log R_{i-1} < log R_i at
// every point, returning the two sub-profiles; reports "direct summand" when
// the lower controlling graphs are contained in Gamma_{S,i}(F). A failed
// separation names a witness point.
struct SplitResult {
    bool ok = false;
    std::string witness;
    MultiRadiusProfile geq;  // ranks r - i + 1
    MultiRadiusProfile lt;   // rank i - 1 (rank 0 carrier when i = 1)
    bool direct_summand = false;
};
SplitResult split_profile(const CurveSkeleton& sk, const MultiRadiusProfile& prof, long i);

}  // namespace convrad
