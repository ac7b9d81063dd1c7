#pragma once

#include <convrad/cyclic_op.hpp>
#include <convrad/field.hpp>
#include <convrad/index.hpp>
#include <convrad/profile.hpp>
#include <convrad/radii.hpp>
#include <convrad/skeleton.hpp>

#include <random>
#include <utility>

namespace convrad {

struct GenOptions {
    long max_gamma_vertices = 8;
    long max_rank = 4;
    bool allow_branches = true;
    bool allow_mirror_branches = true;
    bool allow_markers = true;
    bool allow_boundary = true;
    bool allow_genus = true;
    // Plants one off-S vertex whose first partial height has a strictly
    // positive Laplacian (a weak-super-harmonicity violation to be caught).
    bool inject_wsh_violation = false;
};

struct GeneratedInstance {
    FieldConfig field;
    CurveSkeleton sk;
    MultiRadiusProfile prof;
    EquationFlags flags;
    // Set when inject_wsh_violation was requested: the offending vertex.
    std::string injected_at;
};

// Random valid finitely-controlled instance: a skeleton tree with rays,
// branches, genus and boundary marks, and an exact spectral profile whose
// Laplacians meet the weak super-harmonicity equalities at every vertex.
GeneratedInstance random_instance(std::mt19937_64& rng, const GenOptions& opt = GenOptions{});

// Random refinement: promotes pass-through skeleton vertices into S, pulls a
// depth-one branch edge into the skeleton, or promotes a disk marker.
TriangulationRefinement random_refinement(std::mt19937_64& rng, const CurveSkeleton& sk,
                                          const MultiRadiusProfile& prof);

// Random open cover X = U cup V with overlap, both closed under germs.
std::pair<SubDomain, SubDomain> random_cover(std::mt19937_64& rng, const CurveSkeleton& sk);

// Triangulation-invariance suite: applies `rounds` nested random
// refinements and verifies that the intrinsic Laplacians Delta_i (for
// i <= i_sp, on vertices common to both instances) and the global
// irregularity Irr_X are bit-identical throughout.
struct InvarianceReport {
    bool pass = true;
    std::vector<std::string> failures;
    long rounds_run = 0;
};
InvarianceReport invariance_check(const CurveSkeleton& sk, const MultiRadiusProfile& prof,
                                  const EquationFlags& flags, std::mt19937_64& rng, long rounds);

// The worked example: rank-2 operator on the unit disk with log|f_1| having
// two breaks and log|f_2| = 3, its skeleton instance (three S points, two
// branch disks carrying the zeros of f_1, the germ at the disk boundary)
// and the matching cyclic operator on the segment.
struct WorkedExample {
    GeneratedInstance inst;
    CyclicOperator op;
};
WorkedExample worked_example_disk(const FieldConfig& fc);

}  // namespace convrad
