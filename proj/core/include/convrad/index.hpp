#pragma once

#include <convrad/field.hpp>
#include <convrad/profile.hpp>
#include <convrad/radii.hpp>
#include <convrad/skeleton.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace convrad {

struct OutsideGerm {
    long deg = 1;
    long irr = 0;
};

// Analytic hypotheses that cannot be computed from stored data: they enter
// as caller-supplied flags, and checks that need a missing flag refuse
// instead of failing.
struct EquationFlags {
    bool liouville_all = false;
    std::set<std::string> liouville_free_on;  // edge / ray / marker ids
    // Overconvergent data per boundary vertex: the germs out of it that
    // leave X, with their degrees and irregularities.
    std::map<std::string, std::vector<OutsideGerm>> overconvergent;

    bool nl_ok(const std::string& element_id) const {
        return liouville_all || liouville_free_on.count(element_id) > 0;
    }
};

struct IndexVerdict {
    enum class Kind { Finite, Infinite, Undetermined };
    Kind kind = Kind::Undetermined;
    long chi = 0;
    std::string reason;
};

struct IndexReport {
    std::map<std::string, long> chi_per_vertex;  // chi(x,S,F) at S vertices
    std::map<std::string, long> irr_per_germ;    // by germ key / ray id / marker id
    std::map<std::string, long> delta_per_boundary;
    std::optional<long> irr_X;
    long chi_sum = 0;
    long chi_gos = 0;
    std::optional<long> h0;
    std::optional<long> h1;
    IndexVerdict verdict;
    bool formulas_agree = false;
};

// Irregularity of a germ out of a vertex: -deg(b) times the localized slope
// of the total height along b.
long irr_germ(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id, const Germ& g);
// Irregularity along a germ at infinity (a ray, oriented toward the
// interior).
long irr_at_infinity(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& ray_id);
// Irregularity along the germ at infinity of a disk marker.
long irr_marker(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& marker_id);

// chi(x, Gamma, F) = r chi(x, Gamma) - sum of germ irregularities over the
// germs of Gamma at x, for Gamma = Gamma_S (total=false) or Gamma_S(F)
// (total=true). The A/B/C decomposition against the spectral cutoff comes
// with exactness flags; decomposition_valid reports whether A+B+C matches
// and the sign conditions hold (they do for data arising from an actual
// equation at a point satisfying (TR)).
struct ChiAtVertex {
    long chi = 0;
    long A = 0, B = 0, C = 0;
    bool b_nonpositive = true;
    bool c_nonpositive = true;
    bool decomposition_valid = true;
};
ChiAtVertex chi_xSF(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id,
                    bool total = false);

struct IrrResult {
    bool ok = false;
    long irr = 0;
    std::string refusal;
};

// Global irregularity Irr_X = sum of boundary intrinsic Laplacians minus the
// irregularities at the open boundary. Refuses (naming the condition) when a
// finiteness hypothesis fails.
IrrResult global_irregularity(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const EquationFlags& flags);
// The same for an open sub-domain; cut edges contribute germs at infinity.
IrrResult global_irregularity(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const EquationFlags& flags,
                              const SubDomain& dom);

// The two global index formulas, cross-checked: the vertex-sum form and the
// Grothendieck-Ogg-Shafarevich form r chi_c(X) - Irr_X.
IndexReport global_index(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const EquationFlags& flags);

struct DiskIndexResult {
    long chi = 0;
    long h0 = 0;
    long h1 = 0;
};
// Index over the open disk behind an off-skeleton germ b out of x.
DiskIndexResult disk_index(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const EquationFlags& flags,
                           const std::string& vertex_id, const Germ& g);
// Index over a disk-marker component.
DiskIndexResult disk_index(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const EquationFlags& flags,
                           const std::string& marker_id);

struct PseudodiskResult {
    IndexVerdict verdict;
    long h0 = 0;
    long h1 = 0;
};
// Index of a pseudo-disk component modeled as one S vertex with one ray,
// decided through the exhaustion limit: finite iff the total height is
// eventually affine along the germ at infinity.
PseudodiskResult pseudodisk_index(const CurveSkeleton& sk, const MultiRadiusProfile& prof,
                                  const EquationFlags& flags, const std::string& ray_id);

// Exhaustion family X_n: each step appends a segment to a designated ray
// whose per-index tail slopes move by the step deltas; steps cycle.
struct GrowthStep {
    Rat length;
    std::vector<Rat> slope_delta;
};
struct GrowthRule {
    std::string ray_id;
    std::vector<GrowthStep> steps;
};
struct LimitResult {
    IndexVerdict verdict;
    std::vector<long> chi_trace;
    bool telescoping_ok = true;
    bool criteria_ok = false;     // the almost-everywhere-zero criteria
    bool criteria_agree = false;  // criteria verdict matches the limit verdict
    long steps_taken = 0;
};
// Streams chi_n = global_index(X_n) until the increments vanish over a
// window, or the declared periodic pattern yields a nonzero per-period
// increment; checks the telescoping identity at every step.
LimitResult limit_decide(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const EquationFlags& flags,
                         const GrowthRule& growth, long max_steps, long window);

// Overconvergent index: boundary vertices become interior through their
// elementary neighborhoods, with the outside germs supplied as flags.
IndexReport overconvergent_index(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const EquationFlags& flags);

struct Puncture {
    std::string ray_id;
    long residue_deg = 1;  // [H(z) : K]
    long irr = 0;          // Irr_z, the tail irregularity at the puncture
};
struct MeromorphicResult {
    bool ok = false;
    long chi = 0;
    std::string reason;
};
// Index for an equation with meromorphic singularities: X = Y - Z with the
// punctures given as rays. Cross-checks the supplied Irr_z against the
// stored tail data.
MeromorphicResult meromorphic_index(const CurveSkeleton& sk, const MultiRadiusProfile& prof,
                                    const EquationFlags& flags, const std::vector<Puncture>& punctures);

struct FinitelyControlledResult {
    bool finite = true;
    std::set<std::string> bad_vertices;     // boundary, positive genus, bifurcation
    std::vector<std::string> break_points;  // radius breaks interior to Gamma_S segments
    std::vector<std::string> tail_markers;  // declared infinite tails
};
FinitelyControlledResult finitely_controlled(const CurveSkeleton& sk, const MultiRadiusProfile& prof);

enum class VanishingVerdict { AllCohomologyZero, NoClaim };
// Spectral non-solvability on the controlling graph kills all cohomology;
// anything else is a no-claim.
VanishingVerdict vanishing_verdict(const CurveSkeleton& sk, const MultiRadiusProfile& prof);

struct IrrCoverResult {
    bool ok = false;
    std::string reason;
    long irr_X = 0, irr_U = 0, irr_V = 0, irr_UV = 0;
    bool equal = false;
};
// Additivity Irr_X = Irr_U + Irr_V - Irr_{U cap V} for a cover X = U cup V.
IrrCoverResult irr_cover_check(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const EquationFlags& flags,
                               const SubDomain& u, const SubDomain& v);

}  // namespace convrad
