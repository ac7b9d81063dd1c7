#pragma once

#include <convrad/plf.hpp>
#include <convrad/rational.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

namespace convrad {

// A vertex of the stored graph: a type-2/3 point of the curve. `t` is the
// number of geometric points above it (1 for an algebraically closed base
// field), `dist` the exact metric distance to the skeleton Gamma_S; in_S
// marks pseudo-triangulation points, tr_ok the residual condition needed for
// super-harmonicity at positive-genus points.
struct Vertex {
    std::string id;
    long genus = 0;
    long t = 1;
    bool boundary = false;
    bool in_S = false;
    bool tr_ok = true;
    Rat dist;
};

struct Edge {
    std::string id;
    std::string from, to;
    Rat length;
    long deg = 1;
    bool in_gamma = false;  // part of Gamma_S
};

// Germ of segment at infinity (open boundary). Rays always belong to
// Gamma_S; their PL data is parameterized away from the anchor, so germ data
// "at infinity" is the tail in outward orientation. A positive tail slope on
// profile data is legal: it represents a germ of finite metric length toward
// the curve's open boundary.
struct Ray {
    std::string id;
    std::string anchor;
    long deg = 1;
    // Declares that radii have infinitely many breaks toward infinity along
    // this germ (a desk-scale stand-in for non-finitely-controlled behavior).
    bool infinite_break_tail = false;
};

// A connected component that is a virtual open disk with empty
// pseudo-triangulation. No graph is stored: radii are constant there.
struct DiskMarker {
    std::string id;
    long deg = 1;
};

// Germ of segment out of a stored vertex.
struct Germ {
    enum class Kind { Edge, Ray };
    Kind kind = Kind::Edge;
    std::string id;        // edge or ray id
    bool at_from = true;   // edges: germ out of `from` (true) or `to` (false)

    std::string key() const {
        if (kind == Kind::Ray) return id;
        return id + (at_from ? ":from" : ":to");
    }
    friend bool operator==(const Germ& a, const Germ& b) {
        return a.kind == b.kind && a.id == b.id && (a.kind == Germ::Kind::Ray || a.at_from == b.at_from);
    }
    friend bool operator<(const Germ& a, const Germ& b) { return a.key() < b.key(); }
};

struct Violation {
    std::string where;
    std::string what;
};

// An open sub-domain, encoded as the subset of stored elements it contains;
// it must be closed under taking all stored germs at its interior vertices
// (every edge/ray incident to an included vertex is included). Edges may
// have excluded endpoints: the cut ends count as germs at infinity of the
// sub-domain.
struct SubDomain {
    std::set<std::string> vertices;
    std::set<std::string> edges;
    std::set<std::string> rays;
    std::set<std::string> markers;
};

struct SumChiResult {
    long lhs = 0;
    long rhs = 0;
    bool equal = false;
};

struct CoverChiResult {
    long lhs = 0;  // chi_c(U) + chi_c(V) - chi_c(U cap V)
    long rhs = 0;  // chi_c(X)
    bool equal = false;
};

class CurveSkeleton {
public:
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<Ray> rays;
    std::vector<DiskMarker> markers;

    // Empty iff all structural invariants hold. Violations are data, not
    // exceptions: each names the offending element and the broken rule.
    std::vector<Violation> validate() const;

    const Vertex& vertex(const std::string& id) const;
    const Edge& edge(const std::string& id) const;
    const Ray& ray(const std::string& id) const;
    const DiskMarker& marker(const std::string& id) const;
    bool has_vertex(const std::string& id) const;

    std::vector<Germ> germs_at(const std::string& vertex_id) const;
    // Germs at x that belong to Gamma_S (in_gamma edges and rays).
    std::vector<Germ> gamma_germs_at(const std::string& vertex_id) const;
    bool germ_in_gamma(const Germ& g) const;
    long germ_degree(const Germ& g) const;
    // For an edge germ, the vertex at the far end.
    const std::string& germ_far_vertex(const Germ& g) const;
    const std::string& germ_base_vertex(const Germ& g) const;
    // The unique germ at a vertex with dist > 0 that decreases the distance
    // to Gamma_S (the direction of the maximal disk's boundary).
    Germ toward_gamma_germ(const std::string& vertex_id) const;

    bool on_gamma(const std::string& vertex_id) const { return vertex(vertex_id).dist == Rat(0); }

    // Distance to Gamma_S along an edge, as an affine function of the edge
    // parameter (slope 0 on Gamma_S edges, +-1 on branch edges). The
    // solvability threshold along the edge is sigma = -dist.
    PLFunction dist_along_edge(const std::string& edge_id) const;

    // chi(x, Gamma) = 2 t(x) - 2 g(x) - N_Gamma(x) for an explicit germ set.
    long chi_x(const std::string& vertex_id, const std::vector<Germ>& germs) const;
    // With Gamma = Gamma_S.
    long chi_x_gamma(const std::string& vertex_id) const;

    // Compactly supported Euler characteristic of the whole curve, summed
    // over connected components (disk markers contribute their degree).
    long chi_c() const;
    // The same for an open sub-domain. Throws std::invalid_argument if the
    // sub-domain is not closed under germs at its vertices.
    long chi_c(const SubDomain& dom) const;
    SubDomain whole() const;

    // Finite core S0: positive-genus, boundary and Gamma_S-bifurcation/leaf
    // vertices. Any finite S' between S0 and S satisfies the vertex-sum
    // Euler identity.
    std::set<std::string> core_points() const;
    // lhs = sum over x in S' of chi(x, Gamma_S), rhs = chi_c. Throws
    // std::invalid_argument when S' is not a subset of S or misses a core
    // point (naming it).
    SumChiResult sum_chi_check(const std::set<std::string>& s_prime) const;

    // Mayer-Vietoris additivity check for a cover X = U cup V.
    CoverChiResult chi_c_cover(const SubDomain& u, const SubDomain& v) const;

    // chi_c of the overconvergent germ of an elementary tube centered at x,
    // given its singular directions: 2 t(x) - 2 g(x) - N_V(x).
    long tube_chi(const std::string& vertex_id, const std::vector<Germ>& singular) const;

    // Connected components of the stored graph, as vertex id sets. Disk
    // markers are their own components and are not listed here.
    std::vector<std::set<std::string>> components() const;

private:
    std::size_t vertex_index(const std::string& id) const;
    SubDomain intersect(const SubDomain& a, const SubDomain& b) const;
    friend SubDomain subdomain_intersect(const CurveSkeleton&, const SubDomain&, const SubDomain&);
};

SubDomain subdomain_intersect(const CurveSkeleton& sk, const SubDomain& a, const SubDomain& b);

}  // namespace convrad
