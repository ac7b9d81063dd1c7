#pragma once

#include <convrad/generate.hpp>
#include <convrad/index.hpp>
#include <convrad/profile.hpp>
#include <convrad/skeleton.hpp>

#include <string>
#include <vector>

namespace testutil {

using namespace convrad;

inline Vertex vx(const std::string& id, bool in_s = true, long genus = 0, Rat dist = Rat(0),
                 bool boundary = false, long t = 1) {
    Vertex v;
    v.id = id;
    v.in_S = in_s;
    v.genus = genus;
    v.dist = dist;
    v.boundary = boundary;
    v.t = t;
    return v;
}

inline Edge ed(const std::string& id, const std::string& from, const std::string& to, Rat len = Rat(1),
               bool gamma = true, long deg = 1) {
    Edge e;
    e.id = id;
    e.from = from;
    e.to = to;
    e.length = len;
    e.in_gamma = gamma;
    e.deg = deg;
    return e;
}

inline Ray ra(const std::string& id, const std::string& anchor, long deg = 1) {
    Ray r;
    r.id = id;
    r.anchor = anchor;
    r.deg = deg;
    return r;
}

// Single S vertex with one ray: a disk-like component.
inline CurveSkeleton disk_skeleton() {
    CurveSkeleton sk;
    sk.vertices.push_back(vx("x"));
    sk.rays.push_back(ra("r", "x"));
    return sk;
}

// One S vertex with two rays: a pseudo-annulus through one point.
inline CurveSkeleton annulus_skeleton() {
    CurveSkeleton sk;
    sk.vertices.push_back(vx("x"));
    sk.rays.push_back(ra("r1", "x"));
    sk.rays.push_back(ra("r2", "x"));
    return sk;
}

// Constant profile with the given per-index values on every element.
inline MultiRadiusProfile constant_profile(const CurveSkeleton& sk, const std::vector<Rat>& values) {
    MultiRadiusProfile p;
    p.rank = static_cast<long>(values.size());
    for (const Edge& e : sk.edges) {
        std::vector<PLFunction> fns;
        for (const Rat& v : values) fns.push_back(PLFunction::constant(PLDomain::segment(e.length), v));
        p.edge_fns[e.id] = fns;
    }
    for (const Ray& r : sk.rays) {
        std::vector<PLFunction> fns;
        for (const Rat& v : values) fns.push_back(PLFunction::constant(PLDomain::ray(), v));
        p.ray_fns[r.id] = fns;
    }
    for (const DiskMarker& m : sk.markers) p.marker_consts[m.id] = values;
    for (const Vertex& v : sk.vertices)
        if (sk.germs_at(v.id).empty()) p.isolated_vertex_values[v.id] = values;
    return p;
}

inline EquationFlags liouville_all() {
    EquationFlags f;
    f.liouville_all = true;
    return f;
}

}  // namespace testutil
