#include <convrad/profile.hpp>

#include <stdexcept>

namespace convrad {

namespace {

void check_index(const MultiRadiusProfile& p, long i) {
    if (i < 1 || i > p.rank) throw std::invalid_argument("profile index out of range: " + std::to_string(i));
}

}  // namespace

const std::vector<PLFunction>& MultiRadiusProfile::fns_for_edge(const std::string& id) const {
    auto it = edge_fns.find(id);
    if (it == edge_fns.end()) throw std::invalid_argument("profile has no data for edge " + id);
    return it->second;
}

const std::vector<PLFunction>& MultiRadiusProfile::fns_for_ray(const std::string& id) const {
    auto it = ray_fns.find(id);
    if (it == ray_fns.end()) throw std::invalid_argument("profile has no data for ray " + id);
    return it->second;
}

const PLFunction& MultiRadiusProfile::fn(const Germ& g, long i) const {
    check_index(*this, i);
    const auto& v = g.kind == Germ::Kind::Edge ? fns_for_edge(g.id) : fns_for_ray(g.id);
    return v[static_cast<std::size_t>(i - 1)];
}

Rat MultiRadiusProfile::value_at(const CurveSkeleton& sk, const std::string& vertex_id, long i) const {
    check_index(*this, i);
    for (const Germ& g : sk.germs_at(vertex_id)) {
        const PLFunction& f = fn(g, i);
        if (g.kind == Germ::Kind::Ray || g.at_from) return f.start_value();
        return f.end_value();
    }
    auto it = isolated_vertex_values.find(vertex_id);
    if (it == isolated_vertex_values.end())
        throw std::invalid_argument("profile has no data at isolated vertex " + vertex_id);
    return it->second[static_cast<std::size_t>(i - 1)];
}

std::vector<Rat> MultiRadiusProfile::values_at(const CurveSkeleton& sk, const std::string& vertex_id) const {
    std::vector<Rat> out;
    for (long i = 1; i <= rank; ++i) out.push_back(value_at(sk, vertex_id, i));
    return out;
}

Rat MultiRadiusProfile::germ_slope(const CurveSkeleton& sk, const Germ& g, long i) const {
    (void)sk;
    const PLFunction& f = fn(g, i);
    if (g.kind == Germ::Kind::Ray || g.at_from) return f.start_slope();
    return f.end_slope();
}

Rat MultiRadiusProfile::germ_height_slope(const CurveSkeleton& sk, const Germ& g, long i) const {
    check_index(*this, i);
    Rat s(0);
    for (long j = 1; j <= i; ++j) s += germ_slope(sk, g, j);
    return s;
}

PLFunction MultiRadiusProfile::height_plf_edge(const std::string& edge_id, long i) const {
    check_index(*this, i);
    const auto& fns = fns_for_edge(edge_id);
    PLFunction acc = fns[0];
    for (long j = 2; j <= i; ++j) acc = plf_sum(acc, fns[static_cast<std::size_t>(j - 1)]);
    return acc;
}

PLFunction MultiRadiusProfile::height_plf_ray(const std::string& ray_id, long i) const {
    check_index(*this, i);
    const auto& fns = fns_for_ray(ray_id);
    PLFunction acc = fns[0];
    for (long j = 2; j <= i; ++j) acc = plf_sum(acc, fns[static_cast<std::size_t>(j - 1)]);
    return acc;
}

Rat MultiRadiusProfile::height_at(const CurveSkeleton& sk, const std::string& vertex_id, long i) const {
    check_index(*this, i);
    Rat h(0);
    for (long j = 1; j <= i; ++j) h += value_at(sk, vertex_id, j);
    return h;
}

VertexClassification classify(const CurveSkeleton& sk, const MultiRadiusProfile& prof,
                              const std::string& vertex_id) {
    const Rat sigma = -sk.vertex(vertex_id).dist;
    VertexClassification out;
    for (long i = 1; i <= prof.rank; ++i) {
        Rat v = prof.value_at(sk, vertex_id, i);
        if (v < sigma)
            out.cls.push_back(RadiusClass::SpectralNonsolvable);
        else if (v == sigma)
            out.cls.push_back(RadiusClass::Solvable);
        else
            out.cls.push_back(RadiusClass::Oversolvable);
    }
    long isp = 0;
    while (isp < prof.rank && out.cls[static_cast<std::size_t>(isp)] == RadiusClass::SpectralNonsolvable) ++isp;
    out.i_sp = isp;
    long isol = prof.rank;
    while (isol > 0 && out.cls[static_cast<std::size_t>(isol - 1)] == RadiusClass::Oversolvable) --isol;
    out.i_sol = isol;
    return out;
}

std::vector<Violation> MultiRadiusProfile::validate(const CurveSkeleton& sk) const {
    std::vector<Violation> out;
    auto bad = [&](const std::string& where, const std::string& what) { out.push_back({where, what}); };
    if (rank < 1) {
        bad("profile", "rank must be >= 1");
        return out;
    }
    const std::size_t r = static_cast<std::size_t>(rank);

    // Coverage and domain agreement.
    for (const Edge& e : sk.edges) {
        auto it = edge_fns.find(e.id);
        if (it == edge_fns.end()) {
            bad(e.id, "no radius functions for this edge");
            continue;
        }
        if (it->second.size() != r) {
            bad(e.id, "wrong number of radius functions");
            continue;
        }
        for (const PLFunction& f : it->second)
            if (!(f.domain() == PLDomain::segment(e.length))) bad(e.id, "radius function domain mismatch");
    }
    for (const Ray& ry : sk.rays) {
        auto it = ray_fns.find(ry.id);
        if (it == ray_fns.end()) {
            bad(ry.id, "no radius functions for this ray");
            continue;
        }
        if (it->second.size() != r) {
            bad(ry.id, "wrong number of radius functions");
            continue;
        }
        for (const PLFunction& f : it->second)
            if (f.domain().kind != DomainKind::Ray) bad(ry.id, "radius function domain mismatch");
    }
    for (const DiskMarker& m : sk.markers) {
        auto it = marker_consts.find(m.id);
        if (it == marker_consts.end()) {
            bad(m.id, "no radius constants for this disk marker");
            continue;
        }
        if (it->second.size() != r) bad(m.id, "wrong number of radius constants");
    }
    for (const Vertex& v : sk.vertices) {
        if (!sk.germs_at(v.id).empty()) continue;
        auto it = isolated_vertex_values.find(v.id);
        if (it == isolated_vertex_values.end())
            bad(v.id, "no radius values for this isolated vertex");
        else if (it->second.size() != r)
            bad(v.id, "wrong number of radius values");
    }
    if (!out.empty()) return out;

    auto check_ordered_leq0 = [&](const std::string& where, const std::vector<PLFunction>& fns) {
        // Ordering and <= 0 at every breakpoint of the merged grid; affine
        // interpolation makes breakpoint checks sufficient on segments.
        std::vector<Rat> grid;
        for (const PLFunction& f : fns)
            for (const auto& p : f.breakpoints()) grid.push_back(p.t);
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
        for (const Rat& t : grid) {
            for (std::size_t i = 0; i < fns.size(); ++i) {
                Rat v = fns[i].eval(t);
                if (v > Rat(0)) bad(where, "log R exceeds 0 at breakpoint t=" + t.str());
                if (i > 0 && fns[i - 1].eval(t) > v)
                    bad(where, "radius ordering fails at breakpoint t=" + t.str());
            }
        }
    };
    for (const Edge& e : sk.edges) check_ordered_leq0(e.id, fns_for_edge(e.id));
    for (const Ray& ry : sk.rays) check_ordered_leq0(ry.id, fns_for_ray(ry.id));
    for (const DiskMarker& m : sk.markers) {
        const auto& cs = marker_consts.at(m.id);
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (cs[i] > Rat(0)) bad(m.id, "marker constant exceeds 0");
            if (i > 0 && cs[i - 1] > cs[i]) bad(m.id, "marker constants not sorted");
        }
    }
    for (const auto& [vid, vals] : isolated_vertex_values) {
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (vals[i] > Rat(0)) bad(vid, "isolated vertex value exceeds 0");
            if (i > 0 && vals[i - 1] > vals[i]) bad(vid, "isolated vertex values not sorted");
        }
    }

    // Continuity at shared vertices.
    for (const Vertex& v : sk.vertices) {
        auto germs = sk.germs_at(v.id);
        if (germs.empty()) continue;
        for (long i = 1; i <= rank; ++i) {
            Rat ref = (germs[0].kind == Germ::Kind::Ray || germs[0].at_from) ? fn(germs[0], i).start_value()
                                                                             : fn(germs[0], i).end_value();
            for (std::size_t k = 1; k < germs.size(); ++k) {
                Rat val = (germs[k].kind == Germ::Kind::Ray || germs[k].at_from) ? fn(germs[k], i).start_value()
                                                                                 : fn(germs[k], i).end_value();
                if (val != ref)
                    bad(v.id, "radius " + std::to_string(i) + " discontinuous across incident germs");
            }
        }
    }

    // Oversolvable constancy: wherever log R_i(t) > sigma(t), the function is
    // locally constant. Checked at piece endpoints; affine pieces make that
    // sufficient.
    for (const Edge& e : sk.edges) {
        PLFunction sigma = plf_scale(sk.dist_along_edge(e.id), Rat(-1));
        const auto& fns = fns_for_edge(e.id);
        for (long i = 1; i <= rank; ++i) {
            const PLFunction& f = fns[static_cast<std::size_t>(i - 1)];
            const auto& bps = f.breakpoints();
            for (std::size_t k = 0; k < bps.size(); ++k) {
                if (!(bps[k].v > sigma.eval(bps[k].t))) continue;
                if (k > 0 && f.slope(bps[k].t, Dir::Backward) != Rat(0))
                    bad(e.id, "oversolvable radius " + std::to_string(i) + " with nonzero slope at t=" +
                                  bps[k].t.str());
                if (bps[k].t < e.length && f.slope(bps[k].t, Dir::Forward) != Rat(0))
                    bad(e.id, "oversolvable radius " + std::to_string(i) + " with nonzero slope at t=" +
                                  bps[k].t.str());
            }
        }
    }
    for (const Vertex& v : sk.vertices) {
        auto germs = sk.germs_at(v.id);
        if (germs.empty()) continue;
        Rat sigma = -v.dist;
        for (long i = 1; i <= rank; ++i) {
            if (!(value_at(sk, v.id, i) > sigma)) continue;
            for (const Germ& g : germs)
                if (germ_slope(sk, g, i) != Rat(0))
                    bad(v.id, "oversolvable radius " + std::to_string(i) + " with nonzero outward slope on " +
                                  g.key());
        }
    }

    // Partial-height integrality: every slope of log H_{S,i} has denominator
    // at most i.
    auto check_integrality = [&](const std::string& where, const PLFunction& h, long i) {
        for (const Rat& s : h.piece_slopes())
            if (!s.den_leq(static_cast<unsigned long>(i)))
                bad(where, "partial height H_" + std::to_string(i) + " has slope " + s.str() +
                               " with denominator > " + std::to_string(i));
    };
    for (const Edge& e : sk.edges)
        for (long i = 1; i <= rank; ++i) check_integrality(e.id, height_plf_edge(e.id, i), i);
    for (const Ray& ry : sk.rays)
        for (long i = 1; i <= rank; ++i) check_integrality(ry.id, height_plf_ray(ry.id, i), i);

    return out;
}

}  // namespace convrad
