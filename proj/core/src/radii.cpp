#include <convrad/radii.hpp>

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace convrad {

Rat laplacian(const CurveSkeleton& sk, const std::string& vertex_id,
              const std::function<Rat(const Germ&)>& outward_slope) {
    Rat acc(0);
    for (const Germ& g : sk.germs_at(vertex_id)) acc += Rat(sk.germ_degree(g)) * outward_slope(g);
    return acc;
}

Rat laplacian_height(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id, long i) {
    return laplacian(sk, vertex_id, [&](const Germ& g) { return prof.germ_height_slope(sk, g, i); });
}

Rat laplacian_radius(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id, long i) {
    return laplacian(sk, vertex_id, [&](const Germ& g) { return prof.germ_slope(sk, g, i); });
}

Rat intrinsic_laplacian(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id,
                        long i) {
    Rat dd = laplacian_height(sk, prof, vertex_id, i);
    const Vertex& v = sk.vertex(vertex_id);
    if (v.in_S) dd += Rat(i) * Rat(sk.chi_x_gamma(vertex_id));
    return dd;
}

bool is_polygon_vertex(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id,
                       long i) {
    if (i == prof.rank) return true;
    return prof.value_at(sk, vertex_id, i) < prof.value_at(sk, vertex_id, i + 1);
}

bool free_of_solvability_at(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id,
                            long i) {
    const Rat sigma = -sk.vertex(vertex_id).dist;
    for (long j = 1; j <= i; ++j)
        if (prof.value_at(sk, vertex_id, j) == sigma) return false;
    return true;
}

ControllingGraph controlling_graph(const CurveSkeleton& sk, const MultiRadiusProfile& prof, long i) {
    ControllingGraph cg;
    auto moving = [&](const PLFunction& f) { return !f.is_constant(); };
    for (const Edge& e : sk.edges) {
        bool in = e.in_gamma;
        if (!in) {
            const auto& fns = prof.fns_for_edge(e.id);
            if (i == 0) {
                for (const auto& f : fns) in = in || moving(f);
            } else {
                in = moving(fns[static_cast<std::size_t>(i - 1)]);
            }
        }
        if (in) cg.edges.insert(e.id);
    }
    for (const Ray& r : sk.rays) cg.rays.insert(r.id);  // rays lie inside Gamma_S
    return cg;
}

bool germ_in_controlling(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const Germ& g, long i) {
    if (sk.germ_in_gamma(g)) return true;
    if (i == 0) {
        for (long j = 1; j <= prof.rank; ++j)
            if (prof.germ_slope(sk, g, j) != Rat(0)) return true;
        return false;
    }
    return prof.germ_slope(sk, g, i) != Rat(0);
}

bool vertex_in_controlling(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id,
                           long i) {
    if (sk.on_gamma(vertex_id)) return true;
    for (const Germ& g : sk.germs_at(vertex_id))
        if (germ_in_controlling(sk, prof, g, i)) return true;
    return false;
}

bool endpoint_of_controlling(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id,
                             long i) {
    if (!vertex_in_controlling(sk, prof, vertex_id, i)) return false;
    std::size_t n = 0;
    for (const Germ& g : sk.germs_at(vertex_id))
        if (germ_in_controlling(sk, prof, g, i)) ++n;
    return n <= 1;
}

bool vertex_in_height_controlling(const CurveSkeleton& sk, const MultiRadiusProfile& prof,
                                  const std::string& vertex_id, long i) {
    if (sk.on_gamma(vertex_id)) return true;
    for (const Germ& g : sk.germs_at(vertex_id))
        if (prof.germ_height_slope(sk, g, i) != Rat(0)) return true;
    return false;
}

long h0_disk_germ(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id,
                  const Germ& g) {
    const Rat sigma = -sk.vertex(vertex_id).dist;
    long n = 0;
    for (long i = 1; i <= prof.rank; ++i)
        if (prof.germ_slope(sk, g, i) == Rat(0) && prof.value_at(sk, vertex_id, i) >= sigma) ++n;
    return n;
}

long h0_dagger(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id) {
    const Rat sigma = -sk.vertex(vertex_id).dist;
    long n = 0;
    for (long i = 1; i <= prof.rank; ++i)
        if (prof.value_at(sk, vertex_id, i) > sigma) ++n;
    return n;
}

namespace {

enum class GermCase { OnGamma, IntoDisk, TowardGamma };

GermCase classify_germ(const CurveSkeleton& sk, const std::string& vertex_id, const Germ& g) {
    if (sk.germ_base_vertex(g) != vertex_id) throw std::invalid_argument("germ is not incident to " + vertex_id);
    const Vertex& v = sk.vertex(vertex_id);
    if (v.dist == Rat(0)) {
        if (sk.germ_in_gamma(g)) return GermCase::OnGamma;
        return GermCase::IntoDisk;
    }
    if (g == sk.toward_gamma_germ(vertex_id)) return GermCase::TowardGamma;
    return GermCase::IntoDisk;
}

}  // namespace

std::vector<Rat> localized_slopes_per_index(const CurveSkeleton& sk, const MultiRadiusProfile& prof,
                                            const std::string& vertex_id, const Germ& g) {
    GermCase gc = classify_germ(sk, vertex_id, g);
    const Rat sigma = -sk.vertex(vertex_id).dist;
    std::vector<Rat> out;
    for (long i = 1; i <= prof.rank; ++i) {
        Rat s = prof.germ_slope(sk, g, i);
        switch (gc) {
            case GermCase::OnGamma:
                break;
            case GermCase::IntoDisk:
                // indices without a solution on D_b are spectral along b and
                // their slopes rise by one under localization
                if (!(s == Rat(0) && prof.value_at(sk, vertex_id, i) >= sigma)) s += Rat(1);
                break;
            case GermCase::TowardGamma:
                // overconvergent solutions through x keep slope 0, the rest
                // drop by one
                if (!(prof.value_at(sk, vertex_id, i) > sigma)) s -= Rat(1);
                break;
        }
        out.push_back(s);
    }
    return out;
}

Rat localized_boundary_slope(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id,
                             const Germ& g) {
    GermCase gc = classify_germ(sk, vertex_id, g);
    Rat h = prof.germ_height_slope(sk, g, prof.rank);
    switch (gc) {
        case GermCase::OnGamma:
            return h;
        case GermCase::IntoDisk:
            return h + Rat(prof.rank) - Rat(h0_disk_germ(sk, prof, vertex_id, g));
        case GermCase::TowardGamma:
            return h + Rat(h0_dagger(sk, prof, vertex_id)) - Rat(prof.rank);
    }
    throw std::logic_error("unreachable");
}

TubeSpec canonical_tube(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id) {
    TubeSpec tube;
    const Vertex& v = sk.vertex(vertex_id);
    for (const Germ& g : sk.germs_at(vertex_id)) {
        bool singular = germ_in_controlling(sk, prof, g, 0);
        if (v.dist != Rat(0) && g == sk.toward_gamma_germ(vertex_id)) singular = true;
        if (singular) tube.singular.push_back(g);
    }
    return tube;
}

Rat localize_tube_laplacian(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id,
                            const TubeSpec& tube) {
    const Vertex& v = sk.vertex(vertex_id);
    const long r = prof.rank;
    auto is_singular = [&](const Germ& g) {
        return std::find(tube.singular.begin(), tube.singular.end(), g) != tube.singular.end();
    };
    // Adaptedness: non-singular stored germs lie inside the tube, where the
    // radii must be constant; skeleton germs can never lie inside a tube.
    for (const Germ& g : sk.germs_at(vertex_id)) {
        if (is_singular(g)) continue;
        if (sk.germ_in_gamma(g))
            throw std::invalid_argument("tube at " + vertex_id + " must have every Gamma_S germ singular (" +
                                        g.key() + ")");
        if (v.dist != Rat(0) && g == sk.toward_gamma_germ(vertex_id))
            throw std::invalid_argument("tube at " + vertex_id + " must have the germ toward Gamma_S singular");
        for (long i = 1; i <= r; ++i)
            if (!prof.fn(g, i).is_constant())
                throw std::invalid_argument("tube at " + vertex_id + " is not adapted: radii move on " + g.key());
    }
    Rat dd = laplacian_height(sk, prof, vertex_id, r);
    if (v.dist != Rat(0)) {
        Germ binf = sk.toward_gamma_germ(vertex_id);
        Rat acc = dd - Rat(r) * Rat(sk.tube_chi(vertex_id, tube.singular)) + Rat(h0_dagger(sk, prof, vertex_id));
        for (const Germ& g : tube.singular)
            if (!(g == binf)) acc -= Rat(h0_disk_germ(sk, prof, vertex_id, g));
        return acc;
    }
    long n_v = 0;
    for (const Germ& g : tube.singular) n_v += sk.germ_degree(g);
    long n_s = 0;
    for (const Germ& g : sk.gamma_germs_at(vertex_id)) n_s += sk.germ_degree(g);
    Rat acc = dd + Rat(r) * Rat(n_v - n_s);
    for (const Germ& g : tube.singular)
        if (!sk.germ_in_gamma(g)) acc -= Rat(h0_disk_germ(sk, prof, vertex_id, g));
    return acc;
}

WshReport check_weak_superharmonicity(const CurveSkeleton& sk, const MultiRadiusProfile& prof) {
    WshReport rep;
    PathologicalSets ps = pathological_sets(sk, prof);
    auto record = [&](WshItem item) {
        item.ok = item.kind == "equality" ? item.lhs == item.rhs : item.lhs <= item.rhs;
        rep.checks.push_back(item);
        if (!item.ok) {
            rep.violations.push_back(item);
            rep.pass = false;
        }
    };
    for (const Vertex& v : sk.vertices) {
        VertexClassification cls = classify(sk, prof, v.id);
        for (long i = 1; i <= prof.rank; ++i) {
            Rat dd = laplacian_height(sk, prof, v.id, i);
            bool tr_missing = v.genus > 0 && !v.tr_ok;
            if (v.dist == Rat(0) && !v.boundary) {
                if (tr_missing) {
                    rep.skipped.push_back("condition (TR) not asserted at " + v.id + ", skipping the Gamma_S bound");
                } else {
                    Rat bound = -Rat(sk.chi_x_gamma(v.id)) * Rat(std::min(i, cls.i_sp));
                    record({v.id, i, "gamma-bound", dd, bound, true});
                }
            }
            bool in_C = ps.C[static_cast<std::size_t>(i - 1)].count(v.id) > 0;
            if (!v.in_S && !in_C) record({v.id, i, "off-S-bound", dd, Rat(0), true});
            if (!v.boundary && !tr_missing && is_polygon_vertex(sk, prof, v.id, i) &&
                free_of_solvability_at(sk, prof, v.id, i)) {
                Rat bound = v.dist == Rat(0) ? -Rat(sk.chi_x_gamma(v.id)) * Rat(std::min(i, cls.i_sp)) : Rat(0);
                record({v.id, i, "equality", dd, bound, true});
            }
        }
    }
    return rep;
}

PathologicalSets pathological_sets(const CurveSkeleton& sk, const MultiRadiusProfile& prof) {
    PathologicalSets out;
    out.C.resize(static_cast<std::size_t>(prof.rank));
    out.E.resize(static_cast<std::size_t>(prof.rank));
    for (long i = 1; i <= prof.rank; ++i) {
        std::set<std::string>& C = out.C[static_cast<std::size_t>(i - 1)];
        if (i >= 2) {
            C = out.C[static_cast<std::size_t>(i - 2)];
            for (const Vertex& v : sk.vertices) {
                if (v.dist == Rat(0)) continue;
                if (prof.value_at(sk, v.id, i) != -v.dist) continue;  // R_{S,i} solvable at x
                if (!endpoint_of_controlling(sk, prof, v.id, i)) continue;
                bool in_lower = false;
                for (long j = 1; j < i && !in_lower; ++j) in_lower = vertex_in_controlling(sk, prof, v.id, j);
                if (!in_lower) continue;
                if (!vertex_in_height_controlling(sk, prof, v.id, i)) continue;
                C.insert(v.id);
            }
        }
        for (const Vertex& v : sk.vertices)
            if (laplacian_height(sk, prof, v.id, i) > Rat(0)) out.E[static_cast<std::size_t>(i - 1)].insert(v.id);
    }
    return out;
}

CSuperharmonicityVerdict check_superharmonicity_at_C(const CurveSkeleton& sk, const MultiRadiusProfile& prof,
                                                     const std::string& vertex_id,
                                                     const CSuperharmonicityFlags& flags) {
    const Vertex& v = sk.vertex(vertex_id);
    if (v.dist == Rat(0)) throw std::invalid_argument(vertex_id + " lies on Gamma_S");
    CSuperharmonicityVerdict verdict;
    for (long i = 1; i <= prof.rank; ++i) verdict.laplacians.push_back(laplacian_height(sk, prof, vertex_id, i));
    if (!(flags.h0_dagger_equality && flags.dual_compatible && flags.liouville_free)) {
        verdict.kind = CSuperharmonicityVerdict::Kind::NoClaim;
        verdict.detail = "hypotheses not met, no claim";
        return verdict;
    }
    for (long i = 1; i <= prof.rank; ++i) {
        if (verdict.laplacians[static_cast<std::size_t>(i - 1)] > Rat(0)) {
            verdict.kind = CSuperharmonicityVerdict::Kind::Violation;
            verdict.detail = "dd^c H_{S," + std::to_string(i) + "}(" + vertex_id + ") = " +
                             verdict.laplacians[static_cast<std::size_t>(i - 1)].str() + " > 0";
            return verdict;
        }
    }
    verdict.kind = CSuperharmonicityVerdict::Kind::Pass;
    return verdict;
}

RefinedInstance change_triangulation(const CurveSkeleton& sk, const MultiRadiusProfile& prof,
                                     const TriangulationRefinement& ref) {
    RefinedInstance out;
    out.sk = sk;
    for (const std::string& vid : ref.add_to_S) {
        bool found = false;
        for (Vertex& v : out.sk.vertices)
            if (v.id == vid) {
                v.in_S = true;
                found = true;
            }
        if (!found) throw std::invalid_argument("refinement names unknown vertex " + vid);
    }
    for (const std::string& eid : ref.add_to_gamma) {
        bool found = false;
        for (Edge& e : out.sk.edges)
            if (e.id == eid) {
                e.in_gamma = true;
                found = true;
            }
        if (!found) throw std::invalid_argument("refinement names unknown edge " + eid);
    }
    for (const auto& [mid, depth] : ref.promote_markers) {
        if (!(depth > Rat(0))) throw std::invalid_argument("marker promotion depth must be > 0");
        const DiskMarker m = out.sk.marker(mid);
        out.sk.markers.erase(std::remove_if(out.sk.markers.begin(), out.sk.markers.end(),
                                            [&](const DiskMarker& x) { return x.id == mid; }),
                             out.sk.markers.end());
        Vertex v;
        v.id = mid + ".v";
        v.t = m.deg;
        v.in_S = true;
        v.dist = Rat(0);
        out.sk.vertices.push_back(v);
        Ray r;
        r.id = mid + ".ray";
        r.anchor = v.id;
        r.deg = m.deg;
        out.sk.rays.push_back(r);
    }

    // Recompute exact distances to the enlarged skeleton.
    {
        std::map<std::string, Rat> dist;
        auto seed = [&](const Vertex& v) {
            if (v.in_S) return true;
            for (const Edge& e : out.sk.edges)
                if (e.in_gamma && (e.from == v.id || e.to == v.id)) return true;
            for (const Ray& r : out.sk.rays)
                if (r.anchor == v.id) return true;
            return false;
        };
        using Item = std::pair<Rat, std::string>;
        auto cmp = [](const Item& a, const Item& b) { return b.first < a.first; };
        std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
        for (const Vertex& v : out.sk.vertices)
            if (seed(v)) {
                dist[v.id] = Rat(0);
                pq.push({Rat(0), v.id});
            }
        while (!pq.empty()) {
            auto [d, id] = pq.top();
            pq.pop();
            if (dist.count(id) && dist[id] < d) continue;
            for (const Edge& e : out.sk.edges) {
                std::string other;
                if (e.from == id)
                    other = e.to;
                else if (e.to == id)
                    other = e.from;
                else
                    continue;
                Rat nd = d + e.length;
                if (!dist.count(other) || nd < dist[other]) {
                    dist[other] = nd;
                    pq.push({nd, other});
                }
            }
        }
        for (Vertex& v : out.sk.vertices) {
            auto it = dist.find(v.id);
            if (it == dist.end())
                throw std::invalid_argument("refinement leaves vertex " + v.id + " with no path to the skeleton");
            v.dist = it->second;
        }
    }
    std::vector<Violation> viol = out.sk.validate();
    if (!viol.empty())
        throw std::invalid_argument("refinement produces an invalid skeleton: " + viol.front().where + ": " +
                                    viol.front().what);

    out.prof.rank = prof.rank;
    out.prof.isolated_vertex_values = prof.isolated_vertex_values;
    for (const Edge& e : sk.edges) {
        PLFunction logf = plf_sum(sk.dist_along_edge(e.id), plf_scale(out.sk.dist_along_edge(e.id), Rat(-1)));
        std::vector<PLFunction> fns;
        PLFunction zero = PLFunction::constant(PLDomain::segment(e.length), Rat(0));
        for (const PLFunction& f : prof.fns_for_edge(e.id)) fns.push_back(plf_min(zero, plf_sum(logf, f)));
        out.prof.edge_fns[e.id] = std::move(fns);
    }
    out.prof.ray_fns = prof.ray_fns;  // rays lie in both skeletons: log f = 0
    for (const DiskMarker& m : sk.markers) {
        auto it = ref.promote_markers.find(m.id);
        if (it == ref.promote_markers.end()) {
            out.prof.marker_consts[m.id] = prof.marker_consts.at(m.id);
            continue;
        }
        // Along the new skeleton toward the old germ at infinity the modulus
        // ratio is log f(t) = depth - t, so log R' = min(0, c + depth - t):
        // spectral values march down with slope -1, while an identically
        // solvable index (c = 0) stays clamped at 0 all the way to the end
        // of the germ.
        std::vector<PLFunction> fns;
        for (const Rat& c : prof.marker_consts.at(m.id)) {
            const Rat depth = it->second;
            if (c == Rat(0)) {
                fns.push_back(PLFunction::constant(PLDomain::ray(), Rat(0)));
            } else if (c + depth > Rat(0)) {
                fns.push_back(PLFunction::ray({{Rat(0), Rat(0)}, {c + depth, Rat(0)}}, Rat(-1)));
            } else {
                fns.push_back(PLFunction::ray({{Rat(0), c + depth}}, Rat(-1)));
            }
        }
        out.prof.ray_fns[m.id + ".ray"] = std::move(fns);
    }
    viol = out.prof.validate(out.sk);
    if (!viol.empty())
        throw std::logic_error("refined profile violates invariants: " + viol.front().where + ": " +
                               viol.front().what);
    return out;
}

namespace {

// Closed sub-intervals of the domain where f is non-constant, as (a, b)
// pairs; a ray tail with nonzero slope yields an unbounded interval marked
// by b = nullopt.
struct Support {
    std::vector<std::pair<Rat, std::optional<Rat>>> pieces;
};

Support nonconstancy_support(const PLFunction& f) {
    Support s;
    const auto& bps = f.breakpoints();
    std::optional<Rat> open_start;
    auto close = [&](const Rat& end) {
        if (open_start) {
            s.pieces.push_back({*open_start, end});
            open_start.reset();
        }
    };
    for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
        bool moving = bps[k].v != bps[k + 1].v;
        if (moving && !open_start) open_start = bps[k].t;
        if (!moving) close(bps[k].t);
    }
    if (f.domain().kind == DomainKind::Ray && f.tail_slope() != Rat(0)) {
        if (!open_start) open_start = bps.back().t;
        s.pieces.push_back({*open_start, std::nullopt});
        open_start.reset();
    } else {
        close(bps.back().t);
    }
    return s;
}

bool support_subset(const Support& a, const Support& b) {
    for (const auto& [s, e] : a.pieces) {
        bool covered = false;
        for (const auto& [bs, be] : b.pieces) {
            bool left_ok = bs <= s;
            bool right_ok = !be.has_value() || (e.has_value() && *e <= *be);
            if (left_ok && right_ok) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;
    }
    return true;
}

}  // namespace

std::vector<Violation> integrality_check(const CurveSkeleton& sk, const MultiRadiusProfile& prof) {
    std::vector<Violation> out;
    auto bad = [&](const std::string& where, const std::string& what) { out.push_back({where, what}); };

    auto fns_of = [&](bool is_edge, const std::string& id) -> const std::vector<PLFunction>& {
        return is_edge ? prof.fns_for_edge(id) : prof.fns_for_ray(id);
    };
    auto check_element = [&](bool is_edge, const std::string& id) {
        const auto& fns = fns_of(is_edge, id);
        // Denominator bound on the partial-height slopes.
        for (long i = 1; i <= prof.rank; ++i) {
            PLFunction h = is_edge ? prof.height_plf_edge(id, i) : prof.height_plf_ray(id, i);
            for (const Rat& s : h.piece_slopes())
                if (!s.den_leq(static_cast<unsigned long>(i)))
                    bad(id, "H_" + std::to_string(i) + " slope " + s.str() + " has denominator > " +
                                std::to_string(i));
        }
        // Polygon-vertex heights carry integer slopes: checked at the merged
        // grid of breakpoints (values are affine in between).
        std::vector<Rat> grid;
        for (const PLFunction& f : fns)
            for (const auto& p : f.breakpoints()) grid.push_back(p.t);
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
        for (const Rat& t : grid) {
            for (long i = 1; i <= prof.rank; ++i) {
                bool vertex_of_polygon = i == prof.rank ||
                                         fns[static_cast<std::size_t>(i - 1)].eval(t) <
                                             fns[static_cast<std::size_t>(i)].eval(t);
                if (!vertex_of_polygon) continue;
                for (Dir dir : {Dir::Forward, Dir::Backward}) {
                    if (dir == Dir::Backward && !(t > Rat(0))) continue;
                    if (dir == Dir::Forward && is_edge && !(t < sk.edge(id).length)) continue;
                    Rat s(0);
                    for (long j = 1; j <= i; ++j) s += fns[static_cast<std::size_t>(j - 1)].slope(t, dir);
                    if (!s.is_integer())
                        bad(id, "H_" + std::to_string(i) + " slope " + s.str() + " at the polygon vertex t=" +
                                    t.str() + " is not an integer");
                }
            }
        }
    };
    for (const Edge& e : sk.edges) check_element(true, e.id);
    for (const Ray& r : sk.rays) check_element(false, r.id);
    return out;
}

SplitResult split_profile(const CurveSkeleton& sk, const MultiRadiusProfile& prof, long i) {
    if (i < 1 || i > prof.rank) throw std::invalid_argument("split index out of range");
    SplitResult res;
    if (i > 1) {
        auto separated_on = [&](const PLFunction& lo, const PLFunction& hi, const std::string& where) {
            std::vector<Rat> grid;
            for (const auto& p : lo.breakpoints()) grid.push_back(p.t);
            for (const auto& p : hi.breakpoints()) grid.push_back(p.t);
            std::sort(grid.begin(), grid.end());
            grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
            for (const Rat& t : grid)
                if (!(lo.eval(t) < hi.eval(t))) {
                    res.witness = where + " at t=" + t.str();
                    return false;
                }
            if (lo.domain().kind == DomainKind::Ray && lo.tail_slope() > hi.tail_slope()) {
                Rat t_last = grid.back();
                Rat tc = t_last + (hi.eval(t_last) - lo.eval(t_last)) / (lo.tail_slope() - hi.tail_slope());
                res.witness = where + " at t=" + tc.str();
                return false;
            }
            return true;
        };
        for (const Edge& e : sk.edges) {
            const auto& fns = prof.fns_for_edge(e.id);
            if (!separated_on(fns[static_cast<std::size_t>(i - 2)], fns[static_cast<std::size_t>(i - 1)],
                              "edge " + e.id))
                return res;
        }
        for (const Ray& r : sk.rays) {
            const auto& fns = prof.fns_for_ray(r.id);
            if (!separated_on(fns[static_cast<std::size_t>(i - 2)], fns[static_cast<std::size_t>(i - 1)],
                              "ray " + r.id))
                return res;
        }
        for (const DiskMarker& m : sk.markers) {
            const auto& cs = prof.marker_consts.at(m.id);
            if (!(cs[static_cast<std::size_t>(i - 2)] < cs[static_cast<std::size_t>(i - 1)])) {
                res.witness = "marker " + m.id;
                return res;
            }
        }
        for (const auto& [vid, vals] : prof.isolated_vertex_values) {
            if (!(vals[static_cast<std::size_t>(i - 2)] < vals[static_cast<std::size_t>(i - 1)])) {
                res.witness = "vertex " + vid;
                return res;
            }
        }
    }

    res.ok = true;
    auto slice = [&](long lo, long hi) {  // 1-based inclusive range, hi < lo gives a rank-0 carrier
        MultiRadiusProfile p;
        p.rank = hi - lo + 1;
        for (const auto& [id, fns] : prof.edge_fns)
            p.edge_fns[id] = std::vector<PLFunction>(fns.begin() + (lo - 1), fns.begin() + hi);
        for (const auto& [id, fns] : prof.ray_fns)
            p.ray_fns[id] = std::vector<PLFunction>(fns.begin() + (lo - 1), fns.begin() + hi);
        for (const auto& [id, cs] : prof.marker_consts)
            p.marker_consts[id] = std::vector<Rat>(cs.begin() + (lo - 1), cs.begin() + hi);
        for (const auto& [id, vs] : prof.isolated_vertex_values)
            p.isolated_vertex_values[id] = std::vector<Rat>(vs.begin() + (lo - 1), vs.begin() + hi);
        return p;
    };
    res.geq = slice(i, prof.rank);
    res.lt = slice(1, i - 1);

    res.direct_summand = true;
    auto check_inclusion = [&](const std::vector<PLFunction>& fns) {
        Support hi = nonconstancy_support(fns[static_cast<std::size_t>(i - 1)]);
        for (long j = 1; j < i; ++j)
            if (!support_subset(nonconstancy_support(fns[static_cast<std::size_t>(j - 1)]), hi)) return false;
        return true;
    };
    for (const Edge& e : sk.edges) {
        if (e.in_gamma) continue;  // Gamma_S lies in every controlling graph
        if (!check_inclusion(prof.fns_for_edge(e.id))) res.direct_summand = false;
    }
    for (const Ray& r : sk.rays) {
        (void)r;  // rays lie inside Gamma_S
    }
    return res;
}

}  // namespace convrad
