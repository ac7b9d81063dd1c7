#include <convrad/index.hpp>

#include <algorithm>
#include <stdexcept>

namespace convrad {

long irr_germ(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id, const Germ& g) {
    Rat irr = -Rat(sk.germ_degree(g)) * localized_boundary_slope(sk, prof, vertex_id, g);
    if (!irr.is_integer()) throw std::logic_error("irregularity is not an integer on germ " + g.key());
    return irr.to_long();
}

long irr_at_infinity(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& ray_id) {
    const Ray& r = sk.ray(ray_id);
    // The germ at infinity is oriented toward the interior; rays lie inside
    // Gamma_S so localization leaves the slopes unchanged.
    PLFunction h = prof.height_plf_ray(ray_id, prof.rank);
    Rat irr = Rat(r.deg) * h.tail_slope();
    if (!irr.is_integer()) throw std::logic_error("irregularity is not an integer on ray " + ray_id);
    return irr.to_long();
}

long irr_marker(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& marker_id) {
    const DiskMarker& m = sk.marker(marker_id);
    const auto& cs = prof.marker_consts.at(marker_id);
    long h0 = 0;
    for (const Rat& c : cs)
        if (c == Rat(0)) ++h0;
    // Constant radii localize to the germ annulus with a +1 shift per
    // spectral index in the inward (deeper) direction.
    return -m.deg * (prof.rank - h0);
}

ChiAtVertex chi_xSF(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& vertex_id,
                    bool total) {
    ChiAtVertex out;
    const long r = prof.rank;
    std::vector<Germ> germs;
    for (const Germ& g : sk.germs_at(vertex_id)) {
        bool take = total ? germ_in_controlling(sk, prof, g, 0) : sk.germ_in_gamma(g);
        if (take) germs.push_back(g);
    }
    out.chi = r * sk.chi_x(vertex_id, germs);
    for (const Germ& g : germs) out.chi -= irr_germ(sk, prof, vertex_id, g);

    // Decomposition against the spectral cutoff (stated for Gamma = Gamma_S).
    VertexClassification cls = classify(sk, prof, vertex_id);
    out.A = (r - cls.i_sp) * sk.chi_x_gamma(vertex_id);
    Rat b(0), c(0);
    for (const Germ& g : sk.germs_at(vertex_id)) {
        if (!sk.germ_in_gamma(g) && germ_in_controlling(sk, prof, g, 0)) {
            if (cls.i_sp > 0) b -= Rat(sk.germ_degree(g)) * prof.germ_height_slope(sk, g, cls.i_sp);
        } else if (sk.germ_in_gamma(g)) {
            for (long j = cls.i_sp + 1; j <= r; ++j) c += Rat(sk.germ_degree(g)) * prof.germ_slope(sk, g, j);
        }
    }
    if (!b.is_integer() || !c.is_integer()) throw std::logic_error("chi decomposition terms not integral");
    out.B = b.to_long();
    out.C = c.to_long();
    out.b_nonpositive = out.B <= 0;
    out.c_nonpositive = out.C <= 0;
    if (!total) out.decomposition_valid = out.b_nonpositive && out.c_nonpositive && out.A + out.B + out.C == out.chi;
    return out;
}

namespace {

// Irregularity of the germ at infinity created by cutting an edge at one
// end. The germ is oriented into the surviving side; localization shifts the
// spectral slopes by the slope of dist(. , Gamma_S) along that direction.
long irr_cut_edge(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const Edge& e, bool missing_from) {
    PLFunction dist = sk.dist_along_edge(e.id);
    Rat cut_t = missing_from ? Rat(0) : e.length;
    Rat sigma_cut = -dist.eval(cut_t);
    Dir inward = missing_from ? Dir::Forward : Dir::Backward;
    Rat ddist = dist.slope(cut_t, inward);
    Rat acc(0);
    for (long i = 1; i <= prof.rank; ++i) {
        const PLFunction& f = prof.fns_for_edge(e.id)[static_cast<std::size_t>(i - 1)];
        Rat s_in = f.slope(cut_t, inward);
        Rat v_cut = f.eval(cut_t);
        bool solution;
        if (ddist > Rat(0))  // inward goes deeper: solutions live on the sub-disk
            solution = s_in == Rat(0) && v_cut >= sigma_cut;
        else if (ddist < Rat(0))  // inward climbs toward Gamma_S: overconvergent solutions
            solution = v_cut > sigma_cut;
        else
            solution = true;  // skeleton germ: no shift
        acc += s_in + (solution ? Rat(0) : ddist);
    }
    Rat irr = -Rat(e.deg) * acc;
    if (!irr.is_integer()) throw std::logic_error("cut-germ irregularity is not an integer on edge " + e.id);
    return irr.to_long();
}

}  // namespace

IrrResult global_irregularity(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const EquationFlags& flags,
                              const SubDomain& dom) {
    (void)flags;
    IrrResult res;
    for (const std::string& vid : dom.vertices) {
        const Vertex& v = sk.vertex(vid);
        if (!v.boundary) continue;
        VertexClassification cls = classify(sk, prof, vid);
        if (cls.i_sp != prof.rank) {
            res.refusal = "radius not spectral non-solvable at boundary vertex " + vid;
            return res;
        }
    }
    for (const std::string& rid : dom.rays)
        if (sk.ray(rid).infinite_break_tail) {
            res.refusal = "total height not log-affine on the tail of ray " + rid + " (declared infinite breaks)";
            return res;
        }

    Rat acc(0);
    for (const std::string& vid : dom.vertices) {
        const Vertex& v = sk.vertex(vid);
        if (!v.boundary) continue;
        acc += intrinsic_laplacian(sk, prof, vid, prof.rank);
    }
    for (const std::string& rid : dom.rays) {
        acc -= Rat(irr_at_infinity(sk, prof, rid));
        const Ray& r = sk.ray(rid);
        if (!dom.vertices.count(r.anchor)) {
            // the cut end is a second germ at infinity, oriented outward
            // along the ray; the ray lies inside Gamma_S so no shift applies
            PLFunction h = prof.height_plf_ray(rid, prof.rank);
            Rat irr = -Rat(r.deg) * h.start_slope();
            if (!irr.is_integer()) throw std::logic_error("cut-ray irregularity is not an integer");
            acc -= irr;
        }
    }
    for (const std::string& mid : dom.markers) acc -= Rat(irr_marker(sk, prof, mid));
    for (const std::string& eid : dom.edges) {
        const Edge& e = sk.edge(eid);
        if (!dom.vertices.count(e.from)) acc -= Rat(irr_cut_edge(sk, prof, e, true));
        if (!dom.vertices.count(e.to)) acc -= Rat(irr_cut_edge(sk, prof, e, false));
    }
    if (!acc.is_integer()) throw std::logic_error("global irregularity is not an integer");
    res.ok = true;
    res.irr = acc.to_long();
    return res;
}

IrrResult global_irregularity(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const EquationFlags& flags) {
    return global_irregularity(sk, prof, flags, sk.whole());
}

namespace {

// Adaptedness of S to the profile: radii log-affine along every
// pseudo-annulus skeleton, i.e. no radius break interior to a Gamma_S
// segment (neither at a stored non-S vertex nor inside an edge or ray).
std::optional<std::string> adaptedness_failure(const CurveSkeleton& sk, const MultiRadiusProfile& prof) {
    for (const Edge& e : sk.edges) {
        if (!e.in_gamma) continue;
        for (long i = 1; i <= prof.rank; ++i)
            if (!prof.fns_for_edge(e.id)[static_cast<std::size_t>(i - 1)].break_params().empty())
                return "radius " + std::to_string(i) + " breaks inside skeleton edge " + e.id;
    }
    for (const Ray& r : sk.rays) {
        for (long i = 1; i <= prof.rank; ++i) {
            const PLFunction& f = prof.fns_for_ray(r.id)[static_cast<std::size_t>(i - 1)];
            if (!f.break_params().empty() || f.breakpoints().size() > 1)
                return "radius " + std::to_string(i) + " breaks inside ray " + r.id;
        }
        if (r.infinite_break_tail) return "ray " + r.id + " declares an infinite break tail";
    }
    for (const Vertex& v : sk.vertices) {
        if (v.in_S || v.dist != Rat(0)) continue;
        auto gg = sk.gamma_germs_at(v.id);
        for (long i = 1; i <= prof.rank; ++i) {
            Rat s(0);
            for (const Germ& g : gg) s += prof.germ_slope(sk, g, i);
            if (s != Rat(0))
                return "radius " + std::to_string(i) + " breaks at the non-S skeleton vertex " + v.id;
        }
    }
    return std::nullopt;
}

std::optional<std::string> nl_failure(const CurveSkeleton& sk, const MultiRadiusProfile& prof,
                                      const EquationFlags& flags) {
    for (const Edge& e : sk.edges) {
        if (e.in_gamma) {
            if (!flags.nl_ok(e.id)) return "edge " + e.id;
            continue;
        }
        // branch germs at S points inside the controlling graph
        for (bool at_from : {true, false}) {
            const std::string& base = at_from ? e.from : e.to;
            if (!sk.vertex(base).in_S) continue;
            Germ g{Germ::Kind::Edge, e.id, at_from};
            if (germ_in_controlling(sk, prof, g, 0) && !flags.nl_ok(e.id)) return "edge " + e.id;
        }
    }
    for (const Ray& r : sk.rays)
        if (!flags.nl_ok(r.id)) return "ray " + r.id;
    for (const DiskMarker& m : sk.markers)
        if (!flags.nl_ok(m.id)) return "disk marker " + m.id;
    return std::nullopt;
}

bool all_degrees_one(const CurveSkeleton& sk) {
    for (const Vertex& v : sk.vertices)
        if (v.t != 1) return false;
    for (const Edge& e : sk.edges)
        if (e.deg != 1) return false;
    for (const Ray& r : sk.rays)
        if (r.deg != 1) return false;
    for (const DiskMarker& m : sk.markers)
        if (m.deg != 1) return false;
    return true;
}

// Indices identically zero on every stored element of each component, summed
// over components (the dimension of the trivial part, decidable from stored
// data when all degrees are 1).
long count_h0(const CurveSkeleton& sk, const MultiRadiusProfile& prof) {
    long h0 = 0;
    for (const auto& comp : sk.components()) {
        for (long i = 1; i <= prof.rank; ++i) {
            bool zero = true;
            for (const Edge& e : sk.edges) {
                if (!comp.count(e.from)) continue;
                const PLFunction& f = prof.fns_for_edge(e.id)[static_cast<std::size_t>(i - 1)];
                if (!(f.is_constant() && f.start_value() == Rat(0))) zero = false;
            }
            for (const Ray& r : sk.rays) {
                if (!comp.count(r.anchor)) continue;
                const PLFunction& f = prof.fns_for_ray(r.id)[static_cast<std::size_t>(i - 1)];
                if (!(f.is_constant() && f.start_value() == Rat(0))) zero = false;
            }
            for (const std::string& vid : comp) {
                if (!sk.germs_at(vid).empty()) continue;
                if (prof.value_at(sk, vid, i) != Rat(0)) zero = false;
            }
            if (zero) ++h0;
        }
    }
    for (const DiskMarker& m : sk.markers)
        for (const Rat& c : prof.marker_consts.at(m.id))
            if (c == Rat(0)) ++h0;
    return h0;
}

}  // namespace

IndexReport global_index(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const EquationFlags& flags) {
    IndexReport rep;
    auto refuse = [&](const std::string& why) {
        rep.verdict = {IndexVerdict::Kind::Undetermined, 0, why};
        return rep;
    };
    {
        auto viol = sk.validate();
        if (!viol.empty()) return refuse("invalid skeleton: " + viol.front().where + ": " + viol.front().what);
        viol = prof.validate(sk);
        if (!viol.empty()) return refuse("invalid profile: " + viol.front().where + ": " + viol.front().what);
    }
    if (auto why = adaptedness_failure(sk, prof)) return refuse("S not adapted: " + *why);
    for (const Vertex& v : sk.vertices) {
        if (v.genus > 0 && !v.boundary && !v.tr_ok)
            return refuse("condition (TR) not asserted at the positive-genus point " + v.id);
    }
    if (auto missing = nl_failure(sk, prof, flags))
        return refuse("Liouville-freeness not asserted on " + *missing);
    IrrResult irr = global_irregularity(sk, prof, flags);
    if (!irr.ok) return refuse(irr.refusal);

    const long r = prof.rank;
    long chi_sum = 0;
    for (const Vertex& v : sk.vertices) {
        if (!v.in_S) continue;
        if (v.boundary) {
            rep.delta_per_boundary[v.id] = intrinsic_laplacian(sk, prof, v.id, r).to_long();
            for (const Germ& g : sk.germs_at(v.id)) {
                if (sk.germ_in_gamma(g) || !germ_in_controlling(sk, prof, g, 0)) continue;
                long term = r * sk.germ_degree(g) + irr_germ(sk, prof, v.id, g);
                rep.irr_per_germ[g.key()] = irr_germ(sk, prof, v.id, g);
                chi_sum += term;
            }
            continue;
        }
        ChiAtVertex cx = chi_xSF(sk, prof, v.id, false);
        rep.chi_per_vertex[v.id] = cx.chi;
        for (const Germ& g : sk.gamma_germs_at(v.id)) rep.irr_per_germ[g.key()] = irr_germ(sk, prof, v.id, g);
        chi_sum += cx.chi;
    }
    for (const DiskMarker& m : sk.markers) {
        DiskIndexResult d = disk_index(sk, prof, flags, m.id);
        rep.irr_per_germ[m.id] = irr_marker(sk, prof, m.id);
        chi_sum += d.chi;
    }
    for (const Ray& ry : sk.rays) rep.irr_per_germ[ry.id] = irr_at_infinity(sk, prof, ry.id);

    rep.chi_sum = chi_sum;
    rep.irr_X = irr.irr;
    rep.chi_gos = r * sk.chi_c() - irr.irr;
    rep.formulas_agree = rep.chi_sum == rep.chi_gos;
    if (all_degrees_one(sk)) {
        rep.h0 = count_h0(sk, prof);
        if (rep.formulas_agree) rep.h1 = *rep.h0 - rep.chi_sum;
    }
    rep.verdict = {IndexVerdict::Kind::Finite, rep.chi_sum, ""};
    return rep;
}

DiskIndexResult disk_index(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const EquationFlags& flags,
                           const std::string& vertex_id, const Germ& g) {
    if (sk.germ_in_gamma(g)) throw std::invalid_argument("disk_index: germ " + g.key() + " lies inside Gamma_S");
    if (sk.vertex(vertex_id).dist != Rat(0) && g == sk.toward_gamma_germ(vertex_id))
        throw std::invalid_argument("disk_index: germ " + g.key() + " points toward Gamma_S, not into a disk");
    if (!flags.nl_ok(g.id))
        throw std::invalid_argument("disk_index: Liouville-freeness not asserted on " + g.id);
    const long d = sk.germ_degree(g);
    DiskIndexResult out;
    out.chi = prof.rank * d + irr_germ(sk, prof, vertex_id, g);
    Rat slope = prof.germ_height_slope(sk, g, prof.rank);
    Rat h1 = Rat(d) * slope;
    if (!h1.is_integer()) throw std::logic_error("disk h1 is not an integer");
    out.h1 = h1.to_long();
    out.h0 = out.chi + out.h1;
    return out;
}

DiskIndexResult disk_index(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const EquationFlags& flags,
                           const std::string& marker_id) {
    if (!flags.nl_ok(marker_id))
        throw std::invalid_argument("disk_index: Liouville-freeness not asserted on " + marker_id);
    const DiskMarker& m = sk.marker(marker_id);
    DiskIndexResult out;
    out.chi = prof.rank * m.deg + irr_marker(sk, prof, marker_id);
    out.h1 = 0;  // constant radii: the total height has zero slope
    out.h0 = out.chi;
    return out;
}

PseudodiskResult pseudodisk_index(const CurveSkeleton& sk, const MultiRadiusProfile& prof,
                                  const EquationFlags& flags, const std::string& ray_id) {
    PseudodiskResult out;
    const Ray& r = sk.ray(ray_id);
    if (!flags.nl_ok(ray_id)) {
        out.verdict = {IndexVerdict::Kind::Undetermined, 0, "Liouville-freeness not asserted on " + ray_id};
        return out;
    }
    // The component must be a pseudo-disk: exactly this germ at infinity and
    // no boundary.
    std::set<std::string> comp;
    for (const auto& c : sk.components())
        if (c.count(r.anchor)) comp = c;
    for (const Ray& other : sk.rays)
        if (comp.count(other.anchor) && other.id != ray_id) {
            out.verdict = {IndexVerdict::Kind::Undetermined, 0, "component has a second germ at infinity"};
            return out;
        }
    for (const std::string& vid : comp)
        if (sk.vertex(vid).boundary) {
            out.verdict = {IndexVerdict::Kind::Undetermined, 0, "component has boundary"};
            return out;
        }
    if (r.infinite_break_tail) {
        out.verdict = {IndexVerdict::Kind::Infinite, 0,
                       "total height has infinitely many breaks toward infinity"};
        return out;
    }
    long chi = prof.rank * r.deg + irr_at_infinity(sk, prof, ray_id);
    long h0 = 0;
    for (long i = 1; i <= prof.rank; ++i) {
        bool zero = true;
        for (const Edge& e : sk.edges) {
            if (!comp.count(e.from)) continue;
            const PLFunction& f = prof.fns_for_edge(e.id)[static_cast<std::size_t>(i - 1)];
            if (!(f.is_constant() && f.start_value() == Rat(0))) zero = false;
        }
        const PLFunction& f = prof.fns_for_ray(ray_id)[static_cast<std::size_t>(i - 1)];
        if (!(f.is_constant() && f.start_value() == Rat(0))) zero = false;
        if (zero) ++h0;
    }
    out.h0 = h0 * r.deg;
    out.h1 = out.h0 - chi;
    out.verdict = {IndexVerdict::Kind::Finite, chi, ""};
    return out;
}

LimitResult limit_decide(const CurveSkeleton& sk0, const MultiRadiusProfile& prof0, const EquationFlags& flags,
                         const GrowthRule& growth, long max_steps, long window) {
    LimitResult out;
    if (growth.steps.empty() || window < 1 || max_steps < 1)
        throw std::invalid_argument("limit_decide: empty growth rule or bad window");
    CurveSkeleton sk = sk0;
    MultiRadiusProfile prof = prof0;
    EquationFlags fl = flags;

    IndexReport rep = global_index(sk, prof, fl);
    if (rep.verdict.kind != IndexVerdict::Kind::Finite) {
        out.verdict = {IndexVerdict::Kind::Undetermined, 0, "base instance: " + rep.verdict.reason};
        return out;
    }
    out.chi_trace.push_back(rep.chi_sum);

    const long period = static_cast<long>(growth.steps.size());
    std::vector<long> increments;
    for (long n = 1; n <= max_steps; ++n) {
        const GrowthStep& st = growth.steps[static_cast<std::size_t>((n - 1) % period)];
        Ray* ry = nullptr;
        for (Ray& cand : sk.rays)
            if (cand.id == growth.ray_id) ry = &cand;
        if (!ry) throw std::invalid_argument("limit_decide: unknown growth ray " + growth.ray_id);
        auto& fns = prof.ray_fns.at(growth.ray_id);
        for (const PLFunction& f : fns)
            if (f.breakpoints().size() != 1) {
                out.verdict = {IndexVerdict::Kind::Undetermined, 0, "growth ray radii are not affine"};
                return out;
            }
        if (static_cast<long>(st.slope_delta.size()) != prof.rank)
            throw std::invalid_argument("limit_decide: growth step has wrong arity");

        std::string v_id = growth.ray_id + ".g" + std::to_string(n);
        std::string e_id = growth.ray_id + ".e" + std::to_string(n);
        std::string anchor = ry->anchor;
        Vertex v;
        v.id = v_id;
        v.in_S = true;
        v.dist = Rat(0);
        v.t = sk.vertex(anchor).t;
        sk.vertices.push_back(v);
        Edge e;
        e.id = e_id;
        e.from = anchor;
        e.to = v_id;
        e.length = st.length;
        e.deg = ry->deg;
        e.in_gamma = true;
        sk.edges.push_back(e);
        ry->anchor = v_id;

        std::vector<PLFunction> efns, rfns;
        for (long i = 1; i <= prof.rank; ++i) {
            const PLFunction& f = fns[static_cast<std::size_t>(i - 1)];
            Rat v0 = f.start_value();
            Rat s = f.tail_slope();
            efns.push_back(PLFunction::affine(PLDomain::segment(st.length), v0, s));
            rfns.push_back(PLFunction::affine(PLDomain::ray(), v0 + s * st.length,
                                              s + st.slope_delta[static_cast<std::size_t>(i - 1)]));
        }
        prof.edge_fns[e_id] = std::move(efns);
        prof.ray_fns[growth.ray_id] = std::move(rfns);
        if (fl.nl_ok(growth.ray_id)) fl.liouville_free_on.insert(e_id);

        rep = global_index(sk, prof, fl);
        if (rep.verdict.kind != IndexVerdict::Kind::Finite) {
            out.verdict = {IndexVerdict::Kind::Undetermined, 0,
                           "step " + std::to_string(n) + ": " + rep.verdict.reason};
            out.steps_taken = n;
            return out;
        }
        long chi_n = rep.chi_sum;
        long inc = chi_n - out.chi_trace.back();
        out.chi_trace.push_back(chi_n);
        increments.push_back(inc);
        out.steps_taken = n;

        // Telescoping: the increment is the chi of the newly added S point.
        auto it = rep.chi_per_vertex.find(v_id);
        if (it == rep.chi_per_vertex.end() || it->second != inc) out.telescoping_ok = false;

        // Finite: the increments vanish across the window.
        if (n >= window) {
            bool flat = true;
            for (long k = 0; k < window; ++k)
                if (increments[static_cast<std::size_t>(n - 1 - k)] != 0) flat = false;
            if (flat) {
                out.verdict = {IndexVerdict::Kind::Finite, chi_n, ""};
                break;
            }
        }
        // Infinite: the declared periodic pattern accumulates a nonzero
        // amount per period.
        if (n >= 2 * period) {
            bool periodic = true;
            long per_period = 0;
            for (long k = 0; k < period; ++k) {
                long a = increments[static_cast<std::size_t>(n - 1 - k)];
                long b = increments[static_cast<std::size_t>(n - 1 - k - period)];
                if (a != b) periodic = false;
                per_period += a;
            }
            if (periodic && per_period != 0) {
                out.verdict = {IndexVerdict::Kind::Infinite, 0,
                               "chi drifts by " + std::to_string(per_period) + " per period"};
                break;
            }
        }
    }
    if (out.verdict.kind == IndexVerdict::Kind::Undetermined && out.verdict.reason.empty())
        out.verdict.reason = "no decision within " + std::to_string(max_steps) + " steps";

    // The almost-everywhere criteria: chi(x,S,F) = 0 at all but finitely
    // many S points (no nonzero contributions keep arriving) and the
    // boundary-disk slopes stable (they are never touched by growth).
    bool tail_zero = true;
    for (long k = 0; k < std::min<long>(window, static_cast<long>(increments.size())); ++k)
        if (increments[increments.size() - 1 - static_cast<std::size_t>(k)] != 0) tail_zero = false;
    out.criteria_ok = tail_zero;
    out.criteria_agree = (out.verdict.kind == IndexVerdict::Kind::Finite) == out.criteria_ok ||
                         out.verdict.kind == IndexVerdict::Kind::Undetermined;
    return out;
}

IndexReport overconvergent_index(const CurveSkeleton& sk, const MultiRadiusProfile& prof,
                                 const EquationFlags& flags) {
    IndexReport rep;
    auto refuse = [&](const std::string& why) {
        rep.verdict = {IndexVerdict::Kind::Undetermined, 0, why};
        return rep;
    };
    for (const Vertex& v : sk.vertices)
        if (v.boundary && !flags.overconvergent.count(v.id))
            return refuse("missing overconvergent data at boundary vertex " + v.id);
    if (auto why = adaptedness_failure(sk, prof)) return refuse("S not adapted: " + *why);
    for (const Vertex& v : sk.vertices)
        if (v.genus > 0 && !v.tr_ok)
            return refuse("condition (TR) not asserted at the positive-genus point " + v.id);
    if (auto missing = nl_failure(sk, prof, flags))
        return refuse("Liouville-freeness not asserted on " + *missing);

    const long r = prof.rank;
    long chi_sum = 0;
    long outside_irr_total = 0;
    for (const Vertex& v : sk.vertices) {
        if (!v.in_S) continue;
        ChiAtVertex cx = chi_xSF(sk, prof, v.id, false);
        long chi_here = cx.chi;
        if (v.boundary) {
            for (const OutsideGerm& og : flags.overconvergent.at(v.id)) {
                chi_here -= r * og.deg + og.irr;
                outside_irr_total += og.irr;
            }
        }
        rep.chi_per_vertex[v.id] = chi_here;
        chi_sum += chi_here;
    }
    for (const DiskMarker& m : sk.markers) chi_sum += disk_index(sk, prof, flags, m.id).chi;
    rep.chi_sum = chi_sum;

    // GOS form on the elementary neighborhood: boundary points become
    // interior and the outside germs become rays.
    CurveSkeleton dag = sk;
    for (Vertex& v : dag.vertices) {
        if (!v.boundary) continue;
        auto it = flags.overconvergent.find(v.id);
        long j = 0;
        for (const OutsideGerm& og : it->second) {
            Ray nr;
            nr.id = v.id + ".oc" + std::to_string(j++);
            nr.anchor = v.id;
            nr.deg = og.deg;
            dag.rays.push_back(nr);
        }
        v.boundary = false;
    }
    long irr_inf = 0;
    for (const Ray& ry : sk.rays) irr_inf += irr_at_infinity(sk, prof, ry.id);
    for (const DiskMarker& m : sk.markers) irr_inf += irr_marker(sk, prof, m.id);
    long irr_dag = outside_irr_total - irr_inf;
    rep.irr_X = irr_dag;
    rep.chi_gos = r * dag.chi_c() - irr_dag;
    rep.formulas_agree = rep.chi_sum == rep.chi_gos;
    rep.verdict = {IndexVerdict::Kind::Finite, rep.chi_sum, ""};
    return rep;
}

MeromorphicResult meromorphic_index(const CurveSkeleton& sk, const MultiRadiusProfile& prof,
                                    const EquationFlags& flags, const std::vector<Puncture>& punctures) {
    MeromorphicResult out;
    std::set<std::string> puncture_rays;
    long deg_total = 0, irr_z_total = 0;
    for (const Puncture& z : punctures) {
        const Ray& ry = sk.ray(z.ray_id);
        puncture_rays.insert(z.ray_id);
        if (ry.deg != z.residue_deg) {
            out.reason = "puncture " + z.ray_id + ": germ degree " + std::to_string(ry.deg) +
                         " does not match the residue degree " + std::to_string(z.residue_deg);
            return out;
        }
        long stored = irr_at_infinity(sk, prof, z.ray_id);
        if (stored != z.irr) {
            out.reason = "puncture " + z.ray_id + ": supplied Irr_z = " + std::to_string(z.irr) +
                         " but the stored tail gives " + std::to_string(stored);
            return out;
        }
        if (!flags.nl_ok(z.ray_id)) {
            out.reason = "Liouville-freeness not asserted on puncture " + z.ray_id;
            return out;
        }
        deg_total += z.residue_deg;
        irr_z_total += z.irr;
    }
    for (const Vertex& v : sk.vertices) {
        if (v.genus > 0 && !v.boundary && !v.tr_ok) {
            out.reason = "condition (TR) not asserted at " + v.id;
            return out;
        }
        if (v.boundary) {
            VertexClassification cls = classify(sk, prof, v.id);
            if (cls.i_sp != prof.rank) {
                out.reason = "radius not spectral non-solvable at boundary vertex " + v.id;
                return out;
            }
        }
    }
    if (auto missing = nl_failure(sk, prof, flags)) {
        out.reason = "Liouville-freeness not asserted on " + *missing;
        return out;
    }

    const long r = prof.rank;
    long chi_c_Y = sk.chi_c() + deg_total;  // filling the punctures
    long chi = r * (chi_c_Y - deg_total);
    for (const Vertex& v : sk.vertices) {
        if (!v.boundary) continue;
        // chi_tot at a spectral boundary point is the intrinsic Laplacian;
        // cross-checked against the controlling-graph formula.
        long delta = intrinsic_laplacian(sk, prof, v.id, r).to_long();
        long via_graph = chi_xSF(sk, prof, v.id, true).chi;
        if (delta != via_graph) {
            out.reason = "chi_tot mismatch at " + v.id;
            return out;
        }
        chi -= delta;
    }
    for (const Ray& ry : sk.rays)
        if (!puncture_rays.count(ry.id)) chi += irr_at_infinity(sk, prof, ry.id);
    for (const DiskMarker& m : sk.markers) chi += irr_marker(sk, prof, m.id);
    chi += irr_z_total;
    out.ok = true;
    out.chi = chi;
    return out;
}

FinitelyControlledResult finitely_controlled(const CurveSkeleton& sk, const MultiRadiusProfile& prof) {
    FinitelyControlledResult out;
    for (const Vertex& v : sk.vertices) {
        if (v.boundary || v.genus > 0) out.bad_vertices.insert(v.id);
        if (v.dist == Rat(0)) {
            long weighted = 0;
            for (const Germ& g : sk.gamma_germs_at(v.id)) weighted += sk.germ_degree(g);
            if (weighted > 2 * v.t) out.bad_vertices.insert(v.id);  // bifurcation of Gamma_S
            if (!v.in_S && v.dist == Rat(0)) {
                for (long i = 1; i <= prof.rank; ++i) {
                    Rat s(0);
                    for (const Germ& g : sk.gamma_germs_at(v.id)) s += prof.germ_slope(sk, g, i);
                    if (s != Rat(0)) {
                        out.break_points.push_back(v.id);
                        break;
                    }
                }
            }
        }
    }
    for (const Edge& e : sk.edges) {
        if (!e.in_gamma) continue;
        for (long i = 1; i <= prof.rank; ++i)
            for (const Rat& t : prof.fns_for_edge(e.id)[static_cast<std::size_t>(i - 1)].break_params())
                out.break_points.push_back("edge " + e.id + " at t=" + t.str());
    }
    for (const Ray& r : sk.rays) {
        for (long i = 1; i <= prof.rank; ++i) {
            const PLFunction& f = prof.fns_for_ray(r.id)[static_cast<std::size_t>(i - 1)];
            for (const Rat& t : f.break_params()) out.break_points.push_back("ray " + r.id + " at t=" + t.str());
        }
        if (r.infinite_break_tail) out.tail_markers.push_back(r.id);
    }
    out.finite = out.tail_markers.empty();
    return out;
}

VanishingVerdict vanishing_verdict(const CurveSkeleton& sk, const MultiRadiusProfile& prof) {
    // Situation 2 for disk markers: constant spectral non-solvable radii.
    for (const DiskMarker& m : sk.markers)
        for (const Rat& c : prof.marker_consts.at(m.id))
            if (!(c < Rat(0))) return VanishingVerdict::NoClaim;

    // Situation 1 on every vertex component: Gamma_S(F) = Gamma_S and
    // spectral non-solvability along it.
    for (const Edge& e : sk.edges) {
        for (long i = 1; i <= prof.rank; ++i) {
            const PLFunction& f = prof.fns_for_edge(e.id)[static_cast<std::size_t>(i - 1)];
            if (!e.in_gamma && !f.is_constant()) return VanishingVerdict::NoClaim;  // Gamma_S(F) exceeds Gamma_S
            if (e.in_gamma)
                for (const auto& p : f.breakpoints())
                    if (!(p.v < Rat(0))) return VanishingVerdict::NoClaim;
        }
    }
    for (const Ray& r : sk.rays) {
        for (long i = 1; i <= prof.rank; ++i) {
            const PLFunction& f = prof.fns_for_ray(r.id)[static_cast<std::size_t>(i - 1)];
            for (const auto& p : f.breakpoints())
                if (!(p.v < Rat(0))) return VanishingVerdict::NoClaim;
            if (f.tail_slope() > Rat(0)) return VanishingVerdict::NoClaim;  // climbs toward solvability
        }
    }
    for (const Vertex& v : sk.vertices) {
        if (v.dist != Rat(0)) continue;
        for (long i = 1; i <= prof.rank; ++i)
            if (!(prof.value_at(sk, v.id, i) < Rat(0))) return VanishingVerdict::NoClaim;
    }
    return VanishingVerdict::AllCohomologyZero;
}

IrrCoverResult irr_cover_check(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const EquationFlags& flags,
                               const SubDomain& u, const SubDomain& v) {
    IrrCoverResult out;
    // Reuse the cover validation from the Euler-characteristic machinery.
    sk.chi_c_cover(u, v);
    SubDomain inter = subdomain_intersect(sk, u, v);
    IrrResult rx = global_irregularity(sk, prof, flags);
    IrrResult ru = global_irregularity(sk, prof, flags, u);
    IrrResult rv = global_irregularity(sk, prof, flags, v);
    IrrResult ri = global_irregularity(sk, prof, flags, inter);
    for (const IrrResult* r : {&rx, &ru, &rv, &ri})
        if (!r->ok) {
            out.reason = r->refusal;
            return out;
        }
    out.ok = true;
    out.irr_X = rx.irr;
    out.irr_U = ru.irr;
    out.irr_V = rv.irr;
    out.irr_UV = ri.irr;
    out.equal = out.irr_X == out.irr_U + out.irr_V - out.irr_UV;
    return out;
}

}  // namespace convrad
