#include <convrad/generate.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>

namespace convrad {

namespace {

long pick(std::mt19937_64& rng, long n) { return static_cast<long>(rng() % static_cast<unsigned long>(n)); }

bool chance(std::mt19937_64& rng, long percent) { return pick(rng, 100) < percent; }

}  // namespace

GeneratedInstance random_instance(std::mt19937_64& rng, const GenOptions& opt) {
    GeneratedInstance out;
    const long primes[] = {2, 3, 5, 7};
    out.field.p = chance(rng, 25) ? 0 : primes[pick(rng, 4)];
    const long r = 1 + pick(rng, opt.max_rank);
    out.prof.rank = r;
    CurveSkeleton& sk = out.sk;

    // Skeleton tree with one absorbing ray at the root.
    const long n_gamma = 1 + pick(rng, opt.max_gamma_vertices);
    const Rat lengths[] = {Rat(1), Rat(1, 2), Rat(3, 2), Rat(2)};
    for (long i = 0; i < n_gamma; ++i) {
        Vertex v;
        v.id = "g" + std::to_string(i);
        v.dist = Rat(0);
        sk.vertices.push_back(v);
        if (i > 0) {
            Edge e;
            e.id = "e" + std::to_string(i);
            e.from = "g" + std::to_string(pick(rng, i));
            e.to = v.id;
            e.length = lengths[pick(rng, 4)];
            e.in_gamma = true;
            sk.edges.push_back(e);
        }
    }
    {
        Ray root_ray;
        root_ray.id = "rr";
        root_ray.anchor = "g0";
        sk.rays.push_back(root_ray);
    }
    for (long i = 1; i < n_gamma; ++i)
        if (chance(rng, 20)) {
            Ray ry;
            ry.id = "r" + std::to_string(i);
            ry.anchor = "g" + std::to_string(i);
            sk.rays.push_back(ry);
        }

    // Skeleton leaves and bifurcation points must lie in S; pass-through
    // vertices may stay outside it.
    for (Vertex& v : sk.vertices) {
        std::size_t n = sk.gamma_germs_at(v.id).size();
        v.in_S = n != 2 || !chance(rng, 30);
    }
    {
        bool has_s = false;
        for (const Vertex& v : sk.vertices) has_s = has_s || v.in_S;
        if (!has_s) sk.vertices.front().in_S = true;  // a pure line can opt out everywhere
    }
    for (Vertex& v : sk.vertices) {
        if (!v.in_S) continue;
        if (opt.allow_boundary && chance(rng, 15)) v.boundary = true;
        if (opt.allow_genus && chance(rng, 20)) v.genus = 1 + pick(rng, 2);
    }

    std::vector<std::string> s_ids;
    for (const Vertex& v : sk.vertices)
        if (v.in_S) s_ids.push_back(v.id);

    // Branch structures hanging into the disks off S points. Chains carry
    // constant radii; mirror branches let one adjacent pair of radii move
    // toward each other with slope one until they merge (the shape forced by
    // super-harmonicity at branch points); the fork injects a positive
    // Laplacian when asked to.
    struct MirrorSlot {
        std::string attach;
        long low;  // 1-based lower index of the moving pair
        std::string edge_id;
        std::string leaf_id;
    };
    std::vector<MirrorSlot> mirrors;
    std::vector<std::string> fork_edges;
    long branch_seq = 0;
    if (opt.allow_branches) {
        for (const std::string& attach : s_ids) {
            if (!chance(rng, 40)) continue;
            std::string tag = "b" + std::to_string(branch_seq++);
            if (opt.allow_mirror_branches && r >= 2 && chance(rng, 50)) {
                mirrors.push_back({attach, 1 + pick(rng, r - 1), tag + "e", tag + "v"});
            } else {
                std::string prev = attach;
                long len = 1 + pick(rng, 2);
                Rat depth(0);
                for (long k = 0; k < len; ++k) {
                    Vertex w;
                    w.id = tag + "v" + std::to_string(k);
                    depth += Rat(1);
                    w.dist = depth;
                    sk.vertices.push_back(w);
                    Edge e;
                    e.id = tag + "e" + std::to_string(k);
                    e.from = prev;
                    e.to = w.id;
                    e.length = Rat(1);
                    sk.edges.push_back(e);
                    prev = w.id;
                }
            }
        }
    }
    if (opt.inject_wsh_violation) {
        std::string tag = "bad";
        std::string attach = s_ids[static_cast<std::size_t>(pick(rng, static_cast<long>(s_ids.size())))];
        Vertex w;
        w.id = tag + ".w";
        w.dist = Rat(1);
        sk.vertices.push_back(w);
        out.injected_at = w.id;
        Edge stem{tag + ".stem", attach, w.id, Rat(1), 1, false};
        sk.edges.push_back(stem);
        for (const char* leaf : {"a", "b"}) {
            Vertex u;
            u.id = tag + "." + leaf;
            u.dist = Rat(3);
            sk.vertices.push_back(u);
            Edge e{tag + ".f" + std::string(leaf), w.id, u.id, Rat(2), 1, false};
            sk.edges.push_back(e);
            fork_edges.push_back(e.id);
        }
    }

    if (opt.allow_markers)
        for (long k = 0; k < pick(rng, 3); ++k) {
            DiskMarker m;
            m.id = "d" + std::to_string(k);
            sk.markers.push_back(m);
        }

    // Per-index integer slopes: a leaf-up flow on the skeleton tree meeting
    // dd^c H_i(x) = -i chi(x,S) at S points and 0 at pass-through points
    // (the super-harmonicity equalities of an everywhere-spectral profile).
    // Branch germs contribute known amounts, the root ray absorbs the rest.
    std::map<std::string, std::vector<Rat>> edge_slope;  // oriented from -> to
    std::map<std::string, std::vector<Rat>> ray_slope;
    for (const Ray& ry : sk.rays) {
        std::vector<Rat> s;
        for (long i = 0; i < r; ++i) s.push_back(ry.id == "rr" ? Rat(0) : Rat(-pick(rng, 2)));
        ray_slope[ry.id] = s;
    }
    for (const Edge& e : sk.edges) edge_slope[e.id] = std::vector<Rat>(static_cast<std::size_t>(r), Rat(0));

    {
        std::map<std::string, std::string> parent_edge;
        std::vector<std::string> order;
        std::vector<std::string> stack{"g0"};
        std::map<std::string, bool> seen{{"g0", true}};
        while (!stack.empty()) {
            std::string cur = stack.back();
            stack.pop_back();
            order.push_back(cur);
            for (const Edge& e : sk.edges) {
                if (!e.in_gamma) continue;
                std::string other;
                if (e.from == cur)
                    other = e.to;
                else if (e.to == cur)
                    other = e.from;
                else
                    continue;
                if (seen.count(other)) continue;
                seen[other] = true;
                parent_edge[other] = e.id;
                stack.push_back(other);
            }
        }
        for (long i = 0; i < r; ++i) {
            for (auto it = order.rbegin(); it != order.rend(); ++it) {
                const std::string& vid = *it;
                const Vertex& v = sk.vertex(vid);
                Rat tgt = v.in_S ? -Rat(sk.chi_x_gamma(vid)) : Rat(0);
                Rat acc(0);
                for (const Germ& g : sk.germs_at(vid)) {
                    if (g.kind == Germ::Kind::Ray) {
                        acc += Rat(sk.germ_degree(g)) * ray_slope[g.id][static_cast<std::size_t>(i)];
                        continue;
                    }
                    if (parent_edge.count(vid) && parent_edge[vid] == g.id) continue;
                    Rat s = edge_slope[g.id][static_cast<std::size_t>(i)];
                    acc += Rat(sk.germ_degree(g)) * (g.at_from ? s : -s);
                }
                for (const MirrorSlot& slot : mirrors)
                    if (slot.attach == vid) {
                        if (i + 1 == slot.low) acc += Rat(1);
                        if (i + 1 == slot.low + 1) acc -= Rat(1);
                    }
                if (parent_edge.count(vid)) {
                    bool vid_is_to = sk.edge(parent_edge[vid]).to == vid;
                    Rat s = acc - tgt;  // outward slope along the parent germ is -s
                    edge_slope[parent_edge[vid]][static_cast<std::size_t>(i)] = vid_is_to ? s : -s;
                } else {
                    ray_slope["rr"][static_cast<std::size_t>(i)] = tgt - acc;
                }
            }
        }
    }

    // Value drifts by propagation from the root, then offsets per index
    // keeping everything spectral and strictly ordered at vertices.
    std::map<std::string, std::vector<Rat>> drift;
    {
        std::vector<std::string> stack{"g0"};
        drift["g0"] = std::vector<Rat>(static_cast<std::size_t>(r), Rat(0));
        while (!stack.empty()) {
            std::string cur = stack.back();
            stack.pop_back();
            for (const Edge& e : sk.edges) {
                std::string other;
                bool fwd;
                if (e.from == cur) {
                    other = e.to;
                    fwd = true;
                } else if (e.to == cur) {
                    other = e.from;
                    fwd = false;
                } else {
                    continue;
                }
                if (drift.count(other)) continue;
                std::vector<Rat> d = drift[cur];
                for (long i = 0; i < r; ++i) {
                    Rat s = edge_slope[e.id][static_cast<std::size_t>(i)];
                    d[static_cast<std::size_t>(i)] += (fwd ? s : -s) * e.length;
                }
                drift[other] = d;
                stack.push_back(other);
            }
        }
    }
    std::vector<Rat> offset(static_cast<std::size_t>(r), Rat(0));
    for (long i = r - 1; i >= 0; --i) {
        bool first = true;
        Rat best(0);
        for (const Vertex& v : sk.vertices) {
            Rat cap = (i == r - 1)
                          ? -v.dist
                          : drift[v.id][static_cast<std::size_t>(i + 1)] + offset[static_cast<std::size_t>(i + 1)];
            Rat cand = cap - drift[v.id][static_cast<std::size_t>(i)] - Rat(1);
            if (first || cand < best) {
                best = cand;
                first = false;
            }
        }
        offset[static_cast<std::size_t>(i)] = best;
    }
    auto value_at = [&](const std::string& vid, long i) {
        return offset[static_cast<std::size_t>(i)] + drift.at(vid)[static_cast<std::size_t>(i)];
    };

    // Materialize the PL functions. Fork edges rise by one for the first
    // radius and then flatten; everything else is affine with the flow
    // slopes.
    for (const Edge& e : sk.edges) {
        bool is_fork = std::find(fork_edges.begin(), fork_edges.end(), e.id) != fork_edges.end();
        std::vector<PLFunction> fns;
        for (long i = 0; i < r; ++i) {
            Rat v0 = value_at(e.from, i);
            if (is_fork && i == 0)
                fns.push_back(PLFunction::segment(e.length, {{Rat(0), v0}, {Rat(1), v0 + Rat(1)}, {e.length, v0 + Rat(1)}}));
            else
                fns.push_back(PLFunction::affine(PLDomain::segment(e.length), v0,
                                                 edge_slope[e.id][static_cast<std::size_t>(i)]));
        }
        out.prof.edge_fns[e.id] = std::move(fns);
    }
    for (const Ray& ry : sk.rays) {
        std::vector<PLFunction> fns;
        for (long i = 0; i < r; ++i)
            fns.push_back(PLFunction::affine(PLDomain::ray(), value_at(ry.anchor, i),
                                             ray_slope[ry.id][static_cast<std::size_t>(i)]));
        out.prof.ray_fns[ry.id] = std::move(fns);
    }
    for (const MirrorSlot& slot : mirrors) {
        long lo = slot.low - 1;  // 0-based
        Rat v_lo = value_at(slot.attach, lo);
        Rat v_hi = value_at(slot.attach, lo + 1);
        Rat w_star = (v_hi - v_lo) / Rat(2);
        Rat mid = (v_hi + v_lo) / Rat(2);
        Rat len = w_star + Rat(1);
        Vertex leaf;
        leaf.id = slot.leaf_id;
        leaf.dist = len;
        sk.vertices.push_back(leaf);
        Edge e{slot.edge_id, slot.attach, leaf.id, len, 1, false};
        sk.edges.push_back(e);
        std::vector<PLFunction> fns;
        for (long i = 0; i < r; ++i) {
            Rat v = value_at(slot.attach, i);
            if (i == lo || i == lo + 1)
                fns.push_back(PLFunction::segment(len, {{Rat(0), v}, {w_star, mid}, {len, mid}}));
            else
                fns.push_back(PLFunction::constant(PLDomain::segment(len), v));
        }
        out.prof.edge_fns[slot.edge_id] = std::move(fns);
    }
    for (const DiskMarker& m : sk.markers) {
        std::vector<Rat> cs;
        Rat base = -Rat(2 + pick(rng, 3)) - Rat(r);
        for (long i = 0; i < r; ++i) cs.push_back(base + Rat(i));
        out.prof.marker_consts[m.id] = cs;
    }

    out.flags.liouville_all = true;
    return out;
}

TriangulationRefinement random_refinement(std::mt19937_64& rng, const CurveSkeleton& sk,
                                          const MultiRadiusProfile& prof) {
    TriangulationRefinement ref;
    for (const Vertex& v : sk.vertices)
        if (!v.in_S && v.dist == Rat(0) && chance(rng, 60)) ref.add_to_S.insert(v.id);
    std::vector<const Edge*> candidates;
    for (const Edge& e : sk.edges) {
        if (e.in_gamma) continue;
        const Vertex& a = sk.vertex(e.from);
        const Vertex& b = sk.vertex(e.to);
        if (!(a.dist == Rat(0) || b.dist == Rat(0))) continue;
        bool clean = true;
        for (const PLFunction& f : prof.fns_for_edge(e.id))
            if (!f.break_params().empty()) clean = false;
        if (clean) candidates.push_back(&e);
    }
    if (!candidates.empty() && chance(rng, 70)) {
        const Edge* e = candidates[static_cast<std::size_t>(pick(rng, static_cast<long>(candidates.size())))];
        ref.add_to_gamma.insert(e->id);
        ref.add_to_S.insert(e->from);
        ref.add_to_S.insert(e->to);
    }
    if (!sk.markers.empty() && chance(rng, 50)) {
        const DiskMarker& m = sk.markers[static_cast<std::size_t>(pick(rng, static_cast<long>(sk.markers.size())))];
        const Rat depths[] = {Rat(1, 2), Rat(1), Rat(2)};
        ref.promote_markers[m.id] = depths[pick(rng, 3)];
    }
    return ref;
}

InvarianceReport invariance_check(const CurveSkeleton& sk0, const MultiRadiusProfile& prof0,
                                  const EquationFlags& flags, std::mt19937_64& rng, long rounds) {
    InvarianceReport rep;
    CurveSkeleton sk = sk0;
    MultiRadiusProfile prof = prof0;
    auto irr0 = global_irregularity(sk0, prof0, flags);
    std::map<std::string, std::vector<Rat>> delta0;
    std::map<std::string, long> isp0;
    for (const Vertex& v : sk0.vertices) {
        VertexClassification cls = classify(sk0, prof0, v.id);
        isp0[v.id] = cls.i_sp;
        std::vector<Rat> ds;
        for (long i = 1; i <= cls.i_sp; ++i) ds.push_back(intrinsic_laplacian(sk0, prof0, v.id, i));
        delta0[v.id] = ds;
    }
    for (long round = 0; round < rounds; ++round) {
        TriangulationRefinement ref = random_refinement(rng, sk, prof);
        RefinedInstance next = change_triangulation(sk, prof, ref);
        sk = std::move(next.sk);
        prof = std::move(next.prof);
        ++rep.rounds_run;
        if (irr0.ok) {
            auto irr = global_irregularity(sk, prof, flags);
            if (!irr.ok) {
                rep.pass = false;
                rep.failures.push_back("round " + std::to_string(round) + ": Irr_X became undefined: " +
                                       irr.refusal);
                continue;
            }
            if (irr.irr != irr0.irr) {
                rep.pass = false;
                rep.failures.push_back("round " + std::to_string(round) + ": Irr_X changed from " +
                                       std::to_string(irr0.irr) + " to " + std::to_string(irr.irr));
            }
        }
        for (const Vertex& v : sk0.vertices) {
            // spectral non-solvability is intrinsic, so i_sp is unchanged
            for (long i = 1; i <= isp0[v.id]; ++i) {
                Rat d = intrinsic_laplacian(sk, prof, v.id, i);
                if (d != delta0[v.id][static_cast<std::size_t>(i - 1)]) {
                    rep.pass = false;
                    rep.failures.push_back("round " + std::to_string(round) + ": Delta_" + std::to_string(i) +
                                           "(" + v.id + ") changed from " +
                                           delta0[v.id][static_cast<std::size_t>(i - 1)].str() + " to " + d.str());
                }
            }
        }
    }
    return rep;
}

std::pair<SubDomain, SubDomain> random_cover(std::mt19937_64& rng, const CurveSkeleton& sk) {
    SubDomain u, v;
    for (const Vertex& x : sk.vertices) {
        long roll = pick(rng, 3);
        if (roll == 0)
            u.vertices.insert(x.id);
        else if (roll == 1)
            v.vertices.insert(x.id);
        else {
            u.vertices.insert(x.id);
            v.vertices.insert(x.id);
        }
    }
    auto close = [&](SubDomain& d) {
        for (const std::string& vid : d.vertices)
            for (const Germ& g : sk.germs_at(vid)) {
                if (g.kind == Germ::Kind::Edge)
                    d.edges.insert(g.id);
                else
                    d.rays.insert(g.id);
            }
    };
    close(u);
    close(v);
    for (const DiskMarker& m : sk.markers) {
        long roll = pick(rng, 3);
        if (roll == 0)
            u.markers.insert(m.id);
        else if (roll == 1)
            v.markers.insert(m.id);
        else {
            u.markers.insert(m.id);
            v.markers.insert(m.id);
        }
    }
    return {u, v};
}

}  // namespace convrad
