#include <convrad/skeleton.hpp>

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>

namespace convrad {

namespace {

template <typename T>
const T* find_by_id(const std::vector<T>& v, const std::string& id) {
    for (const auto& x : v)
        if (x.id == id) return &x;
    return nullptr;
}

}  // namespace

const Vertex& CurveSkeleton::vertex(const std::string& id) const {
    const Vertex* v = find_by_id(vertices, id);
    if (!v) throw std::invalid_argument("unknown vertex: " + id);
    return *v;
}

const Edge& CurveSkeleton::edge(const std::string& id) const {
    const Edge* e = find_by_id(edges, id);
    if (!e) throw std::invalid_argument("unknown edge: " + id);
    return *e;
}

const Ray& CurveSkeleton::ray(const std::string& id) const {
    const Ray* r = find_by_id(rays, id);
    if (!r) throw std::invalid_argument("unknown ray: " + id);
    return *r;
}

const DiskMarker& CurveSkeleton::marker(const std::string& id) const {
    const DiskMarker* m = find_by_id(markers, id);
    if (!m) throw std::invalid_argument("unknown disk marker: " + id);
    return *m;
}

bool CurveSkeleton::has_vertex(const std::string& id) const { return find_by_id(vertices, id) != nullptr; }

std::size_t CurveSkeleton::vertex_index(const std::string& id) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].id == id) return i;
    throw std::invalid_argument("unknown vertex: " + id);
}

std::vector<Germ> CurveSkeleton::germs_at(const std::string& vertex_id) const {
    std::vector<Germ> out;
    for (const Edge& e : edges) {
        if (e.from == vertex_id) out.push_back({Germ::Kind::Edge, e.id, true});
        if (e.to == vertex_id) out.push_back({Germ::Kind::Edge, e.id, false});
    }
    for (const Ray& r : rays)
        if (r.anchor == vertex_id) out.push_back({Germ::Kind::Ray, r.id, true});
    return out;
}

std::vector<Germ> CurveSkeleton::gamma_germs_at(const std::string& vertex_id) const {
    std::vector<Germ> out;
    for (const Germ& g : germs_at(vertex_id))
        if (germ_in_gamma(g)) out.push_back(g);
    return out;
}

bool CurveSkeleton::germ_in_gamma(const Germ& g) const {
    if (g.kind == Germ::Kind::Ray) return true;
    return edge(g.id).in_gamma;
}

long CurveSkeleton::germ_degree(const Germ& g) const {
    return g.kind == Germ::Kind::Ray ? ray(g.id).deg : edge(g.id).deg;
}

const std::string& CurveSkeleton::germ_far_vertex(const Germ& g) const {
    if (g.kind == Germ::Kind::Ray) throw std::invalid_argument("ray germ has no far vertex");
    const Edge& e = edge(g.id);
    return g.at_from ? e.to : e.from;
}

const std::string& CurveSkeleton::germ_base_vertex(const Germ& g) const {
    if (g.kind == Germ::Kind::Ray) return ray(g.id).anchor;
    const Edge& e = edge(g.id);
    return g.at_from ? e.from : e.to;
}

Germ CurveSkeleton::toward_gamma_germ(const std::string& vertex_id) const {
    const Vertex& v = vertex(vertex_id);
    if (v.dist == Rat(0)) throw std::invalid_argument("vertex " + vertex_id + " lies on Gamma_S");
    for (const Germ& g : germs_at(vertex_id)) {
        if (g.kind != Germ::Kind::Edge) continue;
        const Edge& e = edge(g.id);
        if (vertex(germ_far_vertex(g)).dist == v.dist - e.length) return g;
    }
    throw std::invalid_argument("vertex " + vertex_id + " has no germ toward Gamma_S");
}

PLFunction CurveSkeleton::dist_along_edge(const std::string& edge_id) const {
    const Edge& e = edge(edge_id);
    const Rat d0 = vertex(e.from).dist;
    const Rat d1 = vertex(e.to).dist;
    return PLFunction::segment(e.length, {{Rat(0), d0}, {e.length, d1}});
}

long CurveSkeleton::chi_x(const std::string& vertex_id, const std::vector<Germ>& germs) const {
    const Vertex& v = vertex(vertex_id);
    long n = 0;
    for (const Germ& g : germs) n += germ_degree(g);
    return 2 * v.t - 2 * v.genus - n;
}

long CurveSkeleton::chi_x_gamma(const std::string& vertex_id) const {
    return chi_x(vertex_id, gamma_germs_at(vertex_id));
}

SubDomain CurveSkeleton::whole() const {
    SubDomain d;
    for (const auto& v : vertices) d.vertices.insert(v.id);
    for (const auto& e : edges) d.edges.insert(e.id);
    for (const auto& r : rays) d.rays.insert(r.id);
    for (const auto& m : markers) d.markers.insert(m.id);
    return d;
}

long CurveSkeleton::chi_c() const { return chi_c(whole()); }

long CurveSkeleton::chi_c(const SubDomain& dom) const {
    // Closure under germs at interior vertices.
    for (const std::string& vid : dom.vertices) {
        for (const Germ& g : germs_at(vid)) {
            bool in = g.kind == Germ::Kind::Edge ? dom.edges.count(g.id) > 0 : dom.rays.count(g.id) > 0;
            if (!in)
                throw std::invalid_argument("sub-domain not closed under germs at vertex " + vid + " (missing " +
                                            g.key() + ")");
        }
    }
    for (const std::string& eid : dom.edges) edge(eid);
    for (const std::string& rid : dom.rays) ray(rid);

    // Union-find over included elements. Keys: "v:", "e:", "r:" prefixes.
    std::map<std::string, std::string> parent;
    std::function<std::string(const std::string&)> find = [&](const std::string& a) -> std::string {
        auto it = parent.find(a);
        if (it == parent.end()) {
            parent[a] = a;
            return a;
        }
        if (it->second == a) return a;
        std::string r = find(it->second);
        parent[a] = r;
        return r;
    };
    auto unite = [&](const std::string& a, const std::string& b) { parent[find(a)] = find(b); };

    for (const std::string& vid : dom.vertices) find("v:" + vid);
    for (const std::string& eid : dom.edges) {
        const Edge& e = edge(eid);
        find("e:" + eid);
        if (dom.vertices.count(e.from)) unite("e:" + eid, "v:" + e.from);
        if (dom.vertices.count(e.to)) unite("e:" + eid, "v:" + e.to);
    }
    for (const std::string& rid : dom.rays) {
        const Ray& r = ray(rid);
        find("r:" + rid);
        if (dom.vertices.count(r.anchor)) unite("r:" + rid, "v:" + r.anchor);
    }

    struct Acc {
        long v_weight = 0;   // sum of t(x)
        long e_weight = 0;   // sum of deg over full edges
        long genus = 0;      // sum of g(x)
        long n = 0;          // degree-weighted germs at infinity
        bool has_vertex = false;
        long lone_weight = 0;  // chi_top of a vertex-less component
    };
    std::map<std::string, Acc> comps;

    for (const std::string& vid : dom.vertices) {
        Acc& a = comps[find("v:" + vid)];
        const Vertex& v = vertex(vid);
        a.v_weight += v.t;
        a.genus += v.genus;
        a.has_vertex = true;
    }
    for (const std::string& eid : dom.edges) {
        Acc& a = comps[find("e:" + eid)];
        const Edge& e = edge(eid);
        int missing = (dom.vertices.count(e.from) ? 0 : 1) + (dom.vertices.count(e.to) ? 0 : 1);
        if (missing == 0) a.e_weight += e.deg;
        a.n += missing * e.deg;
        if (missing == 2) a.lone_weight += e.deg;
    }
    for (const std::string& rid : dom.rays) {
        Acc& a = comps[find("r:" + rid)];
        const Ray& r = ray(rid);
        a.n += r.deg;  // the germ at infinity itself
        if (!dom.vertices.count(r.anchor)) {
            a.n += r.deg;  // the cut end becomes another germ at infinity
            a.lone_weight += r.deg;
        }
    }

    long chi = 0;
    for (const auto& [root, a] : comps) {
        long chi_top = a.has_vertex ? (a.v_weight - a.e_weight) : a.lone_weight;
        chi += 2 * chi_top - 2 * a.genus - a.n;
    }
    for (const std::string& mid : dom.markers) chi += marker(mid).deg;
    return chi;
}

std::set<std::string> CurveSkeleton::core_points() const {
    std::set<std::string> core;
    for (const Vertex& v : vertices) {
        if (!v.in_S) continue;
        if (v.genus > 0 || v.boundary) {
            core.insert(v.id);
            continue;
        }
        if (gamma_germs_at(v.id).size() != 2) core.insert(v.id);
    }
    return core;
}

SumChiResult CurveSkeleton::sum_chi_check(const std::set<std::string>& s_prime) const {
    for (const std::string& id : s_prime)
        if (!vertex(id).in_S) throw std::invalid_argument("sum_chi_check: " + id + " is not in S");
    for (const std::string& id : core_points())
        if (!s_prime.count(id))
            throw std::invalid_argument("sum_chi_check: S' misses the core point " + id);
    SumChiResult res;
    for (const std::string& id : s_prime) res.lhs += chi_x_gamma(id);
    // S meets every component except the bare disk markers, which carry no
    // triangulation points: the identity is about the components S meets.
    SubDomain met = whole();
    met.markers.clear();
    res.rhs = chi_c(met);
    res.equal = res.lhs == res.rhs;
    return res;
}

SubDomain subdomain_intersect(const CurveSkeleton& sk, const SubDomain& a, const SubDomain& b) {
    (void)sk;
    SubDomain out;
    for (const auto& x : a.vertices)
        if (b.vertices.count(x)) out.vertices.insert(x);
    for (const auto& x : a.edges)
        if (b.edges.count(x)) out.edges.insert(x);
    for (const auto& x : a.rays)
        if (b.rays.count(x)) out.rays.insert(x);
    for (const auto& x : a.markers)
        if (b.markers.count(x)) out.markers.insert(x);
    return out;
}

CoverChiResult CurveSkeleton::chi_c_cover(const SubDomain& u, const SubDomain& v) const {
    SubDomain all = whole();
    auto covered = [&](auto get) {
        auto a = get(u);
        auto b = get(v);
        auto w = get(all);
        for (const auto& x : w)
            if (!a.count(x) && !b.count(x)) return false;
        return true;
    };
    if (!covered([](const SubDomain& d) { return d.vertices; }) ||
        !covered([](const SubDomain& d) { return d.edges; }) ||
        !covered([](const SubDomain& d) { return d.rays; }) ||
        !covered([](const SubDomain& d) { return d.markers; }))
        throw std::invalid_argument("chi_c_cover: U and V do not cover X");
    SubDomain inter = subdomain_intersect(*this, u, v);
    CoverChiResult res;
    res.lhs = chi_c(u) + chi_c(v) - chi_c(inter);
    res.rhs = chi_c();
    res.equal = res.lhs == res.rhs;
    return res;
}

long CurveSkeleton::tube_chi(const std::string& vertex_id, const std::vector<Germ>& singular) const {
    return chi_x(vertex_id, singular);
}

std::vector<std::set<std::string>> CurveSkeleton::components() const {
    std::map<std::string, int> comp;
    int n = 0;
    for (const Vertex& v : vertices)
        if (!comp.count(v.id)) {
            std::queue<std::string> q;
            q.push(v.id);
            comp[v.id] = n;
            while (!q.empty()) {
                std::string cur = q.front();
                q.pop();
                for (const Edge& e : edges) {
                    std::string other;
                    if (e.from == cur)
                        other = e.to;
                    else if (e.to == cur)
                        other = e.from;
                    else
                        continue;
                    if (!comp.count(other)) {
                        comp[other] = n;
                        q.push(other);
                    }
                }
            }
            ++n;
        }
    std::vector<std::set<std::string>> out(n);
    for (const auto& [id, c] : comp) out[c].insert(id);
    return out;
}

std::vector<Violation> CurveSkeleton::validate() const {
    std::vector<Violation> out;
    auto bad = [&](const std::string& where, const std::string& what) { out.push_back({where, what}); };

    std::set<std::string> vids, eids, rids, mids;
    for (const Vertex& v : vertices) {
        if (!vids.insert(v.id).second) bad(v.id, "duplicate vertex id");
        if (v.genus < 0) bad(v.id, "negative genus");
        if (v.t < 1) bad(v.id, "degree t must be >= 1");
        if (v.dist < Rat(0)) bad(v.id, "negative dist_to_GammaS");
        if (v.in_S && v.dist != Rat(0)) bad(v.id, "in_S vertex with nonzero dist_to_GammaS");
        if (v.genus > 0 && !v.in_S) bad(v.id, "positive-genus vertex must belong to S");
        if (v.boundary && !v.in_S) bad(v.id, "boundary vertex must belong to S");
    }
    for (const Edge& e : edges) {
        if (!eids.insert(e.id).second) bad(e.id, "duplicate edge id");
        if (!vids.count(e.from) || !vids.count(e.to)) {
            bad(e.id, "edge endpoint does not exist");
            continue;
        }
        if (e.from == e.to) bad(e.id, "edge is a self-loop");
        if (!(e.length > Rat(0))) bad(e.id, "edge length must be > 0");
        if (e.deg < 1) bad(e.id, "edge degree must be >= 1");
        const Vertex& a = vertex(e.from);
        const Vertex& b = vertex(e.to);
        if (e.deg % a.t != 0 || e.deg % b.t != 0) bad(e.id, "germ degree not divisible by endpoint degree t");
        if (e.in_gamma && (a.dist != Rat(0) || b.dist != Rat(0)))
            bad(e.id, "Gamma_S edge with an endpoint at positive dist_to_GammaS");
    }
    for (const Ray& r : rays) {
        if (!rids.insert(r.id).second) bad(r.id, "duplicate ray id");
        if (!vids.count(r.anchor)) {
            bad(r.id, "ray anchor does not exist");
            continue;
        }
        if (r.deg < 1) bad(r.id, "ray degree must be >= 1");
        const Vertex& a = vertex(r.anchor);
        if (r.deg % a.t != 0) bad(r.id, "germ degree not divisible by anchor degree t");
        if (a.dist != Rat(0)) bad(r.id, "ray anchored off Gamma_S");
    }
    for (const DiskMarker& m : markers) {
        if (!mids.insert(m.id).second) bad(m.id, "duplicate disk marker id");
        if (m.deg < 1) bad(m.id, "marker degree must be >= 1");
    }
    if (!out.empty()) return out;  // structural errors block the metric checks

    // Exact distances to Gamma_S (multi-source Dijkstra from the skeleton
    // set) must match the stored dist fields.
    std::map<std::string, Rat> dist;
    auto gamma_seed = [&](const Vertex& v) {
        if (v.in_S) return true;
        for (const Edge& e : edges)
            if (e.in_gamma && (e.from == v.id || e.to == v.id)) return true;
        for (const Ray& r : rays)
            if (r.anchor == v.id) return true;
        return false;
    };
    using Item = std::pair<Rat, std::string>;
    auto cmp = [](const Item& a, const Item& b) { return b.first < a.first; };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
    for (const Vertex& v : vertices)
        if (gamma_seed(v)) {
            dist[v.id] = Rat(0);
            pq.push({Rat(0), v.id});
        }
    while (!pq.empty()) {
        auto [d, id] = pq.top();
        pq.pop();
        if (dist.count(id) && dist[id] < d) continue;
        for (const Edge& e : edges) {
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
    for (const Vertex& v : vertices) {
        if (!dist.count(v.id)) {
            bad(v.id, "no path to Gamma_S in this component (component without S)");
            continue;
        }
        if (dist[v.id] != v.dist)
            bad(v.id, "dist_to_GammaS is " + v.dist.str() + " but the exact graph distance is " + dist[v.id].str());
    }
    if (!out.empty()) return out;

    // Branch edges must descend the distance by exactly their length, and
    // every off-skeleton vertex has exactly one germ toward Gamma_S.
    for (const Edge& e : edges) {
        if (e.in_gamma) continue;
        Rat da = vertex(e.from).dist, db = vertex(e.to).dist;
        if (abs(da - db) != e.length)
            bad(e.id, "branch edge endpoints are not at distance `length` apart along the tree");
    }
    for (const Vertex& v : vertices) {
        if (v.dist == Rat(0)) continue;
        int down = 0;
        for (const Germ& g : germs_at(v.id))
            if (g.kind == Germ::Kind::Edge && vertex(germ_far_vertex(g)).dist == v.dist - edge(g.id).length) ++down;
        if (down != 1) bad(v.id, "off-skeleton vertex must have exactly one germ toward Gamma_S");
    }

    // Gamma_S decomposition: with S removed, the skeleton splits into open
    // segments and rays, so every non-S skeleton vertex carries exactly two
    // skeleton germs; the skeleton is connected within each component, and
    // every component meets S.
    for (const Vertex& v : vertices) {
        if (v.dist != Rat(0) || v.in_S) continue;
        std::size_t n = gamma_germs_at(v.id).size();
        if (n != 2)
            bad(v.id, "skeleton vertex outside S with " + std::to_string(n) +
                          " skeleton germs (pseudo-annulus decomposition fails)");
    }
    for (const auto& comp : components()) {
        bool has_s = false;
        for (const auto& id : comp)
            if (vertex(id).in_S) has_s = true;
        if (!has_s) bad(*comp.begin(), "component without an S vertex (only disk markers may omit S)");
        // connectivity of the skeleton part within the component
        std::set<std::string> gamma_vs;
        for (const auto& id : comp)
            if (vertex(id).dist == Rat(0)) gamma_vs.insert(id);
        if (gamma_vs.empty()) continue;
        std::set<std::string> seen;
        std::queue<std::string> q;
        q.push(*gamma_vs.begin());
        seen.insert(*gamma_vs.begin());
        while (!q.empty()) {
            std::string cur = q.front();
            q.pop();
            for (const Edge& e : edges) {
                if (!e.in_gamma) continue;
                std::string other;
                if (e.from == cur)
                    other = e.to;
                else if (e.to == cur)
                    other = e.from;
                else
                    continue;
                if (seen.insert(other).second) q.push(other);
            }
        }
        for (const auto& id : gamma_vs)
            if (!seen.count(id)) {
                bad(id, "Gamma_S is disconnected within its component");
                break;
            }
    }
    return out;
}

}  // namespace convrad
