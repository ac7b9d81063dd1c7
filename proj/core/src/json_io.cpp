#include <convrad/json_io.hpp>

#include <algorithm>
#include <stdexcept>

namespace convrad {

namespace {

Rat rat(const ordered_json& j) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    throw std::invalid_argument("expected a rational (\"p/q\" or integer), got " + j.dump());
}

template <typename T>
T get_or(const ordered_json& j, const char* key, T def) {
    if (!j.contains(key)) return def;
    return j.at(key).get<T>();
}

}  // namespace

ordered_json plf_to_json(const PLFunction& f) {
    ordered_json j;
    ordered_json bps = ordered_json::array();
    for (const auto& p : f.breakpoints()) bps.push_back({p.t.str(), p.v.str()});
    j["breakpoints"] = bps;
    if (f.domain().kind == DomainKind::Ray) j["tail_slope"] = f.tail_slope().str();
    return j;
}

PLFunction plf_from_json(const ordered_json& j, const PLDomain& dom) {
    std::vector<PLFunction::Point> bps;
    for (const auto& p : j.at("breakpoints")) {
        if (!p.is_array() || p.size() != 2) throw std::invalid_argument("breakpoint must be a [t, value] pair");
        bps.push_back({rat(p[0]), rat(p[1])});
    }
    if (dom.kind == DomainKind::Segment) {
        if (j.contains("tail_slope")) throw std::invalid_argument("tail_slope on a segment function");
        return PLFunction::segment(dom.length, std::move(bps));
    }
    return PLFunction::ray(std::move(bps), rat(j.at("tail_slope")));
}

namespace {

ordered_json skeleton_to_json(const CurveSkeleton& sk) {
    CurveSkeleton s = sk;
    auto by_id = [](const auto& a, const auto& b) { return a.id < b.id; };
    std::sort(s.vertices.begin(), s.vertices.end(), by_id);
    std::sort(s.edges.begin(), s.edges.end(), by_id);
    std::sort(s.rays.begin(), s.rays.end(), by_id);
    std::sort(s.markers.begin(), s.markers.end(), by_id);
    ordered_json j;
    j["vertices"] = ordered_json::array();
    for (const Vertex& v : s.vertices) {
        ordered_json x;
        x["id"] = v.id;
        x["genus"] = v.genus;
        x["degree"] = v.t;
        x["boundary"] = v.boundary;
        x["in_S"] = v.in_S;
        x["tr_ok"] = v.tr_ok;
        x["dist"] = v.dist.str();
        j["vertices"].push_back(x);
    }
    j["edges"] = ordered_json::array();
    for (const Edge& e : s.edges) {
        ordered_json x;
        x["id"] = e.id;
        x["from"] = e.from;
        x["to"] = e.to;
        x["length"] = e.length.str();
        x["degree"] = e.deg;
        x["in_gamma"] = e.in_gamma;
        j["edges"].push_back(x);
    }
    j["rays"] = ordered_json::array();
    for (const Ray& r : s.rays) {
        ordered_json x;
        x["id"] = r.id;
        x["anchor"] = r.anchor;
        x["degree"] = r.deg;
        x["infinite_break_tail"] = r.infinite_break_tail;
        j["rays"].push_back(x);
    }
    j["disk_markers"] = ordered_json::array();
    for (const DiskMarker& m : s.markers) {
        ordered_json x;
        x["id"] = m.id;
        x["degree"] = m.deg;
        j["disk_markers"].push_back(x);
    }
    return j;
}

CurveSkeleton skeleton_from_json(const ordered_json& j) {
    CurveSkeleton sk;
    for (const auto& x : j.value("vertices", ordered_json::array())) {
        Vertex v;
        v.id = x.at("id").get<std::string>();
        v.genus = get_or<long>(x, "genus", 0);
        v.t = get_or<long>(x, "degree", 1);
        v.boundary = get_or<bool>(x, "boundary", false);
        v.in_S = get_or<bool>(x, "in_S", false);
        v.tr_ok = get_or<bool>(x, "tr_ok", true);
        v.dist = x.contains("dist") ? rat(x.at("dist")) : Rat(0);
        sk.vertices.push_back(v);
    }
    for (const auto& x : j.value("edges", ordered_json::array())) {
        Edge e;
        e.id = x.at("id").get<std::string>();
        e.from = x.at("from").get<std::string>();
        e.to = x.at("to").get<std::string>();
        e.length = rat(x.at("length"));
        e.deg = get_or<long>(x, "degree", 1);
        e.in_gamma = get_or<bool>(x, "in_gamma", false);
        sk.edges.push_back(e);
    }
    for (const auto& x : j.value("rays", ordered_json::array())) {
        Ray r;
        r.id = x.at("id").get<std::string>();
        r.anchor = x.at("anchor").get<std::string>();
        r.deg = get_or<long>(x, "degree", 1);
        r.infinite_break_tail = get_or<bool>(x, "infinite_break_tail", false);
        sk.rays.push_back(r);
    }
    for (const auto& x : j.value("disk_markers", ordered_json::array())) {
        DiskMarker m;
        m.id = x.at("id").get<std::string>();
        m.deg = get_or<long>(x, "degree", 1);
        sk.markers.push_back(m);
    }
    return sk;
}

ordered_json profile_to_json(const MultiRadiusProfile& p) {
    ordered_json j;
    j["rank"] = p.rank;
    ordered_json edges = ordered_json::object();
    for (const auto& [id, fns] : p.edge_fns) {
        ordered_json arr = ordered_json::array();
        for (const auto& f : fns) arr.push_back(plf_to_json(f));
        edges[id] = arr;
    }
    j["edges"] = edges;
    ordered_json rays = ordered_json::object();
    for (const auto& [id, fns] : p.ray_fns) {
        ordered_json arr = ordered_json::array();
        for (const auto& f : fns) arr.push_back(plf_to_json(f));
        rays[id] = arr;
    }
    j["rays"] = rays;
    ordered_json markers = ordered_json::object();
    for (const auto& [id, cs] : p.marker_consts) {
        ordered_json arr = ordered_json::array();
        for (const auto& c : cs) arr.push_back(c.str());
        markers[id] = arr;
    }
    j["disk_markers"] = markers;
    ordered_json verts = ordered_json::object();
    for (const auto& [id, vs] : p.isolated_vertex_values) {
        ordered_json arr = ordered_json::array();
        for (const auto& c : vs) arr.push_back(c.str());
        verts[id] = arr;
    }
    j["vertices"] = verts;
    return j;
}

MultiRadiusProfile profile_from_json(const ordered_json& j, const CurveSkeleton& sk) {
    MultiRadiusProfile p;
    p.rank = j.at("rank").get<long>();
    const ordered_json edges_j = j.value("edges", ordered_json::object());
    for (const auto& [id, arr] : edges_j.items()) {
        const Edge& e = sk.edge(id);
        std::vector<PLFunction> fns;
        for (const auto& x : arr) fns.push_back(plf_from_json(x, PLDomain::segment(e.length)));
        p.edge_fns[id] = std::move(fns);
    }
    const ordered_json rays_j = j.value("rays", ordered_json::object());
    for (const auto& [id, arr] : rays_j.items()) {
        sk.ray(id);
        std::vector<PLFunction> fns;
        for (const auto& x : arr) fns.push_back(plf_from_json(x, PLDomain::ray()));
        p.ray_fns[id] = std::move(fns);
    }
    const ordered_json markers_j = j.value("disk_markers", ordered_json::object());
    for (const auto& [id, arr] : markers_j.items()) {
        sk.marker(id);
        std::vector<Rat> cs;
        for (const auto& x : arr) cs.push_back(rat(x));
        p.marker_consts[id] = std::move(cs);
    }
    const ordered_json verts_j = j.value("vertices", ordered_json::object());
    for (const auto& [id, arr] : verts_j.items()) {
        sk.vertex(id);
        std::vector<Rat> vs;
        for (const auto& x : arr) vs.push_back(rat(x));
        p.isolated_vertex_values[id] = std::move(vs);
    }
    return p;
}

ordered_json operator_to_json(const CyclicOperator& op) {
    ordered_json j;
    j["rank"] = op.rank;
    ordered_json dom;
    if (op.domain.kind == DomainKind::Segment) {
        dom["kind"] = "segment";
        dom["length"] = op.domain.length.str();
    } else {
        dom["kind"] = "ray";
    }
    j["domain"] = dom;
    j["sigma"] = plf_to_json(op.sigma);
    ordered_json coeffs = ordered_json::array();
    for (const auto& c : op.coeff_logs) {
        if (c)
            coeffs.push_back(plf_to_json(*c));
        else
            coeffs.push_back(nullptr);
    }
    j["coeffs"] = coeffs;
    return j;
}

CyclicOperator operator_from_json(const ordered_json& j) {
    CyclicOperator op;
    op.rank = j.at("rank").get<long>();
    const auto& dom = j.at("domain");
    std::string kind = dom.at("kind").get<std::string>();
    if (kind == "segment")
        op.domain = PLDomain::segment(rat(dom.at("length")));
    else if (kind == "ray")
        op.domain = PLDomain::ray();
    else
        throw std::invalid_argument("operator domain kind must be segment or ray");
    op.sigma = plf_from_json(j.at("sigma"), op.domain);
    for (const auto& c : j.at("coeffs")) {
        if (c.is_null())
            op.coeff_logs.push_back(std::nullopt);
        else
            op.coeff_logs.push_back(plf_from_json(c, op.domain));
    }
    op.check();
    return op;
}

}  // namespace

Instance parse_instance(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("not valid JSON: ") + e.what());
    }
    Instance inst;
    if (j.contains("field")) inst.field.p = get_or<long>(j.at("field"), "p", 0);
    inst.field.validate();
    inst.skeleton = skeleton_from_json(j.value("skeleton", ordered_json::object()));
    if (j.contains("profile") && j.contains("operator"))
        throw std::invalid_argument("an instance carries exactly one of profile/operator, found both");
    if (j.contains("profile")) inst.profile = profile_from_json(j.at("profile"), inst.skeleton);
    if (j.contains("operator")) inst.op = operator_from_json(j.at("operator"));
    if (j.contains("flags")) {
        const auto& f = j.at("flags");
        inst.flags.liouville_all = get_or<bool>(f, "liouville_all", false);
        for (const auto& x : f.value("liouville_free_on", ordered_json::array()))
            inst.flags.liouville_free_on.insert(x.get<std::string>());
        const ordered_json oc_j = f.value("overconvergent", ordered_json::object());
        for (const auto& [vid, arr] : oc_j.items()) {
            inst.skeleton.vertex(vid);
            std::vector<OutsideGerm> germs;
            for (const auto& x : arr) germs.push_back({get_or<long>(x, "degree", 1), get_or<long>(x, "irr", 0)});
            inst.flags.overconvergent[vid] = std::move(germs);
        }
    }
    if (j.contains("growth")) {
        GrowthRule g;
        g.ray_id = j.at("growth").at("ray").get<std::string>();
        for (const auto& s : j.at("growth").at("steps")) {
            GrowthStep st;
            st.length = rat(s.at("length"));
            for (const auto& d : s.at("slope_delta")) st.slope_delta.push_back(rat(d));
            g.steps.push_back(std::move(st));
        }
        inst.growth = std::move(g);
    }
    for (const auto& z : j.value("punctures", ordered_json::array())) {
        Puncture p;
        p.ray_id = z.at("ray").get<std::string>();
        p.residue_deg = get_or<long>(z, "residue_degree", 1);
        p.irr = get_or<long>(z, "irr", 0);
        inst.punctures.push_back(p);
    }
    return inst;
}

std::string serialize_instance(const Instance& inst) {
    ordered_json j;
    j["field"] = {{"p", inst.field.p}};
    j["skeleton"] = skeleton_to_json(inst.skeleton);
    if (inst.profile) j["profile"] = profile_to_json(*inst.profile);
    if (inst.op) j["operator"] = operator_to_json(*inst.op);
    ordered_json flags;
    flags["liouville_all"] = inst.flags.liouville_all;
    ordered_json lf = ordered_json::array();
    for (const auto& id : inst.flags.liouville_free_on) lf.push_back(id);
    flags["liouville_free_on"] = lf;
    ordered_json oc = ordered_json::object();
    for (const auto& [vid, germs] : inst.flags.overconvergent) {
        ordered_json arr = ordered_json::array();
        for (const auto& g : germs) arr.push_back({{"degree", g.deg}, {"irr", g.irr}});
        oc[vid] = arr;
    }
    flags["overconvergent"] = oc;
    j["flags"] = flags;
    if (inst.growth) {
        ordered_json g;
        g["ray"] = inst.growth->ray_id;
        ordered_json steps = ordered_json::array();
        for (const auto& st : inst.growth->steps) {
            ordered_json s;
            s["length"] = st.length.str();
            ordered_json deltas = ordered_json::array();
            for (const auto& d : st.slope_delta) deltas.push_back(d.str());
            s["slope_delta"] = deltas;
            steps.push_back(s);
        }
        g["steps"] = steps;
        j["growth"] = g;
    }
    if (!inst.punctures.empty()) {
        ordered_json zs = ordered_json::array();
        for (const auto& z : inst.punctures)
            zs.push_back({{"ray", z.ray_id}, {"residue_degree", z.residue_deg}, {"irr", z.irr}});
        j["punctures"] = zs;
    }
    return j.dump(2) + "\n";
}

ordered_json index_report_to_json(const IndexReport& rep) {
    ordered_json j;
    switch (rep.verdict.kind) {
        case IndexVerdict::Kind::Finite: j["verdict"] = "finite"; break;
        case IndexVerdict::Kind::Infinite: j["verdict"] = "infinite"; break;
        case IndexVerdict::Kind::Undetermined: j["verdict"] = "undetermined"; break;
    }
    if (!rep.verdict.reason.empty()) j["reason"] = rep.verdict.reason;
    j["chi_sum"] = rep.chi_sum;
    j["chi_gos"] = rep.chi_gos;
    j["formulas_agree"] = rep.formulas_agree;
    if (rep.irr_X) j["irr_X"] = *rep.irr_X;
    if (rep.h0) j["h0"] = *rep.h0;
    if (rep.h1) j["h1"] = *rep.h1;
    ordered_json chis = ordered_json::object();
    for (const auto& [id, c] : rep.chi_per_vertex) chis[id] = c;
    j["chi_per_vertex"] = chis;
    ordered_json irrs = ordered_json::object();
    for (const auto& [id, c] : rep.irr_per_germ) irrs[id] = c;
    j["irr_per_germ"] = irrs;
    ordered_json deltas = ordered_json::object();
    for (const auto& [id, c] : rep.delta_per_boundary) deltas[id] = c;
    j["delta_per_boundary"] = deltas;
    return j;
}

ordered_json wsh_report_to_json(const WshReport& rep) {
    ordered_json j;
    j["pass"] = rep.pass;
    j["checks"] = rep.checks.size();
    ordered_json viols = ordered_json::array();
    for (const auto& v : rep.violations) {
        ordered_json x;
        x["vertex"] = v.vertex;
        x["index"] = v.index;
        x["kind"] = v.kind;
        x["laplacian"] = v.lhs.str();
        x["bound"] = v.rhs.str();
        viols.push_back(x);
    }
    j["violations"] = viols;
    ordered_json skipped = ordered_json::array();
    for (const auto& s : rep.skipped) skipped.push_back(s);
    j["skipped"] = skipped;
    return j;
}

ordered_json violations_to_json(const std::vector<Violation>& v) {
    ordered_json arr = ordered_json::array();
    for (const auto& x : v) arr.push_back({{"where", x.where}, {"what", x.what}});
    return arr;
}

}  // namespace convrad
