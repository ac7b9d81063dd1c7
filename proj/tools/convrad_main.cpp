#include <convrad/generate.hpp>
#include <convrad/json_io.hpp>
#include <convrad/svg.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace convrad;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRefusal = 2;
constexpr int kExitAssertion = 3;

[[noreturn]] void die(int code, const std::string& message) {
    ordered_json err;
    err["error"] = message;
    err["code"] = code;
    std::cerr << err.dump() << "\n";
    std::exit(code);
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) die(kExitValidation, "cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Instance load(const std::string& path) {
    try {
        return parse_instance(read_input(path));
    } catch (const std::exception& e) {
        die(kExitValidation, e.what());
    }
}

const MultiRadiusProfile& need_profile(const Instance& inst) {
    if (!inst.profile) die(kExitRefusal, "this command needs a profile instance");
    return *inst.profile;
}

void validate_or_die(const Instance& inst) {
    auto viol = inst.skeleton.validate();
    if (viol.empty() && inst.profile) viol = inst.profile->validate(inst.skeleton);
    if (!viol.empty()) {
        ordered_json err;
        err["error"] = "validation failed";
        err["code"] = kExitValidation;
        err["violations"] = violations_to_json(viol);
        std::cerr << err.dump() << "\n";
        std::exit(kExitValidation);
    }
}

int cmd_validate(const std::string& file) {
    Instance inst = load(file);
    ordered_json out;
    auto viol = inst.skeleton.validate();
    if (viol.empty() && inst.profile) viol = inst.profile->validate(inst.skeleton);
    out["valid"] = viol.empty();
    out["violations"] = violations_to_json(viol);
    std::cout << out.dump(2) << "\n";
    return viol.empty() ? kExitOk : kExitValidation;
}

int cmd_index(const std::string& file) {
    Instance inst = load(file);
    validate_or_die(inst);
    IndexReport rep = global_index(inst.skeleton, need_profile(inst), inst.flags);
    std::cout << index_report_to_json(rep).dump(2) << "\n";
    if (rep.verdict.kind == IndexVerdict::Kind::Undetermined) return kExitRefusal;
    if (!rep.formulas_agree) return kExitAssertion;
    return kExitOk;
}

int cmd_irregularity(const std::string& file) {
    Instance inst = load(file);
    validate_or_die(inst);
    IrrResult res = global_irregularity(inst.skeleton, need_profile(inst), inst.flags);
    ordered_json out;
    if (!res.ok) {
        out["refusal"] = res.refusal;
        std::cout << out.dump(2) << "\n";
        return kExitRefusal;
    }
    out["irr_X"] = res.irr;
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_young(const std::string& file, const std::string& at, bool has_at) {
    Instance inst = load(file);
    if (!inst.op) die(kExitRefusal, "young needs an operator instance");
    ordered_json out;
    if (has_at) {
        Rat t = Rat::parse(at);
        std::vector<YoungRadius> radii;
        try {
            radii = young_radii(*inst.op, inst.field, t);
        } catch (const std::domain_error& e) {
            die(kExitRefusal, e.what());
        }
        out["at"] = t.str();
        ordered_json arr = ordered_json::array();
        for (const auto& yr : radii) arr.push_back({{"log_R", yr.log_R.str()}, {"valid", yr.valid}});
        out["radii"] = arr;
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }
    YoungProfileResult res = young_profile(*inst.op, inst.field);
    if (!res.ok) {
        out["refusal"] = res.refusal;
        std::cout << out.dump(2) << "\n";
        return kExitRefusal;
    }
    ordered_json arr = ordered_json::array();
    for (const auto& f : res.log_R) arr.push_back(plf_to_json(f));
    out["log_R"] = arr;
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_check(const std::string& file, const std::string& suite, unsigned long seed) {
    Instance inst = load(file);
    validate_or_die(inst);
    const MultiRadiusProfile& prof = need_profile(inst);
    ordered_json out;
    bool pass = true;
    if (suite == "integrality" || suite == "all") {
        auto viol = integrality_check(inst.skeleton, prof);
        out["integrality"] = {{"pass", viol.empty()}, {"violations", violations_to_json(viol)}};
        pass = pass && viol.empty();
    }
    if (suite == "superharmonic" || suite == "all") {
        WshReport rep = check_weak_superharmonicity(inst.skeleton, prof);
        out["superharmonic"] = wsh_report_to_json(rep);
        pass = pass && rep.pass;
    }
    if (suite == "invariance" || suite == "all") {
        std::mt19937_64 rng(seed);
        InvarianceReport rep = invariance_check(inst.skeleton, prof, inst.flags, rng, 3);
        ordered_json j;
        j["pass"] = rep.pass;
        j["rounds"] = rep.rounds_run;
        ordered_json fails = ordered_json::array();
        for (const auto& f : rep.failures) fails.push_back(f);
        j["failures"] = fails;
        IrrResult irr = global_irregularity(inst.skeleton, prof, inst.flags);
        if (irr.ok) j["irr_X"] = irr.irr;
        out["invariance"] = j;
        pass = pass && rep.pass;
    }
    if (out.empty()) die(kExitRefusal, "unknown suite " + suite);
    out["pass"] = pass;
    std::cout << out.dump(2) << "\n";
    return pass ? kExitOk : kExitAssertion;
}

int cmd_limit(const std::string& file, long steps, long window) {
    Instance inst = load(file);
    validate_or_die(inst);
    if (!inst.growth) die(kExitRefusal, "limit needs a growth rule in the instance file");
    LimitResult res = limit_decide(inst.skeleton, need_profile(inst), inst.flags, *inst.growth, steps, window);
    ordered_json out;
    switch (res.verdict.kind) {
        case IndexVerdict::Kind::Finite:
            out["verdict"] = "finite";
            out["chi"] = res.verdict.chi;
            break;
        case IndexVerdict::Kind::Infinite: out["verdict"] = "infinite"; break;
        case IndexVerdict::Kind::Undetermined: out["verdict"] = "undetermined"; break;
    }
    if (!res.verdict.reason.empty()) out["reason"] = res.verdict.reason;
    ordered_json trace = ordered_json::array();
    for (long c : res.chi_trace) trace.push_back(c);
    out["chi_trace"] = trace;
    out["steps"] = res.steps_taken;
    out["telescoping_ok"] = res.telescoping_ok;
    out["criteria_ok"] = res.criteria_ok;
    out["criteria_agree"] = res.criteria_agree;
    std::cout << out.dump(2) << "\n";
    if (res.verdict.kind == IndexVerdict::Kind::Undetermined) return kExitRefusal;
    if (!res.telescoping_ok || !res.criteria_agree) return kExitAssertion;
    return kExitOk;
}

int cmd_localize(const std::string& file, const std::string& vertex) {
    Instance inst = load(file);
    validate_or_die(inst);
    const MultiRadiusProfile& prof = need_profile(inst);
    ordered_json out;
    try {
        TubeSpec tube = canonical_tube(inst.skeleton, prof, vertex);
        out["vertex"] = vertex;
        ordered_json sing = ordered_json::array();
        for (const Germ& g : tube.singular) sing.push_back(g.key());
        out["singular_directions"] = sing;
        out["tube_chi"] = inst.skeleton.tube_chi(vertex, tube.singular);
        out["laplacian_localized"] = localize_tube_laplacian(inst.skeleton, prof, vertex, tube).str();
        ordered_json germs = ordered_json::object();
        for (const Germ& g : inst.skeleton.germs_at(vertex)) {
            ordered_json jg;
            jg["localized_height_slope"] = localized_boundary_slope(inst.skeleton, prof, vertex, g).str();
            ordered_json per = ordered_json::array();
            for (const Rat& s : localized_slopes_per_index(inst.skeleton, prof, vertex, g)) per.push_back(s.str());
            jg["localized_slopes"] = per;
            jg["irr"] = irr_germ(inst.skeleton, prof, vertex, g);
            germs[g.key()] = jg;
        }
        out["germs"] = germs;
    } catch (const std::invalid_argument& e) {
        die(kExitRefusal, e.what());
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_plot(const std::string& file, const std::string& element, long index, const std::string& out_path) {
    Instance inst = load(file);
    validate_or_die(inst);
    const MultiRadiusProfile& prof = need_profile(inst);
    std::string element_id = element;
    if (element_id.empty()) {
        if (!inst.skeleton.edges.empty())
            element_id = inst.skeleton.edges.front().id;
        else if (!inst.skeleton.rays.empty())
            element_id = inst.skeleton.rays.front().id;
        else
            die(kExitRefusal, "nothing to plot: no edges or rays");
    }
    std::string svg;
    try {
        svg = plot_svg(inst.skeleton, prof, element_id, index);
    } catch (const std::invalid_argument& e) {
        die(kExitRefusal, e.what());
    }
    if (out_path.empty() || out_path == "-") {
        std::cout << svg;
    } else {
        std::ofstream os(out_path, std::ios::binary);
        if (!os) die(kExitValidation, "cannot write " + out_path);
        os << svg;
    }
    return kExitOk;
}

int cmd_example(const std::string& name, long p) {
    if (name != "paper-3-4") die(kExitRefusal, "unknown example " + name);
    FieldConfig fc;
    fc.p = p;
    fc.validate();
    WorkedExample ex = worked_example_disk(fc);
    const CurveSkeleton& sk = ex.inst.sk;
    const MultiRadiusProfile& prof = ex.inst.prof;

    std::vector<std::string> failures;
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    };
    auto viol = sk.validate();
    expect(viol.empty(), "skeleton valid");
    auto pviol = prof.validate(sk);
    expect(pviol.empty(), "profile invariants");

    IndexReport rep = global_index(sk, prof, ex.inst.flags);
    expect(rep.verdict.kind == IndexVerdict::Kind::Finite, "index computable");
    expect(rep.formulas_agree, "vertex-sum formula equals the GOS formula");
    expect(rep.chi_sum == 0, "chi = 0");
    expect(rep.h1.has_value() && *rep.h1 == 0, "h1 = 0");
    expect(rep.h0.has_value() && *rep.h0 == 0, "h0 = 0");

    YoungProfileResult young = young_profile(ex.op, fc);
    expect(young.ok, "Young profile applies on the whole segment");
    if (young.ok) {
        PLFunction h2 = plf_sum(young.log_R[0], young.log_R[1]);
        expect(h2.is_constant(), "total height constant along the segment");
        expect(young.log_R[0].break_params() == young.log_R[1].break_params(),
               "both controlling graphs bifurcate at the same points");
    }
    for (const char* v : {"v1", "v2"}) {
        expect(laplacian_height(sk, prof, v, 1) == Rat(0), std::string("first radius harmonic at ") + v);
        expect(laplacian_height(sk, prof, v, 2) == Rat(0), std::string("total height harmonic at ") + v);
    }
    WshReport wsh = check_weak_superharmonicity(sk, prof);
    expect(wsh.pass, "weak super-harmonicity");

    Instance out;
    out.field = ex.inst.field;
    out.skeleton = ex.inst.sk;
    out.profile = ex.inst.prof;
    out.flags = ex.inst.flags;
    std::cout << serialize_instance(out);
    if (!failures.empty()) {
        ordered_json err;
        err["error"] = "example assertions failed";
        err["code"] = kExitAssertion;
        ordered_json fails = ordered_json::array();
        for (const auto& f : failures) fails.push_back(f);
        err["failures"] = fails;
        std::cerr << err.dump() << "\n";
        return kExitAssertion;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact convergence-polygon calculus on curve skeletons"};
    app.require_subcommand(1);
    unsigned long seed = 1;
    app.add_option("--seed", seed, "seed for randomized suites");

    std::string file;
    auto* validate = app.add_subcommand("validate", "check all structural invariants of an instance file");
    validate->add_option("file", file, "instance file or -")->required();

    auto* index = app.add_subcommand("index", "global de Rham index with the GOS cross-check");
    index->add_option("file", file, "instance file or -")->required();

    auto* irreg = app.add_subcommand("irregularity", "global irregularity Irr_X");
    irreg->add_option("file", file, "instance file or -")->required();

    std::string at;
    auto* young = app.add_subcommand("young", "radii from a cyclic operator by the Young formula");
    young->add_option("file", file, "instance file or -")->required();
    auto* at_opt = young->add_option("--at", at, "evaluate at one parameter instead of the whole domain");

    std::string suite = "all";
    auto* check = app.add_subcommand("check", "run a verification suite on the instance");
    check->add_option("file", file, "instance file or -")->required();
    check->add_option("--suite", suite, "integrality | superharmonic | invariance | all");

    long steps = 100, window = 5;
    auto* limit = app.add_subcommand("limit", "decide the index of an exhaustion family");
    limit->add_option("file", file, "instance file or -")->required();
    limit->add_option("--steps", steps, "maximum number of exhaustion steps");
    limit->add_option("--window", window, "stabilization window");

    std::string vertex, tube = "canonical";
    auto* localize = app.add_subcommand("localize", "localized Laplacian and germ slopes at a vertex");
    localize->add_option("file", file, "instance file or -")->required();
    localize->add_option("--vertex", vertex, "vertex id")->required();
    localize->add_option("--tube", tube, "tube choice (canonical)");

    std::string element, out_path;
    long plot_index = 0;
    auto* plot = app.add_subcommand("plot", "deterministic SVG plot of the radii along an edge or ray");
    plot->add_option("file", file, "instance file or -")->required();
    plot->add_option("--element", element, "edge or ray id (default: first edge)");
    plot->add_option("--index", plot_index, "single index to plot (default: all)");
    plot->add_option("--out", out_path, "output file (default: stdout)");

    std::string example_name;
    long example_p = 0;
    auto* example = app.add_subcommand("example", "emit a built-in instance and verify its expected values");
    example->add_option("name", example_name, "example name (paper-3-4)")->required();
    example->add_option("--p", example_p, "residue characteristic (0 or a prime)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(file);
        if (index->parsed()) return cmd_index(file);
        if (irreg->parsed()) return cmd_irregularity(file);
        if (young->parsed()) return cmd_young(file, at, at_opt->count() > 0);
        if (check->parsed()) return cmd_check(file, suite, seed);
        if (limit->parsed()) return cmd_limit(file, steps, window);
        if (localize->parsed()) {
            if (tube != "canonical") die(kExitRefusal, "only the canonical tube is supported");
            return cmd_localize(file, vertex);
        }
        if (plot->parsed()) return cmd_plot(file, element, plot_index, out_path);
        if (example->parsed()) return cmd_example(example_name, example_p);
    } catch (const std::invalid_argument& e) {
        die(kExitRefusal, e.what());
    } catch (const std::exception& e) {
        die(kExitAssertion, e.what());
    }
    return kExitOk;
}
