#include <convrad/svg.hpp>

#include <sstream>
#include <stdexcept>

namespace convrad {

namespace {

// Fixed-point decimal with 4 digits, truncated toward zero: exact and
// deterministic.
std::string dec4(const Rat& q) {
    mpz_class scaled = (q.num() * 10000) / q.den();
    bool neg = scaled < 0;
    mpz_class a = neg ? mpz_class(-scaled) : scaled;
    mpz_class ip = a / 10000, fp = a % 10000;
    std::string frac = fp.get_str();
    frac.insert(frac.begin(), 4 - frac.size(), '0');
    return (neg ? "-" : "") + ip.get_str() + "." + frac;
}

struct Series {
    std::string label;
    std::string color;
    bool dashed = false;
    std::vector<PLFunction::Point> pts;
};

const char* kColors[] = {"#1f6fb2", "#b23a1f", "#3a9a3a", "#8a3ab2", "#b2861f", "#1fb2a6"};

}  // namespace

std::string plot_svg(const CurveSkeleton& sk, const MultiRadiusProfile& prof, const std::string& element_id,
                     long index) {
    bool is_edge = prof.edge_fns.count(element_id) > 0;
    bool is_ray = prof.ray_fns.count(element_id) > 0;
    if (!is_edge && !is_ray) throw std::invalid_argument("plot: unknown edge or ray " + element_id);

    const auto& fns = is_edge ? prof.fns_for_edge(element_id) : prof.fns_for_ray(element_id);
    // Rays are drawn one unit past their last breakpoint.
    Rat t_max = is_edge ? sk.edge(element_id).length : Rat(0);
    if (is_ray) {
        for (const auto& f : fns)
            if (f.breakpoints().back().t > t_max) t_max = f.breakpoints().back().t;
        t_max += Rat(1);
    }

    PLFunction sigma = is_edge ? plf_scale(sk.dist_along_edge(element_id), Rat(-1))
                               : PLFunction::constant(PLDomain::ray(), Rat(0));

    std::vector<Series> series;
    auto add_fn = [&](const PLFunction& f, const std::string& label, const std::string& color, bool dashed) {
        Series s;
        s.label = label;
        s.color = color;
        s.dashed = dashed;
        for (const auto& p : f.breakpoints()) s.pts.push_back(p);
        if (f.domain().kind == DomainKind::Ray && f.breakpoints().back().t < t_max)
            s.pts.push_back({t_max, f.eval(t_max)});
        series.push_back(std::move(s));
    };
    for (long i = 1; i <= prof.rank; ++i) {
        if (index != 0 && index != i) continue;
        add_fn(fns[static_cast<std::size_t>(i - 1)], "log R_" + std::to_string(i),
               kColors[static_cast<std::size_t>((i - 1) % 6)], false);
    }
    if (series.empty()) throw std::invalid_argument("plot: index out of range");
    add_fn(sigma, "solvability", "#555555", true);

    Rat y_min = series.front().pts.front().v, y_max = y_min;
    for (const auto& s : series)
        for (const auto& p : s.pts) {
            y_min = min(y_min, p.v);
            y_max = max(y_max, p.v);
        }
    if (y_min == y_max) {
        y_min -= Rat(1);
        y_max += Rat(1);
    }

    const Rat W(800), H(600), ML(70), MR(30), MT(30), MB(40);
    Rat x_span = t_max;
    if (x_span == Rat(0)) x_span = Rat(1);
    auto X = [&](const Rat& t) { return ML + (t / x_span) * (W - ML - MR); };
    auto Y = [&](const Rat& v) { return MT + ((y_max - v) / (y_max - y_min)) * (H - MT - MB); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";
    os << "<text x=\"" << dec4(ML) << "\" y=\"20\" font-family=\"monospace\" font-size=\"14\">" << element_id
       << "</text>\n";
    long k = 0;
    for (const auto& s : series) {
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\"";
        if (s.dashed) os << " stroke-dasharray=\"6 4\"";
        os << " points=\"";
        for (std::size_t i = 0; i < s.pts.size(); ++i) {
            if (i) os << " ";
            os << dec4(X(s.pts[i].t)) << "," << dec4(Y(s.pts[i].v));
        }
        os << "\"/>\n";
        os << "<text x=\"" << dec4(W - MR - Rat(160)) << "\" y=\"" << dec4(MT + Rat(18) * Rat(k + 1))
           << "\" font-family=\"monospace\" font-size=\"12\" fill=\"" << s.color << "\">" << s.label << "</text>\n";
        ++k;
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace convrad
