#include <convrad/hull.hpp>

#include <stdexcept>

namespace convrad {

HullPoints HullPoints::dense(const std::vector<std::optional<Rat>>& values) {
    HullPoints pts;
    for (std::size_t j = 0; j < values.size(); ++j)
        pts.points.push_back({static_cast<long>(j), values[j]});
    return pts;
}

std::size_t HullPoints::present_count() const {
    std::size_t n = 0;
    for (const auto& e : points)
        if (e.value) ++n;
    return n;
}

namespace {

struct Pt {
    long j;
    Rat v;
};

// cross(o->a, o->b) sign; > 0 means b lies counterclockwise of a around o.
int cross_sign(const Pt& o, const Pt& a, const Pt& b) {
    Rat c = Rat(a.j - o.j) * (b.v - o.v) - (a.v - o.v) * Rat(b.j - o.j);
    return c.sign();
}

std::vector<Pt> present_sorted(const HullPoints& pts) {
    std::vector<Pt> ps;
    long prev = 0;
    bool first = true;
    for (const auto& e : pts.points) {
        if (!first && e.j <= prev) throw std::invalid_argument("HullPoints: indices not strictly increasing");
        prev = e.j;
        first = false;
        if (e.j < 0) throw std::invalid_argument("HullPoints: negative index");
        if (e.value) ps.push_back({e.j, *e.value});
    }
    return ps;
}

}  // namespace

std::vector<Rat> newton_hull(const HullPoints& pts, HullSide side) {
    std::vector<Pt> ps = present_sorted(pts);
    if (ps.size() < 2) throw std::invalid_argument("newton_hull: fewer than two present points");

    // Monotone chain over points already sorted by abscissa. For the upper
    // concave hull keep left turns out; for the lower convex hull right turns.
    std::vector<Pt> chain;
    for (const Pt& p : ps) {
        while (chain.size() >= 2) {
            int c = cross_sign(chain[chain.size() - 2], chain[chain.size() - 1], p);
            bool drop = (side == HullSide::UpperConcave) ? (c >= 0) : (c <= 0);
            if (drop)
                chain.pop_back();
            else
                break;
        }
        chain.push_back(p);
    }

    std::vector<Rat> slopes;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        Rat s = (chain[i + 1].v - chain[i].v) / Rat(chain[i + 1].j - chain[i].j);
        for (long k = chain[i].j; k < chain[i + 1].j; ++k) slopes.push_back(s);
    }
    return slopes;
}

Rat hull_value(const HullPoints& pts, HullSide side, long k) {
    std::vector<Pt> ps = present_sorted(pts);
    if (ps.empty()) throw std::invalid_argument("hull_value: no present points");
    if (k < ps.front().j || k > ps.back().j) throw std::invalid_argument("hull_value: abscissa outside the span");
    // Majorant = max over chords spanning k; minorant = min. Degenerate
    // chords (a present point at k) are included.
    std::optional<Rat> best;
    auto consider = [&](const Rat& v) {
        if (!best)
            best = v;
        else if (side == HullSide::UpperConcave)
            best = max(*best, v);
        else
            best = min(*best, v);
    };
    for (const Pt& p : ps)
        if (p.j == k) consider(p.v);
    for (const Pt& a : ps)
        for (const Pt& b : ps)
            if (a.j < k && k < b.j)
                consider((a.v * Rat(b.j - k) + b.v * Rat(k - a.j)) / Rat(b.j - a.j));
    return *best;
}

}  // namespace convrad
