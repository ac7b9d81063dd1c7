#include <convrad/plf.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace convrad {

void PLFunction::validate_and_normalize() {
    if (bps_.empty()) throw std::invalid_argument("PLFunction: no breakpoints");
    for (std::size_t i = 0; i + 1 < bps_.size(); ++i)
        if (!(bps_[i].t < bps_[i + 1].t))
            throw std::invalid_argument("PLFunction: breakpoint parameters not strictly increasing");
    if (bps_.front().t != Rat(0)) throw std::invalid_argument("PLFunction: first breakpoint must be at 0");
    if (dom_.kind == DomainKind::Segment) {
        if (!(dom_.length > Rat(0))) throw std::invalid_argument("PLFunction: segment length must be > 0");
        if (bps_.size() < 2 || bps_.back().t != dom_.length)
            throw std::invalid_argument("PLFunction: last breakpoint must be at the segment length");
    }

    // Minimal breakpoint set: drop interior points where the slope does not
    // change, and on rays drop trailing points collinear with the tail.
    auto piece_slope = [&](std::size_t i) {  // slope of piece starting at bps_[i]
        return (bps_[i + 1].v - bps_[i].v) / (bps_[i + 1].t - bps_[i].t);
    };
    std::vector<Point> out;
    out.reserve(bps_.size());
    out.push_back(bps_.front());
    for (std::size_t i = 1; i + 1 < bps_.size(); ++i) {
        Rat left = (bps_[i].v - out.back().v) / (bps_[i].t - out.back().t);
        Rat right = piece_slope(i);
        if (left != right) out.push_back(bps_[i]);
    }
    if (bps_.size() >= 2) out.push_back(bps_.back());
    if (dom_.kind == DomainKind::Ray) {
        while (out.size() >= 2) {
            Rat last = (out.back().v - out[out.size() - 2].v) / (out.back().t - out[out.size() - 2].t);
            if (last == tail_)
                out.pop_back();
            else
                break;
        }
    }
    bps_ = std::move(out);
}

PLFunction PLFunction::segment(Rat length, std::vector<Point> bps) {
    PLFunction f;
    f.dom_ = PLDomain::segment(std::move(length));
    f.bps_ = std::move(bps);
    f.tail_ = Rat(0);
    f.validate_and_normalize();
    return f;
}

PLFunction PLFunction::ray(std::vector<Point> bps, Rat tail_slope) {
    PLFunction f;
    f.dom_ = PLDomain::ray();
    f.bps_ = std::move(bps);
    f.tail_ = std::move(tail_slope);
    f.validate_and_normalize();
    return f;
}

PLFunction PLFunction::constant(const PLDomain& dom, const Rat& v) {
    if (dom.kind == DomainKind::Segment)
        return segment(dom.length, {{Rat(0), v}, {dom.length, v}});
    return ray({{Rat(0), v}}, Rat(0));
}

PLFunction PLFunction::affine(const PLDomain& dom, const Rat& v0, const Rat& slope) {
    if (dom.kind == DomainKind::Segment)
        return segment(dom.length, {{Rat(0), v0}, {dom.length, v0 + slope * dom.length}});
    return ray({{Rat(0), v0}}, slope);
}

bool PLFunction::in_domain(const Rat& t) const {
    if (t < Rat(0)) return false;
    return dom_.kind == DomainKind::Ray || t <= dom_.length;
}

Rat PLFunction::eval(const Rat& t) const {
    if (!in_domain(t)) throw std::domain_error("PLFunction::eval: parameter outside domain");
    // Last breakpoint with parameter <= t.
    std::size_t lo = 0;
    for (std::size_t i = 0; i < bps_.size(); ++i)
        if (bps_[i].t <= t) lo = i;
    if (bps_[lo].t == t) return bps_[lo].v;
    if (lo + 1 < bps_.size()) {
        const Point& a = bps_[lo];
        const Point& b = bps_[lo + 1];
        return a.v + (b.v - a.v) / (b.t - a.t) * (t - a.t);
    }
    // Ray tail.
    return bps_.back().v + tail_ * (t - bps_.back().t);
}

Rat PLFunction::slope(const Rat& t, Dir dir) const {
    if (!in_domain(t)) throw std::domain_error("PLFunction::slope: parameter outside domain");
    if (dir == Dir::Backward) {
        if (!(t > Rat(0))) throw std::domain_error("PLFunction::slope: backward slope at 0 leaves the domain");
        // piece whose half-open left side (bps_[k].t, bps_[k+1].t] contains t
        for (std::size_t k = 0; k + 1 < bps_.size(); ++k)
            if (bps_[k].t < t && t <= bps_[k + 1].t)
                return -((bps_[k + 1].v - bps_[k].v) / (bps_[k + 1].t - bps_[k].t));
        // beyond the last breakpoint on a ray
        return -tail_;
    }
    if (dom_.kind == DomainKind::Segment && !(t < dom_.length))
        throw std::domain_error("PLFunction::slope: forward slope at the segment end leaves the domain");
    for (std::size_t k = 0; k + 1 < bps_.size(); ++k)
        if (bps_[k].t <= t && t < bps_[k + 1].t)
            return (bps_[k + 1].v - bps_[k].v) / (bps_[k + 1].t - bps_[k].t);
    return tail_;
}

Rat PLFunction::end_slope() const {
    if (dom_.kind != DomainKind::Segment) throw std::domain_error("PLFunction::end_slope: not a segment");
    return slope(dom_.length, Dir::Backward);
}

Rat PLFunction::final_slope() const {
    if (dom_.kind == DomainKind::Ray) return tail_;
    const Point& a = bps_[bps_.size() - 2];
    const Point& b = bps_.back();
    return (b.v - a.v) / (b.t - a.t);
}

Rat PLFunction::end_value() const {
    if (dom_.kind != DomainKind::Segment) throw std::domain_error("PLFunction::end_value: not a segment");
    return bps_.back().v;
}

bool PLFunction::is_constant() const {
    for (std::size_t i = 1; i < bps_.size(); ++i)
        if (bps_[i].v != bps_[0].v) return false;
    return dom_.kind == DomainKind::Segment || tail_ == Rat(0);
}

std::vector<Rat> PLFunction::break_params() const {
    std::vector<Rat> out;
    std::vector<Rat> sl = piece_slopes();
    for (std::size_t i = 1; i < bps_.size(); ++i) {
        if (dom_.kind == DomainKind::Segment && i + 1 == bps_.size()) break;
        if (sl[i] != sl[i - 1]) out.push_back(bps_[i].t);
    }
    return out;
}

std::vector<Rat> PLFunction::piece_slopes() const {
    std::vector<Rat> out;
    for (std::size_t i = 0; i + 1 < bps_.size(); ++i)
        out.push_back((bps_[i + 1].v - bps_[i].v) / (bps_[i + 1].t - bps_[i].t));
    if (dom_.kind == DomainKind::Ray) out.push_back(tail_);
    return out;
}

std::string PLFunction::str() const {
    std::ostringstream os;
    os << (dom_.kind == DomainKind::Segment ? "seg[" : "ray[");
    for (std::size_t i = 0; i < bps_.size(); ++i) {
        if (i) os << ", ";
        os << "(" << bps_[i].t.str() << ", " << bps_[i].v.str() << ")";
    }
    if (dom_.kind == DomainKind::Ray) os << "; tail " << tail_.str();
    os << "]";
    return os.str();
}

namespace {

void require_same_domain(const PLFunction& a, const PLFunction& b) {
    if (!(a.domain() == b.domain()))
        throw std::invalid_argument("plf: operands live on different domains");
}

std::vector<Rat> merged_grid(const PLFunction& a, const PLFunction& b) {
    std::vector<Rat> grid;
    for (const auto& p : a.breakpoints()) grid.push_back(p.t);
    for (const auto& p : b.breakpoints()) grid.push_back(p.t);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

}  // namespace

PLFunction zip_with(const PLFunction& a, const PLFunction& b, bool is_min, bool insert_crossings) {
    require_same_domain(a, b);
    std::vector<Rat> grid = merged_grid(a, b);
    std::vector<PLFunction::Point> out;
    auto pick = [&](const Rat& va, const Rat& vb) {
        if (!insert_crossings) return va + vb;
        return is_min ? min(va, vb) : max(va, vb);
    };
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Rat va = a.eval(grid[i]);
        Rat vb = b.eval(grid[i]);
        if (insert_crossings && i + 1 < grid.size()) {
            out.push_back({grid[i], pick(va, vb)});
            Rat wa = a.eval(grid[i + 1]);
            Rat wb = b.eval(grid[i + 1]);
            // Both affine on (grid[i], grid[i+1]): a strict sign change means
            // an interior crossing with an exact rational parameter.
            Rat d0 = va - vb, d1 = wa - wb;
            if (d0.sign() * d1.sign() < 0) {
                Rat len = grid[i + 1] - grid[i];
                Rat tc = grid[i] + len * d0 / (d0 - d1);
                out.push_back({tc, a.eval(tc)});
            }
        } else {
            out.push_back({grid[i], pick(va, vb)});
        }
    }
    if (a.domain().kind == DomainKind::Segment)
        return PLFunction::segment(a.domain().length, std::move(out));

    Rat ta = a.tail_slope(), tb = b.tail_slope();
    if (!insert_crossings) return PLFunction::ray(std::move(out), ta + tb);
    // Tails: beyond the last grid point both are affine; if they cross, add
    // the crossing point, then the winning tail takes over.
    Rat t_last = out.back().t;
    Rat va = a.eval(t_last), vb = b.eval(t_last);
    Rat d = va - vb;
    Rat tail;
    if (d == Rat(0)) {
        tail = is_min ? min(ta, tb) : max(ta, tb);
    } else {
        bool a_wins_now = is_min ? (d < Rat(0)) : (d > Rat(0));
        Rat m_now = a_wins_now ? ta : tb;
        Rat m_other = a_wins_now ? tb : ta;
        bool other_overtakes = is_min ? (m_other < m_now) : (m_other > m_now);
        if (!other_overtakes) {
            tail = m_now;
        } else {
            Rat tc = t_last + abs(d) / abs(ta - tb);
            out.push_back({tc, a.eval(tc)});  // a and b agree at the crossing
            tail = m_other;
        }
    }
    return PLFunction::ray(std::move(out), tail);
}

PLFunction plf_sum(const PLFunction& a, const PLFunction& b) { return zip_with(a, b, false, false); }
PLFunction plf_min(const PLFunction& a, const PLFunction& b) { return zip_with(a, b, true, true); }
PLFunction plf_max(const PLFunction& a, const PLFunction& b) { return zip_with(a, b, false, true); }

PLFunction plf_scale(const PLFunction& f, const Rat& c) {
    std::vector<PLFunction::Point> out = f.breakpoints();
    for (auto& p : out) p.v *= c;
    if (f.domain().kind == DomainKind::Segment)
        return PLFunction::segment(f.domain().length, std::move(out));
    return PLFunction::ray(std::move(out), f.tail_slope() * c);
}

PLFunction plf_shift(const PLFunction& f, const Rat& c) {
    std::vector<PLFunction::Point> out = f.breakpoints();
    for (auto& p : out) p.v += c;
    if (f.domain().kind == DomainKind::Segment)
        return PLFunction::segment(f.domain().length, std::move(out));
    return PLFunction::ray(std::move(out), f.tail_slope());
}

PLFunction plf_combine(CombineOp op, const std::vector<PLFunction>& fs, const Rat& c) {
    if (fs.empty()) throw std::invalid_argument("plf_combine: empty operand list");
    switch (op) {
        case CombineOp::Scale: return plf_scale(fs.front(), c);
        case CombineOp::Shift: return plf_shift(fs.front(), c);
        default: break;
    }
    PLFunction acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) {
        switch (op) {
            case CombineOp::Min: acc = plf_min(acc, fs[i]); break;
            case CombineOp::Max: acc = plf_max(acc, fs[i]); break;
            case CombineOp::Sum: acc = plf_sum(acc, fs[i]); break;
            default: break;
        }
    }
    return acc;
}

ConcavityReport plf_concavity(const PLFunction& f) {
    std::vector<Rat> sl = f.piece_slopes();
    bool noninc = true, nondec = true;
    for (std::size_t i = 1; i < sl.size(); ++i) {
        if (sl[i] > sl[i - 1]) noninc = false;
        if (sl[i] < sl[i - 1]) nondec = false;
    }
    if (noninc && nondec) return {ConcavityReport::Verdict::Concave, true};
    if (noninc) return {ConcavityReport::Verdict::Concave, false};
    if (nondec) return {ConcavityReport::Verdict::Convex, false};
    return {ConcavityReport::Verdict::Neither, false};
}

}  // namespace convrad
