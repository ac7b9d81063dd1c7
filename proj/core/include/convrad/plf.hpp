#pragma once

#include <convrad/rational.hpp>

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace convrad {

// Direction of a one-sided derivative. Forward means increasing parameter,
// Backward means decreasing parameter; the slope is the rate of change per
// unit of distance travelled in that direction, so the backward slope at an
// interior point is the negative of the left derivative.
enum class Dir { Forward, Backward };

enum class DomainKind { Segment, Ray };

struct PLDomain {
    DomainKind kind = DomainKind::Segment;
    Rat length;  // Segment only; > 0

    static PLDomain segment(Rat L) { return {DomainKind::Segment, std::move(L)}; }
    static PLDomain ray() { return {DomainKind::Ray, Rat(0)}; }

    friend bool operator==(const PLDomain& a, const PLDomain& b) {
        return a.kind == b.kind && (a.kind == DomainKind::Ray || a.length == b.length);
    }
};

// Exact piecewise-linear function of one rational parameter, on a closed
// segment [0, L] or a half-open ray [0, inf). Breakpoints are (t, value)
// pairs with strictly increasing t; a segment carries breakpoints at 0 and L,
// a ray continues affinely with tail_slope beyond its last breakpoint.
// Values between breakpoints are affine interpolation, continuity is
// structural. Instances are immutable after construction.
class PLFunction {
public:
    struct Point {
        Rat t;
        Rat v;
        friend bool operator==(const Point& a, const Point& b) { return a.t == b.t && a.v == b.v; }
    };

    PLFunction() : dom_(PLDomain::segment(Rat(1))), bps_{{Rat(0), Rat(0)}, {Rat(1), Rat(0)}} {}

    static PLFunction segment(Rat length, std::vector<Point> bps);
    static PLFunction ray(std::vector<Point> bps, Rat tail_slope);
    static PLFunction constant(const PLDomain& dom, const Rat& v);
    // Affine function v0 + slope * t on the given domain.
    static PLFunction affine(const PLDomain& dom, const Rat& v0, const Rat& slope);

    const PLDomain& domain() const { return dom_; }
    const std::vector<Point>& breakpoints() const { return bps_; }
    const Rat& tail_slope() const { return tail_; }

    bool in_domain(const Rat& t) const;
    Rat eval(const Rat& t) const;
    Rat slope(const Rat& t, Dir dir) const;

    // Slope on the germ out of an endpoint: start_slope is the forward slope
    // at t = 0; end_slope (segments) the backward slope at t = L.
    Rat start_slope() const { return slope(Rat(0), Dir::Forward); }
    Rat end_slope() const;
    // Eventual slope of a ray (== tail_slope) or the last-piece slope of a
    // segment, in forward orientation.
    Rat final_slope() const;

    Rat start_value() const { return bps_.front().v; }
    Rat end_value() const;  // segments only

    bool is_constant() const;
    // Interior parameters where the slope changes; on rays this includes the
    // last breakpoint when the tail slope differs.
    std::vector<Rat> break_params() const;
    // Forward slope of each affine piece, in order (rays end with the tail).
    std::vector<Rat> piece_slopes() const;

    friend bool operator==(const PLFunction& a, const PLFunction& b) {
        return a.dom_ == b.dom_ && a.bps_ == b.bps_ && (a.dom_.kind == DomainKind::Segment || a.tail_ == b.tail_);
    }

    std::string str() const;

private:
    PLDomain dom_;
    std::vector<Point> bps_;
    Rat tail_;  // rays only

    void validate_and_normalize();
    friend PLFunction zip_with(const PLFunction&, const PLFunction&, bool is_min, bool insert_crossings);
};

PLFunction plf_sum(const PLFunction& a, const PLFunction& b);
PLFunction plf_min(const PLFunction& a, const PLFunction& b);
PLFunction plf_max(const PLFunction& a, const PLFunction& b);
PLFunction plf_scale(const PLFunction& f, const Rat& c);
PLFunction plf_shift(const PLFunction& f, const Rat& c);

enum class CombineOp { Min, Max, Sum, Scale, Shift };

// Pointwise combination of functions on identical domains, re-expressed with
// a minimal breakpoint set. Scale/Shift take the parameter c and a single
// function. Throws std::invalid_argument on an empty list or mismatched
// domains.
PLFunction plf_combine(CombineOp op, const std::vector<PLFunction>& fs, const Rat& c = Rat(0));

struct ConcavityReport {
    enum class Verdict { Concave, Convex, Neither };
    Verdict verdict;
    bool affine;  // affine functions report Concave with this flag set
};

ConcavityReport plf_concavity(const PLFunction& f);

}  // namespace convrad
