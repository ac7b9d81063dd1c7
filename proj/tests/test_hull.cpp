#include <convrad/hull.hpp>

#include <doctest.h>

#include <random>

using namespace convrad;

namespace {

// Independent oracle: the hull boundary value at abscissa k is the extreme
// chord evaluation over all present-point pairs. Slopes follow by
// differencing consecutive boundary values.
std::vector<Rat> hull_slopes_by_chords(const HullPoints& pts, HullSide side) {
    long lo = 0, hi = 0;
    bool first = true;
    for (const auto& e : pts.points)
        if (e.value) {
            if (first) lo = e.j;
            hi = e.j;
            first = false;
        }
    std::vector<Rat> slopes;
    Rat prev = hull_value(pts, side, lo);
    for (long k = lo + 1; k <= hi; ++k) {
        Rat cur = hull_value(pts, side, k);
        slopes.push_back(cur - prev);
        prev = cur;
    }
    return slopes;
}

}  // namespace

TEST_CASE("single edge repeats its slope across the span") {
    HullPoints pts = HullPoints::dense({Rat(0), std::nullopt, Rat(-4)});
    auto s = newton_hull(pts, HullSide::LowerConvex);
    REQUIRE(s.size() == 2);
    CHECK(s[0] == Rat(-2));
    CHECK(s[1] == Rat(-2));
}

TEST_CASE("middle point below the chord shows up in the lower hull") {
    HullPoints pts = HullPoints::dense({Rat(0), Rat(-3), Rat(-4)});
    auto s = newton_hull(pts, HullSide::LowerConvex);
    REQUIRE(s.size() == 2);
    CHECK(s[0] == Rat(-3));
    CHECK(s[1] == Rat(-1));
    CHECK(s == hull_slopes_by_chords(pts, HullSide::LowerConvex));
}

TEST_CASE("upper concave hull of the worked coefficients") {
    HullPoints pts = HullPoints::dense({Rat(0), Rat(2), Rat(3)});
    auto s = newton_hull(pts, HullSide::UpperConcave);
    REQUIRE(s.size() == 2);
    CHECK(s[0] == Rat(2));
    CHECK(s[1] == Rat(1));
}

TEST_CASE("degenerate input refuses") {
    HullPoints one = HullPoints::dense({Rat(5)});
    CHECK_THROWS_AS(newton_hull(one, HullSide::LowerConvex), std::invalid_argument);
    HullPoints none = HullPoints::dense({std::nullopt, std::nullopt});
    CHECK_THROWS_AS(newton_hull(none, HullSide::UpperConcave), std::invalid_argument);
}

TEST_CASE("hull properties on random integer-valued points") {
    std::mt19937_64 rng(23);
    for (int iter = 0; iter < 300; ++iter) {
        long r = 2 + static_cast<long>(rng() % 6);
        std::vector<std::optional<Rat>> vals;
        for (long j = 0; j <= r; ++j) {
            if (j > 0 && rng() % 4 == 0)
                vals.push_back(std::nullopt);
            else
                vals.push_back(Rat(static_cast<long>(rng() % 17) - 8));
        }
        if (!vals[0]) vals[0] = Rat(0);
        HullPoints pts = HullPoints::dense(vals);
        if (pts.present_count() < 2) continue;
        for (HullSide side : {HullSide::UpperConcave, HullSide::LowerConvex}) {
            auto s = newton_hull(pts, side);
            CHECK(s == hull_slopes_by_chords(pts, side));
            // monotone in the stated direction
            for (std::size_t i = 1; i < s.size(); ++i) {
                if (side == HullSide::UpperConcave)
                    CHECK(s[i] <= s[i - 1]);
                else
                    CHECK(s[i] >= s[i - 1]);
            }
            // total rise equals last minus first present value
            Rat rise(0);
            for (const Rat& x : s) rise += x;
            std::optional<Rat> first, last;
            for (const auto& e : pts.points)
                if (e.value) {
                    if (!first) first = *e.value;
                    last = *e.value;
                }
            CHECK(rise == *last - *first);
            // integer points over index span {0..r}: slope denominators
            // bounded by the span
            for (const Rat& x : s) CHECK(x.den_leq(static_cast<unsigned long>(r)));
        }
    }
}
