#include "corpus.hpp"

#include "visguard/cli_io.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace visguard::testing {

namespace {

Rational on_grid(double v) {
    return ratio(std::lround(v * 64.0), 64);
}

Ring star_ring(std::mt19937_64& rng, int k, double cx, double cy, double r_lo, double r_hi) {
    std::uniform_real_distribution<double> jitter(-0.3, 0.3), radius(r_lo, r_hi);
    Ring ring;
    for (int i = 0; i < k; ++i) {
        const double a = (i + 0.5 + jitter(rng)) * 2.0 * std::numbers::pi / k;
        const double r = radius(rng);
        ring.emplace_back(on_grid(cx + r * std::cos(a)), on_grid(cy + r * std::sin(a)));
    }
    return ring;
}

PolygonWithHoles random_star(std::uint64_t seed, int k, int holes) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pos(-4.0, 4.0);
    std::uniform_int_distribution<int> sides(3, 4);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Ring outer = star_ring(rng, k, 0.0, 0.0, 5.0, 12.0);
        std::vector<Ring> hs;
        for (int i = 0; i < holes; ++i) hs.push_back(star_ring(rng, sides(rng), pos(rng), pos(rng), 0.6, 1.4));
        try {
            return PolygonWithHoles::make(std::move(outer), std::move(hs));
        } catch (const ValidationError&) {
        }
    }
    throw std::runtime_error("corpus: could not generate a valid polygon");
}

Point P(long x, long y) { return Point(x, y); }
Point Q(const char* x, const char* y) { return Point(parse_rational(x), parse_rational(y)); }

}  // namespace

PolygonWithHoles l_polygon() {
    return PolygonWithHoles::make({P(0, 0), P(40, 0), P(40, 20), P(18, 21), P(20, 40), P(0, 40)});
}

PolygonWithHoles convex_pentagon() {
    // Rational points on the unit circle, scaled.
    return PolygonWithHoles::make({P(5, 0), Q("60/13", "25/13"), P(0, 5), Q("-4", "-3"), Q("3", "-4")});
}

PolygonWithHoles square_with_hole() {
    return PolygonWithHoles::make({P(0, 0), P(10, 0), P(10, 10), P(0, 10)},
                                  {{Q("4.1", "4"), Q("6", "4.3"), Q("5.9", "6"), Q("4", "5.7")}});
}

PolygonWithHoles two_hole_polygon() {
    return PolygonWithHoles::make({P(0, 0), P(20, 1), P(21, 12), P(1, 11)},
                                  {{Q("3", "3"), Q("7", "4.3"), Q("6", "8")}, {Q("12", "4.5"), Q("17", "5"), Q("15", "8.5"), Q("13", "8.2")}});
}

const std::vector<NamedPolygon>& corpus() {
    static const std::vector<NamedPolygon> all = [] {
        std::vector<NamedPolygon> out;
        out.push_back({"triangle", PolygonWithHoles::make({P(0, 0), P(7, 1), P(2, 5)})});
        out.push_back({"l_polygon", l_polygon()});
        out.push_back({"convex_pentagon", convex_pentagon()});
        out.push_back({"square_with_hole", square_with_hole()});
        out.push_back({"two_holes", two_hole_polygon()});
        out.push_back({"comb3", generate_comb(3)});
        out.push_back({"spiralish", PolygonWithHoles::make({P(0, 0), P(30, 1), P(31, 25), P(8, 27), P(9, 9),
                                                            P(20, 10), P(21, 17), P(16, 18), P(15, 14),
                                                            P(13, 21), P(26, 20), Q("24", "5.3"), Q("4", "3.7"), P(2, 31),
                                                            P(-1, 30)})});
        for (int i = 0; i < 10; ++i)
            out.push_back({"star" + std::to_string(i), random_star(100 + i, 7 + i % 7, 0)});
        for (int i = 0; i < 9; ++i)
            out.push_back({"star_hole" + std::to_string(i), random_star(200 + i, 6 + i % 5, 1)});
        for (int i = 0; i < 6; ++i)
            out.push_back({"star_2holes" + std::to_string(i), random_star(300 + i, 5 + i % 4, 2)});
        out.push_back({"comb2_hole", generate_comb(2, 1)});
        out.push_back({"comb3_hole", generate_comb(3, 1)});
        out.push_back({"spiral12", generate_spiral(12)});
        out.push_back({"gen_star_hole", generate_star(12, 1)});
        out.push_back({"gen_star_2holes", generate_star(14, 2)});
        out.push_back({"convex9", generate_convex(9)});
        return out;
    }();
    return all;
}

const PolygonWithHoles& corpus_polygon(std::string_view name) {
    for (const auto& entry : corpus())
        if (entry.name == name) return entry.polygon;
    throw std::out_of_range("no corpus polygon named " + std::string(name));
}

}  // namespace visguard::testing
