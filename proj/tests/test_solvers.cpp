#include "corpus.hpp"
#include "visguard/rangespace.hpp"
#include "visguard/solvers.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace visguard;
using visguard::testing::corpus;
using visguard::testing::corpus_polygon;

namespace {

VertexSet set_of(int n, std::initializer_list<int> members) {
    VertexSet s(static_cast<std::size_t>(n));
    for (int m : members) s.set(static_cast<std::size_t>(m));
    return s;
}

std::vector<int> all_vertices(int n) {
    std::vector<int> out;
    for (int v = 0; v < n; ++v) out.push_back(v);
    return out;
}

// Calls fn on every k-subset of 0..n-1 until it returns true.
template <class Fn>
bool any_subset(int n, int k, Fn fn) {
    std::vector<int> pick(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
    if (k > n) return false;
    for (;;) {
        if (fn(pick)) return true;
        int i = k - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return false;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace

TEST_CASE("make_range_space deduplicates and indexes") {
    const int n = 4;
    const RangeSpace rs = make_range_space(n, {set_of(n, {0, 1}), set_of(n, {2}), set_of(n, {0, 1}), set_of(n, {1, 3})},
                                           {{7}, {8}, {9}, {10}});
    REQUIRE(rs.range_count() == 3);
    CHECK(rs.origin[0] == std::vector<int>{7, 9});
    CHECK(rs.elements_of[2] == std::vector<int>{1, 3});
    CHECK(rs.ranges_of[1] == std::vector<int>{0, 2});
    for (int r = 0; r < rs.range_count(); ++r)
        for (int e = 0; e < n; ++e) {
            const auto& rl = rs.ranges_of[static_cast<std::size_t>(e)];
            CHECK(rs.ranges[static_cast<std::size_t>(r)].test(static_cast<std::size_t>(e)) ==
                  (std::find(rl.begin(), rl.end(), r) != rl.end()));
        }
    CHECK_THROWS_AS(make_range_space(n, {VertexSet(4)}), std::invalid_argument);
    CHECK_THROWS_AS(make_range_space(n, {VertexSet(3, 1)}), std::invalid_argument);
}

TEST_CASE("range space of a convex polygon") {
    const auto P = visguard::testing::convex_pentagon();
    const RangeSpace rs = build_range_space(P);
    REQUIRE(rs.range_count() == 1);
    CHECK(rs.ranges[0].count() == 5);
    for (int v = 0; v < 5; ++v) {
        const std::vector<int> g{v};
        CHECK(covers(rs, g));
        CHECK(coverage_audit(P, g, 10000, 1).empty());
    }
    CHECK(exact_guards(rs).guards.size() == 1);
}

TEST_CASE("L polygon ranges equal direct visibility at the representatives") {
    const Decomposition D = decompose(visguard::testing::l_polygon());
    const RangeSpace rs = build_range_space(D);
    for (int r = 0; r < rs.range_count(); ++r)
        for (int f : rs.origin[static_cast<std::size_t>(r)])
            CHECK(rs.ranges[static_cast<std::size_t>(r)] ==
                  visible_from(D.source, D.faces[static_cast<std::size_t>(f)].representative));
}

TEST_CASE("comb with three teeth") {
    const auto& P = corpus_polygon("comb3");
    REQUIRE(P.n() == 12);
    const RangeSpace rs = build_range_space(P);

    // three pairwise disjoint ranges witness opt >= 3
    const bool disjoint_triple = any_subset(rs.range_count(), 3, [&](const std::vector<int>& t) {
        const auto& a = rs.ranges[static_cast<std::size_t>(t[0])];
        const auto& b = rs.ranges[static_cast<std::size_t>(t[1])];
        const auto& c = rs.ranges[static_cast<std::size_t>(t[2])];
        return !a.intersects(b) && !a.intersects(c) && !b.intersects(c);
    });
    CHECK(disjoint_triple);

    CHECK_FALSE(any_subset(P.n(), 2, [&](const std::vector<int>& g) { return covers(rs, g); }));

    const GuardSet exact = exact_guards(rs);
    CHECK(exact.guards.size() == 3);
    const GuardSet greedy = greedy_guards(rs);
    CHECK(greedy.guards.size() >= 3);
    CHECK(coverage_audit(P, greedy.guards, 10000, 0).empty());

    // dropping any guard of a minimum set leaves uncovered witnesses
    for (std::size_t i = 0; i < exact.guards.size(); ++i) {
        std::vector<int> deficient = exact.guards;
        deficient.erase(deficient.begin() + static_cast<std::ptrdiff_t>(i));
        CHECK_FALSE(covers(rs, deficient));
        CHECK_FALSE(coverage_audit(P, deficient, 10000, 0).empty());
    }
}

TEST_CASE("covers basics") {
    for (const auto& [name, P] : corpus()) {
        CAPTURE(name);
        const RangeSpace rs = build_range_space(P);
        CHECK(covers(rs, all_vertices(P.n())));
        CHECK_FALSE(covers(rs, std::vector<int>{}));
    }
}

TEST_CASE("dedup soundness and monotonicity") {
    std::mt19937_64 rng(5);
    for (const auto& [name, P] : corpus()) {
        CAPTURE(name);
        const Decomposition D = decompose(P);
        const RangeSpace rs = build_range_space(D);
        std::vector<VertexSet> raw;
        for (const VertexSet& r : rs.ranges) {
            raw.push_back(r);
            raw.push_back(r);
        }
        const int n = P.n();
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<int> g, bigger;
            for (int v = 0; v < n; ++v) {
                const bool in = rng() % 3 == 0;
                if (in) g.push_back(v);
                if (in || rng() % 2 == 0) bigger.push_back(v);
            }
            bool raw_cover = true;
            for (const VertexSet& r : raw) {
                bool hit = false;
                for (int v : g) hit |= r.test(static_cast<std::size_t>(v));
                raw_cover &= hit;
            }
            CHECK(covers(rs, g) == raw_cover);
            if (covers(rs, g)) CHECK(covers(rs, bigger));
        }
    }
}

TEST_CASE("greedy examples") {
    {
        const RangeSpace rs = make_range_space(4, {set_of(4, {0, 1, 2, 3})});
        CHECK(greedy_guards(rs).guards == std::vector<int>{0});
    }
    {
        const RangeSpace rs = make_range_space(3, {set_of(3, {0, 1}), set_of(3, {1, 2}), set_of(3, {2})});
        const GuardSet g = greedy_guards(rs);
        CHECK(g.guards == std::vector<int>{1, 2});
        CHECK(g.iterations == 2);
        CHECK(g.method == "greedy");
    }
}

TEST_CASE("exact search examples") {
    const RangeSpace rs = make_range_space(5, {set_of(5, {3, 4}), set_of(5, {0, 4}), set_of(5, {1, 2})});
    CHECK(exact_guards(rs).guards == std::vector<int>{1, 4});
    const RangeSpace big = make_range_space(21, {VertexSet(21, 1)});
    CHECK_THROWS_AS(exact_guards(big), std::invalid_argument);
    CHECK(exact_guards(big, 21).guards.size() == 1);

    const RangeSpace hole = build_range_space(visguard::testing::square_with_hole());
    const GuardSet g = exact_guards(hole);
    CHECK(covers(hole, g.guards));
    CHECK_FALSE(any_subset(8, static_cast<int>(g.guards.size()) - 1, [&](const std::vector<int>& s) { return covers(hole, s); }));
}

TEST_CASE("greedy and exact on the corpus") {
    for (const auto& [name, P] : corpus()) {
        CAPTURE(name);
        const RangeSpace rs = build_range_space(P);
        const GuardSet greedy = greedy_guards(rs);
        const GuardSet exact = exact_guards(rs);
        CHECK(covers(rs, greedy.guards));
        CHECK(covers(rs, exact.guards));
        CHECK(std::is_sorted(greedy.guards.begin(), greedy.guards.end()));
        CHECK(greedy_guards(rs).guards == greedy.guards);
        CHECK(exact_guards(rs).guards == exact.guards);
        const double bound = std::log(static_cast<double>(rs.range_count())) + 1.0;
        CHECK(static_cast<double>(greedy.guards.size()) <= bound * static_cast<double>(exact.guards.size()));
        CHECK(exact.guards.size() <= greedy.guards.size());
        const int k = static_cast<int>(exact.guards.size());
        CHECK_FALSE(any_subset(P.n(), k - 1, [&](const std::vector<int>& s) { return covers(rs, s); }));
    }
}

TEST_CASE("verify_guard_set") {
    const auto P = visguard::testing::square_with_hole();
    const RangeSpace rs = build_range_space(P);
    const VerifyReport none = verify_guard_set(P, rs, {}, {.samples = 2000});
    CHECK_FALSE(none.covers);
    CHECK_FALSE(none.audit_failures.empty());
    CHECK_FALSE(none.ok());
    const VerifyReport all = verify_guard_set(P, rs, all_vertices(P.n()), {.samples = 2000});
    CHECK(all.ok());
    REQUIRE(all.opt.has_value());
    CHECK(*all.ratio == doctest::Approx(8.0 / *all.opt));

    for (const auto& [name, Q] : corpus()) {
        CAPTURE(name);
        const RangeSpace qrs = build_range_space(Q);
        const GuardSet g = greedy_guards(qrs);
        const VerifyReport report = verify_guard_set(Q, qrs, g.guards, {.samples = 10000, .seed = 3});
        CHECK(report.ok());
        REQUIRE(report.ratio.has_value());
        CHECK(*report.ratio <= std::log(static_cast<double>(qrs.range_count())) + 1.0);
    }
}
