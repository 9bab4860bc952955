#include "properties.hpp"

#include "oracles.hpp"
#include "visguard/triangulate.hpp"
#include "visguard/visibility.hpp"

#include <algorithm>
#include <set>

namespace visguard::testing {

Tally& Tally::operator+=(const Tally& other) {
    if (violations == 0 && other.violations > 0) first = other.first;
    checks += other.checks;
    violations += other.violations;
    return *this;
}

namespace {

Ring ccw(Ring r) {
    if (signed_area(r) < 0) std::reverse(r.begin(), r.end());
    return r;
}

// Points of the pocket region strictly inside P.
std::vector<Point> sample_pocket(const PolygonWithHoles& P, const Pocket& pk, std::mt19937_64& rng, int count) {
    const std::vector<Ring> rings{ccw(pk.ring())};
    AreaSampler s(triangulate(rings));
    std::vector<Point> out;
    for (int tries = 0; tries < 20 * count && static_cast<int>(out.size()) < count; ++tries) {
        Point z = s.sample(rng);
        if (locate(P, z) == Location::Interior) out.push_back(std::move(z));
    }
    return out;
}

bool crosses(const Point& a, const Point& b, const Window& w) {
    return !std::holds_alternative<NoIntersection>(segment_intersection(Segment(a, b), Segment(w.base, w.end)));
}

std::string at(int v) { return "vertex " + std::to_string(v); }

std::vector<std::pair<Point, Point>> as_segments(const std::vector<Window>& ws) {
    std::vector<std::pair<Point, Point>> out;
    for (const Window& w : ws) out.emplace_back(w.base, w.end);
    return out;
}

}  // namespace

Tally component_sequence_law(const PolygonWithHoles& P) {
    Tally t;
    const int h = P.h();
    for (int v = 0; v < P.n(); ++v) {
        const auto seq = component_sequence(P, v).sequence;
        int trans = 0;
        for (const Window& w : visibility_polygon(P, v).windows) trans += w.kind == WindowKind::Trans;
        t.expect(trans <= 2 * h, [&] { return at(v) + " has " + std::to_string(trans) + " T-windows"; });
        t.expect(static_cast<int>(seq.size()) <= 2 * h + 1, [&] { return at(v) + " component sequence too long"; });
        t.expect(seq.front() == P.component(v) && seq.back() == seq.front(),
                 [&] { return at(v) + " component sequence does not start and end on its own component"; });
        t.expect(is_davenport_schinzel_2(seq), [&] { return at(v) + " component sequence is not DS(2)"; });
        t.expect(static_cast<int>(seq.size()) - 1 == trans,
                 [&] { return at(v) + " component changes differ from the T-window count"; });
    }
    return t;
}

Tally segment_crossing_law(const PolygonWithHoles& P, std::mt19937_64& rng, int segments) {
    Tally t;
    AreaSampler whole(triangulate(P));
    std::vector<std::pair<Point, Point>> segs;
    while (static_cast<int>(segs.size()) < segments) {
        Point a = whole.sample(rng), b = whole.sample(rng);
        if (sees(P, a, b)) segs.emplace_back(std::move(a), std::move(b));
    }
    for (int v = 0; v < P.n(); ++v) {
        const auto vis = visibility_polygon(P, v);
        for (const auto& [a, b] : segs) {
            int left = 0, right = 0, trans = 0;
            for (const Window& w : vis.windows) {
                if (!crosses(a, b, w)) continue;
                (w.kind == WindowKind::Left ? left : w.kind == WindowKind::Right ? right : trans)++;
            }
            t.expect(left <= 1 && right <= 1 && trans <= 2 * P.h(), [&] {
                return at(v) + " windows crossed by " + to_string(a) + "-" + to_string(b) + ": left " +
                       std::to_string(left) + " right " + std::to_string(right) + " trans " + std::to_string(trans);
            });
        }
    }
    return t;
}

Tally pocket_blindness(const PolygonWithHoles& P, std::mt19937_64& rng) {
    Tally t;
    AreaSampler whole(triangulate(P));
    for (int v = 0; v < P.n(); ++v) {
        for (const Window& w : visibility_polygon(P, v).windows) {
            if (w.kind == WindowKind::Trans) continue;
            const Pocket pk = pocket_of(P, w);
            t.expect(pk.chain.front() == w.base && pk.chain.back() == w.end,
                     [&] { return at(v) + " pocket chain does not run from base to end"; });
            t.expect(std::find(pk.chain.begin(), pk.chain.end(), P.vertex(v)) == pk.chain.end(),
                     [&] { return at(v) + " lies on its own pocket chain"; });
            const Ring ring = ccw(pk.ring());
            int pairs = 0;
            for (const Point& z : sample_pocket(P, pk, rng, 8)) {
                t.expect(!sees(P, P.vertex(v), z), [&] { return at(v) + " sees pocket point " + to_string(z); });
                for (int k = 0; k < 40 && pairs < 50; ++k) {
                    const Point y = whole.sample(rng);
                    if (orient(P.vertex(v), w.base, y) != w.shadow_side) continue;
                    if (ring_locate(ring, y) != Location::Exterior) continue;
                    ++pairs;
                    t.expect(!sees(P, z, y), [&] {
                        return at(v) + " pocket point " + to_string(z) + " sees outside point " + to_string(y);
                    });
                }
            }
        }
    }
    return t;
}

Tally right_pocket_blindness(const PolygonWithHoles& P, std::mt19937_64& rng) {
    Tally t;
    for (int x = 0; x < P.n(); ++x) {
        std::vector<std::vector<Point>> samples;
        for (const Window& w : visibility_polygon(P, x).windows)
            if (w.kind == WindowKind::Right) samples.push_back(sample_pocket(P, pocket_of(P, w), rng, 6));
        for (std::size_t i = 0; i < samples.size(); ++i)
            for (std::size_t j = i + 1; j < samples.size(); ++j)
                for (const Point& a : samples[i])
                    for (const Point& b : samples[j])
                        t.expect(!sees(P, a, b), [&] {
                            return at(x) + " right pockets see each other via " + to_string(a) + "-" + to_string(b);
                        });
    }
    return t;
}

Tally right_window_crossings(const PolygonWithHoles& P) {
    Tally t;
    std::vector<std::vector<Window>> right(static_cast<std::size_t>(P.n()));
    for (int v = 0; v < P.n(); ++v)
        for (const Window& w : visibility_polygon(P, v).windows)
            if (w.kind == WindowKind::Right) right[static_cast<std::size_t>(v)].push_back(w);
    for (int x = 0; x < P.n(); ++x) {
        for (int y = x + 1; y < P.n(); ++y) {
            std::set<Point, PointLess> meets;
            bool overlap = false;
            for (const Window& a : right[static_cast<std::size_t>(x)])
                for (const Window& b : right[static_cast<std::size_t>(y)]) {
                    auto r = segment_intersection(Segment(a.base, a.end), Segment(b.base, b.end));
                    if (auto* p = std::get_if<Point>(&r); p && !(a.base_vertex == b.base_vertex && *p == a.base))
                        meets.insert(*p);
                    overlap |= std::holds_alternative<Segment>(r);
                }
            t.expect(meets.size() <= 1 && !overlap, [&] {
                return "right windows of vertices " + std::to_string(x) + " and " + std::to_string(y) + " meet " +
                       std::to_string(meets.size()) + " times";
            });
        }
    }
    return t;
}

Tally trans_right_crossings(const PolygonWithHoles& P) {
    Tally t;
    if (P.h() == 0) return t;
    const std::vector<VisibilityPolygon> all = all_visibility_polygons(P);
    for (int j = 0; j < P.n(); ++j) {
        std::vector<std::pair<Window, Ring>> right;
        for (const Window& w : all[static_cast<std::size_t>(j)].windows)
            if (w.kind == WindowKind::Right) right.emplace_back(w, pocket_of(P, w).ring());
        for (int i = 0; i < P.n(); ++i) {
            if (i == j) continue;
            bool inside = false;
            for (const auto& [w, ring] : right) inside |= ring_locate(ring, P.vertex(i)) != Location::Exterior;
            if (inside) continue;
            for (const Window& tw : all[static_cast<std::size_t>(i)].windows) {
                if (tw.kind != WindowKind::Trans) continue;
                int crossed = 0;
                for (const auto& [w, ring] : right) crossed += crosses(tw.base, tw.end, w);
                t.expect(crossed <= 1, [&] {
                    return "a T-window of " + at(i) + " crosses " + std::to_string(crossed) + " right windows of " + at(j);
                });
            }
        }
    }
    return t;
}

Tally cell_equivalence(const Decomposition& D, int samples_per_cell, std::mt19937_64& rng) {
    Tally t;
    for (std::size_t f = 0; f < D.faces.size(); ++f) {
        const AreaSampler sampler(triangulate(D.face_rings(static_cast<int>(f))));
        for (int k = 0; k < samples_per_cell; ++k) {
            const Point q = sampler.sample(rng);
            t.expect(locate(D.source, q) == Location::Interior && visible_from(D.source, q) == D.faces[f].visible,
                     [&] { return "cell " + std::to_string(f) + " point " + to_string(q) + " sees a different set"; });
        }
    }
    return t;
}

Tally sink_parity(const Decomposition& D) {
    Tally t;
    std::vector<std::vector<Ring>> rings;
    std::vector<VertexSet> sets;
    for (std::size_t f = 0; f < D.faces.size(); ++f) {
        rings.push_back(D.face_rings(static_cast<int>(f)));
        sets.push_back(D.faces[f].visible);
    }
    const std::vector<int> dual = sinks(build_dual(D));
    const std::vector<int> brute = brute_force_sinks(rings, sets);
    t.expect(dual == brute, [&] {
        return "dual sinks " + std::to_string(dual.size()) + " vs brute force " + std::to_string(brute.size());
    });
    return t;
}

Tally arrangement_parity(const PolygonWithHoles& P) {
    Tally t;
    const auto ws = collect_windows(P);
    const Decomposition D = build_decomposition(P, ws);
    const NaiveArrangement naive = naive_arrangement(P, as_segments(ws));
    t.expect(static_cast<int>(D.faces.size()) == naive.inside_faces, [&] {
        return "faces " + std::to_string(D.faces.size()) + " vs naive " + std::to_string(naive.inside_faces);
    });
    t.expect(static_cast<int>(D.vertices.size()) == naive.vertices, [&] { return std::string("vertex count differs"); });
    t.expect(static_cast<int>(D.half_edges.size()) == 2 * naive.edges, [&] { return std::string("edge count differs"); });
    t.expect(D.crossing_count == naive.crossings, [&] { return std::string("crossing count differs"); });
    Rational total(0);
    for (std::size_t f = 0; f < D.faces.size(); ++f)
        for (const Ring& r : D.face_rings(static_cast<int>(f))) total += signed_area(r);
    t.expect(total == P.area(), [&] { return std::string("cell areas do not sum to the polygon area"); });
    return t;
}

}  // namespace visguard::testing
