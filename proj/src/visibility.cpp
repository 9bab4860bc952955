#include "visguard/visibility.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

namespace visguard {

const char* to_string(WindowKind kind) {
    switch (kind) {
        case WindowKind::Left: return "Left";
        case WindowKind::Right: return "Right";
        case WindowKind::Trans: return "Trans";
    }
    return "?";
}

namespace {

// Orders edges crossing a common ray from V: true iff e1 is hit first.
struct NearerEdge {
    const PolygonWithHoles* P;
    const Point* V;

    bool operator()(int e1, int e2) const {
        if (e1 == e2) return false;
        const Point& p1 = P->vertex(e1);
        const Point& q1 = P->vertex(P->next(e1));
        const Point& p2 = P->vertex(e2);
        const Point& q2 = P->vertex(P->next(e2));
        const int ov2 = orient(p2, q2, *V);
        const int a = orient(p2, q2, p1) * ov2;
        const int b = orient(p2, q2, q1) * ov2;
        if (a >= 0 && b >= 0) return true;
        if (a <= 0 && b <= 0) return false;
        const int ov1 = orient(p1, q1, *V);
        const int c = orient(p1, q1, p2) * ov1;
        const int d = orient(p1, q1, q2) * ov1;
        return !(c >= 0 && d >= 0);
    }
};

bool edge_touches(const PolygonWithHoles& P, int e, int v) { return e == v || P.next(e) == v; }

int other_end(const PolygonWithHoles& P, int e, int u) { return e == u ? P.next(e) : e; }

}  // namespace

VisibilityPolygon visibility_polygon(const PolygonWithHoles& P, int v) {
    const int n = P.n();
    const Point& V = P.vertex(v);
    const int ib = P.next(v);
    const int ia = P.prev(v);
    const Point& B = P.vertex(ib);

    // Angle measured counterclockwise from the ray V -> B.
    auto half = [&](const Point& u) {
        const int o = orient(V, B, u);
        return (o > 0 || (o == 0 && dot_sign(V, B, V, u) > 0)) ? 0 : 1;
    };
    auto angle_less = [&](int i, int j) {
        const Point& u = P.vertex(i);
        const Point& w = P.vertex(j);
        const int hu = half(u), hw = half(w);
        if (hu != hw) return hu < hw;
        return orient(V, u, w) > 0;
    };

    std::vector<int> events;
    for (int u = 0; u < n; ++u)
        if (u != v && !angle_less(ia, u)) events.push_back(u);
    std::sort(events.begin(), events.end(), angle_less);

    NearerEdge nearer{&P, &V};
    std::set<int, NearerEdge> active(nearer);
    for (int e = 0; e < n; ++e) {
        if (edge_touches(P, e, v) || edge_touches(P, e, ib)) continue;
        const Point& p = P.vertex(e);
        const Point& q = P.vertex(P.next(e));
        const int sp = orient(V, B, p);
        const int sq = orient(V, B, q);
        if (sp * sq < 0 && orient(p, q, V) * sp < 0) active.insert(e);
    }

    auto hit = [&](int e, int u) -> Point {
        if (edge_touches(P, e, u)) return P.vertex(u);
        return line_intersection(V, P.vertex(u), P.vertex(e), P.vertex(P.next(e)));
    };

    VisibilityPolygon out;
    out.owner = P.ref(v);
    out.visible.resize(static_cast<std::size_t>(n));
    out.visible.set(static_cast<std::size_t>(v));
    out.region.push_back(V);
    auto push = [&](const Point& p) {
        if (out.region.back() != p) out.region.push_back(p);
    };

    for (int u : events) {
        const Point& U = P.vertex(u);
        const bool first = u == ib;
        const bool last = u == ia;
        const int incident[2] = {u, P.prev(u)};

        std::optional<int> front_before;
        if (!first) {
            if (active.empty()) throw std::logic_error("visibility_polygon: ray escapes P");
            front_before = *active.begin();
        }
        for (int e : incident) {
            if (edge_touches(P, e, v)) continue;
            if (orient(V, U, P.vertex(other_end(P, e, u))) < 0) active.erase(e);
        }
        bool visible = first || last;
        if (!visible) {
            if (active.empty()) {
                visible = true;
            } else {
                const int f = *active.begin();
                const Point& fp = P.vertex(f);
                const Point& fq = P.vertex(P.next(f));
                visible = orient(fp, fq, U) * orient(fp, fq, V) > 0;
            }
        }
        if (!last) {
            for (int e : incident) {
                if (edge_touches(P, e, v)) continue;
                if (orient(V, U, P.vertex(other_end(P, e, u))) > 0) active.insert(e);
            }
        }
        if (!visible) continue;
        out.visible.set(static_cast<std::size_t>(u));

        std::optional<int> front_after;
        if (!last) {
            if (active.empty()) throw std::logic_error("visibility_polygon: ray escapes P");
            front_after = *active.begin();
        }
        const Point before = first ? U : hit(*front_before, u);
        const Point after = last ? U : hit(*front_after, u);
        push(before);
        push(after);
        if (before == after) continue;

        Window w;
        w.owner = out.owner;
        w.base = U;
        w.base_vertex = u;
        if (before == U) {
            w.end = after;
            w.end_edge = *front_after;
        } else if (after == U) {
            w.end = before;
            w.end_edge = *front_before;
        } else {
            throw std::logic_error("visibility_polygon: depth jump away from a vertex");
        }
        const int side_vertex = P.next(u) == v ? P.prev(u) : P.next(u);
        w.shadow_side = orient(V, U, P.vertex(side_vertex));
        w.kind = classify_window(P, w);
        out.windows.push_back(std::move(w));
    }
    return out;
}

std::vector<VisibilityPolygon> all_visibility_polygons(const PolygonWithHoles& P) {
    std::vector<VisibilityPolygon> out;
    out.reserve(static_cast<std::size_t>(P.n()));
    for (int v = 0; v < P.n(); ++v) out.push_back(visibility_polygon(P, v));
    return out;
}

WindowKind classify_window(const PolygonWithHoles& P, const Window& w) {
    if (P.component(w.base_vertex) != P.component(w.end_edge)) return WindowKind::Trans;
    return w.shadow_side > 0 ? WindowKind::Left : WindowKind::Right;
}

ComponentSequence component_sequence(const PolygonWithHoles& P, int v) {
    const int n = P.n();
    const Point& V = P.vertex(v);
    const Point& A = P.vertex(P.prev(v));
    const Point& B = P.vertex(P.next(v));
    const bool reflex = P.is_reflex(v);

    const Rational sx = (A.x() - V.x()) + (B.x() - V.x());
    const Rational sy = (A.y() - V.y()) + (B.y() - V.y());
    const Point S = reflex ? Point(V.x() + sx, V.y() + sy) : Point(V.x() - sx, V.y() - sy);

    // Clockwise angle from the ray V -> S.
    auto half = [&](const Point& u) {
        const int o = orient(V, S, u);
        return (o < 0 || (o == 0 && dot_sign(V, S, V, u) > 0)) ? 0 : 1;
    };
    std::vector<Point> dirs;
    for (int u = 0; u < n; ++u)
        if (u != v) dirs.push_back(P.vertex(u));
    std::sort(dirs.begin(), dirs.end(), [&](const Point& a, const Point& b) {
        const int ha = half(a), hb = half(b);
        if (ha != hb) return ha < hb;
        return orient(V, a, b) < 0;
    });
    dirs.insert(dirs.begin(), S);
    dirs.push_back(S);

    auto inside_sector = [&](const Point& m) {
        if (!reflex) return orient(V, B, m) > 0 && orient(V, m, A) > 0;
        return !(orient(V, A, m) >= 0 && orient(V, m, B) >= 0);
    };

    ComponentSequence out;
    out.owner = P.ref(v);
    out.sequence.push_back(P.component(v));
    for (std::size_t k = 0; k + 1 < dirs.size(); ++k) {
        const Point& d0 = dirs[k];
        const Point& d1 = dirs[k + 1];
        const int turn = orient(V, d0, d1);
        if (turn == 0 && dot_sign(V, d0, V, d1) > 0) continue;  // empty wedge
        const Rational ax = d0.x() - V.x(), ay = d0.y() - V.y();
        Point M;
        if (turn < 0) {
            M = Point(V.x() + ax + (d1.x() - V.x()), V.y() + ay + (d1.y() - V.y()));
        } else {
            M = Point(V.x() + ay, V.y() - ax);  // d0 rotated a quarter turn clockwise
        }
        int comp = P.component(v);
        if (inside_sector(M)) {
            std::optional<Point> best;
            int best_edge = -1;
            for (int e = 0; e < n; ++e) {
                if (edge_touches(P, e, v)) continue;
                const Point& p = P.vertex(e);
                const Point& q = P.vertex(P.next(e));
                const int sp = orient(V, M, p);
                const int sq = orient(V, M, q);
                if (sp * sq >= 0 || orient(p, q, V) * sp >= 0) continue;
                Point x = line_intersection(V, M, p, q);
                if (!best || dot_sign(x, *best, V, M) > 0) {
                    best = std::move(x);
                    best_edge = e;
                }
            }
            if (best_edge < 0) throw std::logic_error("component_sequence: ray escapes P");
            comp = P.component(best_edge);
        }
        if (comp != out.sequence.back()) out.sequence.push_back(comp);
    }
    return out;
}

Pocket pocket_of(const PolygonWithHoles& P, const Window& w) {
    if (w.kind == WindowKind::Trans) throw std::invalid_argument("pocket_of: T-windows have no pocket");
    const Point& V = P.vertex(w.owner.index);
    const int p = w.end_edge;
    const int q = P.next(p);
    const bool forward = orient(V, w.base, P.vertex(q)) == w.shadow_side;

    std::vector<Point> rev{w.end};
    int cur = forward ? q : p;
    for (int steps = 0;; ++steps) {
        if (steps > P.ring_size(P.component(p))) throw std::logic_error("pocket_of: base not on the end ring");
        rev.push_back(P.vertex(cur));
        if (cur == w.base_vertex) break;
        cur = forward ? P.next(cur) : P.prev(cur);
    }
    Pocket out;
    out.window = w;
    out.side = w.kind;
    out.chain.assign(rev.rbegin(), rev.rend());
    return out;
}

bool is_davenport_schinzel_2(std::span<const int> seq) {
    for (std::size_t i = 1; i < seq.size(); ++i)
        if (seq[i] == seq[i - 1]) return false;
    std::vector<int> symbols(seq.begin(), seq.end());
    std::sort(symbols.begin(), symbols.end());
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        for (std::size_t j = i + 1; j < symbols.size(); ++j) {
            std::vector<int> sub;
            for (int s : seq) {
                if (s != symbols[i] && s != symbols[j]) continue;
                if (sub.empty() || sub.back() != s) sub.push_back(s);
            }
            if (sub.size() >= 4) return false;
        }
    }
    return true;
}

}  // namespace visguard
