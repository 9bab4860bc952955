#include "visguard/arrangement.hpp"

#include "visguard/triangulate.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>

namespace visguard {

namespace {

struct PointPairLess {
    bool operator()(const std::pair<Point, Point>& a, const std::pair<Point, Point>& b) const {
        PointLess less;
        if (less(a.first, b.first)) return true;
        if (less(b.first, a.first)) return false;
        return less(a.second, b.second);
    }
};

}  // namespace

std::vector<Window> collect_windows(const PolygonWithHoles& P) {
    std::vector<Window> out;
    std::set<std::pair<Point, Point>, PointPairLess> seen;
    for (int v = 0; v < P.n(); ++v) {
        for (Window& w : visibility_polygon(P, v).windows) {
            auto key = PointLess{}(w.base, w.end) ? std::pair(w.base, w.end) : std::pair(w.end, w.base);
            if (seen.insert(std::move(key)).second) out.push_back(std::move(w));
        }
    }
    return out;
}

namespace {

// Sweep from top to bottom; within a row, left to right.
struct EventLess {
    bool operator()(const Point& a, const Point& b) const {
        const int cy = compare(a.y(), b.y());
        if (cy != 0) return cy > 0;
        return compare(a.x(), b.x()) < 0;
    }
};

struct SweepSegment {
    Point upper;
    Point lower;
    bool horizontal;
};

class Sweep {
public:
    explicit Sweep(std::vector<SweepSegment> segs) : segs_(std::move(segs)), status_(StatusLess{this}) {}

    // Points on each segment in sweep order, endpoints included.
    std::vector<std::vector<Point>> run();

private:
    struct Probe {
        const Point* p;
    };

    struct StatusLess {
        using is_transparent = void;
        const Sweep* sweep;

        bool operator()(int a, int b) const { return sweep->segment_less(a, b); }
        bool operator()(int a, Probe p) const { return compare(sweep->x_at(a), p.p->x()) < 0; }
        bool operator()(Probe p, int b) const { return compare(p.p->x(), sweep->x_at(b)) < 0; }
    };

    Rational x_at(int s) const {
        const SweepSegment& g = segs_[static_cast<std::size_t>(s)];
        if (g.horizontal) return std::max(current_.x(), g.upper.x());
        const Point& a = g.upper;
        const Point& b = g.lower;
        if (current_.y() == a.y()) return a.x();
        if (current_.y() == b.y()) return b.x();
        return a.x() + (current_.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
    }

    bool segment_less(int s1, int s2) const {
        if (s1 == s2) return false;
        const Rational x1 = x_at(s1);
        const Rational x2 = x_at(s2);
        const int c = compare(x1, x2);
        if (c != 0) return c < 0;
        const SweepSegment& g1 = segs_[static_cast<std::size_t>(s1)];
        const SweepSegment& g2 = segs_[static_cast<std::size_t>(s2)];
        if (g1.horizontal != g2.horizontal) return g2.horizontal;
        if (g1.horizontal) return s1 < s2;
        // Order just below the common point q.
        const Point q(x1, current_.y());
        const int o = orient(q, g2.lower, g1.lower);
        if (o != 0) return o < 0;
        return s1 < s2;
    }

    void find_new_event(int a, int b, const Point& p) {
        const SweepSegment& ga = segs_[static_cast<std::size_t>(a)];
        const SweepSegment& gb = segs_[static_cast<std::size_t>(b)];
        SegmentIntersection x = segment_intersection(Segment(ga.upper, ga.lower), Segment(gb.upper, gb.lower));
        if (std::holds_alternative<Segment>(x)) throw std::logic_error("arrangement: overlapping segments");
        if (const Point* q = std::get_if<Point>(&x)) {
            if (EventLess{}(p, *q)) queue_.try_emplace(*q);
        }
    }

    std::vector<SweepSegment> segs_;
    std::map<Point, std::vector<int>, EventLess> queue_;  // value: segments with this upper endpoint
    std::set<int, StatusLess> status_;
    Point current_;
};

std::vector<std::vector<Point>> Sweep::run() {
    std::vector<std::vector<Point>> points(segs_.size());
    for (std::size_t s = 0; s < segs_.size(); ++s) {
        queue_[segs_[s].upper].push_back(static_cast<int>(s));
        queue_.try_emplace(segs_[s].lower);
    }
    while (!queue_.empty()) {
        auto node = queue_.extract(queue_.begin());
        const Point p = std::move(node.key());
        const std::vector<int>& upper = node.mapped();
        current_ = p;

        auto [lo, hi] = status_.equal_range(Probe{&p});
        std::vector<int> lower_or_contain(lo, hi);
        for (int s : lower_or_contain) points[static_cast<std::size_t>(s)].push_back(p);
        for (int s : upper) points[static_cast<std::size_t>(s)].push_back(p);
        status_.erase(lo, hi);

        std::vector<int> inserted;
        for (int s : lower_or_contain)
            if (segs_[static_cast<std::size_t>(s)].lower != p) inserted.push_back(s);
        inserted.insert(inserted.end(), upper.begin(), upper.end());
        for (int s : inserted) status_.insert(s);

        if (inserted.empty()) {
            auto right = status_.lower_bound(Probe{&p});
            if (right != status_.end() && right != status_.begin()) find_new_event(*std::prev(right), *right, p);
        } else {
            auto [a, b] = status_.equal_range(Probe{&p});
            if (a != status_.begin()) find_new_event(*std::prev(a), *a, p);
            if (b != status_.end()) find_new_event(*std::prev(b), *b, p);
        }
    }
    return points;
}

struct PointIndex {
    std::map<Point, int, PointLess> ids;
    std::vector<Point> points;

    int get(const Point& p) {
        auto [it, fresh] = ids.try_emplace(p, static_cast<int>(points.size()));
        if (fresh) points.push_back(p);
        return it->second;
    }
};

// Half-plane of the direction (dx, dy): 0 for angles in [0, pi), 1 otherwise.
int direction_half(const Point& from, const Point& to) {
    const int cy = compare(to.y(), from.y());
    if (cy != 0) return cy > 0 ? 0 : 1;
    return compare(to.x(), from.x()) > 0 ? 0 : 1;
}

}  // namespace

Ring Decomposition::cycle(int h) const {
    Ring out;
    int e = h;
    do {
        out.push_back(vertices[static_cast<std::size_t>(half_edges[static_cast<std::size_t>(e)].origin)]);
        e = half_edges[static_cast<std::size_t>(e)].next;
    } while (e != h);
    return out;
}

std::vector<Ring> Decomposition::face_rings(int f) const {
    const Face& face = faces[static_cast<std::size_t>(f)];
    std::vector<Ring> out{cycle(face.outer)};
    for (int h : face.inner) out.push_back(cycle(h));
    return out;
}

Decomposition build_decomposition(const PolygonWithHoles& P, std::vector<Window> windows) {
    Decomposition D;
    D.source = P;
    D.windows = std::move(windows);
    const int n = P.n();

    std::vector<SweepSegment> segs;
    auto add = [&](const Point& a, const Point& b) {
        const bool a_first = EventLess{}(a, b);
        segs.push_back({a_first ? a : b, a_first ? b : a, a.y() == b.y()});
    };
    for (int e = 0; e < n; ++e) add(P.vertex(e), P.vertex(P.next(e)));
    for (const Window& w : D.windows) {
        if (w.end_edge < 0 || w.end_edge >= n ||
            !strictly_between(P.vertex(w.end_edge), P.vertex(P.next(w.end_edge)), w.end))
            throw std::logic_error("build_decomposition: window end " + to_string(w.end) + " is not on the boundary");
        add(w.base, w.end);
    }

    const auto on_segment_points = Sweep(segs).run();

    // Crossing count: points interior to one segment and on another.
    std::map<Point, int, PointLess> multiplicity;
    for (const auto& pts : on_segment_points)
        for (const Point& p : pts) ++multiplicity[p];
    for (std::size_t s = 0; s < on_segment_points.size(); ++s) {
        const auto& pts = on_segment_points[s];
        for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
            if (multiplicity[pts[i]] > 1) {
                ++D.crossing_count;
                multiplicity[pts[i]] = 0;  // count each point once
            }
        }
    }

    // Half-edges; the first of each twin pair follows the segment from its
    // defining start to its defining end.
    PointIndex index;
    for (const Point& p : P.vertices()) index.get(p);
    for (std::size_t s = 0; s < on_segment_points.size(); ++s) {
        std::vector<int> ids;
        for (const Point& p : on_segment_points[s]) ids.push_back(index.get(p));
        const int si = static_cast<int>(s);
        const Point& start = si < n ? P.vertex(si) : D.window_of(si).base;
        if (ids.empty() || index.points[static_cast<std::size_t>(ids.front())] != start) std::reverse(ids.begin(), ids.end());
        for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
            const int h = static_cast<int>(D.half_edges.size());
            D.half_edges.push_back({ids[i], h + 1, -1, -1, si});
            D.half_edges.push_back({ids[i + 1], h, -1, -1, si});
        }
    }
    D.vertices = std::move(index.points);

    // Outgoing half-edges around each vertex, counterclockwise.
    std::vector<std::vector<int>> around(D.vertices.size());
    for (std::size_t h = 0; h < D.half_edges.size(); ++h)
        around[static_cast<std::size_t>(D.half_edges[h].origin)].push_back(static_cast<int>(h));
    auto head = [&](int h) -> const Point& {
        return D.vertices[static_cast<std::size_t>(D.half_edges[static_cast<std::size_t>(D.half_edges[static_cast<std::size_t>(h)].twin)].origin)];
    };
    std::vector<int> position(D.half_edges.size());
    for (std::size_t v = 0; v < around.size(); ++v) {
        const Point& o = D.vertices[v];
        std::sort(around[v].begin(), around[v].end(), [&](int a, int b) {
            const int ha = direction_half(o, head(a)), hb = direction_half(o, head(b));
            if (ha != hb) return ha < hb;
            return orient(o, head(a), head(b)) > 0;
        });
        for (std::size_t k = 0; k < around[v].size(); ++k) position[static_cast<std::size_t>(around[v][k])] = static_cast<int>(k);
    }
    for (std::size_t h = 0; h < D.half_edges.size(); ++h) {
        const int t = D.half_edges[h].twin;
        const auto& ring = around[static_cast<std::size_t>(D.half_edges[static_cast<std::size_t>(t)].origin)];
        const int k = position[static_cast<std::size_t>(t)];
        D.half_edges[h].next = ring[static_cast<std::size_t>((k + static_cast<int>(ring.size()) - 1) % static_cast<int>(ring.size()))];
    }

    // Cycles.
    std::vector<int> cycle_of(D.half_edges.size(), -1);
    std::vector<int> cycle_start;
    for (std::size_t h = 0; h < D.half_edges.size(); ++h) {
        if (cycle_of[h] >= 0) continue;
        const int c = static_cast<int>(cycle_start.size());
        cycle_start.push_back(static_cast<int>(h));
        int e = static_cast<int>(h);
        do {
            cycle_of[static_cast<std::size_t>(e)] = c;
            e = D.half_edges[static_cast<std::size_t>(e)].next;
        } while (e != static_cast<int>(h));
    }
    const std::size_t cycles = cycle_start.size();
    std::vector<bool> outside(cycles, false);
    std::vector<Rational> area(cycles);
    for (std::size_t h = 0; h < D.half_edges.size(); h += 2) {
        // the odd member of a boundary pair runs against the ring: exterior side
        if (D.half_edges[h].segment < n) outside[static_cast<std::size_t>(cycle_of[h + 1])] = true;
    }
    for (std::size_t c = 0; c < cycles; ++c) area[c] = signed_area(D.cycle(cycle_start[c]));

    std::vector<int> face_of_cycle(cycles, -1);
    for (std::size_t c = 0; c < cycles; ++c) {
        if (outside[c] || area[c] <= 0) continue;
        face_of_cycle[c] = static_cast<int>(D.faces.size());
        Face f;
        f.outer = cycle_start[c];
        D.faces.push_back(std::move(f));
    }
    for (std::size_t c = 0; c < cycles; ++c) {
        if (outside[c] || area[c] >= 0) continue;
        // inner boundary: attach to the smallest face whose outer cycle contains it
        const Point& probe = D.vertices[static_cast<std::size_t>(D.half_edges[static_cast<std::size_t>(cycle_start[c])].origin)];
        int best = -1;
        for (std::size_t d = 0; d < cycles; ++d) {
            if (face_of_cycle[d] < 0) continue;
            if (ring_locate(D.cycle(cycle_start[d]), probe) != Location::Interior) continue;
            if (best < 0 || area[d] < area[static_cast<std::size_t>(best)]) best = static_cast<int>(d);
        }
        if (best < 0) throw std::logic_error("build_decomposition: inner cycle without a containing face");
        face_of_cycle[c] = face_of_cycle[static_cast<std::size_t>(best)];
        D.faces[static_cast<std::size_t>(face_of_cycle[c])].inner.push_back(cycle_start[c]);
    }
    for (std::size_t h = 0; h < D.half_edges.size(); ++h) D.half_edges[h].face = face_of_cycle[static_cast<std::size_t>(cycle_of[h])];
    return D;
}

Point representative_point(const Decomposition& D, int f) {
    const auto rings = D.face_rings(f);
    const auto tris = triangulate(rings);
    const Triangle* best = nullptr;
    Rational best_area(0);
    for (const Triangle& t : tris) {
        Rational a = twice_area(t);
        if (a > best_area) {
            best_area = std::move(a);
            best = &t;
        }
    }
    if (!best) throw std::logic_error("representative_point: face " + std::to_string(f) + " has zero area");
    return centroid(*best);
}

VertexSet visible_from(const PolygonWithHoles& P, const Point& q) {
    VertexSet s(static_cast<std::size_t>(P.n()));
    for (int v = 0; v < P.n(); ++v)
        if (sees_unchecked(P, P.vertex(v), q)) s.set(static_cast<std::size_t>(v));
    return s;
}

namespace {

// True iff the left face of half-edge h lies in the shadow of its window.
bool left_is_shadow(const Decomposition& D, int h) {
    const Window& w = D.window_of(D.half_edges[static_cast<std::size_t>(h)].segment);
    const bool along = (h % 2) == 0;  // even members follow base -> end
    return along ? w.shadow_side > 0 : w.shadow_side < 0;
}

}  // namespace

void assign_visible_sets(Decomposition& D, const AssignOptions& options) {
    const PolygonWithHoles& P = D.source;
    const std::size_t nf = D.faces.size();
    if (nf == 0) return;
    for (std::size_t f = 0; f < nf; ++f) D.faces[f].representative = representative_point(D, static_cast<int>(f));

    // Half-edges grouped by face.
    std::vector<std::vector<int>> edges_of(nf);
    for (std::size_t h = 0; h < D.half_edges.size(); ++h)
        if (D.half_edges[h].face >= 0) edges_of[static_cast<std::size_t>(D.half_edges[h].face)].push_back(static_cast<int>(h));

    std::vector<bool> done(nf, false);
    std::queue<int> todo;
    D.faces[0].visible = visible_from(P, D.faces[0].representative);
    done[0] = true;
    todo.push(0);
    while (!todo.empty()) {
        const int f = todo.front();
        todo.pop();
        for (int h : edges_of[static_cast<std::size_t>(f)]) {
            const HalfEdge& he = D.half_edges[static_cast<std::size_t>(h)];
            if (!D.is_window(he.segment)) continue;
            const int g = D.half_edges[static_cast<std::size_t>(he.twin)].face;
            if (g < 0 || g == f) throw std::logic_error("assign_visible_sets: window piece without two faces");
            const auto owner = static_cast<std::size_t>(D.window_of(he.segment).owner.index);
            VertexSet next = D.faces[static_cast<std::size_t>(f)].visible;
            if (left_is_shadow(D, h)) {
                if (next.test(owner)) throw std::logic_error("assign_visible_sets: owner visible inside its shadow");
                next.set(owner);
            } else {
                if (!next.test(owner)) throw std::logic_error("assign_visible_sets: owner hidden on its lit side");
                next.reset(owner);
            }
            if (done[static_cast<std::size_t>(g)]) {
                if (D.faces[static_cast<std::size_t>(g)].visible != next)
                    throw std::logic_error("assign_visible_sets: propagation disagrees at face " + std::to_string(g));
                continue;
            }
            D.faces[static_cast<std::size_t>(g)].visible = std::move(next);
            done[static_cast<std::size_t>(g)] = true;
            todo.push(g);
        }
    }
    for (std::size_t f = 0; f < nf; ++f)
        if (!done[f]) throw std::logic_error("assign_visible_sets: face " + std::to_string(f) + " unreachable");

    if (!options.verify) return;
    std::mt19937_64 rng(options.seed);
    for (std::size_t f = 0; f < nf; ++f) {
        const Face& face = D.faces[f];
        if (visible_from(P, face.representative) != face.visible)
            throw std::logic_error("assign_visible_sets: face " + std::to_string(f) + " representative disagrees");
        const auto rings = D.face_rings(static_cast<int>(f));
        AreaSampler sampler(triangulate(rings));
        for (int k = 0; k < options.samples; ++k) {
            const Point q = sampler.sample(rng);
            if (visible_from(P, q) != face.visible)
                throw std::logic_error("assign_visible_sets: face " + std::to_string(f) + " is not an equivalence cell at " +
                                       to_string(q));
        }
    }
}

DualGraph build_dual(const Decomposition& D) {
    DualGraph G;
    G.node_count = static_cast<int>(D.faces.size());
    G.out.assign(D.faces.size(), {});
    std::set<std::pair<int, int>> seen;
    for (std::size_t h = 0; h < D.half_edges.size(); ++h) {
        const HalfEdge& he = D.half_edges[h];
        if (!D.is_window(he.segment) || he.face < 0) continue;
        const int f = he.face;
        const int g = D.half_edges[static_cast<std::size_t>(he.twin)].face;
        if (g < 0 || g == f) throw std::logic_error("build_dual: window piece without two faces");
        const VertexSet& a = D.faces[static_cast<std::size_t>(f)].visible;
        const VertexSet& b = D.faces[static_cast<std::size_t>(g)].visible;
        const auto ca = a.count(), cb = b.count();
        if (ca != cb + 1 && cb != ca + 1)
            throw std::logic_error("build_dual: faces " + std::to_string(f) + " and " + std::to_string(g) +
                                   " differ by more than one vertex");
        const bool f_larger = ca > cb;
        if (!(f_larger ? b.is_subset_of(a) : a.is_subset_of(b)))
            throw std::logic_error("build_dual: incomparable neighbouring sets");
        if (!f_larger) continue;  // handled from the other side
        if (seen.insert({f, g}).second) {
            G.out[static_cast<std::size_t>(f)].push_back(g);
            G.edges.emplace_back(f, g);
        }
    }
    return G;
}

std::vector<int> sinks(const DualGraph& G) {
    std::vector<int> out;
    for (int f = 0; f < G.node_count; ++f)
        if (G.out[static_cast<std::size_t>(f)].empty()) out.push_back(f);
    return out;
}

Decomposition decompose(const PolygonWithHoles& P, const AssignOptions& options) {
    Decomposition D = build_decomposition(P, collect_windows(P));
    assign_visible_sets(D, options);
    return D;
}

}  // namespace visguard
