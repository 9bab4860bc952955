#include "visguard/triangulate.hpp"

#include <algorithm>
#include <stdexcept>

namespace visguard {

Rational twice_area(const Triangle& t) {
    return (t.b.x() - t.a.x()) * (t.c.y() - t.a.y()) - (t.b.y() - t.a.y()) * (t.c.x() - t.a.x());
}

Point centroid(const Triangle& t) {
    return Point((t.a.x() + t.b.x() + t.c.x()) / 3, (t.a.y() + t.b.y() + t.c.y()) / 3);
}

namespace {

// Drops repeated and collinear consecutive vertices.
Ring clean_ring(const Ring& ring) {
    Ring out(ring.begin(), ring.end());
    bool changed = true;
    while (changed && out.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < out.size() && out.size() >= 3; ++i) {
            const std::size_t m = out.size();
            const Point& p = out[(i + m - 1) % m];
            const Point& c = out[i];
            const Point& q = out[(i + 1) % m];
            if (c == q || orient(p, c, q) == 0) {
                out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                --i;
            }
        }
    }
    return out;
}

std::size_t max_x_index(const Ring& ring) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < ring.size(); ++i) {
        const int c = compare(ring[i].x(), ring[best].x());
        if (c > 0 || (c == 0 && compare(ring[i].y(), ring[best].y()) < 0)) best = i;
    }
    return best;
}

bool in_closed_triangle(const Point& a, const Point& b, const Point& c, const Point& x) {
    return orient(a, b, x) >= 0 && orient(b, c, x) >= 0 && orient(c, a, x) >= 0;
}

// Splice hole (clockwise) into outer (counterclockwise) through a mutually
// visible vertex pair.
void bridge_hole(Ring& outer, const Ring& hole) {
    const std::size_t mi = max_x_index(hole);
    const Point& M = hole[mi];
    const std::size_t m = outer.size();

    // Closest crossing of the ray M + t(1, 0), t > 0, with an upward edge.
    std::ptrdiff_t best_edge = -1;
    Rational best_x;
    for (std::size_t i = 0; i < m; ++i) {
        const Point& a = outer[i];
        const Point& b = outer[(i + 1) % m];
        if (compare(a.y(), b.y()) >= 0) continue;
        if (compare(a.y(), M.y()) > 0 || compare(b.y(), M.y()) < 0) continue;
        if (orient(a, b, M) <= 0) continue;  // edge must be to the right of M
        Rational x = a.x() + (M.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
        if (best_edge < 0 || x < best_x) {
            best_edge = static_cast<std::ptrdiff_t>(i);
            best_x = x;
        }
    }
    if (best_edge < 0) throw std::runtime_error("triangulate: hole is not inside the outer ring");
    const Point I(best_x, M.y());
    const std::size_t ia = static_cast<std::size_t>(best_edge);
    const std::size_t ib = (ia + 1) % m;

    std::size_t target;
    if (outer[ia] == I) {
        target = ia;
    } else if (outer[ib] == I) {
        target = ib;
    } else {
        target = compare(outer[ia].x(), outer[ib].x()) > 0 ? ia : ib;
        const Point candidate = outer[target];
        // A reflex vertex inside triangle (M, I, candidate) blocks the view;
        // take the one making the smallest angle with the ray.
        const Point& t0 = orient(M, I, candidate) > 0 ? I : candidate;
        const Point& t1 = orient(M, I, candidate) > 0 ? candidate : I;
        std::ptrdiff_t blocker = -1;
        for (std::size_t i = 0; i < m; ++i) {
            const Point& p = outer[(i + m - 1) % m];
            const Point& c = outer[i];
            const Point& q = outer[(i + 1) % m];
            if (c == candidate || orient(p, c, q) >= 0) continue;
            if (!in_closed_triangle(M, t0, t1, c)) continue;
            if (blocker < 0) {
                blocker = static_cast<std::ptrdiff_t>(i);
                continue;
            }
            const Point& r = outer[static_cast<std::size_t>(blocker)];
            Rational dy_c = abs(c.y() - M.y()), dx_c = c.x() - M.x();
            Rational dy_r = abs(r.y() - M.y()), dx_r = r.x() - M.x();
            const int s = sgn(dy_c * dx_r - dy_r * dx_c);
            if (s < 0 || (s == 0 && dx_c < dx_r)) blocker = static_cast<std::ptrdiff_t>(i);
        }
        if (blocker >= 0) target = static_cast<std::size_t>(blocker);
    }

    Ring merged;
    merged.reserve(m + hole.size() + 2);
    for (std::size_t i = 0; i <= target; ++i) merged.push_back(outer[i]);
    for (std::size_t k = 0; k <= hole.size(); ++k) merged.push_back(hole[(mi + k) % hole.size()]);
    merged.push_back(outer[target]);
    for (std::size_t i = target + 1; i < m; ++i) merged.push_back(outer[i]);
    outer = std::move(merged);
}

std::vector<Triangle> ear_clip(const Ring& poly) {
    std::vector<Triangle> out;
    const std::size_t m = poly.size();
    if (m < 3) return out;
    std::vector<std::size_t> nxt(m), prv(m);
    for (std::size_t i = 0; i < m; ++i) {
        nxt[i] = (i + 1) % m;
        prv[i] = (i + m - 1) % m;
    }
    std::size_t remaining = m;
    std::size_t cur = 0;
    std::size_t since_progress = 0;
    auto unlink = [&](std::size_t i) {
        nxt[prv[i]] = nxt[i];
        prv[nxt[i]] = prv[i];
        --remaining;
        since_progress = 0;
    };
    while (remaining > 3) {
        const std::size_t p = prv[cur];
        const std::size_t q = nxt[cur];
        const Point& A = poly[p];
        const Point& B = poly[cur];
        const Point& C = poly[q];
        const int o = orient(A, B, C);
        if (o == 0) {
            unlink(cur);
            cur = q;
            continue;
        }
        bool ear = o > 0;
        if (ear) {
            for (std::size_t k = nxt[q]; k != p; k = nxt[k]) {
                const Point& X = poly[k];
                if (X == A || X == B || X == C) continue;
                if (in_closed_triangle(A, B, C, X)) {
                    ear = false;
                    break;
                }
            }
        }
        if (ear) {
            out.push_back({A, B, C});
            unlink(cur);
            cur = q;
            continue;
        }
        cur = q;
        if (++since_progress > remaining) throw std::runtime_error("triangulate: no ear found");
    }
    const std::size_t p = prv[cur];
    const std::size_t q = nxt[cur];
    if (orient(poly[p], poly[cur], poly[q]) > 0) out.push_back({poly[p], poly[cur], poly[q]});
    return out;
}

}  // namespace

std::vector<Triangle> triangulate(std::span<const Ring> rings) {
    if (rings.empty()) return {};
    Ring outer = clean_ring(rings[0]);
    std::vector<Ring> holes;
    for (std::size_t r = 1; r < rings.size(); ++r) {
        Ring hole = clean_ring(rings[r]);
        if (hole.size() >= 3) holes.push_back(std::move(hole));
    }
    std::sort(holes.begin(), holes.end(), [](const Ring& a, const Ring& b) {
        return compare(a[max_x_index(a)].x(), b[max_x_index(b)].x()) > 0;
    });
    for (const Ring& hole : holes) bridge_hole(outer, hole);
    return ear_clip(outer);
}

std::vector<Triangle> triangulate(const PolygonWithHoles& P) {
    std::vector<Ring> rings;
    for (int c = 0; c <= P.h(); ++c) rings.emplace_back(P.ring(c).begin(), P.ring(c).end());
    return triangulate(rings);
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(rng()) * bound) >> 64);
}

Point sample_in_triangle(const Triangle& t, std::mt19937_64& rng) {
    constexpr std::uint64_t kScale = std::uint64_t{1} << 24;
    std::uint64_t k1, k2;
    for (;;) {
        k1 = 1 + uniform_below(rng, kScale - 1);
        k2 = 1 + uniform_below(rng, kScale - 1);
        if (k1 + k2 < kScale) break;
        if (k1 + k2 > kScale) {
            k1 = kScale - k1;
            k2 = kScale - k2;
            break;
        }
    }
    const Rational r1 = ratio(static_cast<long>(k1), static_cast<long>(kScale));
    const Rational r2 = ratio(static_cast<long>(k2), static_cast<long>(kScale));
    return Point(t.a.x() + r1 * (t.b.x() - t.a.x()) + r2 * (t.c.x() - t.a.x()),
                 t.a.y() + r1 * (t.b.y() - t.a.y()) + r2 * (t.c.y() - t.a.y()));
}

AreaSampler::AreaSampler(std::vector<Triangle> triangles) : triangles_(std::move(triangles)) {
    if (triangles_.empty()) throw std::invalid_argument("AreaSampler: no triangles");
    double acc = 0.0;
    for (const Triangle& t : triangles_) {
        acc += twice_area(t).get_d();
        cumulative_.push_back(acc);
    }
}

Point AreaSampler::sample(std::mt19937_64& rng) const {
    const double u = uniform01(rng) * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cumulative_.begin());
    if (idx >= triangles_.size()) idx = triangles_.size() - 1;
    return sample_in_triangle(triangles_[idx], rng);
}

}  // namespace visguard
