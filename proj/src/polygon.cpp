#include "visguard/polygon.hpp"

#include <algorithm>
#include <numeric>

namespace visguard {

namespace {

std::string ring_name(std::size_t r) { return r == 0 ? "outer ring" : "hole " + std::to_string(r - 1); }

void check_ring_simple(const Ring& ring, std::size_t r) {
    const std::size_t m = ring.size();
    if (signed_area(ring) == 0) throw ValidationError(ring_name(r) + " has zero area");
    for (std::size_t i = 0; i < m; ++i) {
        Segment ei(ring[i], ring[(i + 1) % m]);
        for (std::size_t j = i + 1; j < m; ++j) {
            Segment ej(ring[j], ring[(j + 1) % m]);
            const bool adjacent_fwd = j == i + 1;
            const bool adjacent_bwd = i == 0 && j == m - 1;
            SegmentIntersection x = segment_intersection(ei, ej);
            if (std::holds_alternative<NoIntersection>(x)) continue;
            if (adjacent_fwd || adjacent_bwd) {
                const Point& shared = adjacent_fwd ? ej.a : ei.a;
                if (const Point* p = std::get_if<Point>(&x); p && *p == shared) continue;
            }
            throw ValidationError(ring_name(r) + " is not simple: edges " + to_string(ei.a) + "-" +
                                  to_string(ei.b) + " and " + to_string(ej.a) + "-" + to_string(ej.b) +
                                  " intersect");
        }
    }
}

void check_rings_disjoint(const Ring& a, std::size_t ra, const Ring& b, std::size_t rb) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        Segment ei(a[i], a[(i + 1) % a.size()]);
        for (std::size_t j = 0; j < b.size(); ++j) {
            Segment ej(b[j], b[(j + 1) % b.size()]);
            if (!std::holds_alternative<NoIntersection>(segment_intersection(ei, ej)))
                throw ValidationError(ring_name(ra) + " and " + ring_name(rb) + " intersect at edges " +
                                      to_string(ei.a) + "-" + to_string(ei.b) + " and " + to_string(ej.a) +
                                      "-" + to_string(ej.b));
        }
    }
}

}  // namespace

void validate(std::span<const Ring> rings, Validation level) {
    if (rings.empty()) throw ValidationError("polygon has no outer ring");
    std::vector<Point> all;
    for (std::size_t r = 0; r < rings.size(); ++r) {
        if (rings[r].size() < 3)
            throw ValidationError(ring_name(r) + " has " + std::to_string(rings[r].size()) +
                                  " vertices; at least 3 required");
        all.insert(all.end(), rings[r].begin(), rings[r].end());
    }
    {
        std::vector<Point> sorted = all;
        std::sort(sorted.begin(), sorted.end(), PointLess{});
        for (std::size_t i = 1; i < sorted.size(); ++i)
            if (sorted[i] == sorted[i - 1]) throw ValidationError("duplicate vertex " + to_string(sorted[i]));
    }
    for (std::size_t r = 0; r < rings.size(); ++r) {
        check_ring_simple(rings[r], r);
        const int s = sign_of(signed_area(rings[r]));
        if ((r == 0 && s < 0) || (r > 0 && s > 0))
            throw ValidationError(ring_name(r) + (r == 0 ? " must be counterclockwise" : " must be clockwise"));
    }
    for (std::size_t r = 1; r < rings.size(); ++r) {
        check_rings_disjoint(rings[0], 0, rings[r], r);
        if (ring_locate(rings[0], rings[r][0]) != Location::Interior)
            throw ValidationError(ring_name(r) + " is not strictly inside the outer ring");
        for (std::size_t q = 1; q < r; ++q) {
            check_rings_disjoint(rings[q], q, rings[r], r);
            if (ring_locate(rings[q], rings[r][0]) != Location::Exterior ||
                ring_locate(rings[r], rings[q][0]) != Location::Exterior)
                throw ValidationError(ring_name(q) + " and " + ring_name(r) + " are nested");
        }
    }
    if (level == Validation::general_position) {
        const std::size_t m = all.size();
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                for (std::size_t k = j + 1; k < m; ++k)
                    if (orient(all[i], all[j], all[k]) == 0)
                        throw ValidationError("collinear vertices " + to_string(all[i]) + ", " +
                                              to_string(all[j]) + ", " + to_string(all[k]));
    }
}

PolygonWithHoles PolygonWithHoles::make(Ring outer, std::vector<Ring> holes, Validation level) {
    std::vector<Ring> rings;
    rings.reserve(holes.size() + 1);
    rings.push_back(std::move(outer));
    for (auto& hole : holes) rings.push_back(std::move(hole));
    for (std::size_t r = 0; r < rings.size(); ++r) {
        if (rings[r].size() < 3) continue;  // reported by validate()
        const int s = sign_of(signed_area(rings[r]));
        if ((r == 0 && s < 0) || (r > 0 && s > 0)) std::reverse(rings[r].begin(), rings[r].end());
    }
    validate(rings, level);

    PolygonWithHoles P;
    P.offsets_.push_back(0);
    for (std::size_t r = 0; r < rings.size(); ++r) {
        for (auto& p : rings[r]) {
            P.vertices_.push_back(std::move(p));
            P.component_.push_back(static_cast<int>(r));
        }
        P.offsets_.push_back(static_cast<int>(P.vertices_.size()));
    }
    return P;
}

int PolygonWithHoles::next(int i) const {
    const int c = component_[i];
    return i + 1 == offsets_[c + 1] ? offsets_[c] : i + 1;
}

int PolygonWithHoles::prev(int i) const {
    const int c = component_[i];
    return i == offsets_[c] ? offsets_[c + 1] - 1 : i - 1;
}

std::span<const Point> PolygonWithHoles::ring(int c) const {
    return std::span<const Point>(vertices_).subspan(offsets_[c], offsets_[c + 1] - offsets_[c]);
}

bool PolygonWithHoles::is_reflex(int i) const {
    return orient(vertices_[prev(i)], vertices_[i], vertices_[next(i)]) < 0;
}

Rational PolygonWithHoles::area() const {
    Rational total(0);
    // Holes are clockwise, so their signed areas are already negative.
    for (int c = 0; c <= h(); ++c) total += signed_area(ring(c));
    return total;
}

Location locate(const PolygonWithHoles& P, const Point& pt) {
    const Location outer = ring_locate(P.ring(0), pt);
    if (outer != Location::Interior) return outer;
    for (int c = 1; c <= P.h(); ++c) {
        const Location in_hole = ring_locate(P.ring(c), pt);
        if (in_hole == Location::Interior) return Location::Exterior;
        if (in_hole == Location::Boundary) return Location::Boundary;
    }
    return Location::Interior;
}

bool sees_unchecked(const PolygonWithHoles& P, const Point& p, const Point& q) {
    if (p == q) return true;
    std::vector<const Point*> contacts{&p, &q};
    const int n = P.n();
    for (int i = 0; i < n; ++i) {
        const Point& a = P.vertex(i);
        const Point& b = P.vertex(P.next(i));
        const int o1 = orient(p, q, a);
        const int o2 = orient(p, q, b);
        if (o1 * o2 > 0) continue;
        const int o3 = orient(a, b, p);
        const int o4 = orient(a, b, q);
        if (o3 * o4 > 0) continue;
        if (o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return false;  // proper crossing
        if (o1 == 0 && strictly_between(p, q, a)) contacts.push_back(&a);
        if (o2 == 0 && strictly_between(p, q, b)) contacts.push_back(&b);
    }
    if (contacts.size() > 2) {
        // Order contacts along pq.
        std::sort(contacts.begin() + 2, contacts.end(), [&](const Point* u, const Point* w) {
            return dot_sign(*u, *w, p, q) > 0;
        });
        contacts.erase(std::unique(contacts.begin() + 2, contacts.end(),
                                   [](const Point* u, const Point* w) { return *u == *w; }),
                       contacts.end());
    }
    // contacts = p, q, then interior contacts in order; walk p -> c_1 -> ... -> q.
    const Point* prev = &p;
    for (std::size_t k = 2; k <= contacts.size(); ++k) {
        const Point* cur = k < contacts.size() ? contacts[k] : &q;
        if (locate(P, midpoint(*prev, *cur)) == Location::Exterior) return false;
        prev = cur;
    }
    return true;
}

bool sees(const PolygonWithHoles& P, const Point& p, const Point& q) {
    if (locate(P, p) == Location::Exterior) throw std::invalid_argument("sees: " + to_string(p) + " is outside P");
    if (locate(P, q) == Location::Exterior) throw std::invalid_argument("sees: " + to_string(q) + " is outside P");
    return sees_unchecked(P, p, q);
}

}  // namespace visguard
