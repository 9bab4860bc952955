#include "visguard/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace visguard {

namespace {

constexpr double kUnitRoundoff = 0x1p-53;

// Double value with a running absolute error bound.
struct Approx {
    double v;
    double e;
};

inline Approx from_coord(double v) { return {v, std::fabs(v) * 0x1p-52}; }

inline Approx operator-(Approx a, Approx b) {
    double v = a.v - b.v;
    return {v, a.e + b.e + std::fabs(v) * kUnitRoundoff};
}

inline Approx operator*(Approx a, Approx b) {
    double v = a.v * b.v;
    return {v, std::fabs(a.v) * b.e + std::fabs(b.v) * a.e + a.e * b.e + std::fabs(v) * kUnitRoundoff};
}

// 0 when the filter cannot certify the sign.
inline int certified_sign(Approx a) {
    double margin = 2.0 * a.e + 1e-300;
    if (a.v > margin) return 1;
    if (a.v < -margin) return -1;
    return 0;
}

inline int rational_sign(const Rational& q) { return sgn(q); }

}  // namespace

Point::Point(Rational x, Rational y)
    : x_(std::move(x)), y_(std::move(y)), ax_(x_.get_d()), ay_(y_.get_d()) {}

bool PointLess::operator()(const Point& a, const Point& b) const {
    int c = compare(a.x(), b.x());
    if (c != 0) return c < 0;
    return compare(a.y(), b.y()) < 0;
}

Point midpoint(const Point& a, const Point& b) {
    return Point((a.x() + b.x()) / 2, (a.y() + b.y()) / 2);
}

std::string to_string(const Point& p) { return "(" + to_string(p.x()) + ", " + to_string(p.y()) + ")"; }

Segment::Segment(Point a_, Point b_) : a(std::move(a_)), b(std::move(b_)) {
    if (a == b) throw std::invalid_argument("degenerate segment at " + to_string(a));
}

int sign_of(const Rational& q) { return rational_sign(q); }

int compare(const Rational& a, const Rational& b) {
    Approx d = from_coord(a.get_d()) - from_coord(b.get_d());
    if (int s = certified_sign(d); s != 0) return s;
    return cmp(a, b) < 0 ? -1 : (cmp(a, b) > 0 ? 1 : 0);
}

int cross_sign(const Point& a, const Point& b, const Point& c, const Point& d) {
    Approx det = (from_coord(b.ax()) - from_coord(a.ax())) * (from_coord(d.ay()) - from_coord(c.ay())) -
                 (from_coord(b.ay()) - from_coord(a.ay())) * (from_coord(d.ax()) - from_coord(c.ax()));
    if (int s = certified_sign(det); s != 0) return s;
    Rational exact = (b.x() - a.x()) * (d.y() - c.y()) - (b.y() - a.y()) * (d.x() - c.x());
    return rational_sign(exact);
}

int orient(const Point& p, const Point& q, const Point& r) { return cross_sign(p, q, p, r); }

int dot_sign(const Point& a, const Point& b, const Point& c, const Point& d) {
    Approx dot = (from_coord(b.ax()) - from_coord(a.ax())) * (from_coord(d.ax()) - from_coord(c.ax())) -
                 (from_coord(a.ay()) - from_coord(b.ay())) * (from_coord(d.ay()) - from_coord(c.ay()));
    if (int s = certified_sign(dot); s != 0) return s;
    Rational exact = (b.x() - a.x()) * (d.x() - c.x()) + (b.y() - a.y()) * (d.y() - c.y());
    return rational_sign(exact);
}

namespace {

bool within_box(const Point& a, const Point& b, const Point& p) {
    const bool x_ok = (compare(a.x(), p.x()) <= 0 && compare(p.x(), b.x()) <= 0) ||
                      (compare(b.x(), p.x()) <= 0 && compare(p.x(), a.x()) <= 0);
    if (!x_ok) return false;
    return (compare(a.y(), p.y()) <= 0 && compare(p.y(), b.y()) <= 0) ||
           (compare(b.y(), p.y()) <= 0 && compare(p.y(), a.y()) <= 0);
}

}  // namespace

bool on_segment(const Point& a, const Point& b, const Point& p) {
    return orient(a, b, p) == 0 && within_box(a, b, p);
}

bool strictly_between(const Point& a, const Point& b, const Point& p) {
    return p != a && p != b && on_segment(a, b, p);
}

Point line_intersection(const Point& a, const Point& b, const Point& c, const Point& d) {
    Rational dx1 = b.x() - a.x(), dy1 = b.y() - a.y();
    Rational dx2 = d.x() - c.x(), dy2 = d.y() - c.y();
    Rational denom = dx1 * dy2 - dy1 * dx2;
    if (denom == 0) throw std::logic_error("line_intersection: parallel lines");
    Rational t = ((c.x() - a.x()) * dy2 - (c.y() - a.y()) * dx2) / denom;
    return Point(a.x() + t * dx1, a.y() + t * dy1);
}

SegmentIntersection segment_intersection(const Segment& s1, const Segment& s2) {
    const Point& a = s1.a;
    const Point& b = s1.b;
    const Point& c = s2.a;
    const Point& d = s2.b;
    const int o1 = orient(a, b, c);
    const int o2 = orient(a, b, d);
    if (o1 == 0 && o2 == 0) {
        // Collinear: intersect the parameter intervals along the dominant axis.
        const bool use_x = a.x() != b.x();
        auto key = [&](const Point& p) -> const Rational& { return use_x ? p.x() : p.y(); };
        const Point* lo1 = &a;
        const Point* hi1 = &b;
        if (compare(key(*lo1), key(*hi1)) > 0) std::swap(lo1, hi1);
        const Point* lo2 = &c;
        const Point* hi2 = &d;
        if (compare(key(*lo2), key(*hi2)) > 0) std::swap(lo2, hi2);
        const Point* lo = compare(key(*lo1), key(*lo2)) >= 0 ? lo1 : lo2;
        const Point* hi = compare(key(*hi1), key(*hi2)) <= 0 ? hi1 : hi2;
        const int c_lohi = compare(key(*lo), key(*hi));
        if (c_lohi > 0) return NoIntersection{};
        if (c_lohi == 0) return *lo;
        return Segment(*lo, *hi);
    }
    if (o1 * o2 > 0) return NoIntersection{};
    const int o3 = orient(c, d, a);
    const int o4 = orient(c, d, b);
    if (o3 * o4 > 0) return NoIntersection{};
    if (o1 == 0) return c;
    if (o2 == 0) return d;
    if (o3 == 0) return a;
    if (o4 == 0) return b;
    return line_intersection(a, b, c, d);
}

const char* to_string(Location loc) {
    switch (loc) {
        case Location::Interior: return "Interior";
        case Location::Boundary: return "Boundary";
        case Location::Exterior: return "Exterior";
    }
    return "?";
}

Rational signed_area(std::span<const Point> ring) {
    Rational twice(0);
    const std::size_t m = ring.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Point& p = ring[i];
        const Point& q = ring[(i + 1) % m];
        twice += p.x() * q.y() - q.x() * p.y();
    }
    return twice / 2;
}

Location ring_locate(std::span<const Point> ring, const Point& pt) {
    bool inside = false;
    const std::size_t m = ring.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % m];
        if (on_segment(a, b, pt)) return Location::Boundary;
        const bool a_above = compare(a.y(), pt.y()) > 0;
        const bool b_above = compare(b.y(), pt.y()) > 0;
        if (a_above == b_above) continue;
        const int o = orient(a, b, pt);
        if (b_above ? o > 0 : o < 0) inside = !inside;
    }
    return inside ? Location::Interior : Location::Exterior;
}

}  // namespace visguard
