#pragma once

#include "visguard/rational.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace visguard {

/// Exact rational point. A double approximation of each coordinate is cached
/// and used only to filter predicate signs; every decision that the filter
/// cannot certify falls back to exact arithmetic.
class Point {
public:
    Point() : Point(Rational(0), Rational(0)) {}
    Point(Rational x, Rational y);
    Point(long x, long y) : Point(Rational(x), Rational(y)) {}

    const Rational& x() const noexcept { return x_; }
    const Rational& y() const noexcept { return y_; }
    double ax() const noexcept { return ax_; }
    double ay() const noexcept { return ay_; }

    friend bool operator==(const Point& a, const Point& b) { return a.x_ == b.x_ && a.y_ == b.y_; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

private:
    Rational x_;
    Rational y_;
    double ax_;
    double ay_;
};

// Lexicographic (x, then y).
struct PointLess {
    bool operator()(const Point& a, const Point& b) const;
};

Point midpoint(const Point& a, const Point& b);
std::string to_string(const Point& p);

struct Segment {
    Point a;
    Point b;

    Segment(Point a_, Point b_);
};

int sign_of(const Rational& q);

// Sign of a - b.
int compare(const Rational& a, const Rational& b);

/// +1 iff r is strictly left of the directed line p->q, 0 iff collinear.
int orient(const Point& p, const Point& q, const Point& r);

// Sign of the cross product (b - a) x (d - c).
int cross_sign(const Point& a, const Point& b, const Point& c, const Point& d);

// Sign of the dot product (b - a) . (d - c).
int dot_sign(const Point& a, const Point& b, const Point& c, const Point& d);

// p lies on the closed segment ab (a != b).
bool on_segment(const Point& a, const Point& b, const Point& p);

// p collinear with ab and strictly between a and b.
bool strictly_between(const Point& a, const Point& b, const Point& p);

struct NoIntersection {
    friend bool operator==(NoIntersection, NoIntersection) { return true; }
};
using SegmentIntersection = std::variant<NoIntersection, Point, Segment>;

SegmentIntersection segment_intersection(const Segment& s1, const Segment& s2);

// Intersection of the supporting lines of ab and cd; the lines must not be parallel.
Point line_intersection(const Point& a, const Point& b, const Point& c, const Point& d);

enum class Location { Interior, Boundary, Exterior };

const char* to_string(Location loc);

using Ring = std::vector<Point>;

Rational signed_area(std::span<const Point> ring);

// Classification against the closed region bounded by a simple ring.
Location ring_locate(std::span<const Point> ring, const Point& pt);

}  // namespace visguard
