#pragma once

#include "visguard/geometry.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace visguard {

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Validation {
    // Rings simple, holes disjoint and strictly inside, and no three vertices collinear.
    general_position,
    // Everything above except the collinearity rule.
    simple_only,
};

struct VertexRef {
    int index = 0;
    int component = 0;

    friend bool operator==(const VertexRef&, const VertexRef&) = default;
};

/// Outer ring (counterclockwise) plus hole rings (clockwise). With this
/// orientation the interior of P lies to the left of every directed edge.
///
/// Vertex ids run over the outer ring first, then each hole in order. Edge i
/// is the directed edge from vertex i to vertex next(i). Component 0 is the
/// exterior (bounded by the outer ring), component c >= 1 is hole c - 1.
class PolygonWithHoles {
public:
    PolygonWithHoles() = default;

    /// Orientation is normalized (rings are reversed as needed), then the
    /// result is validated. Throws ValidationError.
    static PolygonWithHoles make(Ring outer, std::vector<Ring> holes = {},
                                 Validation level = Validation::general_position);

    int n() const noexcept { return static_cast<int>(vertices_.size()); }
    int h() const noexcept { return static_cast<int>(offsets_.size()) - 2; }

    const Point& vertex(int i) const { return vertices_[i]; }
    const std::vector<Point>& vertices() const noexcept { return vertices_; }
    int component(int i) const { return component_[i]; }
    VertexRef ref(int i) const { return {i, component_[i]}; }

    int next(int i) const;
    int prev(int i) const;

    // c = 0 is the outer ring, c = k is hole k - 1 (component k).
    std::span<const Point> ring(int c) const;
    int ring_begin(int c) const { return offsets_[c]; }
    int ring_size(int c) const { return offsets_[c + 1] - offsets_[c]; }

    bool is_reflex(int i) const;

    Rational area() const;

    friend bool operator==(const PolygonWithHoles& a, const PolygonWithHoles& b) {
        return a.vertices_ == b.vertices_ && a.offsets_ == b.offsets_;
    }

private:
    std::vector<Point> vertices_;
    std::vector<int> component_;
    std::vector<int> offsets_;
};

// Validates rings as given (no orientation normalization). Throws ValidationError.
void validate(std::span<const Ring> rings, Validation level);

/// Closed-region classification of pt against P (holes are not part of P).
Location locate(const PolygonWithHoles& P, const Point& pt);

/// True iff the closed segment pq lies in the closed region P. Grazing ∂P is
/// allowed. Throws std::invalid_argument if p or q is outside P.
bool sees(const PolygonWithHoles& P, const Point& p, const Point& q);

// sees() without the endpoint membership precondition check.
bool sees_unchecked(const PolygonWithHoles& P, const Point& p, const Point& q);

}  // namespace visguard
