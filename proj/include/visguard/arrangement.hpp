#pragma once

#include "visguard/geometry.hpp"
#include "visguard/polygon.hpp"
#include "visguard/vertex_set.hpp"
#include "visguard/visibility.hpp"

#include <vector>

namespace visguard {

/// Windows of every vertex, in owner order. A segment induced by several
/// owners is kept once (first owner).
std::vector<Window> collect_windows(const PolygonWithHoles& P);

/// Segment s of a decomposition: s < n is boundary edge s of P, s >= n is
/// window s - n.
struct HalfEdge {
    int origin = -1;
    int twin = -1;
    int next = -1;
    int face = -1;  // -1 outside P
    int segment = -1;
};

struct Face {
    int outer = -1;          // one half-edge of the counterclockwise outer cycle
    std::vector<int> inner;  // one half-edge per clockwise inner cycle

    // filled by assign_visible_sets
    Point representative;
    VertexSet visible;
};

struct Decomposition {
    PolygonWithHoles source;
    std::vector<Window> windows;
    std::vector<Point> vertices;
    std::vector<HalfEdge> half_edges;
    std::vector<Face> faces;  // faces inside P only
    // Points lying in the relative interior of one segment and on another.
    int crossing_count = 0;

    int segment_count() const { return source.n() + static_cast<int>(windows.size()); }
    bool is_window(int segment) const { return segment >= source.n(); }
    const Window& window_of(int segment) const { return windows[static_cast<std::size_t>(segment - source.n())]; }

    // Points of the cycle through half-edge h.
    Ring cycle(int h) const;
    // outer cycle followed by inner cycles
    std::vector<Ring> face_rings(int f) const;
};

/// Subdivision of P by the windows, computed with a sweep line over windows
/// and boundary edges. Throws std::logic_error on inconsistent input (for
/// example a window end off the boundary).
Decomposition build_decomposition(const PolygonWithHoles& P, std::vector<Window> windows);

/// Exact point strictly inside face f: centroid of the largest triangle of
/// a triangulation of the face. Throws std::logic_error on zero area.
Point representative_point(const Decomposition& D, int f);

struct AssignOptions {
    // Recompute every set with sees() and compare, plus `samples` random
    // interior points per face.
    bool verify = false;
    int samples = 3;
    unsigned long long seed = 0;
};

/// Representative points plus visible sets, propagated across windows from
/// one directly computed seed face. Throws std::logic_error on an
/// inconsistency (propagation disagreement or verification failure).
void assign_visible_sets(Decomposition& D, const AssignOptions& options = {});

// Visible set of a point by direct segment tests.
VertexSet visible_from(const PolygonWithHoles& P, const Point& q);

struct DualGraph {
    int node_count = 0;
    std::vector<std::vector<int>> out;  // edge f -> g: visible(g) is visible(f) minus one vertex
    std::vector<std::pair<int, int>> edges;
};

/// Throws std::logic_error if neighbouring sets do not differ by exactly one vertex.
DualGraph build_dual(const Decomposition& D);

std::vector<int> sinks(const DualGraph& G);

/// collect_windows + build_decomposition + assign_visible_sets.
Decomposition decompose(const PolygonWithHoles& P, const AssignOptions& options = {});

}  // namespace visguard
