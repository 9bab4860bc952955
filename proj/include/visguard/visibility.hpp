#pragma once

#include "visguard/geometry.hpp"
#include "visguard/polygon.hpp"
#include "visguard/vertex_set.hpp"

#include <span>
#include <vector>

namespace visguard {

enum class WindowKind { Left, Right, Trans };

const char* to_string(WindowKind kind);

/// A cut of Vis(owner) along the ray owner -> base, running from the
/// reflex vertex base to the first boundary point end beyond it.
struct Window {
    VertexRef owner;
    Point base;
    Point end;
    WindowKind kind = WindowKind::Left;
    int base_vertex = -1;  // vertex id located at base
    int end_edge = -1;     // edge id (start vertex) whose relative interior holds end
    // Side of the directed line owner -> base holding the part of P hidden
    // from owner behind the window: +1 left, -1 right.
    int shadow_side = 0;
};

struct VisibilityPolygon {
    VertexRef owner;
    Ring region;                  // counterclockwise, starts at the owner
    std::vector<Window> windows;  // counterclockwise order around the owner
    VertexSet visible;            // vertices seen by the owner, owner included
};

struct Pocket {
    Window window;
    std::vector<Point> chain;  // boundary chain from window.base to window.end
    WindowKind side = WindowKind::Left;

    // chain closed off by the window segment
    Ring ring() const { return chain; }
};

struct ComponentSequence {
    VertexRef owner;
    std::vector<int> sequence;
};

/// Rotational sweep around vertex v, O(n log n).
VisibilityPolygon visibility_polygon(const PolygonWithHoles& P, int v);

// Visibility polygons of all vertices, in vertex order.
std::vector<VisibilityPolygon> all_visibility_polygons(const PolygonWithHoles& P);

WindowKind classify_window(const PolygonWithHoles& P, const Window& w);

/// Components hit first by a ray from v rotating one full clockwise turn,
/// starting inside the exterior angle at v. Repeats are collapsed.
ComponentSequence component_sequence(const PolygonWithHoles& P, int v);

/// Throws std::invalid_argument for Trans windows.
Pocket pocket_of(const PolygonWithHoles& P, const Window& w);

// No equal neighbours and no alternation a..b..a..b.
bool is_davenport_schinzel_2(std::span<const int> seq);

}  // namespace visguard
