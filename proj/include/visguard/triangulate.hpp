#pragma once

#include "visguard/geometry.hpp"
#include "visguard/polygon.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace visguard {

struct Triangle {
    Point a;
    Point b;
    Point c;
};

Rational twice_area(const Triangle& t);
Point centroid(const Triangle& t);

/// Ear-clipping triangulation of a region given as rings[0] (outer,
/// counterclockwise) and rings[1..] (holes, clockwise). Holes are bridged to
/// the outer ring first. Collinear and repeated consecutive vertices are
/// tolerated. Every returned triangle is counterclockwise with positive area.
std::vector<Triangle> triangulate(std::span<const Ring> rings);

std::vector<Triangle> triangulate(const PolygonWithHoles& P);

/// Uniform point sampler over a union of triangles: triangles are chosen with
/// probability proportional to area, points inside a triangle are drawn with
/// dyadic barycentric coordinates strictly inside it. Deterministic for a
/// given generator state.
class AreaSampler {
public:
    explicit AreaSampler(std::vector<Triangle> triangles);

    Point sample(std::mt19937_64& rng) const;

    const std::vector<Triangle>& triangles() const noexcept { return triangles_; }

private:
    std::vector<Triangle> triangles_;
    std::vector<double> cumulative_;
};

// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(std::mt19937_64& rng);

// Uniform integer in [0, bound) (bound > 0), multiply-shift reduction.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

Point sample_in_triangle(const Triangle& t, std::mt19937_64& rng);

}  // namespace visguard
