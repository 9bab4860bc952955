#pragma once

#include "visguard/arrangement.hpp"
#include "visguard/polygon.hpp"
#include "visguard/vertex_set.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace visguard {

/// Hitting-set instance: elements are vertex ids 0..n-1, each range is the
/// visible set of one or more sink cells.
struct RangeSpace {
    int element_count = 0;
    std::vector<VertexSet> ranges;
    std::vector<std::vector<int>> origin;       // range -> sink face ids
    std::vector<std::vector<int>> elements_of;  // range -> member elements
    std::vector<std::vector<int>> ranges_of;    // element -> ranges containing it

    int range_count() const { return static_cast<int>(ranges.size()); }
};

/// Deduplicates identical ranges (first occurrence wins) and builds the
/// incidence lists. Throws std::invalid_argument on an empty range or a
/// size mismatch.
RangeSpace make_range_space(int element_count, const std::vector<VertexSet>& ranges,
                            std::vector<std::vector<int>> origin = {});

// One range per distinct sink visible set, in sink face order.
RangeSpace build_range_space(const Decomposition& D);
RangeSpace build_range_space(const PolygonWithHoles& P);

/// Per-range hit flags over a range space.
class Incidence {
public:
    explicit Incidence(const RangeSpace& rs) : rs_(&rs), hit_(rs.ranges.size(), 0) {}

    void reset() { std::fill(hit_.begin(), hit_.end(), 0); }
    void mark(int element);
    bool hit(int range) const { return hit_[static_cast<std::size_t>(range)] != 0; }
    // -1 when every range is hit
    int first_unhit() const;

private:
    const RangeSpace* rs_;
    std::vector<char> hit_;
};

bool covers(const RangeSpace& rs, std::span<const int> guards);

/// Uniform sample points of P (triangle area weighting) seen by no guard.
std::vector<Point> coverage_audit(const PolygonWithHoles& P, std::span<const int> guards, int samples,
                                  std::uint64_t seed);

}  // namespace visguard
