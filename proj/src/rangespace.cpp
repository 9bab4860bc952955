#include "visguard/rangespace.hpp"

#include "visguard/triangulate.hpp"

#include <map>
#include <random>
#include <stdexcept>

namespace visguard {

RangeSpace make_range_space(int element_count, const std::vector<VertexSet>& ranges,
                            std::vector<std::vector<int>> origin) {
    if (origin.empty())
        for (std::size_t r = 0; r < ranges.size(); ++r) origin.push_back({static_cast<int>(r)});
    if (origin.size() != ranges.size()) throw std::invalid_argument("make_range_space: origin size mismatch");

    RangeSpace rs;
    rs.element_count = element_count;
    rs.ranges_of.assign(static_cast<std::size_t>(element_count), {});
    std::map<VertexSet, int> index;
    for (std::size_t r = 0; r < ranges.size(); ++r) {
        const VertexSet& s = ranges[r];
        if (static_cast<int>(s.size()) != element_count)
            throw std::invalid_argument("make_range_space: range over the wrong element count");
        if (s.none()) throw std::invalid_argument("make_range_space: empty range " + std::to_string(r));
        auto [it, fresh] = index.try_emplace(s, rs.range_count());
        if (fresh) {
            rs.ranges.push_back(s);
            rs.origin.emplace_back();
            rs.elements_of.push_back(members(s));
            for (int e : rs.elements_of.back()) rs.ranges_of[static_cast<std::size_t>(e)].push_back(it->second);
        }
        auto& o = rs.origin[static_cast<std::size_t>(it->second)];
        o.insert(o.end(), origin[r].begin(), origin[r].end());
    }
    return rs;
}

RangeSpace build_range_space(const Decomposition& D) {
    const auto sink_ids = sinks(build_dual(D));
    std::vector<VertexSet> ranges;
    std::vector<std::vector<int>> origin;
    for (int f : sink_ids) {
        const VertexSet& s = D.faces[static_cast<std::size_t>(f)].visible;
        if (s.none()) throw std::logic_error("build_range_space: sink " + std::to_string(f) + " sees no vertex");
        ranges.push_back(s);
        origin.push_back({f});
    }
    return make_range_space(D.source.n(), ranges, std::move(origin));
}

RangeSpace build_range_space(const PolygonWithHoles& P) { return build_range_space(decompose(P)); }

void Incidence::mark(int element) {
    for (int r : rs_->ranges_of[static_cast<std::size_t>(element)]) hit_[static_cast<std::size_t>(r)] = 1;
}

int Incidence::first_unhit() const {
    for (std::size_t r = 0; r < hit_.size(); ++r)
        if (!hit_[r]) return static_cast<int>(r);
    return -1;
}

bool covers(const RangeSpace& rs, std::span<const int> guards) {
    Incidence inc(rs);
    for (int g : guards) {
        if (g < 0 || g >= rs.element_count) throw std::invalid_argument("covers: guard id out of range");
        inc.mark(g);
    }
    return inc.first_unhit() < 0;
}

std::vector<Point> coverage_audit(const PolygonWithHoles& P, std::span<const int> guards, int samples,
                                  std::uint64_t seed) {
    AreaSampler sampler(triangulate(P));
    std::mt19937_64 rng(seed);
    std::vector<Point> failures;
    for (int i = 0; i < samples; ++i) {
        Point q = sampler.sample(rng);
        bool seen = false;
        for (int g : guards) {
            if (sees_unchecked(P, P.vertex(g), q)) {
                seen = true;
                break;
            }
        }
        if (!seen) failures.push_back(std::move(q));
    }
    return failures;
}

}  // namespace visguard
