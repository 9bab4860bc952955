#pragma once

#include "visguard/polygon.hpp"
#include "visguard/rangespace.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace visguard {

struct GuardSet {
    std::vector<int> guards;  // ascending vertex ids
    std::string method;
    int iterations = 0;
    double seconds = 0.0;
};

/// Picks the vertex hitting most unhit ranges (lowest id on ties) until
/// every range is hit.
GuardSet greedy_guards(const RangeSpace& rs);

/// Minimum hitting set; the lexicographically first one among those of
/// minimum size. Throws std::invalid_argument if element_count > cap.
GuardSet exact_guards(const RangeSpace& rs, int cap = 20);

struct VerifyOptions {
    int samples = 10000;
    std::uint64_t seed = 0;
    int oracle_cap = 20;
};

struct VerifyReport {
    bool covers = false;
    std::vector<Point> audit_failures;
    std::optional<int> opt;
    std::optional<double> ratio;  // |G| / opt

    bool ok() const { return covers && audit_failures.empty(); }
};

VerifyReport verify_guard_set(const PolygonWithHoles& P, const RangeSpace& rs, const std::vector<int>& guards,
                              const VerifyOptions& options = {});

}  // namespace visguard
