#include "visguard/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>

namespace visguard {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

GuardSet greedy_guards(const RangeSpace& rs) {
    const auto t0 = std::chrono::steady_clock::now();
    GuardSet out;
    out.method = "greedy";
    const std::size_t n = static_cast<std::size_t>(rs.element_count);
    std::vector<int> unhit_count(n);
    for (std::size_t e = 0; e < n; ++e) unhit_count[e] = static_cast<int>(rs.ranges_of[e].size());
    std::vector<char> hit(rs.ranges.size(), 0);
    std::size_t remaining = rs.ranges.size();
    while (remaining > 0) {
        std::size_t best = 0;
        for (std::size_t e = 1; e < n; ++e)
            if (unhit_count[e] > unhit_count[best]) best = e;
        if (unhit_count[best] == 0) throw std::logic_error("greedy_guards: a range has no elements");
        out.guards.push_back(static_cast<int>(best));
        ++out.iterations;
        for (int r : rs.ranges_of[best]) {
            if (hit[static_cast<std::size_t>(r)]) continue;
            hit[static_cast<std::size_t>(r)] = 1;
            --remaining;
            for (int e : rs.elements_of[static_cast<std::size_t>(r)]) --unhit_count[static_cast<std::size_t>(e)];
        }
    }
    std::sort(out.guards.begin(), out.guards.end());
    out.seconds = seconds_since(t0);
    return out;
}

namespace {

class ExactSearch {
public:
    explicit ExactSearch(const RangeSpace& rs) {
        for (const auto& members : rs.elements_of) {
            std::uint64_t m = 0;
            for (int e : members) m |= std::uint64_t{1} << e;
            masks_.push_back(m);
        }
    }

    // Lexicographically first hitting set of exactly k elements.
    bool search(int k, std::vector<int>& chosen, std::uint64_t& nodes) { return dfs(k, 0, 0, chosen, nodes); }

private:
    bool dfs(int k, int start, std::uint64_t picked, std::vector<int>& chosen, std::uint64_t& nodes) {
        ++nodes;
        int first = -1;
        for (std::size_t r = 0; r < masks_.size(); ++r) {
            if ((masks_[r] & picked) == 0) {
                first = static_cast<int>(r);
                break;
            }
        }
        if (first < 0) return true;
        if (static_cast<int>(chosen.size()) == k) return false;
        const std::uint64_t reachable = masks_[static_cast<std::size_t>(first)] & (~std::uint64_t{0} << start);
        if (reachable == 0) return false;
        // The next pick cannot exceed every remaining element of the first unhit range.
        const int limit = 63 - __builtin_clzll(reachable);
        for (int e = start; e <= limit; ++e) {
            chosen.push_back(e);
            if (dfs(k, e + 1, picked | (std::uint64_t{1} << e), chosen, nodes)) return true;
            chosen.pop_back();
        }
        return false;
    }

    std::vector<std::uint64_t> masks_;
};

}  // namespace

GuardSet exact_guards(const RangeSpace& rs, int cap) {
    if (rs.element_count > cap)
        throw std::invalid_argument("exact_guards: n = " + std::to_string(rs.element_count) + " exceeds the cap " +
                                    std::to_string(cap));
    if (rs.element_count > 63) throw std::invalid_argument("exact_guards: at most 63 elements supported");
    const auto t0 = std::chrono::steady_clock::now();
    GuardSet out;
    out.method = "exact";
    ExactSearch search(rs);
    std::uint64_t nodes = 0;
    for (int k = 0; k <= rs.element_count; ++k) {
        std::vector<int> chosen;
        if (search.search(k, chosen, nodes)) {
            out.guards = std::move(chosen);
            break;
        }
    }
    out.iterations = static_cast<int>(std::min<std::uint64_t>(nodes, std::numeric_limits<int>::max()));
    out.seconds = seconds_since(t0);
    return out;
}

VerifyReport verify_guard_set(const PolygonWithHoles& P, const RangeSpace& rs, const std::vector<int>& guards,
                              const VerifyOptions& options) {
    VerifyReport report;
    report.covers = covers(rs, guards);
    report.audit_failures = coverage_audit(P, guards, options.samples, options.seed);
    if (rs.element_count <= std::min(options.oracle_cap, 63)) {
        report.opt = static_cast<int>(exact_guards(rs, options.oracle_cap).guards.size());
        if (*report.opt > 0) report.ratio = static_cast<double>(guards.size()) / *report.opt;
    }
    return report;
}

}  // namespace visguard
