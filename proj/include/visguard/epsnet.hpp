#pragma once

#include "visguard/polygon.hpp"
#include "visguard/rational.hpp"
#include "visguard/rangespace.hpp"
#include "visguard/solvers.hpp"
#include "visguard/vertex_set.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace visguard {

// ---- formulas ---------------------------------------------------------------

/// 23 for h <= 1, otherwise max(23, ceil(2 log2 h + 4 log2 max(1, log2 h)) + slack).
int vc_dim(int h, int slack = 4);

/// ceil(max(4/eps * log2(2/delta), 8d/eps * log2(13/eps))). Requires eps and
/// delta in (0, 1]; throws std::invalid_argument otherwise.
long sample_size(const Rational& epsilon, const Rational& delta, int d);

// Throws std::invalid_argument unless epsilon = 2^-k with k >= 0.
int dyadic_exponent(const Rational& epsilon);

std::uint64_t splitmix64(std::uint64_t x);
// Independent stream seed for a given base seed and stream index.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// ---- weights ----------------------------------------------------------------

/// Element weights 2^exponent, with elements bucketed by exponent.
class WeightMap {
public:
    explicit WeightMap(int element_count);

    int size() const { return static_cast<int>(exponent_.size()); }
    int exponent(int e) const { return exponent_[static_cast<std::size_t>(e)]; }
    std::uint64_t weight(int e) const { return std::uint64_t{1} << exponent(e); }
    std::uint64_t total() const { return total_; }
    std::uint64_t weight_of(std::span<const int> elements) const;
    const std::map<int, std::vector<int>>& buckets() const { return buckets_; }

    void double_weight(int e);

    // One draw proportional to weight: bucket by mass, then uniform inside it.
    int draw(std::mt19937_64& rng) const;

private:
    std::vector<int> exponent_;
    std::vector<std::size_t> slot_;  // position inside its bucket
    std::map<int, std::vector<int>> buckets_;
    std::uint64_t total_ = 0;
};

/// m independent weighted draws, deduplicated, ascending.
std::vector<int> sample_net(const WeightMap& weights, long m, std::mt19937_64& rng);

// ---- verifier ---------------------------------------------------------------

/// Resets the flags, marks the ranges hit by Y and returns the first unhit
/// range (nullopt when every range is hit).
std::optional<int> verify(Incidence& incidence, std::span<const int> Y);
std::optional<int> verify(const RangeSpace& rs, std::span<const int> Y);

// True iff Y hits every range whose weight is at least epsilon * total.
bool is_epsilon_net(const RangeSpace& rs, const WeightMap& weights, const Rational& epsilon, std::span<const int> Y);

// ---- net finders -------------------------------------------------------------

class NetFinder {
public:
    virtual ~NetFinder() = default;
    virtual std::string name() const = 0;
    virtual std::vector<int> find(const RangeSpace& rs, const WeightMap& weights, const Rational& epsilon,
                                  std::mt19937_64& rng) = 0;
};

/// Random sample of sample_size(epsilon, delta, d) weighted draws.
class SamplingNetFinder : public NetFinder {
public:
    explicit SamplingNetFinder(int d = 23, Rational delta = ratio(1, 2)) : d_(d), delta_(std::move(delta)) {}
    std::string name() const override { return "random"; }
    std::vector<int> find(const RangeSpace& rs, const WeightMap& weights, const Rational& epsilon,
                          std::mt19937_64& rng) override;

private:
    int d_;
    Rational delta_;
};

/// Deterministic net: greedy hitting set of the ranges with weight at least
/// epsilon * total.
class GreedyNetFinder : public NetFinder {
public:
    std::string name() const override { return "greedy"; }
    std::vector<int> find(const RangeSpace& rs, const WeightMap& weights, const Rational& epsilon,
                          std::mt19937_64& rng) override;
};

// ---- Bronnimann-Goodrich ----------------------------------------------------

struct BGRun {
    Rational epsilon;
    bool success = false;
    bool weight_cap_reached = false;
    int iterations = 0;
    int max_iterations = 0;
    std::vector<int> net;
    std::uint64_t max_total_weight = 0;
    std::vector<int> doublings;  // per element
};

/// Draw nets until one hits every range, doubling the weights of the first
/// unhit range after each miss. Fails after ceil(cap * (1/eps) * log2|X|)
/// iterations or when the total weight would pass |X|^4.
BGRun bg_run(const RangeSpace& rs, const Rational& epsilon, NetFinder& finder, std::mt19937_64& rng,
             double cap_constant = 4.0);

struct BGOptions {
    Rational epsilon_start = ratio(1, 2);
    double cap_constant = 4.0;
    std::uint64_t seed = 0;
};

struct BGResult {
    GuardSet guards;
    Rational epsilon;  // guess of the successful run
    std::vector<BGRun> runs;
};

/// Halves the guess after each failed run. Throws std::logic_error once the
/// guess drops below 1/(2|X|).
BGResult bg_solve(const RangeSpace& rs, NetFinder& finder, const BGOptions& options = {});

// ---- fragmentation schedule ---------------------------------------------------

struct KKSchedule {
    int t = 0;
    std::vector<std::int64_t> b;  // b[i - 1] = b_i, i = 1..t
    std::vector<std::int64_t> f;  // f[i] = f_i, i = 0..t
};

/// Requires epsilon = 2^-k <= 1/4, otherwise throws std::invalid_argument.
KKSchedule kk_params(const Rational& epsilon);

struct FragmentNode {
    int level = 0;
    int parent = -1;
    bool dummy = false;
    std::vector<int> vertices;  // contiguous in cyclic boundary order
    std::vector<int> children;  // normal children first, dummy last
};

/// Levels 0..t; a level i-1 node gets up to b_i normal children of
/// near-equal weight (never empty) plus one dummy child holding the
/// complement of the node's range.
class FragmentTree {
public:
    FragmentTree(int n, const WeightMap& weights, const KKSchedule& schedule);

    const std::vector<FragmentNode>& nodes() const { return nodes_; }
    std::vector<int> level(int i, bool include_dummy = false) const;

private:
    std::vector<FragmentNode> nodes_;
};

struct VisibilityMatrix {
    int n = 0;
    std::vector<VertexSet> rows;

    bool operator()(int i, int j) const { return rows[static_cast<std::size_t>(i)].test(static_cast<std::size_t>(j)); }
};

VisibilityMatrix visibility_matrix(const PolygonWithHoles& P);

struct PairContext {
    const std::vector<int>& u1;
    const std::vector<int>& u2;
    const WeightMap& weights;
    const VisibilityMatrix& matrix;
    Rational epsilon;       // target net parameter over the whole set
    Rational pair_epsilon;  // epsilon * total / pair weight, capped at 1
};

using PairRule = std::function<std::vector<int>(const PairContext&, std::mt19937_64&)>;

/// Weighted sample of sample_size(pair_epsilon, 1/2, 23) draws from u1 + u2.
std::vector<int> sampling_pair_rule(const PairContext& ctx, std::mt19937_64& rng);

struct KKOptions {
    PairRule rule = sampling_pair_rule;
    int max_attempts = 64;
};

/// Fragment-tree net for a simple polygon, verified over the ranges and
/// retried with fresh randomness on failure. Throws std::invalid_argument if
/// P has holes, std::runtime_error if no attempt yields an epsilon-net.
std::vector<int> kk_net(const PolygonWithHoles& P, const RangeSpace& rs, const VisibilityMatrix& matrix,
                        const Rational& epsilon, const WeightMap& weights, std::mt19937_64& rng,
                        const KKOptions& options = {});

/// NetFinder adapter; guesses above 1/4 use the 1/4 schedule.
class KKNetFinder : public NetFinder {
public:
    explicit KKNetFinder(const PolygonWithHoles& P, KKOptions options = {});
    std::string name() const override { return "kk"; }
    std::vector<int> find(const RangeSpace& rs, const WeightMap& weights, const Rational& epsilon,
                          std::mt19937_64& rng) override;

private:
    const PolygonWithHoles* P_;
    VisibilityMatrix matrix_;
    KKOptions options_;
};

}  // namespace visguard
