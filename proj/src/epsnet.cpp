#include "visguard/epsnet.hpp"

#include "visguard/triangulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace visguard {

namespace {

long double log2_of(const Rational& q) {
    return std::log2(static_cast<long double>(q.get_num().get_d())) -
           std::log2(static_cast<long double>(q.get_den().get_d()));
}

Rational from_u64(std::uint64_t v) {
    mpz_class z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return Rational(z);
}

}  // namespace

int vc_dim(int h, int slack) {
    if (h < 0) throw std::invalid_argument("vc_dim: negative hole count");
    if (h <= 1) return 23;
    const double l = std::log2(static_cast<double>(h));
    const int term = static_cast<int>(std::ceil(2.0 * l + 4.0 * std::log2(std::max(1.0, l)))) + slack;
    return std::max(23, term);
}

long sample_size(const Rational& epsilon, const Rational& delta, int d) {
    if (epsilon <= 0 || epsilon > 1) throw std::invalid_argument("sample_size: epsilon must lie in (0, 1]");
    if (delta <= 0 || delta > 1) throw std::invalid_argument("sample_size: delta must lie in (0, 1]");
    if (d < 1) throw std::invalid_argument("sample_size: d must be positive");
    const long double inv_eps = static_cast<long double>(Rational(1 / epsilon).get_d());
    const long double a = 4.0L * inv_eps * log2_of(2 / delta);
    const long double b = 8.0L * d * inv_eps * log2_of(13 / epsilon);
    return static_cast<long>(std::ceil(std::max(a, b)));
}

int dyadic_exponent(const Rational& epsilon) {
    if (epsilon <= 0 || epsilon > 1 || epsilon.get_num() != 1)
        throw std::invalid_argument("epsilon must be a power of 1/2, got " + to_string(epsilon));
    const mpz_class& den = epsilon.get_den();
    const std::size_t bits = mpz_sizeinbase(den.get_mpz_t(), 2);
    if (mpz_popcount(den.get_mpz_t()) != 1) throw std::invalid_argument("epsilon must be a power of 1/2, got " + to_string(epsilon));
    return static_cast<int>(bits) - 1;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) { return splitmix64(splitmix64(seed) ^ stream); }

// ---- WeightMap ----

WeightMap::WeightMap(int element_count)
    : exponent_(static_cast<std::size_t>(element_count), 0), slot_(static_cast<std::size_t>(element_count)) {
    auto& b = buckets_[0];
    for (int e = 0; e < element_count; ++e) {
        slot_[static_cast<std::size_t>(e)] = b.size();
        b.push_back(e);
    }
    total_ = static_cast<std::uint64_t>(element_count);
    if (element_count == 0) buckets_.clear();
}

std::uint64_t WeightMap::weight_of(std::span<const int> elements) const {
    std::uint64_t s = 0;
    for (int e : elements) s += weight(e);
    return s;
}

void WeightMap::double_weight(int e) {
    const auto i = static_cast<std::size_t>(e);
    const int x = exponent_[i];
    const std::uint64_t w = std::uint64_t{1} << x;
    if (x >= 62 || total_ > std::numeric_limits<std::uint64_t>::max() - w)
        throw std::overflow_error("WeightMap: weight overflow");
    auto& from = buckets_[x];
    const int moved = from.back();
    from[slot_[i]] = moved;
    slot_[static_cast<std::size_t>(moved)] = slot_[i];
    from.pop_back();
    if (from.empty()) buckets_.erase(x);
    auto& to = buckets_[x + 1];
    slot_[i] = to.size();
    to.push_back(e);
    exponent_[i] = x + 1;
    total_ += w;
}

int WeightMap::draw(std::mt19937_64& rng) const {
    if (total_ == 0) throw std::logic_error("WeightMap: no mass");
    std::uint64_t r = uniform_below(rng, total_);
    for (const auto& [x, elems] : buckets_) {
        const std::uint64_t mass = static_cast<std::uint64_t>(elems.size()) << x;
        if (r < mass) return elems[static_cast<std::size_t>(r >> x)];
        r -= mass;
    }
    throw std::logic_error("WeightMap: inconsistent bucket masses");
}

std::vector<int> sample_net(const WeightMap& weights, long m, std::mt19937_64& rng) {
    std::vector<char> in(static_cast<std::size_t>(weights.size()), 0);
    for (long i = 0; i < m; ++i) in[static_cast<std::size_t>(weights.draw(rng))] = 1;
    std::vector<int> out;
    for (std::size_t e = 0; e < in.size(); ++e)
        if (in[e]) out.push_back(static_cast<int>(e));
    return out;
}

// ---- verifier ----

std::optional<int> verify(Incidence& incidence, std::span<const int> Y) {
    incidence.reset();
    for (int y : Y) incidence.mark(y);
    const int r = incidence.first_unhit();
    if (r < 0) return std::nullopt;
    return r;
}

std::optional<int> verify(const RangeSpace& rs, std::span<const int> Y) {
    Incidence inc(rs);
    return verify(inc, Y);
}

namespace {

bool is_heavy(std::uint64_t range_weight, std::uint64_t total, const Rational& epsilon) {
    return from_u64(range_weight) >= epsilon * from_u64(total);
}

std::vector<int> heavy_ranges(const RangeSpace& rs, const WeightMap& weights, const Rational& epsilon) {
    std::vector<int> out;
    for (int r = 0; r < rs.range_count(); ++r)
        if (is_heavy(weights.weight_of(rs.elements_of[static_cast<std::size_t>(r)]), weights.total(), epsilon))
            out.push_back(r);
    return out;
}

}  // namespace

bool is_epsilon_net(const RangeSpace& rs, const WeightMap& weights, const Rational& epsilon, std::span<const int> Y) {
    std::vector<char> in(static_cast<std::size_t>(rs.element_count), 0);
    for (int y : Y) in[static_cast<std::size_t>(y)] = 1;
    for (int r : heavy_ranges(rs, weights, epsilon)) {
        bool hit = false;
        for (int e : rs.elements_of[static_cast<std::size_t>(r)]) hit |= in[static_cast<std::size_t>(e)] != 0;
        if (!hit) return false;
    }
    return true;
}

// ---- finders ----

std::vector<int> SamplingNetFinder::find(const RangeSpace&, const WeightMap& weights, const Rational& epsilon,
                                         std::mt19937_64& rng) {
    return sample_net(weights, sample_size(epsilon, delta_, d_), rng);
}

std::vector<int> GreedyNetFinder::find(const RangeSpace& rs, const WeightMap& weights, const Rational& epsilon,
                                       std::mt19937_64&) {
    const std::vector<int> heavy = heavy_ranges(rs, weights, epsilon);
    std::vector<char> hit(heavy.size(), 0);
    std::vector<int> out;
    std::size_t remaining = heavy.size();
    while (remaining > 0) {
        std::vector<int> count(static_cast<std::size_t>(rs.element_count), 0);
        for (std::size_t k = 0; k < heavy.size(); ++k)
            if (!hit[k])
                for (int e : rs.elements_of[static_cast<std::size_t>(heavy[k])]) ++count[static_cast<std::size_t>(e)];
        const auto best = static_cast<int>(std::max_element(count.begin(), count.end()) - count.begin());
        out.push_back(best);
        for (std::size_t k = 0; k < heavy.size(); ++k) {
            if (hit[k]) continue;
            if (rs.ranges[static_cast<std::size_t>(heavy[k])].test(static_cast<std::size_t>(best))) {
                hit[k] = 1;
                --remaining;
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- Bronnimann-Goodrich ----

BGRun bg_run(const RangeSpace& rs, const Rational& epsilon, NetFinder& finder, std::mt19937_64& rng,
             double cap_constant) {
    dyadic_exponent(epsilon);
    const int n = rs.element_count;
    BGRun run;
    run.epsilon = epsilon;
    const double inv_eps = Rational(1 / epsilon).get_d();
    run.max_iterations = std::max(1, static_cast<int>(std::ceil(cap_constant * inv_eps * std::log2(std::max(1, n)))));
    run.doublings.assign(static_cast<std::size_t>(n), 0);
    const std::uint64_t limit = static_cast<std::uint64_t>(n) * n * n * n;

    WeightMap weights(n);
    Incidence incidence(rs);
    run.max_total_weight = weights.total();
    for (int it = 1; it <= run.max_iterations; ++it) {
        run.iterations = it;
        std::vector<int> net = finder.find(rs, weights, epsilon, rng);
        const auto unhit = verify(incidence, net);
        if (!unhit) {
            run.success = true;
            run.net = std::move(net);
            return run;
        }
        const auto& members = rs.elements_of[static_cast<std::size_t>(*unhit)];
        if (weights.total() + weights.weight_of(members) > limit) {
            run.weight_cap_reached = true;
            return run;
        }
        for (int e : members) {
            weights.double_weight(e);
            ++run.doublings[static_cast<std::size_t>(e)];
        }
        run.max_total_weight = std::max(run.max_total_weight, weights.total());
    }
    return run;
}

BGResult bg_solve(const RangeSpace& rs, NetFinder& finder, const BGOptions& options) {
    dyadic_exponent(options.epsilon_start);
    const Rational floor = Rational(1) / (2 * std::max(1, rs.element_count));
    BGResult result;
    result.guards.method = "bg";
    Rational epsilon = options.epsilon_start;
    for (std::uint64_t attempt = 0;; ++attempt) {
        if (epsilon < floor) throw std::logic_error("bg_solve: epsilon fell below 1/(2n) without success");
        std::mt19937_64 rng(derive_seed(options.seed, attempt));
        BGRun run = bg_run(rs, epsilon, finder, rng, options.cap_constant);
        result.guards.iterations += run.iterations;
        const bool ok = run.success;
        if (ok) result.guards.guards = run.net;
        result.runs.push_back(std::move(run));
        if (ok) {
            result.epsilon = epsilon;
            return result;
        }
        epsilon /= 2;
    }
}

// ---- fragmentation schedule ----

KKSchedule kk_params(const Rational& epsilon) {
    const int k = dyadic_exponent(epsilon);
    if (k < 2) throw std::invalid_argument("kk_params: epsilon must be at most 1/4");
    int t = 0;
    while ((1 << t) < k) ++t;
    t = std::max(1, t);
    if ((1 << t) + 2 >= 62) throw std::invalid_argument("kk_params: epsilon too small");
    KKSchedule s;
    s.t = t;
    const std::int64_t four_t = 4 * t;
    s.b.push_back(four_t << ((1 << (t - 1)) + 2 - t));
    for (int i = 2; i <= t; ++i) s.b.push_back(std::int64_t{1} << ((1 << (t - i)) + 1));
    s.f.push_back(1);
    for (int i = 1; i <= t; ++i) s.f.push_back(four_t << ((1 << t) - (1 << (t - i)) - t + i + 1));
    for (int i = 1; i <= t; ++i)
        if (s.f[static_cast<std::size_t>(i)] != s.f[static_cast<std::size_t>(i - 1)] * s.b[static_cast<std::size_t>(i - 1)])
            throw std::logic_error("kk_params: inconsistent schedule");
    return s;
}

namespace {

// Splits items into c contiguous non-empty parts of near-equal weight.
std::vector<std::vector<int>> split_by_weight(const std::vector<int>& items, std::size_t c, const WeightMap& w) {
    const std::size_t s = items.size();
    c = std::min(c, s);
    std::vector<std::vector<int>> parts;
    if (c == 0) return parts;
    using u128 = unsigned __int128;
    const u128 total = w.weight_of(items);
    std::size_t start = 0;
    u128 prefix = 0;
    for (std::size_t k = 1; k < c; ++k) {
        std::size_t end = start + 1;  // every part gets at least one item
        prefix += w.weight(items[start]);
        // extend while still below the k-th quantile, leaving room for the remaining parts
        while (end < s - (c - k) && prefix * c < static_cast<u128>(k) * total) {
            prefix += w.weight(items[end]);
            ++end;
        }
        parts.emplace_back(items.begin() + static_cast<std::ptrdiff_t>(start), items.begin() + static_cast<std::ptrdiff_t>(end));
        start = end;
    }
    parts.emplace_back(items.begin() + static_cast<std::ptrdiff_t>(start), items.end());
    return parts;
}

}  // namespace

FragmentTree::FragmentTree(int n, const WeightMap& weights, const KKSchedule& schedule) {
    FragmentNode root;
    for (int v = 0; v < n; ++v) root.vertices.push_back(v);
    nodes_.push_back(std::move(root));
    std::vector<int> frontier{0};
    for (int i = 1; i <= schedule.t; ++i) {
        std::vector<int> next;
        for (int id : frontier) {
            const std::vector<int> range = nodes_[static_cast<std::size_t>(id)].vertices;
            for (auto& part : split_by_weight(range, static_cast<std::size_t>(schedule.b[static_cast<std::size_t>(i - 1)]), weights)) {
                FragmentNode child;
                child.level = i;
                child.parent = id;
                child.vertices = std::move(part);
                nodes_[static_cast<std::size_t>(id)].children.push_back(static_cast<int>(nodes_.size()));
                next.push_back(static_cast<int>(nodes_.size()));
                nodes_.push_back(std::move(child));
            }
            // dummy child: everything outside the node's range, in cyclic order after it
            FragmentNode dummy;
            dummy.level = i;
            dummy.parent = id;
            dummy.dummy = true;
            std::vector<char> inside(static_cast<std::size_t>(n), 0);
            for (int v : range) inside[static_cast<std::size_t>(v)] = 1;
            if (!range.empty()) {
                for (int k = 1; k <= n; ++k) {
                    const int v = (range.back() + k) % n;
                    if (!inside[static_cast<std::size_t>(v)]) dummy.vertices.push_back(v);
                }
            }
            if (!dummy.vertices.empty()) {
                nodes_[static_cast<std::size_t>(id)].children.push_back(static_cast<int>(nodes_.size()));
                nodes_.push_back(std::move(dummy));
            }
        }
        frontier = std::move(next);
    }
}

std::vector<int> FragmentTree::level(int i, bool include_dummy) const {
    std::vector<int> out;
    for (std::size_t k = 0; k < nodes_.size(); ++k)
        if (nodes_[k].level == i && (include_dummy || !nodes_[k].dummy)) out.push_back(static_cast<int>(k));
    return out;
}

VisibilityMatrix visibility_matrix(const PolygonWithHoles& P) {
    VisibilityMatrix M;
    M.n = P.n();
    M.rows.assign(static_cast<std::size_t>(P.n()), VertexSet(static_cast<std::size_t>(P.n())));
    for (int i = 0; i < P.n(); ++i) {
        M.rows[static_cast<std::size_t>(i)].set(static_cast<std::size_t>(i));
        for (int j = i + 1; j < P.n(); ++j) {
            if (sees(P, P.vertex(i), P.vertex(j))) {
                M.rows[static_cast<std::size_t>(i)].set(static_cast<std::size_t>(j));
                M.rows[static_cast<std::size_t>(j)].set(static_cast<std::size_t>(i));
            }
        }
    }
    return M;
}

std::vector<int> sampling_pair_rule(const PairContext& ctx, std::mt19937_64& rng) {
    std::vector<int> pool(ctx.u1);
    pool.insert(pool.end(), ctx.u2.begin(), ctx.u2.end());
    std::vector<std::uint64_t> cumulative;
    std::uint64_t acc = 0;
    for (int v : pool) cumulative.push_back(acc += ctx.weights.weight(v));
    const long m = sample_size(ctx.pair_epsilon, ratio(1, 2), 23);
    std::set<int> picked;
    for (long i = 0; i < m; ++i) {
        const std::uint64_t r = uniform_below(rng, acc);
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
        picked.insert(pool[static_cast<std::size_t>(it - cumulative.begin())]);
    }
    return {picked.begin(), picked.end()};
}

std::vector<int> kk_net(const PolygonWithHoles& P, const RangeSpace& rs, const VisibilityMatrix& matrix,
                        const Rational& epsilon, const WeightMap& weights, std::mt19937_64& rng,
                        const KKOptions& options) {
    if (P.h() > 0) throw std::invalid_argument("kk_net: polygon has holes");
    const KKSchedule schedule = kk_params(epsilon);
    const FragmentTree tree(P.n(), weights, schedule);
    const Rational total = from_u64(weights.total());
    for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
        std::set<int> net;
        for (const FragmentNode& node : tree.nodes()) {
            const auto& kids = node.children;
            for (std::size_t a = 0; a < kids.size(); ++a) {
                for (std::size_t b = a + 1; b < kids.size(); ++b) {
                    const auto& u1 = tree.nodes()[static_cast<std::size_t>(kids[a])].vertices;
                    const auto& u2 = tree.nodes()[static_cast<std::size_t>(kids[b])].vertices;
                    const std::uint64_t w = weights.weight_of(u1) + weights.weight_of(u2);
                    Rational pair_eps = epsilon * total / from_u64(w);
                    if (pair_eps > 1) pair_eps = 1;
                    const PairContext ctx{u1, u2, weights, matrix, epsilon, pair_eps};
                    for (int v : options.rule(ctx, rng)) net.insert(v);
                }
            }
        }
        std::vector<int> out(net.begin(), net.end());
        if (is_epsilon_net(rs, weights, epsilon, out)) return out;
    }
    throw std::runtime_error("kk_net: no epsilon-net found within the attempt budget");
}

KKNetFinder::KKNetFinder(const PolygonWithHoles& P, KKOptions options)
    : P_(&P), matrix_(visibility_matrix(P)), options_(std::move(options)) {
    if (P.h() > 0) throw std::invalid_argument("KKNetFinder: polygon has holes");
}

std::vector<int> KKNetFinder::find(const RangeSpace& rs, const WeightMap& weights, const Rational& epsilon,
                                   std::mt19937_64& rng) {
    const Rational quarter = ratio(1, 4);
    return kk_net(*P_, rs, matrix_, epsilon > quarter ? quarter : epsilon, weights, rng, options_);
}

}  // namespace visguard
