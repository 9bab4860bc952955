#include "visguard/cli_io.hpp"

#include "visguard/rangespace.hpp"
#include "visguard/solvers.hpp"
#include "visguard/triangulate.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numbers>
#include <sstream>

namespace visguard {

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

// ---- polygon files ----

namespace {

struct Record {
    int line;
    std::vector<std::string> fields;
};

std::vector<Record> records(std::string_view document) {
    std::vector<Record> out;
    int line = 0;
    std::size_t pos = 0;
    while (pos <= document.size()) {
        const std::size_t end = std::min(document.find('\n', pos), document.size());
        ++line;
        std::istringstream in{std::string(document.substr(pos, end - pos))};
        Record r{line, {std::istream_iterator<std::string>(in), std::istream_iterator<std::string>()}};
        if (!r.fields.empty() && r.fields.front().front() != '#') out.push_back(std::move(r));
        pos = end + 1;
    }
    return out;
}

class RecordReader {
public:
    explicit RecordReader(std::string_view document) : records_(records(document)) {}

    const Record& next(const char* what) {
        if (at_ >= records_.size()) throw ParseError(last_line(), std::string("unexpected end of input, expected ") + what);
        return records_[at_++];
    }

    int count(const char* what, int minimum) {
        const Record& r = next(what);
        if (r.fields.size() != 1) throw ParseError(r.line, std::string("expected a single ") + what);
        const std::string& s = r.fields[0];
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }) || s.size() > 9)
            throw ParseError(r.line, std::string("malformed ") + what + " '" + s + "'");
        const int v = std::stoi(s);
        if (v < minimum)
            throw ParseError(r.line, std::string(what) + " " + s + " is below the minimum of " + std::to_string(minimum));
        return v;
    }

    Ring ring(int size) {
        Ring out;
        for (int i = 0; i < size; ++i) {
            const Record& r = next("a vertex line");
            if (r.fields.size() != 2) throw ParseError(r.line, "expected 2 coordinates, found " + std::to_string(r.fields.size()));
            try {
                out.emplace_back(parse_rational(r.fields[0]), parse_rational(r.fields[1]));
            } catch (const std::invalid_argument& e) {
                throw ParseError(r.line, e.what());
            }
        }
        return out;
    }

    void expect_end() {
        if (at_ < records_.size()) throw ParseError(records_[at_].line, "trailing content after the last ring");
    }

private:
    int last_line() const { return records_.empty() ? 0 : records_.back().line; }

    std::vector<Record> records_;
    std::size_t at_ = 0;
};

}  // namespace

PolygonWithHoles parse_polygon(std::string_view document) {
    RecordReader reader(document);
    Ring outer = reader.ring(reader.count("vertex count", 3));
    const int holes = reader.count("hole count", 0);
    std::vector<Ring> rings;
    for (int k = 0; k < holes; ++k) rings.push_back(reader.ring(reader.count("vertex count", 3)));
    reader.expect_end();
    try {
        return PolygonWithHoles::make(std::move(outer), std::move(rings));
    } catch (const ValidationError& e) {
        throw ParseError(0, std::string("validation failed: ") + e.what());
    }
}

std::string write_polygon(const PolygonWithHoles& P) {
    std::ostringstream out;
    auto ring = [&](int c) {
        out << P.ring_size(c) << '\n';
        for (const Point& p : P.ring(c)) out << to_string(p.x()) << ' ' << to_string(p.y()) << '\n';
    };
    ring(0);
    out << P.h() << '\n';
    for (int c = 1; c <= P.h(); ++c) ring(c);
    return out.str();
}

PolygonWithHoles read_polygon_file(const std::string& path) {
    std::ostringstream buffer;
    if (path == "-") {
        buffer << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw ParseError(0, "cannot open " + path);
        buffer << in.rdbuf();
    }
    return parse_polygon(buffer.str());
}

std::vector<int> parse_guard_list(std::string_view document) {
    std::vector<int> out;
    for (const Record& r : records(document)) {
        if (r.fields.size() != 1) throw ParseError(r.line, "expected one vertex id");
        const std::string& s = r.fields[0];
        if (s.size() > 9 || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw ParseError(r.line, "malformed vertex id '" + s + "'");
        out.push_back(std::stoi(s));
    }
    return out;
}

// ---- generators ----

namespace {

constexpr int kAttempts = 200;

Rational on_grid(double v) { return ratio(std::lround(v * 256.0), 256); }

Point grid_point(double x, double y) { return Point(on_grid(x), on_grid(y)); }

double jitter(std::mt19937_64& rng, double amplitude) { return (2.0 * uniform01(rng) - 1.0) * amplitude; }

Point jittered(std::mt19937_64& rng, double x, double y, double amplitude) {
    const double dx = jitter(rng, amplitude);
    const double dy = jitter(rng, amplitude);
    return grid_point(x + dx, y + dy);
}

// Retries the builder with fresh randomness until the result validates.
template <class Build>
PolygonWithHoles with_retries(std::uint64_t seed, const char* family, Build build) {
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
        try {
            return build(rng);
        } catch (const ValidationError&) {
        }
    }
    throw std::runtime_error(std::string(family) + ": no valid polygon within the attempt budget");
}

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

Ring quad(std::mt19937_64& rng, double cx, double cy, double half, double amplitude) {
    const double dx[4] = {-1, -1, 1, 1};
    const double dy[4] = {-1, 1, 1, -1};
    Ring out;
    for (int i = 0; i < 4; ++i)
        out.push_back(jittered(rng, cx + dx[i] * half, cy + dy[i] * half, amplitude));
    return out;
}

}  // namespace

PolygonWithHoles generate_comb(int teeth, int holes, std::uint64_t seed) {
    require(teeth >= 1 && teeth <= 100, "comb: teeth must lie in [1, 100]");
    require(holes >= 0 && holes < std::max(1, teeth), "comb: holes must lie in [0, teeth - 1]");
    constexpr double w = 4.0, gap = 6.0, base = 10.0, height = 40.0, amp = 0.1;
    return with_retries(seed, "comb", [&](std::mt19937_64& rng) {
        auto at = [&](double x, double y) { return jittered(rng, x, y, amp); };
        auto left = [&](int i) { return i * (w + gap); };
        const double length = left(teeth - 1) + w;
        Ring outer{at(0, 0), at(length, 0)};
        for (int i = teeth - 1; i >= 0; --i) {
            outer.push_back(at(left(i) + w, base + height));
            outer.push_back(at(left(i), base + height));
            if (i > 0) {
                outer.push_back(at(left(i), base));
                outer.push_back(at(left(i - 1) + w, base));
            }
        }
        std::vector<Ring> hs;
        for (int j = 0; j < holes; ++j) {
            const int g = static_cast<int>(std::floor((j + 0.5) * (teeth - 1) / holes));
            hs.push_back(quad(rng, left(g) + w + gap / 2.0, base / 2.0, 1.5, amp));
        }
        return PolygonWithHoles::make(std::move(outer), std::move(hs));
    });
}

PolygonWithHoles generate_spiral(int n, std::uint64_t seed) {
    require(n >= 6 && n <= 400, "spiral: n must lie in [6, 400]");
    constexpr double step = 0.35, width = 6.0, amp = 0.05;
    const int outer_count = (n + 1) / 2, inner_count = n / 2;
    const double span = (outer_count - 1) * step;
    return with_retries(seed, "spiral", [&](std::mt19937_64& rng) {
        auto at = [&](double theta, double r) {
            return jittered(rng, r * std::cos(theta), r * std::sin(theta), amp);
        };
        Ring ring;
        for (int i = 0; i < outer_count; ++i) {
            const double theta = span * i / (outer_count - 1);
            ring.push_back(at(theta, 10.0 + 8.0 * theta + width));
        }
        for (int j = inner_count - 1; j >= 0; --j) {
            const double theta = span * j / (inner_count - 1);
            ring.push_back(at(theta, 10.0 + 8.0 * theta));
        }
        return PolygonWithHoles::make(std::move(ring));
    });
}

PolygonWithHoles generate_grid_holes(int size, int holes, std::uint64_t seed) {
    require(size >= 4 && size <= 100000, "grid-holes: size must lie in [4, 100000]");
    require(holes >= 0 && holes <= 64, "grid-holes: holes must lie in [0, 64]");
    int g = 0;
    while (g * g < holes) ++g;
    const double s = size;
    const double cell = s / (g + 1);
    const double half = cell / 4.0;
    return with_retries(seed, "grid-holes", [&](std::mt19937_64& rng) {
        const double amp = s / 400.0;
        Ring outer{jittered(rng, 0, 0, amp), jittered(rng, s, 0, amp), jittered(rng, s, s, amp), jittered(rng, 0, s, amp)};
        std::vector<Ring> hs;
        for (int k = 0; k < holes; ++k)
            hs.push_back(quad(rng, (k % g + 1) * cell, (k / g + 1) * cell, half, half / 10.0));
        return PolygonWithHoles::make(std::move(outer), std::move(hs));
    });
}

PolygonWithHoles generate_star(int n, int holes, std::uint64_t seed) {
    require(holes >= 0 && holes <= 4, "star: holes must lie in [0, 4]");
    require(n >= 3 + 4 * holes && n <= 400, "star: n must lie in [3 + 4 holes, 400]");
    const int k = n - 4 * holes;
    return with_retries(seed, "star", [&](std::mt19937_64& rng) {
        Ring outer;
        for (int i = 0; i < k; ++i) {
            const double a = (i + 0.5 + jitter(rng, 0.3)) * 2.0 * std::numbers::pi / k;
            const double r = 5.0 + 7.0 * uniform01(rng);
            outer.push_back(grid_point(r * std::cos(a), r * std::sin(a)));
        }
        std::vector<Ring> hs;
        const double spread = holes == 1 ? 0.0 : 2.5;
        for (int j = 0; j < holes; ++j) {
            const double a = (j + jitter(rng, 0.2)) * 2.0 * std::numbers::pi / holes;
            hs.push_back(quad(rng, spread * std::cos(a), spread * std::sin(a), 0.6, 0.25));
        }
        return PolygonWithHoles::make(std::move(outer), std::move(hs));
    });
}

PolygonWithHoles generate_convex(int n, std::uint64_t seed) {
    require(n >= 3 && n <= 400, "convex: n must lie in [3, 400]");
    return with_retries(seed, "convex", [&](std::mt19937_64& rng) {
        Ring ring;
        for (int i = 0; i < n; ++i) {
            const double a = (i + jitter(rng, 0.2)) * 2.0 * std::numbers::pi / n;
            ring.push_back(grid_point(1000.0 * std::cos(a), 1000.0 * std::sin(a)));
        }
        PolygonWithHoles P = PolygonWithHoles::make(std::move(ring));
        for (int v = 0; v < P.n(); ++v)
            if (P.is_reflex(v)) throw ValidationError("convex: reflex vertex");
        return P;
    });
}

PolygonWithHoles generate(std::string_view family, std::span<const int> params, std::uint64_t seed) {
    auto arity = [&](std::size_t lo, std::size_t hi) {
        require(params.size() >= lo && params.size() <= hi,
                std::string(family) + ": expected " + std::to_string(lo) +
                    (hi > lo ? "-" + std::to_string(hi) : std::string()) + " parameters");
    };
    auto opt = [&](std::size_t i) { return params.size() > i ? params[i] : 0; };
    if (family == "comb") {
        arity(1, 2);
        return generate_comb(params[0], opt(1), seed);
    }
    if (family == "spiral") {
        arity(1, 1);
        return generate_spiral(params[0], seed);
    }
    if (family == "grid-holes") {
        arity(2, 2);
        return generate_grid_holes(params[0], params[1], seed);
    }
    if (family == "star") {
        arity(1, 2);
        return generate_star(params[0], opt(1), seed);
    }
    if (family == "convex") {
        arity(1, 1);
        return generate_convex(params[0], seed);
    }
    throw std::invalid_argument("unknown family '" + std::string(family) + "'");
}

// ---- statistics ----

double StatsReport::cell_ratio() const {
    const double nn = n;
    return cells / ((h + 1) * nn * nn * nn);
}

double StatsReport::sink_ratio() const {
    const double nn = n;
    return sinks / ((h + 1.0) * (h + 1.0) * nn * nn);
}

std::unique_ptr<NetFinder> make_net_finder(std::string_view name, const PolygonWithHoles& P) {
    if (name == "random") return std::make_unique<SamplingNetFinder>(vc_dim(P.h()));
    if (name == "greedy") return std::make_unique<GreedyNetFinder>();
    if (name == "kk") return std::make_unique<KKNetFinder>(P);
    throw std::invalid_argument("unknown net finder '" + std::string(name) + "' (random, greedy, kk)");
}

StatsReport compute_stats(const PolygonWithHoles& P, std::string name, const StatsOptions& options) {
    StatsReport r;
    r.name = std::move(name);
    r.n = P.n();
    r.h = P.h();
    const Decomposition D = decompose(P);
    for (const Window& w : D.windows) {
        switch (w.kind) {
            case WindowKind::Left: ++r.windows_left; break;
            case WindowKind::Right: ++r.windows_right; break;
            case WindowKind::Trans: ++r.windows_trans; break;
        }
    }
    r.crossings = D.crossing_count;
    r.cells = static_cast<int>(D.faces.size());
    r.sinks = static_cast<int>(sinks(build_dual(D)).size());
    const RangeSpace rs = build_range_space(D);
    r.ranges = rs.range_count();

    const GuardSet greedy = greedy_guards(rs);
    r.methods.push_back({"greedy", static_cast<int>(greedy.guards.size()), greedy.seconds});

    const auto t0 = std::chrono::steady_clock::now();
    auto finder = make_net_finder(options.net_finder, P);
    const BGResult bg = bg_solve(rs, *finder, options.bg);
    r.methods.push_back({"bg", static_cast<int>(bg.guards.guards.size()),
                         std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()});

    if (P.n() <= std::min(options.oracle_cap, 63)) {
        const GuardSet exact = exact_guards(rs, options.oracle_cap);
        r.methods.push_back({"exact", static_cast<int>(exact.guards.size()), exact.seconds});
    } else {
        r.methods.push_back({"exact", std::nullopt, 0.0});
    }
    return r;
}

namespace {

std::string fixed(double v, const char* format) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

}  // namespace

std::vector<std::string> stats_header() {
    return {"name",   "n",     "h",       "windows", "left",    "right",  "trans",      "crossings", "cells", "sinks",
            "ranges", "greedy", "greedy_s", "bg",     "bg_s",   "exact", "exact_s", "cell_ratio", "sink_ratio"};
}

std::vector<std::string> stats_row(const StatsReport& r) {
    std::vector<std::string> row{r.name,
                                 std::to_string(r.n),
                                 std::to_string(r.h),
                                 std::to_string(r.windows()),
                                 std::to_string(r.windows_left),
                                 std::to_string(r.windows_right),
                                 std::to_string(r.windows_trans),
                                 std::to_string(r.crossings),
                                 std::to_string(r.cells),
                                 std::to_string(r.sinks),
                                 std::to_string(r.ranges)};
    for (const char* method : {"greedy", "bg", "exact"}) {
        const auto it = std::find_if(r.methods.begin(), r.methods.end(), [&](const MethodStats& m) { return m.method == method; });
        if (it == r.methods.end() || !it->size) {
            row.push_back("-");
            row.push_back("-");
        } else {
            row.push_back(std::to_string(*it->size));
            row.push_back(fixed(it->seconds, "%.6f"));
        }
    }
    row.push_back(fixed(r.cell_ratio(), "%.6g"));
    row.push_back(fixed(r.sink_ratio(), "%.6g"));
    return row;
}

std::string stats_table(std::span<const StatsReport> reports) {
    std::vector<std::vector<std::string>> rows{stats_header()};
    for (const StatsReport& r : reports) rows.push_back(stats_row(r));
    std::vector<std::size_t> width(rows[0].size(), 0);
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) line += "  ";
            const std::string pad(width[c] - row[c].size(), ' ');
            line += c == 0 ? row[c] + pad : pad + row[c];
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + '\n';
    }
    return out;
}

std::string stats_csv(std::span<const StatsReport> reports) {
    auto join = [](const std::vector<std::string>& row) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) line += ',';
            const bool quote = row[c].find_first_of(",\"\n") != std::string::npos;
            if (!quote) {
                line += row[c];
                continue;
            }
            line += '"';
            for (char ch : row[c]) line += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            line += '"';
        }
        return line + '\n';
    };
    std::string out = join(stats_header());
    for (const StatsReport& r : reports) out += join(stats_row(r));
    return out;
}

// ---- rendering ----

std::string display_number(const Rational& q) {
    static const mpz_class scale("1000000000");
    const Rational scaled = q * Rational(scale) + ratio(1, 2);
    mpz_class units;
    mpz_fdiv_q(units.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    const bool negative = units < 0;
    if (negative) units = -units;
    mpz_class whole, frac;
    mpz_fdiv_qr(whole.get_mpz_t(), frac.get_mpz_t(), units.get_mpz_t(), scale.get_mpz_t());
    std::string digits = frac.get_str();
    digits.insert(0, 9 - digits.size(), '0');
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
    std::string out = whole.get_str();
    if (!digits.empty()) out += "." + digits;
    if (negative && out != "0") out.insert(0, "-");
    return out;
}

std::string render_svg(const Decomposition& D, std::span<const int> guards) {
    const PolygonWithHoles& P = D.source;
    Rational min_x = P.vertex(0).x(), max_x = min_x, min_y = P.vertex(0).y(), max_y = min_y;
    for (const Point& p : P.vertices()) {
        min_x = std::min(min_x, p.x());
        max_x = std::max(max_x, p.x());
        min_y = std::min(min_y, p.y());
        max_y = std::max(max_y, p.y());
    }
    const Rational flip = min_y + max_y;
    const Rational extent = std::max(max_x - min_x, max_y - min_y);
    const Rational margin = extent / 20;
    auto X = [&](const Point& p) { return display_number(p.x()); };
    auto Y = [&](const Point& p) { return display_number(flip - p.y()); };
    auto path = [&](const std::vector<Ring>& rings) {
        std::string d;
        for (const Ring& ring : rings) {
            for (std::size_t i = 0; i < ring.size(); ++i) d += (i == 0 ? "M " : " L ") + X(ring[i]) + " " + Y(ring[i]);
            d += " Z ";
        }
        if (!d.empty()) d.pop_back();
        return d;
    };
    const std::string stroke = display_number(extent / 400);

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << display_number(min_x - margin) << ' '
        << display_number(min_y - margin) << ' ' << display_number(max_x - min_x + 2 * margin) << ' '
        << display_number(max_y - min_y + 2 * margin) << "\" width=\"800\" height=\"800\">\n";

    out << "<g id=\"sinks\" fill=\"#d9d9d9\" fill-rule=\"evenodd\" stroke=\"none\">\n";
    if (!D.faces.empty()) {
        for (int f : sinks(build_dual(D))) out << "<path d=\"" << path(D.face_rings(f)) << "\"/>\n";
    }
    out << "</g>\n";

    std::vector<Ring> boundary;
    for (int c = 0; c <= P.h(); ++c) boundary.emplace_back(P.ring(c).begin(), P.ring(c).end());
    out << "<path id=\"boundary\" d=\"" << path(boundary) << "\" fill=\"none\" stroke=\"black\" stroke-width=\""
        << display_number(extent / 200) << "\"/>\n";

    out << "<g id=\"windows\" stroke-width=\"" << stroke << "\">\n";
    for (const Window& w : D.windows) {
        const char* color = w.kind == WindowKind::Left ? "#1f77b4" : w.kind == WindowKind::Right ? "#d62728" : "#2ca02c";
        out << "<line class=\"" << to_string(w.kind) << "\" x1=\"" << X(w.base) << "\" y1=\"" << Y(w.base) << "\" x2=\""
            << X(w.end) << "\" y2=\"" << Y(w.end) << "\" stroke=\"" << color << "\"/>\n";
    }
    out << "</g>\n";

    out << "<g id=\"guards\" fill=\"#ff7f0e\" stroke=\"black\" stroke-width=\"" << stroke << "\">\n";
    for (int g : guards) {
        const Point& p = P.vertex(g);
        out << "<circle cx=\"" << X(p) << "\" cy=\"" << Y(p) << "\" r=\"" << display_number(extent / 80) << "\"/>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

}  // namespace visguard
