#include "visguard/cli_io.hpp"

#include "visguard/rangespace.hpp"
#include "visguard/solvers.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace visguard {

namespace {

struct CommonFlags {
    std::string polygon;
    std::uint64_t seed = 0;
    int samples = 10000;
    std::string epsilon_start = "1/2";
    int oracle_cap = 20;
    std::string net_finder = "random";
    bool cells = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("polygon", f.polygon, "polygon file, - for standard input")->required();
    cmd->add_option("--seed", f.seed, "random seed (VISGUARD_SEED overrides)");
    cmd->add_option("--samples", f.samples, "audit sample count")->check(CLI::NonNegativeNumber);
    cmd->add_option("--epsilon-start", f.epsilon_start, "first epsilon guess, a power of 1/2");
    cmd->add_option("--oracle-cap", f.oracle_cap, "largest n for exact search");
    cmd->add_option("--net-finder", f.net_finder, "net finder for bg: random, greedy or kk");
}

std::uint64_t effective_seed(std::uint64_t flag) {
    const char* env = std::getenv("VISGUARD_SEED");
    if (env == nullptr || *env == '\0') return flag;
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(env, &used, 10);
        if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("VISGUARD_SEED is not an unsigned integer: ") + env);
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path);
}

GuardSet solve(const PolygonWithHoles& P, const RangeSpace& rs, const std::string& method, const CommonFlags& f) {
    if (method == "greedy") return greedy_guards(rs);
    if (method == "exact") return exact_guards(rs, f.oracle_cap);
    if (method == "bg" || method == "kk") {
        const auto t0 = std::chrono::steady_clock::now();
        auto finder = make_net_finder(method == "kk" ? "kk" : f.net_finder, P);
        BGOptions options;
        options.epsilon_start = parse_rational(f.epsilon_start);
        options.seed = effective_seed(f.seed);
        BGResult result = bg_solve(rs, *finder, options);
        result.guards.method = method;
        result.guards.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return result.guards;
    }
    throw std::invalid_argument("unknown method '" + method + "' (greedy, bg, kk, exact)");
}

void emit_cells(const Decomposition& D, const std::vector<int>& sink_ids, bool only_sinks, std::ostream& out) {
    std::vector<char> is_sink(D.faces.size(), 0);
    for (int s : sink_ids) is_sink[static_cast<std::size_t>(s)] = 1;
    for (std::size_t f = 0; f < D.faces.size(); ++f) {
        if (only_sinks && !is_sink[f]) continue;
        const Face& face = D.faces[f];
        out << "cell " << f << " point " << to_string(face.representative) << " visible " << to_string(face.visible)
            << (is_sink[f] ? " sink" : "") << '\n';
    }
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Vertex guards for polygons with holes", "visguard"};
    app.require_subcommand(1);

    CommonFlags f;
    std::string method = "greedy";
    std::string svg_path, guards_path, csv_path, format = "table", output_path;
    std::vector<std::string> extra_polygons;
    std::string family;
    std::vector<int> params;
    std::uint64_t generate_seed = 0;

    auto* decompose_cmd = app.add_subcommand("decompose", "windows, crossings, cells and sinks");
    add_common(decompose_cmd, f);
    decompose_cmd->add_flag("--cells", f.cells, "list every cell");

    auto* sinks_cmd = app.add_subcommand("sinks", "sink cells of the decomposition");
    add_common(sinks_cmd, f);
    sinks_cmd->add_flag("--cells", f.cells, "list the sink cells");

    auto* guard_cmd = app.add_subcommand("guard", "compute a vertex guard set");
    add_common(guard_cmd, f);
    guard_cmd->add_option("--method", method, "greedy, bg, kk or exact")
        ->check(CLI::IsMember({"greedy", "bg", "kk", "exact"}));

    auto* stats_cmd = app.add_subcommand("stats", "statistics table and CSV");
    add_common(stats_cmd, f);
    stats_cmd->add_option("more", extra_polygons, "further polygon files");
    stats_cmd->add_option("--csv", csv_path, "also write CSV to this file");
    stats_cmd->add_option("--format", format, "stdout format")->check(CLI::IsMember({"table", "csv"}));

    auto* render_cmd = app.add_subcommand("render", "SVG of boundary, windows, sinks and guards");
    add_common(render_cmd, f);
    render_cmd->add_option("--svg", svg_path, "output file")->required();
    render_cmd->add_option("--guards", guards_path, "guard file (default: greedy guards)");
    render_cmd->add_option("--method", method, "method for the default guards")
        ->check(CLI::IsMember({"greedy", "bg", "kk", "exact"}));

    auto* verify_cmd = app.add_subcommand("verify", "check a guard file against the polygon");
    add_common(verify_cmd, f);
    verify_cmd->add_option("--guards", guards_path, "guard file, one vertex id per line")->required();

    auto* generate_cmd = app.add_subcommand("generate", "write a generated polygon: comb K [H], spiral N, "
                                                        "grid-holes S H, star N [H], convex N");
    generate_cmd->add_option("family", family, "polygon family")->required();
    generate_cmd->add_option("params", params, "integer parameters")->required();
    generate_cmd->add_option("--seed", generate_seed, "random seed (VISGUARD_SEED overrides)");
    generate_cmd->add_option("-o,--output", output_path, "output file (default: standard output)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (generate_cmd->parsed()) {
            const std::string text = write_polygon(generate(family, params, effective_seed(generate_seed)));
            if (output_path.empty()) {
                out << text;
            } else {
                write_file(output_path, text);
            }
            return 0;
        }

        const PolygonWithHoles P = read_polygon_file(f.polygon);

        if (decompose_cmd->parsed() || sinks_cmd->parsed()) {
            const Decomposition D = decompose(P);
            const std::vector<int> sink_ids = sinks(build_dual(D));
            if (decompose_cmd->parsed()) {
                int left = 0, right = 0, trans = 0;
                for (const Window& w : D.windows) {
                    left += w.kind == WindowKind::Left;
                    right += w.kind == WindowKind::Right;
                    trans += w.kind == WindowKind::Trans;
                }
                out << "n " << P.n() << "\nh " << P.h() << "\nwindows " << D.windows.size() << "\nleft " << left
                    << "\nright " << right << "\ntrans " << trans << "\ncrossings " << D.crossing_count << "\ncells "
                    << D.faces.size() << "\nsinks " << sink_ids.size() << '\n';
            } else {
                out << "sinks " << sink_ids.size() << '\n';
            }
            if (f.cells) emit_cells(D, sink_ids, sinks_cmd->parsed(), out);
            return 0;
        }

        if (guard_cmd->parsed()) {
            const RangeSpace rs = build_range_space(P);
            const GuardSet g = solve(P, rs, method, f);
            for (int v : g.guards) out << v << '\n';
            err << "size " << g.guards.size() << " method " << g.method << " seconds " << g.seconds << '\n';
            return 0;
        }

        if (stats_cmd->parsed()) {
            StatsOptions options;
            options.oracle_cap = f.oracle_cap;
            options.net_finder = f.net_finder;
            options.bg.epsilon_start = parse_rational(f.epsilon_start);
            options.bg.seed = effective_seed(f.seed);
            std::vector<StatsReport> reports{compute_stats(P, f.polygon, options)};
            for (const std::string& path : extra_polygons) reports.push_back(compute_stats(read_polygon_file(path), path, options));
            out << (format == "csv" ? stats_csv(reports) : stats_table(reports));
            if (!csv_path.empty()) write_file(csv_path, stats_csv(reports));
            return 0;
        }

        if (render_cmd->parsed()) {
            const Decomposition D = decompose(P);
            std::vector<int> guards;
            if (!guards_path.empty()) {
                guards = parse_guard_list(slurp(guards_path));
            } else {
                guards = solve(P, build_range_space(D), method, f).guards;
            }
            for (int g : guards)
                if (g < 0 || g >= P.n()) throw std::invalid_argument("guard id " + std::to_string(g) + " out of range");
            write_file(svg_path, render_svg(D, guards));
            return 0;
        }

        if (verify_cmd->parsed()) {
            const std::vector<int> guards = parse_guard_list(slurp(guards_path));
            for (int g : guards)
                if (g < 0 || g >= P.n()) throw std::invalid_argument("guard id " + std::to_string(g) + " out of range");
            const RangeSpace rs = build_range_space(P);
            VerifyOptions options;
            options.samples = f.samples;
            options.seed = effective_seed(f.seed);
            options.oracle_cap = f.oracle_cap;
            const VerifyReport report = verify_guard_set(P, rs, guards, options);
            out << "guards " << guards.size() << "\ncovers " << (report.covers ? "yes" : "no") << "\naudit_failures "
                << report.audit_failures.size() << " of " << f.samples << '\n';
            if (report.opt) out << "opt " << *report.opt << '\n';
            if (report.ratio) out << "ratio " << *report.ratio << '\n';
            for (const Point& p : report.audit_failures) out << "unseen " << to_string(p) << '\n';
            if (!report.ok()) err << "error: guard set does not cover the polygon\n";
            return report.ok() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace visguard
