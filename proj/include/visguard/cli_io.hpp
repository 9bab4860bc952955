#pragma once

#include "visguard/arrangement.hpp"
#include "visguard/epsnet.hpp"
#include "visguard/polygon.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace visguard {

// ---- polygon files ------------------------------------------------------------

/// Malformed polygon document; line() is 1-based, 0 when no single line applies.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message);
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Grammar, one record per line, blank lines and lines starting with '#'
/// ignored:
///   <outer count>
///   <x> <y>            (outer count lines)
///   <hole count>
///   then per hole: <count> followed by that many "<x> <y>" lines
/// Coordinates are integers, decimals or a/b fractions. The result is
/// validated in general position. Throws ParseError.
PolygonWithHoles parse_polygon(std::string_view document);

/// Exact text in the grammar above; parse_polygon(write_polygon(P)) == P.
std::string write_polygon(const PolygonWithHoles& P);

// Reads a file ("-" for standard input) and parses it. Throws ParseError.
PolygonWithHoles read_polygon_file(const std::string& path);

// One vertex id per line; same comment rules as polygon files.
std::vector<int> parse_guard_list(std::string_view document);

// ---- generators ---------------------------------------------------------------

/// Comb with `teeth` upward teeth over a rectangular base, plus `holes`
/// quadrilateral holes in the base (holes < teeth). n = 4 teeth + 4 holes.
PolygonWithHoles generate_comb(int teeth, int holes = 0, std::uint64_t seed = 0);

/// Corridor winding around a centre; n vertices, one reflex chain.
PolygonWithHoles generate_spiral(int n, std::uint64_t seed = 0);

/// Square of side `size` with `holes` small square holes on a grid.
PolygonWithHoles generate_grid_holes(int size, int holes, std::uint64_t seed = 0);

/// Star-shaped outer ring around the origin plus `holes` quadrilateral holes
/// near the centre; n vertices in total.
PolygonWithHoles generate_star(int n, int holes = 0, std::uint64_t seed = 0);

PolygonWithHoles generate_convex(int n, std::uint64_t seed = 0);

/// Dispatch by family name: comb K [H], spiral N, grid-holes S H, star N [H],
/// convex N. Throws std::invalid_argument on an unknown family or a
/// parameter outside its cap.
PolygonWithHoles generate(std::string_view family, std::span<const int> params, std::uint64_t seed = 0);

// ---- statistics -----------------------------------------------------------------

struct MethodStats {
    std::string method;
    std::optional<int> size;  // empty when the method was skipped
    double seconds = 0.0;
};

struct StatsReport {
    std::string name;
    int n = 0;
    int h = 0;
    int windows_left = 0;
    int windows_right = 0;
    int windows_trans = 0;
    int crossings = 0;
    int cells = 0;
    int sinks = 0;
    int ranges = 0;
    std::vector<MethodStats> methods;  // greedy, bg, exact

    int windows() const { return windows_left + windows_right + windows_trans; }
    // cells / ((h + 1) n^3)
    double cell_ratio() const;
    // sinks / ((h + 1)^2 n^2)
    double sink_ratio() const;
};

struct StatsOptions {
    int oracle_cap = 20;
    std::string net_finder = "random";
    BGOptions bg;
};

StatsReport compute_stats(const PolygonWithHoles& P, std::string name, const StatsOptions& options = {});

std::vector<std::string> stats_header();
std::vector<std::string> stats_row(const StatsReport& report);
// Aligned columns, one row per report; cells are the CSV fields verbatim.
std::string stats_table(std::span<const StatsReport> reports);
std::string stats_csv(std::span<const StatsReport> reports);

// ---- rendering ----------------------------------------------------------------------

/// Boundary, sink cells shaded, windows stroked by kind (left blue, right
/// red, trans green) and guards as dots. Coordinates are rounded to 1e-9
/// for display.
std::string render_svg(const Decomposition& D, std::span<const int> guards);

// Decimal display of a rational, rounded to 1e-9, trailing zeros removed.
std::string display_number(const Rational& q);

// ---- commands -----------------------------------------------------------------------------

/// Net finder by name: random, greedy or kk (kk requires h = 0).
std::unique_ptr<NetFinder> make_net_finder(std::string_view name, const PolygonWithHoles& P);

/// Runs one CLI invocation; args excludes the program name. Returns the exit
/// code: 0 success, 1 failure (validation, solver or verification), 2 usage.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace visguard
