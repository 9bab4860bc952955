#include "corpus.hpp"
#include "visguard/cli_io.hpp"
#include "visguard/rangespace.hpp"
#include "visguard/solvers.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

using namespace visguard;
using visguard::testing::corpus;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("visguard_test_" + name);
    std::ofstream(path) << content;
    return path.string();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(text);
    while (std::getline(in, cell, sep)) out.push_back(cell);
    return out;
}

std::vector<std::string> whitespace_fields(const std::string& text) {
    std::istringstream in(text);
    return {std::istream_iterator<std::string>(in), std::istream_iterator<std::string>()};
}

// Minimal XML structure check: balanced, properly nested tags with one root.
bool well_formed(const std::string& xml) {
    std::vector<std::string> stack;
    int roots = 0;
    std::size_t pos = 0;
    while ((pos = xml.find('<', pos)) != std::string::npos) {
        const std::size_t end = xml.find('>', pos);
        if (end == std::string::npos) return false;
        const std::string tag = xml.substr(pos + 1, end - pos - 1);
        pos = end + 1;
        if (tag.empty()) return false;
        if (tag[0] == '?' || tag[0] == '!') continue;
        if (tag[0] == '/') {
            if (stack.empty() || stack.back() != tag.substr(1)) return false;
            stack.pop_back();
            continue;
        }
        if (std::count(tag.begin(), tag.end(), '"') % 2 != 0) return false;
        const std::string name = tag.substr(0, tag.find_first_of(" /"));
        if (stack.empty()) ++roots;
        if (tag.back() != '/') stack.push_back(name);
    }
    return stack.empty() && roots == 1;
}

}  // namespace

TEST_CASE("parse_polygon examples") {
    const auto square = parse_polygon("4\n0 0\n1 0\n1 1\n0 1\n0\n");
    CHECK(square.n() == 4);
    CHECK(square.h() == 0);
    CHECK(square.area() == 1);

    const auto holed = parse_polygon("# square with a hole\n4\n0 0\n10 0\n10 10\n0 10\n1\n4\n4.1 4\n6 4.3\n5.9 6\n4 5.7\n");
    CHECK(holed.h() == 1);
    CHECK(holed.n() == 8);
    CHECK(holed == visguard::testing::square_with_hole());

    const auto fractions = parse_polygon("3\n0 0\n1/3 0\n0 -2/7\n\n0\n");
    CHECK(fractions.vertex(1).x() == ratio(1, 3));

    try {
        parse_polygon("4\n0 0\n1 0\n2 0\n0 1\n0\n");
        FAIL("collinear ring accepted");
    } catch (const ParseError& e) {
        const std::string what = e.what();
        CHECK(what.find("collinear") != std::string::npos);
        CHECK(what.find("(1, 0)") != std::string::npos);
    }
    auto line_of = [](const char* doc) {
        try {
            parse_polygon(doc);
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("4\n0 0\n1 0\n1 x\n0 1\n0\n") == 4);
    CHECK(line_of("2\n0 0\n1 0\n0\n") == 1);
    CHECK(line_of("3\n0 0\n1 0\n0 1 2\n0\n") == 4);
    CHECK(line_of("3\n0 0\n1 0\n0 1\n0\nextra\n") == 6);
    CHECK(line_of("3\n0 0\n1 0\n") == 3);
    CHECK(line_of("3\n0 0\n1 0\n0 1/0\n0\n") == 4);
    CHECK(line_of("4\n0 0\n2 2\n2 0\n0 2\n0\n") == 0);
}

TEST_CASE("polygon files round-trip") {
    for (const auto& [name, P] : corpus()) {
        CAPTURE(name);
        CHECK(parse_polygon(write_polygon(P)) == P);
    }
}

TEST_CASE("guard lists") {
    CHECK(parse_guard_list("3\n# comment\n0\n\n12\n") == std::vector<int>{3, 0, 12});
    CHECK(parse_guard_list("").empty());
    CHECK_THROWS_AS(parse_guard_list("1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_guard_list("-1\n"), ParseError);
}

TEST_CASE("generator families") {
    const auto comb = generate("comb", std::vector<int>{3});
    CHECK(comb.n() == 12);
    CHECK(exact_guards(build_range_space(comb)).guards.size() == 3);
    CHECK(generate_comb(5, 2).n() == 28);
    CHECK(generate_comb(5, 2).h() == 2);

    const auto grid = generate("grid-holes", std::vector<int>{16, 2});
    CHECK(grid.h() == 2);
    CHECK(grid.n() == 12);
    CHECK(generate_grid_holes(40, 9).h() == 9);

    for (int n : {6, 7, 20, 41}) CHECK(generate_spiral(n).n() == n);
    for (int n : {12, 20, 40}) {
        for (int h : {0, 1, 2}) {
            const auto star = generate_star(n, h, 5);
            CHECK(star.n() == n);
            CHECK(star.h() == h);
        }
    }
    const auto convex = generate_convex(9);
    for (int v = 0; v < convex.n(); ++v) CHECK_FALSE(convex.is_reflex(v));

    CHECK(write_polygon(generate_star(20, 1, 3)) == write_polygon(generate_star(20, 1, 3)));
    CHECK(write_polygon(generate_comb(4, 1, 8)) == write_polygon(generate_comb(4, 1, 8)));
    CHECK(write_polygon(generate_spiral(30, 1)) != write_polygon(generate_spiral(30, 2)));

    CHECK_THROWS_AS(generate("comb", std::vector<int>{0}), std::invalid_argument);
    CHECK_THROWS_AS(generate("comb", std::vector<int>{3, 3}), std::invalid_argument);
    CHECK_THROWS_AS(generate("spiral", std::vector<int>{5}), std::invalid_argument);
    CHECK_THROWS_AS(generate("star", std::vector<int>{10, 2}), std::invalid_argument);
    CHECK_THROWS_AS(generate("blob", std::vector<int>{10}), std::invalid_argument);
    CHECK_THROWS_AS(generate("convex", std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("display numbers") {
    CHECK(display_number(ratio(1, 3)) == "0.333333333");
    CHECK(display_number(ratio(2, 3)) == "0.666666667");
    CHECK(display_number(ratio(-1, 2)) == "-0.5");
    CHECK(display_number(5) == "5");
    CHECK(display_number(ratio(-7, 4)) == "-1.75");
    CHECK(display_number(ratio(1, 3000000000L)) == "0");
    CHECK(display_number(Rational(1) / Rational(mpz_class("2000000000"))) == "0.000000001");
}

TEST_CASE("guard command on comb 3") {
    const std::string path = temp_file("comb3.txt", write_polygon(generate_comb(3)));
    const Run r = run({"guard", path, "--method", "greedy"});
    CHECK(r.code == 0);
    CHECK(lines(r.out).size() == 3);
    CHECK(r.err.find("size 3") != std::string::npos);
    for (const char* method : {"exact", "bg", "kk"}) {
        CAPTURE(method);
        const Run m = run({"guard", path, "--method", method});
        CHECK(m.code == 0);
        std::string ids;
        for (const auto& line : lines(m.out)) ids += line + "\n";
        const std::string guards = temp_file(std::string("comb3_guards_") + method, ids);
        CHECK(run({"verify", path, "--guards", guards, "--samples", "2000"}).code == 0);
    }
    CHECK(run({"guard", path, "--method", "bg", "--net-finder", "greedy"}).code == 0);
    CHECK(run({"guard", path, "--method", "bg", "--epsilon-start", "3/8"}).code == 1);
    CHECK(run({"guard", path, "--method", "simplex"}).code == 2);
}

TEST_CASE("decompose, sinks and stats commands") {
    const std::string hexagon = temp_file("hexagon.txt", write_polygon(generate_convex(6)));
    const Run d = run({"decompose", hexagon});
    CHECK(d.code == 0);
    CHECK(d.out.find("cells 1\n") != std::string::npos);
    CHECK(d.out.find("sinks 1\n") != std::string::npos);
    CHECK(d.out.find("windows 0\n") != std::string::npos);

    const Run s = run({"sinks", hexagon, "--cells"});
    CHECK(s.code == 0);
    CHECK(lines(s.out).size() == 2);

    const Run t = run({"stats", hexagon, "--format", "csv"});
    REQUIRE(t.code == 0);
    const auto rows = lines(t.out);
    REQUIRE(rows.size() == 2);
    const auto header = split(rows[0], ',');
    const auto values = split(rows[1], ',');
    auto column = [&](const std::string& key) {
        return values[static_cast<std::size_t>(std::find(header.begin(), header.end(), key) - header.begin())];
    };
    CHECK(column("cells") == "1");
    CHECK(column("sinks") == "1");
    CHECK(column("windows") == "0");

    CHECK(run({"decompose", "/nonexistent/polygon.txt"}).code == 1);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("stats table and CSV agree") {
    std::vector<std::string> args{"stats"};
    std::vector<StatsReport> reports;
    for (const char* name : {"l_polygon", "square_with_hole", "two_holes", "comb3"}) {
        args.push_back(temp_file(std::string(name) + ".txt", write_polygon(visguard::testing::corpus_polygon(name))));
    }
    const std::string csv_path = (std::filesystem::temp_directory_path() / "visguard_test_stats.csv").string();
    args.push_back("--csv");
    args.push_back(csv_path);
    const Run r = run(args);
    REQUIRE(r.code == 0);
    const auto table = lines(r.out);
    const auto csv = lines(read_file(csv_path));
    REQUIRE(table.size() == csv.size());
    REQUIRE(table.size() == 5);
    for (std::size_t i = 0; i < table.size(); ++i) CHECK(whitespace_fields(table[i]) == split(csv[i], ','));

    const auto header = split(csv[0], ',');
    for (std::size_t i = 1; i < csv.size(); ++i) {
        const auto row = split(csv[i], ',');
        auto get = [&](const char* key) {
            return std::stoi(row[static_cast<std::size_t>(std::find(header.begin(), header.end(), key) - header.begin())]);
        };
        CHECK(get("windows") == get("left") + get("right") + get("trans"));
        CHECK(get("cells") >= get("sinks"));
        CHECK(get("sinks") >= 1);
        CHECK(get("sinks") >= get("ranges"));
        CHECK(get("greedy") >= get("exact"));
    }
}

TEST_CASE("verify command") {
    const std::string square = temp_file("square.txt", "4\n0 0\n1 0\n1 1\n0 1\n0\n");
    const std::string empty = temp_file("empty_guards.txt", "");
    const Run r = run({"verify", square, "--guards", empty});
    CHECK(r.code != 0);
    CHECK(r.out.find("covers no") != std::string::npos);
    const std::string one = temp_file("one_guard.txt", "2\n");
    const Run ok = run({"verify", square, "--guards", one, "--samples", "500"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("audit_failures 0 of 500") != std::string::npos);
    const std::string bad = temp_file("bad_guard.txt", "9\n");
    CHECK(run({"verify", square, "--guards", bad}).code == 1);
}

TEST_CASE("seed flag and VISGUARD_SEED") {
    auto gen = [](const std::vector<std::string>& extra) {
        std::vector<std::string> args{"generate", "star", "15", "1"};
        args.insert(args.end(), extra.begin(), extra.end());
        return run(args);
    };
    ::unsetenv("VISGUARD_SEED");
    const Run zero = gen({});
    const Run seven = gen({"--seed", "7"});
    CHECK(zero.code == 0);
    CHECK(zero.out == write_polygon(generate_star(15, 1, 0)));
    CHECK(seven.out == write_polygon(generate_star(15, 1, 7)));
    CHECK(zero.out != seven.out);
    ::setenv("VISGUARD_SEED", "7", 1);
    CHECK(gen({}).out == seven.out);
    CHECK(gen({"--seed", "3"}).out == seven.out);
    ::setenv("VISGUARD_SEED", "seven", 1);
    CHECK(gen({}).code == 1);
    ::unsetenv("VISGUARD_SEED");
}

TEST_CASE("render writes well-formed SVG") {
    for (const char* name : {"l_polygon", "two_holes", "comb3"}) {
        CAPTURE(name);
        const std::string poly = temp_file(std::string(name) + "_render.txt", write_polygon(visguard::testing::corpus_polygon(name)));
        const std::string svg = (std::filesystem::temp_directory_path() / (std::string("visguard_test_") + name + ".svg")).string();
        REQUIRE(run({"render", poly, "--svg", svg}).code == 0);
        const std::string text = read_file(svg);
        CHECK(well_formed(text));
        CHECK(text.find("<svg") != std::string::npos);
        CHECK(text.find("id=\"sinks\"") != std::string::npos);
        const std::regex number(R"((-?\d+)\.(\d+))");
        bool short_decimals = true;
        for (auto it = std::sregex_iterator(text.begin(), text.end(), number); it != std::sregex_iterator(); ++it)
            short_decimals &= (*it)[2].length() <= 9;
        CHECK(short_decimals);
        const Decomposition D = decompose(visguard::testing::corpus_polygon(name));
        std::size_t lines_drawn = 0;
        for (std::size_t at = 0; (at = text.find("<line ", at)) != std::string::npos; ++at) ++lines_drawn;
        CHECK(lines_drawn == D.windows.size());
    }
    CHECK(well_formed("<a><b/><c x=\"1\"></c></a>"));
    CHECK_FALSE(well_formed("<a><b></a></b>"));
}
