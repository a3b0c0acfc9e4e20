#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "storyline/cli.hpp"
#include "storyline/io.hpp"
#include "storyline/reduction.hpp"
#include "storyline/render.hpp"

using namespace storyline;
using namespace storyline::test;

namespace {

ExtensionProblem sample_problem() {
    ExtensionProblem problem;
    problem.full = instance_of({meet({"a", "b"}, 1, 1), meet({"n"}, 1, 1), meet({"a", "n"}, 2, 2),
                                meet({"b"}, 2, 2)});
    problem.chi = 1;
    problem.fixed_characters = {"a", "b"};
    problem.fixed_layout = layout_of({{"a", "b"}, {"a", "b"}});
    return problem;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/lsle_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    if (out_text) *out_text = out.str();
    return code;
}

}  // namespace

TEST_CASE("instance round trip") {
    auto inst = instance_of({meet({"b", "a"}, 1, 2), meet({"c"}, 2, 3)});
    std::string text = io::serialize_instance(inst);
    auto parsed = io::parse_instance(text);
    CHECK(io::serialize_instance(parsed) == text);
    CHECK(parsed.characters == std::vector<CharacterId>{"a", "b", "c"});
}

TEST_CASE("problem round trip including reductions") {
    ExtensionProblem problem = sample_problem();
    std::string text = io::serialize_problem(problem);
    auto parsed = io::parse_problem(text);
    CHECK(parsed == problem);
    CHECK(io::serialize_problem(parsed) == text);

    // Reduction output is not in canonical meeting order, so the guarantee
    // is a serialization fixed point, not in-memory identity.
    ExtensionProblem generated = reduce({{1, 1}, 2, 1});
    std::string gen_text = io::serialize_problem(generated);
    ExtensionProblem reparsed = io::parse_problem(gen_text);
    CHECK(io::serialize_problem(reparsed) == gen_text);
    CHECK(stats(reparsed).sigma == stats(generated).sigma);
    CHECK(reparsed.fixed_layout == generated.fixed_layout);
}

TEST_CASE("layout round trip") {
    Layout layout = layout_of({{"a", "b"}, {"b", "a"}});
    std::string text = io::serialize_layout(layout);
    CHECK(io::parse_layout(text) == layout);
    CHECK(io::serialize_layout(io::parse_layout(text)) == text);
}

TEST_CASE("parse errors carry machine-readable codes") {
    try {
        io::parse_instance("{");
        FAIL("expected a format error");
    } catch (const io::FormatError& e) {
        CHECK(e.code == "JSON_SYNTAX");
    }

    try {
        io::parse_instance(R"({"characters":["a"],"meetings":[{"members":["a"],"begin":3,"end":1}]})");
        FAIL("expected a format error");
    } catch (const io::FormatError& e) {
        CHECK(e.code == "MEETING_TIME_ORDER");
    }

    try {
        io::parse_instance(R"({"characters":["a"],"meetings":[{"members":["z"],"begin":1,"end":1}]})");
        FAIL("expected a format error");
    } catch (const io::FormatError& e) {
        CHECK(e.code == "UNKNOWN_CHARACTER");
    }
}

TEST_CASE("svg rendering") {
    auto inst = instance_of({meet({"a"}, 1, 1), meet({"b"}, 1, 1), meet({"a", "b"}, 2, 2)});
    auto layout = layout_of({{"b", "a"}, {"a", "b"}});
    std::string svg = render_svg(inst, layout);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("rect") != std::string::npos);
    CHECK(render_svg(inst, layout) == svg);  // deterministic

    auto broken = layout_of({{"a"}, {"a", "b"}});
    CHECK_THROWS_AS(render_svg(inst, broken), std::invalid_argument);

    StorylineInstance empty;
    CHECK(render_svg(empty, Layout{}).find("<svg") == 0);
}

TEST_CASE("cli workflow") {
    TempFile problem_file("problem.json");
    TempFile witness_file("witness.json");
    TempFile svg_file("drawing.svg");
    io::write_file(problem_file.path, io::serialize_problem(sample_problem()));

    CHECK(run_cli({"validate", problem_file.path}) == 0);

    std::string out;
    CHECK(run_cli({"solve", problem_file.path, "--witness", witness_file.path}, &out) == 0);
    CHECK(out == "accept\n");
    Layout witness = io::parse_layout(io::read_file(witness_file.path));
    CHECK(validate_layout(sample_problem().full, witness).ok());

    // Tight budget: the newcomer needs one crossing-free slide, chi=0 works
    // here, so force a reject through the lcn override instead.
    CHECK(run_cli({"solve", problem_file.path, "--min-chi"}, &out) == 0);

    CHECK(run_cli({"oracle", problem_file.path}, &out) == 0);
    CHECK(out == "accept\n");

    CHECK(run_cli({"stats", problem_file.path}, &out) == 0);
    CHECK(out.find("mu 2") != std::string::npos);

    CHECK(run_cli({"render", problem_file.path, "--out", svg_file.path}) == 0);
    CHECK(io::read_file(svg_file.path).find("<svg") == 0);

    CHECK(run_cli({"bogus"}) == 2);
    CHECK(run_cli({"validate", "/nonexistent/x.json"}) == 2);
}

TEST_CASE("cli reduction generation is deterministic") {
    TempFile a("red_a.json");
    TempFile b("red_b.json");
    std::string out;
    CHECK(run_cli({"gen-eubp", "--items", "1,1", "--bins", "2", "--capacity", "1", "--out",
                   a.path},
                  &out) == 0);
    CHECK(out.find("chi 3") != std::string::npos);
    CHECK(run_cli({"gen-eubp", "--items", "1,1", "--bins", "2", "--capacity", "1", "--out",
                   b.path}) == 0);
    CHECK(io::read_file(a.path) == io::read_file(b.path));

    CHECK(run_cli({"gen-eubp", "--items", "1,1,1", "--bins", "2", "--capacity", "1", "--out",
                   a.path}) == 2);
}

TEST_CASE("cli random generation honours the seed") {
    TempFile a("rand_a.json");
    TempFile b("rand_b.json");
    CHECK(run_cli({"gen-random", "--seed", "5", "--out", a.path}) == 0);
    CHECK(run_cli({"gen-random", "--seed", "5", "--out", b.path}) == 0);
    CHECK(io::read_file(a.path) == io::read_file(b.path));
    CHECK_NOTHROW(io::parse_problem(io::read_file(a.path)));
}
