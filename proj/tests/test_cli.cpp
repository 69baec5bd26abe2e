#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "lfroe/cli.hpp"
#include "lfroe/json_io.hpp"

namespace fs = std::filesystem;
using lfroe::io::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args, const std::string& stdin_text = "")
{
    std::ostringstream out, err;
    std::istringstream in(stdin_text);
    const int code = lfroe::cli::run(args, out, err, in);
    return {code, out.str(), err.str()};
}

class Scratch {
public:
    Scratch() : dir_(fs::temp_directory_path() / ("lfroe_cli_" + std::to_string(::getpid())))
    {
        fs::create_directories(dir_);
    }
    ~Scratch() { fs::remove_all(dir_); }

    std::string file(const std::string& name, const std::string& text) const
    {
        const auto path = dir_ / name;
        std::ofstream(path) << text;
        return path.string();
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

private:
    fs::path dir_;
};

} // namespace

TEST_CASE("cli sn and classify")
{
    Scratch s;
    const auto two = s.file("two.json", R"({"prefix": [], "tail": [2]})");
    const auto three = s.file("three.json", R"({"prefix": [], "tail": ["3"]})");
    const auto six = s.file("six.json", R"({"prefix": [6], "tail": []})");

    auto r = run({"sn", two});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out) == json::parse(R"({"exponents": {"2": "inf"}, "default": "0"})"));
    CHECK(json::parse(run({"sn", six}).out) == json::parse(R"({"exponents": {"2": "1", "3": "1"}, "default": "0"})"));

    r = run({"classify", two, three});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out) == json::parse(R"({"bce": false, "ce": true, "k0_iso": false, "obstruction": [2, 1]})"));

    r = run({"classify", two, two});
    CHECK(json::parse(r.out)["obstruction"].is_null());

    // stdin
    r = run({"sn", "-"}, R"({"prefix": [], "tail": [2]})");
    CHECK(r.code == 0);
}

TEST_CASE("cli bce build and verify")
{
    Scratch s;
    const auto two = s.file("two.json", R"({"prefix": [], "tail": [2]})");
    const auto four = s.file("four.json", R"({"prefix": [], "tail": [4]})");
    const auto three = s.file("three.json", R"({"prefix": [], "tail": [3]})");
    const auto map = s.path("map.json");

    auto r = run({"bce", "build", "--depth", "2", two, four, "-o", map});
    CHECK(r.code == 0);
    r = run({"bce", "verify", map});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["passed"] == true);

    auto built = json::parse(run({"bce", "build", "--depth", "2", two, four}).out);
    CHECK(built == json::parse(run({"bce", "build", "--depth", "2", two, four}).out));
    built["map"][1] = "2";
    built["map"][2] = "1";
    r = run({"bce", "verify", s.file("bad.json", built.dump())});
    CHECK(r.code == 1);
    CHECK(json::parse(r.out)["passed"] == false);

    CHECK(run({"bce", "build", "--depth", "1", two, three}).code == 4);

    // identical towers: the inverse is rebuilt on read and checked
    const auto self = s.path("self.json");
    REQUIRE(run({"bce", "build", "--depth", "3", two, two, "-o", self}).code == 0);
    r = run({"bce", "verify", self});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["modulus"] == json::parse("[0, 1, 2, 3]"));
}

TEST_CASE("cli k0")
{
    Scratch s;
    const std::string ctx = R"("context": {"prefix": [], "tail": [2]})";
    const auto unit = s.file("unit.json", "{" + ctx + R"(, "period": [1]})");
    const auto alt = s.file("alt.json", "{" + ctx + R"(, "period": [2, 0]})");
    const auto half = s.file("half.json", "{" + ctx + R"(, "period": [1, 0]})");
    const auto neg = s.file("neg.json", "{" + ctx + R"(, "period": [-1, 0]})");
    const auto tower = s.file("two.json", R"({"prefix": [], "tail": [2]})");

    CHECK(run({"k0", "eq", unit, alt}).out == "true\n");
    CHECK(run({"k0", "eq", unit, half}).out == "false\n");
    CHECK(json::parse(run({"k0", "pos", alt}).out)["positive"] == true);
    CHECK(json::parse(run({"k0", "pos", neg}).out)["positive"] == false);

    auto r = run({"k0", "divide-unit", "--prime", "2", "--exp", "2", tower});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["period"] == json::parse("[1, 0, 0, 0]"));
    CHECK(run({"k0", "divide-unit", "--prime", "3", "--exp", "1", tower}).out == "null\n");
}

TEST_CASE("cli embed and roe")
{
    Scratch s;
    const auto space = s.file("space.json", R"({"size": 2, "distances": [[0, 3], [3, 0]]})");
    CHECK(json::parse(run({"embed", space}).out) == json::parse("[0, 3]"));

    const std::string sp = R"("space": {"tower": {"prefix": [], "tail": [2]}, "depth": 2})";
    const auto op = s.file("op.json", "{" + sp + R"(, "entries": [[0, 1, "1"], [2, 2, "1/2"]]})");
    auto r = run({"roe", "decompose", "--level", "1", op});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["blocks"].size() == 2);
    CHECK(run({"roe", "decompose", "--level", "0", op}).code == 4);

    const auto proj = s.file("proj.json", "{" + sp + R"(, "entries": [[0, 0, "1"], [3, 3, 1]]})");
    CHECK(json::parse(run({"roe", "trace", "--level", "1", "--projection", proj}).out) == json::parse("[1, 1]"));
    CHECK(run({"roe", "trace", "--level", "1", "--projection", op}).code == 4);

    const auto two = s.file("two.json", R"({"prefix": [], "tail": [2]})");
    const auto map = s.path("map.json");
    REQUIRE(run({"bce", "build", "--depth", "2", two, two, "-o", map}).code == 0);
    r = run({"roe", "conjugate", map, proj});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["entries"].size() == 2);
}

TEST_CASE("cli errors")
{
    Scratch s;
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"sn", s.path("missing.json")}).code == 2);
    CHECK(run({"sn", s.file("junk.json", "{not json")}).code == 2);
    CHECK(run({"sn", s.file("wrong.json", R"({"prefix": "x"})")}).code == 2);
    CHECK(run({"sn", s.file("zero.json", R"({"prefix": [0], "tail": []})")}).code == 2);
    const auto big = s.file("big.json", R"({"prefix": [], "tail": [1000000]})");
    CHECK(run({"bce", "build", "--depth", "9", big, big}).code == 3);
    CHECK_FALSE(run({"frobnicate"}).err.empty());
}
