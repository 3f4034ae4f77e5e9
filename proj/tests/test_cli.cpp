#include "doctest.h"

#include <cstdlib>
#include <sstream>

#include "cli.hpp"
#include "iwasawa/decomposition.hpp"
#include "json.hpp"

using namespace iwasawa;
using nlohmann::json;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "iwasawa");
    std::ostringstream out, err;
    Outcome o;
    o.code = cli::run(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::string data(const std::string& name) { return std::string(IWASAWA_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("decompose C7 with x -> x^2 at 3") {
    auto o = invoke({"decompose", "--group", data("c7.json"), "--auto", data("sq.json"), "--p", "3"});
    REQUIRE(o.code == cli::kSuccess);
    auto j = json::parse(o.out);
    CHECK(j["records"].size() == 2);
    CHECK(j["passed"] == true);

    // emitted JSON re-parses into equal records and prints identically
    auto d = decomposition_from_json(j);
    CHECK(to_json(d).dump(2) + "\n" == o.out);
    auto again = invoke({"decompose", "--group", data("c7.json"), "--auto", data("sq.json"), "--p", "3", "--jobs", "2"});
    CHECK(again.out == o.out);

    auto table = invoke({"decompose", "--group", data("c7.json"), "--auto", data("sq.json"), "--p", "3", "--format",
                         "table"});
    CHECK(table.code == cli::kSuccess);
    CHECK(table.out.find("bookkeeping: ok") != std::string::npos);
}

TEST_CASE("input errors exit with 1") {
    auto o = invoke({"decompose", "--p", "4"});
    CHECK(o.code == cli::kInputError);
    CHECK(o.err.find("p must be an odd prime") != std::string::npos);
    CHECK(invoke({"decompose", "--p", "2"}).code == cli::kInputError);
    CHECK(invoke({"decompose", "--group", data("c7.json"), "--p", "3"}).code == cli::kInputError);
    CHECK(invoke({"decompose", "--group", data("missing.json"), "--auto", data("sq.json"), "--p", "3"}).code ==
          cli::kInputError);
    CHECK(invoke({"decompose", "--group", data("c9.json"), "--auto", data("sq.json"), "--p", "3"}).code ==
          cli::kInputError);
    CHECK(invoke({"skewseries", "verify", "--m", "9", "--p", "3", "--tau", "4", "--trunc", "3"}).code ==
          cli::kInputError);
    CHECK(invoke({"skewseries", "verify", "--m", "9", "--p", "3", "--tau", "4", "--precision", "7"}).code ==
          cli::kInputError);
    CHECK(invoke({"decompose", "--format", "xml"}).code == cli::kInputError);
    CHECK(invoke({}).code == cli::kInputError);
    CHECK(invoke({"frobnicate"}).code == cli::kInputError);
}

TEST_CASE("precision from the environment") {
    setenv("IWASAWA_PRECISION", "5", 1);
    CHECK(invoke({"extend-tau", "--m", "9", "--p", "3", "--tau", "4"}).code == cli::kInputError);
    setenv("IWASAWA_PRECISION", "many", 1);
    CHECK(invoke({"extend-tau", "--m", "9", "--p", "3", "--tau", "4"}).code == cli::kInputError);
    setenv("IWASAWA_PRECISION", "20", 1);
    auto o = invoke({"extend-tau", "--m", "9", "--p", "3", "--tau", "4", "--s", "2"});
    unsetenv("IWASAWA_PRECISION");
    REQUIRE(o.code == cli::kSuccess);
    auto j = json::parse(o.out);
    CHECK(j["passed"] == true);
    CHECK(j["order"] == 3);
    CHECK(j["checks"]["digits"] == 16);
}

TEST_CASE("skew series verification") {
    auto o = invoke({"skewseries", "verify", "--m", "9", "--p", "3", "--tau", "4", "--trunc", "8"});
    REQUIRE(o.code == cli::kSuccess);
    auto j = json::parse(o.out);
    CHECK(j["passed"] == true);
    REQUIRE(j["reports"].size() == 1);
    for (const auto& check : j["reports"][0]["checks"]) CHECK(check["passed"] == true);

    // q_tau = 3: s = 1 and s = 2 run, s = 3 does not divide q_tau - 1
    auto many = invoke({"skewseries", "verify", "--m", "9", "--p", "3", "--tau", "4", "--trunc", "6", "--smax", "3",
                        "--pairs", "5", "--samples", "3"});
    REQUIRE(many.code == cli::kSuccess);
    auto k = json::parse(many.out);
    CHECK(k["reports"].size() == 2);
    CHECK(k["skipped"] == json::array({3}));
}

TEST_CASE("character tables and Schur indices") {
    auto t = invoke({"chartable", "--group", data("c9.json")});
    REQUIRE(t.code == cli::kSuccess);
    auto j = json::parse(t.out);
    CHECK(j["characters"].size() == 9);
    CHECK(j["orthogonality"]["rows"] == true);

    auto s = invoke({"schur", "--group", data("dic3.json"), "--p", "3"});
    REQUIRE(s.code == cli::kSuccess);
    int quaternion = 0;
    const auto rows = json::parse(s.out)["rows"];
    for (const auto& row : rows)
        if (row["s"] == 2) ++quaternion;
    CHECK(quaternion == 1);
}
