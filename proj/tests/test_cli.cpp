#include "helpers.hpp"

#include "backlim/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace testing;

namespace {

struct Run {
    int code;
    std::string out, err;
    json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "backlim");
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

IntervalSet set_of(const json& j) {
    std::vector<Interval> parts;
    for (const auto& p : j) parts.emplace_back(Rational::parse(p[0].get<std::string>()), Rational::parse(p[1].get<std::string>()));
    return IntervalSet::from(parts);
}

std::string data(const char* name) { return std::string(BACKLIM_DATA_DIR) + "/" + name + ".json"; }

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("analyze") {
        auto r = run({"analyze", data("f5"), "--point", "0"});
        REQUIRE(r.code == kExitOk);
        auto j = r.report();
        CHECK(j["command"] == "analyze");
        CHECK(j["exact"] == false);
        CHECK(j["map_digest"] == map_digest(f5()));
        CHECK(j.contains("wall_time_ms"));
        CHECK(j["budgets"]["depth"] == 12);
        auto upper = set_of(j["result"]["enclosure"]["upper"]);
        CHECK(S("[0,2];[4,5]").contains(upper));

        auto o = run({"analyze", data("overlap"), "--point", "1/2"}).report();
        CHECK(o["exact"] == true);
        CHECK(set_of(o["result"]["enclosure"]["upper"]) == S("[1/3,2/3]"));
        CHECK(set_of(o["result"]["enclosure"]["lower"]) == S("[1/3,2/3]"));
    }

    TEST_CASE("input errors") {
        CHECK(run({"analyze", data("f5"), "--point", "6"}).code == kExitInput);
        CHECK(run({"analyze", data("f5"), "--point", "1/0"}).code == kExitInput);
        CHECK(run({"analyze", "/nonexistent/map.json", "--point", "0"}).code == kExitInput);
        CHECK(run({"exclude", data("f5"), "--point", "0", "--seed", "[3,2]"}).code == kExitInput);
        CHECK(run({"corpus", "verify", "nosuch"}).code == kExitInput);
        CHECK(run({"scan", "--dots", "9"}).code == kExitInput);
        CHECK(run({"plot", data("f5"), "--samples", "1", "--out", "/tmp/backlim_never.tsv"}).code == kExitInput);
        CHECK(run({"nosuchcommand"}).code == kExitInput);
        auto e = run({"analyze", data("f5"), "--point", "6"});
        CHECK_FALSE(e.err.empty());
    }

    TEST_CASE("certify") {
        auto r = run({"certify", data("f8"), "--point", "0", "--target", "14/3"});
        REQUIRE(r.code == kExitOk);
        auto j = r.report()["result"];
        CHECK(j["status"] == "Found");
        CHECK(j["certificate"]["type"] == "ContractionCert");
        CHECK(j["verified"] == true);

        auto n = run({"certify", data("f5"), "--point", "0", "--target", "3"});
        CHECK(n.code == kExitOk);
        CHECK(n.report()["result"]["status"] == "NotFound");

        CHECK(run({"certify", data("f5"), "--point", "0", "--target", "7/2", "--period", "1"}).code ==
              kExitPrecondition);
    }

    TEST_CASE("exclude") {
        auto a = run({"exclude", data("f5"), "--point", "0", "--seed", "[5/2,7/2]"});
        REQUIRE(a.code == kExitOk);
        auto ja = a.report()["result"];
        CHECK(ja["status"] == "Accepted");
        CHECK(ja["verified"] == true);
        auto b = run({"exclude", data("f5"), "--point", "0", "--seed", "[0,1]"});
        REQUIRE(b.code == kExitOk);
        CHECK(b.report()["result"]["status"] == "RejectedSeed");
    }

    TEST_CASE("periodic and markov") {
        auto p = run({"periodic", data("f8"), "--max-period", "4"});
        REQUIRE(p.code == kExitOk);
        CHECK(p.report()["command"] == "periodic");
        auto m = run({"markov", data("overlap")});
        REQUIRE(m.code == kExitOk);
        CHECK(m.report()["result"]["cycles"].size() == 3);
    }

    TEST_CASE("corpus") {
        auto l = run({"corpus", "list"});
        REQUIRE(l.code == kExitOk);
        auto v = run({"corpus", "verify", "f5", "overlap", "--jobs", "2"});
        REQUIRE(v.code == kExitOk);
        CHECK(v.report()["map_digest"].is_null());
    }

    TEST_CASE("json file output replaces stdout") {
        auto path = std::filesystem::temp_directory_path() / "backlim_cli_test.json";
        auto r = run({"periodic", data("f5"), "--max-period", "3", "--json", path.string()});
        REQUIRE(r.code == kExitOk);
        CHECK(r.out.empty());
        std::ifstream in(path);
        auto j = json::parse(in);
        auto s = run({"periodic", data("f5"), "--max-period", "3"}).report();
        j.erase("wall_time_ms");
        s.erase("wall_time_ms");
        CHECK(j == s);
        std::filesystem::remove(path);
    }

    TEST_CASE("plot") {
        auto path = std::filesystem::temp_directory_path() / "backlim_plot_test.tsv";
        auto r = run({"plot", data("f5"), "--samples", "11", "--out", path.string(), "--tree", "1/2,3"});
        REQUIRE(r.code == kExitOk);
        std::ifstream in(path);
        std::string line;
        std::size_t rows = 0;
        bool tree = false, root = false;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            if (line.empty()) break;
            ++rows;
        }
        while (std::getline(in, line)) {
            if (line == "# backward tree of 1/2") tree = true;
            if (line == "0\t1/2") root = true;
        }
        CHECK(rows == 15);
        CHECK(tree);
        CHECK(root);
        std::filesystem::remove(path);
        CHECK(plot_rows(f5(), 11).size() == 15);
        CHECK(run({"plot", data("f5"), "--samples", "5", "--out", "/nonexistent/dir/p.tsv"}).code == kExitInput);
    }

    TEST_CASE("scan") {
        auto fam = scan_family(4, 5, 1000);
        CHECK(fam.size() == 173);
        REQUIRE(fam.size() > 59);
        CHECK(map_digest(fam[59]) == map_digest(f5()));
        CHECK(scan_family(4, 5, 0).empty());

        ScanOptions opt;
        opt.limit = 60;
        auto a = scan_maps(opt);
        opt.jobs = 3;
        auto b = scan_maps(opt);
        CHECK(a == b);
        auto f5row = a["maps"][59];
        CHECK(f5row["status"] == "consistent");
        CHECK(f5row["map_digest"] == map_digest(f5()));
        CHECK(a["scanned"] == 60);
    }

    TEST_CASE("map digest is stable") {
        CHECK(map_digest(f5()) == "d26b1227ad6245d69b50fda1e0aa74d863eb5e7b4ccb3126c52c0379c85c58e2");
        CHECK(map_digest(f5()) == map_digest(parse_map(serialize_map(f5()))));
        CHECK(map_digest(f5()) != map_digest(f8()));
    }
}
