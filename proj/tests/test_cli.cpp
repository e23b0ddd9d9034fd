#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "cli.hpp"
#include "corrmate/parallel.hpp"
#include "corrmate/serialize.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"corrmate"};
    argv.insert(argv.end(), args);
    std::ostringstream out, err;
    int code = corrmate::cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("corrmate_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("signature subcommand") {
    Run r = run({"signature", "--punctures", "3", "--order2", "0", "--cone", "3"});
    REQUIRE(r.code == 0);
    auto j = corrmate::Json::parse(r.out);
    CHECK(j["d"] == 11);
    CHECK(j["p"] == 4);
    CHECK(j["n"] == 3);

    Run bad = run({"signature", "--punctures", "1"});
    CHECK(bad.code != 0);
    CHECK(bad.err.find("error: ") == 0);
}

TEST_CASE("family subcommands") {
    Run bs = run({"bs", "--d", "2"});
    REQUIRE(bs.code == 0);
    CHECK(corrmate::Json::parse(bs.out).is_object());
    Run fbs = run({"fbs", "--n", "2"});
    CHECK(fbs.code == 0);
    Run mm = run({"mating-model", "--sig1", "3,0,3", "--sig2", "2,1,4", "--depth", "4"});
    REQUIRE(mm.code == 0);
    auto j = corrmate::Json::parse(mm.out);
    CHECK(j["gcd"] == 1);
    CHECK(j["components"] == 1);
    Run conj = run({"conjugacy", "--family", "bs", "--d", "2", "--depth", "5"});
    CHECK(conj.code == 0);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"corr", "--resolution", "100"}).code == 2);
    CHECK(run({"bs", "--no-such-flag"}).code == 2);
    Run invalid = run({"bs", "--d", "1"});
    CHECK(invalid.code == 3);
    CHECK(invalid.err.find("InvalidMap") != std::string::npos);
    Run help = run({"--help"});
    CHECK(help.code == 0);

    fs::path dir = scratch("offvariety");
    write(dir / "p.json", R"({"n": 2, "a": [[1.0, 0.0]]})");
    std::string point = (dir / "p.json").string(), outdir = dir.string();
    Run off = run({"corr", "--point", point.c_str(), "--out-dir", outdir.c_str()});
    CHECK(off.code == 3);
    CHECK(off.err.find("NoCommonRoot") != std::string::npos);
}

TEST_CASE("config files") {
    fs::path dir = scratch("config");
    write(dir / "ok.cfg", "# signature\npunctures = 3\ncone=3\n");
    write(dir / "bad.cfg", "punctures 3\n");
    write(dir / "unknown.cfg", "no_such_key = 1\n");
    std::string ok = (dir / "ok.cfg").string(), bad = (dir / "bad.cfg").string(), unknown = (dir / "unknown.cfg").string();

    Run r = run({"signature", "--config", ok.c_str()});
    REQUIRE(r.code == 0);
    CHECK(corrmate::Json::parse(r.out)["d"] == 11);
    // command line wins over the file
    Run over = run({"signature", "--config", ok.c_str(), "--cone", "0"});
    REQUIRE(over.code == 0);
    CHECK(corrmate::Json::parse(over.out)["d"] == 3);

    Run b = run({"signature", "--config", bad.c_str()});
    CHECK(b.code == 2);
    CHECK(b.err.find("ConfigError") != std::string::npos);
    CHECK(run({"signature", "--config", unknown.c_str()}).code == 2);

    auto kv = corrmate::cli::read_config_file(ok);
    CHECK(kv.at("punctures") == "3");
}

TEST_CASE("validation") {
    corrmate::cli::RunConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.resolution = 1000;
    CHECK_THROWS(cfg.validate());
    cfg.resolution = 256;
    cfg.tolerance = -1.0;
    CHECK_THROWS(cfg.validate());
}

TEST_CASE("corr output is deterministic across thread counts") {
    fs::path dir = scratch("corr");
    write(dir / "p.json", R"({"n": 2, "a": [[4.854101966249685, 0.0]]})");
    std::string point = (dir / "p.json").string();
    fs::create_directories(dir / "a");
    fs::create_directories(dir / "b");
    std::string a = (dir / "a").string(), b = (dir / "b").string();

    Run ra = run({"corr", "--point", point.c_str(), "--out-dir", a.c_str(), "--resolution", "256", "--cap", "20000"});
    REQUIRE(ra.code == 0);
    setenv("CORR_THREADS", "1", 1);
    CHECK(corrmate::worker_count() == 1);
    Run rb = run({"corr", "--point", point.c_str(), "--out-dir", b.c_str(), "--resolution", "256", "--cap", "20000"});
    unsetenv("CORR_THREADS");
    REQUIRE(rb.code == 0);
    CHECK(ra.out == rb.out);
    for (const char* f : {"corr.ppm", "orbit.json", "components.json", "corr.json"}) {
        INFO(f);
        REQUIRE(fs::exists(dir / "a" / f));
        CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
    }
    CHECK(slurp(dir / "a" / "corr.ppm").rfind("P6\n256 256\n255\n", 0) == 0);
}

TEST_CASE("corr accepts a variety solution") {
    fs::path dir = scratch("pipeline");
    std::string sol = (dir / "sol.json").string(), outdir = (dir / "out").string();
    Run v = run({"variety", "--n", "2", "--physical", "--out", sol.c_str()});
    REQUIRE(v.code == 0);
    Run c = run({"corr", "--point", sol.c_str(), "--out-dir", outdir.c_str(), "--resolution", "128", "--cap", "5000"});
    REQUIRE(c.code == 0);
    auto j = corrmate::Json::parse(c.out);
    CHECK(j["instance"]["a"][0][0].get<double>() == doctest::Approx(4.854101966249685));
}
