#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pleatray/cli.hpp"
#include "pleatray/holonomy.hpp"
#include "pleatray/traceform.hpp"

using namespace pleatray;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out, err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
    auto p = fs::temp_directory_path() / "pleatray_cli_tests";
    fs::create_directories(p);
    return p;
}

std::string write_file(const std::string& name, const std::string& body) {
    auto p = scratch_dir() / name;
    std::ofstream f(p);
    f << body;
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("cli validate") {
    auto bad = run({"validate", "--surface", "s11", "--coords", "0,-1"});
    CHECK(bad.code == 2);
    CHECK(bad.out.find("(i)") != std::string::npos);

    auto good = run({"validate", "--surface", "s11", "--coords", "1,0"});
    CHECK(good.code == 0);
    CHECK(nlohmann::json::parse(good.out)["ok"] == true);

    auto missing = run({"validate", "--surface", "no_such_file.json", "--coords", "1,0"});
    CHECK(missing.code == 1);

    // surface from file behaves like the builtin
    auto path = write_file("s11.json", PantsDecomposition::builtin("s11").to_json().dump());
    auto from_file = run({"validate", "--surface", path, "--coords", "0,-1"});
    CHECK(from_file.code == 2);

    auto garbled = write_file("bad.json", "{ not json");
    CHECK(run({"validate", "--surface", garbled, "--coords", "1,0"}).code == 1);

    CHECK(run({"validate", "--surface", "s11", "--coords", "1"}).code == 1);
    CHECK(run({"validate", "--surface", "s11", "--coords", "a,b"}).code == 1);
    CHECK(run({"validate", "--surface", "s11", "--coords", "1,0,1,0"}).code == 2);
    CHECK(run({"validate", "--surface", "s12", "--coords", "1,0,1,0"}).code == 0);
    CHECK(run({"bogus-subcommand"}).code == 1);
    CHECK(run({}).code == 1);
}

TEST_CASE("cli trace-poly") {
    auto r = run({"trace-poly", "--surface", "s11", "--word", "c22"});
    REQUIRE(r.code == 0);
    auto d = PantsDecomposition::builtin("s11");
    auto expect = trace(holonomy_symbolic(catalog_word(d.sig(), "c22"), d));
    CHECK(nlohmann::json::parse(r.out) == expect.to_json());

    // pants loop: constant trace 2
    auto loop = run({"trace-poly", "--surface", "s11", "--word", "sigma1"});
    REQUIRE(loop.code == 0);
    auto poly = Polynomial::from_json(1, nlohmann::json::parse(loop.out));
    CHECK(poly.is_constant());
    CHECK(poly.constant_term() == GaussianRational::integer(2));

    CHECK(run({"trace-poly", "--surface", "s11", "--word", "nope"}).code == 1);

    // word from file
    auto wj = catalog_word(d.sig(), "d1").to_json();
    auto path = write_file("d1.json", wj.dump());
    auto from_file = run({"trace-poly", "--surface", "s11", "--word", path});
    REQUIRE(from_file.code == 0);
    auto expect_d1 = trace(holonomy_symbolic(catalog_word(d.sig(), "d1"), d));
    CHECK(nlohmann::json::parse(from_file.out) == expect_d1.to_json());

    auto again = run({"trace-poly", "--surface", "s11", "--word", "c22"});
    CHECK(again.out == r.out);
    CHECK(again.err == r.err);

    // --out writes the same bytes to a file
    auto outp = (scratch_dir() / "c22_poly.json").string();
    auto filed = run({"trace-poly", "--surface", "s11", "--word", "c22", "--out", outp});
    CHECK(filed.code == 0);
    CHECK(slurp(outp) == r.out);
}

TEST_CASE("cli verify-top") {
    auto all = run({"verify-top", "--surface", "s12"});
    REQUIRE(all.code == 0);
    auto arr = nlohmann::json::parse(all.out);
    REQUIRE(arr.is_array());
    CHECK(arr.size() >= 8);
    for (const auto& rep : arr) CHECK(rep["pass"] == true);

    auto one = run({"verify-top", "--surface", "s11", "--word", "c42"});
    CHECK(one.code == 0);

    // same word with a falsified twist claim fails clause (d)
    auto d = PantsDecomposition::builtin("s11");
    auto wj = catalog_word(d.sig(), "c22").to_json();
    wj["claimed"]["p"] = {0};
    auto path = write_file("c22_badclaim.json", wj.dump());
    auto bad = run({"verify-top", "--surface", "s11", "--word", path});
    CHECK(bad.code == 2);
    auto reps = nlohmann::json::parse(bad.out);
    CHECK(reps[0]["pass"] == false);
    CHECK(reps[0]["clauses"]["d"]["pass"] == false);

    CHECK(run({"verify-top", "--surface", "s11", "--word", write_file("empty.json", "[]")}).code ==
          1);
    CHECK(run({"verify-top", "--surface", "s11", "--word", write_file("halfword.json",
                                                                      R"({"name":"x"})")})
              .code == 1);
}

TEST_CASE("cli ray") {
    auto csvp = (scratch_dir() / "ray.csv").string();
    auto r = run({"ray", "--surface", "s11", "--lam", "1,0", "--schedule", "80,40,20,10", "--out",
                  csvp});
    REQUIRE(r.code == 0);
    auto body = slurp(csvp);
    std::istringstream in(body);
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,re_tau_1,im_tau_1,residual,cusp_proximity");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 4);
    CHECK(r.out.find("summary") != std::string::npos);

    auto j = run({"ray", "--surface", "s11", "--lam", "2,1", "--schedule", "20,10", "--format",
                  "json"});
    REQUIRE(j.code == 0);
    auto jj = nlohmann::json::parse(j.out);
    CHECK(jj["samples"].size() == 2);
    CHECK(jj["mode"] == "exact-ray");
    CHECK(jj["lamination"]["components"][0]["name"] == "c42");
    CHECK(jj["lamination"]["components"][0]["weight"] == "1/2");

    // weight-resolution picks c22 for (1,1); s12 multicurve resolves to g12
    CHECK(run({"ray", "--surface", "s11", "--lam", "1,1", "--schedule", "10"}).code == 0);
    CHECK(run({"ray", "--surface", "s12", "--lam", "1,0,1,0", "--schedule", "10"}).code == 0);

    CHECK(run({"ray", "--surface", "s11", "--lam", "0,2", "--schedule", "10"}).code == 2);
    CHECK(run({"ray", "--surface", "s11", "--lam", "5,7", "--schedule", "10"}).code == 2);
    CHECK(run({"ray", "--surface", "s11", "--lam", "1,0", "--schedule", "10,20"}).code == 1);
    CHECK(run({"ray", "--surface", "s11", "--lam", "1,0", "--schedule", ""}).code == 1);

    // first station at the cusp: numerical failure
    auto cusp = run({"ray", "--surface", "s11", "--lam", "1,0", "--schedule", "2"});
    CHECK(cusp.code == 3);
    CHECK(cusp.err.find("cusp") != std::string::npos);
}

TEST_CASE("cli line") {
    auto r = run({"line", "--surface", "s12", "--coords", "2,1,4,-3", "--schedule", "1"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "t,re_tau_1,im_tau_1,re_tau_2,im_tau_2");
    CHECK(row == "1,-0.5,1,0.75,0.5");

    CHECK(run({"line", "--surface", "s12", "--coords", "2,1,4,-3", "--schedule", ""}).code == 1);
    CHECK(run({"line", "--surface", "s12", "--coords", "0,1,4,-3", "--schedule", "1"}).code == 2);

    // the line at the first station is exactly the ray seed of a straight ray
    auto lr = run({"line", "--surface", "s11", "--coords", "1,0", "--schedule", "80"});
    auto rr = run({"ray", "--surface", "s11", "--lam", "1,0", "--schedule", "80"});
    REQUIRE(lr.code == 0);
    REQUIRE(rr.code == 0);
    std::istringstream lin(lr.out), rin(rr.out);
    std::string lrow, rrow;
    std::getline(lin, lrow);
    std::getline(lin, lrow);
    std::getline(rin, rrow);
    std::getline(rin, rrow);
    CHECK(rrow.substr(0, lrow.size()) == lrow);
    CHECK(rrow.size() > lrow.size());
}

TEST_CASE("cli determinism and logging") {
    auto a = run({"ray", "--surface", "s11", "--lam", "2,1", "--schedule", "40,20,10"});
    auto b = run({"ray", "--surface", "s11", "--lam", "2,1", "--schedule", "40,20,10"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.err == b.err);
    CHECK(a.err.empty());

    setenv("PLEATRAY_LOG", "info", 1);
    auto logged = run({"ray", "--surface", "s11", "--lam", "1,0", "--schedule", "20,10"});
    unsetenv("PLEATRAY_LOG");
    CHECK(logged.code == 0);
    CHECK(logged.err.find("station") != std::string::npos);
}
