#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "latres/engine.hpp"

#include <doctest.h>
#include <json.hpp>

#include <string>

using namespace latres;
using ojson = nlohmann::ordered_json;

namespace {

const char* kSegment = R"({"n": 2, "basis": [[1, -1]]})";
const char* kCubic = R"({"n": 4, "basis": [[1, -2, 1, 0], [0, 1, -2, 1]]})";
const char* kXY = R"({"n": 2, "gens": [[1, 0], [0, 1]]})";
const char* kTriangle = R"({"n": 3, "facets": [[1, 2], [2, 3], [1, 3]]})";

JobConfig job(const std::string& command, const std::string& input) {
    JobConfig cfg;
    cfg.command = command;
    cfg.input_json = input;
    return cfg;
}

ojson out_of(const JobResult& r) { return ojson::parse(r.output); }

}  // namespace

TEST_CASE("resolve: segment yields the matrix [[x1 - x2]]") {
    auto r = run_job(job("resolve", kSegment));
    REQUIRE(r.status == 0);
    auto j = out_of(r);
    CHECK(j["command"] == "resolve");
    CHECK(j["certified"] == true);
    CHECK(j["ranks"] == ojson({1, 1}));
    CHECK(j["matrices"][1][0][0] == "x1 - x2");
    CHECK(j["basis"][1][0]["lift"] == ojson({0, 1}));
}

TEST_CASE("lattice: certification, witness, and dependency reporting") {
    auto good = run_job(job("lattice", kSegment));
    REQUIRE(good.status == 0);
    auto j = out_of(good);
    CHECK(j["co_artinian"] == true);
    CHECK(j["grading"] == ojson({1, 1}));
    CHECK(j["quotient"]["free_rank"] == 1);

    auto bad = run_job(job("lattice", R"({"n": 2, "basis": [[1, 0]]})"));
    CHECK(bad.status == 2);
    CHECK(out_of(bad)["witness"] == ojson({1, 0}));
    CHECK(bad.error.find("(1, 0)") != std::string::npos);

    auto dep = run_job(job("lattice", R"({"n": 2, "basis": [[1, -1], [2, -2]]})"));
    CHECK(dep.status == 2);
    CHECK(out_of(dep)["error"] == "dependent basis");

    auto k3 = run_job(job("lattice", R"({"n": 3, "basis": [[2, -1, -1], [-1, 2, -1]]})"));
    REQUIRE(k3.status == 0);
    CHECK(out_of(k3)["quotient"]["torsion"] == ojson({"3"}));
}

TEST_CASE("verify: composes the audits and exits by certification") {
    auto cfg = job("verify", kCubic);
    cfg.bound = Int(8);
    auto r = run_job(cfg);
    REQUIRE(r.status == 0);
    auto j = out_of(r);
    CHECK(j["pass"] == true);
    CHECK(j["square_zero"] == true);
    CHECK(j["exact"] == true);
    CHECK(j["equivariant"] == true);
    CHECK(j["bound"] == 8);
    CHECK(j["ranks"] == ojson({1, 3, 2}));
    CHECK(j["witnesses"].empty());
}

TEST_CASE("verify accepts a stored resolution and audits it as-is") {
    auto res = run_job(job("resolve", kCubic));
    REQUIRE(res.status == 0);

    auto ok = run_job(job("verify", res.output));
    CHECK(ok.status == 0);
    CHECK(out_of(ok)["pass"] == true);

    SUBCASE("sign corruption fails verification with status 1") {
        ojson j = out_of(res);
        const std::string c = j["differentials"][2][0][0]["coeff"].get<std::string>();
        j["differentials"][2][0][0]["coeff"] = (c[0] == '-') ? c.substr(1) : "-" + c;
        auto r = run_job(job("verify", j.dump()));
        CHECK(r.status == 1);
        auto out = out_of(r);
        CHECK(out["pass"] == false);
        CHECK(out["square_zero"] == false);
    }
    SUBCASE("broken bookkeeping is invalid input, status 2") {
        ojson j = out_of(res);
        j["differentials"][1][0][0]["exp"] = {9, 9, 9, 9};
        CHECK(run_job(job("verify", j.dump())).status == 2);
    }
}

TEST_CASE("output is byte-stable across runs and thread widths") {
    auto a = run_job(job("resolve", kCubic));
    auto b = run_job(job("resolve", kCubic));
    CHECK(a.output == b.output);

    auto v1 = job("verify", kCubic);
    v1.jobs = 1;
    auto v4 = v1;
    v4.jobs = 4;
    auto r1 = run_job(v1);
    auto r4 = run_job(v4);
    CHECK(r1.status == 0);
    CHECK(r1.output == r4.output);
}

TEST_CASE("betti: radius cap produces uncertified output with status 1") {
    auto capped = job("betti", kSegment);
    capped.radius_cap = Int(1);
    auto r = run_job(capped);
    CHECK(r.status == 1);
    CHECK(out_of(r)["certified"] == false);
    CHECK(r.error.find("UNCERTIFIED") != std::string::npos);

    auto full = run_job(job("betti", kSegment));
    REQUIRE(full.status == 0);
    auto j = out_of(full);
    CHECK(j["certified"] == true);
    CHECK(j["ranks"] == ojson({1, 1}));
    CHECK(j["table"][1]["lift"] == ojson({0, 1}));
}

TEST_CASE("koszul needs a degree and emits a reloadable complex") {
    CHECK(run_job(job("koszul", kSegment)).status == 2);
    auto cfg = job("koszul", kSegment);
    cfg.degrees = {Vec{1, 1}};
    auto r = run_job(cfg);
    REQUIRE(r.status == 0);
    auto j = out_of(r);
    CHECK(j["degree"] == ojson({1, 1}));
    CHECK(j["n"] == 2);
    CHECK(j["facets"] == ojson({{1, 2}}));
}

TEST_CASE("forest and primes accept complexes and modules") {
    auto f = run_job(job("forest", kTriangle));
    REQUIRE(f.status == 0);
    auto j = out_of(f);
    CHECK(j["bad_primes"] == ojson({"3"}));
    CHECK(j["entries"][0]["levels"][1]["tau"] == "3");
    CHECK(j["entries"][0]["levels"][1]["sigma"] == "3");
    CHECK(j["entries"][0]["levels"][1]["shrubberies"] == 3);
    CHECK(j["entries"][0]["levels"][1]["stakes"] == 3);

    auto p = run_job(job("primes", kTriangle));
    REQUIRE(p.status == 0);
    auto pj = out_of(p);
    CHECK(pj["bad_primes"] == ojson({"3"}));
    bool tau1 = false;
    for (const auto& e : pj["provenance"])
        if (e["source"] == "tau" && e["i"] == 1 && e["value"] == "3") tau1 = true;
    CHECK(tau1);

    auto fm = run_job(job("forest", kXY));
    REQUIRE(fm.status == 0);
    auto mj = out_of(fm);
    REQUIRE(mj["entries"].size() == 3);  // support degrees (0,1), (1,0), (1,1)
    CHECK(mj["entries"][2]["degree"] == ojson({1, 1}));
}

TEST_CASE("paths: counts, 1-based step lists, and order validation") {
    auto r = run_job(job("paths", R"({"a": [0, 0], "b": [1, 2]})"));
    REQUIRE(r.status == 0);
    auto j = out_of(r);
    CHECK(j["count"] == "3");
    CHECK(j["steps"].size() == 3);
    CHECK(j["steps"][0] == ojson({1, 2, 2}));

    CHECK(run_job(job("paths", R"({"a": [2, 0], "b": [1, 2]})")).status == 2);
    CHECK(run_job(job("paths", R"({"a": [0], "b": [1, 2]})")).status == 2);
}

TEST_CASE("invalid configurations are status 2") {
    CHECK(run_job(job("nonsense", kSegment)).status == 2);
    auto bad_format = job("resolve", kSegment);
    bad_format.format = "yaml";
    CHECK(run_job(bad_format).status == 2);
    auto bad_mode = job("resolve", kSegment);
    bad_mode.mode = "sideways";
    CHECK(run_job(bad_mode).status == 2);
    auto bad_field = job("resolve", kSegment);
    bad_field.field = "fp:4";
    CHECK(run_job(bad_field).status == 2);
    auto no_jobs = job("verify", kSegment);
    no_jobs.jobs = 0;
    CHECK(run_job(no_jobs).status == 2);
    auto r = run_job(job("resolve", "{not json"));
    CHECK(r.status == 2);
    CHECK(r.error.find("byte") != std::string::npos);
}

TEST_CASE("text format renders the descended matrices") {
    auto cfg = job("resolve", kSegment);
    cfg.format = "text";
    auto r = run_job(cfg);
    REQUIRE(r.status == 0);
    CHECK(r.output.find("x1 - x2") != std::string::npos);
    CHECK(r.output.find("ranks: 1 1") != std::string::npos);

    auto v = job("verify", kSegment);
    v.format = "text";
    auto vr = run_job(v);
    CHECK(vr.output.find("verification: PASS") != std::string::npos);
}

TEST_CASE("prime fields flow through the engine") {
    auto cfg = job("descend", kSegment);
    cfg.field = "fp:2";
    auto r = run_job(cfg);
    REQUIRE(r.status == 0);
    auto j = out_of(r);
    CHECK(j["field"] == "fp:2");
    CHECK(j["generators"] == ojson({"x1 + x2"}));
    CHECK(j["matrices_text"][1][0][0] == "x1 + x2");
}
