#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>

#include "qemb/json_io.hpp"
#include "qemb/series.hpp"

using namespace qemb;
using quat::EichlerOrder;
using quat::QuatElem;

namespace {

const std::string kData = QEMB_DATA_DIR;
const std::string kCli = QEMB_CLI_PATH;

struct RunResult {
    int code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = kCli + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

QuatElem qe(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
    QuatElem r;
    r.x = {a, b, c, d};
    return r;
}

}  // namespace

TEST_CASE("order JSON fixtures load and round-trip") {
    EichlerOrder o61 = json_io::load_order(kData + "/orders/ex61.json");
    CHECK(o61.dm() == 35);
    CHECK(o61.level() == 1);
    EichlerOrder o62 = json_io::load_order(kData + "/orders/ex62.json");
    CHECK(o62.dm() == 42);
    CHECK(o62.level() == 3);
    EichlerOrder o14 = json_io::load_order(kData + "/orders/max14.json");
    CHECK(o14.dm() == 14);

    EichlerOrder back = json_io::order_from_json(json_io::order_to_json(o61));
    CHECK(back.alg() == o61.alg());
    CHECK(back.basis() == o61.basis());
    CHECK(back.level() == o61.level());

    CHECK_THROWS_AS(json_io::load_order(kData + "/orders/missing.json"), Error);
    CHECK_THROWS_AS(json_io::order_from_json(json_io::json{{"order", 1}}), Error);
}

TEST_CASE("embedding and sum JSON round-trip") {
    EichlerOrder o = json_io::load_order(kData + "/orders/ex61.json");
    emb::Embedding phi = emb::make_embedding(o, qe(0, -1, -8, 3));
    json_io::json doc = json_io::embedding_to_json(phi);
    CHECK(doc["embedding"]["D"] == 12);
    emb::Embedding back = json_io::embedding_from_json(o, doc);
    CHECK(back.g == phi.g);
    CHECK(back.D == phi.D);

    // declared D is validated
    doc["embedding"]["D"] = 13;
    CHECK_THROWS_AS(json_io::embedding_from_json(o, doc), Error);

    hecke::EmbSum s = hecke::hecke_T(o, Int(2), [&] {
        hecke::EmbSum a;
        a.add(phi, Rat(1));
        return a;
    }());
    hecke::EmbSum s_back = json_io::embsum_from_json(o, json_io::embsum_to_json(s));
    CHECK(s_back == s);
}

TEST_CASE("graph JSON dump") {
    EichlerOrder o = json_io::load_order(kData + "/orders/ex61.json");
    pgraph::HeckeGraph g =
        pgraph::build_graph(o, emb::make_embedding(o, qe(0, -1, -8, 3)), Int(2), 1);
    json_io::json doc = json_io::graph_to_json(g);
    CHECK(doc["vertices"].size() == g.vertices.size());
    CHECK(doc["edges"].size() == g.edges.size());
    CHECK(doc["loop"].is_null());
    CHECK(doc["double_edge"].is_null());
    CHECK(doc["vertices"][0]["D"] == 12);
}

TEST_CASE("cli computes reference values") {
    CHECK(run_cli("unit --D 5").out == "t=3 u=1\n");
    CHECK(run_cli("tower --D 5 --p 3 --k 3").out == "e_1=2 e_2=3 e_3=3\n");

    auto th = run_cli("theta --order " + kData + "/orders/ex61.json --n 9");
    CHECK(th.code == 0);
    CHECK(th.out.substr(0, th.out.find('\n')) == "count=13");

    CHECK(run_cli("emb-disc --order " + kData + "/orders/ex61.json --g 0,-1,-8,3").out ==
          "D=12\n");
    CHECK(run_cli("emb-equiv --order " + kData + "/orders/ex61.json --g1 0,0,-1,0 --g2 0,0,-1,0")
              .out == "equivalent=true\n");
    CHECK(run_cli("intersect --order " + kData +
                  "/orders/ex61.json --g1 0,-1,-8,3 --g2 0,-2,27,10")
              .out == "value=2\n");
}

TEST_CASE("cli output is deterministic and round-trips") {
    std::string args = "series --order " + kData + "/orders/ex61.json --g1 0,0,-1,0 --g2 " +
                       "0,-1,-8,3 --N 8";
    auto a = run_cli(args);
    auto b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);  // byte-identical
    series::QSeries s = series::parse_qexp(a.out, "cli");
    series::QSeries ref = series::load_qexp(kData + "/qexp/is35_5_12.qexp");
    CHECK(s.N == 8);
    for (long n = 1; n <= 8; ++n) CHECK(s.at(n) == ref.at(n));

    // hecke output parses back through the library
    auto h = run_cli("hecke --order " + kData + "/orders/ex61.json --g 0,0,-1,0 --n 2");
    CHECK(h.code == 0);
    EichlerOrder o = json_io::load_order(kData + "/orders/ex61.json");
    hecke::EmbSum parsed = json_io::embsum_from_json(o, json_io::json::parse(h.out));
    CHECK(parsed.terms().size() == 1);
    CHECK(parsed.terms()[0].rep.D.value() == 20);

    auto g = run_cli("graph --order " + kData + "/orders/ex61.json --g 0,-1,-8,3 --p 2 " +
                     "--max-level 1");
    CHECK(g.code == 0);
    json_io::json gdoc = json_io::json::parse(g.out);
    CHECK(gdoc["violations"].empty());
    CHECK(gdoc["vertices"].size() == 4);

    auto d = run_cli("graph --order " + kData + "/orders/ex61.json --g 0,-1,-8,3 --p 2 --dot " +
                     "--max-level 1");
    CHECK(d.out.find("digraph") != std::string::npos);
}

TEST_CASE("cli match subcommand") {
    auto r = run_cli("match --target " + kData + "/qexp/is35_5_12.qexp --basis " + kData +
                     "/qexp/35.2.a.a.qexp " + kData + "/qexp/35.2.a.b.trace.qexp " + kData +
                     "/qexp/35.2.a.b.sqrt17.qexp");
    CHECK(r.code == 0);
    CHECK(r.out == "status=ok\nc_0=0\nc_1=0\nc_2=-1\n");

    auto ns = run_cli("match --target " + kData + "/qexp/is35_5_12.qexp --basis " + kData +
                      "/qexp/35.2.a.a.qexp");
    CHECK(ns.out == "status=no_solution\n");
}

TEST_CASE("cli exit codes") {
    CHECK(run_cli("unit --D 5").code == 0);
    CHECK(run_cli("unit --D 7").code == 1);   // 7 is not a discriminant
    CHECK(run_cli("emb-disc --order " + kData + "/orders/ex61.json --g 1,0,0,0").code == 1);
    CHECK(run_cli("nonsense").code == 2);
    CHECK(run_cli("unit").code == 2);  // missing required option
    CHECK(run_cli("--help").code == 0);
}
