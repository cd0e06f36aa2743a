#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

using Json = nlohmann::ordered_json;

namespace {

struct Run {
    int code;
    std::string out;
    Json json() const { return Json::parse(out); }
};

std::string quote(const std::string& s)
{
    std::string q = "'";
    for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

Run cli(const std::string& args)
{
    std::string cmd = std::string(PLANEAUT_BIN) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Run cli(const std::string& sub, const Json& in, const std::string& extra = "")
{
    return cli(sub + " " + quote(in.dump()) + (extra.empty() ? "" : " " + extra));
}

// Term list from (i, j, coefficient) triples.
Json poly(std::initializer_list<std::tuple<int, int, Json>> terms)
{
    Json p = Json::array();
    for (const auto& [i, j, c] : terms) p.push_back(Json::array({Json::array({i, j}), c}));
    return p;
}

Json endo(const std::string& field, const Json& p1, const Json& p2)
{
    return Json{{"field", field}, {"components", Json::array({p1, p2})}};
}

Json x_times(long c) { return Json{{"num", Json::array({"0", std::to_string(c)})}, {"den", Json::array({"1"})}}; }

}  // namespace

TEST_CASE("identity has empty polydegree")
{
    auto r = cli("polydegree", endo("Q", poly({{1, 0, "1"}}), poly({{0, 1, "1"}})));
    CHECK(r.code == 0);
    CHECK(r.out == "{\n  \"polydegree\": []\n}\n");
}

TEST_CASE("non-automorphism exits 3 with its error code")
{
    auto r = cli("decompose", endo("Q", poly({{1, 0, "1"}}), poly({{1, 1, "1"}})));
    CHECK(r.code == 3);
    CHECK(r.json() == Json{{"error", "NotAnAutomorphism"}});
}

TEST_CASE("schema and usage errors exit 2")
{
    CHECK(cli("polydegree", Json{{"components", 3}}).code == 2);
    CHECK(cli("polydegree '{not json'").code == 2);
    CHECK(cli("polydegree /nonexistent/file.json").code == 2);
    CHECK(cli("frobnicate").code == 2);
    auto r = cli("polydegree", Json{{"field", "Q(zeta3)"}, {"components", Json::array()}}, "--field Q");
    CHECK(r.code == 2);
    CHECK(r.json() == Json{{"error", "SchemaError"}});
    CHECK(cli("centralizer --polydegree 2,x --weight 1,2").code == 2);
    CHECK(cli("--help").code == 0);
}

TEST_CASE("compose and invert agree")
{
    Json f = endo("Q", poly({{1, 0, "1"}, {0, 3, "2"}}), poly({{0, 1, "1"}}));
    Json g = endo("Q", poly({{0, 1, "1"}}), poly({{1, 0, "-1"}, {0, 2, "1/2"}}));
    auto inv = cli("invert", f);
    REQUIRE(inv.code == 0);
    auto id = cli("compose", Json::array({f, inv.json()}));
    REQUIRE(id.code == 0);
    CHECK(id.json() == endo("Q", poly({{1, 0, "1"}}), poly({{0, 1, "1"}})));

    auto fg = cli("compose", Json{{"f", f}, {"g", g}});
    REQUIRE(fg.code == 0);
    auto d = cli("polydegree", fg.json());
    CHECK(d.json() == Json{{"polydegree", {2, 3}}});
    // Deterministic output.
    CHECK(cli("compose", Json{{"f", f}, {"g", g}}).out == fg.out);
}

TEST_CASE("field flag fills in missing fields")
{
    Json f = {{"components", Json::array({poly({{1, 0, "1"}, {0, 2, "1"}}), poly({{0, 1, "1"}})})}};
    CHECK(cli("polydegree", f).code == 2);
    auto r = cli("polydegree", f, "--field Q");
    CHECK(r.code == 0);
    CHECK(r.json() == Json{{"polydegree", {2}}});
}

TEST_CASE("decompose reports the word")
{
    Json f = endo("Q", poly({{1, 0, "1"}, {0, 3, "2"}}), poly({{0, 1, "1"}}));
    auto r = cli("decompose", f);
    REQUIRE(r.code == 0);
    Json j = r.json();
    CHECK(j.at("polydegree") == Json::array({3}));
    CHECK(j.at("affine").size() == 2);
    CHECK(j.at("elementary").size() == 1);
}

TEST_CASE("centralizer classification")
{
    auto even = cli("centralizer --polydegree 2,3 --k 3 --weight 1,2");
    REQUIRE(even.code == 0);
    CHECK(even.json().at("empty") == true);
    auto torus = cli("centralizer --weight 2,1");
    REQUIRE(torus.code == 0);
    CHECK(torus.json().at("empty") == false);
    CHECK(torus.json().at("v") == 2);
}

TEST_CASE("family report survives verify, and tampering is caught")
{
    const std::string F = "Q(x)";
    Json psi = endo(F, poly({{1, 0, "1"}, {0, 2, x_times(1)}}), poly({{0, 1, "1"}}));
    Json psi_inv = endo(F, poly({{1, 0, "1"}, {0, 2, x_times(-1)}}), poly({{0, 1, "1"}}));
    Json flip = endo(F, poly({{1, 0, "-1"}}), poly({{0, 1, "1"}}));
    auto inner = cli("compose", Json::array({flip, psi}));
    REQUIRE(inner.code == 0);
    auto g = cli("compose", Json::array({psi_inv, inner.json()}));
    REQUIRE(g.code == 0);
    Json group = {{"group", {{"kind", "cyclic"}, {"field", F}, {"orders", {2}}, {"generators", {g.json()}}}}};

    auto lin = cli("linearize", group);
    CHECK(lin.code == 0);
    CHECK(lin.json().at("verified") == true);

    auto fam = cli("family", group);
    REQUIRE(fam.code == 0);
    Json rep = fam.json();
    CHECK(rep.at("verified") == true);
    CHECK(rep.at("residual").empty());

    auto v = cli("verify", rep, "--at 3");
    CHECK(v.code == 0);
    CHECK(v.json() == Json{{"verified", true}, {"specialization", true}});

    // Translating psi keeps it an automorphism but breaks the conjugation.
    for (auto& c : rep["psi"]["components"]) c.push_back(Json::array({Json::array({0, 0}), "1"}));
    auto bad = cli("verify", rep);
    CHECK(bad.code == 1);
    CHECK(bad.json() == Json{{"verified", false}});
}

TEST_CASE("output flag writes the file")
{
    std::string path = "test_cli_output.json";
    std::remove(path.c_str());
    auto r = cli("polydegree", endo("Q", poly({{1, 0, "1"}}), poly({{0, 1, "1"}})), "--output " + path);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    REQUIRE(f);
    CHECK(Json::parse(f) == Json{{"polydegree", Json::array()}});
}

TEST_CASE("selftest negative suite")
{
    auto r = cli("selftest --suite negative");
    CHECK(r.code == 0);
    Json j = r.json();
    CHECK(j.at("suite") == "negative");
    CHECK(j.at("passed") == true);
    CHECK(j.at("criteria").size() == 1);
    CHECK(cli("selftest --suite bogus").code == 2);
}

TEST_CASE("selftest kr suite")
{
    auto r = cli("selftest --suite kr");
    CHECK(r.code == 0);
    Json j = r.json();
    CHECK(j.at("seed") == 0);
    REQUIRE(j.at("criteria").size() == 2);
    CHECK(j.at("criteria")[0].at("criterion") == 6);
    CHECK(j.at("criteria")[1].at("criterion") == 7);
    CHECK(j.at("passed") == true);
}
