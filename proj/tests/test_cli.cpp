#include "qhh/cli.hpp"
#include "qhh/data.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qhh;

namespace {

const std::string kDir = QHH_CONFIG_DIR;

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

// writes a config to a scratch file and returns its path
std::string scratch_config(const std::string& name, const std::string& text)
{
    auto p = std::filesystem::temp_directory_path() / ("qhh_test_" + name + ".json");
    std::ofstream(p) << text;
    return p.string();
}

json formal_json() { return json::parse(R"({"n":2,"q":[{"i":1,"j":2,"kind":"formal","value":"q"}],"max_degree":3})"); }

std::string error_path(const json& j)
{
    try {
        parse_config(j);
    } catch (const ConfigError& e) {
        return e.path;
    }
    return "<no error>";
}

} // namespace

TEST(Config, ParsesSampleConfigs)
{
    for (const auto& e : std::filesystem::directory_iterator(kDir)) {
        Config C = load_config(e.path().string());
        EXPECT_GE(C.max_degree, 0) << e.path();
        EXPECT_FALSE(C.seeds.empty());
    }
    Config C = load_config(kDir + "/root_of_unity_d3.json");
    EXPECT_EQ(C.problem.n(), 2);
    EXPECT_EQ(C.problem.N(), 3);
    EXPECT_EQ(C.problem.G.order(), 3);
    EXPECT_EQ(C.problem.G.chi(1, 1), Units{3}.zeta(2));
}

TEST(Config, DefaultsAndSharedFormalNames)
{
    json j = formal_json();
    j.erase("max_degree");
    Config C = parse_config(j);
    EXPECT_EQ(C.max_degree, -1);
    EXPECT_EQ(C.seeds, (std::vector<std::uint64_t>{1, 2, 3}));
    Config S = load_config(kDir + "/formal_space_z2.json");
    EXPECT_EQ(S.problem.Q.nformal(), 2) << "a and b; the repeated name is one parameter";
    EXPECT_EQ(S.problem.Q.q(1, 2), formal_unit(0, -1));
}

TEST(Config, MinusOneCharacterForcesEvenN)
{
    json j = formal_json();
    j["group"] = json::parse(R"({"kind":"cyclic","order":2,"chi":[{"kind":"rational","value":-1},
                                                                  {"kind":"rational","value":1}]})");
    EXPECT_EQ(parse_config(j).problem.N(), 2);
}

TEST(Config, ErrorsCarryPaths)
{
    json j = formal_json();
    j.erase("n");
    EXPECT_EQ(error_path(j), "/n");
    j = formal_json();
    j["q"][0]["i"] = 2;
    EXPECT_EQ(error_path(j), "/q/0");
    j = formal_json();
    j["q"].push_back(j["q"][0]);
    EXPECT_EQ(error_path(j), "/q/1");
    j = formal_json();
    j["q"][0] = json::parse(R"({"i":1,"j":2,"kind":"zeta","value":1})");
    EXPECT_EQ(error_path(j), "/q/0/order");
    j = formal_json();
    j["q"][0]["kind"] = "real";
    EXPECT_EQ(error_path(j).rfind("/q/0", 0), 0u);
    j = formal_json();
    j["group"] = json::parse(R"({"kind":"cyclic","order":3,"chi":[{"kind":"zeta","order":3,"value":1}]})");
    EXPECT_EQ(error_path(j).rfind("/group", 0), 0u);
    j = formal_json();
    j["N"] = 2;
    j["group"] = json::parse(R"({"kind":"cyclic","order":3,"chi":[{"kind":"zeta","order":3,"value":1},
                                                                  {"kind":"zeta","order":3,"value":1}]})");
    EXPECT_NE(error_path(j), "<no error>") << "order 3 does not divide N = 2";
    EXPECT_EQ(error_path(json::array()), "");
}

TEST(Serialization, ScalarTriples)
{
    Problem P = load_config(kDir + "/formal_plane.json").problem;
    Scalar s = P.Q.one() - Scalar::formal(P.N(), P.Q.nformal(), 0, -2);
    json j = to_json(s);
    ASSERT_TRUE(j.is_array());
    for (const auto& t : j) {
        EXPECT_TRUE(t.contains("zeta_power"));
        EXPECT_TRUE(t.contains("formal_exponents"));
        EXPECT_TRUE(t.contains("rational"));
    }
    EXPECT_EQ(scalar_from_json(P, j), s);
}

TEST(Serialization, CochainRoundTrip)
{
    for (const char* f : {"formal_plane.json", "root_of_unity_d3.json", "formal_space_z2.json"}) {
        Config C = load_config(kDir + "/" + f);
        const Problem& P = C.problem;
        for (int m = 0; m <= 3; ++m)
            for (const auto& c : invariant_basis(P, m).classes) {
                json j = to_json(P, c);
                Cochain back = cochain_from_json(P, json::parse(j.dump()));
                EXPECT_EQ(back, c);
                EXPECT_EQ(to_text(P, back), to_text(P, c));
            }
    }
}

TEST(Cli, DimsText)
{
    auto r = run({"dims", "--config", kDir + "/formal_plane.json", "--verify"});
    EXPECT_EQ(r.code, kOk) << r.err;
    EXPECT_EQ(r.out, "degree  dim  rank_oracle\n"
                     "     0    2            2\n"
                     "     1    2            2\n"
                     "     2    1            1\n"
                     "     3    0            0\n"
                     "     4    0            0\n");
}

TEST(Cli, DimsJsonAndOverrides)
{
    auto r = run({"dims", "--config", kDir + "/root_of_unity_d3.json", "--max-degree", "3", "--format", "json",
                  "--seed", "7", "--seed", "9", "--verify"});
    ASSERT_EQ(r.code, kOk) << r.err;
    json j = json::parse(r.out);
    ASSERT_EQ(j["dims"].size(), 4u);
    std::vector<int> got;
    for (const auto& row : j["dims"]) {
        got.push_back(row["dim"]);
        EXPECT_EQ(row["dim"], row["rank_oracle"]);
    }
    EXPECT_EQ(got, (std::vector<int>{4, 2, 2, 2}));
}

TEST(Cli, DegreeZeroBound)
{
    auto r = run({"cup", "--config", kDir + "/formal_plane.json", "--max-degree", "0", "--format", "json"});
    EXPECT_EQ(r.code, kOk) << r.err;
    EXPECT_NO_THROW(json::parse(r.out));
}

TEST(Cli, BasisJsonParsesBack)
{
    auto r = run({"basis", "--config", kDir + "/formal_plane_z3.json", "--max-degree", "2", "--format", "json"});
    ASSERT_EQ(r.code, kOk) << r.err;
    Problem P = load_config(kDir + "/formal_plane_z3.json").problem;
    json j = json::parse(r.out);
    EXPECT_EQ(j["basis"].size(), 15u);
    for (const auto& row : j["basis"])
        EXPECT_TRUE(is_cocycle(P, cochain_from_json(P, row["class"])));
}

TEST(Cli, BracketTable)
{
    auto r = run({"bracket", "--config", kDir + "/formal_plane.json"});
    ASSERT_EQ(r.code, kOk) << r.err;
    auto pos = r.out.find("nonzero brackets:\n");
    ASSERT_NE(pos, std::string::npos);
    std::string tail = r.out.substr(pos);
    EXPECT_NE(tail.find("[c1, c2] = "), std::string::npos);
    EXPECT_NE(tail.find("[c1, c3] = "), std::string::npos);
    EXPECT_EQ(std::count(tail.begin(), tail.end(), '\n'), 3);
}

TEST(Cli, VerifyPassesAndCorruptionFails)
{
    auto ok = run({"verify", "--config", kDir + "/formal_plane.json", "--max-degree", "3"});
    EXPECT_EQ(ok.code, kOk) << ok.err;
    EXPECT_EQ(ok.out.find("FAIL"), std::string::npos);
    auto bad = run({"verify", "--config", kDir + "/formal_plane.json", "--max-degree", "3", "--corrupt-omega"});
    EXPECT_EQ(bad.code, kVerification);
    EXPECT_NE(bad.err.find("verification failed: delta_squared"), std::string::npos) << bad.err;
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run({}).code, kUsage);
    EXPECT_EQ(run({"dims"}).code, kUsage) << "--config is required";
    EXPECT_EQ(run({"frobnicate", "--config", "x"}).code, kUsage);
    EXPECT_EQ(run({"dims", "--config", kDir + "/formal_plane.json", "--format", "xml"}).code, kUsage);
    auto missing = run({"dims", "--config", "/nonexistent/qhh.json"});
    EXPECT_EQ(missing.code, kConfig);
    EXPECT_EQ(missing.err.rfind("config error: ", 0), 0u);

    json j = formal_json();
    j.erase("max_degree");
    std::string p = scratch_config("no_degree", j.dump());
    auto r = run({"dims", "--config", p});
    EXPECT_EQ(r.code, kConfig);
    EXPECT_NE(r.err.find("/max_degree"), std::string::npos);
    EXPECT_EQ(run({"dims", "--config", p, "--max-degree", "1"}).code, kOk);

    EXPECT_EQ(run({"dims", "--config", scratch_config("garbage", "{not json")}).code, kConfig);
    j = formal_json();
    j["q"][0]["value"] = 3;
    EXPECT_EQ(run({"dims", "--config", scratch_config("bad_q", j.dump())}).code, kConfig);
}
