#include <gtest/gtest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(ELLIPSCHEME_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = ::pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::path(ELLIPSCHEME_CLI_SCRATCH) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("classify").code, 1);
    EXPECT_EQ(run("classify --k 0").code, 1);
    EXPECT_EQ(run("classify --k 1 --format pdf").code, 1);
    EXPECT_EQ(run("construct --k 1 --family q --lambda 0").code, 1);
}

TEST(Cli, ClassifyAscii) {
    const auto r = run("classify --k 1");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("extremal types: V10 4S+V2 S+V4 V2+V2"), std::string::npos);
    EXPECT_NE(r.out.find("(0,8) S+V4, V2+V2  [exceptional]"), std::string::npos);
}

TEST(Cli, ClassifyJson) {
    const auto r = run("classify --k 2 --format json");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["k"], 2);
    EXPECT_EQ(j["points"].size(), 54u);
    EXPECT_EQ(j["extremal"].size(), 6u);
}

TEST(Cli, ConstructEmitAnalyzeRoundTrip) {
    const auto dir = scratch("roundtrip");
    const auto c = run("construct --k 1 --family m --lambda 1 --emit 1/8 --format json --out " + dir.string());
    ASSERT_EQ(c.code, 0);
    const auto cj = json::parse(c.out);
    EXPECT_EQ(cj["signed_scheme"], "<4|0>");
    EXPECT_EQ(cj["components"], 5);
    EXPECT_TRUE(fs::exists(dir / "construction_k1_m_l1.txt"));
    ASSERT_TRUE(fs::exists(dir / "curve_k1_m_l1.txt"));

    const auto a = run("analyze " + (dir / "curve_k1_m_l1.txt").string() + " --format json");
    ASSERT_EQ(a.code, 0);
    const auto aj = json::parse(a.out);
    EXPECT_TRUE(aj["generic"].get<bool>());
    EXPECT_EQ(aj["delta_degree"], 12);
    EXPECT_EQ(aj["scheme"], cj["scheme"]);
    EXPECT_EQ(aj["cover"], cj["cover"]);
}

TEST(Cli, ConstructCollapse) {
    const auto dir = scratch("collapse");
    const auto ok = run("construct --k 1 --family m2 --lambda 0 --collapse 1,0 --out " + dir.string());
    ASSERT_EQ(ok.code, 0);
    EXPECT_NE(ok.out.find("<1|0>"), std::string::npos);
    const auto one = run("construct --k 1 --family m --lambda 1 --collapse 1,0 --out " + dir.string());
    ASSERT_EQ(one.code, 0);
    EXPECT_NE(one.out.find("collapsed <1|0>"), std::string::npos);
    EXPECT_EQ(run("construct --k 1 --family m --lambda 1 --collapse 5,0 --out " + dir.string()).code, 2);
    EXPECT_EQ(run("construct --k 1 --family m --lambda 2 --out " + dir.string()).code, 2);
}

TEST(Cli, AnalyzeNonGeneric) {
    const auto dir = scratch("nongeneric");
    {
        std::FILE* f = std::fopen((dir / "bad.txt").c_str(), "w");
        ASSERT_NE(f, nullptr);
        std::fputs("k=1\np=-1\nq=0\n", f);
        std::fclose(f);
    }
    const auto r = run("analyze " + (dir / "bad.txt").string() + " --format json");
    EXPECT_EQ(r.code, 2);
    EXPECT_FALSE(json::parse(r.out)["generic"].get<bool>());
    EXPECT_EQ(run("analyze " + (dir / "missing.txt").string()).code, 2);
}

TEST(Cli, Verify) {
    const auto r = run("verify --k-max 3");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("closure"), std::string::npos);
}
