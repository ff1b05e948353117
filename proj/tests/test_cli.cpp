#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#ifndef REGSPEC_CLI
#error "REGSPEC_CLI must name the built command-line binary"
#endif

namespace {

const std::filesystem::path work = std::filesystem::temp_directory_path() / "regspec_cli_test";

int run(const std::string& args, std::string* out = nullptr) {
    const auto capture = work / "stdout.txt";
    const std::string cmd = std::string(REGSPEC_CLI) + " " + args + " > " + capture.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    if (out) {
        std::ifstream in(capture);
        std::ostringstream s;
        s << in.rdbuf();
        *out = s.str();
    }
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string path(const char* name) { return (work / name).string(); }

class Cli : public ::testing::Test {
protected:
    static void SetUpTestSuite() { std::filesystem::create_directories(work); }
    static void TearDownTestSuite() { std::filesystem::remove_all(work); }
};

} // namespace

TEST_F(Cli, GenPrintsSummary) {
    std::string out;
    EXPECT_EQ(run("gen cycle:n=17 " + path("c17.txt"), &out), 0);
    EXPECT_NE(out.find("k=2 girth=17 oddgirth=17"), std::string::npos) << out;
    EXPECT_TRUE(std::filesystem::exists(path("c17.txt")));
}

TEST_F(Cli, GenIsDeterministic) {
    ASSERT_EQ(run("gen random_regular:n=100,k=3,seed=7 " + path("a.txt")), 0);
    ASSERT_EQ(run("gen random_regular:n=100,k=3 " + path("b.txt") + " --seed 7"), 0);
    std::ifstream a(path("a.txt")), b(path("b.txt"));
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    EXPECT_EQ(sa.str(), sb.str());
}

TEST_F(Cli, ExitCodes) {
    ASSERT_EQ(run("gen petersen " + path("p.txt")), 0);
    ASSERT_EQ(run("gen hypercube:d=3 " + path("q3.txt")), 0);
    std::string out;
    EXPECT_EQ(run("check t1 " + path("p.txt") + " --eps 1", &out), 0);
    EXPECT_EQ(nlohmann::json::parse(out)["verdict"], "pass");
    EXPECT_EQ(run("check t3 " + path("p.txt") + " --eps 1", &out), 0);
    EXPECT_EQ(nlohmann::json::parse(out)["verdict"], "hypothesis-not-met");
    EXPECT_EQ(run("check t3 " + path("q3.txt") + " --eps 1", &out), 0);
    EXPECT_EQ(nlohmann::json::parse(out)["m"], 1);
    EXPECT_EQ(run("check t4step " + path("p.txt") + " --r 2", &out), 0);
    EXPECT_EQ(nlohmann::json::parse(out)["findings"]["alpha_literal_form"], "violated");
    EXPECT_EQ(run("check walks " + path("p.txt") + " --s 4"), 0);
    EXPECT_EQ(run("check certs " + path("p.txt")), 0);
    EXPECT_EQ(run("check girth " + path("p.txt") + " --r 6", &out), 0);
    EXPECT_EQ(nlohmann::json::parse(out)["census"]["counts"][5], 12);

    EXPECT_EQ(run("check t1 " + path("missing.txt")), 2);
    EXPECT_EQ(run("check t1 " + path("p.txt") + " --eps 0"), 2);
    EXPECT_EQ(run("gen cycle:n=2 " + path("bad.txt")), 2);
    EXPECT_EQ(run("frobnicate"), 2);
    EXPECT_EQ(run("check t1 " + path("p.txt") + " --caps order=x"), 2);
}

TEST_F(Cli, IrregularGraphIsAnError) {
    std::ofstream(path("path.txt")) << "3 2\n0 1\n1 2\n";
    EXPECT_EQ(run("check t1 " + path("path.txt")), 2);
    EXPECT_EQ(run("check girth " + path("path.txt")), 0);
}

TEST_F(Cli, ConstantsFlagsInvalidRows) {
    std::string out;
    EXPECT_EQ(run("constants --eps 0,1 --k 3 --out " + path("c.csv"), &out), 0);
    EXPECT_NE(out.find("invalid"), std::string::npos);
    std::ifstream csv(path("c.csv"));
    std::stringstream s;
    s << csv.rdbuf();
    EXPECT_NE(s.str().find("1,3,12,24,"), std::string::npos) << s.str();
    EXPECT_NE(s.str().find("invalid:DomainError"), std::string::npos);
}

TEST_F(Cli, SpectrumJson) {
    ASSERT_EQ(run("gen complete:n=4 " + path("k4.txt")), 0);
    std::string out;
    EXPECT_EQ(run("spectrum " + path("k4.txt"), &out), 0);
    const auto j = nlohmann::json::parse(out);
    EXPECT_EQ(j["n"], 4);
    EXPECT_NEAR(j["values"][0].get<double>(), 3.0, 1e-9);
}

TEST_F(Cli, CorpusWritesOutputs) {
    std::ofstream(path("run.conf")) << "include_default = false\ngraph = petersen\ngraph = cycle:n=7\n"
                                       "transforms = double\ntrends = false\n";
    std::string out;
    EXPECT_EQ(run("corpus " + path("run.conf") + " --out " + path("out") + " --jobs 2", &out), 0);
    EXPECT_TRUE(std::filesystem::exists(work / "out" / "reports.jsonl"));
    EXPECT_TRUE(std::filesystem::exists(work / "out" / "pass_counts.csv"));
    EXPECT_EQ(run("corpus " + path("nope.conf") + " --out " + path("out")), 2);
}
