#include "brstlab/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace brstlab;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "brstlab");
    std::ostringstream out;
    std::ostringstream err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / ("brstlab_test_" + name);
    std::ofstream(path) << content;
    return path.string();
}

const std::string kModel = std::string(BRSTLAB_MODELS_DIR) + "/u2.bv";

}  // namespace

TEST(Report, EmptyReportJson) {
    Report r;
    EXPECT_EQ(emit_report(r, ReportFormat::json),
              "{\"model\":\"\",\"bounds\":{\"ghost\":[0,0],\"weight\":0},\"cohomology\":[],\"checks\":[]}\n");
    EXPECT_EQ(emit_report(r, ReportFormat::csv), "ghost,weight,dim,ker,im,H\n");
}

TEST(Report, RowsAndChecks) {
    Report r;
    r.model = "u2";
    r.cohomology.push_back({0, 2, 10, 2, 0, 2});
    r.checks.push_back({"x", false, "residual 1*M1"});
    std::string j = emit_report(r, ReportFormat::json);
    EXPECT_NE(j.find("{\"ghost\":0,\"weight\":2,\"dim\":10,\"ker\":2,\"im\":0,\"H\":2}"), std::string::npos);
    EXPECT_NE(j.find("{\"name\":\"x\",\"status\":\"fail\",\"detail\":\"residual 1*M1\"}"), std::string::npos);
    EXPECT_NE(emit_report(r, ReportFormat::csv).find("0,2,10,2,0,2\n"), std::string::npos);
    EXPECT_NE(emit_report(r, ReportFormat::text).find("FAIL x: residual 1*M1"), std::string::npos);
    EXPECT_FALSE(r.passed());
}

TEST(Cli, VerifyBrstPasses) {
    Outcome o = invoke({"verify", "brst", "--model", kModel, "--weight-max", "5", "--format", "text"});
    EXPECT_EQ(o.code, 0) << o.out << o.err;
    for (const char* name : {"PASS cme", "PASS d-squared", "PASS s0-closed", "PASS obstruction"})
        EXPECT_NE(o.out.find(name), std::string::npos) << name;
}

TEST(Cli, CohomologyTableJson) {
    Outcome o = invoke({"cohomology", "--ghost", "0..6", "--weight-max", "4", "--format", "json"});
    ASSERT_EQ(o.code, 0) << o.err;
    auto j = nlohmann::json::parse(o.out);
    EXPECT_EQ(j["bounds"]["ghost"][1], 6);
    EXPECT_EQ(j["cohomology"].size(), 7u * 5u);
    for (const auto& row : j["cohomology"]) {
        if (row["ghost"] == 3) {
            EXPECT_EQ(row["H"], 0);
        }
        if (row["ghost"] == 0 && row["weight"] == 2) {
            EXPECT_EQ(row["H"], 2);
        }
    }
}

TEST(Cli, NegativeGhostRangeAndAuxCompare) {
    Outcome o = invoke({"aux", "compare", "--ghost=-2..3", "--weight-max", "3", "--format", "csv"});
    EXPECT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.out.rfind("ghost,weight,dim,ker,im,H\n-2,0,", 0), 0u);
}

TEST(Cli, ReportsAreDeterministicAndWrittenToFile) {
    auto path = std::filesystem::temp_directory_path() / "brstlab_test_report.json";
    Outcome a = invoke({"report", "--weight-max", "3", "--ghost", "0..4", "--out", path.string()});
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_TRUE(a.out.empty());
    std::ifstream in(path);
    std::stringstream first;
    first << in.rdbuf();
    Outcome b = invoke({"report", "--weight-max", "3", "--ghost", "0..4"});
    EXPECT_EQ(first.str(), b.out);
}

TEST(Cli, GlaVerifyExitCodesFollowTheChecks) {
    Outcome small = invoke({"gla", "verify", "--weight-max", "3", "--format", "text"});
    EXPECT_EQ(small.code, 0) << small.out << small.err;
    Outcome o = invoke({"gla", "verify", "--weight-max", "4", "--format", "text"});
    EXPECT_EQ(o.code, 1);
    EXPECT_NE(o.err.find("FAIL group-isomorphisms: H2 = H0+(h,Z2) + H1+(h,Z0)"), std::string::npos) << o.err;
    EXPECT_NE(o.out.find("PASS h2-corrected"), std::string::npos);

    std::string alpha = temp_file("alpha.bv", "model \"a\" action { S0 = M4^2; } params { alpha=[2,1,1]; }");
    EXPECT_EQ(invoke({"verify", "cme", "--model", alpha}).code, 0);
    EXPECT_EQ(invoke({"gla", "verify", "--model", alpha}).code, 2);
}

TEST(Cli, UsageAndParseErrorsExitTwo) {
    EXPECT_EQ(invoke({"verify", "brst", "--bogus"}).code, 2);
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"cohomology", "--ghost", "3..1"}).code, 2);
    EXPECT_EQ(invoke({"cohomology", "--format", "xml"}).code, 2);
    EXPECT_EQ(invoke({"verify", "cme", "--model", "/nonexistent/model.bv"}).code, 2);
    std::string syn = temp_file("syntax.bv", "model \"s\" action { S0 = M1 +; }");
    Outcome s = invoke({"verify", "cme", "--model", syn});
    EXPECT_EQ(s.code, 2);
    EXPECT_NE(s.err.find("syntax error at 1:"), std::string::npos);
    std::string sem = temp_file("ghost.bv", "model \"g\" action { S0 = C1*M1; }");
    EXPECT_EQ(invoke({"verify", "cme", "--model", sem}).code, 2);
    EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, GlaCompareRunsOnSmallBounds) {
    Outcome o = invoke({"gla", "compare", "--weight-max", "3", "--format", "text"});
    EXPECT_EQ(o.code, 0) << o.out << o.err;
    EXPECT_NE(o.out.find("PASS total-compare: k=2 w=2: dim 7"), std::string::npos);
}
