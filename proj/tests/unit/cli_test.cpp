#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "csv_io.hpp"
#include "run_config.hpp"

using namespace triadic;
using namespace triadic::cli;
using nlohmann::json;

namespace {

RunConfig json_config(Command command) {
    RunConfig c;
    c.command = command;
    c.output_format = OutputFormat::Json;
    return c;
}

CommandResult test_on(const std::string& csv, RunConfig c = json_config(Command::Test)) {
    std::istringstream in(csv);
    try {
        return cmd_test(c, in);
    } catch (const Error& e) {
        return CommandResult{exit_code_for(e.kind()), "", e.what()};
    }
}

ErrorKind parse_kind(const std::string& csv) {
    std::istringstream in(csv);
    try {
        read_pvalue_csv(in);
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InternalInconsistency;
}

} // namespace

TEST(CsvInput, ThreeRowExample) {
    const auto r = test_on("index,p_h\n1,0.001\n2,0.5\n3,0.999\n");
    ASSERT_EQ(r.exit_code, 0) << r.error;
    const json j = json::parse(r.output);
    EXPECT_EQ(j["decisions"][0]["decision"], "D2");
    EXPECT_EQ(j["decisions"][1]["decision"], "D3");
    EXPECT_EQ(j["decisions"][2]["decision"], "D1");
    EXPECT_EQ(j["sets"]["u_bar"], json::array({1}));
    EXPECT_EQ(j["sets"]["l"], json::array({3}));
    EXPECT_EQ(j["sets"]["g"], json::array({2}));
    EXPECT_DOUBLE_EQ(j["thresholds"]["lower"].get<double>(), 0.05 / 3);
    EXPECT_TRUE(j["complementary"].get<bool>());
}

TEST(CsvInput, ParseErrors) {
    EXPECT_EQ(parse_kind(""), ErrorKind::ParseError);
    EXPECT_EQ(parse_kind("index,p_h\n"), ErrorKind::ParseError);
    EXPECT_EQ(parse_kind("index,p_h\n1,1.2\n"), ErrorKind::ParseError);
    EXPECT_EQ(parse_kind("index,p_h\n1,abc\n"), ErrorKind::ParseError);
    EXPECT_EQ(parse_kind("index,p_h\n1,0.1\n1,0.2\n"), ErrorKind::ParseError);
    EXPECT_EQ(parse_kind("index,p_h\n1,0.1,0.3\n"), ErrorKind::ParseError);
    EXPECT_EQ(parse_kind("p_h\n0.1\n"), ErrorKind::ParseError);
    EXPECT_EQ(test_on("").exit_code, kExitParse);
}

TEST(CsvInput, ErrorNamesLine) {
    std::istringstream in("index,p_h\n1,0.1\n\n2,1.5\n");
    try {
        read_pvalue_csv(in);
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
    }
}

TEST(CsvInput, ColumnOrderAndExtras) {
    std::istringstream in("\xEF\xBB\xBFp_k,note,index,p_h\r\n0.7,x,5,0.3\r\n");
    const PValueTable t = read_pvalue_csv(in);
    ASSERT_EQ(t.pairs.size(), 1u);
    EXPECT_EQ(t.labels[0], 5u);
    EXPECT_EQ(t.pairs[0].p_h(), 0.3);
    EXPECT_EQ(t.pairs[0].p_k(), 0.7);
}

TEST(CsvInput, NonComplementaryRowsAreListed) {
    const std::string csv = "index,p_h,p_k\n1,0.5,0.5\n2,0.001,0.001\n";
    const auto refused = test_on(csv);
    EXPECT_EQ(refused.exit_code, kExitPrecondition);
    EXPECT_NE(refused.error.find("index 2"), std::string::npos) << refused.error;

    RunConfig c = json_config(Command::Test);
    c.allow_noncomplementary = true;
    const auto forced = test_on("index,p_h,p_k\n1,0.5,0.001\n", c);
    ASSERT_EQ(forced.exit_code, 0) << forced.error;
    EXPECT_EQ(json::parse(forced.output)["decisions"][0]["decision"], "D1");
}

TEST(CsvOutput, RoundTrip) {
    RunConfig c;
    c.command = Command::Test;
    c.output_format = OutputFormat::Csv;
    const auto r = test_on("index,p_h\n1,0.1\n2,0.30000000000000004\n", c);
    ASSERT_EQ(r.exit_code, 0) << r.error;
    std::istringstream again(r.output);
    const PValueTable t = read_pvalue_csv(again);
    EXPECT_EQ(t.pairs[0].p_h(), 0.1);
    EXPECT_EQ(t.pairs[1].p_h(), 0.30000000000000004);
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}

TEST(RunConfig, SettingsAndValidation) {
    RunConfig c;
    apply_setting(c, "alpha", "0.1");
    apply_setting(c, "theta", "0,0.5,1");
    apply_setting(c, "loss", "0.7,0.3,0.7,0.3");
    EXPECT_EQ(c.alpha, 0.1);
    EXPECT_EQ(c.theta, (std::vector<double>{0.0, 0.5, 1.0}));
    EXPECT_TRUE(c.loss.identity_mode());
    EXPECT_THROW(apply_setting(c, "colour", "red"), Error);
    EXPECT_THROW(apply_setting(c, "alpha", "x"), Error);
    c.alpha = 1.0;
    EXPECT_THROW(c.validate(), Error);
}

TEST(RunConfig, ConfigFileText) {
    const auto kv = parse_config_text("# comment\nalpha = 0.01\n\n seed=7 # trailing\n");
    EXPECT_EQ(kv.at("alpha"), "0.01");
    EXPECT_EQ(kv.at("seed"), "7");
    EXPECT_THROW(parse_config_text("alpha 0.01\n"), Error);
}

TEST(RunConfig, SeedPrecedence) {
    RunConfig c;
    ::unsetenv("TRIADIC_SEED");
    EXPECT_EQ(effective_seed(c), 0u);
    ::setenv("TRIADIC_SEED", "42", 1);
    EXPECT_EQ(effective_seed(c), 42u);
    c.seed = 5;
    EXPECT_EQ(effective_seed(c), 5u);
    ::setenv("TRIADIC_SEED", "nope", 1);
    c.seed.reset();
    EXPECT_THROW(effective_seed(c), Error);
    ::unsetenv("TRIADIC_SEED");
}

TEST(Simulate, JsonIsDeterministic) {
    RunConfig c = json_config(Command::Simulate);
    c.seed = 9;
    c.replicates = 3000;
    c.theta = {0.0, 0.2, -0.1};
    c.n = 10;
    const auto a = cmd_simulate(c);
    c.workers = 3;
    const auto b = cmd_simulate(c);
    ASSERT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.output, b.output);
    const json j = json::parse(a.output);
    EXPECT_EQ(j["report"]["m"], 3);
    EXPECT_TRUE(j["report"]["decomposition_exact"].get<bool>());
}

TEST(Simulate, NestedModel) {
    RunConfig c = json_config(Command::Simulate);
    c.model = "nested";
    c.procedure = ProcedureKind::NestedClosure;
    c.replicates = 2000;
    c.theta1 = 0;
    c.theta2 = 1;
    const json j = json::parse(cmd_simulate(c).output);
    EXPECT_EQ(j["model"]["kind"], "nested");
    EXPECT_TRUE(j["fwer_band"]["within"].get<bool>());
}

TEST(ClosureCheck, ExitCodes) {
    RunConfig c = json_config(Command::ClosureCheck);
    c.m = 3;
    c.trials = 500;
    const auto ok = run_command(c);
    ASSERT_EQ(ok.exit_code, 0) << ok.error;
    EXPECT_EQ(json::parse(ok.output)["mismatches"], 0);
    c.nested = true;
    EXPECT_EQ(run_command(c).exit_code, kExitPrecondition);
}

TEST(Counterexample, JsonReport) {
    RunConfig c = json_config(Command::Counterexample);
    const auto r = run_command(c);
    ASSERT_EQ(r.exit_code, 0) << r.error;
    const json j = json::parse(r.output);
    EXPECT_NEAR(j["closure_thresholds"]["reject_k1"].get<double>(), 1.6448536269514727, 1e-12);
    EXPECT_EQ(j["analytic_intervals"].size(), 2u);
    EXPECT_GT(j["disagreeing_points"].get<int>(), 0);
    c.theta2 = c.theta1;
    EXPECT_EQ(run_command(c).exit_code, kExitPrecondition);
}

TEST(Graph, TinyInputs) {
    RunConfig c = json_config(Command::Graph);
    std::istringstream one("x\n1\n2\n3\n4\n5\n");
    const json j = json::parse(cmd_graph(c, one).output);
    EXPECT_EQ(j["m"], 0);
    EXPECT_TRUE(j["thresholds"].is_null());
    EXPECT_TRUE(j["significant_edges"].empty());
}

TEST(Graph, DuplicatedColumnIsAnEdge) {
    RunConfig c = json_config(Command::Graph);
    std::istringstream in("a,b,c\n1,1,3\n2,2,-1\n3,3,4\n4,4,1\n5,5,-5\n6,6,9\n");
    const auto r = cmd_graph(c, in);
    ASSERT_EQ(r.exit_code, 0) << r.error;
    const json j = json::parse(r.output);
    EXPECT_EQ(j["m"], 3);
    ASSERT_EQ(j["significant_edges"].size(), 1u);
    EXPECT_EQ(j["significant_edges"][0]["name_i"], "a");
    EXPECT_EQ(j["significant_edges"][0]["name_j"], "b");
    EXPECT_LT(j["significant_edges"][0]["p_h"].get<double>(), 1e-10);
    const auto& counts = j["counts"];
    EXPECT_EQ(counts["significant_edges"].get<int>() + counts["significant_non_edges"].get<int>()
                  + counts["uncertain"].get<int>(),
              3);
}

TEST(Graph, ConstantColumn) {
    RunConfig c = json_config(Command::Graph);
    c.input_path = "/nonexistent/file.csv";
    EXPECT_EQ(run_command(c).exit_code, kExitParse);
    std::istringstream in("a,b\n1,2\n1,3\n1,4\n1,5\n");
    try {
        cmd_graph(c, in);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateColumn);
    }
}
