#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "berezin/cli.hpp"

using namespace berezin;
using namespace berezin::cli;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;
};

Outcome run_in_process(const RunConfig& cfg) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(cfg, out, err);
    return {code, out.str(), err.str()};
}

// Runs the installed binary; stderr is discarded.
Outcome run_binary(const std::string& args) {
    const std::string cmd = std::string(BEREZIN_CLI_PATH) + " " + args + " 2>/dev/null";
    Outcome o;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return o;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) o.out.append(buf.data(), got);
    const int status = pclose(pipe);
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return o;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

} // namespace

TEST(Commands, NamesRoundTrip) {
    for (const auto& [name, cmd] : kCommands) {
        EXPECT_EQ(parse_command(name), cmd);
        EXPECT_EQ(command_name(cmd), name);
    }
    EXPECT_THROW(parse_command("bogus"), DomainError);
    EXPECT_THROW(parse_symbol("bogus"), DomainError);
}

TEST(Rows, PassRule) {
    EXPECT_TRUE(make_row("", 1.0 + 1e-9, 1.0, 1e-8).pass);
    EXPECT_FALSE(make_row("", 1.0 + 1e-7, 1.0, 1e-8).pass);
    EXPECT_TRUE(make_row("", 1e-9, 0.0, 1e-8).pass);
    EXPECT_FALSE(make_row("", std::nan(""), 1.0, 1e-8).pass);
    const ReportRow r = make_row("", 2.0, 0.0, 1.0);
    EXPECT_EQ(r.rel_err, 2.0 / 1e-300);
}

TEST(Csv, LambdaSchemaHeader) {
    RunConfig cfg;
    cfg.command = Command::tabulate_multiplier;
    cfg.lambda_grid = {0.5};
    const Outcome o = run_in_process(cfg);
    EXPECT_EQ(o.code, kExitOk);
    EXPECT_EQ(first_line(o.out), "lambda,f_numeric,f_closed,abs_err,rel_err,status");
}

TEST(Csv, GenericSchemaHeader) {
    RunConfig cfg;
    cfg.command = Command::verify_geometry;
    cfg.draws = 2;
    const Outcome o = run_in_process(cfg);
    EXPECT_EQ(o.code, kExitOk);
    EXPECT_EQ(first_line(o.out), "inputs,computed,reference,abs_err,rel_err,status");
}

TEST(VerifyPeetre, ReferenceAtZero) {
    RunConfig cfg;
    cfg.command = Command::verify_peetre;
    cfg.params = {2, 2.0, 0};
    cfg.lambda_grid = {0.0, 1.0, 2.0};
    const Outcome o = run_in_process(cfg);
    EXPECT_EQ(o.code, kExitOk);
    std::istringstream is(o.out);
    std::string line;
    std::getline(is, line);
    std::getline(is, line);
    double lam = -1.0;
    double computed = 0.0;
    double reference = 0.0;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf", &lam, &computed, &reference), 3);
    EXPECT_EQ(lam, 0.0);
    EXPECT_NEAR(reference, 2.0 / 3.0, 1e-14);
    EXPECT_NEAR(computed, 2.0 / 3.0, 1e-12);
    EXPECT_NE(line.find(",pass"), std::string::npos);
}

TEST(VerifyPeetre, RequiresLevelZero) {
    RunConfig cfg;
    cfg.command = Command::verify_peetre;
    cfg.params = {1, 3.0, 1};
    EXPECT_EQ(run_in_process(cfg).code, kExitInvalidParameters);
}

TEST(ExitCodes, InvalidParameters) {
    RunConfig cfg;
    cfg.params = {2, 2.0, 1};
    const Outcome o = run_in_process(cfg);
    EXPECT_EQ(o.code, kExitInvalidParameters);
    EXPECT_NE(o.err.find("m < nu - n/2"), std::string::npos);
    EXPECT_TRUE(o.out.empty());
    cfg = {};
    cfg.lambda_grid = {-1.0};
    EXPECT_EQ(run_in_process(cfg).code, kExitInvalidParameters);
}

TEST(ExitCodes, ToleranceFailure) {
    RunConfig cfg;
    cfg.command = Command::verify_multiplier;
    cfg.lambda_grid = {1.0};
    cfg.tol = 1e-300;
    const Outcome o = run_in_process(cfg);
    EXPECT_EQ(o.code, kExitToleranceFailure);
    EXPECT_NE(o.out.find(",fail"), std::string::npos);
}

TEST(ExitCodes, NumericFailure) {
    RunConfig cfg;
    cfg.command = Command::verify_multiplier;
    cfg.lambda_grid = {1.0};
    cfg.quad.tol = 1e-300;
    EXPECT_EQ(run_in_process(cfg).code, kExitNumericFailure);
}

TEST(Determinism, IdenticalOutputAcrossRuns) {
    RunConfig cfg;
    cfg.command = Command::verify_identities;
    cfg.draws = 5;
    const Outcome a = run_in_process(cfg);
    const Outcome b = run_in_process(cfg);
    EXPECT_EQ(a.code, kExitOk);
    EXPECT_EQ(a.out, b.out);
}

TEST(Commands, DefaultsPass) {
    for (Command c : {Command::verify_multiplier, Command::tabulate_multiplier, Command::tabulate_kernel,
                      Command::verify_eigen, Command::apply}) {
        RunConfig cfg;
        cfg.command = c;
        cfg.draws = 3;
        const Outcome o = run_in_process(cfg);
        EXPECT_EQ(o.code, kExitOk) << command_name(c) << '\n' << o.err;
    }
}

TEST(Commands, VerifyEigenNeedsDiscAndApplyAcceptsPoint) {
    RunConfig cfg;
    cfg.command = Command::verify_eigen;
    cfg.params = {2, 3.0, 0};
    EXPECT_EQ(run_in_process(cfg).code, kExitInvalidParameters);
    cfg = {};
    cfg.command = Command::apply;
    cfg.symbol = Symbol::spherical;
    cfg.point = {0.2, -0.1};
    EXPECT_EQ(run_in_process(cfg).code, kExitOk);
    cfg.point = {0.2, -0.1, 0.3, 0.0};
    EXPECT_EQ(run_in_process(cfg).code, kExitInvalidParameters);
}

TEST(Binary, HeaderAndExitCodes) {
    const Outcome ok = run_binary("verify-peetre --n 2 --nu 2 --m 0 --lambda-grid 0,1,2");
    EXPECT_EQ(ok.code, 0);
    EXPECT_EQ(first_line(ok.out), "lambda,f_numeric,f_closed,abs_err,rel_err,status");
    EXPECT_EQ(ok.out, run_binary("verify-peetre --n 2 --nu 2 --m 0 --lambda-grid 0,1,2").out);
    EXPECT_EQ(run_binary("verify-multiplier --n 2 --nu 2 --m 1").code, 2);
    EXPECT_EQ(run_binary("no-such-command").code, 2);
    EXPECT_EQ(run_binary("verify-multiplier --nu abc").code, 2);
    EXPECT_EQ(run_binary("verify-multiplier --lambda-grid 1 --tol 1e-300").code, 1);
}
