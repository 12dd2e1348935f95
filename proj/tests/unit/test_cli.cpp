#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "app.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "enumeration.hpp"
#include "output.hpp"
#include "presets.hpp"
#include "rank_enumeration.hpp"
#include "srlnc/error.hpp"

using namespace srlnc;
using namespace srlnc::cli;

namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "srlnc");
    std::ostringstream out, err;
    const int code = run_app(args, out, err);
    return {code, out.str(), err.str()};
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string without_version(const std::string& text) {
    std::istringstream in(text);
    std::string line, kept;
    while (std::getline(in, line)) {
        if (line.rfind("# version:", 0) == 0) continue;
        kept += line + '\n';
    }
    return kept;
}

std::vector<std::string> csv_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    }
    return lines;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "srlnc_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

void check_golden(const std::string& name, const std::vector<std::string>& args) {
    const CliRun r = run(args);
    ASSERT_EQ(r.code, 0) << r.err;
    const fs::path path = fs::path(SRLNC_GOLDEN_DIR) / name;
    if (std::getenv("SRLNC_UPDATE_GOLDEN")) {
        std::ofstream(path, std::ios::binary) << without_version(r.out);
        GTEST_SKIP() << "rewrote " << path;
    }
    ASSERT_TRUE(fs::exists(path)) << path;
    EXPECT_EQ(without_version(r.out), read_file(path));
}

}  // namespace

TEST(Config, ParsesSectionsCommentsAndUnderscores) {
    const auto s = parse_config_text("# comment\n[code]\nK = 7\nq=16 ; trailing\n\n[channel]\neps_b = 0.05\n", "cfg");
    EXPECT_EQ(s.at("K"), "7");
    EXPECT_EQ(s.at("q"), "16");
    EXPECT_EQ(s.at("eps-b"), "0.05");
}

TEST(Config, ReportsLocationOfErrors) {
    try {
        (void)parse_config_text("K = 3\nbogus = 1\n", "exp.cfg");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("exp.cfg:2"), std::string::npos);
    }
    EXPECT_THROW((void)parse_config_text("K 3\n", "x"), ConfigError);
    EXPECT_THROW((void)parse_config_text("[code\n", "x"), ConfigError);
    EXPECT_THROW((void)read_config_file("/nonexistent/exp.cfg"), ConfigError);
}

TEST(Config, NumbersAndGrids) {
    EXPECT_EQ(parse_real("p", "1/16"), 0.0625);
    EXPECT_EQ(parse_real("p", "0.7"), 0.7);
    EXPECT_THROW((void)parse_real("p", "abc"), ConfigError);
    EXPECT_THROW((void)parse_real("p", "1/0"), ConfigError);
    EXPECT_EQ(parse_integer("K", "20"), 20);
    EXPECT_THROW((void)parse_integer("K", "2.5"), ConfigError);
    EXPECT_EQ(parse_real_grid("p-grid", "0.5:0.6:0.05"), (std::vector<double>{0.5, 0.55, 0.6}));
    EXPECT_EQ(parse_real_grid("p-grid", "0.5,0.7"), (std::vector<double>{0.5, 0.7}));
    EXPECT_THROW((void)parse_real_grid("p-grid", "0.7,0.5"), ConfigError);
    EXPECT_THROW((void)parse_real_grid("p-grid", "0.5,0.5"), ConfigError);
    EXPECT_THROW((void)parse_real_grid("p-grid", "0.5:0.4:0.1"), ConfigError);
    EXPECT_EQ(parse_integer_grid("Nhat-grid", "6:10:2"), (std::vector<int>{6, 8, 10}));
}

TEST(Config, LayersAndDefaults) {
    const auto cfg = build_config(Command::chain, {{{"K", "5"}, {"q", "16"}}, {{"q", "2"}}});
    EXPECT_EQ(cfg.code.K, 5);
    EXPECT_EQ(cfg.code.q, 2u);
    EXPECT_EQ(cfg.p_grid, (std::vector<double>{0.5}));
    EXPECT_EQ(cfg.N_grid, (std::vector<int>{10}));
    EXPECT_THROW((void)build_config(Command::chain, {{{"K", "5"}, {"Nhat", "5"}}}), ConfigError);
    EXPECT_THROW((void)build_config(Command::chain, {{{"eps-b", "0.3"}, {"eps-e", "0.2"}}}), ConfigError);
    EXPECT_THROW((void)build_config(Command::chain, {{{"q", "6"}}}), ConfigError);
    EXPECT_THROW((void)build_config(Command::chain, {{{"p", "0.3"}}}), ConfigError);
    EXPECT_THROW((void)build_config(Command::simulate, {{{"trials", "0"}}}), ConfigError);
    EXPECT_THROW((void)build_config(Command::chain, {{{"mode", "exact"}}}), ConfigError);
}

TEST(Enumeration, DynamicProgramMatchesBruteForce) {
    for (int rows : {2, 3, 4}) {
        for (double p : {0.5, 0.6, 0.8}) {
            const auto probs = exact_full_rank_probs(rows, rows, p, 2);
            for (int c = 0; c <= rows; ++c) {
                EXPECT_NEAR(probs[static_cast<std::size_t>(c)], oracle::gf2_full_rank_enumerated(rows, c, p), 1e-12);
            }
        }
    }
    EXPECT_THROW((void)exact_full_rank_probs(7, 2, 0.6, 2), ConfigError);
}

TEST(Output, CsvAndJson) {
    Table t;
    t.columns = {"a", "b", "c"};
    t.meta = {{"command", "srlnc x"}};
    t.add_row({std::int64_t{1}, 0.25, std::string("x,y")});
    t.add_row({std::monostate{}, 1e-20, std::string("z")});
    EXPECT_THROW(t.add_row({std::int64_t{1}}), std::logic_error);
    std::ostringstream csv;
    write_csv(csv, t);
    EXPECT_EQ(csv.str(), "# command: srlnc x\na,b,c\n1,0.25,\"x,y\"\n,1e-20,z\n");
    std::ostringstream json;
    write_json(json, t);
    EXPECT_NE(json.str().find("\"a\": null"), std::string::npos);
    EXPECT_NE(json.str().find("\"command\": \"srlnc x\""), std::string::npos);
    EXPECT_EQ(format_real(0.1), "0.1");
}

TEST(Provenance, QuotesArguments) {
    EXPECT_EQ(provenance_command({"/usr/bin/srlnc", "chain", "--K", "3"}), "srlnc chain --K 3");
    EXPECT_EQ(provenance_command({"srlnc", "--out", "a b", "it's"}), "srlnc --out 'a b' 'it'\\''s'");
}

TEST(Cli, RankClassicTable) {
    const CliRun r = run({"rank", "--K", "20", "--q", "2", "--p", "0.5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto lines = csv_lines(r.out);
    ASSERT_EQ(lines.size(), 21u);
    EXPECT_EQ(lines[0], "K,q,p,reading,rows,t,W_t,R");
    EXPECT_NE(lines[20].find(",19,0.5,"), std::string::npos) << lines[20];
    EXPECT_EQ(run({"rank", "--K", "20", "--q", "16", "--p", "0.0625"}).code, 0);
}

TEST(Cli, RankWithOracleAddsColumns) {
    const CliRun r = run({"rank", "--K", "3", "--q", "2", "--p", "0.6", "--with-oracle"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(csv_lines(r.out)[0], "K,q,p,reading,rows,t,W_t,R,W_exact,R_exact");
}

TEST(Cli, ChainRowEqualsLibrary) {
    const CliRun r = run({"chain", "--K", "20", "--q", "2", "--p", "0.6", "--Nhat", "40", "--eps-b", "0.01",
                       "--eps-e", "0.26", "--eps-k", "0.9"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto lines = csv_lines(r.out);
    ASSERT_EQ(lines.size(), 2u);
    const auto m = evaluate_chain({20, 2, 0.6, 40}, {0.01, 0.26, 0.9});
    EXPECT_NE(lines[1].find("," + format_real(m.intercept) + "," + format_real(m.delivery) + ","), std::string::npos)
        << lines[1];
}

TEST(Cli, OptimizeRowEqualsSolver) {
    const CliRun r = run({"optimize", "--K", "5", "--q", "2", "--Nhat", "17", "--eps-b", "0.05", "--eps-e", "0.2",
                       "--Dhat", "0.99"});
    ASSERT_EQ(r.code, 0) << r.err;
    ImConfig cfg;
    cfg.code = {5, 2, 0.5, 17};
    cfg.chan = {0.05, 0.2, 1.0};
    cfg.D_hat = 0.99;
    const auto sol = solve_im(cfg);
    EXPECT_NE(r.out.find(",interior-root," + format_real(sol.p_star) + ","), std::string::npos) << r.out;
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"chain", "--K", "3", "--p", "0.3"}).code, exit_config);
    EXPECT_EQ(run({"chain", "--bogus", "1"}).code, exit_config);
    EXPECT_EQ(run({}).code, exit_config);
    EXPECT_EQ(run({"--help"}).code, exit_ok);
    const CliRun infeasible = run({"optimize", "--K", "5", "--Nhat", "6", "--eps-b", "0.05", "--eps-e", "0.2", "--Dhat", "0.999"});
    EXPECT_EQ(infeasible.code, exit_infeasible);
    EXPECT_NE(infeasible.out.find(",infeasible,"), std::string::npos);
    EXPECT_EQ(run({"chain", "--K", "3", "--out", "/nonexistent-dir/x.csv"}).code, exit_failure);
}

TEST(Cli, ConfigFileUnderFlags) {
    const auto path = scratch("exp.cfg");
    std::ofstream(path) << "[code]\nK = 4\np = 0.7\nNhat = 9\n[channel]\neps_b = 0.05\neps_e = 0.2\n";
    const CliRun from_file = run({"chain", "--config", path.string()});
    const CliRun direct = run({"chain", "--K", "4", "--p", "0.7", "--Nhat", "9", "--eps-b", "0.05", "--eps-e", "0.2"});
    ASSERT_EQ(from_file.code, 0) << from_file.err;
    EXPECT_EQ(csv_lines(from_file.out), csv_lines(direct.out));
    const CliRun overridden = run({"chain", "--config", path.string(), "--K", "3"});
    EXPECT_NE(csv_lines(overridden.out)[1].rfind("3,", 0), std::string::npos);
}

TEST(Cli, JsonMirror) {
    const CliRun r = run({"chain", "--K", "3", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"columns\""), std::string::npos);
    EXPECT_NE(r.out.find("\"intercept\""), std::string::npos);
}

TEST(Cli, SimulateIsDeterministic) {
    const std::vector<std::string> args{"simulate", "--K", "5", "--p", "0.7", "--Nhat", "12", "--trials", "3000", "--seed", "7"};
    const CliRun a = run(args);
    auto more_threads = args;
    more_threads.insert(more_threads.end(), {"--threads", "3"});
    const CliRun b = run(more_threads);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(csv_lines(a.out), csv_lines(b.out));
}

TEST(Cli, GoldenRankTable) {
    check_golden("rank_K3_q2_p06.csv", {"rank", "--K", "3", "--q", "2", "--p", "0.6", "--with-oracle"});
}

TEST(Cli, GoldenFigurePreset) {
    check_golden("sweep_1a_tiny.csv", {"sweep", "--figure", "1a", "--K", "4", "--Nhat", "8", "--eps-b", "0.05",
                                       "--eps-k-set", "0.9,1", "--p-grid", "0.5,0.7", "--trials", "500", "--seed", "3"});
    check_golden("sweep_2a_tiny.csv", {"sweep", "--figure", "2a", "--K", "5", "--q", "2", "--eps-k", "1",
                                       "--Nhat-grid", "6,12,17", "--trials", "300", "--seed", "3"});
}

TEST(Cli, ProvenanceReproducesFile) {
    const auto out = scratch("prov.csv");
    fs::remove(out);
    const CliRun first = run({"simulate", "--K", "4", "--p", "0.7", "--Nhat", "10", "--eps-k", "0.8", "--trials",
                           "2000", "--seed", "11", "--out", out.string()});
    ASSERT_EQ(first.code, 0) << first.err;
    const std::string original = read_file(out);
    const std::string tag = "# command: ";
    const auto at = original.find(tag);
    ASSERT_NE(at, std::string::npos);
    std::string command = original.substr(at + tag.size(), original.find('\n', at) - at - tag.size());
    ASSERT_EQ(command.rfind("srlnc ", 0), 0u);
    command.replace(0, 5, std::string("'") + SRLNC_BIN + "'");
    fs::remove(out);
    ASSERT_EQ(std::system(command.c_str()), 0) << command;
    EXPECT_EQ(read_file(out), original);
}

TEST(Presets, FigureShapes) {
    ExperimentConfig cfg;
    cfg.figure = "1a";
    auto plan = expand_figure(cfg);
    EXPECT_EQ(plan.points.size(), 3u * 6u * 9u);
    cfg.figure = "1b";
    plan = expand_figure(cfg);
    EXPECT_EQ(plan.points.size(), 3u * 6u * 18u);
    cfg.figure = "2b";
    plan = expand_figure(cfg);
    ASSERT_EQ(plan.curves.size(), 2u * 2u * 4u);
    for (const auto& c : plan.curves) EXPECT_NEAR(c.im.chan.eps_E - c.im.chan.eps_B, 0.25, 1e-12);
    cfg.figure = "3";
    EXPECT_THROW((void)expand_figure(cfg), ConfigError);
    EXPECT_EQ(default_trials("1a"), 20000);
    EXPECT_EQ(default_trials("2c"), 10000);
}
