#include "evokernel/tu_dataset.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace evk;
using namespace evk::testing;

namespace {

struct CliResult {
    int code = -1;
    std::string err;
};

std::filesystem::path fixture_dir() {
    static const auto dir = [] {
        const auto ds = triangle_star_dataset();
        const auto d = scratch_dir("cli");
        write_tu_dataset(d / "data", "TRISTAR", ds.graphs, {0, 0, 0, 1, 1, 1});
        return d;
    }();
    return dir;
}

CliResult cli(const std::string& args) {
    const auto err_path = fixture_dir() / "stderr.txt";
    const std::string cmd = std::string(EVK_CLI_PATH) + " " + args + " >" +
                            (fixture_dir() / "stdout.txt").string() + " 2>" + err_path.string();
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(err_path);
    std::stringstream ss;
    ss << in.rdbuf();
    r.err = ss.str();
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string common() {
    return "--dataset " + (fixture_dir() / "data").string() + " --name TRISTAR --folds 3";
}

} // namespace

TEST(Cli, RunWritesReport) {
    const auto out = fixture_dir() / "report.json";
    const auto dist = fixture_dir() / "d.csv";
    const auto r = cli("run " + common() + " --out " + out.string() + " --distance-csv " + dist.string());
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(slurp(out));
    EXPECT_EQ(j.at("mean_accuracy"), 1.0);
    EXPECT_EQ(j.at("config").at("folds"), 3);
    EXPECT_EQ(slurp(dist).rfind("id,1,2,3,4,5,6\n", 0), 0u);
    EXPECT_NE(slurp(fixture_dir() / "stdout.txt").find("mean (std)"), std::string::npos);
}

TEST(Cli, RunIsByteIdentical) {
    const auto a = fixture_dir() / "a.json";
    const auto b = fixture_dir() / "b.json";
    ASSERT_EQ(cli("run " + common() + " --seed 5 --out " + a.string()).code, 0);
    ASSERT_EQ(cli("run " + common() + " --seed 5 --out " + b.string()).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Cli, Sweep) {
    const auto out = fixture_dir() / "curve.csv";
    const auto r = cli("sweep " + common() + " --lengths 0.2,0.4 --out " + out.string());
    ASSERT_EQ(r.code, 0) << r.err;
    const auto text = slurp(out);
    EXPECT_EQ(text.rfind("time_length,mean_accuracy,std_accuracy\n", 0), 0u);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
}

TEST(Cli, EpisodeAndWarp) {
    const auto ep = fixture_dir() / "ep.jsonl";
    ASSERT_EQ(cli("episode " + common() + " --graph 4 --out " + ep.string()).code, 0);
    const auto text = slurp(ep);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 11);
    const auto w = fixture_dir() / "w.json";
    ASSERT_EQ(cli("warp " + common() + " --pair 0,4 --out " + w.string()).code, 0);
    const auto j = nlohmann::json::parse(slurp(w));
    EXPECT_EQ(j.at("n"), 11);
    EXPECT_EQ(j.at("path")[0], nlohmann::json::parse("[0,0]"));
}

TEST(Cli, FailuresAreStageTagged) {
    auto r = cli("run --dataset " + (fixture_dir() / "missing").string() + " --name TRISTAR");
    EXPECT_NE(r.code, 0);
    EXPECT_NE(r.err.find("[load]"), std::string::npos) << r.err;
    r = cli("run " + common() + " --psd flip");
    EXPECT_NE(r.code, 0);
    r = cli("run --dataset " + (fixture_dir() / "data").string() + " --name TRISTAR");
    EXPECT_NE(r.code, 0);
    EXPECT_NE(r.err.find("[folds]"), std::string::npos) << r.err;
    r = cli("episode " + common() + " --graph 99 --out " + (fixture_dir() / "x").string());
    EXPECT_NE(r.code, 0);
}
