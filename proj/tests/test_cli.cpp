#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <map>

#include "ctxbench/csv.hpp"
#include "test_support.hpp"

using namespace ctxbench;

namespace {

std::string cli_binary() {
    const char* env = std::getenv("CTXBENCH_BIN");
    REQUIRE_MESSAGE(env != nullptr, "CTXBENCH_BIN must point at the ctxbench binary");
    return env;
}

struct CliResult {
    int exit_code;
    std::string out;  // stdout + stderr
};

CliResult run_cli(const std::string& args, const std::filesystem::path& scratch) {
    auto out_file = scratch / "cli_out.txt";
    std::string cmd = cli_binary() + " " + args + " > " + out_file.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = test::read_file(out_file);
    return r;
}

std::string tiny_world_cfg() {
    return "seed = 5\n"
           "users = 2\n"
           "labels = walk,sit,eat\n"
           "sessions_per_user_per_label = 2\n"
           "session_ms_min = 8000\n"
           "session_ms_max = 14000\n"
           "apps = 10\n"
           "bt = 4\n"
           "proximity = 4\n";
}

}  // namespace

TEST_CASE("help output enumerates every subcommand and flag") {
    test::TempDir tmp("cli_help");
    auto top = run_cli("--help", tmp.path);
    CHECK(top.exit_code == 0);
    for (const char* sub :
         {"synth", "ingest", "balance", "reduce", "train", "predict", "bench", "report"})
        CHECK(top.out.find(sub) != std::string::npos);
    CHECK(top.out.find("--seed") != std::string::npos);
    CHECK(top.out.find("--threads") != std::string::npos);

    const std::map<std::string, std::vector<std::string>> flags = {
        {"synth", {"--config", "--out"}},
        {"ingest", {"--logs", "--enrich", "--out"}},
        {"balance", {"--in", "--k", "--out"}},
        {"reduce", {"--in", "--kind", "--d", "--model", "--out"}},
        {"train", {"--in", "--kind", "--model", "--k", "--lambda", "--epochs", "--depth"}},
        {"predict", {"--model", "--in", "--out"}},
        {"bench", {"--exp", "--config", "--out"}},
        {"report", {"--in"}},
    };
    for (const auto& [sub, expected] : flags) {
        auto help = run_cli(sub + " --help", tmp.path);
        CHECK(help.exit_code == 0);
        for (const auto& flag : expected) {
            CAPTURE(sub);
            CAPTURE(flag);
            CHECK(help.out.find(flag) != std::string::npos);
        }
    }
}

TEST_CASE("usage errors exit 2: bad flags, missing seed, d past the width") {
    test::TempDir tmp("cli_usage");
    CHECK(run_cli("frobnicate", tmp.path).exit_code == 2);
    CHECK(run_cli("reduce --in x.csv", tmp.path).exit_code == 2);  // missing required flags

    // ingest a 2-feature dataset, then ask for d beyond it
    test::write_file(tmp.path / "d.csv", "f0,f1,label\n1,2,a\n3,4,b\n2,1,a\n4,3,b\n");
    auto r = run_cli("reduce --in " + (tmp.path / "d.csv").string() +
                         " --kind pca --d 2000 --model " + (tmp.path / "m").string() +
                         " --out " + (tmp.path / "l.csv").string(),
                     tmp.path);
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("2000") != std::string::npos);
    CHECK(r.out.find("[1, 2]") != std::string::npos);  // names the bound

    auto no_seed = run_cli("balance --in " + (tmp.path / "d.csv").string() + " --out " +
                               (tmp.path / "b.csv").string(),
                           tmp.path);
    CHECK(no_seed.exit_code == 2);
    CHECK(no_seed.out.find("--seed") != std::string::npos);

    auto runtime = run_cli("--seed 1 balance --in " + (tmp.path / "missing.csv").string() +
                               " --out " + (tmp.path / "b.csv").string(),
                           tmp.path);
    CHECK(runtime.exit_code == 1);
}

TEST_CASE("pipeline: synth -> ingest -> balance flattens the class histogram") {
    test::TempDir tmp("cli_pipe");
    test::write_file(tmp.path / "world.cfg", tiny_world_cfg());
    auto logs = (tmp.path / "logs").string();
    CHECK(run_cli("synth --config " + (tmp.path / "world.cfg").string() + " --out " + logs,
                  tmp.path)
              .exit_code == 0);
    CHECK(std::filesystem::exists(tmp.path / "logs" / "labels.log"));
    CHECK(std::filesystem::exists(tmp.path / "logs" / "registry.cfg"));

    auto data = (tmp.path / "data.csv").string();
    auto ing = run_cli("ingest --logs " + logs + " --enrich " +
                           (tmp.path / "logs" / "enrich.cfg").string() + " --out " + data,
                       tmp.path);
    CHECK(ing.exit_code == 0);

    auto bal = (tmp.path / "bal.csv").string();
    CHECK(run_cli("--seed 3 balance --in " + data + " --k 3 --out " + bal, tmp.path)
              .exit_code == 0);

    Dataset balanced = load_csv(bal);
    auto counts = balanced.class_counts();
    for (std::size_t c : counts) CHECK(c == counts[0]);
    CHECK(counts[0] > 0);

    // reduce -> train -> predict round trip through files
    auto latent = (tmp.path / "latent.csv").string();
    auto model = (tmp.path / "pca.model").string();
    CHECK(run_cli("--seed 4 reduce --in " + bal + " --kind pca --d 5 --model " + model +
                      " --out " + latent,
                  tmp.path)
              .exit_code == 0);
    Dataset lat = load_csv(latent);
    CHECK(lat.width() == 5);
    CHECK(lat.rows() == balanced.rows());

    auto cls = (tmp.path / "knn.model").string();
    CHECK(run_cli("train --kind knn --k 1 --in " + latent + " --model " + cls, tmp.path)
              .exit_code == 0);
    auto pred = run_cli("predict --model " + cls + " --in " + latent + " --out " +
                            (tmp.path / "pred.csv").string(),
                        tmp.path);
    CHECK(pred.exit_code == 0);
    CHECK(pred.out.find("accuracy 1.000000") != std::string::npos);  // knn recalls train set
}

TEST_CASE("bench --exp all twice emits byte-identical report.csv") {
    test::TempDir tmp("cli_bench");
    test::write_file(tmp.path / "world.cfg", tiny_world_cfg());
    test::write_file(tmp.path / "exp.cfg",
                     "data = synth:world.cfg\n"
                     "d_grid = 2,4\n"
                     "reducers = pca,srp\n"
                     "classifiers = knn,cart\n"
                     "repeats = 1\n");
    auto r1 = run_cli("--seed 7 bench --exp all --config " + (tmp.path / "exp.cfg").string() +
                          " --out " + (tmp.path / "r1").string(),
                      tmp.path);
    CHECK(r1.exit_code == 0);
    auto r2 = run_cli("--seed 7 bench --exp all --config " + (tmp.path / "exp.cfg").string() +
                          " --out " + (tmp.path / "r2").string(),
                      tmp.path);
    CHECK(r2.exit_code == 0);

    std::string a = test::read_file(tmp.path / "r1" / "report.csv");
    std::string b = test::read_file(tmp.path / "r2" / "report.csv");
    CHECK(a.size() > 100);
    CHECK(a == b);

    // a different seed changes the report
    auto r3 = run_cli("--seed 8 bench --exp all --config " + (tmp.path / "exp.cfg").string() +
                          " --out " + (tmp.path / "r3").string(),
                      tmp.path);
    CHECK(r3.exit_code == 0);
    CHECK(test::read_file(tmp.path / "r3" / "report.csv") != a);

    // every experiment contributed rows
    for (const char* needle : {"\n1,", "\n2,", "\n3,", "\n4,"})
        CHECK(a.find(needle) != std::string::npos);

    // report --in regenerates plot data in place
    std::filesystem::remove(tmp.path / "r1" / "fig8.dat");
    auto rr = run_cli("report --in " + (tmp.path / "r1").string(), tmp.path);
    CHECK(rr.exit_code == 0);
    CHECK(std::filesystem::exists(tmp.path / "r1" / "fig8.dat"));
}

TEST_CASE("bench without --seed is refused") {
    test::TempDir tmp("cli_noseed");
    test::write_file(tmp.path / "exp.cfg", "data = csv:nothing.csv\n");
    auto r = run_cli("bench --exp 1 --config " + (tmp.path / "exp.cfg").string() + " --out " +
                         (tmp.path / "r").string(),
                     tmp.path);
    CHECK(r.exit_code == 2);
}
