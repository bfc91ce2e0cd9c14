// End-to-end checks of the command-line driver: real process spawns, real
// files, exact exit codes, byte-identical reports.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dicke/json_io.hpp"
#include "doctest.h"

using namespace dicke;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path p = fs::temp_directory_path() /
                     ("dicke_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

CliRun run_cli(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    fs::path capture = work_dir() / ("out_" + std::to_string(counter++));
    std::string cmd = env + (env.empty() ? "" : " ") +
                      std::string(DICKE_CLI_PATH) + " " + args + " > " +
                      capture.string() + " 2> /dev/null";
    int status = std::system(cmd.c_str());
    CliRun r;
    r.code = status == -1 ? -1 : WEXITSTATUS(status);
    std::ifstream in(capture);
    std::ostringstream buf;
    buf << in.rdbuf();
    r.out = buf.str();
    return r;
}

std::string write_doc(const std::string& name, const std::string& body) {
    fs::path p = work_dir() / name;
    std::ofstream(p) << body;
    return p.string();
}

std::string data_file(const char* name) {
    return std::string(DICKE_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("ppt exit codes and certificates") {
    CliRun bad = run_cli("ppt --input " + data_file("bell.json") + " --level 1");
    CHECK(bad.code == 1);
    auto doc = nlohmann::json::parse(bad.out);
    CHECK(doc["tool"] == "dicke");
    CHECK(doc["command"] == "ppt");
    CHECK(doc["input_digest"].get<std::string>().size() == 16);
    CHECK(doc["verdict"]["status"] == "non_member");
    CHECK(doc["verdict"]["certificate"]["bad_j"] == 1);
    CHECK(doc["exit"] == 1);

    // The shipped doubly nonnegative matrix passes level one (default level).
    CliRun good = run_cli("ppt --input " + data_file("dnn5.json"));
    CHECK(good.code == 0);
    CHECK(nlohmann::json::parse(good.out)["verdict"]["status"] == "member");
}

TEST_CASE("sep is exact for qubits and honest for qutrits") {
    SymTensor sep_q(4, 2);
    sep_q.add_scaled(rank_one({0.6, 0.4}, 4), 1.0);
    sep_q.add_scaled(rank_one({0.2, 0.8}, 4), 0.5);
    std::string sep_path =
        write_doc("sep_qubit.json", ds_to_json(lambda_from_q(sep_q)).dump());
    CHECK(run_cli("sep --input " + sep_path).code == 0);

    CliRun bell = run_cli("sep --input " + data_file("bell.json"));
    CHECK(bell.code == 1);
    CHECK(nlohmann::json::parse(bell.out)["method"] == "qubit_exact");

    // The PPT-entangled qutrit optimizer state: the moment test passes, the
    // decomposition search cannot certify, so the driver reports exit 2.
    Qutrit3Result res = qutrit3_search();
    std::string q3 = write_doc("qutrit3.json", ds_to_json(res.state).dump());
    CliRun undecided = run_cli("sep --restarts 6 --input " + q3);
    CHECK(undecided.code == 2);
    auto doc = nlohmann::json::parse(undecided.out);
    CHECK(doc["method"] == "moment_then_decompose");
    CHECK(doc["moment"]["status"] == "member");
    CHECK(doc["decomposition"]["verdict"]["status"] == "inconclusive");
}

TEST_CASE("malformed input and bad usage exit with 64") {
    std::string broken = write_doc("broken.json", "{ not json at all");
    CHECK(run_cli("ppt --input " + broken).code == 64);

    std::string dup = write_doc("dup.json",
                                R"({"n":2,"d":2,"entries":[)"
                                R"({"alpha":[1,1],"value":1.0},)"
                                R"({"alpha":[1,1],"value":2.0}]})");
    CHECK(run_cli("sos --input " + dup).code == 64);

    CHECK(run_cli("nonsense").code == 64);
    CHECK(run_cli("ppt").code == 64);
    CHECK(run_cli("witness detect --state " + data_file("bell.json") +
                  " --witness unknown_name")
              .code == 64);
    CHECK(run_cli("ppt --input " + data_file("bell.json") + " --level 7")
              .code == 64);
    // Pairing against a non-copositive witness is a usage error.
    CHECK(run_cli("witness detect --state " + data_file("bell.json") +
                  " --witness projective --alpha 1,1 --mu 9")
              .code == 64);
}

TEST_CASE("witness detect flags the pure two-mode state") {
    std::string args = "witness detect --state " + data_file("bell.json") +
                       " --witness projective --alpha 1,1";
    CliRun first = run_cli(args);
    CHECK(first.code == 1);
    auto doc = nlohmann::json::parse(first.out);
    CHECK(doc["entangled"] == true);
    CHECK(doc["pairing"].get<double>() == doctest::Approx(-1.0));

    // Reports are byte-identical run to run when --timing is off.
    CliRun second = run_cli(args);
    CHECK(first.out == second.out);
    CHECK(first.out.find("wall_ms") == std::string::npos);
    CliRun timed = run_cli("--timing " + args);
    CHECK(timed.out.find("wall_ms") != std::string::npos);
}

TEST_CASE("witness list and export round-trip") {
    CliRun list = run_cli("witness list");
    CHECK(list.code == 0);
    auto doc = nlohmann::json::parse(list.out);
    REQUIRE(doc["witnesses"].size() == 2);
    CHECK(doc["witnesses"][0]["name"] == "motzkin");
    CHECK(doc["witnesses"][1]["name"] == "robinson");

    fs::path exported = work_dir() / "choi.json";
    CliRun exp = run_cli(
        "witness export --name choi_lam --a 3 --b -2.5 --c 0.5 --dim 4 "
        "--output " +
        exported.string());
    CHECK(exp.code == 0);
    std::ifstream in(exported);
    auto w = nlohmann::json::parse(in);
    CHECK(w["provenance"] == "choi_lam(3,-2.5,0.5;d=4)");
    CHECK(w["copositive"] == true);
}

TEST_CASE("sos and hierarchy commands mirror the library verdicts") {
    std::string motzkin_path =
        write_doc("motzkin.json", tensor_to_json(motzkin().tensor).dump());
    CliRun not_sos = run_cli("sos --input " + motzkin_path);
    CHECK(not_sos.code == 1);
    auto doc = nlohmann::json::parse(not_sos.out);
    CHECK(doc["verdict"]["status"] == "not_sos");
    CHECK(doc["verdict"]["obstruction"]["monomial"] ==
          nlohmann::json::array({2, 2, 2}));

    CHECK(run_cli("hierarchy --family rsos --level 1 --input " + motzkin_path)
              .code == 0);
    CHECK(run_cli("hierarchy --family pnn --level 0 --input " + motzkin_path)
              .code == 1);

    // The driver must agree with an in-process run on the same document.
    std::ifstream dnn(data_file("dnn5.json"));
    SymTensor Q = q_view(ds_from_json(nlohmann::json::parse(dnn)));
    HierarchyVerdict lib = nn_ext_feasible(Q, 1);
    int expected = lib.member() ? 0
                   : lib.status == HierarchyVerdict::Status::non_member ? 1
                                                                        : 2;
    CHECK(run_cli("hierarchy --family nnext --level 1 --input " +
                  data_file("dnn5.json"))
              .code == expected);
}

TEST_CASE("extend rejects the pure two-mode state with a dual ray") {
    CliRun v = run_cli("extend --input " + data_file("bell.json") +
                       " --level 1");
    CHECK(v.code == 1);
    auto doc = nlohmann::json::parse(v.out);
    CHECK(doc["verdict"]["status"] == "non_member");
    CHECK(doc["verdict"]["dual_ray"].size() == 3);
}

TEST_CASE("marginal writes a well-formed reduced state") {
    fs::path reduced = work_dir() / "reduced.json";
    CliRun v = run_cli("marginal --input " + data_file("dnn5.json") +
                       " --legs 1 --output " + reduced.string());
    CHECK(v.code == 0);
    std::ifstream in(reduced);
    DsMatrix Y = ds_from_json(nlohmann::json::parse(in));
    CHECK(Y.order() == 1);
    CHECK(Y.dim() == 5);
    double phi = 1.618033988749895;
    CHECK(Y.trace() == doctest::Approx(5 * phi + 10.0));
}

TEST_CASE("numeric context file feeds the report context") {
    std::string ctx_path =
        write_doc("ctx.json", R"({"max_iter": 777, "seed": 99})");
    CliRun v = run_cli("witness list",
                       "DICKE_NUMERIC_CONTEXT=" + ctx_path);
    CHECK(v.code == 0);
    auto doc = nlohmann::json::parse(v.out);
    CHECK(doc["context"]["max_iter"] == 777);
    CHECK(doc["context"]["seed"] == 99);
    // Flags still win over the file.
    CliRun flag = run_cli("--max-iter 55 witness list",
                          "DICKE_NUMERIC_CONTEXT=" + ctx_path);
    CHECK(nlohmann::json::parse(flag.out)["context"]["max_iter"] == 55);
}

TEST_CASE("repro qutrit3 reproduces the construction end to end") {
    CliRun v = run_cli("repro qutrit3");
    CHECK(v.code == 0);
    auto doc = nlohmann::json::parse(v.out);
    double eta = doc["eta"].get<double>();
    CHECK(eta >= -0.03);
    CHECK(eta <= -0.015);
    for (const char* key : {"eta_in_band", "state_psd", "unit_trace",
                            "ppt_level_1", "robinson_detects"}) {
        CHECK(doc["checks"][key] == true);
    }
}

TEST_SUITE_END();
