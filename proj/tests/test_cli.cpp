#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

// End-to-end checks against the built binary: exit-status contract, JSON
// schema, and the documented example invocations.

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(SPORADIC_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<nlohmann::json> json_lines(const std::string& out) {
    std::vector<nlohmann::json> records;
    size_t start = 0;
    while (start < out.size()) {
        size_t end = out.find('\n', start);
        if (end == std::string::npos) end = out.size();
        if (end > start) records.push_back(nlohmann::json::parse(out.substr(start, end - start)));
        start = end + 1;
    }
    return records;
}

std::string data_file(const std::string& name) {
    return std::string(SPORADIC_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("verify exits 0 on a passing check") {
    auto res = run("verify --seq delta --p 5 --m 1 --r 1 --lambda 3");
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("pass") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("verify --p 4").exit_code == 2);
    CHECK(run("verify").exit_code == 2);                        // missing --p
    CHECK(run("compute --no-such-flag").exit_code == 2);
    CHECK(run("nonsense").exit_code == 2);
    CHECK(run("verify --seq-file " + data_file("one.seq") + " --p 5").exit_code == 2);  // no lambda
    CHECK(run("").exit_code == 2);                              // subcommand required
}

TEST_CASE("failing checks exit 1 and print the failing record") {
    auto res = run("lemma l3 --p 5 --s 1 --n 5 --x 2 --third-sign minus");
    CHECK(res.exit_code == 1);
    CHECK(res.out.find("FAIL") != std::string::npos);
    CHECK(run("lemma l3 --p 5 --s 1 --n 5 --x 2").exit_code == 0);
}

TEST_CASE("crosscheck agrees across representations") {
    CHECK(run("crosscheck --n-max 8").exit_code == 0);
}

TEST_CASE("json records follow the schema in stable order") {
    auto res = run("--json sweep --p-max 13 --m-max 3 --r-max 2");
    CHECK(res.exit_code == 0);
    auto records = json_lines(res.out);
    REQUIRE(records.size() == 24);
    const std::vector<std::string> keys{"check", "params", "observed", "required", "verdict"};
    for (const auto& record : records) {
        size_t i = 0;
        for (auto it = record.begin(); it != record.end(); ++it, ++i) {
            REQUIRE(i < keys.size());
            REQUIRE(it.key() == keys[i]);
        }
        CHECK(record["verdict"] == "pass");
        CHECK(record["params"].is_object());
    }
}

TEST_CASE("compute prints exact values") {
    auto res = run("compute --seq delta --n 5");
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("-2997") != std::string::npos);
    auto rep = run("compute --seq delta --n 6 --representation multinomial");
    CHECK(rep.exit_code == 0);
    CHECK(rep.out.find("-19431") != std::string::npos);
}

TEST_CASE("eval runs DSL files") {
    auto res = run("eval --file " + data_file("delta.seq") + " --n 4");
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("-279") != std::string::npos);
    auto canon = run("eval --file " + data_file("one.seq") + " --canonical");
    CHECK(canon.exit_code == 0);
    CHECK(canon.out.find("seq one(n) = sum(k = 0 .. 0) 1") != std::string::npos);
}

TEST_CASE("eval reports positioned diagnostics and exits 1") {
    auto res = run("--json eval --file " + data_file("../spec.md") + " --n 0");
    CHECK(res.exit_code == 1);
    auto records = json_lines(res.out);
    REQUIRE(records.size() == 1);
    CHECK(records[0]["check"] == "dsl-parse");
    CHECK(records[0]["verdict"] == "fail");
    std::string msg = records[0]["observed"];
    CHECK(msg.find("parse error at") != std::string::npos);
}

TEST_CASE("decompose emits per-claim and per-class records") {
    auto res = run("--json decompose --p 5 --m 1 --r 1");
    CHECK(res.exit_code == 0);
    auto records = json_lines(res.out);
    CHECK(records.size() >= 7);
    bool saw_reduce = false;
    for (const auto& record : records) {
        CHECK(record["verdict"] == "pass");
        if (record["check"] == "reduce-identity") saw_reduce = true;
    }
    CHECK(saw_reduce);
    CHECK(run("decompose --p 5 --m 3 --r 1").exit_code == 2);  // over budget
}

TEST_CASE("verify works through a DSL sequence with explicit lambda") {
    auto res = run("verify --seq-file " + data_file("one.seq") + " --p 5 --m 2 --r 2 --lambda 3");
    CHECK(res.exit_code == 0);
    auto apery = run("verify --seq-file " + data_file("apery.seq") + " --p 5 --lambda 3");
    CHECK(apery.exit_code == 0);
}
