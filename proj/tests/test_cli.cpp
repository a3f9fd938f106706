#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "support/fixtures.hpp"

namespace {

struct CmdResult {
    int code = -1;
    std::string out;
};

CmdResult run_cli(const std::string& args) {
    std::string cmd = std::string(TSRKIT_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult result;
    char buffer[4096];
    std::size_t n;
    while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) result.out.append(buffer, n);
    int status = pclose(pipe);
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string fx(const std::string& name) { return testsupport::fixture_path(name); }

std::string last_line(const std::string& text) {
    auto end = text.find_last_not_of('\n');
    if (end == std::string::npos) return "";
    auto start = text.rfind('\n', end);
    return text.substr(start == std::string::npos ? 0 : start + 1,
                       end - (start == std::string::npos ? 0 : start + 1) + 1);
}

}  // namespace

TEST_CASE("check prints kind and counts") {
    CmdResult r = run_cli("check " + fx("T_a.tsr"));
    CHECK(r.code == 0);
    CHECK(r.out.find("kind: tsr") != std::string::npos);
    CHECK(r.out.find("states: 5") != std::string::npos);
}

TEST_CASE("check rejects garbage with exit 2") {
    std::string path = std::string(P_tmpdir) + "/tsrkit_garbage.txt";
    std::ofstream(path) << "this is not a system\n";
    CHECK(run_cli("check " + path).code == 2);
    std::remove(path.c_str());
    CHECK(run_cli("check " + fx("no_such_file.tsr")).code == 2);
}

TEST_CASE("usage errors exit with 2, help with 0") {
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("refine " + fx("T_a.tsr")).code == 2);
    CHECK(run_cli("--help").code == 0);
}

TEST_CASE("refine exit codes follow the verdict; unsafe pair fails with the stated code") {
    CHECK(run_cli("refine " + fx("T_a.tsr") + " " + fx("T_c.tsr")).code == 0);

    CmdResult r = run_cli("refine --safe " + fx("T_a.tsr") + " " + fx("T_c.tsr"));
    CHECK(r.code == 1);
    CHECK(r.out.find("violation: DeadlockNotReflected") != std::string::npos);
    CHECK(last_line(r.out) == "counterexample: prescribe");

    CHECK(run_cli("refine --oracle " + fx("T_a.tsr") + " " + fx("T_b.tsr")).code == 0);
    CHECK(run_cli("refine " + fx("T_b.tsr") + " " + fx("T_c.tsr")).code == 1);
    CHECK(run_cli("refine " + fx("T_a.tsr") + " " + fx("M_med.mixts")).code == 2);
    CHECK(run_cli("refine --oracle " + fx("M_med.mixts") + " " + fx("M_med.mixts")).code == 0);
}

TEST_CASE("json and human output agree on the verdict") {
    CmdResult human = run_cli("refine --safe " + fx("T_a.tsr") + " " + fx("T_c.tsr"));
    CmdResult machine = run_cli("--json refine --safe " + fx("T_a.tsr") + " " + fx("T_c.tsr"));
    CHECK(human.code == 1);
    CHECK(machine.code == 1);
    auto doc = nlohmann::json::parse(machine.out);
    CHECK(doc["holds"] == false);
    CHECK(doc["violation"] == "DeadlockNotReflected");
    CHECK(doc["pair"] == nlohmann::json::array({"s1", "s1"}));
    CHECK(doc["counterexample"] == nlohmann::json::array({"prescribe"}));
}

TEST_CASE("language commands") {
    CHECK(run_cli("lang empty " + fx("CE_left.tsr")).code == 0);
    CmdResult nonempty = run_cli("lang empty " + fx("T_b.tsr"));
    CHECK(nonempty.code == 1);
    CHECK(last_line(nonempty.out) == "counterexample:");

    CHECK(run_cli("lang member " + fx("T_b.tsr") + " prescribe sign give").code == 0);
    CHECK(run_cli("lang member " + fx("T_b.tsr") + " prescribe sign").code == 1);
    CHECK(run_cli("lang member " + fx("T_b.tsr")).code == 0);  // the empty word
    CHECK(run_cli("lang member " + fx("T_b.tsr") + " bogus").code == 2);

    CHECK(run_cli("lang includes " + fx("T_a.tsr") + " " + fx("T_b.tsr")).code == 0);
    CmdResult not_included = run_cli("lang includes " + fx("T_b.tsr") + " " + fx("T_a.tsr"));
    CHECK(not_included.code == 1);
    CHECK(last_line(not_included.out) == "counterexample: prescribe cancel");

    CHECK(run_cli("lang equiv " + fx("CE_left.tsr") + " " + fx("CE_right.tsr")).code == 0);
    CHECK(run_cli("lang equiv " + fx("T_a.tsr") + " " + fx("T_b.tsr")).code == 1);

    CmdResult words = run_cli("lang enum " + fx("T_b.tsr") + " --maxlen 7");
    CHECK(words.code == 0);
    CHECK(words.out.rfind("ε\n", 0) == 0);
    CHECK(words.out.find("prescribe sign dont_trust prescribe sign give\n")
          != std::string::npos);
}

TEST_CASE("modal and deadlocks verdict codes") {
    CHECK(run_cli("modal " + fx("T_a.tsr")).code == 1);
    CHECK(run_cli("modal " + fx("CE_left.tsr")).code == 0);
    CHECK(run_cli("modal " + fx("M_med.mixts")).code == 1);
    CHECK(run_cli("deadlocks " + fx("T_c.tsr")).code == 1);
    CHECK(run_cli("deadlocks " + fx("T_a.tsr")).code == 0);
    CHECK(run_cli("deadlocks " + fx("M_med.mixts")).code == 2);
}

TEST_CASE("convert, canon, iso and fmt compose") {
    std::string tmp = std::string(P_tmpdir) + "/tsrkit_med_from_ta.mixts";
    CmdResult converted = run_cli("convert " + fx("T_a.tsr") + " --to mixts");
    CHECK(converted.code == 0);
    std::ofstream(tmp) << converted.out;

    CHECK(run_cli("iso " + tmp + " " + fx("M_med.mixts")).code == 0);
    CHECK(run_cli("canon " + tmp).code == 0);
    CHECK(run_cli("canon " + fx("T_a.tsr")).code == 2);

    // convert back and compare against the fixture through iso
    std::string back = std::string(P_tmpdir) + "/tsrkit_ta_back.tsr";
    CmdResult reconverted = run_cli("convert " + tmp + " --to tsr");
    CHECK(reconverted.code == 0);
    std::ofstream(back) << reconverted.out;
    CHECK(run_cli("iso " + back + " " + fx("T_a.tsr")).code == 0);

    // fmt is idempotent on its own output
    CmdResult once = run_cli("fmt " + fx("T_a.tsr"));
    CHECK(once.code == 0);
    std::string fmt_tmp = std::string(P_tmpdir) + "/tsrkit_fmt.tsr";
    std::ofstream(fmt_tmp) << once.out;
    CmdResult twice = run_cli("fmt " + fmt_tmp);
    CHECK(twice.out == once.out);
    CHECK(run_cli("fmt -i " + fmt_tmp).code == 0);

    std::remove(tmp.c_str());
    std::remove(back.c_str());
    std::remove(fmt_tmp.c_str());
}

TEST_CASE("dot export runs and mentions the styling") {
    CmdResult r = run_cli("dot " + fx("M_med.mixts"));
    CHECK(r.code == 0);
    CHECK(r.out.find("style=dashed") != std::string::npos);
}
