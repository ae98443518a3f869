#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "hadamax/cli.hpp"
#include "hadamax/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

/// Run the built executable through the shell and capture stdout.
Run run_exe(const std::string& args) {
    const fs::path capture = fs::temp_directory_path() / "hadamax_cli_capture.txt";
    const std::string cmd = std::string("\"") + HADAMAX_EXE + "\" " + args + " > \"" + capture.string() + "\" 2>/dev/null";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = hadamax::read_file(capture);
    fs::remove(capture);
    return r;
}

Run run_in_process(std::vector<const char*> args) {
    args.insert(args.begin(), "hadamax");
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = hadamax::cli::run(static_cast<int>(args.size()), args.data(), out, err);
    r.out = out.str();
    return r;
}

std::string data(const char* name) { return (fs::path(HADAMAX_DATA_DIR) / name).string(); }

fs::path scratch(const char* name) {
    const auto dir = fs::temp_directory_path() / "hadamax_cli_test" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST(Cli, ConstructQ3WritesFiles) {
    const auto dir = scratch("q3");
    const auto r = run_exe("construct --family q3 --m 1 --format json --out " + dir.string());
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["report"]["excess"], 36);
    EXPECT_EQ(j["report"]["n"], 12);
    const auto saved = nlohmann::json::parse(hadamax::read_file(dir / "report.json"));
    EXPECT_EQ(saved, j);
    EXPECT_EQ(run_exe("verify " + (dir / "matrix.txt").string()).code, 0);
    EXPECT_EQ(run_exe("verify " + (dir / "base.txt").string()).code, 0);
}

TEST(Cli, ConstructOtherFamilies) {
    const auto q1 = run_in_process({"construct", "--family", "q1", "--m", "3", "--format", "json"});
    ASSERT_EQ(q1.code, 0);
    EXPECT_EQ(nlohmann::json::parse(q1.out)["report"]["excess"], 364);
    const auto p = data("m3.scheme");
    const auto reg = run_in_process({"construct", "--family", "regular", "--m", "3", "--partition", p.c_str(), "--format", "json"});
    ASSERT_EQ(reg.code, 0);
    const auto j = nlohmann::json::parse(reg.out);
    EXPECT_EQ(j["report"]["excess"], 216);
    EXPECT_EQ(j["report"]["classification"], "regular");
}

TEST(Cli, DeterministicOutput) {
    const auto a = scratch("det_a");
    const auto b = scratch("det_b");
    ASSERT_EQ(run_exe("construct --family q1 --m 2 --out " + a.string()).code, 0);
    ASSERT_EQ(run_exe("construct --family q1 --m 2 --out " + b.string()).code, 0);
    for (const char* f : {"base.txt", "matrix.txt", "report.json"}) {
        EXPECT_EQ(hadamax::read_file(a / f), hadamax::read_file(b / f)) << f;
    }
}

TEST(Cli, VerifyDetectsCorruption) {
    const auto dir = scratch("corrupt");
    ASSERT_EQ(run_exe("construct --family q3 --m 1 --out " + dir.string()).code, 0);
    auto h = hadamax::parse_matrix(hadamax::read_file(dir / "matrix.txt"));
    h.set(5, 7, -h.at(5, 7));
    hadamax::write_file_atomic(dir / "bad.txt", hadamax::format_matrix(h));
    const auto r = run_exe("verify --format json " + (dir / "bad.txt").string());
    EXPECT_EQ(r.code, 1);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_FALSE(j["hadamard"].get<bool>());
    EXPECT_EQ(j["violation"][0], 0);
    EXPECT_EQ(j["violation"][1], 5);

    hadamax::write_file_atomic(dir / "one.txt", "1\n+\n");
    const auto one = run_exe("verify --format json " + (dir / "one.txt").string());
    EXPECT_EQ(one.code, 0);
    EXPECT_EQ(nlohmann::json::parse(one.out)["excess"], 1);

    hadamax::write_file_atomic(dir / "junk.txt", "2\n+?\n++\n");
    EXPECT_EQ(run_exe("verify " + (dir / "junk.txt").string()).code, 2);
}

TEST(Cli, SearchParams) {
    const auto e8 = run_in_process({"search-params", "--family", "e8", "--q", "11"});
    ASSERT_EQ(e8.code, 0);
    EXPECT_FALSE(nlohmann::json::parse(e8.out)["params"].empty());
    const auto e4 = run_in_process({"search-params", "--family", "e4", "--q", "5"});
    ASSERT_EQ(e4.code, 0);
    EXPECT_FALSE(nlohmann::json::parse(e4.out)["params"].empty());
    EXPECT_EQ(run_in_process({"search-params", "--family", "e8", "--q", "12"}).code, 2);
    EXPECT_EQ(run_in_process({"search-params", "--family", "e8", "--q", "13"}).code, 2);
}

TEST(Cli, SchemeVerify) {
    EXPECT_EQ(run_exe("scheme --verify --partition " + data("m3.scheme")).code, 0);
    const auto m5 = run_exe("scheme --verify --partition " + data("m5.scheme"));
    ASSERT_EQ(m5.code, 0);
    EXPECT_TRUE(nlohmann::json::parse(m5.out)["passes"].get<bool>());

    const auto dir = scratch("swapped");
    hadamax::write_file_atomic(dir / "sw.scheme", "17 3 12\n1 5\n3 4 6 8\n7 11\n0 2 9 10\n");
    const auto sw = run_exe("scheme --verify --partition " + (dir / "sw.scheme").string());
    EXPECT_EQ(sw.code, 1);
    const auto j = nlohmann::json::parse(sw.out);
    EXPECT_FALSE(j["report"]["table1_match"].get<bool>());
    EXPECT_TRUE(j["report"].contains("first_failure"));

    hadamax::write_file_atomic(dir / "junk.scheme", "17 3\n");
    EXPECT_EQ(run_exe("scheme --verify --partition " + (dir / "junk.scheme").string()).code, 2);
}

TEST(Cli, SchemeSearch) {
    const auto r = run_in_process({"scheme", "--search", "--m", "3", "--e", "12"});
    ASSERT_EQ(r.code, 0);
    EXPECT_FALSE(nlohmann::json::parse(r.out)["found"].empty());
    EXPECT_EQ(run_in_process({"scheme", "--search", "--m", "3", "--e", "12", "--budget", "0"}).code, 3);
    EXPECT_EQ(run_in_process({"scheme", "--search", "--m", "3", "--e", "12", "--budget", "5"}).code, 3);
}

TEST(Cli, InputErrors) {
    EXPECT_EQ(run_in_process({}).code, 2);
    EXPECT_EQ(run_in_process({"construct", "--family", "q3"}).code, 2);
    EXPECT_EQ(run_in_process({"construct", "--family", "q3", "--m", "3"}).code, 2);  // 51 is not a prime power
    EXPECT_EQ(run_in_process({"construct", "--family", "nope", "--m", "1"}).code, 2);
    EXPECT_EQ(run_in_process({"construct", "--family", "regular", "--m", "3"}).code, 2);
    EXPECT_EQ(run_in_process({"construct", "--family", "q3", "--m", "1", "--ell", "2"}).code, 2);
    EXPECT_EQ(run_in_process({"construct", "--family", "q3", "--m", "1", "--ell", "5", "--h", "0"}).code, 0);
}
