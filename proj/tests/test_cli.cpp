#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(DIRACUC_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    Run r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("check on the default configuration") {
    const Run r = run("check");
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["all_pass"] == true);
    CHECK(j["parameters"]["k0"] == 8);
    CHECK(j["parameters"]["schedule"] == "paper");
    REQUIRE(j["checks"].is_array());
    REQUIRE(!j["checks"].empty());
    for (const auto& c : j["checks"]) {
        for (const char* key : {"name", "region", "points", "worst_margin_logmag", "pass"}) CHECK(c.contains(key));
        CHECK(c["pass"] == true);
        CHECK(c["worst_margin_logmag"].get<std::string>().rfind("logmag:", 0) == 0);
    }
}

TEST_CASE("exit codes") {
    CHECK(run("check --delta 0.3").code == 2);
    CHECK(run("check --bogus").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("check --schedule mild").code == 1);
    CHECK(run("check --k0 2").code == 1);
    CHECK(run("sample --k 99").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("csv check output") {
    const Run r = run("check --format csv");
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "name,region,points,worst_margin_logmag,worst_value_logmag,pass");
    int rows = 0;
    for (std::string line; std::getline(in, line);) {
        ++rows;
        CHECK(line.substr(line.size() - 4) == "true");
    }
    CHECK(rows > 5);
}

TEST_CASE("sample defaults to csv") {
    const Run r = run("sample --radial-samples 4");
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string comment, header;
    std::getline(in, comment);
    std::getline(in, header);
    CHECK(comment.rfind("#", 0) == 0);
    CHECK(header == "t,theta,opnorm_times_r");
    int rows = 0;
    for (std::string line; std::getline(in, line);) {
        ++rows;
        CHECK(std::stod(line.substr(line.rfind(',') + 1)) <= 0.6);
    }
    CHECK(rows == 6 * 4);

    const Run j = run("sample --what modulus --format json --radial-samples 3");
    CHECK(j.code == 0);
    const auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["columns"].back() == "log_abs_u");
    CHECK(doc["rows"].size() == 18);
}

TEST_CASE("out file and build") {
    const std::filesystem::path path = std::filesystem::temp_directory_path() / "diracuc_cli_build.json";
    std::filesystem::remove(path);
    const Run r = run("build --out " + path.string());
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    const auto j = nlohmann::json::parse(f);
    CHECK(j["k0_admissible"] == true);
    CHECK(j["annuli"].front()["k"] == 8);
    CHECK(j["annuli"].front()["log_rho"].size() == 7);
    std::filesystem::remove(path);

    const Run m = run("build --schedule mild");
    CHECK(m.code == 0);
    CHECK(nlohmann::json::parse(m.out)["k0_admissible"] == false);
}

TEST_CASE("kelvin and infinity subcommands") {
    CHECK(run("kelvin-check").code == 0);
    const Run r = run("infinity");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["all_pass"] == true);
}
