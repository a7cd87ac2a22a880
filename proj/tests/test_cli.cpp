#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>
#include <sys/wait.h>

#include "json.hpp"
#include "swspectra/config.hpp"
#include "swspectra/output.hpp"

using namespace sw;

namespace {

const std::string& cli_path() {
    static std::string path = [] {
        const char* p = std::getenv("SWSPECTRA_CLI");
        return p ? std::string(p) : std::string();
    }();
    REQUIRE_MESSAGE(!path.empty(), "SWSPECTRA_CLI must point at the command-line binary");
    return path;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    REQUIRE(f.good());
    f << text;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::string& subcommand, const std::string& config_text,
                  const std::string& extra_flags = "") {
    static int seq = 0;
    const std::string base = "/tmp/swspectra_cli_case_" + std::to_string(++seq);
    const std::string cfg = base + ".json";
    const std::string outp = base + ".out";
    const std::string errp = base + ".err";
    write_file(cfg, config_text);

    std::string cmd = cli_path() + " " + subcommand + " --config " + cfg;
    if (!extra_flags.empty()) cmd += " " + extra_flags;
    cmd += " > " + outp + " 2> " + errp;

    CliResult r;
    const int raw = std::system(cmd.c_str());
    r.code = (raw == -1) ? -1 : (WIFEXITED(raw) ? WEXITSTATUS(raw) : -2);
    r.out = read_file(outp);
    r.err = read_file(errp);
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

const char* kHeader = "case,p,eps1,eps2,u,E_tilde,E_rel,residual,positivity,notes";

} // namespace

TEST_CASE("malformed configurations exit with the usage status") {
    CliResult r = run_cli("quasi", "{\"case\":3}");
    CHECK(r.code == 2);
    CHECK(contains(r.err, "config error"));

    r = run_cli("quasi", "{\"case\":1,\"omega\":1.0,\"bogus\":2}");
    CHECK(r.code == 2);
    CHECK(contains(r.err, "bogus"));

    r = run_cli("quasi", "{\"case\":1,\"omega\":1.0,\"mu1\":-1.0}");
    CHECK(r.code == 2);
    CHECK(contains(r.err, "k_tilde_1 imaginary"));

    r = run_cli("quasi", "this is not json");
    CHECK(r.code == 2);
    CHECK(contains(r.err, "JSON"));

    // Mode named in the config must match the subcommand.
    r = run_cli("relativistic", "{\"case\":1,\"omega\":1.0,\"mode\":\"quasi\"}");
    CHECK(r.code == 2);
    CHECK(contains(r.err, "quasi"));
    CHECK(contains(r.err, "relativistic"));

    // The numeric cross-check supports no fourth-system potential.
    r = run_cli("verify", "{\"case\":4,\"k\":1.0}");
    CHECK(r.code == 2);
}

TEST_CASE("configs survive an emit/parse round trip") {
    const char* texts[] = {
        "{\"case\":1,\"omega\":1.25,\"mu1\":0.5,\"p_max\":2}",
        "{\"case\":2,\"omega\":0.8,\"mu\":0.4,\"tol\":1e-8,\"format\":\"json\"}",
        "{\"case\":3,\"k\":0.9,\"mu1\":0.1,\"mu2\":0.2,\"mode\":\"relativistic\","
        "\"signs\":[-1,1],\"window\":{\"lo\":-0.5,\"hi\":3.5}}",
        "{\"case\":4,\"k\":1.1,\"mu1\":0.3,\"mu2\":0.2,\"variant\":\"mass_weighted\","
        "\"form\":\"direct\",\"signs\":[-1]}",
        "{\"case\":1,\"omega\":1.0,\"mode\":\"verify\",\"grid_points\":200,"
        "\"grid_extent\":9.5}",
    };
    for (const char* text : texts) {
        const JobConfig cfg = parse_config(text);
        const JobConfig again = parse_config(emit_config(cfg));
        CHECK(again == cfg);
    }
}

TEST_CASE("auxiliary-spectrum table: shape, determinism, file output") {
    const std::string cfg = "{\"case\":1,\"omega\":1.0,\"p_max\":1}";
    CliResult r = run_cli("quasi", cfg);
    CHECK(r.code == 0);
    const std::vector<std::string> ls = lines_of(r.out);
    REQUIRE(ls.size() == 9); // header + 4 branches x 2 levels
    CHECK(ls[0] == kHeader);
    for (std::size_t i = 1; i < ls.size(); ++i) CHECK(ls[i].substr(0, 2) == "1,");
    CHECK(contains(r.err, "quasi: 8 rows, 0 failed checks"));

    CliResult quiet = run_cli("quasi", cfg, "--quiet");
    CHECK(quiet.code == 0);
    CHECK(quiet.err.empty());
    CHECK(quiet.out == r.out);

    run_cli("quasi", cfg, "--out /tmp/swspectra_det_a.csv");
    run_cli("quasi", cfg, "--out /tmp/swspectra_det_b.csv");
    const std::string a = read_file("/tmp/swspectra_det_a.csv");
    CHECK(!a.empty());
    CHECK(a == read_file("/tmp/swspectra_det_b.csv"));
    CHECK(a == r.out);
}

TEST_CASE("relativistic table annotates the limit and the principal root") {
    const std::string cfg = "{\"case\":1,\"omega\":1.0,\"p_max\":0,\"signs\":[1,1]}";
    const CliResult r = run_cli("relativistic", cfg);
    CHECK(r.code == 0);
    const std::vector<std::string> ls = lines_of(r.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == kHeader);
    CHECK(contains(ls[1], "3.09624980684"));
    CHECK(contains(ls[1], "nonrel=3"));
    CHECK(contains(ls[1], "principal"));
    CHECK(contains(ls[1], "two_path="));
}

TEST_CASE("algebra self-check mode") {
    const std::string cfg =
        "{\"case\":2,\"omega\":1.0,\"mu\":0.5,\"p_max\":2,\"format\":\"json\"}";
    const CliResult r = run_cli("closure-check", cfg);
    CHECK(r.code == 0);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j.at("mode").get<std::string>() == "closure-check");
    CHECK(j.at("case").get<int>() == 2);
    CHECK(j.at("failures").get<int>() == 0);
    REQUIRE(j.at("levels").is_array());
    CHECK(j.at("levels").size() == 6); // two branches x three levels
    for (const auto& level : j.at("levels")) {
        const bool checked = level.at("checked").get<bool>();
        CHECK(checked);
        if (!checked) continue;
        CHECK(level.at("pass").get<bool>());
        CHECK(level.at("dev_bc").get<double>() < 1e-9);
    }

    // An absurdly small tolerance flips the run into the failure exit status.
    // (p_max >= 1 so the representations are larger than 1x1; scalar
    // representations close exactly and would pass any tolerance.)
    const CliResult bad = run_cli(
        "closure-check", "{\"case\":2,\"omega\":1.0,\"p_max\":2,\"tol\":1e-30}");
    CHECK(bad.code == 1);
}

TEST_CASE("first-order-equivalence check mode") {
    const std::string cfg = "{\"case\":3,\"k\":1.0,\"mu1\":0.2,\"mu2\":0.1}";
    const CliResult r = run_cli("dirac-check", cfg);
    CHECK(r.code == 0);
    const std::vector<std::string> ls = lines_of(r.out);
    REQUIRE(ls.size() == 21); // header + 20 sampled energies
    CHECK(contains(ls[1], "equivalence=pass"));
    CHECK(contains(r.err, "dirac-check: 20 rows, 0 failed checks"));
}

TEST_CASE("CSV quoting and field rendering") {
    OutputRow full;
    full.case_id = 2;
    full.p = 1;
    full.eps1 = -1;
    full.u = 0.5;
    full.E_tilde = 2.25;
    full.residual = 1e-12;
    full.positivity = true;
    full.notes = "he said \"hi\", twice";
    OutputRow sparse;
    sparse.case_id = 4;
    sparse.positivity = false;

    const std::string csv = to_csv({full, sparse});
    const std::vector<std::string> ls = lines_of(csv);
    REQUIRE(ls.size() == 3);
    CHECK(ls[0] == kHeader);
    CHECK(ls[1] == "2,1,-1,,0.5,2.25,,1e-12,pass,\"he said \"\"hi\"\", twice\"");
    CHECK(ls[2] == "4,,,,,,,,fail,");
}

TEST_CASE("JSON rendering keeps numbers native and gaps null") {
    OutputRow row;
    row.case_id = 1;
    row.p = 0;
    row.E_tilde = 3.0;
    row.E_rel = std::numeric_limits<double>::quiet_NaN();
    row.notes = "x";

    const nlohmann::json arr = nlohmann::json::parse(to_json({row}));
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 1);
    const nlohmann::json& j = arr[0];
    CHECK(j.at("case").get<int>() == 1);
    CHECK(j.at("p").get<int>() == 0);
    CHECK(j.at("eps1").is_null());
    CHECK(j.at("E_tilde").get<double>() == 3.0);
    CHECK(j.at("E_rel").is_null()); // non-finite values cannot be JSON numbers
    CHECK(j.at("positivity").is_null());
    CHECK(j.at("notes").get<std::string>() == "x");
}

TEST_CASE("twelve-digit number rendering") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(3.0) == "3");
    CHECK(format_double(-0.4) == "-0.4");
    CHECK(format_double(1e-12) == "1e-12");
    CHECK(format_double(3.09624980684465) == "3.09624980684");
}
