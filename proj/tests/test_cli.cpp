#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "celltopo/layout_io.hpp"

using namespace celltopo;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

fs::path work_dir() {
    const auto dir = fs::temp_directory_path() / "celltopo_cli_tests";
    fs::create_directories(dir);
    return dir;
}

CliResult run_cli(const std::string& args) {
    const fs::path out_path = work_dir() / "stdout.txt";
    const fs::path err_path = work_dir() / "stderr.txt";
    const std::string cmd = std::string(CELLTOPO_CLI_PATH) + " " + args + " >" +
                            out_path.string() + " 2>" + err_path.string();
    const int rc = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WEXITSTATUS(rc);
    std::ostringstream o, e;
    o << std::ifstream(out_path).rdbuf();
    e << std::ifstream(err_path).rdbuf();
    r.out = o.str();
    r.err = e.str();
    return r;
}

std::string octagon_fixture() {
    const fs::path p = work_dir() / "octagon.csv";
    const CellLayout ring = oracle::ring_layout(8, 1.0, 0, 0, Rect{-2, -2, 2, 2});
    save_layout(ring, p.string(), LayoutFormat::csv);
    return p.string();
}

std::string read_file(const std::string& p) {
    std::ostringstream buf;
    buf << std::ifstream(p).rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("analyze finds the octagon hole") {
    const auto res = run_cli("analyze -i " + octagon_fixture() + " --grid-h 0.02");
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.out);
    REQUIRE(doc["diagrams"].size() == 1);
    CHECK(doc["diagrams"][0]["class_id"] == 0);
    REQUIRE(doc["diagrams"][0]["points"].size() >= 1);
    CHECK(doc["diagrams"][0]["points"][0]["death"].get<double>() == doctest::Approx(1.0).epsilon(0.05));
    CHECK(doc.contains("defaults"));
    CHECK(doc.contains("params"));
    CHECK(doc["cross_k"].size() == 1);
}

TEST_CASE("analyze with union diagram adds the all-classes entry") {
    const auto res = run_cli("analyze -i " + octagon_fixture() + " --grid-h 0.02 --union-diagram");
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.out);
    REQUIRE(doc["diagrams"].size() == 2);
    CHECK(doc["diagrams"][1]["class_id"] == -1);
}

TEST_CASE("analyze of an empty layout succeeds with empty diagrams") {
    const fs::path p = work_dir() / "empty.csv";
    save_layout(CellLayout({}, Rect{0, 0, 1, 1}, {"a"}), p.string(), LayoutFormat::csv);
    const auto res = run_cli("analyze -i " + p.string());
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.out);
    CHECK(doc["diagrams"][0]["points"].empty());
}

TEST_CASE("missing input exits 2") {
    const auto res = run_cli("analyze -i /nonexistent/nope.csv");
    CHECK(res.exit_code == 2);
    CHECK(res.err.find("error") != std::string::npos);
}

TEST_CASE("unknown flag exits 3") {
    const auto res = run_cli("analyze -i whatever.csv --frobnicate");
    CHECK(res.exit_code == 3);
}

TEST_CASE("compare identical layouts is all zeros") {
    const std::string fixture = octagon_fixture();
    const fs::path out = work_dir() / "cmp.json";
    const auto res =
        run_cli("compare -g " + fixture + " -r " + fixture + " --grid-h 0.02 -o " + out.string());
    REQUIRE(res.exit_code == 0);
    CHECK(res.out.find("pd_emd") != std::string::npos);
    CHECK(res.out.find("mean") != std::string::npos);
    const json doc = json::parse(read_file(out.string()));
    CHECK(doc["report"]["mean"]["pd_emd"].get<double>() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(doc["report"]["mean"]["k_mae"].get<double>() == 0.0);
}

TEST_CASE("compare with mismatched class sets exits 3") {
    const fs::path a = work_dir() / "a.csv";
    const fs::path b = work_dir() / "b.csv";
    save_layout(CellLayout({{0.5, 0.5, 0}}, Rect{0, 0, 1, 1}, {"x"}), a.string(),
                LayoutFormat::csv);
    save_layout(CellLayout({{0.5, 0.5, 0}}, Rect{0, 0, 1, 1}, {"y"}), b.string(),
                LayoutFormat::csv);
    const auto res = run_cli("compare -g " + a.string() + " -r " + b.string());
    CHECK(res.exit_code == 3);
}

TEST_CASE("synthesize writes layout and trace deterministically") {
    const std::string fixture = octagon_fixture();
    const fs::path out1 = work_dir() / "synth1.csv";
    const fs::path out2 = work_dir() / "synth2.csv";
    const fs::path tr1 = work_dir() / "trace1.csv";
    const fs::path tr2 = work_dir() / "trace2.csv";
    const std::string common = "synthesize -r " + fixture + " --steps 150 --seed 42 ";
    const auto r1 = run_cli(common + "-o " + out1.string() + " --trace " + tr1.string());
    const auto r2 = run_cli(common + "-o " + out2.string() + " --trace " + tr2.string());
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);
    CHECK(read_file(out1.string()) == read_file(out2.string()));
    CHECK(read_file(tr1.string()) == read_file(tr2.string()));
    CHECK(r1.out.find("pd_ccmd") != std::string::npos);

    SUBCASE("trace has one row per step plus header") {
        std::istringstream in(read_file(tr1.string()));
        std::string line;
        std::size_t lines = 0;
        while (std::getline(in, line)) ++lines;
        CHECK(lines == 151);
    }
}

TEST_CASE("synthesize with steps=1 and emit-init") {
    const std::string fixture = octagon_fixture();
    const fs::path out = work_dir() / "s1.csv";
    const fs::path init = work_dir() / "init.csv";
    const fs::path tr = work_dir() / "t1.csv";
    const auto res = run_cli("synthesize -r " + fixture + " --steps 1 --seed 7 -o " +
                             out.string() + " --trace " + tr.string() + " --emit-init " +
                             init.string());
    REQUIRE(res.exit_code == 0);
    const CellLayout synth = load_layout(out.string(), LayoutFormat::csv);
    const CellLayout ini = load_layout(init.string(), LayoutFormat::csv);
    CHECK(ini.size() == 8);
    CHECK(synth.size() <= 8);  // overlap removal may drop points
    std::istringstream in(read_file(tr.string()));
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 2);
}

TEST_CASE("vectorize emits per-class features") {
    const auto res = run_cli("vectorize -i " + octagon_fixture() + " --grid-h 0.02");
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.out);
    REQUIRE(doc["features"].size() == 1);
    CHECK(doc["features"][0]["log_histogram"].size() ==
          doc["params"]["buckets"].size());
}

TEST_CASE("render produces class-colored svg with legend and hole markers") {
    const fs::path layout_path = work_dir() / "three.csv";
    std::vector<CellPoint> pts = {{0.2, 0.2, 0}, {0.8, 0.2, 1}, {0.5, 0.8, 2}};
    save_layout(CellLayout(pts, Rect{0, 0, 1, 1}, {"a", "b", "c"}), layout_path.string(),
                LayoutFormat::csv);
    const fs::path svg_path = work_dir() / "out.svg";
    const auto res = run_cli("render -i " + layout_path.string() + " -o " + svg_path.string());
    REQUIRE(res.exit_code == 0);
    const std::string svg = read_file(svg_path.string());
    CHECK(svg.find("cell-0") != std::string::npos);
    CHECK(svg.find("cell-1") != std::string::npos);
    CHECK(svg.find("cell-2") != std::string::npos);
    CHECK(svg.find("legend") != std::string::npos);
    CHECK(svg.find("#d1495b") != std::string::npos);
    CHECK(svg.find("#00798c") != std::string::npos);
    CHECK(svg.find("#edae49") != std::string::npos);

    SUBCASE("empty layout still renders") {
        const fs::path empty_path = work_dir() / "empty_r.csv";
        save_layout(CellLayout({}, Rect{0, 0, 1, 1}, {"a"}), empty_path.string(),
                    LayoutFormat::csv);
        const fs::path svg2 = work_dir() / "empty.svg";
        const auto r = run_cli("render -i " + empty_path.string() + " -o " + svg2.string());
        CHECK(r.exit_code == 0);
        CHECK(read_file(svg2.string()).find("<svg") != std::string::npos);
    }
    SUBCASE("diagram overlay draws one marker per hole") {
        // analyze the octagon, extract its class-0 diagram, overlay it.
        const std::string fixture = octagon_fixture();
        const auto ares = run_cli("analyze -i " + fixture + " --grid-h 0.02");
        REQUIRE(ares.exit_code == 0);
        const json doc = json::parse(ares.out);
        json dgm = doc["diagrams"][0];
        // Keep only the dominant hole so the marker count is exactly 1.
        json top = json::array();
        top.push_back(dgm["points"][0]);
        dgm["points"] = top;
        const fs::path dgm_path = work_dir() / "dgm.json";
        std::ofstream(dgm_path) << dgm.dump();
        const fs::path svg3 = work_dir() / "ring.svg";
        const auto r = run_cli("render -i " + fixture + " --diagram " + dgm_path.string() +
                               " -o " + svg3.string());
        REQUIRE(r.exit_code == 0);
        const std::string text = read_file(svg3.string());
        std::size_t markers = 0, pos = 0;
        while ((pos = text.find("hole-center", pos)) != std::string::npos) {
            ++markers;
            pos += 11;
        }
        CHECK(markers == 1);
        CHECK(text.find("bd-inset") != std::string::npos);
    }
}

TEST_CASE("defaults file override via environment variable") {
    const fs::path defaults_path = work_dir() / "defaults.json";
    std::ofstream(defaults_path) << R"({"radius_count": 3, "version": "test-override"})";
    const std::string fixture = octagon_fixture();
    const fs::path out_path = work_dir() / "stdout_env.txt";
    const std::string cmd = "CELLTOPO_DEFAULTS=" + defaults_path.string() + " " +
                            std::string(CELLTOPO_CLI_PATH) + " analyze -i " + fixture +
                            " --grid-h 0.02 >" + out_path.string() + " 2>/dev/null";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    const json doc = json::parse(read_file(out_path.string()));
    CHECK(doc["defaults"]["version"] == "test-override");
    CHECK(doc["params"]["radii"].size() == 3);
}
