#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "doctest.h"
#include "mrs/config.hpp"
#include "mrs/csv.hpp"

using namespace mrs;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("mrs_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("every checked-in config parses") {
    std::size_t count = 0;
    for (const auto& entry : fs::directory_iterator(MRS_CONFIG_DIR)) {
        if (entry.path().extension() != ".json") continue;
        CAPTURE(entry.path().string());
        const RunConfig rc = load_config(entry.path().string());
        CHECK((rc.solve.n0 >> rc.solve.levels) >= 2);
        CHECK((rc.solve.snapshot_times.empty() ? !rc.solve.snapshot_steps.empty() : rc.solve.t_final > 0.0));
        ++count;
    }
    CHECK(count >= 9);
}

TEST_CASE("config fields") {
    const RunConfig rc = parse_config(R"({"model": "convection_diffusion", "params": {"Pe": 500}, "n0": 128,
        "levels": 4, "eps": 1e-4, "rk_order": 3, "t_final": 0.5, "snapshot_times": [0.25, 0.5],
        "output": {"prefix": "cd", "profiles": false}})");
    CHECK(rc.model == "convection_diffusion");
    CHECK(rc.params.at("Pe") == 500.0);
    CHECK(rc.solve.n0 == 128);
    CHECK(rc.solve.levels == 4);
    CHECK(rc.solve.policy.eps == 1e-4);
    CHECK(rc.solve.rk_order == 3);
    CHECK(rc.solve.mr_order == 3);  // cell averages default to rbar = 3
    CHECK(rc.solve.snapshot_times.size() == 2);
    CHECK(rc.output.prefix == "cd");
    CHECK_FALSE(rc.output.profiles);
    CHECK(parse_config(R"({"model": "burgers_box"})").solve.mr_order == 4);
}

TEST_CASE("invalid configs are rejected") {
    const char* bad[] = {
        R"({})",
        R"({"model": 3})",
        R"({"model": "no_such_model"})",
        R"({"model": "burgers_box", "epsilon": 1e-3})",
        R"({"model": "burgers_box", "eps": "small"})",
        R"({"model": "burgers_box", "eps": -1})",
        R"({"model": "burgers_box", "n0": 100, "levels": 5})",
        R"({"model": "burgers_box", "n0": 64, "levels": 6})",
        R"({"model": "burgers_box", "n0": 2.5})",
        R"({"model": "burgers_box", "cfl": 1.5})",
        R"({"model": "burgers_box", "rk_order": 4})",
        R"({"model": "burgers_box", "mr_order": 3})",
        R"({"model": "convection_diffusion", "mr_order": 4})",
        R"({"model": "burgers_box", "params": {"Re": 10}})",
        R"({"model": "burgers_box", "output": {"folder": "x"}})",
        R"({"model": "burgers_box", "snapshot_times": 0.5})",
        R"({"model": "burgers_box",)",
    };
    for (const char* text : bad) {
        CAPTURE(text);
        CHECK_THROWS_AS(parse_config(text), ConfigError);
    }
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("field-level error messages") {
    try {
        parse_config(R"({"model": "burgers_box", "epsilon": 1e-3})");
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("epsilon") != std::string::npos);
    }
    try {
        parse_config(R"({"model": "burgers_box", "cfl": "fast"})");
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("cfl") != std::string::npos);
    }
}

TEST_CASE("shortest round-trip number format") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint64_t> bits;
    for (int i = 0; i < 10000; ++i) {
        const std::uint64_t b = bits(rng);
        double v;
        std::memcpy(&v, &b, sizeof v);
        if (!std::isfinite(v)) continue;
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
        CHECK(s.size() <= 24);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-2.0) == "-2");
}

TEST_CASE("csv layout") {
    std::ostringstream out;
    write_csv(out, {"t", "mu", "e"}, {{0.5, std::nullopt, 1e-3}, {1.0, 2.0, std::nullopt}});
    CHECK(out.str() == "t,mu,e\n0.5,,0.001\n1,2,\n");
}

TEST_CASE("cli: list-models and exit codes") {
    std::ostringstream out, err;
    CHECK(cli::list_models(out) == cli::kOk);
    for (const char* name : {"burgers_box", "viscous_burgers_smooth", "viscous_burgers_step", "convection_diffusion",
                             "reaction_diffusion", "shannon_ideal", "copper_batch", "kaolin_batch", "ict_thickener"})
        CHECK(out.str().find(name) != std::string::npos);

    const fs::path dir = scratch("exit");
    cli::Options opt;
    opt.out = (dir / "out").string();
    opt.quiet = true;
    opt.config = (dir / "missing_model.json").string();
    write_file(opt.config, R"({"n0": 64, "levels": 3})");
    CHECK(cli::run(opt, out, err) == cli::kConfigError);
    CHECK(cli::compare(opt, out, err) == cli::kConfigError);
    CHECK(cli::transform(opt, out, err) == cli::kConfigError);
    CHECK(err.str().find("model") != std::string::npos);
    opt.config = (dir / "absent.json").string();
    CHECK(cli::run(opt, out, err) == cli::kConfigError);

    // an unstable step size blows up
    opt.config = (dir / "unstable.json").string();
    write_file(opt.config, R"({"model": "burgers_box", "n0": 64, "levels": 3, "cfl": 1.0, "rk_order": 1,
        "eno_order": 3, "t_final": 1.0, "eps": 0})");
    const int code = cli::run(opt, out, err);
    CHECK((code == cli::kOk || code == cli::kInstability));
}

TEST_CASE("cli: run writes metrics, profiles and significance maps") {
    const fs::path dir = scratch("run");
    cli::Options opt;
    opt.out = (dir / "out").string();
    opt.quiet = true;
    opt.config = (dir / "box.json").string();
    write_file(opt.config, R"({"model": "burgers_box", "n0": 128, "levels": 4, "eps": 1e-3, "t_final": 0.2,
        "snapshot_times": [0.1, 0.2], "output": {"prefix": "box", "significance_map": true}})");
    std::ostringstream out, err;
    REQUIRE(cli::run(opt, out, err) == cli::kOk);
    const std::string metrics = read_file(dir / "out" / "box_metrics.csv");
    CHECK(metrics.rfind("t,mu,e1,e2,einf,tv,mass,", 0) == 0);
    std::size_t lines = 0;
    for (char c : metrics) lines += c == '\n';
    CHECK(lines == 3);
    std::size_t profiles = 0, maps = 0;
    for (const auto& e : fs::directory_iterator(dir / "out")) {
        const std::string n = e.path().filename().string();
        profiles += n.find("_profile_") != std::string::npos;
        maps += n.find("_significance_") != std::string::npos;
    }
    CHECK(profiles == 2);
    CHECK(maps == 2);
}

TEST_CASE("cli: identical configs give identical files") {
    const fs::path dir = scratch("determinism");
    const std::string cfg = R"({"model": "kaolin_batch", "n0": 64, "levels": 3, "eps": 1e-3, "t_final": 3600,
        "snapshot_times": [1800, 3600], "output": {"prefix": "k", "significance_map": true}})";
    write_file(dir / "k.json", cfg);
    std::ostringstream out, err;
    for (const char* sub : {"a", "b"}) {
        cli::Options opt;
        opt.config = (dir / "k.json").string();
        opt.out = (dir / sub).string();
        opt.quiet = true;
        REQUIRE(cli::compare(opt, out, err) == cli::kOk);
    }
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(dir / "a")) {
        const std::string name = e.path().filename().string();
        CAPTURE(name);
        if (name.find("_metrics") != std::string::npos) continue;  // wall-clock columns
        CHECK(read_file(e.path()) == read_file(dir / "b" / name));
        ++files;
    }
    CHECK(files >= 4);
}

TEST_CASE("cli: transform of an input file") {
    const fs::path dir = scratch("transform");
    cli::Options opt;
    opt.out = (dir / "out").string();
    opt.quiet = true;
    opt.config = (dir / "t.json").string();
    opt.input = (dir / "in.csv").string();

    std::vector<CsvRow> rows;
    for (std::size_t i = 0; i < 256; ++i) {
        const double x = static_cast<double>(i) / 256.0;
        rows.push_back({x, std::sin(2 * M_PI * x) + 0.3 * std::cos(6 * M_PI * x) + 0.1 * x * x});
    }
    write_csv_file(opt.input, {"x", "u"}, rows);
    std::ostringstream out, err;

    // eps = 0 reproduces smooth input bit for bit through the decimal file;
    // where a detail exceeds the sample itself only an ulp-accurate inverse exists
    write_file(opt.config, R"({"model": "burgers_box", "n0": 256, "levels": 5, "eps": 0,
        "output": {"prefix": "rt"}})");
    REQUIRE(cli::transform(opt, out, err) == cli::kOk);
    CHECK(read_file(dir / "out" / "rt_reconstruction.csv") == read_file(opt.input));
    CHECK(fs::exists(dir / "out" / "rt_details.csv"));

    // sin(pi x), r = 4, eps = 1e-4: fewer than 40 significant details
    rows.clear();
    for (std::size_t i = 0; i < 256; ++i) {
        const double x = static_cast<double>(i) / 256.0;
        rows.push_back({x, std::sin(M_PI * x)});
    }
    write_csv_file(opt.input, {"x", "u"}, rows);
    write_file(opt.config, R"({"model": "burgers_box", "n0": 256, "levels": 5, "eps": 1e-4, "mr_order": 4,
        "output": {"prefix": "sin"}})");
    REQUIRE(cli::transform(opt, out, err) == cli::kOk);
    std::istringstream details(read_file(dir / "out" / "sin_details.csv"));
    std::string line;
    std::getline(details, line);
    CHECK(line == "level,max_abs_detail,significant,tolerance");
    double significant = 0.0;
    while (std::getline(details, line)) {
        std::stringstream ss(line);
        std::string f;
        for (int c = 0; c < 3; ++c) std::getline(ss, f, ',');
        significant += std::stod(f);
    }
    CHECK(significant > 0.0);
    CHECK(significant < 40.0);

    // wrong length
    rows.pop_back();
    write_csv_file(opt.input, {"x", "u"}, rows);
    CHECK(cli::transform(opt, out, err) == cli::kConfigError);
}
