#include <doctest.h>

#include "grimglue/config.hpp"
#include "grimglue/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace grimglue;

TEST_CASE("config entries and file parsing") {
    RunConfig config;
    apply_config_entry(config, "epsilon", "2.5e-4");
    apply_config_entry(config, "m_max", "6");
    apply_config_entry(config, "out_dir", "results");
    CHECK(config.epsilon == 2.5e-4);
    CHECK(config.m_max == 6);
    CHECK(config.out_dir == "results");
    CHECK_THROWS(apply_config_entry(config, "no_such_key", "1"));

    const auto path = std::filesystem::temp_directory_path() / "gg_config_test.txt";
    {
        std::ofstream out(path);
        out << "# sweep base\n";
        out << "epsilon = 1e-4\n";
        out << "R=25   # inline comment\n";
        out << "\n";
        out << "seed = 123\n";
    }
    const RunConfig loaded = load_config_file(path);
    CHECK(loaded.epsilon == 1e-4);
    CHECK(loaded.R == 25.0);
    CHECK(loaded.seed == 123);
    std::filesystem::remove(path);

    {
        std::ofstream out(path);
        out << "epsilon 1e-4\n";
    }
    CHECK_THROWS(load_config_file(path));
    std::filesystem::remove(path);
}

TEST_CASE("config serialization is complete and stable") {
    RunConfig config;
    config.seed = 7;
    const json j = config.to_json();
    CHECK(j.contains("epsilon"));
    CHECK(j.contains("R"));
    CHECK(j.contains("delta"));
    CHECK(j.contains("seed"));
    CHECK(j["seed"] == 7);
    // 17-significant-digit float formatting round-trips exactly.
    for (double x : {1.0 / 3.0, 2.5e-14, 123456.789, -0.0625}) {
        const std::string s = format_double(x);
        CHECK(std::stod(s) == x);
    }
    // Identical configs serialize to identical bytes.
    RunConfig other;
    other.seed = 7;
    CHECK(config.to_json().dump() == other.to_json().dump());
}
