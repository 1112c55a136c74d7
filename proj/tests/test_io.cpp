#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "chiralnet/run_commands.hpp"

using namespace chiralnet;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

fs::path test_dir(const std::string& leaf) {
    fs::path dir = fs::temp_directory_path() / "chiralnet_tests" / leaf;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_SUITE("config") {
    TEST_CASE("parses keys, comments and blank lines") {
        KeyValueConfig cfg = KeyValueConfig::from_string(
            "# network\n"
            "g1 = 0.126   # coupling\n"
            "\n"
            "variant = with_cavity\n"
            "t_max = 40\n");
        CHECK(cfg.get_double("g1", 0.0) == doctest::Approx(0.126));
        CHECK(cfg.get_string("variant", "") == "with_cavity");
        CHECK(cfg.get_int("t_max", 0) == 40);
        CHECK(cfg.get_double("g2", 0.5) == 0.5);
    }

    TEST_CASE("diagnostics carry the line number") {
        try {
            KeyValueConfig::from_string("g1 = 0.1\nbroken line\n", "test.conf");
            FAIL("expected a parse error");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find("test.conf:2") !=
                  std::string::npos);
        }
    }

    TEST_CASE("bad numbers are rejected with the key name") {
        KeyValueConfig cfg = KeyValueConfig::from_string("g1 = fast\n");
        CHECK_THROWS_WITH_AS(cfg.get_double("g1", 0.0),
                             doctest::Contains("g1"), std::runtime_error);
    }

    TEST_CASE("unknown keys are a hard error") {
        KeyValueConfig cfg = KeyValueConfig::from_string("g1_typo = 0.3\n");
        CHECK_THROWS_WITH_AS(require_known_keys(cfg),
                             doctest::Contains("g1_typo"), std::runtime_error);
    }

    TEST_CASE("help text enumerates every registry key") {
        const std::string help = config_keys_help();
        for (const ConfigKeyInfo& k : config_key_registry())
            CHECK(help.find(k.name) != std::string::npos);
    }

    TEST_CASE("overrides win over the file") {
        fs::path dir = test_dir("overrides");
        std::ofstream(dir / "a.conf") << "g1 = 0.1\ng2 = 0.2\n";
        RunConfig run = RunConfig::load((dir / "a.conf").string(),
                                        {"g1=0.9", "seed=42"}, dir);
        CHECK(run.network().g1 == doctest::Approx(0.9));
        CHECK(run.network().g2 == doctest::Approx(0.2));
        CHECK(run.seed() == 42);
        CHECK_THROWS(RunConfig::load((dir / "a.conf").string(), {"windows=1"},
                                     dir));
        CHECK_THROWS(RunConfig::load((dir / "a.conf").string(), {"novalue"},
                                     dir));
    }

    TEST_CASE("params render back to loadable config text") {
        RunConfig run = RunConfig::load(
            std::nullopt,
            {"variant=no_cavity", "gamma_R2=3.88", "kD=2.5", "omega_a1=-0.25"},
            ".");
        const NetworkParams p = run.network();
        KeyValueConfig cfg = KeyValueConfig::from_string(to_config_string(p));
        require_known_keys(cfg);
        CHECK(cfg.get_string("variant", "") == "no_cavity");
        CHECK(cfg.get_double("gamma_R2", 0.0) == p.gamma_R2);
        CHECK(cfg.get_double("kD", 0.0) == p.kD);
        CHECK(cfg.get_double("omega_a1", 0.0) == p.omega_a1);
    }

    TEST_CASE("network assembly honors variant and normalize") {
        RunConfig run = RunConfig::load(
            std::nullopt,
            {"variant=no_cavity", "gamma_R1=2", "gamma_R2=4", "normalize=true"},
            ".");
        NetworkParams p = run.network();
        CHECK(p.variant == Variant::NoCavity);
        CHECK(p.gamma_R1 == 1.0);
        CHECK(p.gamma_R2 == doctest::Approx(2.0));
    }
}

TEST_SUITE("formatting") {
    TEST_CASE("12 significant digits") {
        CHECK(format_sig(1.0 / 3.0) == "0.333333333333");
        CHECK(format_sig(2.0 / M_E) == "0.735758882343");
        CHECK(format_sig(0.0) == "0");
        CHECK(round_sig(1.0 / 3.0) == 0.333333333333);
    }

    TEST_CASE("csv layout is exact") {
        CsvTable t;
        t.columns = {"t", "C"};
        t.rows = {{0.0, 0.5}, {1.0, 2.0 / 3.0}};
        CHECK(csv_to_string(t) == "t,C\n0,0.5\n1,0.666666666667\n");
        t.rows.push_back({1.0});
        CHECK_THROWS_AS(csv_to_string(t), std::logic_error);
    }
}

TEST_SUITE("commands") {
    TEST_CASE("simulate writes the trajectory with the exact column set") {
        fs::path dir = test_dir("simulate");
        RunConfig run = RunConfig::load(
            std::nullopt,
            {"g1=0.126", "g2=0.277", "t_max=8", "grid_points=40", "tag=t"},
            dir);
        CommandOutput out = cmd_simulate(run);
        const std::string csv = slurp(out.csv_path);
        CHECK(csv.rfind("t,P_eg,P_ge,P_10,P_01,C,F1,F2,F3\n", 0) == 0);
        CHECK(csv.find("\r") == std::string::npos);
        CHECK(out.summary["c_max"].get<double>() > 0.5);
        CHECK(out.summary["study"] == "simulate");

        // Zero coupling cannot entangle anything.
        RunConfig zero = RunConfig::load(
            std::nullopt, {"t_max=8", "grid_points=40", "tag=z"}, dir);
        CHECK(cmd_simulate(zero).summary["c_max"].get<double>() == 0.0);
    }

    TEST_CASE("both solvers agree on the summary") {
        fs::path dir = test_dir("solvers");
        RunConfig nh = RunConfig::load(
            std::nullopt,
            {"g1=0.2", "g2=0.3", "Gamma1=0.05", "gamma_L1=0.1", "gamma_L2=0.1",
             "t_max=10", "grid_points=60", "tag=nh"},
            dir);
        RunConfig me = RunConfig::load(
            std::nullopt,
            {"g1=0.2", "g2=0.3", "Gamma1=0.05", "gamma_L1=0.1", "gamma_L2=0.1",
             "t_max=10", "grid_points=60", "solver=master", "tag=me"},
            dir);
        const double a = cmd_simulate(nh).summary["c_max"].get<double>();
        const double b = cmd_simulate(me).summary["c_max"].get<double>();
        CHECK(std::abs(a - b) <= 1e-8);
    }

    TEST_CASE("identical configs produce byte-identical outputs") {
        fs::path dir1 = test_dir("det1");
        fs::path dir2 = test_dir("det2");
        const std::vector<std::string> overrides{
            "g1=0.126", "g2=0.277", "t_max=12", "grid_points=80", "tag=d"};
        CommandOutput a =
            cmd_simulate(RunConfig::load(std::nullopt, overrides, dir1));
        CommandOutput b =
            cmd_simulate(RunConfig::load(std::nullopt, overrides, dir2));
        CHECK(slurp(a.csv_path) == slurp(b.csv_path));
        CHECK(slurp(a.json_path) == slurp(b.json_path));
    }

    TEST_CASE("detuning sweep is reproducible across worker counts") {
        fs::path dir1 = test_dir("sweep1");
        fs::path dir2 = test_dir("sweep2");
        const std::vector<std::string> base{
            "g1=0.126", "g2=0.277",      "t_max=12",  "grid_points=80",
            "samples=6", "delta_points=3", "seed=99",   "tag=s"};
        auto with_workers = [&base](const std::string& w) {
            std::vector<std::string> o = base;
            o.push_back("workers=" + w);
            return o;
        };
        CommandOutput a = cmd_sweep_detuning(
            RunConfig::load(std::nullopt, with_workers("1"), dir1));
        CommandOutput b = cmd_sweep_detuning(
            RunConfig::load(std::nullopt, with_workers("2"), dir2));
        CHECK(slurp(a.csv_path) == slurp(b.csv_path));
    }

    TEST_CASE("bell phase command forces the half-wave spacing") {
        fs::path dir = test_dir("bell");
        RunConfig run = RunConfig::load(
            std::nullopt,
            {"gamma_L1=1", "gamma_L2=1", "g1=0.0041", "g2=0.0017",
             "bell_n=1", "t_max=2500", "grid_points=900", "tag=b"},
            dir);
        CommandOutput out = cmd_bell_phase(run);
        CHECK(out.summary["f_psi_plus"].get<double>() >
              out.summary["f_psi_minus"].get<double>());
        CHECK(out.summary["generator_defect"].get<double>() <= 1e-12);
    }
}
