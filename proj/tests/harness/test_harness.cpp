#include <pnls_harness/commands.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using namespace pnls::harness;

namespace {

class HarnessTest : public ::testing::Test {
protected:
    void SetUp() override {
        std::random_device rd;
        root_ = fs::temp_directory_path() / ("pnls_harness_" + std::to_string(rd()) + "_" +
                                             ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(root_);
    }
    void TearDown() override { fs::remove_all(root_); }

    std::string write_config(const std::string& name, const std::string& text) {
        const auto path = root_ / name;
        std::ofstream(path) << text;
        return path.string();
    }

    int run_cmd(Command c, const std::string& config, const fs::path& out, int threads = 1,
                std::optional<std::uint64_t> seed = std::nullopt) {
        RunOptions o;
        o.config_path = config;
        o.out = out;
        o.threads = threads;
        o.seed_override = seed;
        std::ostringstream log;
        const int code = run(c, o, log);
        last_log_ = log.str();
        return code;
    }

    static fs::path only_run(const fs::path& out) {
        std::vector<fs::path> dirs;
        for (const auto& e : fs::directory_iterator(out))
            if (e.is_directory()) dirs.push_back(e.path());
        EXPECT_EQ(dirs.size(), 1u);
        return dirs.empty() ? fs::path{} : dirs.front();
    }

    static std::string slurp(const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    static nlohmann::json manifest(const fs::path& run_dir) { return nlohmann::json::parse(slurp(run_dir / "manifest.json")); }

    fs::path root_;
    std::string last_log_;
};

const char* plane_wave_cfg = R"([grid]
max_mode = 8
[equation]
p = 5
sign = defocusing
[stepper]
dt = 1e-4
record_every = 1000
[experiment]
initial = plane_wave
mode = 1
amplitude = 1.0
t_end = 1.0
)";

const char* small_smoothing_cfg = R"([grid]
max_mode = 16
[equation]
p = 5
[stepper]
dt = 1e-4
record_every = 100
[experiment]
initial = random_sobolev
amplitude = 0.3
seed = 3
seeds = 2
t_end = 0.05
)";

const char* small_attractor_cfg = R"([grid]
max_mode = 16
[equation]
p = 5
gamma = 0.5
forcing = 1:0.5, -1:0.5
[stepper]
dt = 1e-3
record_every = 10
[experiment]
initial = bump
ensemble_h1 = 1, 2, 3
t_end = 2
global_smoothing = false
agreement_tolerance = 1.0
)";

}  // namespace

TEST(ConfigParse, DefaultsAndRationals) {
    const auto c = parse_config("[grid]\nmax_mode = 12\n[constants]\nc_C = 1/16\ngap = 2\n");
    EXPECT_EQ(c.max_mode, 12);
    EXPECT_EQ(c.p, 5);
    EXPECT_EQ(c.constants.c_C, pnls::Rational(1, 16));
    EXPECT_EQ(c.grid().samples(), pnls::GridSpec::for_exponent(12, 5).samples());
}

TEST(ConfigParse, ForcingList) {
    const auto c = parse_config("[equation]\ngamma = 0.5\nforcing = 1:0.5, -1:0.5:0.25\n");
    ASSERT_EQ(c.forcing.size(), 2u);
    EXPECT_EQ(c.forcing[1].k, -1);
    EXPECT_DOUBLE_EQ(c.forcing[1].value.imag(), 0.25);
}

TEST(ConfigParse, ErrorsNameFieldPath) {
    auto message = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const pnls::SchemaError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_NE(message("[equation]\np = 4\n").find("equation.p"), std::string::npos);
    EXPECT_NE(message("[grid]\nmax_modes = 4\n").find("grid.max_modes"), std::string::npos);
    EXPECT_NE(message("[stepper]\ndt = fast\n").find("stepper.dt"), std::string::npos);
    EXPECT_NE(message("[stepper]\nscheme = euler\n").find("stepper.scheme"), std::string::npos);
    EXPECT_NE(message("[nonsense]\nx = 1\n").find("nonsense"), std::string::npos);
    EXPECT_NE(message("[constants]\nc_C = 1/0\n").find("constants.c_C"), std::string::npos);
}

TEST(ConfigParse, CommandRules) {
    auto c = parse_config("[equation]\ngamma = 0.5\n");
    EXPECT_THROW(validate_for(c, Command::attractor), pnls::SchemaError);
    c = parse_config("[experiment]\ns = 0.2\n");
    EXPECT_THROW(validate_for(c, Command::smoothing), pnls::SchemaError);
    c = parse_config("[grid]\nmax_mode = 32\n[experiment]\nnormal_form = true\n");
    EXPECT_THROW(validate_for(c, Command::smoothing), pnls::SchemaError);
}

TEST(Manifest, Sha256KnownVector) {
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Manifest, RunIdIgnoresOutputDir) {
    auto a = parse_config("[output]\ndir = a\n").to_json();
    auto b = parse_config("[output]\ndir = b\n").to_json();
    EXPECT_EQ(make_run_id("simulate", a, "1"), make_run_id("simulate", b, "1"));
    EXPECT_NE(make_run_id("simulate", a, "1"), make_run_id("smoothing", a, "1"));
    EXPECT_NE(make_run_id("simulate", a, "1"), make_run_id("simulate", a, "2"));
}

TEST_F(HarnessTest, SimulatePlaneWavePasses) {
    const auto out = root_ / "runs";
    ASSERT_EQ(run_cmd(Command::simulate, write_config("pw.ini", plane_wave_cfg), out), exit_ok) << last_log_;
    const auto dir = only_run(out);
    const auto m = manifest(dir);
    EXPECT_EQ(m["run_id"], dir.filename().string());
    EXPECT_EQ(m["validation"]["plane_wave_phase_error"]["status"], "pass");
    EXPECT_LT(m["validation"]["plane_wave_phase_error"]["value"].get<double>(), 1e-8);
    for (const auto& f : m["outputs"]) EXPECT_TRUE(fs::exists(dir / f.get<std::string>()));
    const auto series = pnls::read_csv(dir / "trajectory.csv");
    EXPECT_EQ(series.size(), 11u);
    EXPECT_NEAR(series.at(10, "theta"), 3.0, 1e-9);
}

TEST_F(HarnessTest, EvenExponentIsSchemaErrorWithoutOutputs) {
    const auto out = root_ / "runs";
    std::string cfg = plane_wave_cfg;
    cfg.replace(cfg.find("p = 5"), 5, "p = 4");
    EXPECT_EQ(run_cmd(Command::simulate, write_config("even.ini", cfg), out), exit_schema);
    EXPECT_NE(last_log_.find("equation.p"), std::string::npos);
    EXPECT_FALSE(fs::exists(out));
}

TEST_F(HarnessTest, MissingConfigIsSchemaError) {
    EXPECT_EQ(run_cmd(Command::simulate, (root_ / "absent.ini").string(), root_ / "runs"), exit_schema);
    EXPECT_FALSE(fs::exists(root_ / "runs"));
}

TEST_F(HarnessTest, AttractorWithoutForcingIsSchemaError) {
    std::string cfg = small_attractor_cfg;
    cfg.erase(cfg.find("forcing"), std::string("forcing = 1:0.5, -1:0.5\n").size());
    EXPECT_EQ(run_cmd(Command::attractor, write_config("nof.ini", cfg), root_ / "runs"), exit_schema);
    EXPECT_FALSE(fs::exists(root_ / "runs"));
}

TEST_F(HarnessTest, FailedValidationExitsOneAndNamesCheck) {
    const char* cfg = R"([grid]
max_mode = 4
[experiment]
box = 8
split_fields = 2
amplitude = 0.3
[constants]
c_C = 1
)";
    const auto out = root_ / "runs";
    EXPECT_EQ(run_cmd(Command::resonance, write_config("res.ini", cfg), out), exit_validation);
    const auto m = manifest(only_run(out));
    EXPECT_EQ(m["validation"]["lemma_violations"]["status"], "fail");
    EXPECT_EQ(m["validation"]["lemma_violations"]["value"].get<double>(), 96.0);
    EXPECT_EQ(m["validation"]["split_identity_relative_error"]["status"], "pass");
    EXPECT_NE(last_log_.find("failed check: lemma_violations"), std::string::npos);
}

TEST_F(HarnessTest, SmoothingDeterministicAcrossRunsAndThreads) {
    const auto cfg = write_config("sm.ini", small_smoothing_cfg);
    ASSERT_EQ(run_cmd(Command::smoothing, cfg, root_ / "a", 1), exit_ok) << last_log_;
    ASSERT_EQ(run_cmd(Command::smoothing, cfg, root_ / "b", 4), exit_ok) << last_log_;
    const auto da = only_run(root_ / "a"), db = only_run(root_ / "b");
    EXPECT_EQ(da.filename(), db.filename());
    const auto ma = manifest(da);
    ASSERT_EQ(ma["outputs"].size(), 2u);
    for (const auto& f : ma["outputs"]) {
        const auto name = f.get<std::string>();
        EXPECT_EQ(slurp(da / name), slurp(db / name)) << name;
    }
}

TEST_F(HarnessTest, AttractorDeterministicAcrossThreads) {
    const auto cfg = write_config("at.ini", small_attractor_cfg);
    ASSERT_EQ(run_cmd(Command::attractor, cfg, root_ / "a", 1), exit_ok) << last_log_;
    ASSERT_EQ(run_cmd(Command::attractor, cfg, root_ / "b", 3), exit_ok) << last_log_;
    const auto da = only_run(root_ / "a"), db = only_run(root_ / "b");
    for (const char* name : {"member_0.csv", "member_1.csv", "member_2.csv", "sweep_summary.csv"})
        EXPECT_EQ(slurp(da / name), slurp(db / name)) << name;
    const auto summary = pnls::read_csv(da / "sweep_summary.csv");
    EXPECT_EQ(summary.size(), 3u);
}

TEST_F(HarnessTest, ResonanceDeterministicExceptWallTime) {
    const char* cfg = "[grid]\nmax_mode = 4\n[experiment]\nbox = 6\nsplit_fields = 3\namplitude = 0.3\n";
    const auto path = write_config("r.ini", cfg);
    ASSERT_EQ(run_cmd(Command::resonance, path, root_ / "a", 1), exit_ok) << last_log_;
    ASSERT_EQ(run_cmd(Command::resonance, path, root_ / "b", 2), exit_ok) << last_log_;
    const auto a = pnls::read_csv(only_run(root_ / "a") / "decomposition.csv");
    const auto b = pnls::read_csv(only_run(root_ / "b") / "decomposition.csv");
    for (const char* col : {"box", "p", "c_B", "c_C", "r_comp", "gap", "violations", "min_ratio"})
        EXPECT_EQ(a.at(0, col), b.at(0, col)) << col;
    EXPECT_EQ(slurp(only_run(root_ / "a") / "split_identity.csv"), slurp(only_run(root_ / "b") / "split_identity.csv"));
}

TEST_F(HarnessTest, SeedOverrideChangesRun) {
    const auto cfg = write_config("sm.ini", small_smoothing_cfg);
    ASSERT_EQ(run_cmd(Command::smoothing, cfg, root_ / "a"), exit_ok);
    ASSERT_EQ(run_cmd(Command::smoothing, cfg, root_ / "b", 1, 11), exit_ok);
    const auto da = only_run(root_ / "a"), db = only_run(root_ / "b");
    EXPECT_NE(da.filename(), db.filename());
    EXPECT_EQ(manifest(db)["config"]["experiment"]["seed"], 11);
    EXPECT_TRUE(fs::exists(db / "smoothing_seed11.csv"));
}

TEST_F(HarnessTest, ReportAggregatesManifests) {
    const auto out = root_ / "runs";
    ASSERT_EQ(run_cmd(Command::simulate, write_config("pw.ini", plane_wave_cfg), out), exit_ok);
    std::ostringstream log;
    EXPECT_EQ(report(out, log), exit_ok);
    const auto text = slurp(out / "report.csv");
    EXPECT_NE(text.find("run_id,command,checks,failed,status"), std::string::npos);
    EXPECT_NE(text.find(",simulate,"), std::string::npos);
    EXPECT_NE(text.find(",pass"), std::string::npos);
    std::ostringstream log2;
    EXPECT_EQ(report(root_ / "missing", log2), exit_schema);
}
