#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "axelrod/error.hpp"
#include "axelrod/experiment.hpp"

using namespace axelrod;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("axelrod_exp_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("settings parse and validate") {
    ExperimentConfig c;
    apply_setting(c, "--F", "3");
    apply_setting(c, "q", "7");
    apply_setting(c, "t_max", "12.5");
    apply_setting(c, "snapshots", "1, 2,4");
    apply_setting(c, "attach-urn", "yes");
    apply_setting(c, "topology", "cycle");
    CHECK(c.F() == 3);
    CHECK(c.q() == 7);
    CHECK(*c.t_max == 12.5);
    CHECK(c.snapshots == std::vector<double>{1, 2, 4});
    CHECK(c.attach_urn);
    CHECK(c.topology == TopologyKind::cycle);
    CHECK_THROWS_AS(apply_setting(c, "colour", "red"), InvalidInput);
    CHECK_THROWS_AS(apply_setting(c, "N", "ten"), InvalidInput);
    CHECK_THROWS_AS(apply_setting(c, "attach-urn", "maybe"), InvalidInput);

    ExperimentConfig bad;
    bad.features = 0;
    CHECK_THROWS_AS(validate(bad), InvalidInput);
    bad = ExperimentConfig{};
    bad.model = Model::voter;
    bad.attach_urn = true;
    CHECK_THROWS_AS(validate(bad), InvalidInput);
    bad = ExperimentConfig{};
    bad.kind = ExperimentKind::lemma5_estimate;
    bad.n = 20;
    CHECK_THROWS_AS(validate(bad), InvalidInput);
    bad = ExperimentConfig{};
    bad.kind = ExperimentKind::urn_rounds;
    bad.initial_boxes = std::vector<std::size_t>{1, 2};
    CHECK_THROWS_AS(validate(bad), InvalidInput);
}

TEST_CASE("config file") {
    const auto dir = fresh_dir("cfg");
    std::filesystem::create_directories(dir);
    {
        std::ofstream os(dir / "run.cfg");
        os << "# comment\nmodel = axelrod\nF = 2  # inline\n\nq=4\nreplicates = 3\n";
    }
    const auto kv = parse_config_file(dir / "run.cfg");
    REQUIRE(kv.size() == 4);
    CHECK(kv[1] == std::pair<std::string, std::string>{"F", "2"});
    {
        std::ofstream os(dir / "bad.cfg");
        os << "F 2\n";
    }
    CHECK_THROWS_AS(parse_config_file(dir / "bad.cfg"), InvalidInput);
    std::filesystem::remove_all(dir);
}

TEST_CASE("simulate summary compares against the bound") {
    ExperimentConfig c;
    c.features = 2;
    c.states = 4;
    c.n = 200;
    c.replicates = 30;
    c.attach_urn = true;
    const auto s = execute(c);
    CHECK(s.passed());
    CHECK(s.report["theorem2"]["bound"].get<double>() == doctest::Approx(0.375));
    CHECK(s.report["theorem2"]["margin"] == "3 SE");
    CHECK(s.report["config"]["seed"] == 1);
    CHECK_FALSE(s.report["config"].contains("threads"));
    CHECK(s.report["aggregate"]["non_absorbed"] == 0);
}

TEST_CASE("non-absorbed replicates are reported separately") {
    ExperimentConfig c;
    c.features = 3;
    c.states = 3;
    c.n = 300;
    c.replicates = 4;
    c.max_events = 20;
    const auto s = execute(c);
    CHECK(s.report["aggregate"]["non_absorbed"] == 4);
    CHECK(s.report["aggregate"]["absorbed"] == 0);
}

TEST_CASE("outputs are byte-identical across reruns and thread counts") {
    ExperimentConfig c;
    c.features = 2;
    c.states = 3;
    c.n = 60;
    c.replicates = 6;
    c.attach_urn = true;
    c.event_logs = true;
    c.snapshots = {0.5, 5.0};
    const auto a = fresh_dir("det_a"), b = fresh_dir("det_b");
    c.out = a;
    c.threads = 1;
    const auto sa = execute(c);
    c.out = b;
    c.threads = 3;
    const auto sb = execute(c);
    REQUIRE(sa.files.size() == sb.files.size());
    for (std::size_t i = 0; i < sa.files.size(); ++i) {
        CHECK(sa.files[i].filename() == sb.files[i].filename());
        CHECK(slurp(sa.files[i]) == slurp(sb.files[i]));
    }
    CHECK(std::filesystem::exists(a / "aggregate.csv"));
    CHECK(std::filesystem::exists(a / "summary.json"));
    CHECK(std::filesystem::exists(a / "events_0000.csv"));
    for (const auto& entry : std::filesystem::directory_iterator(a))
        CHECK(entry.path().extension() != ".partial");
    std::filesystem::remove_all(a);
    std::filesystem::remove_all(b);
}

TEST_CASE("bounds and table outputs") {
    ExperimentConfig c;
    c.kind = ExperimentKind::table1;
    const auto t1 = execute(c), t2 = execute(c);
    CHECK(t1.text == t2.text);
    CHECK(t1.text.find("2.6667") != std::string::npos);

    c.kind = ExperimentKind::bounds;
    c.features = 3;
    c.states = 4;
    CHECK(execute(c).text.find("neg.") != std::string::npos);
    c.features = 4;
    c.states = 4;
    CHECK(execute(c).report["cell"]["bound"].is_null());
    c.features.reset();
    c.states.reset();
    c.theta = 0.5;
    CHECK(execute(c).report["psi"]["psi"].get<double>() == doctest::Approx(0.375));
}

TEST_CASE("duality check re-reads a written log") {
    const auto dir = fresh_dir("dual");
    ExperimentConfig c;
    c.kind = ExperimentKind::duality_check;
    c.model = Model::voter;
    c.topology = TopologyKind::cycle;
    c.n = 16;
    c.replicates = 3;
    c.event_logs = true;
    c.out = dir;
    CHECK(execute(c).passed());

    ExperimentConfig again;
    again.kind = ExperimentKind::duality_check;
    again.log = dir / "events_0001.csv";
    const auto s = execute(again);
    CHECK(s.passed());
    CHECK(s.report["counts"]["all_true"] == 1);
    std::filesystem::remove_all(dir);
}
