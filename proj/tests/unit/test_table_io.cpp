#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#include "ringio/table_io.hpp"
#include "support/oracles.hpp"

using namespace ringio;
namespace fs = std::filesystem;

namespace {

struct ScratchDir {
    fs::path path;
    ScratchDir()
    {
        path = fs::temp_directory_path() /
               ("ringio_table_io_" + std::to_string(static_cast<unsigned long long>(oracle::uniform(0, 1e15))));
        fs::create_directories(path);
    }
    ~ScratchDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("doubles are written with 17 significant digits and round-trip")
{
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(7.0) == "7");
    for (int i = 0; i < 2000; ++i) {
        const double x = oracle::uniform(-1e6, 1e6) * std::pow(10.0, oracle::uniform(-20, 20));
        CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
    }
}

TEST_CASE("csv table layout and determinism")
{
    ScratchDir dir;
    const Table t{{"a", "b"}, {{1.0, 0.5}, {-2.25, 1e-300}}};
    write_csv(dir.path / "one.csv", t);
    write_csv(dir.path / "two.csv", t);
    const std::string text = slurp(dir.path / "one.csv");
    CHECK(text == "a,b\n1,0.5\n-2.25,1e-300\n");
    CHECK(text == slurp(dir.path / "two.csv"));
    CHECK_THROWS_AS(write_csv(dir.path / "bad.csv", Table{{"a"}, {{1.0, 2.0}}}), std::invalid_argument);
}

TEST_CASE("table json")
{
    const auto j = table_to_json(Table{{"x"}, {{1.5}}});
    CHECK(j.at("columns")[0] == "x");
    CHECK(j.at("rows")[0][0] == 1.5);
}

TEST_CASE("axis json round trip")
{
    const UniformAxis a{-1.25, 0.0625, 33};
    CHECK(axis_from_json(axis_to_json(a)) == a);
}

TEST_CASE("delta train json round trip")
{
    for (int trial = 0; trial < 100; ++trial) {
        std::map<DeltaTrain::Offset, double> w;
        for (int i = 0; i < 10; ++i) w[static_cast<int>(oracle::uniform(-50, 50))] = oracle::uniform(-1.0, 1.0);
        const DeltaTrain t(oracle::uniform(0.1, 5.0), 1e-12, w, oracle::uniform(0.0, 1e-10));
        const DeltaTrain back = train_from_json(nlohmann::json::parse(train_to_json(t).dump()));
        CHECK(back.period() == t.period());
        CHECK(back.eps() == t.eps());
        CHECK(back.tail_bound() == t.tail_bound());
        CHECK(back.weights() == t.weights());
    }
    CHECK_THROWS_AS(train_from_json(nlohmann::json{{"T", 1.0}, {"eps", 1e-12}, {"weights", {{1}}}, {"tail_bound", 0.0}}),
                    std::invalid_argument);
}

TEST_CASE("commutator map files")
{
    ScratchDir dir;
    CommutatorMap map{UniformAxis{0.0, 0.5, 2}, UniformAxis{-1.0, 1.0, 3}, Eigen::MatrixXd::Zero(3, 2), 0.01, 0.25, 0.0, 0.9};
    map.values(1, 1) = 2.5;
    write_commutator_map(dir.path / "map.csv", map);
    CHECK(slurp(dir.path / "map.csv") == "t,0,0.5\n-1,0,0\n0,0,2.5\n1,0,0\n");
    const auto meta = nlohmann::json::parse(slurp(dir.path / "map.json"));
    CHECK(meta.at("zprime") == 0.25);
    CHECK(axis_from_json(meta.at("t_axis")) == map.t_axis);
}

TEST_CASE("joint amplitude files")
{
    ScratchDir dir;
    const UniformAxis axis{0.0, 0.5, 2};
    Eigen::MatrixXcd v(2, 2);
    v << cplx{1.0, 0.0}, cplx{0.0, 2.0}, cplx{0.0, 2.0}, cplx{-3.0, 0.0};
    write_joint_amplitude(dir.path, "pair", JointAmplitudeGrid(axis, axis, v), {{"tau", 0.6}});
    CHECK(slurp(dir.path / "pair_magnitude.csv") == "t1,0,0.5\n0,1,2\n0.5,2,3\n");
    CHECK(fs::exists(dir.path / "pair_phase.csv"));
    const auto meta = nlohmann::json::parse(slurp(dir.path / "pair.json"));
    CHECK(meta.at("tau") == 0.6);
    CHECK(meta.at("rows") == "t1");
}

TEST_CASE("json files create their parent directories")
{
    ScratchDir dir;
    write_json_file(dir.path / "a" / "b" / "c.json", nlohmann::json{{"k", 1}});
    CHECK(nlohmann::json::parse(slurp(dir.path / "a" / "b" / "c.json")).at("k") == 1);
}

TEST_CASE("matrix csv checks its shape")
{
    ScratchDir dir;
    CHECK_THROWS_AS(write_matrix_csv(dir.path / "m.csv", "x", UniformAxis{0, 1, 2}, UniformAxis{0, 1, 2},
                                     Eigen::MatrixXd::Zero(3, 2)),
                    std::invalid_argument);
}
