#include "sclat/dsl.hpp"
#include "sclat/report.hpp"

#include <doctest.h>

#include <fstream>

using namespace sclat;

TEST_SUITE("report") {

TEST_CASE("envelope and report fields") {
    const report::json e = report::envelope("kernel", {{"dim", 1}});
    CHECK(e["schema_version"] == report::kSchemaVersion);
    CHECK(e["kind"] == "kernel");
    CHECK(e["config"]["dim"] == 1);
    CHECK(report::to_json(cplx(1.0, -2.0)) == report::json::array({1.0, -2.0}));
    GardingReport g;
    g.C0 = 1.5;
    CHECK(report::to_json(g)["C0"] == 1.5);
    SharpGardingReport s;
    s.has_trend = true;
    s.ratio = std::numeric_limits<double>::infinity();
    CHECK(report::to_json(s)["ratio"].is_string());
}

TEST_CASE("expansion CSV") {
    const LatticeModel m(1, 0.5, 8);
    const Symbol a = dsl::tabulate_symbol(dsl::parse("k1 + cos(2*pi*theta1)"), m);
    const std::string csv = report::expansion_csv(adjoint_asymptotic(a, 2));
    CHECK(csv.rfind("N,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("atomic writes replace the target") {
    const auto dir = std::filesystem::temp_directory_path() / "sclat_report_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.json";
    report::write_atomic(path, "first");
    report::write_atomic(path, "second");
    std::ifstream in(path);
    std::string s;
    std::getline(in, s);
    CHECK(s == "second");
    std::filesystem::remove_all(dir);
}

}
