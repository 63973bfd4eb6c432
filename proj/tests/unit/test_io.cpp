#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hfemto/analysis.hpp"
#include "hfemto/io.hpp"
#include "json.hpp"

using namespace hfemto;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("hfemto_test_" + name)).string();
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("numbers round trip") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, 0.0, -2.5}) {
      CHECK(std::stod(format_number(v)) == v);
    }
  }

  TEST_CASE("curve csv round trip") {
    CurvePair c{{0.01, 0.1, 1.0}, {0.1, 0.2, 1.0 / 3.0}, {0.0, 1e-17, 0.5}};
    const auto text = curves_csv(c);
    CHECK(text.rfind("T,Z_m,Z_f\n", 0) == 0);
    const auto back = parse_curves_csv(text);
    CHECK(back.thresholds == c.thresholds);
    CHECK(back.z_m == c.z_m);
    CHECK(back.z_f == c.z_f);
  }

  TEST_CASE("malformed curve files") {
    CHECK_THROWS_AS(parse_curves_csv(""), InputError);
    CHECK_THROWS_AS(parse_curves_csv("T,Zm,Zf\n1,2,3\n"), InputError);
    CHECK_THROWS_AS(parse_curves_csv("T,Z_m,Z_f\n"), InputError);
    CHECK_THROWS_AS(parse_curves_csv("T,Z_m,Z_f\n1,2\n"), InputError);
    CHECK_THROWS_AS(parse_curves_csv("T,Z_m,Z_f\n1,x,3\n"), InputError);
    CHECK_NOTHROW(parse_curves_csv("T,Z_m,Z_f\r\n1,0.5,0.25\r\n"));
    CHECK_THROWS_AS(read_curves_csv("/nonexistent/file.csv"), InputError);
  }

  TEST_CASE("sweep csv") {
    RateReport r;
    r.tau_n = 1.0;
    r.tau_s = 2.0;
    r.tau_m = 3.0;
    r.tau_f = 4.0;
    const auto text = sweep_csv({{5.0, r}});
    CHECK(text == "var,tau_n,tau_s,tau_m,tau_f\n5,1,2,3,4\n");
  }

  TEST_CASE("rate report json") {
    const auto a = analyze(default_config(), log_grid(1e-2, 1e2, 3));
    const auto j = nlohmann::json::parse(rate_report_json(a.rates));
    CHECK(j.at("tau_m").get<double>() == a.rates.tau_m);
    CHECK(j.at("unit") == "nats/s/Hz");
    CHECK(j.at("config_hash") == a.rates.config_hash);
    const auto b = nlohmann::json::parse(rate_report_json(a.rates, 1.0 / std::log(2.0)));
    CHECK(b.at("unit") == "bits/s/Hz");
    CHECK(b.at("tau_f").get<double>() == doctest::Approx(a.rates.tau_f / std::log(2.0)));
  }

  TEST_CASE("atomic writes") {
    const auto p = temp_path("atomic.txt");
    write_file_atomic(p, "first");
    write_file_atomic(p, "second");
    CHECK(slurp(p) == "second");
    std::filesystem::remove(p);
    CHECK_THROWS_AS(write_file_atomic("/nonexistent/dir/x.txt", "x"), InputError);
  }

  TEST_CASE("path helpers") {
    CHECK(replace_extension("out/a.csv", ".json") == "out/a.json");
    CHECK(replace_extension("noext", ".json") == "noext.json");
    CHECK(add_suffix("out/a.csv", "_sim") == "out/a_sim.csv");
  }
}

TEST_SUITE("analysis") {
  TEST_CASE("analyze picks the deployment") {
    const auto grid = log_grid(1e-2, 1e2, 4);
    const auto p = analyze(default_config(), grid);
    CHECK(p.curves.thresholds == grid);
    CHECK(p.curves.z_m.size() == 4);
    CHECK(p.rates.tau_m == doctest::Approx(1.8819092079955717).epsilon(1e-8));
    const auto one = analyze(default_config(), {1.0});
    CHECK(one.curves.z_m.size() == 1);
    CHECK(one.curves.z_m[0] == doctest::Approx(0.361049180051632).epsilon(1e-10));
  }

  TEST_CASE("parse values") {
    CHECK(parse_values("1,2,3.5") == std::vector<double>{1.0, 2.0, 3.5});
    CHECK(parse_values("3:6") == std::vector<double>{3.0, 4.0, 5.0, 6.0});
    const auto l = parse_values("log:1e-5:1e-3:3");
    REQUIRE(l.size() == 3);
    CHECK(l[0] == 1e-5);
    CHECK(l[1] == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(l[2] == 1e-3);
    CHECK(parse_values("").empty());
    CHECK_THROWS_AS(parse_values("1,a"), std::invalid_argument);
    CHECK_THROWS_AS(parse_values("1.5:3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_values("log:0:1:3"), std::invalid_argument);
  }

  TEST_CASE("sweep validation") {
    SweepSpec s;
    CHECK_FALSE(s.validate(default_config()).empty());
    s.values = {0, 5, 21};
    CHECK_FALSE(s.validate(default_config()).empty());
    s.values = {5, 3};
    CHECK_FALSE(s.validate(default_config()).empty());
    s.values = {0.5};
    CHECK_FALSE(s.validate(default_config()).empty());
    s.variable = SweepVariable::LambdaOut;
    s.values = {-1.0};
    CHECK_FALSE(s.validate(default_config()).empty());
    s.values = {0.0, 1e-4};
    CHECK(s.validate(default_config()).empty());
    CHECK(parse_sweep_variable("lambda_out") == SweepVariable::LambdaOut);
    CHECK(parse_sweep_engine("both") == SweepEngine::Both);
    CHECK_THROWS_AS(parse_sweep_variable("W"), std::invalid_argument);
    CHECK_THROWS_AS(sweep_analytic(default_config(), SweepSpec{}), std::invalid_argument);
  }

  TEST_CASE("analytic M_s sweep trends") {
    SweepSpec s;
    s.values = parse_values("0:20");
    const auto rows = sweep_analytic(default_config(), s);
    REQUIRE(rows.size() == 21);
    CHECK(rows.front().rates.tau_in == 0.0);
    CHECK(rows.back().rates.tau_s == 0.0);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i].rates.tau_s <= rows[i - 1].rates.tau_s + 1e-12);
      CHECK(rows[i].rates.tau_n >= rows[i - 1].rates.tau_n - 1e-12);
    }
  }

  TEST_CASE("simulated sweep") {
    SweepSpec s;
    s.values = {0, 20};
    SimSpec sim;
    sim.snapshots = 20;
    const auto rows = sweep_simulated(default_config(), s, sim);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].rates.tau_in == 0.0);
    CHECK(rows[1].rates.tau_s == 0.0);
  }
}
