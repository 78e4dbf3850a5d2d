#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "shadowing/certificate_io.hpp"
#include "shadowing/experiment_config.hpp"
#include "shadowing/shadow_linear.hpp"

using namespace shadowing;

TEST_CASE("config round-trips through its canonical serialization") {
  ExperimentConfig cfg;
  cfg.system = "northsouth:0.1";
  cfg.method = "pipeline";
  cfg.schedule = "inv_linear:0.3";
  cfg.splice = "sink,source";
  cfg.window = 123;
  cfg.seed = 99;
  cfg.eps = 0.0125;
  cfg.grid_step = 2.5e-4;
  cfg.out = "dev.csv";
  cfg.expect = "unshadowable";
  std::istringstream in(cfg.serialized());
  CHECK(ExperimentConfig::from_stream(in) == cfg);
}

TEST_CASE("unknown config keys are rejected") {
  std::istringstream in("system = cat\nwobble = 3\n");
  CHECK_THROWS_AS(ExperimentConfig::from_stream(in), Error);
  std::istringstream bad("system cat\n");
  CHECK_THROWS_AS(ExperimentConfig::from_stream(bad), Error);
  std::istringstream nonnum("window = twelve\n");
  CHECK_THROWS_AS(ExperimentConfig::from_stream(nonnum), Error);
}

TEST_CASE("system descriptors") {
  CHECK(std::holds_alternative<HyperbolicToralMap>(parse_system("cat")));
  auto toral = parse_system("toral:1,1,1,0");
  CHECK(std::get<HyperbolicToralMap>(toral).matrix() == Mat2i{1, 1, 1, 0});
  auto ns = parse_system("northsouth:0.1");
  CHECK(std::get<NorthSouthCircleMap>(ns).parameter() == 0.1);
  CHECK_THROWS_AS(parse_system("florp"), Error);
  CHECK_THROWS_AS(parse_system("toral:1,1,1"), Error);

  // SFT from the documented plain-text file format
  std::string path = "test_sft_matrix.txt";
  {
    std::ofstream f(path);
    f << "2\n1 1\n1 0\n";
  }
  auto sft = parse_system("sft:" + path);
  CHECK(std::get<Sft>(sft) == Sft::golden_mean());
  std::remove(path.c_str());
}

TEST_CASE("schedule and anchor parsing") {
  ErrorSchedule s = parse_schedule("inv_linear:0.3");
  CHECK(s.kind == ScheduleKind::inverse_linear);
  CHECK(s.amplitude == 0.3);
  CHECK_THROWS_AS(parse_schedule("inv_linear"), Error);
  CHECK_THROWS_AS(parse_schedule("nope:1"), Error);
  CHECK_THROWS_AS(parse_schedule("const:-1"), Error);

  auto ns = NorthSouthCircleMap::from_parameter(0.1);
  CHECK(parse_circle_anchor(ns, "sink").x == 0.5);
  CHECK(parse_circle_anchor(ns, "source").x == 0.0);
  CHECK(parse_circle_anchor(ns, "0.25").x == 0.25);
  TorusPoint t = parse_torus_anchor("0.1:0.2");
  CHECK(t.x == 0.1);
  CHECK(t.y == 0.2);
  auto golden = Sft::golden_mean();
  SymbolicPoint p = parse_sft_anchor(golden, "per:01");
  CHECK(p.symbol(0) == 0);
  CHECK(p.symbol(1) == 1);
  CHECK_THROWS_AS(parse_sft_anchor(golden, "per:11"), Error);  // inadmissible word
}

TEST_CASE("pseudo-orbit CSV round trip is bitwise exact") {
  auto cat = HyperbolicToralMap::cat_map();
  auto po = generate_pseudo_orbit(cat, TorusPoint{0.1, 0.2}, {ScheduleKind::inverse_linear, 0.3},
                                  30, 7);
  std::ostringstream out;
  write_pseudo_orbit_csv(out, po);
  std::istringstream in(out.str());
  auto back = read_pseudo_orbit_csv(cat, in);
  CHECK(back.window_radius() == 30);
  for (long long i = -40; i <= 40; ++i) {  // through the tails as well
    CHECK(back.point(i).x == po.point(i).x);
    CHECK(back.point(i).y == po.point(i).y);
  }
  CHECK(!back.left_tail().exact());
  CHECK(back.left_tail().schedule.kind == ScheduleKind::inverse_linear);
  CHECK(back.left_tail().seed == 7);

  // wrong system is refused
  auto other = HyperbolicToralMap::from_matrix(Mat2i{1, 1, 1, 0});
  std::istringstream in2(out.str());
  CHECK_THROWS_AS(read_pseudo_orbit_csv(other, in2), Error);
}

TEST_CASE("pseudo-orbit JSON round trip carries symbolic descriptors") {
  auto sft = Sft::golden_mean();
  RngStream rng(15);
  auto po = generate_pseudo_orbit(sft, sft.random_point(6, rng),
                                  {ScheduleKind::inverse_square, 0.5}, 12, 4);
  nlohmann::json j = pseudo_orbit_to_json(po);
  auto back = pseudo_orbit_from_json(sft, j);
  for (long long i = -16; i <= 16; ++i)
    CHECK(sft.distance(back.point(i), po.point(i)) == 0.0);
}

TEST_CASE("certificate JSON schema") {
  auto cat = HyperbolicToralMap::cat_map();
  auto po = splice_orbits(cat, TorusPoint{0, 0}, TorusPoint{0.1, 0.2});
  auto cert = shadow_linear(cat, po, 20);
  nlohmann::json j = certificate_to_json(cert, cat.descriptor());
  CHECK(j["schema"] == "shadow-certificate/1");
  CHECK(j["system"] == "cat");
  CHECK(j["verdict"] == "two_sided_limit_shadowed");
  CHECK(j["deviations"].size() == 41);
  CHECK(j["orbit_residual"].get<double>() <= 1e-9);
  CHECK(j["forward_tail"]["rate"].get<double>() == doctest::Approx(cat.rate_s()));
}

TEST_CASE("deviation CSV: schema line, then one row per index") {
  auto cat = HyperbolicToralMap::cat_map();
  auto po = splice_orbits(cat, TorusPoint{0, 0}, TorusPoint{0.1, 0.2});
  auto cert = shadow_linear(cat, po, 5);
  std::ostringstream out;
  write_deviation_csv(out, cert, cat.descriptor());
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line.rfind("# shadow-certificate/1 system=cat", 0) == 0);
  std::getline(lines, line);
  CHECK(line == "i,error,deviation");
  int rows = 0;
  while (std::getline(lines, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 11);
}

TEST_CASE("format_sci round-trips doubles exactly") {
  RngStream rng(1);
  for (int k = 0; k < 200; ++k) {
    double v = (rng.next_unit() - 0.5) * std::pow(10.0, double(rng.next_below(30)) - 15.0);
    CHECK(std::stod(format_sci(v)) == v);
  }
}

TEST_CASE("verdict names round trip") {
  for (Verdict v : {Verdict::two_sided_limit_shadowed, Verdict::limit_shadowed,
                    Verdict::negative_limit_shadowed, Verdict::eps_shadowed})
    CHECK(verdict_from_name(verdict_name(v)) == v);
  CHECK_THROWS_AS(verdict_from_name("nope"), Error);
}
