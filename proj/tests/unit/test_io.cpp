#include <doctest.h>

#include "io/json_io.hpp"
#include "qes/qes.hpp"
#include "repro/commands.hpp"
#include "support.hpp"

#include <random>

using namespace sextic;
using sextic::io::Json;
using sextic::repro::Status;

TEST_CASE("reals and complex numbers round-trip bit for bit") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    BigComplex z = testing::random_complex(rng, -1e3, 1e3);
    z.re = z.re / Real(3) * pow(Real(10), Real(static_cast<long>(i % 41) - 20));
    z.im = sqrt(abs(z.im) + Real(i));
    BigComplex back = io::decode_complex(io::encode(z));
    CHECK(back.re == z.re);
    CHECK(back.im == z.im);
  }
  CHECK(io::encode(-Real(0)) == io::encode(Real(0)));
  CHECK_THROWS_AS(io::decode_real(Json::array()), Error);
}

TEST_CASE("potential, configuration and state round-trip") {
  auto s = qes::qes_spectrum({Real(7), Real(0), -1, qes::Branch::MinusL});
  RationalPotential v = RationalPotential::sextic(Real(7), Real(0));
  v.add_pole(BigComplex(Real(1) / Real(3), sqrt(Real(2))), 1);
  Json j = io::potential_to_json(v);
  auto back = io::potential_from_json(j);
  CHECK(back.poly.coeffs() == v.poly.coeffs());
  REQUIRE(back.poles.size() == 1);
  CHECK(back.poles[0].location == v.poles[0].location);
  CHECK(io::dump(io::potential_to_json(back)) == io::dump(j));

  dynamics::DynamicsState st;
  st.points = {{BigComplex(Real(0.25), Real(-1) / Real(7)), 1}, {BigComplex(Real(2)), -1}};
  st.t = Real(1) / Real(9);
  st.phase_f = BigComplex(Real(0.5), Real(1) / Real(11));
  auto st2 = io::state_from_json(io::state_to_json(st));
  CHECK(st2.points[0].z == st.points[0].z);
  CHECK(st2.points[1].gamma == -1);
  CHECK(st2.t == st.t);
  CHECK(st2.phase_f == st.phase_f);

  // Keys come out sorted, so dumps are deterministic.
  std::string d = io::dump(io::spectrum_to_json(s));
  CHECK(d.find("\"M\"") < d.find("\"char_poly\""));
  CHECK(d == io::dump(io::spectrum_to_json(qes::qes_spectrum({Real(7), Real(0), -1, qes::Branch::MinusL}))));
  CHECK_THROWS_AS(io::config_from_json(Json{{"points", Json::array()}}), Error);
}

TEST_CASE("command statuses") {
  auto ok = repro::run_command("qes", Json{{"nu", 11}, {"eps", "minus"}});
  CHECK(ok.status == Status::Ok);
  CHECK(ok.json["M"] == 3);
  CHECK(io::decode_complex(ok.json["eigenpairs"][2]["lambda"]) == BigComplex(8));

  auto none = repro::run_command("qes", Json{{"nu", 2}});
  CHECK(none.status == Status::NoSolutions);
  CHECK(none.message.find("M not a positive integer") != std::string::npos);

  CHECK(repro::run_command("qes", Json{{"nu", 7}, {"branch", "sideways"}}).status == Status::BadInput);
  CHECK(repro::run_command("qes", Json::array()).status == Status::BadInput);
  CHECK(repro::run_command("frobnicate", Json::object()).status == Status::BadInput);
  CHECK(repro::run_command("locus", Json{{"mode", "solve"}}).status == Status::BadInput);

  Json pair{{"nu", "1"},
            {"symmetric", true},
            {"points", Json::array({Json{{"re", "0.85"}}, Json{{"re", "-0.85"}}})}};
  auto stuck = repro::run_command("locus", Json{{"mode", "solve"}, {"config", pair}, {"max_iter", 1}, {"tol", "1e-60"}});
  CHECK(stuck.status == Status::NonConvergence);
  CHECK(stuck.json.contains("config"));
  auto solved = repro::run_command("locus", Json{{"mode", "solve"}, {"config", pair}, {"tol", "1e-60"}});
  CHECK(solved.status == Status::Ok);
  // Oracle: a^4 = 1/2 on this branch.
  BigComplex a = io::decode_complex(solved.json["config"]["points"][0]);
  CHECK(abs(pow(a, 4) - BigComplex(Real(1) / Real(2))) < Real(1e-55));

  auto cont = repro::run_command("locus", Json{{"mode", "continue"}, {"config", pair}, {"nu_end", 2}, {"steps", 2}, {"tol", "1e-50"}});
  CHECK(cont.status == Status::Ok);
  CHECK(std::count(cont.csv.begin(), cont.csv.end(), '\n') == 4);

  auto traj = repro::run_command("dynamics", Json{{"closed_form_nu7", Json{{"c1", 1}, {"c2", 1}}}, {"t_end", 2}});
  CHECK(traj.status == Status::Collision);
  CHECK_FALSE(traj.csv.empty());
  CHECK(traj.json["stop"] == "collision");

  auto fine = repro::run_command("dynamics", Json{{"closed_form_nu7", Json{{"c1", 1}, {"c2", 2}}}, {"t_end", "0.3"}});
  CHECK(fine.status == Status::Ok);
  CHECK(fine.json["conserved"] == true);
  CHECK(fine.json["zero_energy"] == true);
}

TEST_CASE("darboux enumeration through the dispatcher") {
  auto r = repro::run_command("darboux", Json{{"nu", 11}, {"enumerate", true}});
  REQUIRE(r.status == Status::Ok);
  REQUIRE(r.json["descendants"].size() == 8);
  for (const auto& s : r.json["summary"]) CHECK(s["monodromy_free"] == true);
  CHECK(r.json["summary"][7]["subset"] == std::vector<int>{1, 2, 3});
  auto again = repro::run_command("darboux", Json{{"nu", 11}, {"enumerate", true}, {"workers", 1}});
  CHECK(io::dump(again.json) == io::dump(r.json));
}
