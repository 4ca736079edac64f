#include <catch_amalgamated.hpp>

#include <numbers>

#include "lowphy/bench.hpp"
#include "lowphy/input_gen.hpp"
#include "lowphy/steering.hpp"
#include "oracles.hpp"

using namespace lowphy;

TEST_CASE("steering vector closed forms") {
  // broadside: all ones, any spacing
  for (const cx& v : steering_vector_ref(6, 0.73, 0.0)) CHECK(v == cx(1.0, 0.0));

  // half-wavelength spacing at endfire alternates sign
  const std::vector<cx> alt = steering_vector_ref(4, 0.5, std::numbers::pi / 2.0);
  const std::vector<cx> want{1.0, -1.0, 1.0, -1.0};
  CHECK(oracles::rel_l2(alt, want) < 1e-12);

  const std::vector<cx> single = steering_vector_ref(1, 0.5, 0.4);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == cx(1.0, 0.0));
}

TEST_CASE("steering vector elements are unit modulus") {
  SplitMix64 rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    const double angle = 1.5 * rng.uniform_pm1();
    const double spacing = 0.25 + rng.uniform01();
    for (const cx& v : steering_vector_ref(16, spacing, angle))
      CHECK(std::abs(std::abs(v) - 1.0) <= 1e-12);
  }
}

TEST_CASE("steered channel closed forms") {
  SteeringArrayConfig broadside;
  broadside.num_antennas = 5;
  broadside.users = {UserPaths{{PathComponent{0.0, 1.0}}}};
  const ComplexMatrix h = build_steered_channel_ref(broadside);
  for (std::size_t m = 0; m < 5; ++m) CHECK(h(0, m) == cx(1.0, 0.0));

  // conjugate path pair: imaginary parts cancel, row = 2 cos(pi m sin(theta))
  const double theta = 0.35;
  SteeringArrayConfig pair;
  pair.num_antennas = 8;
  pair.users = {UserPaths{{PathComponent{theta, 1.0}, PathComponent{-theta, 1.0}}}};
  const ComplexMatrix hp = build_steered_channel_ref(pair);
  for (std::size_t m = 0; m < 8; ++m) {
    const double want =
        2.0 * std::cos(std::numbers::pi * static_cast<double>(m) * std::sin(theta));
    CHECK(std::abs(hp(0, m) - cx(want, 0.0)) < 1e-12);
  }
}

TEST_CASE("steered channel matches a direct summation oracle") {
  const SteeringArrayConfig cfg = make_beam_config(42, 16);
  const ComplexMatrix h = build_steered_channel_ref(cfg);
  for (std::size_t u = 0; u < cfg.users.size(); ++u)
    for (std::size_t m = 0; m < cfg.num_antennas; ++m) {
      cx want = 0.0;
      for (const PathComponent& p : cfg.users[u].paths) {
        const double phase = -2.0 * std::numbers::pi * cfg.spacing_wavelengths *
                             static_cast<double>(m) * std::sin(p.angle_rad);
        want += p.gain * std::polar(1.0, phase);
      }
      CHECK(std::abs(h(u, m) - want) < 1e-12);
    }
}

TEST_CASE("config validation") {
  SteeringArrayConfig cfg;
  cfg.num_antennas = 0;
  cfg.users = {UserPaths{{PathComponent{0.0, 1.0}}}};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg.num_antennas = 4;
  cfg.spacing_wavelengths = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg.spacing_wavelengths = 0.5;
  cfg.users = {UserPaths{}};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg.users = {UserPaths{{PathComponent{2.0, 1.0}}}};  // angle out of range
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg.users = {UserPaths{{PathComponent{0.5, 1.0}}}};
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("broadside single user: amplitude 1/M, phase 0") {
  SteeringArrayConfig cfg;
  cfg.num_antennas = 8;
  cfg.users = {UserPaths{{PathComponent{0.0, 1.0}}}};
  const BeamWeights bw = beam_weights_ref(build_steered_channel_ref(cfg));
  REQUIRE(bw.users.size() == 1);
  REQUIRE(bw.users[0].size() == 8);
  for (const AntennaWeight& w : bw.users[0]) {
    CHECK(std::abs(w.amplitude - 0.125) <= 1e-12);
    CHECK(std::abs(w.phase_rad) <= 1e-12);
  }
}

TEST_CASE("identity channel: on-diagonal weight 1, off-diagonal 0") {
  const BeamWeights bw = beam_weights_ref(ComplexMatrix::identity(4));
  for (std::size_t u = 0; u < 4; ++u)
    for (std::size_t m = 0; m < 4; ++m) {
      if (m == u) {
        CHECK(std::abs(bw.users[u][m].amplitude - 1.0) <= 1e-12);
        CHECK(std::abs(bw.users[u][m].phase_rad) <= 1e-12);
      } else {
        CHECK(bw.users[u][m].amplitude <= 1e-12);
      }
    }
}

TEST_CASE("random two-user weights reconstruct a zero-forcing precoder") {
  SteeringArrayConfig cfg;
  cfg.num_antennas = 16;
  SplitMix64 rng(89);
  cfg.users = {UserPaths{{PathComponent{0.5, cx(0.8, 0.3)}}},
               UserPaths{{PathComponent{-0.7, cx(-0.2, 1.1)}}}};
  const ComplexMatrix h = build_steered_channel_ref(cfg);
  const BeamWeights bw = beam_weights_ref(h);
  const ComplexMatrix w = beam_matrix(bw);
  CHECK(frobenius_norm(mat_add(mat_mul(h, w),
                               mat_scale(ComplexMatrix::identity(2), -1.0))) < 1e-8);

  constexpr double pi = std::numbers::pi;
  for (const auto& user : bw.users)
    for (const AntennaWeight& aw : user) {
      CHECK(aw.amplitude >= 0.0);
      CHECK(aw.phase_rad > -pi);
      CHECK(aw.phase_rad <= pi);
    }
}

TEST_CASE("steering vec handles the single-antenna edge") {
  VectorContext ctx(VectorConfig{512, 2});
  const std::vector<cx> one = steering_vector_vec(ctx, 1, 0.5, 0.9);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == cx(1.0, 0.0));
}

TEST_CASE("steering vec variants agree with their references on all presets") {
  const SteeringArrayConfig cfg = make_beam_config(42, 16);
  const ComplexMatrix href = build_steered_channel_ref(cfg);
  const std::vector<cx> aref = steering_vector_ref(16, 0.5, 0.37);
  const BeamWeights bwref = beam_weights_ref(href);
  const ComplexMatrix wref = beam_matrix(bwref);

  for (const VectorConfig& mcfg : default_presets()) {
    VectorContext c1(mcfg);
    CHECK(oracles::rel_l2(steering_vector_vec(c1, 16, 0.5, 0.37), aref) < 1e-9);
    VectorContext c2(mcfg);
    CHECK(oracles::rel_fro(build_steered_channel_vec(c2, cfg), href) < 1e-9);
    CHECK(c2.snapshot().vector_instructions >= 1);
    VectorContext c3(mcfg);
    CHECK(oracles::rel_fro(beam_matrix(beam_weights_vec(c3, href)), wref) < 1e-9);
    CHECK(c3.snapshot().vector_instructions >= 1);
  }
}

TEST_CASE("beam vec ledgers are reproducible") {
  const SteeringArrayConfig cfg = make_beam_config(7, 16);
  VectorContext a(VectorConfig{2048, 4});
  VectorContext b(VectorConfig{2048, 4});
  beam_weights_vec(a, build_steered_channel_vec(a, cfg));
  beam_weights_vec(b, build_steered_channel_vec(b, cfg));
  CHECK(a.snapshot() == b.snapshot());
}
