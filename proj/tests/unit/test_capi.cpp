// Copyright 2026 The rotovort Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "rotovort/rotovort.h"

extern "C" int rv_test_c_lifecycle(void);

TEST_CASE("the header compiles as C and a field lifecycle works from C") { CHECK(rv_test_c_lifecycle() == 0); }

TEST_CASE("status names and version") {
  CHECK(std::string(rv_status_name(RV_OK)) == "ok");
  CHECK(std::string(rv_status_name(RV_ERR_UNBOUNDED)) == "unbounded");
  CHECK(std::string(rv_version()).size() > 0);
}

TEST_CASE("errors carry a status and a thread-local message") {
  double a = 0.0;
  CHECK(rv_scattering_hard_core(0.5, &a) == RV_OK);
  CHECK(a == 0.5);
  CHECK(std::string(rv_last_error()).empty());
  CHECK(rv_scattering_square_barrier(8.0, 1.0, 0.5, 1000, &a) == RV_ERR_RANGE);
  CHECK(a == 0.5);
  const std::string msg = rv_last_error();
  CHECK(!msg.empty());
  std::string other = "unset";
  std::thread([&] { other = rv_last_error(); }).join();
  CHECK(other.empty());
  CHECK(rv_scattering_square_barrier(8.0, 1.0, 3.0, 100000, &a) == RV_OK);
  CHECK(a == doctest::Approx(1.0 - std::tanh(2.0) / 2.0).epsilon(1e-8));
  CHECK(std::string(rv_last_error()).empty());
}

TEST_CASE("null pointers are rejected") {
  CHECK(rv_scattering_hard_core(0.5, nullptr) == RV_ERR_NULL);
  CHECK(rv_tf2d_flat(0.1, 1.0, nullptr) == RV_ERR_NULL);
  CHECK(rv_tf3d_solve(nullptr, 1.0, 0.0, nullptr) == RV_ERR_NULL);
  rv_energy e;
  CHECK(rv_field_energy(nullptr, &e) == RV_ERR_NULL);
  CHECK(rv_field_create(0.1, 0.0, 16, 32, RV_INIT_CONSTANT, 0, nullptr) == RV_ERR_NULL);
  rv_field_destroy(nullptr);
  rv_lattice_destroy(nullptr);
  rv_trial_destroy(nullptr);
}

TEST_CASE("status codes follow the error kind") {
  rv_tf2d tf;
  CHECK(rv_tf2d_flat(-1.0, 0.0, &tf) == RV_ERR_ARGUMENT);
  rv_harmonic h;
  CHECK(rv_harmonic_estimates(1.0, 2.0, 1e3, 1e-3, 0, 0, &h) == RV_ERR_UNBOUNDED);
  rv_trap3d an{RV_TRAP_ANISOTROPIC, 1.0, 1.0, 2.0, 1.0, 4.0};
  rv_giant3d g3;
  CHECK(rv_giant_vortex_energy_3d(&an, 10.0, 1.0, 0, 0, &g3) == RV_ERR_UNSUPPORTED);
  rv_lattice* l = nullptr;
  CHECK(rv_lattice_build(0.5, 0.5, 0.6, RV_LATTICE_TRIANGULAR, 0.0, &l) == RV_ERR_DEGENERATE);
  CHECK(l == nullptr);
  rv_field* f = nullptr;
  REQUIRE(rv_field_create(0.1, 1.0, 16, 32, RV_INIT_CONSTANT, 0, &f) == RV_OK);
  std::vector<double> v(2 * 16 * 32, 0.0);
  v[7] = std::nan("");
  CHECK(rv_field_set_values(f, v.data(), v.size()) == RV_OK);
  rv_energy e;
  CHECK(rv_field_energy(f, &e) == RV_ERR_NUMERIC);
  CHECK(rv_field_set_values(f, v.data(), v.size() - 2) == RV_ERR_ARGUMENT);
  rv_field_destroy(f);
}

TEST_CASE("short buffers report the needed size") {
  rv_lattice* l = nullptr;
  REQUIRE(rv_lattice_build(40.0, 0.0, 1.0, RV_LATTICE_TRIANGULAR, 0.05, &l) == RV_OK);
  size_t count = 0;
  double spacing = 0.0, area = 0.0;
  REQUIRE(rv_lattice_info(l, &count, &spacing, &area) == RV_OK);
  CHECK(spacing == doctest::Approx(std::sqrt(4.0 * M_PI / (std::sqrt(3.0) * 40.0))).epsilon(1e-12));
  std::vector<double> xy(2 * count);
  CHECK(rv_lattice_points(l, xy.data(), xy.size() - 1) == RV_ERR_BUFFER);
  CHECK(rv_lattice_points(l, xy.data(), xy.size()) == RV_OK);

  rv_trial* t = nullptr;
  REQUIRE(rv_trial_lattice(0.05, 40.0, l, 0.05, &t) == RV_OK);
  rv_field* f = nullptr;
  REQUIRE(rv_trial_sample(t, 128, 512, &f) == RV_OK);
  rv_vortex few[2];
  size_t found = 0;
  int total = 0;
  CHECK(rv_field_census(f, 0.05, -1.0, few, 2, &found, &total) == RV_ERR_BUFFER);
  CHECK(found == count);
  CHECK(rv_field_census(f, 0.05, -1.0, nullptr, 0, &found, &total) == RV_OK);
  std::vector<rv_vortex> all(found);
  CHECK(rv_field_census(f, 0.05, -1.0, all.data(), all.size(), &found, &total) == RV_OK);
  CHECK(total == static_cast<int>(found));
  rv_field_destroy(f);
  rv_trial_destroy(t);
  rv_lattice_destroy(l);
}

TEST_CASE("field handles: clone, gradient, residual, minimize") {
  rv_field* f = nullptr;
  REQUIRE(rv_field_create(0.1, 8.0, 32, 64, RV_INIT_TF_PHASE_NOISE, 5, &f) == RV_OK);
  rv_field* g = nullptr;
  REQUIRE(rv_field_clone(f, &g) == RV_OK);
  rv_minimize_options o;
  rv_minimize_defaults(&o);
  o.max_iters = 300;
  rv_minimize_report rep;
  REQUIRE(rv_field_minimize(g, &o, &rep) == RV_OK);
  CHECK(rep.monotone);
  rv_energy e0, e1;
  REQUIRE(rv_field_energy(f, &e0) == RV_OK);
  REQUIRE(rv_field_energy(g, &e1) == RV_OK);
  CHECK(e1.total < e0.total);
  CHECK(e1.total == doctest::Approx(rep.energy).epsilon(1e-12));
  std::vector<double> grad(2 * 32 * 64);
  CHECK(rv_field_gradient(g, grad.data(), grad.size()) == RV_OK);
  CHECK(rv_field_gradient(g, grad.data(), 10) == RV_ERR_BUFFER);
  double mu = 0, res = 0, lhs = 0, rhs = 0;
  int holds = 0;
  CHECK(rv_field_residual(g, &mu, &res) == RV_OK);
  CHECK(mu > 0.0);
  CHECK(rv_field_diamagnetic(f, &lhs, &rhs, &holds) == RV_OK);
  CHECK(holds == 1);
  CHECK(rv_field_set_rotation(g, 0.0) == RV_OK);
  CHECK(rv_field_set_rotation(g, -1.0) == RV_ERR_ARGUMENT);
  rv_field_destroy(f);
  rv_field_destroy(g);
}

TEST_CASE("closed-form entry points") {
  rv_gas_params p;
  REQUIRE(rv_derive_params(1.0 / (4.0 * M_PI), 100.0, 1.0, 2.0, &p) == RV_OK);
  CHECK(p.epsilon == doctest::Approx(0.1));
  CHECK(p.Omega == 2.0);
  CHECK(rv_omega_hole() == doctest::Approx(4.0 / std::sqrt(M_PI)));
  rv_tf2d tf;
  REQUIRE(rv_tf2d_flat(0.1, 10.0, &tf) == RV_OK);
  CHECK(tf.mu == doctest::Approx(200.0 / M_PI - 12.5));
  CHECK(tf.support == RV_SUPPORT_DISC);
  rv_scaling sc;
  REQUIRE(rv_scaling_map(1e4, 1e3, 4.0, 0.0, 0.0, &sc) == RV_OK);
  CHECK(sc.regime == RV_REGIME_ULTRARAPID);
  CHECK(std::string(rv_regime_name(sc.regime)) == "ultrarapid");
  rv_trap3d q{RV_TRAP_RADIAL_Z, 1.0, 1.0, 1.0, 1.0, 4.0};
  rv_ultrarapid u;
  REQUIRE(rv_ultrarapid_limit(&q, &u) == RV_OK);
  CHECK(u.is_circle == 1);
  CHECK(u.w_min == doctest::Approx(-1.0 / 64.0));
  const double gam[3] = {1e-1, 1e-2, 1e-3};
  double en[3], wmin = 0.0;
  int mono = 0, bounded = 0;
  REQUIRE(rv_tf_gamma_limit(&q, gam, 3, en, &wmin, &mono, &bounded) == RV_OK);
  CHECK(mono == 1);
  CHECK(bounded == 1);
  rv_asymptotics as;
  REQUIRE(rv_predict_asymptotics(0.01, 200.0, &as) == RV_OK);
  CHECK(as.regime == RV_ASYMPT_LATTICE_A);
  CHECK(std::string(rv_asymptotic_regime_name(as.regime)).size() > 0);
  rv_harmonic h;
  REQUIRE(rv_harmonic_estimates(1.0, 0.99 * std::sqrt(2.0), 1e6, 1e-3, 0, 0, &h) == RV_OK);
  CHECK(h.flag == RV_FLAG_GP);
  CHECK(std::string(rv_regime_flag_name(h.flag)) == "gp_expected");
  double closed = 0, quad = 0;
  REQUIRE(rv_cell_energy(0.01, 100.0, &closed, &quad) == RV_OK);
  CHECK(std::abs(closed - quad) < 1e-10);
}
