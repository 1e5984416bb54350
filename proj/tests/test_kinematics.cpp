#include "oracle_values.hpp"
#include "test_util.hpp"

using namespace qab;
using namespace testutil;

TEST_CASE("couplings at q = 1 reduce to xi = 0, g~ = g") {
  const auto c = derive_couplings<double>({1.0, 0.0}, {0.7, 0.0});
  CHECK(std::abs(c.xi) == doctest::Approx(0.0));
  CHECK(rel(c.g_tilde, {0.7, 0.0}) < 1e-15);
}

TEST_CASE("couplings match the mpmath oracle") {
  const auto c = derive_couplings<double>({1.2, 0.0}, {0.5, 0.0});
  CHECK(rel(c.g_tilde, oracle::couplings_g_tilde) < 1e-14);
  CHECK(rel(c.xi, oracle::couplings_xi) < 1e-14);
}

TEST_CASE("singular coupling is rejected") {
  // g (q - 1/q) = 1 with q = 2: g = 2/3
  CHECK_THROWS_AS(derive_couplings<double>({2.0, 0.0}, {2.0 / 3.0, 0.0}), QabError);
}

TEST_CASE("shortening roots match the oracle and satisfy the constraint") {
  const auto p = make_params<double>({1.1, 0.0}, {0.4, 0.0});
  const auto r = solve_shortening<double>({2.0, 1.0}, 1, p);
  CHECK(rel(r.roots[0], oracle::shortening_roots[0]) < 1e-13);
  CHECK(rel(r.roots[1], oracle::shortening_roots[1]) < 1e-13);
  for (const auto& x : r.roots) CHECK(shortening_residual<double>(x, {2.0, 1.0}, 1, p) < 1e-12);
}

TEST_CASE("shortening at q = 1 is the undeformed mass shell") {
  const auto p = make_params<double>({1.0, 0.0}, {0.5, 0.0});
  const Complex<double> xm{0.8, 0.5};
  const auto r = solve_shortening(xm, 1, p);
  const Complex<double> expect = xm + 1.0 / xm + Complex<double>(0, 1) / 0.5;
  CHECK(rel(r.roots[0] + 1.0 / r.roots[0], expect) < 1e-14);
}

TEST_CASE("central elements and labels match the oracle") {
  const auto p = make_params<double>({1.05, 0.0}, {0.6, 0.0});
  const auto k = kinematics_from_x_minus<double>(2, {1.3, 0.4}, p);
  CHECK(rel(k.x_plus, oracle::central_x_plus) < 1e-13);
  CHECK(rel(k.U, oracle::central_U) < 1e-13);
  CHECK(rel(k.V, oracle::central_V) < 1e-13);
  CHECK(rel(k.z, oracle::central_z) < 1e-12);
  const Complex<double> got[] = {k.labels.a, k.labels.b, k.labels.c, k.labels.d};
  for (int i = 0; i < 4; ++i) CHECK(rel(got[i], oracle::central_labels[i]) < 1e-13);
}

TEST_CASE("z from x+ and x- agree and labels obey their constraints") {
  const auto p = generic_params();
  for (int M = 1; M <= 4; ++M) {
    const auto k = generic_point(M);
    const auto ce = central_elements(k.x_plus, k.x_minus, M, p);
    CHECK(ce.z_consistency < 1e-12);
    CHECK(ce.z_uv_consistency < 1e-12);
    CHECK(label_constraints(k, p).max() < 1e-12);
    CHECK(label_constraints(k, p, true).max() < 1e-12);
  }
}

TEST_CASE("reflection inverts z and is an involution") {
  const auto p = generic_params();
  for (int M = 1; M <= 3; ++M) {
    const auto k = generic_point(M, 1);
    const auto r = reflect_kinematics(k, p);
    CHECK(rel(r.z * k.z, 1.0) < 1e-12);
    CHECK(shortening_residual(r.x_plus, r.x_minus, M, p) < 1e-12);
    const auto rr = reflect_kinematics(r, p);
    CHECK(rel(rr.x_plus, k.x_plus) < 1e-12);
    CHECK(rel(rr.x_minus, k.x_minus) < 1e-12);
    CHECK(reflected_label_matrix_residual(k, r) < 1e-12);
  }
}

TEST_CASE("reflection at q = 1 sends x+- to -x-+") {
  const auto p = make_params<double>({1.0, 0.0}, {0.5, 0.0});
  const auto k = kinematics_from_x_minus<double>(2, {0.8, 0.5}, p);
  const auto r = reflect_kinematics(k, p);
  CHECK(rel(r.x_plus, -k.x_minus) < 1e-15);
  CHECK(rel(r.x_minus, -k.x_plus) < 1e-15);
}

TEST_CASE("affine labels approach the rotated bulk labels as q -> 1") {
  const Complex<double> alpha{0.6, 0.8}, at{0.9, 0.3};
  const auto p = make_params<double>({1.0 + 1e-7, 0.0}, {0.5, 0.0}, alpha, at);
  const auto k = kinematics_from_x_minus<double>(2, {0.8, 0.5}, p);
  const auto& l = k.labels;
  const auto& a = k.affine;
  const Complex<double> aa = alpha * at;
  CHECK(rel(a.a, aa * l.c) < 1e-6);
  CHECK(rel(a.b, aa * l.d) < 1e-6);
  CHECK(rel(a.c, -l.a / aa) < 1e-6);
  CHECK(rel(a.d, -l.b / aa) < 1e-6);
}

TEST_CASE("roots of unity are rejected") {
  const auto p = make_params<double>(std::polar(1.0, M_PI / 3), {0.5, 0.0});
  CHECK_THROWS_AS(require_generic_q(p, 2), QabError);
}

TEST_CASE("high precision reproduces the double results") {
  PrecisionScope scope(160);
  const auto p = make_params<HighReal>(to_complex<HighReal>({1.05, 0.0}), to_complex<HighReal>({0.6, 0.0}));
  const auto k = kinematics_from_x_minus<HighReal>(2, to_complex<HighReal>({1.3, 0.4}), p);
  CHECK(rel(to_double(k.z), oracle::central_z) < 1e-15);
  CHECK(shortening_residual(k.x_plus, k.x_minus, 2, p) < 1e-40);
}
