#include "oracle_values.hpp"
#include "test_util.hpp"

using namespace qab;
using namespace testutil;

namespace {

ModelParams<double> twisted_params() {
  return make_params<double>({1.3, 0.2}, {0.7, 0.1}, {0.6, 0.8}, {0.9, 0.3}, {1.1, 0.3}, {0.8, -0.2});
}

void check_coefficients(const std::vector<Complex<double>>& got, const std::vector<std::complex<double>>& want,
                        double tol) {
  REQUIRE(got.size() >= want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    CAPTURE(i);
    CHECK(rel(got[i], want[i]) < tol);
  }
}

}  // namespace

TEST_CASE("closed-form coefficients match the mpmath oracle") {
  const auto p = twisted_params();
  const auto k2 = kinematics_from_x_minus<double>(2, {0.8, 0.6}, p);
  const auto K2 = closed_form_kmatrix(k2, p);
  CHECK(rel(k2.z, oracle::kmatrix_M2_z) < 1e-13);
  check_coefficients(K2.A, oracle::kmatrix_M2_A, 1e-12);
  check_coefficients(K2.B, oracle::kmatrix_M2_B, 1e-12);
  check_coefficients(K2.C, oracle::kmatrix_M2_C, 1e-12);
  check_coefficients(K2.D, oracle::kmatrix_M2_D, 1e-12);
  check_coefficients(K2.E, oracle::kmatrix_M2_E, 1e-12);
  const auto k3 = kinematics_from_x_minus<double>(3, {0.8, 0.6}, p);
  const auto K3 = closed_form_kmatrix(k3, p);
  check_coefficients(K3.A, oracle::kmatrix_M3_A, 1e-12);
  check_coefficients(K3.B, oracle::kmatrix_M3_B, 1e-12);
  check_coefficients(K3.C, oracle::kmatrix_M3_C, 1e-12);
  check_coefficients(K3.D, oracle::kmatrix_M3_D, 1e-12);
  check_coefficients(K3.E, oracle::kmatrix_M3_E, 1e-12);
}

TEST_CASE("C_k recursion and normalization") {
  const auto p = twisted_params();
  for (int M = 1; M <= 4; ++M) {
    const auto k = kinematics_from_x_minus<double>(M, {0.8, 0.6}, p);
    const auto C = c_coefficients(k, p);
    REQUIRE(static_cast<int>(C.size()) == M);
    CHECK(rel(C[0], p.gamma_bar / p.gamma) < 1e-15);
    const auto q = p.q;
    for (int n = 1; n < M; ++n) {
      const auto ratio = (ipow(q, M) - ipow(q, 2 * n) / k.z) / (ipow(q, M) - ipow(q, 2 * n) * k.z);
      CHECK(rel(C[n] / C[n - 1], ratio) < 1e-13);
    }
    const auto K = closed_form_kmatrix(k, p);
    const auto ref = reflect_kinematics(k, p);
    CHECK(rel(K.A[0], 1.0) < 1e-14);
    CHECK(rel(K.A[M], -k.gamma * C[M - 1] / (k.z * k.U * k.U * ref.gamma)) < 1e-12);
    if (M == 1) CHECK(rel(K.A[1] / K.A[0], -1.0 / (k.z * k.U * k.U)) < 1e-12);
  }
}

TEST_CASE("label form and explicit x form agree") {
  const auto p = twisted_params();
  for (int M = 1; M <= 4; ++M) {
    const auto k = kinematics_from_x_minus<double>(M, {0.8, 0.6}, p);
    CHECK(relative_residual<double>(explicit_kmatrix(k, p).op, closed_form_kmatrix(k, p).op) < 1e-12);
  }
}

TEST_CASE("fundamental K is the M = 1 closed form") {
  const auto p = twisted_params();
  const auto k = kinematics_from_x_minus<double>(1, {0.8, 0.6}, p);
  const auto K = fundamental_kmatrix(k, p);
  CHECK(relative_residual<double>(K.op, closed_form_kmatrix(k, p).op) < 1e-12);
  CHECK(off_diagonal_residual<double>(K.op) == 0.0);
}

TEST_CASE("boundary intertwiner null space reproduces the closed form") {
  const auto p = twisted_params();
  for (int M = 1; M <= 3; ++M) {
    CAPTURE(M);
    const auto k = kinematics_from_x_minus<double>(M, {0.8, 0.6}, p);
    CHECK(boundary_nullspace(k, p).dim == 1);
    CHECK(relative_residual<double>(solve_boundary_intertwiner(k, p), closed_form_kmatrix(k, p).op) < 1e-9);
  }
}

TEST_CASE("twisted charges are what fix K for M >= 2") {
  const auto p = twisted_params();
  for (int M = 2; M <= 3; ++M) {
    const auto k = kinematics_from_x_minus<double>(M, {0.8, 0.6}, p);
    CHECK(boundary_nullspace(k, p, false).dim >= 2);
  }
}

TEST_CASE("invariance of the closed form and the broken E1 control") {
  const auto p = twisted_params();
  for (int M = 1; M <= 3; ++M) {
    const auto k = kinematics_from_x_minus<double>(M, {0.8, 0.6}, p);
    const auto checks = invariance_residual(closed_form_kmatrix(k, p).op, k, p);
    CHECK(all_pass(checks));
    bool saw_control = false;
    for (const auto& c : checks)
      if (c.name.find("E1") != std::string::npos) {
        saw_control = true;
        CHECK(c.residual > 1e-3);
      }
    CHECK(saw_control);
  }
}

TEST_CASE("unitarity and the fermionic block") {
  const auto p = twisted_params();
  for (int M = 1; M <= 3; ++M) {
    const auto k = kinematics_from_x_minus<double>(M, {0.8, 0.6}, p);
    CHECK(unitarity_residual(k, p) < 1e-9);
    const auto C = c_coefficients(k, p);
    const auto Cr = c_coefficients(reflect_kinematics(k, p), p);
    for (int n = 0; n < M; ++n) CHECK(rel(C[n] * Cr[n], 1.0) < 1e-12);
  }
}

TEST_CASE("C_k covariance") {
  const auto p = twisted_params();
  for (int M = 2; M <= 4; ++M) {
    const auto k = kinematics_from_x_minus<double>(M, {0.8, 0.6}, p);
    CHECK(ck_symmetry_residual(k, p) < 1e-10);
  }
  // M = 2, k = 0 by hand: C_0 + z C_1 = 0
  const auto k = kinematics_from_x_minus<double>(2, {0.8, 0.6}, p);
  const auto C = c_coefficients(k, p);
  CHECK(std::abs(C[0] + k.z * C[1]) < 1e-12 * std::abs(C[0]));
}

TEST_CASE("reflection equation and the trivial C_k control") {
  const auto p = generic_params();
  for (auto [M1, M2] : {std::pair{1, 1}, {1, 2}, {2, 1}}) {
    const auto k1 = generic_point(M1, 0), k2 = generic_point(M2, 1);
    CHECK(boundary_ybe_residual(k1, k2, p) < 1e-8);
    if (std::max(M1, M2) >= 2) CHECK(boundary_ybe_residual(k1, k2, p, CkVariant::Trivial) > 1e-2);
  }
}

TEST_CASE("rational coefficients match the mpmath oracle") {
  const Complex<double> xm{0.8, 0.5}, xp = oracle::rational_x_plus;
  const Complex<double> gam = std::sqrt(Complex<double>(0, 1) * (xm - xp));
  const auto R = rational_limit_kmatrix<double>(xp, xm, {0.5, 0}, {0, 1}, gam, gam, 3);
  check_coefficients(R.A, oracle::rational_A, 1e-12);
  check_coefficients(R.B, oracle::rational_B, 1e-12);
  check_coefficients(R.C, oracle::rational_C, 1e-12);
  check_coefficients(R.D, oracle::rational_D, 1e-12);
  check_coefficients(R.E, oracle::rational_E, 1e-12);
  CHECK(rel(spectral_u(xp, xm), oracle::rational_u) < 1e-13);
}

TEST_CASE("deformed coefficients converge linearly to the rational ones") {
  const auto p = make_params<double>({1.0, 0.0}, {0.5, 0.0});
  for (int M = 1; M <= 3; ++M) {
    const auto a = rational_limit_error<double>(M, {0.8, 0.5}, 1e-3, p);
    const auto b = rational_limit_error<double>(M, {0.8, 0.5}, 1e-4, p);
    CHECK(a.coefficient_error < 10 * a.eps);
    CHECK(b.coefficient_error < 10 * b.eps);
    CHECK(std::log10(a.coefficient_error / b.coefficient_error) == doctest::Approx(1.0).epsilon(0.1));
    CHECK(b.u_error < 10 * b.eps);
    if (M == 1) CHECK(b.fundamental_error < 10 * b.eps);
  }
}

TEST_CASE("closed form agrees in high precision") {
  PrecisionScope scope(128);
  const auto pd = twisted_params();
  const auto p = make_params<HighReal>(to_complex<HighReal>(to_double(pd.q)), to_complex<HighReal>(to_double(pd.g)),
                                       to_complex<HighReal>({0.6, 0.8}), to_complex<HighReal>({0.9, 0.3}),
                                       to_complex<HighReal>({1.1, 0.3}), to_complex<HighReal>({0.8, -0.2}));
  const auto k = kinematics_from_x_minus<HighReal>(2, to_complex<HighReal>({0.8, 0.6}), p);
  const auto K = closed_form_kmatrix(k, p);
  for (std::size_t i = 0; i < oracle::kmatrix_M2_A.size(); ++i)
    CHECK(rel(to_double(K.A[i]), oracle::kmatrix_M2_A[i]) < 1e-15);
  CHECK(unitarity_residual(k, p) < 1e-30);
}
