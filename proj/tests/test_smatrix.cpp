#include "test_util.hpp"

using namespace qab;
using namespace testutil;

TEST_CASE("S is unique at generic points and intertwines all generators") {
  const auto p = generic_params();
  for (auto [M1, M2] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    CAPTURE(M1);
    CAPTURE(M2);
    const auto k1 = generic_point(M1, 0), k2 = generic_point(M2, 1);
    const auto S = solve_intertwiner(k1, k2, p);
    CHECK(S.null_dim == 1);
    CHECK(S.op.rows() == 16 * M1 * M2);
    CHECK(S.intertwining_residual < 1e-10);
    CHECK(rel(S.op(0, 0), 1.0) < 1e-15);
  }
}

TEST_CASE("Cartan conditions alone force the weight zero pattern") {
  const auto p = generic_params();
  const auto r1 = build_representation(generic_point(1, 0), p);
  const auto r2 = build_representation(generic_point(2, 1), p);
  const auto d = coproduct_representation(r1, r2);
  const auto pattern = weight_pattern(d.weights, d.weights);
  for (const auto& [i, j] : pattern) CHECK(d.weights[i] == d.weights[j]);
  const int n = d.dim();
  CHECK(static_cast<int>(pattern.size()) < n * n);
  const auto S = solve_intertwiner(generic_point(1, 0), generic_point(2, 1), p);
  std::vector<std::vector<bool>> allowed(n, std::vector<bool>(n, false));
  for (const auto& [i, j] : pattern) allowed[i][j] = true;
  double outside = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!allowed[i][j]) outside = std::max(outside, std::abs(S.op(i, j)));
  CHECK(outside == 0.0);
}

TEST_CASE("dropping the affine generators relaxes the S conditions from M = 2 on") {
  const auto p = generic_params();
  const auto r1 = build_representation(generic_point(2, 0), p);
  const auto r2 = build_representation(generic_point(2, 1), p);
  CHECK(s_matrix_nullspace(r1, r2, true).dim == 1);
  CHECK(s_matrix_nullspace(r1, r2, false).dim > 1);
}

TEST_CASE("Yang-Baxter equation") {
  const auto p = generic_params();
  CHECK(ybe_residual(generic_point(1, 0), generic_point(1, 1), generic_point(1, 2), p) < 1e-8);
  CHECK(ybe_residual(generic_point(2, 0), generic_point(1, 1), generic_point(1, 2), p) < 1e-8);
}

TEST_CASE("reflecting both legs twice returns S") {
  const auto p = generic_params();
  const auto k1 = generic_point(1, 0), k2 = generic_point(2, 1);
  const auto S = solve_intertwiner(k1, k2, p);
  const auto S2 = s_at(reflect_kinematics(k1, p), reflect_kinematics(k2, p), true, true, p);
  CHECK(relative_residual<double>(S2.op, S.op) < 1e-10);
  const auto Sr = s_at(k1, k2, false, true, p);
  CHECK(rel(Sr.kin2.z * k2.z, 1.0) < 1e-12);
}

TEST_CASE("coinciding kinematics: S is the graded permutation, YBE flags the point") {
  const auto p = generic_params();
  const auto k = generic_point(1, 0);
  const auto S = solve_intertwiner(k, k, p);
  const Parity par = build_basis(1).parity;
  CHECK(relative_residual<double>(S.op, graded_permutation<double>(par, par)) < 1e-10);
  CHECK_THROWS_AS(ybe_residual(generic_point(1, 1), k, k, p), DegenerateKinematics);
}
