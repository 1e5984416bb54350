#include "test_util.hpp"

using namespace qab;
using namespace testutil;

namespace {
double norm(const Matrix<double>& m) { return m.norm(); }
}  // namespace

TEST_CASE("basis block sizes") {
  CHECK(build_basis(1).dim() == 4);
  CHECK(build_basis(1).family_size == std::array<int, 4>{2, 0, 1, 1});
  CHECK(build_basis(2).family_size == std::array<int, 4>{3, 1, 2, 2});
  CHECK(build_basis(3).family_size == std::array<int, 4>{4, 2, 3, 3});
  const auto sp = build_basis(3);
  for (int i = 0; i < sp.dim(); ++i) {
    const auto& s = sp.states[i];
    CHECK(s.m + s.n + s.k + s.l == 3);
    CHECK(sp.index_of(s) == i);
    CHECK(sp.parity[i] == (s.m + s.n) % 2);
  }
}

TEST_CASE("generator action on basis states") {
  const auto p = generic_params();
  const int M = 3;
  const auto k = generic_point(M);
  const auto rep = build_representation(k, p);
  const auto sp = build_basis(M);
  const auto& a = k.labels.a;
  for (int i = 0; i < sp.dim(); ++i) {
    const auto s = sp.states[i];
    // E1 annihilates k = 0
    if (s.k == 0) CHECK(rep.E[0].col(i).norm() < 1e-15);
    // K1 eigenvalue q^{l-k}
    CHECK(rel(rep.K[0](i, i), ipow(p.q, s.l - s.k)) < 1e-14);
    // E2 raises n with coefficient a (-1)^m [l]
    if (s.n == 0 && s.l > 0) {
      const int j = sp.index_of({s.m, 1, s.k, s.l - 1});
      const double sign = s.m % 2 ? -1.0 : 1.0;
      CHECK(rel(rep.E[1](j, i), a * sign * q_number(s.l, p.q)) < 1e-14);
    }
  }
}

TEST_CASE("graded commutators on the defining relations") {
  const auto p = generic_params();
  const auto k = generic_point(2);
  const auto rep = build_representation(k, p);
  const auto E1 = rep.op(parse_generator("E1")), F1 = rep.op(parse_generator("F1"));
  const auto E2 = rep.op(parse_generator("E2")), F2 = rep.op(parse_generator("F2"));
  const Matrix<double> K1 = rep.K[0], K2 = rep.K[1];
  const Matrix<double> r11 = (K1 - rep.K_inverse(0)) / (p.q - 1.0 / p.q);
  const Matrix<double> r22 = -(K2 - rep.K_inverse(1)) / (p.q - 1.0 / p.q);
  CHECK(relative_residual<double>(graded_commutator(E1, F1).matrix, r11) < 1e-12);
  CHECK(relative_residual<double>(graded_commutator(E2, F2).matrix, r22) < 1e-12);
  // odd X: [X, X} = 2 X^2, and E2 squares to zero
  CHECK(relative_residual<double>(graded_commutator(E2, E2).matrix, 2.0 * E2.matrix * E2.matrix) < 1e-14);
  CHECK(norm(E2.matrix * E2.matrix) < 1e-14);
  CHECK(parity_violation(E2, rep.parity) == 0.0);
  CHECK(parity_violation(E1, rep.parity) == 0.0);
}

TEST_CASE("K1 K2 K3 K4 = 1") {
  const auto p = generic_params();
  const auto rep = build_representation(generic_point(3), p);
  const Matrix<double> prod = rep.K[0] * rep.K[1] * rep.K[2] * rep.K[3];
  CHECK(relative_residual<double>(prod, identity<double>(12)) < 1e-12);
}

TEST_CASE("all relations hold on bound states M = 1..4") {
  const auto p = generic_params();
  for (int M = 1; M <= 4; ++M)
    for (int i = 0; i < 3; ++i) {
      const auto checks = verify_bound_state(generic_point(M, i), p, 1e-10);
      CHECK(all_pass(checks));
      CHECK(max_residual(checks) < 1e-11);
    }
}

TEST_CASE("composite charges are nested graded commutators") {
  const auto p = generic_params();
  const auto rep = build_representation(generic_point(2), p);
  const auto E1 = rep.op(parse_generator("E1")), E2 = rep.op(parse_generator("E2")),
             E3 = rep.op(parse_generator("E3"));
  const auto direct = graded_commutator(E3, graded_commutator(E2, E1));
  CHECK(relative_residual<double>(composite_charge("E321", rep).matrix, direct.matrix) < 1e-15);
  CHECK(composite_charge("E321", rep).parity == 1);
  CHECK_THROWS(parse_generator("G1"));
  CHECK(parse_generator("F4").name() == "F4");
}

TEST_CASE("a broken relation is detected") {
  const auto p = generic_params();
  auto rep = build_representation(generic_point(2), p);
  rep.E[1] *= 1.01;
  CHECK_FALSE(all_pass(verify_algebra(rep, p)));
}
