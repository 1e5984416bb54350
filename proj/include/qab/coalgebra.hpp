#pragma once

#include "qab/kinematics.hpp"
#include "qab/representation.hpp"

#include <map>
#include <string>
#include <vector>

namespace qab {

/// Parity of the basis of V1 (x) V2, index i1 * dim2 + i2.
Parity tensor_parity(const Parity& p1, const Parity& p2);

/// (A (x) B)(v (x) w) = (-1)^{|B||v|} Av (x) Bw, with p1 the parity of the basis of V1.
template <class T>
GradedOperator<T> graded_tensor(const GradedOperator<T>& a, const GradedOperator<T>& b,
                                const Parity& p1);

/// P(v (x) w) = (-1)^{|v||w|} w (x) v, as a map V1 (x) V2 -> V2 (x) V1.
template <class T>
Matrix<T> graded_permutation(const Parity& p1, const Parity& p2);

/// P as a signed permutation: P e_a = sign[a] e_{target[a]}.
struct SignedPermutation {
  std::vector<int> target;
  std::vector<int> sign;
};

SignedPermutation graded_permutation_map(const Parity& p1, const Parity& p2);

/// P X.
template <class T>
Matrix<T> permute_rows(const SignedPermutation& p, const Matrix<T>& x);

/// P X P^T.
template <class T>
Matrix<T> conjugate(const SignedPermutation& p, const Matrix<T>& x);

/// P^T X P.
template <class T>
Matrix<T> conjugate_transpose(const SignedPermutation& p, const Matrix<T>& x);

/// The one-dimensional boundary module: E = F = 0, K = U = V = 1.
template <class T>
Representation<T> boundary_representation();

/// All generators on V1 (x) V2 through
///   D(E_j) = E_j (x) 1 + K_j^-1 u_j (x) E_j,  D(F_j) = F_j (x) K_j + u_j^-1 (x) F_j,
/// with u_2 = U, u_4 = U^-1 of the first leg and u_1 = u_3 = 1. U and V multiply.
template <class T>
Representation<T> coproduct_representation(const Representation<T>& r1,
                                           const Representation<T>& r2);

/// P^T D_21 P: the opposite coproduct realized on V1 (x) V2.
template <class T>
Representation<T> opposite_coproduct_representation(const Representation<T>& r1,
                                                    const Representation<T>& r2);

template <class T>
GradedOperator<T> coproduct(const Generator& gen, const Kinematics<T>& kin1,
                            const Kinematics<T>& kin2, const ModelParams<T>& params);

template <class T>
GradedOperator<T> opposite_coproduct(const Generator& gen, const Kinematics<T>& kin1,
                                     const Kinematics<T>& kin2, const ModelParams<T>& params);

/// Coproduct whose first leg is the reflected module (kin1 must be reflected kinematics,
/// carrying U^-1). The second leg may be any module, typically the boundary.
template <class T>
GradedOperator<T> reflected_coproduct(const Generator& gen, const Kinematics<T>& reflected_kin1,
                                      const Representation<T>& leg2, const ModelParams<T>& params);

enum class AdSide { Left, Right };

/// Adjoint actions with x_i = E_i, y_i = F_i, t_i = K_i:
///   ad_r E_i (b) = K_i b E_i - s K_i E_i b,   ad_r F_i (b) = b F_i - s F_i K_i^-1 b K_i,
///   ad   E_i (b) = E_i b - s K_i^-1 b K_i E_i, ad F_i (b) = F_i b K_i^-1 - s b F_i K_i^-1,
///   ad_r K_i (b) = K_i b K_i^-1,              ad K_i (b) = K_i^-1 b K_i,
/// with s = (-1)^{[i][b]}.
template <class T>
GradedOperator<T> adjoint_action(AdSide side, const Generator& x, const GradedOperator<T>& b,
                                 const Representation<T>& rep);

template <class T>
struct TwistedCharges {
  GradedOperator<T> Et321, Ft321, Et21, Ft21, Et1, Ft1, C2, C3;
  GradedOperator<T> theta_F4, theta_E4p;  // ad_r E3 ad_r E2 (K1 E1), ad_r F3 ad_r F2 F1
  Complex<T> d_x, d_y;

  /// Name -> charge for the eight coideal charges ("Et321", ..., "C3").
  std::map<std::string, GradedOperator<T>> named() const;
};

template <class T>
Complex<T> twist_d_y(const ModelParams<T>& p) {
  return p.g_tilde / (p.g * p.alpha * p.alpha_tilde);
}

template <class T>
Complex<T> twist_d_x(const ModelParams<T>& p) {
  return -p.alpha * p.alpha_tilde * p.g_tilde / p.g;
}

template <class T>
TwistedCharges<T> twisted_boundary_charges(const Representation<T>& rep,
                                           const ModelParams<T>& params);

/// Residuals of the two displayed coproduct expansions of Et321 and Ft321 on V1 (x) V2,
/// plus group-likeness of K1 K4^-1.
template <class T>
std::vector<Check> coideal_expansion_check(const Kinematics<T>& kin1, const Kinematics<T>& kin2,
                                           const ModelParams<T>& params, double tol = 1e-10);

/// Raising coefficient of Ft1 on |k>^3 and |k>^4:
/// f_k(z) = d_x [M-k-1]_q q^{-M/2-k-1} (q^M - q^{2k+2} z) / V.
template <class T>
Complex<T> raising_coefficient(int k, const Complex<T>& z, const Kinematics<T>& kin,
                               const ModelParams<T>& params);

struct YangianProbeRow {
  double eps;
  std::map<std::string, double> step_difference;  // ||X(eps_prev) - X(eps)||_F
};

struct YangianProbe {
  int M;
  std::vector<YangianProbeRow> rows;
  std::map<std::string, double> rate;        // fitted exponent of the successive differences
  std::map<std::string, double> limit_norm;  // Frobenius norm at the smallest eps
  std::map<std::string, bool> converges;
};

/// Rescaled twisted charges alpha alpha~ X / (2(q-1)) (E-type and C2) and X / (2 alpha alpha~ (q-1))
/// (F-type and C3) along q = 1 + eps, x- fixed and x+ re-solved on the branch continuing the
/// rational root of largest modulus.
template <class T>
YangianProbe yangian_limit_probe(const std::vector<double>& eps_path, int M,
                                 const Complex<T>& x_minus, const ModelParams<T>& base_params);

}  // namespace qab
