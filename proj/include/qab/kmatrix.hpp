#pragma once

#include "qab/coalgebra.hpp"
#include "qab/smatrix.hpp"

#include <vector>

namespace qab {

/// Reflection coefficients on the basis |k>^1..4. Arrays are indexed by k = 0..M; entries
/// outside the ranges A,D: 0..M, B,E: 1..M-1, C: 0..M-1 are zero.
template <class T>
struct ReflectionMatrix {
  int M = 0;
  std::vector<Complex<T>> A, B, C, D, E;
  Matrix<T> op;  // maps the incoming module to the reflected one
  Complex<T> z;
  Complex<T> gamma, gamma_bar;
};

/// Which C_k enter the closed form. Trivial keeps C_k = C_0 for every k.
enum class CkVariant { Symmetry, Trivial };

class PoleError : public QabError {
 public:
  using QabError::QabError;
};

/// C_k = C_0 prod_{n=1..k} (q^M - q^{2n}/z)/(q^M - q^{2n} z), C_0 = gamma_bar/gamma (A_0 = 1).
template <class T>
std::vector<Complex<T>> c_coefficients(const Kinematics<T>& kin, const ModelParams<T>& params,
                                       double pole_tol = 1e-6);

/// Places the coefficient arrays into a 4M x 4M matrix.
template <class T>
Matrix<T> assemble_kmatrix(int M, const std::vector<Complex<T>>& A, const std::vector<Complex<T>>& B,
                           const std::vector<Complex<T>>& C, const std::vector<Complex<T>>& D,
                           const std::vector<Complex<T>>& E);

/// Label form: A_k = (C_{k-1}[k] b_ c + C_k [M-k] a d_)/N etc., N = [k] b_ c_ + [M-k] a_ d_,
/// with underscore the labels of reflect_kinematics(kin).
template <class T>
ReflectionMatrix<T> closed_form_kmatrix(const Kinematics<T>& kin, const ModelParams<T>& params,
                                        CkVariant variant = CkVariant::Symmetry);

/// The same coefficients written directly in x+, x-, with N = (V q^{M/2-k} - q^{k-M/2}/V)/(q - 1/q).
template <class T>
ReflectionMatrix<T> explicit_kmatrix(const Kinematics<T>& kin, const ModelParams<T>& params);

/// M = 1: diag(A0, A1, C0, C0) with A0 = (gamma/gamma_bar) C0 and A1 = -(gamma/gamma_bar) C0/(z U^2).
template <class T>
ReflectionMatrix<T> fundamental_kmatrix(const Kinematics<T>& kin, const ModelParams<T>& params);

/// Conditions K D(J) = D^ref(J) K on V (x) boundary for the preserved generators
/// E2, F2, E3, F3, K1..K4 and, unless disabled, the eight twisted charges.
template <class T>
NullSpace<T> boundary_nullspace(const Kinematics<T>& kin, const ModelParams<T>& params,
                                bool include_twisted = true);

/// Null-space K normalized to A_0 = 1. Throws DegenerateKinematics unless the null space is 1-dim.
template <class T>
Matrix<T> solve_boundary_intertwiner(const Kinematics<T>& kin, const ModelParams<T>& params);

/// ||K D(J) - D^ref(J) K|| per preserved and twisted charge, plus the broken E1 as a
/// negative control that must stay O(1).
template <class T>
std::vector<Check> invariance_residual(const Matrix<T>& K, const Kinematics<T>& kin,
                                       const ModelParams<T>& params, double tol = 1e-9);

/// || K(reflected) K(kin) - 1 ||, the reflected K built from reflect_kinematics(kin).
template <class T>
double unitarity_residual(const Kinematics<T>& kin, const ModelParams<T>& params);

/// Reflection equation on V1 (x) V2 with K acting on the second leg and R(a,b) = P_ab S_ab:
/// (1 K2) R(V2,V1_) (1 K1) R(V1,V2) = R(V2_,V1_) (1 K1) R(V1,V2_) (1 K2).
template <class T>
double boundary_ybe_residual(const Kinematics<T>& kin1, const Kinematics<T>& kin2,
                             const ModelParams<T>& params, CkVariant variant = CkVariant::Symmetry);

/// z^k C_k + (-1)^{M+1} z^{M-k-1} C_{M-k-1} over the independent k, relative. M >= 2.
template <class T>
double ck_symmetry_residual(const Kinematics<T>& kin, const ModelParams<T>& params);

/// q -> 1 coefficients with N = k + (M-k) x- x+ and
/// C_k = (2igu - M + 2k)/(-2igu - M + 2k) C_{k-1}, u = (x+ + 1/x+ + x- + 1/x-)/2.
template <class T>
ReflectionMatrix<T> rational_limit_kmatrix(const Complex<T>& x_plus, const Complex<T>& x_minus,
                                           const Complex<T>& g, const Complex<T>& alpha,
                                           const Complex<T>& gamma, const Complex<T>& gamma_bar,
                                           int M);

struct RationalLimitPoint {
  double eps;
  double coefficient_error;  // relative, over all of A, B, C, D, E
  double u_error;            // |(z - 1)/(-2ig eps) - u|
  double fundamental_error;  // |A1/A0 + x-/x+| at M = 1, NaN otherwise
};

/// Deformed coefficients at q = 1 + eps (x- fixed, x+ re-solved on the branch continuing the
/// rational root) against the rational ones, with gamma = gamma_bar = sqrt(i(x- - x+)).
template <class T>
RationalLimitPoint rational_limit_error(int M, const Complex<T>& x_minus, double eps,
                                        const ModelParams<T>& base);

}  // namespace qab
