#pragma once

#include "qab/numeric.hpp"

#include <array>
#include <optional>
#include <utility>

namespace qab {

/// Global couplings. Construct through make_params so that xi and g_tilde stay consistent.
template <class T>
struct ModelParams {
  Complex<T> q;
  Complex<T> g;
  Complex<T> alpha;
  Complex<T> alpha_tilde;
  Complex<T> gamma;
  Complex<T> gamma_bar;
  Complex<T> xi;
  Complex<T> g_tilde;
  Complex<T> q_half;  // principal sqrt(q), used for every half-integer power

  Complex<T> qpow_half(int n) const { return ipow(q_half, n); }
  Complex<T> qpow(int n) const { return ipow(q, n); }
};

template <class T>
struct Couplings {
  Complex<T> xi;
  Complex<T> g_tilde;
};

/// xi = -i g~ (q - 1/q), g~^2 = g^2 / (1 - g^2 (q - 1/q)^2), principal branch.
template <class T>
Couplings<T> derive_couplings(const Complex<T>& q, const Complex<T>& g);

template <class T>
ModelParams<T> make_params(Complex<T> q, Complex<T> g, Complex<T> alpha = imag_unit<T>(),
                           Complex<T> alpha_tilde = Complex<T>(T(1)),
                           Complex<T> gamma = Complex<T>(T(1)),
                           Complex<T> gamma_bar = Complex<T>(T(1)));

/// Throws unless |q^n - 1| > tol for 1 <= n <= 4 * max_M.
template <class T>
void require_generic_q(const ModelParams<T>& params, int max_M, double tol = 1e-9);

template <class T>
struct Labels {
  Complex<T> a, b, c, d;
};

template <class T>
struct Kinematics {
  int M = 1;
  Complex<T> x_plus, x_minus;
  Complex<T> U, V, z;
  Complex<T> gamma;          // normalization of this state
  Complex<T> gamma_partner;  // normalization used after reflecting this state
  Labels<T> labels;
  Labels<T> affine;
  bool reflected = false;
};

template <class T>
struct ShorteningRoots {
  std::array<Complex<T>, 2> roots;  // roots[0] has the larger modulus
  bool degenerate = false;
};

/// Both roots x+ of the shortening quadratic at fixed x-. Product of the roots is 1.
template <class T>
ShorteningRoots<T> solve_shortening(const Complex<T>& x_minus, int M, const ModelParams<T>& params,
                                    double degeneracy_tol = 1e-10);

/// Relative residual of the shortening condition, written so that q = 1 stays finite.
template <class T>
double shortening_residual(const Complex<T>& x_plus, const Complex<T>& x_minus, int M,
                           const ModelParams<T>& params);

/// theta(x) with z = q^-M theta(x+) = q^M theta(x-).
template <class T>
Complex<T> theta_function(const Complex<T>& x, const ModelParams<T>& params);

template <class T>
struct CentralElements {
  Complex<T> U, V, z;
  double u_consistency;  // the two x-expressions for U^2
  double v_consistency;  // the two x-expressions for V^2
  double z_consistency;  // q^-M theta(x+) against q^M theta(x-)
  double z_uv_consistency;  // (1 - U^2V^2)/(V^2 - U^2) against q^-M theta(x+); NaN when q = 1
};

/// Principal square roots for U and V. Throws when the expressions disagree beyond tol.
template <class T>
CentralElements<T> central_elements(const Complex<T>& x_plus, const Complex<T>& x_minus, int M,
                                    const ModelParams<T>& params, double tol = 1e-8);

template <class T>
Labels<T> bulk_labels(const Complex<T>& x_plus, const Complex<T>& x_minus, int M,
                      const Complex<T>& V, const Complex<T>& gamma, const ModelParams<T>& params);

/// Labels of E4, F4: bulk formula with V -> 1/V, x -> 1/x, gamma -> i alpha~ gamma / x+,
/// alpha -> alpha alpha~^2.
template <class T>
Labels<T> affine_labels(const Complex<T>& x_plus, const Complex<T>& x_minus, int M,
                        const Complex<T>& V, const Complex<T>& gamma, const ModelParams<T>& params);

/// Full kinematics at (x+, x-). U and V default to principal square roots.
template <class T>
Kinematics<T> make_kinematics(int M, const Complex<T>& x_plus, const Complex<T>& x_minus,
                              const ModelParams<T>& params, const Complex<T>& gamma,
                              const Complex<T>& gamma_partner,
                              std::optional<Complex<T>> U = std::nullopt,
                              std::optional<Complex<T>> V = std::nullopt);

/// Kinematics at x-, taking the shortening root of largest modulus.
template <class T>
Kinematics<T> kinematics_from_x_minus(int M, const Complex<T>& x_minus,
                                      const ModelParams<T>& params);

/// x+ -> -(x- + xi)/(xi x- + 1), x- -> -(x+ + xi)/(xi x+ + 1), U -> 1/U, V fixed,
/// normalization gamma exchanged with its partner.
template <class T>
Kinematics<T> reflect_kinematics(const Kinematics<T>& kin, const ModelParams<T>& params,
                                 double pole_tol = 1e-12);

template <class T>
struct LabelConstraintResiduals {
  double ad, bc, ab, cd;
  double max() const;
};

/// Constraints tying (a,b,c,d) to (q, M, U, V). With affine = true the check uses
/// V -> 1/V, U -> 1/U and alpha -> alpha alpha~^2.
template <class T>
LabelConstraintResiduals<T> label_constraints(const Kinematics<T>& kin,
                                              const ModelParams<T>& params, bool affine = false);

/// [a_ b_; c_ d_] diag(g/g_, g_/g) = T [a b; c d] T^-1 with T = diag(U^-2, -z), underscore = reflected.
template <class T>
double reflected_label_matrix_residual(const Kinematics<T>& kin, const Kinematics<T>& reflected);

template <class T>
Complex<T> spectral_u(const Complex<T>& x_plus, const Complex<T>& x_minus) {
  return (x_plus + Complex<T>(T(1)) / x_plus + x_minus + Complex<T>(T(1)) / x_minus) /
         Complex<T>(T(2));
}

}  // namespace qab
