#include "qab/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qab {

namespace {

template <class T>
Complex<T> principal_sqrt(const Complex<T>& z) {
  using std::sqrt;
  return sqrt(z);
}

template <class T>
double rel_scale(std::initializer_list<Complex<T>> terms) {
  double scale = 1.0;
  for (const auto& t : terms) scale = std::max(scale, std::abs(to_double(t)));
  return scale;
}

}  // namespace

template <class T>
Couplings<T> derive_couplings(const Complex<T>& q, const Complex<T>& g) {
  const Complex<T> one(T(1));
  const Complex<T> qd = q - one / q;
  const Complex<T> denom = one - g * g * qd * qd;
  if (std::abs(to_double(denom)) < 1e-12) {
    throw QabError("singular coupling: 1 - g^2 (q - 1/q)^2 vanishes");
  }
  const Complex<T> gt = principal_sqrt(Complex<T>(g * g / denom));
  return {-imag_unit<T>() * gt * qd, gt};
}

template <class T>
ModelParams<T> make_params(Complex<T> q, Complex<T> g, Complex<T> alpha, Complex<T> alpha_tilde,
                           Complex<T> gamma, Complex<T> gamma_bar) {
  if (std::abs(to_double(q)) == 0.0) throw QabError("q must be nonzero");
  if (std::abs(to_double(gamma)) == 0.0 || std::abs(to_double(gamma_bar)) == 0.0)
    throw QabError("gamma and gamma_bar must be nonzero");
  ModelParams<T> p;
  p.q = q;
  p.g = g;
  p.alpha = alpha;
  p.alpha_tilde = alpha_tilde;
  p.gamma = gamma;
  p.gamma_bar = gamma_bar;
  const auto c = derive_couplings(q, g);
  p.xi = c.xi;
  p.g_tilde = c.g_tilde;
  p.q_half = principal_sqrt(q);
  return p;
}

template <class T>
void require_generic_q(const ModelParams<T>& params, int max_M, double tol) {
  const Complex<T> one(T(1));
  for (int n = 1; n <= 4 * max_M; ++n) {
    if (std::abs(to_double(Complex<T>(params.qpow(n) - one))) <= tol) {
      if (n == 1) continue;  // q = 1 is the rational point, handled by the regularized formulas
      throw QabError("q is a root of unity of order " + std::to_string(n));
    }
  }
}

// Shortening written as x+ + 1/x+ = q^M ( q^M (x- + 1/x-) + (q^M - q^-M) xi + i [M]_q / g~ ),
// using (q^M - q^-M)/xi = i [M]_q / g~, which stays finite at q = 1.
template <class T>
static Complex<T> shortening_rhs(const Complex<T>& x_minus, int M, const ModelParams<T>& p) {
  const Complex<T> one(T(1));
  const Complex<T> qM = p.qpow(M);
  const Complex<T> qmM = p.qpow(-M);
  return qM * (qM * (x_minus + one / x_minus) + (qM - qmM) * p.xi +
               imag_unit<T>() * q_number(M, p.q) / p.g_tilde);
}

template <class T>
ShorteningRoots<T> solve_shortening(const Complex<T>& x_minus, int M, const ModelParams<T>& params,
                                    double degeneracy_tol) {
  using std::abs;
  using std::sqrt;
  if (std::abs(to_double(x_minus)) == 0.0) throw QabError("x- must be nonzero");
  if (M < 1) throw QabError("bound-state number must be >= 1");
  const Complex<T> s = shortening_rhs(x_minus, M, params);
  const Complex<T> disc = sqrt(Complex<T>(s * s - Complex<T>(T(4))));
  Complex<T> r1 = (s + disc) / Complex<T>(T(2));
  Complex<T> r2 = (s - disc) / Complex<T>(T(2));
  if (abs(r2) > abs(r1)) std::swap(r1, r2);
  ShorteningRoots<T> out;
  out.roots[0] = r1;
  out.roots[1] = Complex<T>(T(1)) / r1;  // product of roots is 1; avoids cancellation in r2
  out.degenerate = std::abs(to_double(disc)) < degeneracy_tol * std::max(1.0, std::abs(to_double(s)));
  return out;
}

template <class T>
double shortening_residual(const Complex<T>& x_plus, const Complex<T>& x_minus, int M,
                           const ModelParams<T>& params) {
  const Complex<T> one(T(1));
  const Complex<T> qmM = params.qpow(-M);
  const Complex<T> lhs = qmM * (x_plus + one / x_plus);
  const Complex<T> rhs = qmM * shortening_rhs(x_minus, M, params);
  return std::abs(to_double(Complex<T>(lhs - rhs))) / rel_scale<T>({lhs, rhs});
}

template <class T>
Complex<T> theta_function(const Complex<T>& x, const ModelParams<T>& params) {
  const Complex<T> one(T(1));
  const Complex<T>& xi = params.xi;
  return (x + xi) * (xi * x + one) / (x * (one - xi * xi));
}

template <class T>
CentralElements<T> central_elements(const Complex<T>& xp, const Complex<T>& xm, int M,
                                    const ModelParams<T>& params, double tol) {
  const Complex<T> one(T(1));
  const Complex<T>& xi = params.xi;
  const Complex<T> qM = params.qpow(M);
  const Complex<T> qmM = params.qpow(-M);
  const Complex<T> u2a = qmM * (xp + xi) / (xm + xi);
  const Complex<T> u2b = qM * (xp / xm) * (xi * xm + one) / (xi * xp + one);
  const Complex<T> v2a = qmM * (xi * xp + one) / (xi * xm + one);
  const Complex<T> v2b = qM * (xp / xm) * (xm + xi) / (xp + xi);
  CentralElements<T> out;
  out.U = principal_sqrt(u2a);
  out.V = principal_sqrt(v2a);
  out.z = qmM * theta_function(xp, params);
  out.u_consistency = relative_residual<T>(u2a, u2b);
  out.v_consistency = relative_residual<T>(v2a, v2b);
  out.z_consistency = relative_residual<T>(out.z, Complex<T>(qM * theta_function(xm, params)));
  const Complex<T> den = v2a - u2a;
  if (std::abs(to_double(den)) > 1e-6) {
    out.z_uv_consistency = relative_residual<T>(out.z, Complex<T>((one - u2a * v2a) / den));
  } else {
    out.z_uv_consistency = std::nan("");
  }
  if (out.u_consistency > tol || out.v_consistency > tol || out.z_consistency > tol ||
      (!std::isnan(out.z_uv_consistency) && out.z_uv_consistency > tol)) {
    throw QabError("inconsistent central elements: kinematics violate the shortening condition");
  }
  return out;
}

template <class T>
Labels<T> bulk_labels(const Complex<T>& xp, const Complex<T>& xm, int M, const Complex<T>& V,
                      const Complex<T>& gamma, const ModelParams<T>& p) {
  using std::sqrt;
  const Complex<T> one(T(1));
  const Complex<T> i = imag_unit<T>();
  const Complex<T> s = sqrt(Complex<T>(p.g / q_number(M, p.q)));
  const Complex<T> qM2 = p.qpow_half(M);
  const Complex<T>& xi = p.xi;
  const Complex<T>& gt = p.g_tilde;
  Labels<T> l;
  l.a = s * gamma;
  l.b = s * p.alpha / gamma * (xm - xp) / xm;
  l.c = s * gamma / (p.alpha * V) * i * gt * qM2 / (p.g * (xp + xi));
  l.d = s * gt * qM2 * V / (i * p.g * gamma) * (xp - xm) / (xi * xp + one);
  return l;
}

template <class T>
Labels<T> affine_labels(const Complex<T>& xp, const Complex<T>& xm, int M, const Complex<T>& V,
                        const Complex<T>& gamma, const ModelParams<T>& p) {
  const Complex<T> one(T(1));
  ModelParams<T> shifted = p;
  shifted.alpha = p.alpha * p.alpha_tilde * p.alpha_tilde;
  const Complex<T> gamma_aff = imag_unit<T>() * p.alpha_tilde * gamma / xp;
  return bulk_labels(Complex<T>(one / xp), Complex<T>(one / xm), M, Complex<T>(one / V), gamma_aff,
                     shifted);
}

template <class T>
Kinematics<T> make_kinematics(int M, const Complex<T>& xp, const Complex<T>& xm,
                              const ModelParams<T>& params, const Complex<T>& gamma,
                              const Complex<T>& gamma_partner, std::optional<Complex<T>> U,
                              std::optional<Complex<T>> V) {
  if (M < 1) throw QabError("bound-state number must be >= 1");
  const auto ce = central_elements(xp, xm, M, params);
  Kinematics<T> k;
  k.M = M;
  k.x_plus = xp;
  k.x_minus = xm;
  k.U = U ? *U : ce.U;
  k.V = V ? *V : ce.V;
  k.z = ce.z;
  k.gamma = gamma;
  k.gamma_partner = gamma_partner;
  k.labels = bulk_labels(xp, xm, M, k.V, gamma, params);
  k.affine = affine_labels(xp, xm, M, k.V, gamma, params);
  return k;
}

template <class T>
Kinematics<T> kinematics_from_x_minus(int M, const Complex<T>& x_minus,
                                      const ModelParams<T>& params) {
  const auto roots = solve_shortening(x_minus, M, params);
  return make_kinematics(M, roots.roots[0], x_minus, params, params.gamma, params.gamma_bar);
}

template <class T>
Kinematics<T> reflect_kinematics(const Kinematics<T>& kin, const ModelParams<T>& params,
                                 double pole_tol) {
  const Complex<T> one(T(1));
  const Complex<T>& xi = params.xi;
  const Complex<T> den_m = xi * kin.x_minus + one;
  const Complex<T> den_p = xi * kin.x_plus + one;
  if (std::abs(to_double(den_m)) < pole_tol || std::abs(to_double(den_p)) < pole_tol)
    throw QabError("reflection map pole: xi x + 1 vanishes");
  const Complex<T> xp = -(kin.x_minus + xi) / den_m;
  const Complex<T> xm = -(kin.x_plus + xi) / den_p;
  Kinematics<T> r = make_kinematics(kin.M, xp, xm, params, kin.gamma_partner, kin.gamma,
                                    std::optional<Complex<T>>(one / kin.U),
                                    std::optional<Complex<T>>(kin.V));
  r.reflected = !kin.reflected;
  return r;
}

template <class T>
double LabelConstraintResiduals<T>::max() const {
  return std::max(std::max(ad, bc), std::max(ab, cd));
}

template <class T>
LabelConstraintResiduals<T> label_constraints(const Kinematics<T>& kin,
                                              const ModelParams<T>& p, bool affine) {
  const Complex<T> one(T(1));
  const int M = kin.M;
  const Labels<T>& l = affine ? kin.affine : kin.labels;
  const Complex<T> V = affine ? one / kin.V : kin.V;
  const Complex<T> U = affine ? one / kin.U : kin.U;
  const Complex<T> alpha = affine ? p.alpha * p.alpha_tilde * p.alpha_tilde : p.alpha;
  const Complex<T> qM2 = p.qpow_half(M);
  const Complex<T> qmM2 = p.qpow_half(-M);
  // (q^M - q^-M) written as (q - 1/q)[M]_q; these two constraints are 0/0 at q = 1.
  const Complex<T> qdiff = (p.q - one / p.q) * q_number(M, p.q);
  const Complex<T> qM = q_number(M, p.q);
  LabelConstraintResiduals<T> r;
  r.ad = relative_residual<T>(Complex<T>(l.a * l.d * qdiff), Complex<T>(qM2 * V - qmM2 / V));
  r.bc = relative_residual<T>(Complex<T>(l.b * l.c * qdiff), Complex<T>(qmM2 * V - qM2 / V));
  r.ab = relative_residual<T>(Complex<T>(l.a * l.b * qM), Complex<T>(p.g * alpha * (one - U * U * V * V)));
  r.cd = relative_residual<T>(Complex<T>(l.c * l.d * qM),
                              Complex<T>(p.g / alpha * (one / (V * V) - one / (U * U))));
  return r;
}

template <class T>
double reflected_label_matrix_residual(const Kinematics<T>& kin, const Kinematics<T>& r) {
  const Complex<T> one(T(1));
  Matrix<T> L(2, 2), Lr(2, 2), D = Matrix<T>::Zero(2, 2), Tm = Matrix<T>::Zero(2, 2),
                               Ti = Matrix<T>::Zero(2, 2);
  L << kin.labels.a, kin.labels.b, kin.labels.c, kin.labels.d;
  Lr << r.labels.a, r.labels.b, r.labels.c, r.labels.d;
  D(0, 0) = kin.gamma / r.gamma;
  D(1, 1) = r.gamma / kin.gamma;
  Tm(0, 0) = one / (kin.U * kin.U);
  Tm(1, 1) = -kin.z;
  Ti(0, 0) = one / Tm(0, 0);
  Ti(1, 1) = one / Tm(1, 1);
  Matrix<T> lhs = Lr * D;
  Matrix<T> rhs = Tm * L * Ti;
  return relative_residual<T>(lhs, rhs);
}

#define QAB_INSTANTIATE_KINEMATICS(T)                                                              \
  template Couplings<T> derive_couplings<T>(const Complex<T>&, const Complex<T>&);                  \
  template ModelParams<T> make_params<T>(Complex<T>, Complex<T>, Complex<T>, Complex<T>,            \
                                         Complex<T>, Complex<T>);                                   \
  template void require_generic_q<T>(const ModelParams<T>&, int, double);                           \
  template ShorteningRoots<T> solve_shortening<T>(const Complex<T>&, int, const ModelParams<T>&,   \
                                                  double);                                          \
  template double shortening_residual<T>(const Complex<T>&, const Complex<T>&, int,                 \
                                         const ModelParams<T>&);                                    \
  template Complex<T> theta_function<T>(const Complex<T>&, const ModelParams<T>&);                  \
  template CentralElements<T> central_elements<T>(const Complex<T>&, const Complex<T>&, int,        \
                                                  const ModelParams<T>&, double);                   \
  template Labels<T> bulk_labels<T>(const Complex<T>&, const Complex<T>&, int, const Complex<T>&,   \
                                    const Complex<T>&, const ModelParams<T>&);                      \
  template Labels<T> affine_labels<T>(const Complex<T>&, const Complex<T>&, int, const Complex<T>&, \
                                      const Complex<T>&, const ModelParams<T>&);                    \
  template Kinematics<T> make_kinematics<T>(int, const Complex<T>&, const Complex<T>&,              \
                                            const ModelParams<T>&, const Complex<T>&,               \
                                            const Complex<T>&, std::optional<Complex<T>>,           \
                                            std::optional<Complex<T>>);                             \
  template Kinematics<T> kinematics_from_x_minus<T>(int, const Complex<T>&, const ModelParams<T>&); \
  template Kinematics<T> reflect_kinematics<T>(const Kinematics<T>&, const ModelParams<T>&,         \
                                               double);                                             \
  template struct LabelConstraintResiduals<T>;                                                      \
  template LabelConstraintResiduals<T> label_constraints<T>(const Kinematics<T>&,                   \
                                                            const ModelParams<T>&, bool);           \
  template double reflected_label_matrix_residual<T>(const Kinematics<T>&, const Kinematics<T>&);

QAB_INSTANTIATE_KINEMATICS(double)
QAB_INSTANTIATE_KINEMATICS(HighReal)

}  // namespace qab
