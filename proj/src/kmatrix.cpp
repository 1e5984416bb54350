#include "qab/kmatrix.hpp"

#include <cmath>
#include <memory>

namespace qab {

namespace {

template <class T>
std::vector<Complex<T>> zeros(int n) {
  return std::vector<Complex<T>>(static_cast<std::size_t>(n), Complex<T>(T(0)));
}

template <class T>
Complex<T> at_or_zero(const std::vector<Complex<T>>& v, int k, int size) {
  return (k >= 0 && k < size) ? v[k] : Complex<T>(T(0));
}

/// Named conditions K D(J) = D^ref(J) K with the boundary as second leg.
template <class T>
struct BoundaryConditions {
  std::vector<std::string> names;
  std::vector<Matrix<T>> source, target;

  void add(std::string name, Matrix<T> s, Matrix<T> t) {
    names.push_back(std::move(name));
    source.push_back(std::move(s));
    target.push_back(std::move(t));
  }
};

template <class T>
BoundaryConditions<T> boundary_conditions(const Kinematics<T>& kin, const ModelParams<T>& p,
                                          bool include_twisted, bool include_broken) {
  const Kinematics<T> ref = reflect_kinematics(kin, p);
  const Representation<T> B = boundary_representation<T>();
  const Representation<T> in = coproduct_representation(build_representation(kin, p), B);
  const Representation<T> out = coproduct_representation(build_representation(ref, p), B);
  BoundaryConditions<T> c;
  for (int j : {1, 2}) {
    const std::string idx = std::to_string(j + 1);
    c.add("E" + idx, in.E[j], out.E[j]);
    c.add("F" + idx, in.F[j], out.F[j]);
  }
  for (int j = 0; j < 4; ++j) c.add("K" + std::to_string(j + 1), in.K[j], out.K[j]);
  if (include_twisted) {
    const auto tin = twisted_boundary_charges(in, p).named();
    const auto tout = twisted_boundary_charges(out, p).named();
    for (const auto& [name, op] : tin) c.add(name, op.matrix, tout.at(name).matrix);
  }
  if (include_broken) c.add("E1", in.E[0], out.E[0]);
  return c;
}

template <class T>
void require_regular(const Complex<T>& v, double tol, const char* what) {
  if (std::abs(to_double(v)) < tol) throw PoleError(std::string("pole: ") + what + " vanishes");
}

}  // namespace

template <class T>
std::vector<Complex<T>> c_coefficients(const Kinematics<T>& kin, const ModelParams<T>& p,
                                       double pole_tol) {
  const int M = kin.M;
  const Complex<T> qM = p.qpow(M);
  const Complex<T> one(T(1));
  std::vector<Complex<T>> C(static_cast<std::size_t>(M));
  const Kinematics<T> ref = reflect_kinematics(kin, p);
  C[0] = ref.gamma / kin.gamma;
  for (int n = 1; n < M; ++n) {
    const Complex<T> den = qM - p.qpow(2 * n) * kin.z;
    require_regular(den, pole_tol * std::max(1.0, std::abs(to_double(qM))), "q^M - q^{2n} z");
    C[n] = C[n - 1] * (qM - p.qpow(2 * n) / kin.z) / den;
  }
  return C;
}

template <class T>
Matrix<T> assemble_kmatrix(int M, const std::vector<Complex<T>>& A, const std::vector<Complex<T>>& B,
                           const std::vector<Complex<T>>& C, const std::vector<Complex<T>>& D,
                           const std::vector<Complex<T>>& E) {
  const RepSpace s = build_basis(M);
  Matrix<T> K = Matrix<T>::Zero(s.dim(), s.dim());
  for (int k = 0; k <= M; ++k) {
    const int one = s.family_index(1, k);
    K(one, one) = A[k];
    if (k >= 1 && k <= M - 1) {
      const int two = s.family_index(2, k);
      K(two, one) = D[k];
      K(two, two) = B[k];
      K(one, two) = E[k];
    }
  }
  for (int k = 0; k < M; ++k) {
    K(s.family_index(3, k), s.family_index(3, k)) = C[k];
    K(s.family_index(4, k), s.family_index(4, k)) = C[k];
  }
  return K;
}

template <class T>
ReflectionMatrix<T> closed_form_kmatrix(const Kinematics<T>& kin, const ModelParams<T>& p,
                                        CkVariant variant) {
  const int M = kin.M;
  const Kinematics<T> ref = reflect_kinematics(kin, p);
  const auto& l = kin.labels;
  const auto& r = ref.labels;
  ReflectionMatrix<T> K;
  K.M = M;
  K.z = kin.z;
  K.gamma = kin.gamma;
  K.gamma_bar = ref.gamma;
  K.C = c_coefficients(kin, p);
  if (variant == CkVariant::Trivial)
    for (auto& c : K.C) c = K.C[0];
  K.A = zeros<T>(M + 1);
  K.B = zeros<T>(M + 1);
  K.D = zeros<T>(M + 1);
  K.E = zeros<T>(M + 1);
  for (int k = 0; k <= M; ++k) {
    const Complex<T> qk = q_number(k, p.q);
    const Complex<T> qMk = q_number(M - k, p.q);
    const Complex<T> Ck = at_or_zero(K.C, k, M);
    const Complex<T> Ckm = at_or_zero(K.C, k - 1, M);
    const Complex<T> N = qk * r.b * r.c + qMk * r.a * r.d;
    require_regular(N, 1e-14, "normalization N");
    K.A[k] = (Ckm * qk * r.b * l.c + Ck * qMk * l.a * r.d) / N;
    K.D[k] = qk * qMk * (Ck * l.a * r.c - Ckm * r.a * l.c) / N;
    if (k >= 1 && k <= M - 1) {
      K.B[k] = (Ck * qk * l.b * r.c + Ckm * qMk * r.a * l.d) / N;
      K.E[k] = (Ck * l.b * r.d - Ckm * r.b * l.d) / N;
    }
  }
  K.op = assemble_kmatrix(M, K.A, K.B, K.C, K.D, K.E);
  return K;
}

template <class T>
ReflectionMatrix<T> explicit_kmatrix(const Kinematics<T>& kin, const ModelParams<T>& p) {
  const int M = kin.M;
  const Complex<T> one(T(1));
  const Complex<T> i = imag_unit<T>();
  const Complex<T>& xi = p.xi;
  const Complex<T>& gt = p.g_tilde;
  const Complex<T>& g = p.g;
  const Complex<T>& xp = kin.x_plus;
  const Complex<T>& xm = kin.x_minus;
  const Complex<T>& V = kin.V;
  const Complex<T> gam = kin.gamma;
  const Complex<T> gb = kin.gamma_partner;
  const Complex<T> QM = q_number(M, p.q);
  const Complex<T> qM = p.qpow(M);
  const Complex<T> qh = p.qpow_half(M);
  const Complex<T> qmh = p.qpow_half(-M);
  ReflectionMatrix<T> K;
  K.M = M;
  K.z = kin.z;
  K.gamma = gam;
  K.gamma_bar = gb;
  K.C = c_coefficients(kin, p);
  K.A = zeros<T>(M + 1);
  K.B = zeros<T>(M + 1);
  K.D = zeros<T>(M + 1);
  K.E = zeros<T>(M + 1);
  for (int k = 0; k <= M; ++k) {
    const Complex<T> qk = q_number(k, p.q);
    const Complex<T> qMk = q_number(M - k, p.q);
    const Complex<T> Ck = at_or_zero(K.C, k, M);
    const Complex<T> Ckm = at_or_zero(K.C, k - 1, M);
    // (V q^{M/2-k} - q^{k-M/2}/V)/(q - 1/q) written as a finite sum in q^{1/2}.
    const Complex<T> N = (V * p.qpow_half(M - 2 * k) - p.qpow_half(2 * k - M) / V) / (p.q - one / p.q);
    const Complex<T> xpx = xi + xp;
    const Complex<T> mix = gt * gt * Ckm * xm + g * g * Ck * (one + xi * xm) * xpx;
    K.A[k] = gam * gt * qh * (xm - xp) * (gt * gt * qM * qk * Ckm - g * g * qMk * Ck * xpx * xpx) * V /
             (i * gb * g * g * QM * xpx * xpx * (one + xi * xp) * N);
    K.D[k] = gam * gb * qh * qk * qMk * mix / (i * p.alpha * gt * QM * xm * xpx * V * N);
    if (k >= 1 && k <= M - 1) {
      K.B[k] = i * gb * qmh * (xm - xp) *
               (gt * gt * qMk * Ckm * xm * xm - g * g * qM * qk * Ck * (one + xi * xm) * (one + xi * xm)) /
               (gam * gt * QM * xm * xm * (one + xi * xm) * V * N);
      K.E[k] = i * p.alpha * gt * qh * (xm - xp) * (xm - xp) * mix * V /
               (gam * gb * g * g * QM * xm * (one + xi * xm) * xpx * (one + xi * xp) * N);
    }
  }
  K.op = assemble_kmatrix(M, K.A, K.B, K.C, K.D, K.E);
  return K;
}

template <class T>
ReflectionMatrix<T> fundamental_kmatrix(const Kinematics<T>& kin, const ModelParams<T>& p) {
  if (kin.M != 1) throw QabError("fundamental_kmatrix requires M = 1");
  const Complex<T> one(T(1));
  const Kinematics<T> ref = reflect_kinematics(kin, p);
  const Complex<T> ratio = kin.gamma / ref.gamma;
  ReflectionMatrix<T> K;
  K.M = 1;
  K.z = kin.z;
  K.gamma = kin.gamma;
  K.gamma_bar = ref.gamma;
  K.C = {one / ratio};
  K.A = {ratio * K.C[0], -ratio * K.C[0] / (kin.z * kin.U * kin.U)};
  K.B = zeros<T>(2);
  K.D = zeros<T>(2);
  K.E = zeros<T>(2);
  K.op = assemble_kmatrix(1, K.A, K.B, K.C, K.D, K.E);
  return K;
}

template <class T>
NullSpace<T> boundary_nullspace(const Kinematics<T>& kin, const ModelParams<T>& p,
                                bool include_twisted) {
  const BoundaryConditions<T> bc = boundary_conditions(kin, p, include_twisted, false);
  std::vector<IntertwinerCondition<T>> conds;
  for (std::size_t i = 0; i < bc.source.size(); ++i) conds.push_back({&bc.source[i], &bc.target[i]});
  const Representation<T> rep = build_representation(kin, p);
  const int n = rep.dim();
  return intertwiner_nullspace(conds, n, n, weight_pattern(rep.weights, rep.weights));
}

template <class T>
Matrix<T> solve_boundary_intertwiner(const Kinematics<T>& kin, const ModelParams<T>& p) {
  const NullSpace<T> ns = boundary_nullspace(kin, p, true);
  if (ns.dim != 1)
    throw DegenerateKinematics("K-matrix null space has dimension " + std::to_string(ns.dim), ns.dim);
  Matrix<T> K = ns.assemble(0);
  const Complex<T> a0 = K(0, 0);
  if (std::abs(to_double(a0)) < 1e-12 * std::max(1.0, to_double(T(K.norm()))))
    throw DegenerateKinematics("K-matrix anchor A_0 vanishes", ns.dim);
  return K / a0;
}

template <class T>
std::vector<Check> invariance_residual(const Matrix<T>& K, const Kinematics<T>& kin,
                                       const ModelParams<T>& p, double tol) {
  const BoundaryConditions<T> bc = boundary_conditions(kin, p, true, true);
  std::vector<Check> out;
  for (std::size_t i = 0; i < bc.names.size(); ++i) {
    const double r = relative_residual<T>(Matrix<T>(K * bc.source[i]), Matrix<T>(bc.target[i] * K));
    if (bc.names[i] == "E1") {
      out.push_back(make_lower_bound_check("broken E1 stays non-invariant", r, 1e-3,
                                           "negative control: E1 is not a boundary symmetry"));
    } else {
      out.push_back(make_check("invariance " + bc.names[i], r, tol));
    }
  }
  return out;
}

template <class T>
double unitarity_residual(const Kinematics<T>& kin, const ModelParams<T>& p) {
  const Kinematics<T> ref = reflect_kinematics(kin, p);
  const Matrix<T> forward = closed_form_kmatrix(kin, p).op;
  const Matrix<T> back = closed_form_kmatrix(ref, p).op;
  return relative_residual<T>(Matrix<T>(back * forward), identity<T>(forward.rows()));
}

template <class T>
double boundary_ybe_residual(const Kinematics<T>& k1, const Kinematics<T>& k2,
                             const ModelParams<T>& p, CkVariant variant) {
  const Kinematics<T> k1r = reflect_kinematics(k1, p);
  const Kinematics<T> k2r = reflect_kinematics(k2, p);
  const Parity p1 = build_basis(k1.M).parity;
  const Parity p2 = build_basis(k2.M).parity;
  const Matrix<T> K1 = closed_form_kmatrix(k1, p, variant).op;
  const Matrix<T> K2 = closed_form_kmatrix(k2, p, variant).op;
  const Matrix<T> I1 = identity<T>(p1.size());
  const Matrix<T> I2 = identity<T>(p2.size());
  const Matrix<T> R12 = braiding(solve_intertwiner(k1, k2, p), p1, p2);
  const Matrix<T> R21r = braiding(solve_intertwiner(k2, k1r, p), p2, p1);
  const Matrix<T> R2r1r = braiding(solve_intertwiner(k2r, k1r, p), p2, p1);
  const Matrix<T> R12r = braiding(solve_intertwiner(k1, k2r, p), p1, p2);
  const Matrix<T> lhs = kron<T>(I1, K2) * R21r * kron<T>(I2, K1) * R12;
  const Matrix<T> rhs = R2r1r * kron<T>(I2, K1) * R12r * kron<T>(I1, K2);
  return relative_residual<T>(lhs, rhs);
}

template <class T>
double ck_symmetry_residual(const Kinematics<T>& kin, const ModelParams<T>& p) {
  const int M = kin.M;
  if (M < 2) throw QabError("C_k symmetry needs M >= 2");
  const auto C = c_coefficients(kin, p);
  const Complex<T> sign(T(M % 2 == 0 ? 1 : -1));
  const int last = M % 2 == 0 ? M / 2 - 1 : (M - 1) / 2 - 1;
  double worst = 0.0;
  for (int k = 0; k <= last; ++k) {
    const Complex<T> lhs = ipow(kin.z, k) * C[k];
    const Complex<T> rhs = ipow(kin.z, M - k - 1) * C[M - k - 1];
    // even M: lhs = -rhs, odd M: lhs = rhs
    worst = std::max(worst, relative_residual<T>(lhs, Complex<T>(-sign * rhs)));
  }
  return worst;
}

template <class T>
ReflectionMatrix<T> rational_limit_kmatrix(const Complex<T>& xp, const Complex<T>& xm,
                                           const Complex<T>& g, const Complex<T>& alpha,
                                           const Complex<T>& gam, const Complex<T>& gb, int M) {
  const Complex<T> i = imag_unit<T>();
  const Complex<T> u = spectral_u(xp, xm);
  ReflectionMatrix<T> K;
  K.M = M;
  K.gamma = gam;
  K.gamma_bar = gb;
  K.z = Complex<T>(T(1));
  K.C = zeros<T>(M);
  K.C[0] = gb / gam;
  const Complex<T> two(T(2));
  const Complex<T> MM{T(M)};
  for (int k = 1; k < M; ++k) {
    const Complex<T> kk(T(2 * k));
    const Complex<T> den = -two * i * g * u - MM + kk;
    require_regular(den, 1e-14, "rational C_k denominator");
    K.C[k] = K.C[k - 1] * (two * i * g * u - MM + kk) / den;
  }
  K.A = zeros<T>(M + 1);
  K.B = zeros<T>(M + 1);
  K.D = zeros<T>(M + 1);
  K.E = zeros<T>(M + 1);
  for (int k = 0; k <= M; ++k) {
    const Complex<T> kc{T(k)};
    const Complex<T> mk{T(M - k)};
    const Complex<T> Ck = at_or_zero(K.C, k, M);
    const Complex<T> Ckm = at_or_zero(K.C, k - 1, M);
    const Complex<T> N = kc + mk * xm * xp;
    require_regular(N, 1e-14, "rational normalization N");
    K.A[k] = gam / gb * xm / (xp * N) * (mk * Ck * xp * xp - kc * Ckm);
    K.D[k] = gam * gb / alpha * kc * mk * (Ck * xp + Ckm * xm) / (N * (xp - xm));
    if (k >= 1 && k <= M - 1) {
      K.B[k] = gb / gam * xp / (xm * N) * (mk * Ckm * xm * xm - kc * Ck);
      K.E[k] = alpha / (gam * gb) * (xm - xp) / N * (Ck * xp + Ckm * xm);
    }
  }
  K.op = assemble_kmatrix(M, K.A, K.B, K.C, K.D, K.E);
  return K;
}

template <class T>
RationalLimitPoint rational_limit_error(int M, const Complex<T>& xm, double eps,
                                        const ModelParams<T>& base) {
  using std::abs;
  using std::sqrt;
  const Complex<T> one(T(1));
  const Complex<T> i = imag_unit<T>();
  const ModelParams<T> rp = make_params<T>(one, base.g, base.alpha, base.alpha_tilde);
  const Complex<T> xp0 = solve_shortening(xm, M, rp).roots[0];
  const Complex<T> gam0 = sqrt(Complex<T>(i * (xm - xp0)));
  const ReflectionMatrix<T> rat = rational_limit_kmatrix(xp0, xm, base.g, base.alpha, gam0, gam0, M);

  const ModelParams<T> qp = make_params<T>(Complex<T>(T(1) + T(eps)), base.g, base.alpha,
                                           base.alpha_tilde);
  const auto roots = solve_shortening(xm, M, qp);
  const Complex<T> xp = abs(roots.roots[0] - xp0) <= abs(roots.roots[1] - xp0) ? roots.roots[0]
                                                                               : roots.roots[1];
  const Complex<T> gam = sqrt(Complex<T>(i * (xm - xp)));
  const Kinematics<T> kin = make_kinematics(M, xp, xm, qp, gam, gam);
  const ReflectionMatrix<T> def = closed_form_kmatrix(kin, qp);

  auto stack = [](const ReflectionMatrix<T>& K) {
    std::vector<Complex<T>> v;
    for (const auto* arr : {&K.A, &K.B, &K.C, &K.D, &K.E}) v.insert(v.end(), arr->begin(), arr->end());
    Matrix<T> m(static_cast<Eigen::Index>(v.size()), 1);
    for (std::size_t j = 0; j < v.size(); ++j) m(static_cast<Eigen::Index>(j), 0) = v[j];
    return m;
  };
  RationalLimitPoint pt;
  pt.eps = eps;
  pt.coefficient_error = relative_residual<T>(stack(def), stack(rat));
  const Complex<T> u_num = (kin.z - one) / (-Complex<T>(T(2)) * i * base.g * Complex<T>(T(eps)));
  pt.u_error = to_double(T(abs(u_num - spectral_u(xp0, xm))));
  if (M == 1) {
    pt.fundamental_error = to_double(T(abs(def.A[1] / def.A[0] + xm / xp0)));
  } else {
    pt.fundamental_error = std::nan("");
  }
  return pt;
}

#define QAB_INSTANTIATE_KMAT(T)                                                                   \
  template std::vector<Complex<T>> c_coefficients<T>(const Kinematics<T>&, const ModelParams<T>&, \
                                                     double);                                     \
  template Matrix<T> assemble_kmatrix<T>(int, const std::vector<Complex<T>>&,                     \
                                         const std::vector<Complex<T>>&,                          \
                                         const std::vector<Complex<T>>&,                          \
                                         const std::vector<Complex<T>>&,                          \
                                         const std::vector<Complex<T>>&);                         \
  template ReflectionMatrix<T> closed_form_kmatrix<T>(const Kinematics<T>&, const ModelParams<T>&, \
                                                      CkVariant);                                 \
  template ReflectionMatrix<T> explicit_kmatrix<T>(const Kinematics<T>&, const ModelParams<T>&);  \
  template ReflectionMatrix<T> fundamental_kmatrix<T>(const Kinematics<T>&,                       \
                                                      const ModelParams<T>&);                     \
  template NullSpace<T> boundary_nullspace<T>(const Kinematics<T>&, const ModelParams<T>&, bool); \
  template Matrix<T> solve_boundary_intertwiner<T>(const Kinematics<T>&, const ModelParams<T>&);  \
  template std::vector<Check> invariance_residual<T>(const Matrix<T>&, const Kinematics<T>&,      \
                                                     const ModelParams<T>&, double);              \
  template double unitarity_residual<T>(const Kinematics<T>&, const ModelParams<T>&);             \
  template double boundary_ybe_residual<T>(const Kinematics<T>&, const Kinematics<T>&,            \
                                           const ModelParams<T>&, CkVariant);                     \
  template double ck_symmetry_residual<T>(const Kinematics<T>&, const ModelParams<T>&);           \
  template ReflectionMatrix<T> rational_limit_kmatrix<T>(const Complex<T>&, const Complex<T>&,    \
                                                         const Complex<T>&, const Complex<T>&,    \
                                                         const Complex<T>&, const Complex<T>&,    \
                                                         int);                                    \
  template RationalLimitPoint rational_limit_error<T>(int, const Complex<T>&, double,             \
                                                      const ModelParams<T>&);

QAB_INSTANTIATE_KMAT(double)
QAB_INSTANTIATE_KMAT(HighReal)

}  // namespace qab
