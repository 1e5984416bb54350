#include "qab/coalgebra.hpp"

#include <cmath>

namespace qab {

Parity tensor_parity(const Parity& p1, const Parity& p2) {
  Parity out;
  out.reserve(p1.size() * p2.size());
  for (int a : p1)
    for (int b : p2) out.push_back((a + b) % 2);
  return out;
}

template <class T>
GradedOperator<T> graded_tensor(const GradedOperator<T>& a, const GradedOperator<T>& b,
                                const Parity& p1) {
  if (static_cast<std::size_t>(a.matrix.cols()) != p1.size())
    throw QabError("graded_tensor: first factor does not match the parity vector");
  GradedOperator<T> out;
  out.parity = (a.parity + b.parity) % 2;
  if (b.parity == 0) {
    out.matrix = kron<T>(a.matrix, b.matrix);
    return out;
  }
  Matrix<T> signed_a = a.matrix;
  for (std::size_t c = 0; c < p1.size(); ++c)
    if (p1[c]) signed_a.col(static_cast<Eigen::Index>(c)) *= Complex<T>(T(-1));
  out.matrix = kron<T>(signed_a, b.matrix);
  return out;
}

template <class T>
Matrix<T> graded_permutation(const Parity& p1, const Parity& p2) {
  const auto n1 = static_cast<Eigen::Index>(p1.size());
  const auto n2 = static_cast<Eigen::Index>(p2.size());
  Matrix<T> P = Matrix<T>::Zero(n1 * n2, n1 * n2);
  for (Eigen::Index i = 0; i < n1; ++i)
    for (Eigen::Index j = 0; j < n2; ++j)
      P(j * n1 + i, i * n2 + j) = Complex<T>(T((p1[i] && p2[j]) ? -1 : 1));
  return P;
}

SignedPermutation graded_permutation_map(const Parity& p1, const Parity& p2) {
  const int n1 = static_cast<int>(p1.size());
  const int n2 = static_cast<int>(p2.size());
  SignedPermutation p;
  p.target.resize(static_cast<std::size_t>(n1) * n2);
  p.sign.resize(p.target.size());
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      p.target[i * n2 + j] = j * n1 + i;
      p.sign[i * n2 + j] = (p1[i] && p2[j]) ? -1 : 1;
    }
  return p;
}

template <class T>
Matrix<T> permute_rows(const SignedPermutation& p, const Matrix<T>& x) {
  Matrix<T> out(x.rows(), x.cols());
  for (std::size_t a = 0; a < p.target.size(); ++a)
    out.row(p.target[a]) = Complex<T>(T(p.sign[a])) * x.row(static_cast<Eigen::Index>(a));
  return out;
}

template <class T>
Matrix<T> conjugate(const SignedPermutation& p, const Matrix<T>& x) {
  Matrix<T> out(x.rows(), x.cols());
  const auto n = static_cast<Eigen::Index>(p.target.size());
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      out(p.target[a], p.target[b]) = Complex<T>(T(p.sign[a] * p.sign[b])) * x(a, b);
  return out;
}

template <class T>
Matrix<T> conjugate_transpose(const SignedPermutation& p, const Matrix<T>& x) {
  Matrix<T> out(x.rows(), x.cols());
  const auto n = static_cast<Eigen::Index>(p.target.size());
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      out(a, b) = Complex<T>(T(p.sign[a] * p.sign[b])) * x(p.target[a], p.target[b]);
  return out;
}

template <class T>
Representation<T> boundary_representation() {
  Representation<T> r;
  r.parity = {0};
  r.weights = {{0, 0}};
  for (int i = 0; i < 4; ++i) {
    r.E[i] = Matrix<T>::Zero(1, 1);
    r.F[i] = Matrix<T>::Zero(1, 1);
    r.K[i] = Matrix<T>::Identity(1, 1);
  }
  r.U = Complex<T>(T(1));
  r.V = Complex<T>(T(1));
  return r;
}

template <class T>
Representation<T> coproduct_representation(const Representation<T>& r1,
                                           const Representation<T>& r2) {
  const Parity& p1 = r1.parity;
  const Matrix<T> I1 = identity<T>(r1.dim());
  const Matrix<T> I2 = identity<T>(r2.dim());
  const Complex<T> one(T(1));
  Representation<T> out;
  out.parity = tensor_parity(r1.parity, r2.parity);
  for (const auto& w1 : r1.weights)
    for (const auto& w2 : r2.weights) out.weights.push_back({w1[0] + w2[0], w1[1] + w2[1]});
  out.U = r1.U * r2.U;
  out.V = r1.V * r2.V;
  for (int j = 0; j < 4; ++j) {
    const int par = j % 2;
    const Complex<T> u = j == 1 ? r1.U : j == 3 ? one / r1.U : one;
    const Matrix<T> Kinv1 = r1.K_inverse(j);
    out.E[j] = graded_tensor<T>({r1.E[j], par}, {I2, 0}, p1).matrix +
               graded_tensor<T>({Matrix<T>(u * Kinv1), 0}, {r2.E[j], par}, p1).matrix;
    out.F[j] = graded_tensor<T>({r1.F[j], par}, {r2.K[j], 0}, p1).matrix +
               graded_tensor<T>({Matrix<T>(I1 / u), 0}, {r2.F[j], par}, p1).matrix;
    out.K[j] = kron<T>(r1.K[j], r2.K[j]);
  }
  return out;
}

template <class T>
Representation<T> opposite_coproduct_representation(const Representation<T>& r1,
                                                    const Representation<T>& r2) {
  Representation<T> d21 = coproduct_representation(r2, r1);
  const SignedPermutation P = graded_permutation_map(r1.parity, r2.parity);  // V1V2 -> V2V1
  Representation<T> out;
  out.parity = tensor_parity(r1.parity, r2.parity);
  for (const auto& w1 : r1.weights)
    for (const auto& w2 : r2.weights) out.weights.push_back({w1[0] + w2[0], w1[1] + w2[1]});
  out.U = d21.U;
  out.V = d21.V;
  for (int j = 0; j < 4; ++j) {
    out.E[j] = conjugate_transpose<T>(P, d21.E[j]);
    out.F[j] = conjugate_transpose<T>(P, d21.F[j]);
    out.K[j] = conjugate_transpose<T>(P, d21.K[j]);
  }
  return out;
}

template <class T>
GradedOperator<T> coproduct(const Generator& gen, const Kinematics<T>& kin1,
                            const Kinematics<T>& kin2, const ModelParams<T>& params) {
  return coproduct_representation(build_representation(kin1, params),
                                  build_representation(kin2, params))
      .op(gen);
}

template <class T>
GradedOperator<T> opposite_coproduct(const Generator& gen, const Kinematics<T>& kin1,
                                     const Kinematics<T>& kin2, const ModelParams<T>& params) {
  return opposite_coproduct_representation(build_representation(kin1, params),
                                           build_representation(kin2, params))
      .op(gen);
}

template <class T>
GradedOperator<T> reflected_coproduct(const Generator& gen, const Kinematics<T>& reflected_kin1,
                                      const Representation<T>& leg2, const ModelParams<T>& params) {
  if (!reflected_kin1.reflected)
    throw QabError("reflected_coproduct expects reflected kinematics on the first leg");
  return coproduct_representation(build_representation(reflected_kin1, params), leg2).op(gen);
}

template <class T>
GradedOperator<T> adjoint_action(AdSide side, const Generator& x, const GradedOperator<T>& b,
                                 const Representation<T>& rep) {
  if (b.parity != 0 && b.parity != 1) throw QabError("adjoint_action: parity undefined");
  const int i = x.index - 1;
  const Matrix<T>& K = rep.K[i];
  const Matrix<T> Ki = rep.K_inverse(i);
  const Complex<T> s(T((x.parity() * b.parity) != 0 ? -1 : 1));
  GradedOperator<T> out;
  out.parity = (x.parity() + b.parity) % 2;
  const Matrix<T>& B = b.matrix;
  if (side == AdSide::Right) {
    switch (x.kind) {
      case GenKind::E: out.matrix = K * B * rep.E[i] - s * (K * rep.E[i] * B); break;
      case GenKind::F: out.matrix = B * rep.F[i] - s * (rep.F[i] * Ki * B * K); break;
      case GenKind::K: out.matrix = K * B * Ki; break;
    }
  } else {
    switch (x.kind) {
      case GenKind::E: out.matrix = rep.E[i] * B - s * (Ki * B * K * rep.E[i]); break;
      case GenKind::F: out.matrix = rep.F[i] * B * Ki - s * (B * rep.F[i] * Ki); break;
      case GenKind::K: out.matrix = Ki * B * K; break;
    }
  }
  return out;
}

template <class T>
std::map<std::string, GradedOperator<T>> TwistedCharges<T>::named() const {
  return {{"Et321", Et321}, {"Ft321", Ft321}, {"Et21", Et21}, {"Ft21", Ft21},
          {"Et1", Et1},     {"Ft1", Ft1},     {"C2", C2},     {"C3", C3}};
}

template <class T>
TwistedCharges<T> twisted_boundary_charges(const Representation<T>& rep,
                                           const ModelParams<T>& p) {
  const auto adr = [&](const char* g, const GradedOperator<T>& b) {
    return adjoint_action(AdSide::Right, parse_generator(g), b, rep);
  };
  const Matrix<T> K4i = rep.K_inverse(3);
  TwistedCharges<T> t;
  t.d_x = twist_d_x(p);
  t.d_y = twist_d_y(p);
  const GradedOperator<T> E1p{rep.K[0] * rep.E[0], 0};
  const GradedOperator<T> E4p{rep.K[3] * rep.E[3], 1};
  t.theta_F4 = adr("E3", adr("E2", E1p));
  t.theta_E4p = adr("F3", adr("F2", GradedOperator<T>{rep.F[0], 0}));
  t.Et321 = {rep.F[3] * K4i + t.d_y * t.theta_F4.matrix * K4i, 1};
  t.Ft321 = {E4p.matrix * K4i + t.d_x * t.theta_E4p.matrix * K4i, 1};
  t.Et21 = adr("F3", t.Et321);
  t.Ft21 = adr("E3", t.Ft321);
  t.Et1 = adr("F2", adr("F3", t.Et321));
  t.Ft1 = adr("E2", adr("E3", t.Ft321));
  t.C2 = adr("E2", t.Et321);
  t.C3 = adr("F2", t.Ft321);
  return t;
}

template <class T>
std::vector<Check> coideal_expansion_check(const Kinematics<T>& kin1, const Kinematics<T>& kin2,
                                           const ModelParams<T>& p, double tol) {
  const Representation<T> R1 = build_representation(kin1, p);
  const Representation<T> R2 = build_representation(kin2, p);
  const Representation<T> R12 = coproduct_representation(R1, R2);
  const Parity& p1 = R1.parity;
  const Complex<T> one(T(1));
  const Complex<T>& q = p.q;
  const Complex<T> U = R1.U;
  const Matrix<T> I2 = identity<T>(R2.dim());
  const TwistedCharges<T> t12 = twisted_boundary_charges(R12, p);
  const TwistedCharges<T> t1 = twisted_boundary_charges(R1, p);
  const TwistedCharges<T> t2 = twisted_boundary_charges(R2, p);
  const auto adr1 = [&](const char* g, const GradedOperator<T>& b) {
    return adjoint_action(AdSide::Right, parse_generator(g), b, R1);
  };
  const auto adr2 = [&](const char* g, const GradedOperator<T>& b) {
    return adjoint_action(AdSide::Right, parse_generator(g), b, R2);
  };
  auto gt = [&](const Matrix<T>& a, int pa, const Matrix<T>& b, int pb) {
    return graded_tensor<T>({a, pa}, {b, pb}, p1).matrix;
  };
  const Matrix<T> K4i1 = R1.K_inverse(3);
  const Matrix<T> K5_2 = R2.K[0] * R2.K[1] * R2.K[2] * R2.K_inverse(3);
  const Matrix<T> K1K4i_2 = R2.K[0] * R2.K_inverse(3);
  const GradedOperator<T> E1p1{R1.K[0] * R1.E[0], 0};
  const GradedOperator<T> E2p2{R2.K[1] * R2.E[1], 1};
  const Complex<T> q2m1 = q * q - one;

  std::vector<Check> out;
  {
    Matrix<T> rhs = gt(R1.F[3] * K4i1, 1, I2, 0) + gt(U * K4i1, 0, t2.Et321.matrix, 1) +
                    t1.d_y * gt(t1.theta_F4.matrix * K4i1, 1, K5_2, 0);
    const Matrix<T> a = K4i1 * adr1("E2", E1p1).matrix;
    const Matrix<T> b = K5_2 * R2.E[2];
    const Matrix<T> c = E1p1.matrix * K4i1;
    const Matrix<T> d = K1K4i_2 * adr2("E3", E2p2).matrix;
    rhs += t1.d_y * q2m1 * (gt(Matrix<T>(a / q), 1, b, 0) - gt(Matrix<T>(U * c), 0, d, 1));
    out.push_back(make_check("coproduct expansion Et321", relative_residual<T>(t12.Et321.matrix, rhs), tol));
  }
  {
    const Matrix<T> E4p1 = R1.K[3] * R1.E[3];
    Matrix<T> rhs = gt(E4p1 * K4i1, 1, I2, 0) + gt(Matrix<T>(K4i1 / U), 0, t2.Ft321.matrix, 1) +
                    t1.d_x * gt(t1.theta_E4p.matrix * K4i1, 1, K5_2, 0);
    const Matrix<T> a = K4i1 * adr1("F2", GradedOperator<T>{R1.F[0], 0}).matrix;
    const Matrix<T> b = R2.K_inverse(2) * K5_2 * R2.F[2];
    const Matrix<T> c = K4i1 * R1.F[0] / U;
    const Matrix<T> d = adr2("F3", GradedOperator<T>{R2.F[1], 1}).matrix * K1K4i_2;
    rhs -= t1.d_x * q2m1 * (gt(a, 1, b, 0) - gt(c, 0, d, 1));
    out.push_back(make_check("coproduct expansion Ft321", relative_residual<T>(t12.Ft321.matrix, rhs), tol));
  }
  {
    const Matrix<T> k14_1 = R1.K[0] * K4i1;
    const Matrix<T> k14_12 = R12.K[0] * R12.K_inverse(3);
    out.push_back(make_check("K1K4^-1 group-like",
                             relative_residual<T>(k14_12, kron<T>(k14_1, K1K4i_2)), tol));
  }
  return out;
}

template <class T>
Complex<T> raising_coefficient(int k, const Complex<T>& z, const Kinematics<T>& kin,
                               const ModelParams<T>& p) {
  const int M = kin.M;
  return twist_d_x(p) * q_number(M - k - 1, p.q) * p.qpow_half(-M - 2 * k - 2) *
         (p.qpow(M) - p.qpow(2 * k + 2) * z) / kin.V;
}

template <class T>
YangianProbe yangian_limit_probe(const std::vector<double>& eps_path, int M,
                                 const Complex<T>& x_minus, const ModelParams<T>& base) {
  if (eps_path.size() < 3) throw QabError("yangian_limit_probe needs at least three q values");
  const Complex<T> one(T(1));
  const ModelParams<T> rational = make_params<T>(one, base.g, base.alpha, base.alpha_tilde,
                                                 base.gamma, base.gamma_bar);
  const Complex<T> x0 = solve_shortening(x_minus, M, rational).roots[0];
  YangianProbe probe;
  probe.M = M;
  std::map<std::string, Matrix<T>> prev;
  std::vector<std::map<std::string, double>> diffs;
  for (double eps : eps_path) {
    const ModelParams<T> p = make_params<T>(Complex<T>(T(1) + T(eps)), base.g, base.alpha,
                                            base.alpha_tilde, base.gamma, base.gamma_bar);
    const auto roots = solve_shortening(x_minus, M, p);
    using std::abs;
    const Complex<T> xp =
        abs(roots.roots[0] - x0) <= abs(roots.roots[1] - x0) ? roots.roots[0] : roots.roots[1];
    const Kinematics<T> kin = make_kinematics(M, xp, x_minus, p, p.gamma, p.gamma_bar);
    const TwistedCharges<T> t = twisted_boundary_charges(build_representation(kin, p), p);
    const Complex<T> aa = p.alpha * p.alpha_tilde;
    const Complex<T> two_eps(T(2) * T(eps));
    std::map<std::string, Matrix<T>> cur;
    for (const auto& [name, op] : t.named()) {
      const bool e_type = name[0] == 'E' || name == "C2";
      cur[name] = e_type ? Matrix<T>(aa * op.matrix / two_eps) : Matrix<T>(op.matrix / (two_eps * aa));
    }
    if (!prev.empty()) {
      YangianProbeRow row;
      row.eps = eps;
      for (const auto& [name, m] : cur) row.step_difference[name] = to_double(T((m - prev[name]).norm()));
      probe.rows.push_back(row);
    }
    for (const auto& [name, m] : cur) probe.limit_norm[name] = to_double(T(m.norm()));
    prev = std::move(cur);
  }
  // Successive differences scale like eps^rate; a rate near 1 means Cauchy at O(q-1).
  const auto& r1 = probe.rows[probe.rows.size() - 2];
  const auto& r2 = probe.rows.back();
  for (const auto& [name, d2] : r2.step_difference) {
    const double d1 = r1.step_difference.at(name);
    const double step = eps_path[eps_path.size() - 2] / eps_path.back();
    double rate;
    if (d1 == 0.0 && d2 == 0.0) {
      rate = std::numeric_limits<double>::infinity();  // constant along the path
    } else {
      rate = std::log(d1 / d2) / std::log(step);
    }
    probe.rate[name] = rate;
    probe.converges[name] = std::isfinite(probe.limit_norm[name]) && rate > 0.5;
  }
  return probe;
}

#define QAB_INSTANTIATE_COALG(T)                                                                 \
  template GradedOperator<T> graded_tensor<T>(const GradedOperator<T>&, const GradedOperator<T>&, \
                                              const Parity&);                                    \
  template Matrix<T> graded_permutation<T>(const Parity&, const Parity&);                        \
  template Representation<T> boundary_representation<T>();                                      \
  template Matrix<T> permute_rows<T>(const SignedPermutation&, const Matrix<T>&);                \
  template Matrix<T> conjugate<T>(const SignedPermutation&, const Matrix<T>&);                   \
  template Matrix<T> conjugate_transpose<T>(const SignedPermutation&, const Matrix<T>&);                                      \
  template Representation<T> coproduct_representation<T>(const Representation<T>&,               \
                                                         const Representation<T>&);              \
  template Representation<T> opposite_coproduct_representation<T>(const Representation<T>&,      \
                                                                  const Representation<T>&);     \
  template GradedOperator<T> coproduct<T>(const Generator&, const Kinematics<T>&,                \
                                          const Kinematics<T>&, const ModelParams<T>&);          \
  template GradedOperator<T> opposite_coproduct<T>(const Generator&, const Kinematics<T>&,       \
                                                   const Kinematics<T>&, const ModelParams<T>&); \
  template GradedOperator<T> reflected_coproduct<T>(const Generator&, const Kinematics<T>&,      \
                                                    const Representation<T>&,                    \
                                                    const ModelParams<T>&);                      \
  template GradedOperator<T> adjoint_action<T>(AdSide, const Generator&,                         \
                                               const GradedOperator<T>&,                         \
                                               const Representation<T>&);                        \
  template struct TwistedCharges<T>;                                                             \
  template TwistedCharges<T> twisted_boundary_charges<T>(const Representation<T>&,               \
                                                         const ModelParams<T>&);                 \
  template std::vector<Check> coideal_expansion_check<T>(const Kinematics<T>&,                   \
                                                         const Kinematics<T>&,                   \
                                                         const ModelParams<T>&, double);         \
  template Complex<T> raising_coefficient<T>(int, const Complex<T>&, const Kinematics<T>&,       \
                                             const ModelParams<T>&);                             \
  template YangianProbe yangian_limit_probe<T>(const std::vector<double>&, int,                  \
                                               const Complex<T>&, const ModelParams<T>&);

QAB_INSTANTIATE_COALG(double)
QAB_INSTANTIATE_COALG(HighReal)

}  // namespace qab
