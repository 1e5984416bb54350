#include "qab/representation.hpp"

#include <algorithm>
#include <cctype>

namespace qab {

namespace {

constexpr int kCartan[4][4] = {{2, -1, 0, -1}, {-1, 0, 1, 0}, {0, 1, -2, 1}, {-1, 0, 1, 0}};
constexpr int kDiag[4] = {1, -1, -1, -1};

}  // namespace

std::string Generator::name() const {
  const char c = kind == GenKind::E ? 'E' : kind == GenKind::F ? 'F' : 'K';
  return std::string(1, c) + std::to_string(index);
}

Generator parse_generator(const std::string& text) {
  if (text.size() != 2 || (text[0] != 'E' && text[0] != 'F' && text[0] != 'K') || text[1] < '1' ||
      text[1] > '4')
    throw QabError("unknown generator: " + text);
  const GenKind kind = text[0] == 'E' ? GenKind::E : text[0] == 'F' ? GenKind::F : GenKind::K;
  return {kind, text[1] - '0'};
}

int RepSpace::index_of(const BasisState& s) const {
  if (s.m < 0 || s.m > 1 || s.n < 0 || s.n > 1 || s.k < 0 || s.l < 0 || s.m + s.n + s.k + s.l != M)
    return -1;
  if (s.m == 0 && s.n == 0) return family_index(1, s.k);
  if (s.m == 1 && s.n == 1) return family_index(2, s.k + 1);
  if (s.m == 1) return family_index(3, s.k);
  return family_index(4, s.k);
}

int RepSpace::family_index(int family, int k) const {
  const int f = family - 1;
  const int first_k = family == 2 ? 1 : 0;
  const int j = k - first_k;
  if (f < 0 || f > 3 || j < 0 || j >= family_size[f]) return -1;
  return family_offset[f] + j;
}

RepSpace build_basis(int M) {
  if (M < 1) throw QabError("bound-state number must be >= 1");
  RepSpace s;
  s.M = M;
  s.family_size = {M + 1, M - 1, M, M};
  s.family_offset = {0, M + 1, 2 * M, 3 * M};
  for (int k = 0; k <= M; ++k) s.states.push_back({0, 0, k, M - k});
  for (int k = 1; k <= M - 1; ++k) s.states.push_back({1, 1, k - 1, M - k - 1});
  for (int k = 0; k < M; ++k) s.states.push_back({1, 0, k, M - k - 1});
  for (int k = 0; k < M; ++k) s.states.push_back({0, 1, k, M - k - 1});
  for (const auto& st : s.states) s.parity.push_back((st.m + st.n) % 2);
  return s;
}

template <class T>
const Matrix<T>& Representation<T>::matrix(const Generator& g) const {
  if (g.index < 1 || g.index > 4) throw QabError("generator index out of range");
  const int i = g.index - 1;
  switch (g.kind) {
    case GenKind::E: return E[i];
    case GenKind::F: return F[i];
    default: return K[i];
  }
}

template <class T>
Matrix<T> Representation<T>::K_inverse(int i) const {
  // All K are diagonal in every module built here.
  Matrix<T> out = Matrix<T>::Zero(dim(), dim());
  const Complex<T> one(T(1));
  for (int j = 0; j < dim(); ++j) out(j, j) = one / K[i](j, j);
  return out;
}

template <class T>
Representation<T> build_representation(const Kinematics<T>& kin, const ModelParams<T>& p) {
  const RepSpace space = build_basis(kin.M);
  const int n = space.dim();
  const Complex<T> one(T(1));
  Representation<T> rep;
  rep.parity = space.parity;
  rep.U = kin.U;
  rep.V = kin.V;
  for (int i = 0; i < 4; ++i) {
    rep.E[i] = Matrix<T>::Zero(n, n);
    rep.F[i] = Matrix<T>::Zero(n, n);
    rep.K[i] = Matrix<T>::Zero(n, n);
  }
  auto put = [&](Matrix<T>& m, const BasisState& target, int src, const Complex<T>& v) {
    const int t = space.index_of(target);
    if (t >= 0) m(t, src) += v;
  };
  auto sign = [](int m) { return m % 2 == 0 ? 1 : -1; };
  const Complex<T>& q = p.q;
  for (int j = 0; j < n; ++j) {
    const auto [m, nn, k, l] = space.states[j];
    rep.weights.push_back({l - k, nn - m});
    rep.K[0](j, j) = ipow(q, l - k);
    rep.K[2](j, j) = ipow(q, nn - m);
    const Complex<T> h = p.qpow_half(k - l + m - nn);
    rep.K[1](j, j) = h / kin.V;
    rep.K[3](j, j) = h * kin.V;
    if (k > 0) put(rep.E[0], {m, nn, k - 1, l + 1}, j, q_number(k, q));
    if (l > 0) put(rep.F[0], {m, nn, k + 1, l - 1}, j, q_number(l, q));
    if (m == 0 && nn == 1) put(rep.E[2], {1, 0, k, l}, j, one);
    if (m == 1 && nn == 0) put(rep.F[2], {0, 1, k, l}, j, one);
    const Labels<T>* labels[2] = {&kin.labels, &kin.affine};
    for (int which = 0; which < 2; ++which) {
      const Labels<T>& lab = *labels[which];
      Matrix<T>& Em = rep.E[which == 0 ? 1 : 3];
      Matrix<T>& Fm = rep.F[which == 0 ? 1 : 3];
      const Complex<T> s(T(sign(m)));
      if (nn == 0 && l > 0) put(Em, {m, 1, k, l - 1}, j, lab.a * s * q_number(l, q));
      if (m == 1) put(Em, {0, nn, k + 1, l}, j, lab.b);
      if (m == 0 && k > 0) put(Fm, {1, nn, k - 1, l}, j, lab.c * q_number(k, q));
      if (nn == 1) put(Fm, {m, 0, k, l + 1}, j, lab.d * s);
    }
  }
  return rep;
}

template <class T>
GradedOperator<T> generator_matrix(const Generator& gen, const Kinematics<T>& kin,
                                   const ModelParams<T>& params, const RepSpace& space) {
  if (space.M != kin.M) throw QabError("space and kinematics disagree on M");
  return build_representation(kin, params).op(gen);
}

template <class T>
GradedOperator<T> graded_commutator(const GradedOperator<T>& a, const GradedOperator<T>& b) {
  if (a.matrix.cols() != b.matrix.rows() || a.matrix.rows() != b.matrix.cols())
    throw QabError("graded_commutator: dimension mismatch");
  if ((a.parity != 0 && a.parity != 1) || (b.parity != 0 && b.parity != 1))
    throw QabError("graded_commutator: parity undefined");
  const T s = (a.parity * b.parity) != 0 ? T(-1) : T(1);
  GradedOperator<T> out;
  out.matrix = a.matrix * b.matrix - Complex<T>(s) * (b.matrix * a.matrix);
  out.parity = (a.parity + b.parity) % 2;
  return out;
}

template <class T>
GradedOperator<T> composite_charge(const std::string& word, const Representation<T>& rep) {
  if (word.size() < 2 || (word[0] != 'E' && word[0] != 'F'))
    throw QabError("malformed charge word: " + word);
  std::vector<Generator> gens;
  for (std::size_t i = 1; i < word.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(word[i])) || word[i] < '1' || word[i] > '4')
      throw QabError("malformed charge word: " + word);
    gens.push_back(parse_generator(std::string{word[0], word[i]}));
  }
  GradedOperator<T> acc = rep.op(gens.back());
  for (int i = static_cast<int>(gens.size()) - 2; i >= 0; --i)
    acc = graded_commutator(rep.op(gens[i]), acc);
  return acc;
}

template <class T>
double parity_violation(const GradedOperator<T>& op, const Parity& parity) {
  T acc(0);
  for (Eigen::Index r = 0; r < op.matrix.rows(); ++r)
    for (Eigen::Index c = 0; c < op.matrix.cols(); ++c)
      if ((parity[r] + parity[c] + op.parity) % 2 != 0) acc += std::norm(op.matrix(r, c));
  using std::sqrt;
  return to_double(T(sqrt(acc)));
}

template <class T>
std::vector<Check> verify_algebra(const Representation<T>& rep, const ModelParams<T>& p,
                                  double tol) {
  std::vector<Check> out;
  const int n = rep.dim();
  const Complex<T> one(T(1));
  const Matrix<T> I = identity<T>(n);
  const Complex<T>& q = p.q;
  std::array<Matrix<T>, 4> Ki;
  for (int i = 0; i < 4; ++i) Ki[i] = rep.K_inverse(i);
  const auto& E = rep.E;
  const auto& F = rep.F;
  const auto& K = rep.K;
  const int par[4] = {0, 1, 0, 1};
  auto gc = [&](const Matrix<T>& a, int pa, const Matrix<T>& b, int pb) -> Matrix<T> {
    return graded_commutator<T>({a, pa}, {b, pb}).matrix;
  };
  auto idx = [](int i) { return std::to_string(i + 1); };

  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      out.push_back(make_check("K" + idx(i) + "E" + idx(j) + "K" + idx(i) + "^-1",
                               relative_residual<T>(Matrix<T>(K[i] * E[j] * Ki[i]),
                                                    Matrix<T>(ipow(q, kCartan[i][j]) * E[j])),
                               tol));
      out.push_back(make_check("K" + idx(i) + "F" + idx(j) + "K" + idx(i) + "^-1",
                               relative_residual<T>(Matrix<T>(K[i] * F[j] * Ki[i]),
                                                    Matrix<T>(ipow(q, -kCartan[i][j]) * F[j])),
                               tol));
    }

  const Complex<T> U2 = rep.U * rep.U;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Matrix<T> lhs = gc(E[i], par[i], F[j], par[j]);
      Matrix<T> rhs;
      if (i == j) {
        rhs = Complex<T>(T(kDiag[i])) * (K[i] - Ki[i]) / (q - one / q);
      } else if (i == 1 && j == 3) {
        rhs = -(p.g_tilde / p.alpha_tilde) * (K[3] - U2 * Ki[1]);
      } else if (i == 3 && j == 1) {
        rhs = p.g_tilde * p.alpha_tilde * (K[1] - Ki[3] / U2);
      } else {
        rhs = Matrix<T>::Zero(n, n);
      }
      out.push_back(make_check("[E" + idx(i) + ",F" + idx(j) + "}", relative_residual<T>(lhs, rhs), tol));
    }

  const Complex<T> serre_c = q - Complex<T>(T(2)) + one / q;
  const Matrix<T> zero = Matrix<T>::Zero(n, n);
  auto vacuous_note = [&](const Matrix<T>& a, const Matrix<T>& b) -> std::string {
    const double scale = 1e-13 * std::max(1.0, to_double(T(I.norm())));
    return (to_double(T(a.norm())) < scale && to_double(T(b.norm())) < scale)
               ? "vacuous in this module: both terms vanish identically"
               : "";
  };
  const std::array<const std::array<Matrix<T>, 4>*, 2> families = {&E, &F};
  const char* fam_name[2] = {"E", "F"};
  for (int f = 0; f < 2; ++f) {
    const auto& X = *families[f];
    const std::string nm = fam_name[f];
    for (int j : {0, 2})
      for (int k : {1, 3}) {
        const Matrix<T> nested = gc(X[j], 0, gc(X[j], 0, X[k], 1), 1);
        const Matrix<T> prod = X[j] * X[k] * X[j];
        out.push_back(make_check("serre cubic " + nm + idx(j) + nm + idx(j) + nm + idx(k),
                                 relative_residual<T>(Matrix<T>(nested - serre_c * prod), zero), tol,
                                 vacuous_note(nested, prod)));
      }
    out.push_back(make_check("serre [" + nm + "1," + nm + "3]",
                             relative_residual<T>(gc(X[0], 0, X[2], 0), zero), tol));
    out.push_back(make_check("serre " + nm + "2" + nm + "2",
                             relative_residual<T>(Matrix<T>(X[1] * X[1]), zero), tol));
    out.push_back(make_check("serre " + nm + "4" + nm + "4",
                             relative_residual<T>(Matrix<T>(X[3] * X[3]), zero), tol));
    out.push_back(make_check("serre {" + nm + "2," + nm + "4}",
                             relative_residual<T>(gc(X[1], 1, X[3], 1), zero), tol));
  }

  // Central elements. Index 0,1,2 = C1,C2,C3; 3,4,5 = affine partners.
  const Complex<T> V2 = rep.V * rep.V;
  const Complex<T> a4 = p.alpha * p.alpha_tilde * p.alpha_tilde;
  auto quartic = [&](const std::array<Matrix<T>, 4>& X, int k) -> Matrix<T> {
    return gc(gc(X[0], 0, X[k], 1), 1, gc(X[2], 0, X[k], 1), 1) - serre_c * X[k] * X[0] * X[2] * X[k];
  };
  std::array<Matrix<T>, 6> central = {
      Matrix<T>(K[0] * K[1] * K[1] * K[2]), quartic(E, 1), quartic(F, 1),
      Matrix<T>(K[0] * K[3] * K[3] * K[2]), quartic(E, 3), quartic(F, 3)};
  std::array<Complex<T>, 6> expected = {
      one / V2,
      p.g * p.alpha * (one - U2 * V2),
      p.g / p.alpha * (one / V2 - one / U2),
      V2,
      p.g * a4 * (one - one / (U2 * V2)),
      p.g / a4 * (V2 - U2)};
  const char* central_name[6] = {"C1", "C2", "C3", "C1^", "C2^", "C3^"};
  for (int c = 0; c < 6; ++c) {
    out.push_back(make_check(std::string("central value ") + central_name[c],
                             relative_residual<T>(central[c], Matrix<T>(expected[c] * I)), tol));
    double comm = 0.0;
    for (int i = 0; i < 4; ++i)
      for (const Matrix<T>* X : {&E[i], &F[i], &K[i]})
        comm = std::max(comm, relative_residual<T>(Matrix<T>(central[c] * *X), Matrix<T>(*X * central[c])));
    out.push_back(make_check(std::string("centrality ") + central_name[c], comm, tol));
  }
  out.push_back(make_check("K1K2K3K4 = 1",
                           relative_residual<T>(Matrix<T>(K[0] * K[1] * K[2] * K[3]), I), tol));
  for (int i = 0; i < 4; ++i) {
    out.push_back(make_check("parity E" + idx(i), parity_violation<T>({E[i], par[i]}, rep.parity), tol));
    out.push_back(make_check("parity F" + idx(i), parity_violation<T>({F[i], par[i]}, rep.parity), tol));
  }
  return out;
}

template <class T>
std::vector<Check> verify_bound_state(const Kinematics<T>& kin, const ModelParams<T>& p,
                                      double tol) {
  auto out = verify_algebra(build_representation(kin, p), p, tol);
  out.push_back(make_check("shortening", shortening_residual(kin.x_plus, kin.x_minus, kin.M, p), tol));
  const auto ce = central_elements(kin.x_plus, kin.x_minus, kin.M, p, 1.0);
  out.push_back(make_check("U^2 expressions agree", ce.u_consistency, tol));
  out.push_back(make_check("V^2 expressions agree", ce.v_consistency, tol));
  out.push_back(make_check("z from x+ and x-", ce.z_consistency, tol));
  const auto lc = label_constraints(kin, p, false);
  const auto la = label_constraints(kin, p, true);
  out.push_back(make_check("labels ad", lc.ad, tol));
  out.push_back(make_check("labels bc", lc.bc, tol));
  out.push_back(make_check("labels ab", lc.ab, tol));
  out.push_back(make_check("labels cd", lc.cd, tol));
  out.push_back(make_check("affine labels", la.max(), tol));
  return out;
}

#define QAB_INSTANTIATE_REP(T)                                                                   \
  template struct Representation<T>;                                                             \
  template Representation<T> build_representation<T>(const Kinematics<T>&, const ModelParams<T>&); \
  template GradedOperator<T> generator_matrix<T>(const Generator&, const Kinematics<T>&,          \
                                                 const ModelParams<T>&, const RepSpace&);         \
  template GradedOperator<T> graded_commutator<T>(const GradedOperator<T>&,                      \
                                                  const GradedOperator<T>&);                     \
  template GradedOperator<T> composite_charge<T>(const std::string&, const Representation<T>&);  \
  template double parity_violation<T>(const GradedOperator<T>&, const Parity&);                  \
  template std::vector<Check> verify_algebra<T>(const Representation<T>&, const ModelParams<T>&, \
                                                double);                                         \
  template std::vector<Check> verify_bound_state<T>(const Kinematics<T>&, const ModelParams<T>&, \
                                                    double);

QAB_INSTANTIATE_REP(double)
QAB_INSTANTIATE_REP(HighReal)

}  // namespace qab
