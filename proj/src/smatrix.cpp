#include "qab/smatrix.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <Eigen/SparseCore>

#include <algorithm>
#include <functional>
#include <map>
#include <limits>

namespace qab {

namespace {

constexpr Eigen::Index kSvdColumnLimit = 160;

template <class T>
struct RightNull {
  Matrix<T> vectors;
  std::vector<double> sv;
  double threshold;
};

/// Orthonormal kernel of a dense block; singular values (or QR pivots) appended to sv.
template <class T>
Matrix<T> dense_kernel(const Matrix<T>& a, double threshold, std::vector<double>& sv) {
  using std::abs;
  const Eigen::Index cols = a.cols();
  Eigen::Index rank = 0;
  if (cols > kSvdColumnLimit) {
    // Rank-revealing QR of a^H: its trailing Householder columns span ker(a).
    Eigen::ColPivHouseholderQR<Matrix<T>> qr(a.adjoint());
    const Matrix<T> R = qr.matrixR().template triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < std::min(R.rows(), R.cols()); ++i) {
      const double pivot = to_double(T(abs(R(i, i))));
      sv.push_back(pivot);
      if (pivot >= threshold) ++rank;
    }
    const Matrix<T> Q = qr.householderQ();
    return Q.rightCols(cols - rank);
  }
  // Eigen 3.4's BDCSVD returns wrong kernels for these highly degenerate complex systems.
  Eigen::JacobiSVD<Matrix<T>, Eigen::ColPivHouseholderQRPreconditioner> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    sv.push_back(to_double(s(i)));
    if (to_double(s(i)) >= threshold) ++rank;
  }
  return svd.matrixV().rightCols(cols - rank);
}

/// Kernel of a, solved independently on each connected block of its sparsity pattern.
template <class T>
RightNull<T> right_null(const Matrix<T>& a, std::size_t n_unknowns, double scale) {
  RightNull<T> out;
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  // Scale by the operators in the condition: a condition already implied by earlier ones
  // reduces to pure roundoff, whose own largest singular value says nothing about rank.
  out.threshold = static_cast<double>(n_unknowns) * to_double(machine_epsilon<T>()) * scale * 1e3;

  std::vector<Eigen::Index> parent(static_cast<std::size_t>(cols));
  for (Eigen::Index c = 0; c < cols; ++c) parent[c] = c;
  auto find = [&](Eigen::Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<Eigen::Index> row_anchor(static_cast<std::size_t>(rows), -1);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (a(r, c) == Complex<T>(T(0))) continue;
      if (row_anchor[r] < 0) {
        row_anchor[r] = c;
      } else {
        parent[find(c)] = find(row_anchor[r]);
      }
    }
  std::map<Eigen::Index, std::vector<Eigen::Index>> comp_cols, comp_rows;
  for (Eigen::Index c = 0; c < cols; ++c) comp_cols[find(c)].push_back(c);
  for (Eigen::Index r = 0; r < rows; ++r)
    if (row_anchor[r] >= 0) comp_rows[find(row_anchor[r])].push_back(r);

  std::vector<std::pair<const std::vector<Eigen::Index>*, Matrix<T>>> pieces;
  Eigen::Index total = 0;
  for (const auto& [root, cs] : comp_cols) {
    const auto it = comp_rows.find(root);
    Matrix<T> kernel;
    if (it == comp_rows.end()) {
      kernel = Matrix<T>::Identity(static_cast<Eigen::Index>(cs.size()), static_cast<Eigen::Index>(cs.size()));
    } else {
      const auto& rs = it->second;
      Matrix<T> block(static_cast<Eigen::Index>(rs.size()), static_cast<Eigen::Index>(cs.size()));
      for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = 0; j < cs.size(); ++j)
          block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(rs[i], cs[j]);
      kernel = dense_kernel(block, out.threshold, out.sv);
    }
    total += kernel.cols();
    pieces.emplace_back(&cs, std::move(kernel));
  }
  out.vectors = Matrix<T>::Zero(cols, total);
  Eigen::Index at = 0;
  for (const auto& [cs, kernel] : pieces) {
    for (std::size_t j = 0; j < cs->size(); ++j)
      out.vectors.block((*cs)[j], at, 1, kernel.cols()) = kernel.row(static_cast<Eigen::Index>(j));
    at += kernel.cols();
  }
  std::sort(out.sv.begin(), out.sv.end(), std::greater<>());
  return out;
}

}  // namespace

std::vector<std::pair<int, int>> weight_pattern(const std::vector<std::array<int, 2>>& tw,
                                                const std::vector<std::array<int, 2>>& sw) {
  std::vector<std::pair<int, int>> out;
  for (int r = 0; r < static_cast<int>(tw.size()); ++r)
    for (int c = 0; c < static_cast<int>(sw.size()); ++c)
      if (tw[r] == sw[c]) out.emplace_back(r, c);
  return out;
}

template <class T>
Matrix<T> NullSpace<T>::assemble(int j) const {
  Matrix<T> X = Matrix<T>::Zero(rows, cols);
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    X(unknowns[u].first, unknowns[u].second) = basis(static_cast<Eigen::Index>(u), j);
  return X;
}

template <class T>
NullSpace<T> intertwiner_nullspace(const std::vector<IntertwinerCondition<T>>& conditions,
                                   int rows, int cols,
                                   const std::vector<std::pair<int, int>>& unknowns) {
  NullSpace<T> ns;
  ns.rows = rows;
  ns.cols = cols;
  ns.unknowns = unknowns;
  const auto nu = static_cast<Eigen::Index>(unknowns.size());
  Matrix<T> basis = Matrix<T>::Identity(nu, nu);
  bool first = true;
  const double zero_cut = 0.0;
  std::vector<int> row_id(static_cast<std::size_t>(rows) * cols, -1);
  for (const auto& cond : conditions) {
    const Matrix<T>& A = *cond.source;
    const Matrix<T>& B = *cond.target;
    if (A.rows() != cols || B.rows() != rows) throw QabError("intertwiner condition shape mismatch");
    // Sparse views: nonzeros of each row of A and each column of B.
    std::vector<std::vector<std::pair<int, Complex<T>>>> a_row(cols), b_col(rows);
    for (int c = 0; c < cols; ++c)
      for (int c2 = 0; c2 < cols; ++c2)
        if (std::abs(to_double(A(c, c2))) > zero_cut) a_row[c].emplace_back(c2, A(c, c2));
    for (int r = 0; r < rows; ++r)
      for (int r2 = 0; r2 < rows; ++r2)
        if (std::abs(to_double(B(r2, r))) > zero_cut) b_col[r].emplace_back(r2, B(r2, r));
    std::fill(row_id.begin(), row_id.end(), -1);
    int n_rows = 0;
    auto rid = [&](int r, int c) {
      int& slot = row_id[static_cast<std::size_t>(r) * cols + c];
      if (slot < 0) slot = n_rows++;
      return slot;
    };
    for (const auto& [r, c] : unknowns) {
      for (const auto& e : a_row[c]) rid(r, e.first);
      for (const auto& e : b_col[r]) rid(e.first, c);
    }
    if (n_rows == 0) continue;
    std::vector<Eigen::Triplet<Complex<T>>> entries;
    for (Eigen::Index u = 0; u < nu; ++u) {
      const auto [r, c] = unknowns[u];
      for (const auto& e : a_row[c])
        entries.emplace_back(row_id[static_cast<std::size_t>(r) * cols + e.first], u, e.second);
      for (const auto& e : b_col[r])
        entries.emplace_back(row_id[static_cast<std::size_t>(e.first) * cols + c], u, -e.second);
    }
    Eigen::SparseMatrix<Complex<T>> L(n_rows, nu);
    L.setFromTriplets(entries.begin(), entries.end());
    const Matrix<T> reduced = first ? Matrix<T>(L) : Matrix<T>(L * basis);
    if (reduced.norm() == T(0)) continue;
    auto rn = right_null(reduced, unknowns.size(), to_double(T(A.norm() + B.norm())));
    basis = first ? rn.vectors : Matrix<T>(basis * rn.vectors);
    first = false;
    ns.singular_values = rn.sv;
    ns.threshold = rn.threshold;
    if (basis.cols() == 0) break;
  }
  // Re-orthonormalize the accumulated basis.
  if (basis.cols() > 0) {
    Eigen::HouseholderQR<Matrix<T>> qr(basis);
    basis = qr.householderQ() * Matrix<T>::Identity(basis.rows(), basis.cols());
  }
  ns.basis = basis;
  ns.dim = static_cast<int>(basis.cols());
  return ns;
}

template <class T>
NullSpace<T> s_matrix_nullspace(const Representation<T>& r1, const Representation<T>& r2,
                                bool include_affine) {
  const Representation<T> d = coproduct_representation(r1, r2);
  const Representation<T> dop = opposite_coproduct_representation(r1, r2);
  std::vector<IntertwinerCondition<T>> conds;
  // Fermionic and bosonic sl2 first: they cut the unknowns fastest.
  for (int j : {2, 0, 1, 3}) {
    if (!include_affine && j == 3) continue;
    conds.push_back({&d.E[j], &dop.E[j]});
    conds.push_back({&d.F[j], &dop.F[j]});
  }
  const int n = d.dim();
  return intertwiner_nullspace(conds, n, n, weight_pattern(d.weights, d.weights));
}

template <class T>
SMatrix<T> solve_intertwiner(const Kinematics<T>& kin1, const Kinematics<T>& kin2,
                             const ModelParams<T>& params, bool include_affine) {
  const Representation<T> r1 = build_representation(kin1, params);
  const Representation<T> r2 = build_representation(kin2, params);
  const NullSpace<T> ns = s_matrix_nullspace(r1, r2, include_affine);
  SMatrix<T> s;
  s.kin1 = kin1;
  s.kin2 = kin2;
  s.null_dim = ns.dim;
  s.singular_values = ns.singular_values;
  s.threshold = ns.threshold;
  s.unknowns = ns.unknowns.size();
  if (ns.dim != 1)
    throw DegenerateKinematics("S-matrix null space has dimension " + std::to_string(ns.dim),
                               ns.dim);
  s.op = ns.assemble(0);
  const Complex<T> anchor = s.op(0, 0);
  if (std::abs(to_double(anchor)) < 1e-12 * std::max(1.0, to_double(T(s.op.norm()))))
    throw DegenerateKinematics("S-matrix anchor element vanishes", ns.dim);
  s.op /= anchor;
  const Representation<T> d = coproduct_representation(r1, r2);
  const Representation<T> dop = opposite_coproduct_representation(r1, r2);
  double res = 0.0;
  for (int j = 0; j < 4; ++j)
    for (const auto* pair : {&d.E, &d.F, &d.K}) {
      const auto& op_d = (*pair)[j];
      const auto& op_op = pair == &d.E ? dop.E[j] : pair == &d.F ? dop.F[j] : dop.K[j];
      res = std::max(res, relative_residual<T>(Matrix<T>(s.op * op_d), Matrix<T>(op_op * s.op)));
    }
  s.intertwining_residual = res;
  return s;
}

template <class T>
SMatrix<T> s_at(const Kinematics<T>& kin1, const Kinematics<T>& kin2, bool reflect1,
                bool reflect2, const ModelParams<T>& params) {
  const Kinematics<T> a = reflect1 ? reflect_kinematics(kin1, params) : kin1;
  const Kinematics<T> b = reflect2 ? reflect_kinematics(kin2, params) : kin2;
  return solve_intertwiner(a, b, params);
}

template <class T>
Matrix<T> braiding(const SMatrix<T>& s, const Parity& p1, const Parity& p2) {
  return permute_rows<T>(graded_permutation_map(p1, p2), s.op);
}

template <class T>
Matrix<T> embed_13(const Matrix<T>& s13, const Parity& p1, const Parity& p2, const Parity& p3) {
  // 1 (x) P(V3,V2) as a signed permutation of V1 (x) V3 (x) V2 -> V1 (x) V2 (x) V3.
  const SignedPermutation inner = graded_permutation_map(p3, p2);
  const int block = static_cast<int>(inner.target.size());
  SignedPermutation P;
  for (std::size_t i = 0; i < p1.size(); ++i)
    for (int a = 0; a < block; ++a) {
      P.target.push_back(static_cast<int>(i) * block + inner.target[a]);
      P.sign.push_back(inner.sign[a]);
    }
  return conjugate<T>(P, kron<T>(s13, identity<T>(p2.size())));
}

template <class T>
double ybe_residual(const Kinematics<T>& k1, const Kinematics<T>& k2, const Kinematics<T>& k3,
                    const ModelParams<T>& params) {
  // Coinciding legs make one S a bare permutation and the check vacuous.
  const auto same = [](const Kinematics<T>& a, const Kinematics<T>& b) {
    return a.M == b.M && std::abs(to_double(Complex<T>(a.x_minus - b.x_minus))) < 1e-9 &&
           std::abs(to_double(Complex<T>(a.x_plus - b.x_plus))) < 1e-9;
  };
  if (same(k1, k2) || same(k2, k3) || same(k1, k3))
    throw DegenerateKinematics("coinciding kinematics in the Yang-Baxter check", 1);
  const Parity p1 = build_basis(k1.M).parity;
  const Parity p2 = build_basis(k2.M).parity;
  const Parity p3 = build_basis(k3.M).parity;
  const Matrix<T> S12 = kron<T>(solve_intertwiner(k1, k2, params).op, identity<T>(p3.size()));
  const Matrix<T> S23 = kron<T>(identity<T>(p1.size()), solve_intertwiner(k2, k3, params).op);
  const Matrix<T> S13 = embed_13<T>(solve_intertwiner(k1, k3, params).op, p1, p2, p3);
  return relative_residual<T>(Matrix<T>(S23 * S13 * S12), Matrix<T>(S12 * S13 * S23));
}

#define QAB_INSTANTIATE_SMAT(T)                                                                  \
  template struct NullSpace<T>;                                                                  \
  template NullSpace<T> intertwiner_nullspace<T>(const std::vector<IntertwinerCondition<T>>&,    \
                                                 int, int,                                       \
                                                 const std::vector<std::pair<int, int>>&);       \
  template NullSpace<T> s_matrix_nullspace<T>(const Representation<T>&,                          \
                                              const Representation<T>&, bool);                   \
  template SMatrix<T> solve_intertwiner<T>(const Kinematics<T>&, const Kinematics<T>&,           \
                                           const ModelParams<T>&, bool);                         \
  template SMatrix<T> s_at<T>(const Kinematics<T>&, const Kinematics<T>&, bool, bool,            \
                              const ModelParams<T>&);                                            \
  template Matrix<T> braiding<T>(const SMatrix<T>&, const Parity&, const Parity&);               \
  template Matrix<T> embed_13<T>(const Matrix<T>&, const Parity&, const Parity&, const Parity&); \
  template double ybe_residual<T>(const Kinematics<T>&, const Kinematics<T>&,                    \
                                  const Kinematics<T>&, const ModelParams<T>&);

QAB_INSTANTIATE_SMAT(double)
QAB_INSTANTIATE_SMAT(HighReal)

}  // namespace qab
