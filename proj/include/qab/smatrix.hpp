#pragma once

#include "qab/coalgebra.hpp"
#include "qab/kinematics.hpp"
#include "qab/representation.hpp"

#include <utility>
#include <vector>

namespace qab {

/// One intertwining condition X A = B X, A acting on the source, B on the target.
template <class T>
struct IntertwinerCondition {
  const Matrix<T>* source;
  const Matrix<T>* target;
};

template <class T>
struct NullSpace {
  int rows = 0, cols = 0;                          // shape of X
  std::vector<std::pair<int, int>> unknowns;       // positions of X allowed to be nonzero
  Matrix<T> basis;                                 // unknowns.size() x dim, orthonormal columns
  int dim = 0;
  std::vector<double> singular_values;             // of the final stage, descending
  double threshold = 0.0;                          // zero threshold used at the final stage

  /// Assembles column j of the basis into a rows x cols matrix.
  Matrix<T> assemble(int j = 0) const;
};

/// Unknown positions of an operator commuting with the Cartan generators: entries whose
/// row and column states carry the same integer weights.
std::vector<std::pair<int, int>> weight_pattern(const std::vector<std::array<int, 2>>& target_weights,
                                                const std::vector<std::array<int, 2>>& source_weights);

/// Null space of X -> X A_j - B_j X over all conditions, restricted to the unknown positions.
/// Conditions are imposed one at a time on the current basis. Each reduced system is split
/// into decoupled blocks; a block's kernel keeps singular directions below
/// n_unknowns * eps * (||A_j|| + ||B_j||) * 1e3, so the cut scales with the condition itself.
template <class T>
NullSpace<T> intertwiner_nullspace(const std::vector<IntertwinerCondition<T>>& conditions,
                                   int rows, int cols,
                                   const std::vector<std::pair<int, int>>& unknowns);

template <class T>
struct SMatrix {
  Matrix<T> op;  // endomorphism of V1 (x) V2 with S Delta(J) = Delta^op(J) S
  Kinematics<T> kin1, kin2;
  int null_dim = 0;
  std::vector<double> singular_values;
  double threshold = 0.0;
  double intertwining_residual = 0.0;  // max over all E_i, F_i, K_i
  std::size_t unknowns = 0;
};

/// Null-space dimension of the S-matrix conditions, optionally without E4, F4.
template <class T>
NullSpace<T> s_matrix_nullspace(const Representation<T>& r1, const Representation<T>& r2,
                                bool include_affine = true);

/// Unique intertwiner normalized so that <0,0,0,M1|<0,0,0,M2| S |0,0,0,M1>|0,0,0,M2> = 1.
/// Throws DegenerateKinematics when the null space is not one-dimensional.
template <class T>
SMatrix<T> solve_intertwiner(const Kinematics<T>& kin1, const Kinematics<T>& kin2,
                             const ModelParams<T>& params, bool include_affine = true);

/// S for a pair whose legs are optionally sent through reflect_kinematics first.
template <class T>
SMatrix<T> s_at(const Kinematics<T>& kin1, const Kinematics<T>& kin2, bool reflect1,
                bool reflect2, const ModelParams<T>& params);

class DegenerateKinematics : public QabError {
 public:
  DegenerateKinematics(const std::string& what, int null_dim)
      : QabError(what), null_dim_(null_dim) {}
  int null_dim() const { return null_dim_; }

 private:
  int null_dim_;
};

/// P S: the braiding V1 (x) V2 -> V2 (x) V1.
template <class T>
Matrix<T> braiding(const SMatrix<T>& s, const Parity& p1, const Parity& p2);

/// Embeds an even operator on V1 (x) V3 into V1 (x) V2 (x) V3.
template <class T>
Matrix<T> embed_13(const Matrix<T>& s13, const Parity& p1, const Parity& p2, const Parity& p3);

/// Relative residual of S23 S13 S12 = S12 S13 S23.
template <class T>
double ybe_residual(const Kinematics<T>& k1, const Kinematics<T>& k2, const Kinematics<T>& k3,
                    const ModelParams<T>& params);

}  // namespace qab
