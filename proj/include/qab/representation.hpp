#pragma once

#include "qab/kinematics.hpp"
#include "qab/numeric.hpp"
#include "qab/report.hpp"

#include <array>
#include <string>
#include <vector>

namespace qab {

enum class GenKind { E, F, K };

struct Generator {
  GenKind kind;
  int index;  // 1..4

  std::string name() const;
  int parity() const { return (kind != GenKind::K && index % 2 == 0) ? 1 : 0; }
};

/// Parses "E2", "F4", "K1".
Generator parse_generator(const std::string& text);

struct BasisState {
  int m, n, k, l;
  bool operator==(const BasisState&) const = default;
};

/// States of the bound-state module, family-major:
///   |k>1 = |0,0,k,M-k>     k = 0..M
///   |k>2 = |1,1,k-1,M-k-1> k = 1..M-1
///   |k>3 = |1,0,k,M-k-1>   k = 0..M-1
///   |k>4 = |0,1,k,M-k-1>   k = 0..M-1
struct RepSpace {
  int M = 0;
  std::vector<BasisState> states;
  Parity parity;
  std::array<int, 4> family_offset{};
  std::array<int, 4> family_size{};

  int dim() const { return static_cast<int>(states.size()); }
  /// -1 when the labels do not describe a state of this module.
  int index_of(const BasisState& s) const;
  /// Index of |k>^family (family = 1..4, k in the ranges above).
  int family_index(int family, int k) const;
};

RepSpace build_basis(int M);

template <class T>
struct GradedOperator {
  Matrix<T> matrix;
  int parity = 0;
};

/// Matrices of all Chevalley generators on one module, plus the central U, V
/// and the integer weights (H1, H3) of every basis state.
template <class T>
struct Representation {
  Parity parity;
  std::vector<std::array<int, 2>> weights;
  std::array<Matrix<T>, 4> E, F, K;
  Complex<T> U, V;

  int dim() const { return static_cast<int>(parity.size()); }
  const Matrix<T>& matrix(const Generator& g) const;
  GradedOperator<T> op(const Generator& g) const { return {matrix(g), g.parity()}; }
  Matrix<T> K_inverse(int i) const;  // i = 0..3
};

template <class T>
Representation<T> build_representation(const Kinematics<T>& kin, const ModelParams<T>& params);

template <class T>
GradedOperator<T> generator_matrix(const Generator& gen, const Kinematics<T>& kin,
                                   const ModelParams<T>& params, const RepSpace& space);

/// [A, B} = AB - (-1)^{|A||B|} BA.
template <class T>
GradedOperator<T> graded_commutator(const GradedOperator<T>& a, const GradedOperator<T>& b);

/// Nested graded commutator from a word such as "E321" = [E3,[E2,E1]] or "F432".
/// A single generator word ("E2") returns that generator.
template <class T>
GradedOperator<T> composite_charge(const std::string& word, const Representation<T>& rep);

/// Norm of the entries that connect states whose parities differ by the wrong amount.
template <class T>
double parity_violation(const GradedOperator<T>& op, const Parity& parity);

/// Defining relations, Serre relations, central elements and the constraint K1K2K3K4 = 1.
/// Works on any module carrying U and V, including tensor products.
template <class T>
std::vector<Check> verify_algebra(const Representation<T>& rep, const ModelParams<T>& params,
                                  double tol = 1e-10);

/// verify_algebra plus shortening, central-element and label constraints of a single module.
template <class T>
std::vector<Check> verify_bound_state(const Kinematics<T>& kin, const ModelParams<T>& params,
                                      double tol = 1e-10);

}  // namespace qab
