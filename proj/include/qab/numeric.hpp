#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace qab {

/// Variable-precision real used by the `high:<bits>` precision mode.
using HighReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                               boost::multiprecision::et_off>;

template <class T>
using Complex = std::complex<T>;

template <class T>
using Matrix = Eigen::Matrix<Complex<T>, Eigen::Dynamic, Eigen::Dynamic>;

template <class T>
using Vector = Eigen::Matrix<Complex<T>, Eigen::Dynamic, 1>;

using Parity = std::vector<int>;

class QabError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sets the MPFR mantissa for HighReal on the calling thread; restores it on scope exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits10_;
};

template <class T>
inline T to_real(double x) {
  return T(x);
}

template <class T>
inline Complex<T> to_complex(std::complex<double> z) {
  return Complex<T>(T(z.real()), T(z.imag()));
}

template <class T>
inline double to_double(const T& x) {
  return static_cast<double>(x);
}

template <class T>
inline std::complex<double> to_double(const Complex<T>& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class T>
inline T machine_epsilon() {
  return std::numeric_limits<T>::epsilon();
}

template <class T>
inline T abs_of(const Complex<T>& z) {
  using std::abs;
  return abs(z);
}

template <class T>
inline Complex<T> imag_unit() {
  return Complex<T>(T(0), T(1));
}

/// z^n for integer n (negative allowed).
template <class T>
Complex<T> ipow(Complex<T> z, int n) {
  if (n < 0) return Complex<T>(T(1)) / ipow(z, -n);
  Complex<T> result(T(1));
  while (n > 0) {
    if (n & 1) result *= z;
    z *= z;
    n >>= 1;
  }
  return result;
}

/// q-number [n]_q = (q^n - q^-n)/(q - q^-1), evaluated as a finite sum so q = 1 gives n.
template <class T>
Complex<T> q_number(int n, const Complex<T>& q) {
  if (n == 0) return Complex<T>(T(0));
  if (n < 0) return -q_number(-n, q);
  Complex<T> sum(T(0));
  for (int j = 0; j < n; ++j) sum += ipow(q, n - 1 - 2 * j);
  return sum;
}

template <class T>
Complex<T> q_factorial(int n, const Complex<T>& q) {
  Complex<T> result(T(1));
  for (int j = 2; j <= n; ++j) result *= q_number(j, q);
  return result;
}

template <class T>
T frobenius(const Matrix<T>& a) {
  return a.norm();
}

/// ||lhs - rhs||_F / max(1, ||lhs||_F, ||rhs||_F)
template <class T>
double relative_residual(const Matrix<T>& lhs, const Matrix<T>& rhs) {
  using std::max;
  T denom = max(T(1), max(lhs.norm(), rhs.norm()));
  return to_double(T((lhs - rhs).norm() / denom));
}

/// Scalar version of relative_residual.
template <class T>
double relative_residual(const Complex<T>& lhs, const Complex<T>& rhs) {
  using std::abs;
  using std::max;
  T denom = max(T(1), max(T(abs(lhs)), T(abs(rhs))));
  return to_double(T(abs(lhs - rhs) / denom));
}

template <class T>
Matrix<T> identity(std::size_t n) {
  return Matrix<T>::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

/// Plain Kronecker product, row index = i1 * n2 + i2.
template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Off-scalar part ||A - (tr A / n) Id|| relative to max(1, ||A||).
template <class T>
double off_scalar_residual(const Matrix<T>& a) {
  const auto n = a.rows();
  if (n == 0) return 0.0;
  Complex<T> mean = a.trace() / Complex<T>(T(n));
  Matrix<T> scalar = mean * Matrix<T>::Identity(n, n);
  return relative_residual<T>(a, scalar);
}

template <class T>
double off_diagonal_residual(const Matrix<T>& a) {
  Matrix<T> diag = a.diagonal().asDiagonal();
  return relative_residual<T>(a, diag);
}

}  // namespace qab
