#pragma once

#include "qab/harness.hpp"

#include <doctest.h>

namespace testutil {

using qab::Complex;
using qab::Kinematics;
using qab::Matrix;
using qab::ModelParams;

inline ModelParams<double> generic_params() {
  return qab::make_params<double>({1.3, 0.2}, {0.7, 0.1});
}

inline Kinematics<double> generic_point(int M, int index = 0, const ModelParams<double>& p = generic_params()) {
  auto rng = qab::point_rng(7, "unit/" + std::to_string(M), static_cast<std::uint64_t>(index));
  return qab::sample_kinematics(M, p, rng);
}

inline double rel(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

}  // namespace testutil
