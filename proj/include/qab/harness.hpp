#pragma once

#include "qab/kmatrix.hpp"
#include "qab/report.hpp"

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace qab {

inline constexpr int kConfigSchemaVersion = 1;
inline constexpr const char* kSoftwareVersion = "0.1.0";

/// Tolerance tiers: closed-form identities, algebra relations, intertwiner comparisons,
/// YBE-type composites.
struct Tolerances {
  double identity = 1e-12;
  double algebra = 1e-10;
  double intertwiner = 1e-9;
  double composite = 1e-8;

  bool operator==(const Tolerances&) const = default;
};

struct RunConfig {
  int schema_version = kConfigSchemaVersion;
  std::complex<double> q, g;
  std::complex<double> alpha{0.0, 1.0};
  std::complex<double> alpha_tilde{1.0, 0.0};
  std::complex<double> gamma{1.0, 0.0};
  std::complex<double> gamma_bar{1.0, 0.0};
  std::vector<int> M{1, 2};
  int samples = 5;
  std::uint64_t seed = 1;
  std::vector<std::complex<double>> x_minus;  // fixed points used before random sampling
  Tolerances tol;
  int precision_bits = 0;  // 0: double, otherwise MPFR mantissa bits
  std::vector<double> limit_eps{1e-2, 1e-3, 1e-4};
  std::vector<std::string> suites{"rep-check", "coalgebra", "smatrix", "ybe",
                                  "kmatrix",   "bybe",      "unitarity", "limits"};

  bool operator==(const RunConfig&) const = default;
};

class ConfigError : public QabError {
 public:
  using QabError::QabError;
};

class SamplingExhausted : public QabError {
 public:
  using QabError::QabError;
};

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& config);

/// Reads and validates a JSON config; errors name the offending field.
RunConfig load_config(const std::string& path);

/// "double" -> 0, "high:<bits>" -> bits (>= 64).
int parse_precision(const std::string& text);

std::vector<std::string> known_suites();

/// splitmix64 step, used to derive independent per-point streams from the master seed.
std::uint64_t splitmix64(std::uint64_t x);

/// Stream for point `index` of the job labelled `tag`.
std::mt19937_64 point_rng(std::uint64_t seed, const std::string& tag, std::uint64_t index);

/// x- uniform on the annulus 0.5 <= |x-| <= 2, x+ the shortening root of largest modulus.
/// Rejects points within 1e-3 of the reflection-map poles (x + xi = 0 or xi x + 1 = 0 for
/// either x+ or x-), within 1e-6 of a C_k pole, or failing the consistency checks. Throws
/// SamplingExhausted after 50 rejections.
template <class T>
Kinematics<T> sample_kinematics(int M, const ModelParams<T>& params, std::mt19937_64& rng);

/// Same kinematics family with x- shifted by a random complex offset of modulus <= 1e-3.
template <class T>
Kinematics<T> perturb_kinematics(const Kinematics<T>& kin, const ModelParams<T>& params,
                                 std::mt19937_64& rng);

template <class T>
ModelParams<T> params_from_config(const RunConfig& config);

/// Runs one suite ("all" runs every configured suite) and assembles the report.
VerificationReport run_suite(const std::string& name, const RunConfig& config);

/// Worker count: QAB_THREADS if set and positive, else hardware concurrency, at least 1.
int worker_count();

}  // namespace qab
