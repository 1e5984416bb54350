#include "qab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

namespace qab {

using nlohmann::json;

// ---------------------------------------------------------------- configuration

namespace {

std::complex<double> complex_field(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError("config field '" + path + "': expected a number or [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

double positive_field(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError("config field '" + path + "': expected a number");
  const double v = j.get<double>();
  if (!(v > 0.0)) throw ConfigError("config field '" + path + "': must be > 0");
  return v;
}

int int_field(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError("config field '" + path + "': expected an integer");
  return j.get<int>();
}

}  // namespace

std::vector<std::string> known_suites() {
  return {"rep-check", "coalgebra", "smatrix", "ybe", "kmatrix", "bybe", "unitarity", "limits"};
}

int parse_precision(const std::string& text) {
  if (text == "double") return 0;
  const std::string prefix = "high:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string digits = text.substr(prefix.size());
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
      throw ConfigError("precision: expected high:<bits>, got '" + text + "'");
    const int bits = std::stoi(digits);
    if (bits < 64) throw ConfigError("precision: high precision needs at least 64 bits");
    return bits;
  }
  throw ConfigError("precision: expected 'double' or 'high:<bits>', got '" + text + "'");
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  RunConfig c;
  if (j.contains("schema_version")) {
    c.schema_version = int_field(j["schema_version"], "schema_version");
    if (c.schema_version != kConfigSchemaVersion)
      throw ConfigError("config field 'schema_version': unsupported version " +
                        std::to_string(c.schema_version));
  }
  for (const char* required : {"q", "g"})
    if (!j.contains(required)) throw ConfigError(std::string("config field '") + required + "': missing");
  c.q = complex_field(j["q"], "q");
  c.g = complex_field(j["g"], "g");
  if (j.contains("alpha")) c.alpha = complex_field(j["alpha"], "alpha");
  if (j.contains("alpha_tilde")) c.alpha_tilde = complex_field(j["alpha_tilde"], "alpha_tilde");
  if (j.contains("gamma")) c.gamma = complex_field(j["gamma"], "gamma");
  if (j.contains("gamma_bar")) c.gamma_bar = complex_field(j["gamma_bar"], "gamma_bar");
  if (j.contains("M")) {
    if (!j["M"].is_array() || j["M"].empty()) throw ConfigError("config field 'M': expected a non-empty list");
    c.M.clear();
    for (std::size_t i = 0; i < j["M"].size(); ++i) {
      const int m = int_field(j["M"][i], "M[" + std::to_string(i) + "]");
      if (m < 1) throw ConfigError("config field 'M[" + std::to_string(i) + "]': must be >= 1");
      c.M.push_back(m);
    }
  }
  if (j.contains("samples")) {
    c.samples = int_field(j["samples"], "samples");
    if (c.samples < 1) throw ConfigError("config field 'samples': must be >= 1");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || (!j["seed"].is_number_unsigned() && j["seed"].get<std::int64_t>() < 0))
      throw ConfigError("config field 'seed': expected a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("x_minus")) {
    if (!j["x_minus"].is_array()) throw ConfigError("config field 'x_minus': expected a list");
    for (std::size_t i = 0; i < j["x_minus"].size(); ++i)
      c.x_minus.push_back(complex_field(j["x_minus"][i], "x_minus[" + std::to_string(i) + "]"));
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) throw ConfigError("config field 'tolerances': expected an object");
    for (const auto& [key, value] : t.items()) {
      const std::string path = "tolerances." + key;
      if (key == "identity") c.tol.identity = positive_field(value, path);
      else if (key == "algebra") c.tol.algebra = positive_field(value, path);
      else if (key == "intertwiner") c.tol.intertwiner = positive_field(value, path);
      else if (key == "composite") c.tol.composite = positive_field(value, path);
      else throw ConfigError("config field '" + path + "': unknown tolerance tier");
    }
  }
  if (j.contains("precision")) {
    if (!j["precision"].is_string()) throw ConfigError("config field 'precision': expected a string");
    c.precision_bits = parse_precision(j["precision"].get<std::string>());
  }
  if (j.contains("limit_eps")) {
    const json& e = j["limit_eps"];
    if (!e.is_array() || e.size() < 3) throw ConfigError("config field 'limit_eps': expected at least three values");
    c.limit_eps.clear();
    for (std::size_t i = 0; i < e.size(); ++i)
      c.limit_eps.push_back(positive_field(e[i], "limit_eps[" + std::to_string(i) + "]"));
  }
  if (j.contains("suites")) {
    if (!j["suites"].is_array()) throw ConfigError("config field 'suites': expected a list");
    c.suites.clear();
    const auto names = known_suites();
    for (std::size_t i = 0; i < j["suites"].size(); ++i) {
      const json& s = j["suites"][i];
      if (!s.is_string() || std::find(names.begin(), names.end(), s.get<std::string>()) == names.end())
        throw ConfigError("config field 'suites[" + std::to_string(i) + "]': unknown suite");
      c.suites.push_back(s.get<std::string>());
    }
  }
  const auto g2 = c.g * c.g * (c.q - 1.0 / c.q) * (c.q - 1.0 / c.q);
  if (std::abs(1.0 - g2) < 1e-12) throw ConfigError("config fields 'q', 'g': singular coupling");
  return c;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["schema_version"] = c.schema_version;
  j["q"] = complex_json(c.q);
  j["g"] = complex_json(c.g);
  j["alpha"] = complex_json(c.alpha);
  j["alpha_tilde"] = complex_json(c.alpha_tilde);
  j["gamma"] = complex_json(c.gamma);
  j["gamma_bar"] = complex_json(c.gamma_bar);
  j["M"] = c.M;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["x_minus"] = json::array();
  for (const auto& x : c.x_minus) j["x_minus"].push_back(complex_json(x));
  j["tolerances"] = {{"identity", c.tol.identity},
                     {"algebra", c.tol.algebra},
                     {"intertwiner", c.tol.intertwiner},
                     {"composite", c.tol.composite}};
  j["precision"] = c.precision_bits == 0 ? std::string("double")
                                         : "high:" + std::to_string(c.precision_bits);
  j["limit_eps"] = c.limit_eps;
  j["suites"] = c.suites;
  return j;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error in '" + path + "': " + e.what());
  }
  return config_from_json(j);
}

// ---------------------------------------------------------------- sampling

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 point_rng(std::uint64_t seed, const std::string& tag, std::uint64_t index) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a, stable across platforms
  for (unsigned char ch : tag) h = (h ^ ch) * 0x100000001b3ULL;
  return std::mt19937_64(splitmix64(seed ^ splitmix64(h + splitmix64(index))));
}

template <class T>
ModelParams<T> params_from_config(const RunConfig& c) {
  return make_params<T>(to_complex<T>(c.q), to_complex<T>(c.g), to_complex<T>(c.alpha),
                        to_complex<T>(c.alpha_tilde), to_complex<T>(c.gamma),
                        to_complex<T>(c.gamma_bar));
}

namespace {

template <class T>
bool near_reflection_pole(const Complex<T>& x, const ModelParams<T>& p) {
  return std::abs(to_double(Complex<T>(x + p.xi))) < 1e-3 ||
         std::abs(to_double(Complex<T>(p.xi * x + Complex<T>(T(1))))) < 1e-3;
}

/// Full validation of a candidate point; throws QabError on any rejection reason.
template <class T>
Kinematics<T> accept_point(int M, const Complex<T>& xm, const ModelParams<T>& p) {
  const Kinematics<T> kin = kinematics_from_x_minus(M, xm, p);
  if (near_reflection_pole(kin.x_plus, p) || near_reflection_pole(kin.x_minus, p))
    throw QabError("near a reflection-map pole");
  if (shortening_residual(kin.x_plus, kin.x_minus, M, p) > 1e-12)
    throw QabError("shortening residual too large");
  c_coefficients(kin, p);
  c_coefficients(reflect_kinematics(kin, p), p);
  return kin;
}

}  // namespace

template <class T>
Kinematics<T> sample_kinematics(int M, const ModelParams<T>& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> r2(0.25, 4.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::string last;
  for (int attempt = 0; attempt < 50; ++attempt) {
    const double r = std::sqrt(r2(rng));
    const double th = angle(rng);
    const Complex<T> xm = to_complex<T>(std::polar(r, th));
    try {
      return accept_point(M, xm, p);
    } catch (const QabError& e) {
      last = e.what();
    }
  }
  throw SamplingExhausted("no admissible kinematics after 50 tries (last: " + last + ")");
}

template <class T>
Kinematics<T> perturb_kinematics(const Kinematics<T>& kin, const ModelParams<T>& p,
                                 std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::string last;
  for (int attempt = 0; attempt < 50; ++attempt) {
    const std::complex<double> shift(u(rng), u(rng));
    if (std::abs(shift) > 1.0) continue;
    try {
      return accept_point(kin.M, Complex<T>(kin.x_minus + to_complex<T>(1e-3 * shift)), p);
    } catch (const QabError& e) {
      last = e.what();
    }
  }
  throw SamplingExhausted("no admissible perturbation (last: " + last + ")");
}

int worker_count() {
  if (const char* env = std::getenv("QAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// ---------------------------------------------------------------- suites

namespace {

/// Evaluates job(i) for i < n on a worker pool; results keep index order.
template <class R>
std::vector<R> parallel_map(int n, int workers, const std::function<R(int)>& job) {
  std::vector<R> out(static_cast<std::size_t>(n));
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) out[i] = job(i);
    return out;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          out[i] = job(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

struct PointResult {
  std::vector<Check> checks;
  json extra;
};

std::string tuple_tag(const std::vector<int>& M) {
  std::string s;
  for (int m : M) s += (s.empty() ? "" : "x") + std::to_string(m);
  return s;
}

Check tagged(Check c, const std::string& suite, const std::vector<int>& M, int sample) {
  c.suite = suite;
  c.M = M;
  c.name += " #" + std::to_string(sample);
  return c;
}

Check error_check(const std::string& what, const std::exception& e) {
  Check c = make_check(what, std::numeric_limits<double>::quiet_NaN(), 0.0, e.what());
  return c;
}

template <class T>
class SuiteRunner {
 public:
  SuiteRunner(const RunConfig& config) : c_(config), p_(params_from_config<T>(config)) {
    int max_M = *std::max_element(c_.M.begin(), c_.M.end());
    require_generic_q(p_, max_M);
    workers_ = std::is_same_v<T, double> ? worker_count() : 1;
  }

  /// Point `sample` for a given tag: configured x- first, then seeded sampling.
  Kinematics<T> point(int M, const std::string& tag, int sample, int leg) {
    const std::size_t fixed = c_.x_minus.size();
    const std::size_t slot = static_cast<std::size_t>(sample) * 3 + leg;
    if (slot < fixed) return accept_point(M, to_complex<T>(c_.x_minus[slot]), p_);
    auto rng = point_rng(c_.seed, tag + "/leg" + std::to_string(leg), static_cast<std::uint64_t>(sample));
    return sample_kinematics(M, p_, rng);
  }

  std::mt19937_64 retry_rng(const std::string& tag, int sample) {
    return point_rng(c_.seed, tag + "/retry", static_cast<std::uint64_t>(sample));
  }

  std::vector<std::vector<int>> tuples(int arity, int max_M = 1 << 20) const {
    std::vector<int> Ms;
    for (int m : c_.M)
      if (m <= max_M) Ms.push_back(m);
    std::vector<std::vector<int>> out{{}};
    for (int a = 0; a < arity; ++a) {
      std::vector<std::vector<int>> next;
      for (const auto& t : out)
        for (int m : Ms) {
          auto u = t;
          u.push_back(m);
          next.push_back(u);
        }
      out = next;
    }
    return out;
  }

  /// Runs job over (tuple, sample) pairs and flattens the checks.
  void fan_out(const std::string& suite, const std::vector<std::vector<int>>& tuples,
               const std::function<PointResult(const std::vector<int>&, int)>& job,
               VerificationReport& report) {
    const int n = static_cast<int>(tuples.size()) * c_.samples;
    auto results = parallel_map<PointResult>(n, workers_, [&](int i) {
      const auto& t = tuples[static_cast<std::size_t>(i / c_.samples)];
      const int s = i % c_.samples;
      PointResult r;
      try {
        r = job(t, s);
      } catch (const std::exception& e) {
        r.checks.push_back(error_check("evaluation", e));
      }
      for (auto& ch : r.checks) ch = tagged(ch, suite, t, s);
      return r;
    });
    for (std::size_t i = 0; i < results.size(); ++i) {
      report.append(results[i].checks);
      if (!results[i].extra.is_null()) {
        const auto& t = tuples[i / static_cast<std::size_t>(c_.samples)];
        report.extra[suite][tuple_tag(t)].push_back(results[i].extra);
      }
    }
  }

  // Solves S at (k1, k2), perturbing on degeneracy up to five times.
  template <class F>
  auto with_retries(Kinematics<T>& k1, Kinematics<T>& k2, std::mt19937_64& rng, int& retries, F&& f) {
    for (retries = 0;; ++retries) {
      try {
        return f(k1, k2);
      } catch (const DegenerateKinematics&) {
        if (retries == 5) throw;
        k1 = perturb_kinematics(k1, p_, rng);
        k2 = perturb_kinematics(k2, p_, rng);
      }
    }
  }

  void rep_check(VerificationReport& rep) {
    fan_out("rep-check", tuples(1), [&](const std::vector<int>& t, int s) {
      PointResult r;
      const auto kin = point(t[0], "rep-check/" + tuple_tag(t), s, 0);
      r.checks = verify_bound_state(kin, p_, c_.tol.algebra);
      r.checks.push_back(make_check("reflected shortening",
                                    shortening_residual(reflect_kinematics(kin, p_).x_plus,
                                                        reflect_kinematics(kin, p_).x_minus, t[0], p_),
                                    c_.tol.identity));
      return r;
    }, rep);
  }

  void coalgebra(VerificationReport& rep) {
    fan_out("coalgebra", tuples(2, 3), [&](const std::vector<int>& t, int s) {
      PointResult r;
      const std::string tag = "coalgebra/" + tuple_tag(t);
      const auto k1 = point(t[0], tag, s, 0);
      const auto k2 = point(t[1], tag, s, 1);
      const auto r1 = build_representation(k1, p_);
      const auto r2 = build_representation(k2, p_);
      const auto kr = reflect_kinematics(k1, p_);
      const auto B = boundary_representation<T>();
      auto add_algebra = [&](const std::string& prefix, const Representation<T>& rr) {
        for (auto ch : verify_algebra(rr, p_, c_.tol.algebra)) {
          ch.name = prefix + ": " + ch.name;
          r.checks.push_back(ch);
        }
      };
      add_algebra("coproduct", coproduct_representation(r1, r2));
      add_algebra("opposite coproduct", opposite_coproduct_representation(r1, r2));
      add_algebra("reflected coproduct", coproduct_representation(build_representation(kr, p_), r2));
      add_algebra("reflected coproduct on boundary", coproduct_representation(build_representation(kr, p_), B));
      for (auto ch : coideal_expansion_check(k1, k2, p_, c_.tol.algebra)) r.checks.push_back(ch);

      // Twisted charges on V1: reflection invariance of C2, C3 and the raising coefficient.
      const auto t1 = twisted_boundary_charges(r1, p_);
      const auto tr = twisted_boundary_charges(build_representation(kr, p_), p_);
      r.checks.push_back(make_check("C2 twisted reflection invariant",
                                    relative_residual<T>(t1.C2.matrix, tr.C2.matrix), c_.tol.algebra));
      r.checks.push_back(make_check("C3 twisted reflection invariant",
                                    relative_residual<T>(t1.C3.matrix, tr.C3.matrix), c_.tol.algebra));
      r.checks.push_back(make_check("C2 twisted diagonal", off_diagonal_residual<T>(t1.C2.matrix), c_.tol.algebra));
      r.checks.push_back(make_check("C3 twisted diagonal", off_diagonal_residual<T>(t1.C3.matrix), c_.tol.algebra));
      const RepSpace sp = build_basis(t[0]);
      double worst = 0.0;
      for (int fam : {3, 4})
        for (int k = 0; k + 1 < t[0]; ++k) {
          const Complex<T> f = raising_coefficient(k, k1.z, k1, p_);
          const Complex<T> got = t1.Ft1.matrix(sp.family_index(fam, k + 1), sp.family_index(fam, k));
          worst = std::max(worst, relative_residual<T>(got, f));
        }
      r.checks.push_back(make_check("Ft1 raising coefficient", worst, c_.tol.algebra));
      return r;
    }, rep);
  }

  void smatrix(VerificationReport& rep) {
    fan_out("smatrix", tuples(2, 3), [&](const std::vector<int>& t, int s) {
      PointResult r;
      const std::string tag = "smatrix/" + tuple_tag(t);
      auto k1 = point(t[0], tag, s, 0);
      auto k2 = point(t[1], tag, s, 1);
      auto rng = retry_rng(tag, s);
      int retries = 0;
      SMatrix<T> S;
      try {
        S = with_retries(k1, k2, rng, retries, [&](auto& a, auto& b) { return solve_intertwiner(a, b, p_); });
      } catch (const DegenerateKinematics& e) {
        r.checks.push_back(make_check("null dimension == 1", std::abs(e.null_dim() - 1), 0.5, e.what()));
        return r;
      }
      r.checks.push_back(make_check("null dimension == 1", std::abs(S.null_dim - 1), 0.5,
                                    "retries " + std::to_string(retries)));
      r.checks.push_back(make_check("intertwining residual", S.intertwining_residual, c_.tol.algebra));
      const auto ablated = s_matrix_nullspace(build_representation(k1, p_), build_representation(k2, p_), false);
      r.checks.push_back(make_lower_bound_check("null dimension without E4,F4 > 1", ablated.dim, 1.0));
      // Reflecting both legs twice reproduces S.
      const auto k1rr = reflect_kinematics(reflect_kinematics(k1, p_), p_);
      const auto k2rr = reflect_kinematics(reflect_kinematics(k2, p_), p_);
      r.checks.push_back(make_check("double reflection", relative_residual<T>(solve_intertwiner(k1rr, k2rr, p_).op, S.op),
                                    c_.tol.algebra));
      r.extra = {{"retries", retries}, {"null_dim", S.null_dim}, {"ablated_null_dim", ablated.dim},
                 {"threshold", S.threshold}};
      return r;
    }, rep);
  }

  void ybe(VerificationReport& rep) {
    fan_out("ybe", tuples(3, 2), [&](const std::vector<int>& t, int s) {
      PointResult r;
      const std::string tag = "ybe/" + tuple_tag(t);
      auto k1 = point(t[0], tag, s, 0);
      auto k2 = point(t[1], tag, s, 1);
      auto k3 = point(t[2], tag, s, 2);
      auto rng = retry_rng(tag, s);
      int retries = 0;
      const double res = with_retries(k1, k2, rng, retries, [&](auto& a, auto& b) {
        return ybe_residual(a, b, k3, p_);
      });
      r.checks.push_back(make_check("ybe residual", res, c_.tol.composite));
      return r;
    }, rep);
  }

  void kmatrix(VerificationReport& rep) {
    fan_out("kmatrix", tuples(1, 4), [&](const std::vector<int>& t, int s) {
      PointResult r;
      const int M = t[0];
      const auto kin = point(M, "kmatrix/" + tuple_tag(t), s, 0);
      const auto ref = reflect_kinematics(kin, p_);
      const auto K = closed_form_kmatrix(kin, p_);
      const double tol_i = c_.tol.intertwiner;
      r.checks.push_back(make_check("explicit x form vs label form",
                                    relative_residual<T>(explicit_kmatrix(kin, p_).op, K.op), c_.tol.algebra));
      r.checks.push_back(make_check("A_0 = 1", relative_residual<T>(K.A[0], Complex<T>(T(1))), c_.tol.identity));
      r.checks.push_back(make_check("A_M = -gamma C_{M-1}/(z U^2 gamma_bar)",
                                    relative_residual<T>(K.A[M], Complex<T>(-kin.gamma * K.C[M - 1] /
                                                                            (kin.z * kin.U * kin.U * ref.gamma))),
                                    c_.tol.identity));
      r.checks.push_back(make_check("z reflected = 1/z", relative_residual<T>(Complex<T>(ref.z * kin.z), Complex<T>(T(1))),
                                    c_.tol.identity));
      r.checks.push_back(make_check("reflected label matrix identity", reflected_label_matrix_residual(kin, ref),
                                    c_.tol.algebra));
      for (auto ch : invariance_residual(K.op, kin, p_, tol_i)) r.checks.push_back(ch);
      const auto ns = boundary_nullspace(kin, p_, true);
      r.checks.push_back(make_check("boundary null dimension == 1", std::abs(ns.dim - 1), 0.5));
      if (ns.dim == 1) {
        r.checks.push_back(make_check("closed form vs null space",
                                      relative_residual<T>(solve_boundary_intertwiner(kin, p_), K.op), tol_i));
      }
      r.checks.push_back(make_lower_bound_check("null dimension without twisted charges > 1",
                                                boundary_nullspace(kin, p_, false).dim, 1.0));
      if (M == 1)
        r.checks.push_back(make_check("fundamental vs closed form",
                                      relative_residual<T>(fundamental_kmatrix(kin, p_).op, K.op), c_.tol.algebra));
      if (M >= 2) r.checks.push_back(make_check("C_k covariance", ck_symmetry_residual(kin, p_), c_.tol.algebra));
      return r;
    }, rep);
  }

  void bybe(VerificationReport& rep) {
    fan_out("bybe", tuples(2, 3), [&](const std::vector<int>& t, int s) {
      PointResult r;
      const std::string tag = "bybe/" + tuple_tag(t);
      auto k1 = point(t[0], tag, s, 0);
      auto k2 = point(t[1], tag, s, 1);
      auto rng = retry_rng(tag, s);
      int retries = 0;
      const double res = with_retries(k1, k2, rng, retries, [&](auto& a, auto& b) {
        return boundary_ybe_residual(a, b, p_);
      });
      r.checks.push_back(make_check("reflection equation", res, c_.tol.composite));
      if (std::max(t[0], t[1]) >= 2) {
        const double triv = boundary_ybe_residual(k1, k2, p_, CkVariant::Trivial);
        r.checks.push_back(make_lower_bound_check("trivial C_k breaks reflection equation", triv, 1e-2,
                                                  "negative control"));
      }
      return r;
    }, rep);
  }

  void unitarity(VerificationReport& rep) {
    fan_out("unitarity", tuples(1, 4), [&](const std::vector<int>& t, int s) {
      PointResult r;
      const auto kin = point(t[0], "unitarity/" + tuple_tag(t), s, 0);
      r.checks.push_back(make_check("K(reflected) K = 1", unitarity_residual(kin, p_), c_.tol.intertwiner));
      return r;
    }, rep);
  }

  void limits(VerificationReport& rep) {
    const auto& eps = c_.limit_eps;
    fan_out("limits", tuples(1, 4), [&](const std::vector<int>& t, int s) {
      PointResult r;
      const int M = t[0];
      const auto kin = point(M, "limits/" + tuple_tag(t), s, 0);
      std::vector<RationalLimitPoint> pts;
      for (double e : eps) pts.push_back(rational_limit_error<T>(M, kin.x_minus, e, p_));
      json table = json::array();
      for (const auto& pt : pts) {
        const std::string at = " at eps=" + format_residual(pt.eps);
        r.checks.push_back(make_check("rational coefficients" + at, pt.coefficient_error, 10 * pt.eps));
        r.checks.push_back(make_check("spectral u" + at, pt.u_error, 10 * pt.eps));
        if (M == 1) r.checks.push_back(make_check("A1/A0 -> -x-/x+" + at, pt.fundamental_error, 10 * pt.eps));
        table.push_back({{"eps", pt.eps}, {"coefficient_error", pt.coefficient_error}, {"u_error", pt.u_error}});
      }
      const auto& a = pts[pts.size() - 2];
      const auto& b = pts.back();
      const double rate = std::log(a.coefficient_error / b.coefficient_error) / std::log(a.eps / b.eps);
      r.checks.push_back(make_check("rational convergence rate ~ 1", std::abs(rate - 1.0), 0.1,
                                    "fitted rate " + format_residual(rate)));
      const auto probe = yangian_limit_probe<T>(eps, M, kin.x_minus, p_);
      json rates;
      for (const auto& [name, rt] : probe.rate) {
        r.checks.push_back(make_lower_bound_check("Yangian limit " + name + " Cauchy rate", rt, 0.9,
                                                  "limit norm " + format_residual(probe.limit_norm.at(name))));
        rates[name] = rt;
      }
      r.extra = {{"x_minus", {to_double(kin.x_minus).real(), to_double(kin.x_minus).imag()}},
                 {"rational", table},
                 {"rational_rate", rate},
                 {"yangian_rates", rates}};
      return r;
    }, rep);
  }

 private:
  RunConfig c_;
  ModelParams<T> p_;
  int workers_ = 1;
};

template <class T>
void run_named(const std::string& name, const RunConfig& config, VerificationReport& report) {
  SuiteRunner<T> runner(config);
  if (name == "rep-check") runner.rep_check(report);
  else if (name == "coalgebra") runner.coalgebra(report);
  else if (name == "smatrix") runner.smatrix(report);
  else if (name == "ybe") runner.ybe(report);
  else if (name == "kmatrix") runner.kmatrix(report);
  else if (name == "bybe") runner.bybe(report);
  else if (name == "unitarity") runner.unitarity(report);
  else if (name == "limits") runner.limits(report);
  else throw ConfigError("unknown suite '" + name + "'");
}

}  // namespace

VerificationReport run_suite(const std::string& name, const RunConfig& config) {
  const auto names = known_suites();
  if (name != "all" && std::find(names.begin(), names.end(), name) == names.end())
    throw ConfigError("unknown suite '" + name + "'");
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.suite = name;
  report.software_version = kSoftwareVersion;
  report.config = config_to_json(config);
  report.parameters = {{"seed", config.seed},
                       {"precision", report.config["precision"]},
                       {"q", report.config["q"]},
                       {"g", report.config["g"]}};
  report.extra = json::object();
  const std::vector<std::string> order = name == "all" ? config.suites : std::vector<std::string>{name};
  for (const auto& s : order) {
    if (config.precision_bits == 0) {
      run_named<double>(s, config, report);
    } else {
      PrecisionScope scope(config.precision_bits);
      run_named<HighReal>(s, config, report);
    }
  }
  report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

template Kinematics<double> sample_kinematics<double>(int, const ModelParams<double>&, std::mt19937_64&);
template Kinematics<HighReal> sample_kinematics<HighReal>(int, const ModelParams<HighReal>&, std::mt19937_64&);
template Kinematics<double> perturb_kinematics<double>(const Kinematics<double>&, const ModelParams<double>&,
                                                       std::mt19937_64&);
template Kinematics<HighReal> perturb_kinematics<HighReal>(const Kinematics<HighReal>&,
                                                           const ModelParams<HighReal>&, std::mt19937_64&);
template ModelParams<double> params_from_config<double>(const RunConfig&);
template ModelParams<HighReal> params_from_config<HighReal>(const RunConfig&);

}  // namespace qab
