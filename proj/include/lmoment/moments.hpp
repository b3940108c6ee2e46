#ifndef LMOMENT_MOMENTS_HPP
#define LMOMENT_MOMENTS_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lmoment/arith.hpp"

namespace lmoment {

/// Real weight g(x, n) entering g_χ(x) = Σ_{n<x} g(x, n) χ(n).
using WeightFn = std::function<double(double x, std::int64_t n)>;

WeightFn unit_weight();

/// g(x, n) = (x/n - 1) Λ(n) (log n)^r / (x - 1), the weight for which g_χ(x) = Φ(χ, r, x).
/// The table must cover every n < x that will be queried.
WeightFn mangoldt_weight(const LambdaTable& table, int r);

inline constexpr std::int64_t kDefaultEnumerationCap = 50'000'000;

/// λ^{(k)}(j, x) for j = 1, ..., m-1 (result index j; index 0 unused) by enumerating all
/// k-tuples of integers in [1, x). k = 0 gives [j = 1]. Throws ResourceError when x^k > cap.
std::vector<double> lambda_k_all(int k, double x, std::int64_t m, const WeightFn& g,
                                 std::int64_t cap = kDefaultEnumerationCap);

/// Single entry of lambda_k_all; j must lie in [1, m-1].
double lambda_kjx(int k, std::int64_t j, double x, std::int64_t m, const WeightFn& g,
                  std::int64_t cap = kDefaultEnumerationCap);

/// Both sides of the orthogonality identity for the moment Σ_χ g_χ^a conj(g_χ)^b.
struct OrthoCheck {
  std::int64_t m = 0;
  int a = 0;
  int b = 0;
  double x = 0.0;
  /// (1/(m-1)) Σ over all m-1 characters, χ₀ included.
  std::complex<double> lhs;
  /// Σ_{j=1}^{m-1} λ^{(a)}(j, x) λ^{(b)}(j, x).
  std::complex<double> rhs;
  /// |lhs - rhs|.
  double discrepancy = 0.0;
  /// (1/(m-2)) Σ over non-principal characters only, and its distance from rhs.
  std::complex<double> lhs_nonprincipal;
  double discrepancy_nonprincipal = 0.0;
};

OrthoCheck ortho_check(std::int64_t m, int a, int b, double x, const WeightFn& g,
                       std::int64_t cap = kDefaultEnumerationCap);

/// P^{(a,b)}(z) = z^a conj(z)^b by repeated multiplication in a fixed order.
std::complex<double> pab(std::complex<double> z, int a, int b);

enum class MomentMethod { taylor, phi };

std::string to_string(MomentMethod method);
MomentMethod parse_method(const std::string& name);

struct MomentReport {
  std::int64_t m = 0;
  int a = 0;
  int b = 0;
  int r = 0;
  /// 0 for the taylor method, m² for the phi method.
  double x_used = 0.0;
  std::complex<double> empirical;
  double limit = 0.0;
  double prediction = 0.0;
  double abs_error = 0.0;
  double normalized_error = 0.0;
  MomentMethod method = MomentMethod::taylor;
};

/// Limit constant μ^{(a,b)}(r) as used for predictions: the ζ-derivative reference for a = b = 1,
/// otherwise the partial sum to `truncation_point`.
double moment_limit(int a, int b, int r, std::int64_t truncation_point);

struct MomentOptions {
  /// Accuracy requested from curly_l for each character (taylor method).
  double eps = 1e-6;
  int width = 1;
  std::int64_t mu_truncation = 4'000'000;
  /// Largest modulus accepted for the phi method (its table has m² entries).
  std::int64_t phi_max_modulus = 1601;
  /// Reuse a known limit instead of recomputing it.
  std::optional<double> limit;
};

/// Average of P^{(a,b)}(z_χ) over the m-2 non-principal characters, where z_χ is 𝓛^{(r)}(1, χ)
/// (taylor) or (-1)^{r+1} Φ(χ, r, m²) (phi), against the prediction (-1)^{(r+1)(a+b)} μ^{(a,b)}(r).
MomentReport empirical_moment(std::int64_t m, int a, int b, int r, MomentMethod method,
                              const MomentOptions& options = {});

/// Character values z_χ for j = 1..m-2 as used by empirical_moment.
std::vector<std::complex<double>> moment_samples(std::int64_t m, int r, MomentMethod method,
                                                 const MomentOptions& options = {});

/// Reduces precomputed samples to a report.
MomentReport moment_from_samples(std::int64_t m, int a, int b, int r, MomentMethod method,
                                 const std::vector<std::complex<double>>& samples, double limit);

struct ConvergenceStudy {
  std::vector<MomentReport> reports;
  /// Least-squares slope of log abs_error against log m (NaN if any abs_error is 0).
  double slope = 0.0;
};

/// Throws DomainError unless m_list is ascending and every entry is prime.
ConvergenceStudy convergence_study(const std::vector<std::int64_t>& m_list, int a, int b, int r,
                                   MomentMethod method, const MomentOptions& options = {});

/// Ordinary least-squares slope of y against x.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

/// One sample of |P^{(a,b)}(z+w) - P^{(a,b)}(z)| <= (a+b)|w|(|z|+|w|)^{a+b-1}.
struct PerturbationSample {
  std::complex<double> z;
  std::complex<double> w;
  int a = 0;
  int b = 0;
};

struct PerturbationResult {
  std::int64_t samples = 0;
  std::int64_t violations = 0;
  /// Largest lhs/rhs ratio seen among samples with rhs > 0.
  double worst_ratio = 0.0;
};

/// Evaluates both sides in 50-digit arithmetic and counts lhs > rhs + ulps·ulp(rhs).
PerturbationResult pab_perturbation_check(const std::vector<PerturbationSample>& samples,
                                          int ulps = 4);

/// `count` samples with |z|, |w| <= 10 and a + b <= 6 from a seeded generator.
std::vector<PerturbationSample> random_perturbation_samples(std::int64_t count, std::uint64_t seed);

std::string to_json(const MomentReport& report);

}  // namespace lmoment

#endif  // LMOMENT_MOMENTS_HPP
