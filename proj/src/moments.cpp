#include "lmoment/moments.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "lmoment/characters.hpp"
#include "lmoment/errors.hpp"
#include "lmoment/format.hpp"
#include "lmoment/lfunc.hpp"
#include "lmoment/summation.hpp"

namespace lmoment {
namespace {

std::int64_t last_index_below(double x) { return static_cast<std::int64_t>(std::ceil(x)) - 1; }

double ipow(double base, int exp) {
  double out = 1.0;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

std::complex<double> cpow(std::complex<double> z, int n) {
  std::complex<double> out = 1.0;
  for (int i = 0; i < n; ++i) out *= z;
  return out;
}

double sign_of_power(int exponent) { return exponent % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

WeightFn unit_weight() {
  return [](double, std::int64_t) { return 1.0; };
}

WeightFn mangoldt_weight(const LambdaTable& table, int r) {
  const LambdaTable* t = &table;
  return [t, r](double x, std::int64_t n) {
    const double lam = t->mangoldt(n);
    if (lam == 0.0) return 0.0;
    const double nd = static_cast<double>(n);
    return (x / nd - 1.0) * lam * ipow(std::log(nd), r) / (x - 1.0);
  };
}

std::vector<double> lambda_k_all(int k, double x, std::int64_t m, const WeightFn& g,
                                 std::int64_t cap) {
  if (k < 0) throw DomainError("lambda_k_all: negative k");
  if (m < 2) throw DomainError("lambda_k_all: modulus must be >= 2");
  if (!(x > 1)) throw DomainError("lambda_k_all: x must exceed 1");
  std::vector<double> out(static_cast<std::size_t>(m), 0.0);
  if (k == 0) {
    out[1] = 1.0;
    return out;
  }
  const std::int64_t last = last_index_below(x);
  const double count = ipow(static_cast<double>(last), k);
  if (count > static_cast<double>(cap)) {
    throw ResourceError("lambda_k_all: enumeration exceeds cap", count);
  }
  std::vector<double> weight(static_cast<std::size_t>(last) + 1);
  for (std::int64_t n = 1; n <= last; ++n) weight[static_cast<std::size_t>(n)] = g(x, n);

  std::vector<CompensatedSum> acc(static_cast<std::size_t>(m));
  // Odometer over (n_1, ..., n_k) in [1, last]^k.
  std::vector<std::int64_t> tuple(static_cast<std::size_t>(k), 1);
  while (true) {
    double w = 1.0;
    std::int64_t residue = 1;
    for (std::int64_t n : tuple) {
      w *= weight[static_cast<std::size_t>(n)];
      residue = residue * (n % m) % m;
    }
    if (residue != 0) acc[static_cast<std::size_t>(residue)].add(w);
    int pos = k - 1;
    while (pos >= 0 && tuple[static_cast<std::size_t>(pos)] == last) {
      tuple[static_cast<std::size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++tuple[static_cast<std::size_t>(pos)];
  }
  for (std::int64_t j = 1; j < m; ++j) out[static_cast<std::size_t>(j)] = acc[static_cast<std::size_t>(j)].value();
  return out;
}

double lambda_kjx(int k, std::int64_t j, double x, std::int64_t m, const WeightFn& g,
                  std::int64_t cap) {
  if (j < 1 || j >= m) throw BoundsError("lambda_kjx: j outside [1, m-1]");
  return lambda_k_all(k, x, m, g, cap)[static_cast<std::size_t>(j)];
}

std::complex<double> pab(std::complex<double> z, int a, int b) {
  return cpow(z, a) * cpow(std::conj(z), b);
}

OrthoCheck ortho_check(std::int64_t m, int a, int b, double x, const WeightFn& g, std::int64_t cap) {
  if (a < 0 || b < 0) throw DomainError("ortho_check: negative exponent");
  const CharacterGroup group = CharacterGroup::build(m);
  const std::int64_t last = last_index_below(x);

  const std::vector<double> la = lambda_k_all(a, x, m, g, cap);
  const std::vector<double> lb = lambda_k_all(b, x, m, g, cap);

  std::vector<double> weight(static_cast<std::size_t>(std::max<std::int64_t>(last, 0)) + 1);
  for (std::int64_t n = 1; n <= last; ++n) weight[static_cast<std::size_t>(n)] = g(x, n);

  ComplexCompensatedSum all;
  ComplexCompensatedSum nonprincipal;
  for (std::int64_t j = 0; j < group.order(); ++j) {
    ComplexCompensatedSum gchi;
    for (std::int64_t n = 1; n <= last; ++n) {
      gchi.add(group.eval(CharacterId{j}, n) * weight[static_cast<std::size_t>(n)]);
    }
    const auto term = pab(gchi.value(), a, b);
    all.add(term);
    if (j != 0) nonprincipal.add(term);
  }

  CompensatedSum rhs;
  for (std::int64_t j = 1; j < m; ++j) rhs.add(la[static_cast<std::size_t>(j)] * lb[static_cast<std::size_t>(j)]);

  OrthoCheck out;
  out.m = m;
  out.a = a;
  out.b = b;
  out.x = x;
  out.lhs = all.value() / static_cast<double>(m - 1);
  out.rhs = rhs.value();
  out.discrepancy = std::abs(out.lhs - out.rhs);
  out.lhs_nonprincipal = nonprincipal.value() / static_cast<double>(m - 2);
  out.discrepancy_nonprincipal = std::abs(out.lhs_nonprincipal - out.rhs);
  return out;
}

std::string to_string(MomentMethod method) { return method == MomentMethod::taylor ? "taylor" : "phi"; }

MomentMethod parse_method(const std::string& name) {
  if (name == "taylor") return MomentMethod::taylor;
  if (name == "phi") return MomentMethod::phi;
  throw DomainError("unknown moment method: " + name);
}

double moment_limit(int a, int b, int r, std::int64_t truncation_point) {
  if (a == 0 || b == 0) return (a == 0 && b == 0) ? 1.0 : 0.0;
  if (a == 1 && b == 1) return mu_diagonal_reference(r).value;
  return mu_partial_sum(a, b, r, truncation_point, std::max(truncation_point, kDefaultTableCap)).value;
}

std::vector<std::complex<double>> moment_samples(std::int64_t m, int r, MomentMethod method,
                                                 const MomentOptions& options) {
  if (m < 5) throw DomainError("moment_samples: modulus must be a prime >= 5");
  const CharacterGroup group = CharacterGroup::build(m);
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(m - 2));
  if (method == MomentMethod::taylor) {
    for (const CurlyL& v : curly_l_all(group, r, options.eps, options.width)) out.push_back(v.value);
    return out;
  }
  if (m > options.phi_max_modulus) throw BoundsError("moment_samples: modulus above phi-method cap");
  const double x = static_cast<double>(m) * static_cast<double>(m);
  const LambdaTable table = LambdaTable::build(m * m - 1, std::max(kDefaultTableCap, m * m));
  const auto phis = phi_explicit_all(group, r, x, table, options.width);
  const double sign = sign_of_power(r + 1);
  for (std::size_t j = 1; j < phis.size(); ++j) out.push_back(sign * phis[j].value);
  return out;
}

MomentReport moment_from_samples(std::int64_t m, int a, int b, int r, MomentMethod method,
                                 const std::vector<std::complex<double>>& samples, double limit) {
  if (static_cast<std::int64_t>(samples.size()) != m - 2) {
    throw DomainError("moment_from_samples: expected one sample per non-principal character");
  }
  ComplexCompensatedSum sum;
  for (auto z : samples) sum.add(pab(z, a, b));
  const int exponent = (r + 1) * (a + b);
  MomentReport rep;
  rep.m = m;
  rep.a = a;
  rep.b = b;
  rep.r = r;
  rep.method = method;
  rep.x_used = method == MomentMethod::phi ? static_cast<double>(m) * static_cast<double>(m) : 0.0;
  rep.empirical = sum.value() / static_cast<double>(m - 2);
  rep.limit = limit;
  rep.prediction = sign_of_power(exponent) * limit;
  rep.abs_error = std::abs(rep.empirical - rep.prediction);
  rep.normalized_error = rep.abs_error * static_cast<double>(m) /
                         ipow(std::log(static_cast<double>(m)), exponent + 2);
  return rep;
}

MomentReport empirical_moment(std::int64_t m, int a, int b, int r, MomentMethod method,
                              const MomentOptions& options) {
  if (a < 0 || b < 0 || r < 0) throw DomainError("empirical_moment: negative index");
  const double limit = options.limit ? *options.limit : moment_limit(a, b, r, options.mu_truncation);
  return moment_from_samples(m, a, b, r, method, moment_samples(m, r, method, options), limit);
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("least_squares_slope: need >= 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

ConvergenceStudy convergence_study(const std::vector<std::int64_t>& m_list, int a, int b, int r,
                                   MomentMethod method, const MomentOptions& options) {
  if (m_list.empty()) throw DomainError("convergence_study: empty modulus list");
  for (std::size_t i = 0; i < m_list.size(); ++i) {
    if (!is_prime(m_list[i]) || m_list[i] < 5) throw DomainError("convergence_study: moduli must be primes >= 5");
    if (i > 0 && m_list[i] <= m_list[i - 1]) throw DomainError("convergence_study: moduli must ascend");
  }
  const double limit = options.limit ? *options.limit : moment_limit(a, b, r, options.mu_truncation);
  ConvergenceStudy study;
  std::vector<double> lx;
  std::vector<double> ly;
  bool has_zero = false;
  for (std::int64_t m : m_list) {
    study.reports.push_back(moment_from_samples(m, a, b, r, method, moment_samples(m, r, method, options), limit));
    const double e = study.reports.back().abs_error;
    has_zero = has_zero || !(e > 0);
    lx.push_back(std::log(static_cast<double>(m)));
    ly.push_back(std::log(e));
  }
  study.slope = (has_zero || lx.size() < 2) ? std::numeric_limits<double>::quiet_NaN()
                                            : least_squares_slope(lx, ly);
  return study;
}

namespace {

using Mp = boost::multiprecision::cpp_bin_float_50;

struct MpComplex {
  Mp re;
  Mp im;
};

MpComplex mp_mul(const MpComplex& x, const MpComplex& y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

MpComplex mp_pab(const MpComplex& z, int a, int b) {
  MpComplex out{Mp(1), Mp(0)};
  for (int i = 0; i < a; ++i) out = mp_mul(out, z);
  const MpComplex zc{z.re, -z.im};
  for (int i = 0; i < b; ++i) out = mp_mul(out, zc);
  return out;
}

Mp mp_abs(const MpComplex& z) { return boost::multiprecision::sqrt(z.re * z.re + z.im * z.im); }

}  // namespace

PerturbationResult pab_perturbation_check(const std::vector<PerturbationSample>& samples, int ulps) {
  PerturbationResult res;
  for (const auto& s : samples) {
    ++res.samples;
    const MpComplex z{Mp(s.z.real()), Mp(s.z.imag())};
    const MpComplex w{Mp(s.w.real()), Mp(s.w.imag())};
    const MpComplex zw{z.re + w.re, z.im + w.im};
    const MpComplex p1 = mp_pab(zw, s.a, s.b);
    const MpComplex p0 = mp_pab(z, s.a, s.b);
    const Mp lhs = mp_abs({p1.re - p0.re, p1.im - p0.im});
    const int n = s.a + s.b;
    Mp rhs = 0;
    if (n > 0) {
      const Mp abs_w = mp_abs(w);
      Mp base = mp_abs(z) + abs_w;
      Mp pw = 1;
      for (int i = 0; i < n - 1; ++i) pw *= base;
      rhs = Mp(n) * abs_w * pw;
    }
    const double rhs_d = static_cast<double>(rhs);
    const double ulp = std::nextafter(rhs_d, std::numeric_limits<double>::infinity()) - rhs_d;
    if (lhs > rhs + Mp(ulps) * Mp(ulp)) ++res.violations;
    if (rhs > 0) res.worst_ratio = std::max(res.worst_ratio, static_cast<double>(lhs / rhs));
  }
  return res;
}

std::vector<PerturbationSample> random_perturbation_samples(std::int64_t count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const auto unit = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  const auto disk = [&] {
    const double rad = 10.0 * std::sqrt(unit());
    const double ang = 2 * std::numbers::pi * unit();
    return std::polar(rad, ang);
  };
  std::vector<PerturbationSample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    PerturbationSample s;
    s.z = disk();
    s.w = disk();
    s.a = static_cast<int>(gen() % 7);
    s.b = static_cast<int>(gen() % static_cast<std::uint64_t>(7 - s.a));
    out.push_back(s);
  }
  return out;
}

std::string to_json(const MomentReport& report) {
  return JsonObject()
      .add("m", report.m)
      .add("a", report.a)
      .add("b", report.b)
      .add("r", report.r)
      .add("method", to_string(report.method))
      .add("x_used", report.x_used)
      .add("empirical_re", report.empirical.real())
      .add("empirical_im", report.empirical.imag())
      .add("limit", report.limit)
      .add("prediction", report.prediction)
      .add("abs_error", report.abs_error)
      .add("normalized_error", report.normalized_error)
      .str();
}

}  // namespace lmoment
