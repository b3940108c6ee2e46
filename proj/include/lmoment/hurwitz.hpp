#ifndef LMOMENT_HURWITZ_HPP
#define LMOMENT_HURWITZ_HPP

#include <vector>

namespace lmoment {

/// Parameters of one Euler–Maclaurin evaluation of ζ(s, α) = Σ_{n>=0} (n+α)^{-s}:
/// `cutoff` explicit terms, `bernoulli_terms` correction terms.
struct EulerMaclaurinPlan {
  int cutoff = 10;
  int bernoulli_terms = 10;
};

/// Taylor coefficients of ζ(s0 + t, α) in t. At s0 = 1 the pole 1/t is removed, i.e. the
/// coefficients are those of ζ(1 + t, α) - 1/t.
struct HurwitzExpansion {
  std::vector<double> coeffs;
  /// Rigorous bound on the Euler–Maclaurin remainder's contribution to any coefficient.
  double remainder_bound = 0.0;
};

/// Bound on |R(s)| over the disk |s - s0| <= radius for the plan's remainder, with α >= alpha_min.
/// Uses |R| <= 4|(s)_{2B}| (N+α)^{1-σ-2B} / ((2π)^{2B}(σ+2B-1)).
double euler_maclaurin_remainder_bound(const EulerMaclaurinPlan& plan, double alpha_min, double s0,
                                       double radius);

/// Smallest-cost plan whose remainder bound is <= target for every α >= alpha_min, searching
/// cutoffs up to max_cutoff. Throws ResourceError with the best bound found otherwise.
EulerMaclaurinPlan plan_euler_maclaurin(double alpha_min, double s0, double radius, double target,
                                        int max_cutoff = 4096);

/// Expansion to `order` (coefficient error bounded by remainder_bound / radius^k, radius = 1).
HurwitzExpansion hurwitz_taylor(double alpha, double s0, int order, const EulerMaclaurinPlan& plan);

/// Taylor coefficients of ζ(s0 + t) = ζ(s0 + t, 1), s0 != 1, to `order`, with the plan chosen for
/// coefficient accuracy `target`.
HurwitzExpansion riemann_zeta_taylor(double s0, int order, double target);

}  // namespace lmoment

#endif  // LMOMENT_HURWITZ_HPP
