#pragma once

// Partial sums of 1/N over the generators and over all elements of a normed
// free abelian semigroup (N* with N(n) = n, or finitely many generators),
// Euler-product cross-checks and growth-rate fits.

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "tauber/semigroup.hpp"

namespace tauber {

/// Elements beyond which a free-abelian enumeration raises CapError.
inline constexpr std::size_t kDefaultElementCap = 50'000'000;

/// sum of 1/N(p) over generators with N(p) <= B.
double prime_norm_partial_sum(const SemigroupModel& model, double bound);

/// sum of 1/N(s) over all elements with N(s) <= B, the unit included.
double semigroup_norm_partial_sum(const SemigroupModel& model, double bound,
                                  std::size_t element_cap = kDefaultElementCap);

/// sum of 1/N(s) over exponent vectors with every exponent <= D, enumerated
/// element by element (finitely many generators only).
double semigroup_degree_partial_sum(const SemigroupModel& model, int degree_bound,
                                    std::size_t element_cap = kDefaultElementCap);

struct EulerProduct {
    double value = 1.0;            ///< prod (1 - 1/N(p))^{-1}
    double degree_bounded = 1.0;   ///< prod (1 - N(p)^{-(D+1)}) / (1 - 1/N(p))
    double truncation_bound = 0.0; ///< value * sum N(p)^{-(D+1)} >= value - degree_bounded
};

EulerProduct euler_product(std::span<const double> norms, int degree_bound);
EulerProduct euler_product(const SemigroupModel& model, int degree_bound);

struct NormSeriesReport {
    std::vector<double> bounds;
    std::vector<double> prime_sums;
    std::vector<double> element_sums;
    /// least-squares fits element_sum ~ a + b ln B and prime_sum ~ a + b ln ln B
    double element_slope = 0.0, element_intercept = 0.0;
    double prime_slope = 0.0, prime_intercept = 0.0;
    /// both sums still strictly increasing between the last two bounds
    bool co_divergence = false;
    std::optional<double> euler_product_value; ///< finite generator sets only
};

/// Bounds must be strictly increasing and >= 2; at least two are needed for the fits.
NormSeriesReport divergence_diagnostic(const SemigroupModel& model, std::span<const double> bounds,
                                       std::size_t element_cap = kDefaultElementCap);

/// Columns B, primeSum, elementSum, lnB, lnlnB.
void write_csv(const NormSeriesReport& report, std::ostream& out);

} // namespace tauber
