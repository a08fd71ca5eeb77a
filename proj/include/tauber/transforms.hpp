#pragma once

// Laplace transforms of algebra elements at semicharacters, with certified
// truncation radii: power series on Z_+, Dirichlet series on N*.

#include <vector>

#include "tauber/algebra.hpp"

namespace tauber {

/// Certified bound on sum_{s beyond horizon} |k(s)| w(s).
struct TailDescriptor {
    enum class Kind { FinitelySupported, GeometricBound, ExplicitBound };

    Kind kind = Kind::FinitelySupported;
    double ratio = 0.0; ///< GeometricBound: |k(s)| w(s) <= scale * ratio^index(s)
    double scale = 0.0;
    double bound = 0.0; ///< ExplicitBound: the bound itself

    static TailDescriptor finite() { return {}; }
    static TailDescriptor geometric(double ratio, double scale);
    static TailDescriptor explicit_bound(double tau);

    /// The certified tail mass beyond `horizon`.
    double bound_beyond(Index horizon) const;
};

/// A value together with a certified radius: |true - value| <= tail_radius.
struct SeriesValue {
    Complex value = 0.0;
    double tail_radius = 0.0;
};

/// Conjugating transform: lambda + sum k(s) conj(psi(s)). The tail bound
/// refers to the weight `w`, and psi is sample-checked against it.
SeriesValue laplace(const AlgebraElement& k, const Semicharacter& psi, const TailDescriptor& tail,
                    const Weight& w = Weight::one());

/// Point evaluation without conjugation: lambda + sum k(s) psi(s).
SeriesValue evaluate_at(const AlgebraElement& k, const Semicharacter& psi, const TailDescriptor& tail,
                        const Weight& w = Weight::one());

/// lambda + sum_{n <= B} k(n) z^n on Z_+. For a non-finite tail, |z| must
/// not exceed inf_n w(n)^{1/n}.
SeriesValue power_series(const AlgebraElement& k, Complex z, const TailDescriptor& tail,
                         const Weight& w = Weight::one());

/// lambda + sum_{n <= B} k(n) rho(n) n^{-s} on N*, Re s >= 0.
SeriesValue dirichlet_series(const AlgebraElement& k, const Weight& rho, Complex s,
                             const TailDescriptor& tail);

struct SpectralRadius {
    double value = 0.0;
    bool still_decreasing = false; ///< minimum attained at nMax itself
};

/// min_{1 <= n <= nMax} w(n)^{1/n} for a weight on Z_+.
SpectralRadius spectral_radius_bound(const Weight& w, Index n_max);

/// Precomputed Dirichlet polynomial for many evaluations. Terms whose
/// combined mass sum |k(n)| rho(n) is below `drop_mass` are moved from the
/// sum into the tail radius.
class DirichletPolynomial {
public:
    DirichletPolynomial(const AlgebraElement& k, const Weight& rho, const TailDescriptor& tail,
                        double drop_mass = 1e-16);

    SeriesValue operator()(Complex s) const;

    /// lambda + k(1) rho(1): the limit as Re s -> +infinity.
    Complex leading() const noexcept { return leading_; }
    /// sum_{n >= 2} |k(n)| rho(n) n^{-sigma} over kept terms, plus the tail radius.
    double mass_beyond_leading(double sigma) const;
    /// sup over Re s >= 0 of |d/ds| of the kept terms: sum |k(n)| rho(n) ln n.
    double derivative_bound() const noexcept { return derivative_bound_; }
    double tail_radius() const noexcept { return tail_radius_; }
    /// True when every kept term with n >= 2 is a power of a single prime p;
    /// then the series is periodic in Im s with period 2 pi / ln p.
    std::optional<std::int64_t> single_prime_support() const noexcept { return single_prime_; }
    std::size_t term_count() const noexcept { return terms_.size(); }

private:
    struct Term {
        double log_n;
        Complex coeff; // k(n) rho(n)
    };
    std::vector<Term> terms_; // n >= 2
    Complex leading_ = 0.0;
    double tail_radius_ = 0.0;
    double derivative_bound_ = 0.0;
    std::optional<std::int64_t> single_prime_;
};

} // namespace tauber
