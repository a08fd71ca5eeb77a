#pragma once

// Tauberian-condition certificates, decay-at-infinity profiles over prefix
// exhaustions, and the end-to-end experiment runners.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tauber/transforms.hpp"

namespace tauber {

inline constexpr double kDefaultEpsilon = 1e-3;

enum class Verdict { TendsToZero, TendsToConstant, NoLimit, Inconclusive };
std::string to_string(Verdict v);

struct DecayReport {
    std::vector<double> levels;
    std::vector<double> sup_outside; ///< sup |f w| over ranks in (level, rank_max]
    Verdict verdict = Verdict::Inconclusive;
    Complex limit = 0.0;  ///< estimate when verdict is TendsToConstant
    double limsup = 0.0;  ///< max Re(f w) over the last 20% of ranks (an estimate)
    double liminf = 0.0;  ///< min Re(f w) over the same window
    double spread = 0.0;  ///< oscillation of f w over that window
    double epsilon = kDefaultEpsilon;
};

/// Profile of weighted values against an exhaustion by rank: a point lies
/// outside level L when its rank exceeds L. Levels must be strictly
/// increasing and below the largest rank.
DecayReport decay_profile_ranked(std::span<const double> ranks, std::span<const Complex> values,
                                 std::span<const double> levels, double epsilon = kDefaultEpsilon);

/// Profile of f w on a discrete model; the rank of an element is its index.
DecayReport decay_profile(const BoundedFunction& f, const Weight& w, std::span<const Index> levels,
                          double epsilon = kDefaultEpsilon);

enum class CertificateStatus { Certified, Violated, Inconclusive };
std::string to_string(CertificateStatus s);

struct ConditionCertificate {
    CertificateStatus status = CertificateStatus::Inconclusive;
    std::string method;         ///< triangle | disk | dirichlet | none
    Complex target = 0.0;
    double min_modulus = 0.0;   ///< min |series - target| over the evaluated points
    double lower_bound = 0.0;   ///< certified lower bound (meaningful when certified)
    double lipschitz_bound = 0.0;
    double grid_step = 0.0;
    double tail_radius = 0.0;
    std::size_t grid_points = 0;
    std::string grid_spec;
    std::optional<Complex> witness_point; ///< z (disk) or s (half-plane)
    Complex witness_value = 0.0;
    std::string note;
};

/// Certifies that lambda + sum k(n) z^n avoids `target` on |z| <= inf_n w(n)^{1/n}
/// by a polar grid with a Lipschitz bound between nodes.
ConditionCertificate check_avoid_value_disk(const AlgebraElement& k, const Weight& w, Complex target,
                                            double grid_step, double tol,
                                            const TailDescriptor& tail = TailDescriptor::finite());

/// Certifies that the rho-weighted Dirichlet series of k avoids `target` on
/// Re s >= 0. The grid covers [0, sigma_max] x [-T, T]; beyond sigma_max the
/// series is within sum_{n>=2} |k(n)| rho(n) n^{-sigma_max} of its leading term.
/// For |Im s| > T a certificate also needs either the global triangle bound
/// or periodicity in Im s (support in powers of one prime).
ConditionCertificate check_avoid_value_dirichlet(const AlgebraElement& k, const Weight& rho, Complex target,
                                                 double sigma_max, double t_max, double grid_step,
                                                 const TailDescriptor& tail = TailDescriptor::finite(),
                                                 double tol = 1e-9);

/// |lambda + k(e) - target| > sum_{s != e} |k(s)| w(s) + tail implies the
/// transform avoids target on the whole w-dominated spectrum.
ConditionCertificate check_avoid_value_triangle(const AlgebraElement& k, const Weight& w, Complex target,
                                                const TailDescriptor& tail = TailDescriptor::finite());

struct CertificateOptions {
    double grid_step = 0.05;
    double sigma_max = 10.0;
    double t_max = 50.0;
    double tol = 1e-9;
};

/// Triangle bound first, then the model's grid checker (disk on Z_+,
/// half-plane on N* with a multiplicative weight).
ConditionCertificate certify_avoid_value(const AlgebraElement& k, const Weight& w, Complex target,
                                         const TailDescriptor& tail = TailDescriptor::finite(),
                                         const CertificateOptions& options = {});

struct TauberianReport {
    ConditionCertificate condition;
    DecayReport g_profile; ///< (f + K*f) w
    DecayReport f_profile; ///< f w
    bool consistent = true;
    std::string consistency_note;
    std::optional<BoundedFunction> g_weighted;
};

/// K-tilde != -1 certificate, then decay profiles of (f + K*f) w and f w.
/// A certified condition with g -> 0 but f not -> 0 is flagged inconsistent.
TauberianReport tauberian_experiment(const BoundedFunction& f, const AlgebraElement& kernel, const Weight& w,
                                     std::span<const Index> levels, double epsilon = kDefaultEpsilon,
                                     const TailDescriptor& kernel_tail = TailDescriptor::finite(),
                                     const CertificateOptions& options = {});

/// Discrete semigroup with unit: k-tilde != 0 and (f*k) w -> 0, run through
/// tauberian_experiment with K = k - u.
TauberianReport corollary2_experiment(const BoundedFunction& f, const AlgebraElement& k, const Weight& w,
                                      std::span<const Index> levels, double epsilon = kDefaultEpsilon,
                                      const TailDescriptor& k_tail = TailDescriptor::finite(),
                                      const CertificateOptions& options = {});

/// Z_+ instance: the condition is certified on the disk |z| <= inf w(n)^{1/n}.
TauberianReport corollary3_experiment(const BoundedFunction& f, const AlgebraElement& k, const Weight& w,
                                      std::span<const Index> levels, double epsilon = kDefaultEpsilon,
                                      const TailDescriptor& k_tail = TailDescriptor::finite(),
                                      const CertificateOptions& options = {});

struct AbelianReport {
    DecayReport f_profile;
    DecayReport convolution_profile; ///< (f*k) w at epsilon scaled by ||k||_w
    double kernel_norm = 0.0;
    bool passed = false;
    std::optional<BoundedFunction> convolution_weighted;
};

/// Requires f w -> 0; checks (f*k) w -> 0.
AbelianReport abelian_experiment(const BoundedFunction& f, const AlgebraElement& k, const Weight& w,
                                 std::span<const Index> levels, double epsilon = kDefaultEpsilon);

struct Assertion {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Example1Report {
    Index horizon = 0;
    NeumannResult neumann;
    std::optional<BoundedFunction> f;     ///< 1 + 1*q
    double identity_error = 0.0;          ///< sup |f + f*K - 1|
    DecayReport f_profile;
    DecayReport g_profile;                ///< f + f*K, expected to tend to 1
    ConditionCertificate q_condition;     ///< 1 + q-tilde != 0 on Re s >= 0
    ConditionCertificate kernel_condition; ///< K-tilde != -1 on Re s >= 0
    std::vector<Assertion> assertions;

    bool ok() const;
};

/// q(n) = 2^{-(n+1)} on N*, K = (u+q)^{-1} - u, f = 1 + 1*q: f + f*K = 1
/// while f has no limit. Requires horizon >= 840.
Example1Report example1_counterexample(Index horizon, double neumann_tol, std::int64_t primes_up_to,
                                       const CertificateOptions& options = {});

/// y_n = alpha x_n + (1 - alpha) n^{-1} sum_{k<=n} x_k (n starts at 1).
std::vector<double> mercer_mean(std::span<const double> x, double alpha);
/// Inverse of mercer_mean by forward recursion. Requires 0 < alpha < 1.
std::vector<double> mercer_invert(std::span<const double> y, double alpha);

} // namespace tauber
