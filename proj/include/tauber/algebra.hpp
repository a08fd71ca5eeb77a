#pragma once

// The weighted convolution algebra L^1(w) over a concrete semigroup, with an
// adjoined unit u. Elements are finitely supported up to a horizon B; since
// every factorization s1*s2 = t has both factors enumerated before t, a
// convolution truncated at B is exact at every index <= B.

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "tauber/semigroup.hpp"

namespace tauber {

class AlgebraElement {
public:
    /// The zero element with the given horizon.
    AlgebraElement(SemigroupModel model, Index horizon);

    static AlgebraElement delta(const SemigroupModel& model, Index at, Index horizon,
                                Complex value = 1.0);
    /// lambda * u with no L^1 part.
    static AlgebraElement unit(const SemigroupModel& model, Index horizon, Complex lambda = 1.0);
    /// Coefficients fn(i) for every index up to the horizon. Mark `truncated`
    /// when fn is nonzero beyond the horizon.
    static AlgebraElement from_function(const SemigroupModel& model, Index horizon,
                                        const std::function<Complex(Index)>& fn,
                                        bool truncated = true);
    static AlgebraElement from_map(const SemigroupModel& model, Index horizon,
                                   std::map<Index, Complex> coefficients, bool truncated = false);

    const SemigroupModel& model() const noexcept { return model_; }
    Index horizon() const noexcept { return horizon_; }
    Complex unit_scalar() const noexcept { return lambda_; }
    bool truncated() const noexcept { return truncated_; }
    const std::map<Index, Complex>& coefficients() const noexcept { return coeffs_; }

    /// k(i) for i within the horizon; throws HorizonError beyond it.
    Complex coefficient(Index i) const;

    AlgebraElement with_unit_scalar(Complex lambda) const;
    /// lambda u + k  ->  k + lambda delta_e (the discrete models all have a unit).
    AlgebraElement absorb_unit() const;
    AlgebraElement restricted(Index horizon) const;

    AlgebraElement operator+(const AlgebraElement& other) const;
    AlgebraElement operator-(const AlgebraElement& other) const;
    AlgebraElement operator*(Complex scalar) const;

private:
    void check_compatible(const AlgebraElement& other, const char* op) const;

    SemigroupModel model_;
    Index horizon_;
    std::map<Index, Complex> coeffs_;
    Complex lambda_ = 0.0;
    bool truncated_ = false;
};

/// Complex function known on every index up to the horizon.
class BoundedFunction {
public:
    BoundedFunction(SemigroupModel model, Index horizon, std::vector<Complex> values,
                    std::optional<double> declared_bound = std::nullopt);

    static BoundedFunction from_function(const SemigroupModel& model, Index horizon,
                                         const std::function<Complex(Index)>& fn);

    const SemigroupModel& model() const noexcept { return model_; }
    Index first_index() const noexcept { return model_.first_index(); }
    Index horizon() const noexcept { return horizon_; }
    std::span<const Complex> values() const noexcept { return values_; }
    double declared_bound() const noexcept { return bound_; }
    double sup_norm() const;

    Complex at(Index i) const;

private:
    SemigroupModel model_;
    Index horizon_;
    std::vector<Complex> values_;
    double bound_;
};

/// (lambda_a u + a) * (lambda_b u + b); result horizon is the smaller one.
AlgebraElement convolve(const AlgebraElement& a, const AlgebraElement& b);

/// |lambda| + sum |k(s)| w(s).
double norm_w(const AlgebraElement& k, const Weight& w);

/// max |k(s)| over the stored support (the unit part is ignored).
double sup_norm(const AlgebraElement& k);

/// s -> |k(s)| w(s) as an algebra element (unit part mapped to |lambda|).
AlgebraElement abs_weighted(const AlgebraElement& k, const Weight& w);

struct NeumannResult {
    AlgebraElement inverse_part{SemigroupModel::zplus(), 0}; ///< K with (u + K)(u + q) = u
    int terms = 0;               ///< M: number of powers of q summed
    double q_norm = 0.0;
    double geometric_tail = 0.0; ///< ||q||^{M+1} / (1 - ||q||)
    double residual = 0.0;       ///< ||(u + K)(u + q) - u||_w within the horizon
    /// Bound on the weighted mass of K that the horizon misses plus the
    /// series truncation, from the dominating series of |q|.
    double certified_tail = 0.0;
};

/// K = sum_{m=1}^{M} (-1)^m q^{*m} with M the smallest count whose geometric
/// tail is <= tol. `q_tail` bounds the weighted mass of q beyond its horizon.
NeumannResult neumann_resolve(const AlgebraElement& q, const Weight& w, double tol,
                              int max_terms = 200, double q_tail = 0.0);

/// lambda F + k * F with (k * F)(t) = sum_{s r = t} k(s) F(r).
BoundedFunction apply_unitized(const AlgebraElement& z, const BoundedFunction& f);

/// s -> f(s) w(s).
BoundedFunction pointwise_weighted_product(const BoundedFunction& f, const Weight& w);

} // namespace tauber
