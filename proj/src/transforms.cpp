#include "tauber/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tauber {

TailDescriptor TailDescriptor::geometric(double ratio, double scale) {
    if (!(ratio >= 0.0 && ratio < 1.0)) throw DomainError("geometric tail requires 0 <= ratio < 1");
    if (!(scale >= 0.0) || !std::isfinite(scale)) throw DomainError("geometric tail requires scale >= 0");
    TailDescriptor t;
    t.kind = Kind::GeometricBound;
    t.ratio = ratio;
    t.scale = scale;
    return t;
}

TailDescriptor TailDescriptor::explicit_bound(double tau) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw DomainError("explicit tail bound must be finite and >= 0");
    TailDescriptor t;
    t.kind = Kind::ExplicitBound;
    t.bound = tau;
    return t;
}

double TailDescriptor::bound_beyond(Index horizon) const {
    switch (kind) {
    case Kind::FinitelySupported: return 0.0;
    case Kind::GeometricBound:
        return scale * std::pow(ratio, static_cast<double>(horizon + 1)) / (1.0 - ratio);
    case Kind::ExplicitBound: return bound;
    }
    return 0.0;
}

namespace {

void require_tail(const AlgebraElement& k, const TailDescriptor& tail) {
    if (k.truncated() && tail.kind == TailDescriptor::Kind::FinitelySupported)
        throw DomainError("element is truncated: a TailDescriptor bounding the omitted mass is required");
}

SeriesValue sum_against(const AlgebraElement& k, const Semicharacter& psi, const TailDescriptor& tail,
                        const Weight& w, bool conjugate) {
    require_tail(k, tail);
    const SemigroupModel& model = k.model();
    if (tail.kind != TailDescriptor::Kind::FinitelySupported) {
        const auto budget = static_cast<std::size_t>(std::min<Index>(k.horizon() - model.first_index() + 1, 2000));
        const auto check = check_in_spectrum(psi, w, model, budget);
        if (!check.pass)
            throw DomainError("semicharacter exceeds the weight at index " + std::to_string(*check.witness) +
                              "; the tail bound does not apply");
    }
    SeriesValue out{k.unit_scalar(), tail.bound_beyond(k.horizon())};
    for (const auto& [i, v] : k.coefficients()) {
        const Complex p = psi.eval_index(model, i);
        out.value += v * (conjugate ? std::conj(p) : p);
    }
    return out;
}

Complex horner(const AlgebraElement& k, Complex z) {
    // coefficients are sparse and ascending; walk them from the top.
    Complex acc = 0.0;
    Index prev = -1;
    const auto& c = k.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        if (prev >= 0) {
            for (Index gap = prev - it->first; gap > 0; --gap) acc *= z;
        }
        acc += it->second;
        prev = it->first;
    }
    if (prev > 0)
        for (Index gap = prev; gap > 0; --gap) acc *= z;
    return acc;
}

} // namespace

SeriesValue laplace(const AlgebraElement& k, const Semicharacter& psi, const TailDescriptor& tail,
                    const Weight& w) {
    return sum_against(k, psi, tail, w, true);
}

SeriesValue evaluate_at(const AlgebraElement& k, const Semicharacter& psi, const TailDescriptor& tail,
                        const Weight& w) {
    return sum_against(k, psi, tail, w, false);
}

SeriesValue power_series(const AlgebraElement& k, Complex z, const TailDescriptor& tail, const Weight& w) {
    const SemigroupModel& model = k.model();
    if (!(model.family() == Family::ZPlusD && model.dim() == 1))
        throw DomainError("power_series: element must live on Z_+");
    require_tail(k, tail);
    if (tail.kind != TailDescriptor::Kind::FinitelySupported) {
        const double r = spectral_radius_bound(w, std::max<Index>(k.horizon(), 1)).value;
        if (std::abs(z) > r * (1.0 + kMultiplicativeRelTol))
            throw DomainError("power_series: |z| exceeds the validity radius of the tail bound");
    }
    return {k.unit_scalar() + horner(k, z), tail.bound_beyond(k.horizon())};
}

SeriesValue dirichlet_series(const AlgebraElement& k, const Weight& rho, Complex s,
                             const TailDescriptor& tail) {
    if (k.model().family() != Family::NStar) throw DomainError("dirichlet_series: element must live on N*");
    if (s.real() < 0.0) throw DomainError("dirichlet_series: Re s must be >= 0");
    require_tail(k, tail);
    SeriesValue out{k.unit_scalar(), tail.bound_beyond(k.horizon())};
    for (const auto& [n, v] : k.coefficients()) {
        const double ln = std::log(static_cast<double>(n));
        out.value += v * rho.eval_index(k.model(), n) * std::exp(-s * ln);
    }
    return out;
}

SpectralRadius spectral_radius_bound(const Weight& w, Index n_max) {
    if (n_max < 1) throw DomainError("spectral_radius_bound: nMax must be >= 1");
    if (w.kind() == Weight::Kind::ConstantOne) return {1.0, false};
    if (w.kind() == Weight::Kind::ExponentialOfIndex) {
        if (w.coefficients().size() != 1) throw DomainError("spectral_radius_bound: weight must live on Z_+");
        return {std::exp(w.coefficients()[0]), false};
    }
    const auto zp = SemigroupModel::zplus();
    double best = std::numeric_limits<double>::infinity();
    double prev = best;
    Index argmin = 0;
    for (Index n = 1; n <= n_max; ++n) {
        const double v = std::exp(w.log_eval_index(zp, n) / static_cast<double>(n));
        if (v < best) {
            best = v;
            argmin = n;
        }
        if (n < n_max) prev = v;
    }
    const bool decreasing = n_max > 1 && argmin == n_max && best < prev;
    return {best, decreasing};
}

// ---------------------------------------------------------------------------

DirichletPolynomial::DirichletPolynomial(const AlgebraElement& k, const Weight& rho,
                                         const TailDescriptor& tail, double drop_mass) {
    if (k.model().family() != Family::NStar) throw DomainError("DirichletPolynomial: element must live on N*");
    require_tail(k, tail);
    tail_radius_ = tail.bound_beyond(k.horizon());
    leading_ = k.unit_scalar();

    std::vector<std::pair<Index, Complex>> weighted;
    for (const auto& [n, v] : k.coefficients()) {
        const Complex c = v * rho.eval_index(k.model(), n);
        if (n == 1) leading_ += c;
        else weighted.emplace_back(n, c);
    }
    // Drop the smallest trailing terms while their mass stays below drop_mass.
    std::vector<std::size_t> order(weighted.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(weighted[a].second) < std::abs(weighted[b].second);
    });
    std::vector<bool> keep(weighted.size(), true);
    double dropped = 0.0;
    for (std::size_t idx : order) {
        const double m = std::abs(weighted[idx].second);
        if (dropped + m > drop_mass) break;
        dropped += m;
        keep[idx] = false;
    }
    tail_radius_ += dropped;

    std::optional<std::int64_t> prime;
    bool single = true;
    for (std::size_t i = 0; i < weighted.size(); ++i) {
        if (!keep[i]) continue;
        const auto [n, c] = weighted[i];
        const double ln = std::log(static_cast<double>(n));
        terms_.push_back({ln, c});
        derivative_bound_ += std::abs(c) * ln;
        const auto f = factorize(n);
        if (f.size() != 1 || (prime && *prime != f.begin()->first)) single = false;
        else prime = f.begin()->first;
    }
    if (single && prime) single_prime_ = prime;
    if (terms_.empty()) single_prime_ = std::nullopt;
}

SeriesValue DirichletPolynomial::operator()(Complex s) const {
    if (s.real() < 0.0) throw DomainError("DirichletPolynomial: Re s must be >= 0");
    Complex v = leading_;
    for (const Term& t : terms_) v += t.coeff * std::exp(-s * t.log_n);
    return {v, tail_radius_};
}

double DirichletPolynomial::mass_beyond_leading(double sigma) const {
    double m = tail_radius_;
    for (const Term& t : terms_) m += std::abs(t.coeff) * std::exp(-sigma * t.log_n);
    return m;
}

} // namespace tauber
