#include "tauber/norm_series.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "tauber/error.hpp"
#include "tauber/io.hpp"

namespace tauber {

namespace {

// Neumaier compensated summation.
class Accumulator {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
        else comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

constexpr double kBoundSlack = 1e-12;

void require_normed(const SemigroupModel& model) {
    if (model.family() == Family::ZPlusD)
        throw DomainError(model.name() + " carries no norm; use N* or a free abelian model");
}

std::int64_t integer_bound(double bound) {
    if (!(bound >= 1.0) || !std::isfinite(bound)) throw DomainError("norm bound must be finite and >= 1");
    if (bound > 4e9) throw CapError("norm bound too large for the sieve");
    return static_cast<std::int64_t>(std::floor(bound * (1.0 + kBoundSlack)));
}

const PrimeSieve& sieve_for(std::int64_t limit, std::optional<PrimeSieve>& local) {
    if (limit <= default_sieve().limit()) return default_sieve();
    local.emplace(limit);
    return *local;
}

// Norms of all elements with N <= bound, by depth-first search over exponents.
void collect_norms(std::span<const double> norms, double bound, std::size_t cap, std::size_t g, double current,
                   std::vector<double>& out) {
    if (g == norms.size()) {
        if (out.size() >= cap)
            throw CapError("element enumeration exceeds the cap of " + std::to_string(cap) + " elements");
        out.push_back(current);
        return;
    }
    for (double v = current; v <= bound * (1.0 + kBoundSlack); v *= norms[g]) {
        collect_norms(norms, bound, cap, g + 1, v, out);
    }
}

double sum_reciprocals_ascending(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    Accumulator acc;
    for (auto it = values.rbegin(); it != values.rend(); ++it) acc.add(1.0 / *it);
    return acc.value();
}

} // namespace

double prime_norm_partial_sum(const SemigroupModel& model, double bound) {
    require_normed(model);
    if (model.family() == Family::NStar) {
        const std::int64_t limit = integer_bound(bound);
        std::optional<PrimeSieve> local;
        const PrimeSieve& sieve = sieve_for(limit, local);
        Accumulator acc;
        for (std::int64_t p : sieve.primes()) {
            if (p > limit) break;
            acc.add(1.0 / static_cast<double>(p));
        }
        return acc.value();
    }
    if (!(bound >= 1.0)) throw DomainError("norm bound must be >= 1");
    std::vector<double> selected;
    for (double n : model.generator_norms())
        if (n <= bound * (1.0 + kBoundSlack)) selected.push_back(n);
    return sum_reciprocals_ascending(std::move(selected));
}

double semigroup_norm_partial_sum(const SemigroupModel& model, double bound, std::size_t element_cap) {
    require_normed(model);
    if (model.family() == Family::NStar) {
        const std::int64_t limit = integer_bound(bound);
        if (static_cast<std::size_t>(limit) > element_cap)
            throw CapError("element enumeration exceeds the cap of " + std::to_string(element_cap) + " elements");
        Accumulator acc;
        for (std::int64_t n = 1; n <= limit; ++n) acc.add(1.0 / static_cast<double>(n));
        return acc.value();
    }
    if (!(bound >= 1.0)) throw DomainError("norm bound must be >= 1");
    std::vector<double> found;
    collect_norms(model.generator_norms(), bound, element_cap, 0, 1.0, found);
    return sum_reciprocals_ascending(std::move(found));
}

double semigroup_degree_partial_sum(const SemigroupModel& model, int degree_bound, std::size_t element_cap) {
    if (model.family() != Family::FreeAbelian)
        throw DomainError("degree-bounded sums need finitely many generators");
    if (degree_bound < 0) throw DomainError("degree bound must be >= 0");
    const auto& norms = model.generator_norms();
    const double count = std::pow(static_cast<double>(degree_bound) + 1.0, static_cast<double>(norms.size()));
    if (count > static_cast<double>(element_cap))
        throw CapError("element enumeration exceeds the cap of " + std::to_string(element_cap) + " elements");
    std::vector<double> found;
    found.reserve(static_cast<std::size_t>(count));
    std::vector<int> e(norms.size(), 0);
    for (;;) {
        double n = 1.0;
        for (std::size_t g = 0; g < norms.size(); ++g) n *= std::pow(norms[g], e[g]);
        found.push_back(n);
        std::size_t g = 0;
        while (g < e.size() && e[g] == degree_bound) e[g++] = 0;
        if (g == e.size()) break;
        ++e[g];
    }
    return sum_reciprocals_ascending(std::move(found));
}

EulerProduct euler_product(std::span<const double> norms, int degree_bound) {
    if (degree_bound < 0) throw DomainError("degree bound must be >= 0");
    EulerProduct r;
    double miss = 0.0;
    for (double n : norms) {
        if (!(n > 1.0) || !std::isfinite(n)) throw DomainError("Euler product requires N(p) > 1");
        const double inv = 1.0 / n;
        const double cut = std::pow(inv, degree_bound + 1);
        r.value /= 1.0 - inv;
        r.degree_bounded *= (1.0 - cut) / (1.0 - inv);
        miss += cut;
    }
    r.truncation_bound = r.value * miss;
    return r;
}

EulerProduct euler_product(const SemigroupModel& model, int degree_bound) {
    if (model.family() != Family::FreeAbelian) throw DomainError("Euler product needs finitely many generators");
    return euler_product(model.generator_norms(), degree_bound);
}

namespace {

void fit(std::span<const double> x, std::span<const double> y, double& slope, double& intercept) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    slope = sxx > 0.0 ? sxy / sxx : 0.0;
    intercept = my - slope * mx;
}

} // namespace

NormSeriesReport divergence_diagnostic(const SemigroupModel& model, std::span<const double> bounds,
                                       std::size_t element_cap) {
    require_normed(model);
    if (bounds.size() < 2) throw DomainError("divergence_diagnostic: at least two bounds are needed");
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        if (!(bounds[i] >= 2.0) || !std::isfinite(bounds[i]))
            throw DomainError("divergence_diagnostic: bounds must be finite and >= 2");
        if (i && !(bounds[i] > bounds[i - 1]))
            throw DomainError("divergence_diagnostic: bounds must be strictly increasing");
    }
    NormSeriesReport r;
    r.bounds.assign(bounds.begin(), bounds.end());

    if (model.family() == Family::NStar) {
        // one pass over 1..B_max, reading off both sums at each bound
        const std::int64_t limit = integer_bound(bounds.back());
        if (static_cast<std::size_t>(limit) > element_cap)
            throw CapError("element enumeration exceeds the cap of " + std::to_string(element_cap) + " elements");
        std::optional<PrimeSieve> local;
        const PrimeSieve& sieve = sieve_for(limit, local);
        Accumulator primes, elements;
        std::size_t next = 0;
        for (std::int64_t n = 1; n <= limit && next < bounds.size(); ++n) {
            const double inv = 1.0 / static_cast<double>(n);
            elements.add(inv);
            if (sieve.is_prime(n)) primes.add(inv);
            while (next < bounds.size() && n == integer_bound(bounds[next])) {
                r.prime_sums.push_back(primes.value());
                r.element_sums.push_back(elements.value());
                ++next;
            }
        }
    } else {
        for (double b : bounds) {
            r.prime_sums.push_back(prime_norm_partial_sum(model, b));
            r.element_sums.push_back(semigroup_norm_partial_sum(model, b, element_cap));
        }
        r.euler_product_value = euler_product(model, 0).value;
    }

    std::vector<double> lnb, lnlnb;
    for (double b : bounds) {
        lnb.push_back(std::log(b));
        lnlnb.push_back(std::log(std::log(b)));
    }
    fit(lnb, r.element_sums, r.element_slope, r.element_intercept);
    fit(lnlnb, r.prime_sums, r.prime_slope, r.prime_intercept);
    const std::size_t last = bounds.size() - 1;
    r.co_divergence = r.prime_sums[last] > r.prime_sums[last - 1] && r.element_sums[last] > r.element_sums[last - 1];
    return r;
}

void write_csv(const NormSeriesReport& report, std::ostream& out) {
    out << "B,primeSum,elementSum,lnB,lnlnB\n";
    for (std::size_t i = 0; i < report.bounds.size(); ++i) {
        const double b = report.bounds[i];
        out << format_number(b) << ',' << format_number(report.prime_sums[i]) << ','
            << format_number(report.element_sums[i]) << ',' << format_number(std::log(b)) << ','
            << format_number(std::log(std::log(b))) << '\n';
    }
}

} // namespace tauber
