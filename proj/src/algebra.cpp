#include "tauber/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tauber {

namespace {

void check_horizon(const SemigroupModel& model, Index horizon) {
    if (horizon < model.first_index())
        throw DomainError("horizon " + std::to_string(horizon) + " precedes the unit of " + model.name());
    if (horizon > model.max_index())
        throw HorizonError("horizon " + std::to_string(horizon) + " beyond enumeration capacity of " +
                           model.name());
}

/// Calls fn(index of s*r, s, r) for every stored pair whose product lies
/// within the horizon. Both maps iterate in ascending index order, and for
/// Z_+ and N* the product index is increasing in the second factor.
template <class SupportA, class SupportB, class Fn>
void for_each_product(const SemigroupModel& model, const SupportA& a, const SupportB& b,
                      Index horizon, Fn&& fn) {
    if (model.is_arithmetic()) {
        for (const auto& [i, x] : a) {
            bool any = false;
            for (const auto& [j, y] : b) {
                const auto t = model.product_index(i, j, horizon);
                if (!t) break;
                any = true;
                fn(*t, x, y);
            }
            if (!any && !b.empty()) break;
        }
        return;
    }
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b)
            if (const auto t = model.product_index(i, j, horizon)) fn(*t, x, y);
}

class DenseAccumulator {
public:
    DenseAccumulator(Index first, Index horizon)
        : first_(first), values_(static_cast<std::size_t>(horizon - first + 1)),
          touched_(values_.size(), false) {}

    void add(Index i, Complex v) {
        const auto k = static_cast<std::size_t>(i - first_);
        values_[k] += v;
        touched_[k] = true;
    }

    std::map<Index, Complex> to_map() const {
        std::map<Index, Complex> out;
        for (std::size_t k = 0; k < values_.size(); ++k)
            if (touched_[k] && values_[k] != Complex(0.0))
                out.emplace_hint(out.end(), first_ + static_cast<Index>(k), values_[k]);
        return out;
    }

private:
    Index first_;
    std::vector<Complex> values_;
    std::vector<bool> touched_;
};

std::map<Index, Complex> combine(const std::map<Index, Complex>& a, Complex ca,
                                 const std::map<Index, Complex>& b, Complex cb, Index horizon) {
    std::map<Index, Complex> out;
    for (const auto& [i, x] : a)
        if (i <= horizon) out[i] += ca * x;
    for (const auto& [i, y] : b)
        if (i <= horizon) out[i] += cb * y;
    std::erase_if(out, [](const auto& kv) { return kv.second == Complex(0.0); });
    return out;
}

/// Total order on operands so that convolve(a, b) and convolve(b, a) run
/// the identical sequence of floating-point operations.
bool operand_precedes(const AlgebraElement& a, const AlgebraElement& b) {
    auto key = [](Complex z) { return std::pair{z.real(), z.imag()}; };
    if (a.horizon() != b.horizon()) return a.horizon() < b.horizon();
    if (a.unit_scalar() != b.unit_scalar()) return key(a.unit_scalar()) < key(b.unit_scalar());
    if (a.coefficients().size() != b.coefficients().size())
        return a.coefficients().size() < b.coefficients().size();
    auto ia = a.coefficients().begin();
    auto ib = b.coefficients().begin();
    for (; ia != a.coefficients().end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
        if (ia->second != ib->second) return key(ia->second) < key(ib->second);
    }
    return false;
}

} // namespace

// ---------------------------------------------------------------------------
// AlgebraElement

AlgebraElement::AlgebraElement(SemigroupModel model, Index horizon)
    : model_(std::move(model)), horizon_(horizon) {
    check_horizon(model_, horizon_);
}

AlgebraElement AlgebraElement::delta(const SemigroupModel& model, Index at, Index horizon,
                                     Complex value) {
    AlgebraElement e(model, horizon);
    if (at < model.first_index() || at > horizon)
        throw HorizonError("delta: index " + std::to_string(at) + " outside [first, horizon]");
    if (value != Complex(0.0)) e.coeffs_.emplace(at, value);
    return e;
}

AlgebraElement AlgebraElement::unit(const SemigroupModel& model, Index horizon, Complex lambda) {
    AlgebraElement e(model, horizon);
    e.lambda_ = lambda;
    return e;
}

AlgebraElement AlgebraElement::from_function(const SemigroupModel& model, Index horizon,
                                             const std::function<Complex(Index)>& fn,
                                             bool truncated) {
    AlgebraElement e(model, horizon);
    for (Index i = model.first_index(); i <= horizon; ++i) {
        const Complex v = fn(i);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw DomainError("from_function: non-finite coefficient at index " + std::to_string(i));
        if (v != Complex(0.0)) e.coeffs_.emplace_hint(e.coeffs_.end(), i, v);
    }
    e.truncated_ = truncated;
    return e;
}

AlgebraElement AlgebraElement::from_map(const SemigroupModel& model, Index horizon,
                                        std::map<Index, Complex> coefficients, bool truncated) {
    AlgebraElement e(model, horizon);
    for (const auto& [i, v] : coefficients) {
        if (i < model.first_index() || i > horizon)
            throw HorizonError("from_map: index " + std::to_string(i) + " outside [first, horizon]");
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw DomainError("from_map: non-finite coefficient");
    }
    std::erase_if(coefficients, [](const auto& kv) { return kv.second == Complex(0.0); });
    e.coeffs_ = std::move(coefficients);
    e.truncated_ = truncated;
    return e;
}

Complex AlgebraElement::coefficient(Index i) const {
    if (i > horizon_)
        throw HorizonError("coefficient at index " + std::to_string(i) + " beyond horizon " +
                           std::to_string(horizon_));
    auto it = coeffs_.find(i);
    return it == coeffs_.end() ? Complex(0.0) : it->second;
}

AlgebraElement AlgebraElement::with_unit_scalar(Complex lambda) const {
    AlgebraElement e = *this;
    e.lambda_ = lambda;
    return e;
}

AlgebraElement AlgebraElement::absorb_unit() const {
    AlgebraElement e = *this;
    if (lambda_ != Complex(0.0)) {
        const Index u = model_.index_of(model_.unit());
        e.coeffs_[u] += lambda_;
        if (e.coeffs_[u] == Complex(0.0)) e.coeffs_.erase(u);
        e.lambda_ = 0.0;
    }
    return e;
}

AlgebraElement AlgebraElement::restricted(Index horizon) const {
    if (horizon > horizon_)
        throw HorizonError("restricted: cannot extend horizon " + std::to_string(horizon_) + " to " +
                           std::to_string(horizon));
    AlgebraElement e(model_, horizon);
    e.lambda_ = lambda_;
    e.truncated_ = truncated_ || std::any_of(coeffs_.begin(), coeffs_.end(),
                                             [&](const auto& kv) { return kv.first > horizon; });
    e.coeffs_.insert(coeffs_.begin(), coeffs_.upper_bound(horizon));
    return e;
}

void AlgebraElement::check_compatible(const AlgebraElement& other, const char* op) const {
    if (!(model_ == other.model_))
        throw DomainError(std::string(op) + ": model mismatch (" + model_.name() + " vs " +
                          other.model_.name() + ")");
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& other) const {
    check_compatible(other, "add");
    AlgebraElement e(model_, std::min(horizon_, other.horizon_));
    e.coeffs_ = combine(coeffs_, 1.0, other.coeffs_, 1.0, e.horizon_);
    e.lambda_ = lambda_ + other.lambda_;
    e.truncated_ = truncated_ || other.truncated_;
    return e;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& other) const {
    check_compatible(other, "subtract");
    AlgebraElement e(model_, std::min(horizon_, other.horizon_));
    e.coeffs_ = combine(coeffs_, 1.0, other.coeffs_, -1.0, e.horizon_);
    e.lambda_ = lambda_ - other.lambda_;
    e.truncated_ = truncated_ || other.truncated_;
    return e;
}

AlgebraElement AlgebraElement::operator*(Complex scalar) const {
    AlgebraElement e(model_, horizon_);
    if (scalar != Complex(0.0)) {
        for (const auto& [i, v] : coeffs_) e.coeffs_.emplace_hint(e.coeffs_.end(), i, v * scalar);
    }
    e.lambda_ = lambda_ * scalar;
    e.truncated_ = truncated_ && scalar != Complex(0.0);
    return e;
}

// ---------------------------------------------------------------------------
// BoundedFunction

BoundedFunction::BoundedFunction(SemigroupModel model, Index horizon, std::vector<Complex> values,
                                 std::optional<double> declared_bound)
    : model_(std::move(model)), horizon_(horizon), values_(std::move(values)) {
    check_horizon(model_, horizon_);
    if (static_cast<Index>(values_.size()) != horizon_ - model_.first_index() + 1)
        throw DomainError("BoundedFunction: expected one value per index up to the horizon");
    const double sup = sup_norm();
    if (!std::isfinite(sup)) throw DomainError("BoundedFunction: non-finite value");
    bound_ = declared_bound.value_or(sup);
    if (sup > bound_ * (1.0 + kMultiplicativeRelTol))
        throw DomainError("BoundedFunction: a value exceeds the declared bound");
}

BoundedFunction BoundedFunction::from_function(const SemigroupModel& model, Index horizon,
                                               const std::function<Complex(Index)>& fn) {
    check_horizon(model, horizon);
    std::vector<Complex> values;
    values.reserve(static_cast<std::size_t>(horizon - model.first_index() + 1));
    for (Index i = model.first_index(); i <= horizon; ++i) values.push_back(fn(i));
    return BoundedFunction(model, horizon, std::move(values));
}

double BoundedFunction::sup_norm() const {
    double s = 0.0;
    for (const Complex& v : values_) s = std::max(s, std::abs(v));
    return s;
}

Complex BoundedFunction::at(Index i) const {
    if (i < first_index() || i > horizon_)
        throw HorizonError("BoundedFunction: index " + std::to_string(i) + " outside [first, horizon " +
                           std::to_string(horizon_) + "]");
    return values_[static_cast<std::size_t>(i - first_index())];
}

// ---------------------------------------------------------------------------
// Operations

AlgebraElement convolve(const AlgebraElement& lhs, const AlgebraElement& rhs) {
    const bool swap = operand_precedes(rhs, lhs);
    const AlgebraElement& a = swap ? rhs : lhs;
    const AlgebraElement& b = swap ? lhs : rhs;
    if (!(a.model() == b.model()))
        throw DomainError("convolve: model mismatch (" + a.model().name() + " vs " + b.model().name() + ")");
    const SemigroupModel& model = a.model();
    const Index horizon = std::min(a.horizon(), b.horizon());

    DenseAccumulator acc(model.first_index(), horizon);
    for_each_product(model, a.coefficients(), b.coefficients(), horizon,
                     [&](Index t, Complex x, Complex y) { acc.add(t, x * y); });
    std::map<Index, Complex> prod = acc.to_map();
    prod = combine(prod, 1.0, combine(b.coefficients(), a.unit_scalar(), a.coefficients(),
                                      b.unit_scalar(), horizon),
                   1.0, horizon);

    AlgebraElement out = AlgebraElement::from_map(model, horizon, std::move(prod),
                                                  a.truncated() || b.truncated());
    return out.with_unit_scalar(a.unit_scalar() * b.unit_scalar());
}

double norm_w(const AlgebraElement& k, const Weight& w) {
    double s = std::abs(k.unit_scalar());
    for (const auto& [i, v] : k.coefficients()) s += std::abs(v) * w.eval_index(k.model(), i);
    return s;
}

double sup_norm(const AlgebraElement& k) {
    double s = 0.0;
    for (const auto& [i, v] : k.coefficients()) s = std::max(s, std::abs(v));
    return s;
}

AlgebraElement abs_weighted(const AlgebraElement& k, const Weight& w) {
    std::map<Index, Complex> m;
    for (const auto& [i, v] : k.coefficients()) m.emplace_hint(m.end(), i, std::abs(v) * w.eval_index(k.model(), i));
    return AlgebraElement::from_map(k.model(), k.horizon(), std::move(m), k.truncated())
        .with_unit_scalar(std::abs(k.unit_scalar()));
}

NeumannResult neumann_resolve(const AlgebraElement& q, const Weight& w, double tol, int max_terms,
                              double q_tail) {
    if (!(tol > 0.0)) throw DomainError("neumann_resolve: tol must be positive");
    if (q_tail < 0.0) throw DomainError("neumann_resolve: q_tail must be >= 0");
    const SemigroupModel& model = q.model();
    const Index horizon = q.horizon();
    const double nq = norm_w(q, w);
    if (nq >= 1.0) throw NeumannInapplicable(nq);

    NeumannResult r{AlgebraElement(model, horizon)};
    r.q_norm = nq;
    if (nq == 0.0) return r;

    int terms = 1;
    while (std::pow(nq, terms + 1) / (1.0 - nq) > tol) {
        if (++terms > max_terms)
            throw DomainError("neumann_resolve: more than " + std::to_string(max_terms) +
                              " terms needed for tol " + std::to_string(tol));
    }
    r.terms = terms;
    r.geometric_tail = std::pow(nq, terms + 1) / (1.0 - nq);

    const AlgebraElement abs_q = abs_weighted(q, Weight::one());
    AlgebraElement power = q;
    AlgebraElement abs_power = abs_q;
    AlgebraElement k = q * -1.0;
    AlgebraElement dominating = abs_q;
    for (int m = 2; m <= terms; ++m) {
        power = convolve(power, q);
        abs_power = convolve(abs_power, abs_q);
        k = k + power * (m % 2 == 0 ? 1.0 : -1.0);
        dominating = dominating + abs_power;
    }
    r.inverse_part = k;

    const AlgebraElement u = AlgebraElement::unit(model, horizon);
    r.residual = norm_w(convolve(u + k, u + q) - u, w);

    // sum over all s of R(s) w(s) <= n/(1-n) with R = sum_m |q|^{*m}; the part
    // inside the horizon is known, the remainder dominates everything K misses.
    const double n_full = norm_w(abs_q, w) + q_tail;
    if (n_full >= 1.0) {
        r.certified_tail = std::numeric_limits<double>::infinity();
    } else {
        const double total = n_full / (1.0 - n_full);
        r.certified_tail = std::max(0.0, total - norm_w(dominating, w)) + 4e-16 * total * terms;
    }
    return r;
}

BoundedFunction apply_unitized(const AlgebraElement& z, const BoundedFunction& f) {
    if (!(z.model() == f.model()))
        throw DomainError("apply_unitized: model mismatch (" + z.model().name() + " vs " +
                          f.model().name() + ")");
    const SemigroupModel& model = f.model();
    const Index first = model.first_index();
    const Index horizon = std::min(z.horizon(), f.horizon());

    std::vector<Complex> out(static_cast<std::size_t>(horizon - first + 1));
    for (Index i = first; i <= horizon; ++i)
        out[static_cast<std::size_t>(i - first)] = z.unit_scalar() * f.at(i);

    struct DenseRange {
        const BoundedFunction& f;
        Index horizon;
        struct It {
            const BoundedFunction* f;
            Index i;
            std::pair<Index, Complex> operator*() const { return {i, f->at(i)}; }
            It& operator++() { ++i; return *this; }
            bool operator!=(const It& o) const { return i != o.i; }
        };
        It begin() const { return {&f, f.first_index()}; }
        It end() const { return {&f, horizon + 1}; }
        bool empty() const { return horizon < f.first_index(); }
    };

    for_each_product(model, z.coefficients(), DenseRange{f, horizon}, horizon,
                     [&](Index t, Complex k, Complex v) { out[static_cast<std::size_t>(t - first)] += k * v; });
    return BoundedFunction(model, horizon, std::move(out));
}

BoundedFunction pointwise_weighted_product(const BoundedFunction& f, const Weight& w) {
    std::vector<Complex> out;
    out.reserve(f.values().size());
    for (Index i = f.first_index(); i <= f.horizon(); ++i) out.push_back(f.at(i) * w.eval_index(f.model(), i));
    return BoundedFunction(f.model(), f.horizon(), std::move(out));
}

} // namespace tauber
