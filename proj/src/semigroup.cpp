#include "tauber/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace tauber {

// ---------------------------------------------------------------------------
// Prime sieve

PrimeSieve::PrimeSieve(std::int64_t limit) : limit_(std::max<std::int64_t>(limit, 1)) {
    if (limit_ > std::numeric_limits<std::int32_t>::max())
        throw DomainError("PrimeSieve: limit too large");
    spf_.assign(static_cast<std::size_t>(limit_) + 1, 0);
    for (std::int64_t i = 2; i <= limit_; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<std::int32_t>(i);
            primes_.push_back(i);
        }
        for (std::int64_t p : primes_) {
            if (p > spf_[i] || i * p > limit_) break;
            spf_[i * p] = static_cast<std::int32_t>(p);
        }
    }
}

bool PrimeSieve::is_prime(std::int64_t n) const {
    if (n < 2) return false;
    if (n <= limit_) return spf_[n] == n;
    return factorize(n) == Factorization{{n, 1}};
}

std::int64_t PrimeSieve::smallest_factor(std::int64_t n) const {
    if (n < 2) throw DomainError("smallest_factor: n must be >= 2");
    if (n <= limit_) return spf_[n];
    return factorize(n).begin()->first;
}

Factorization PrimeSieve::factorize(std::int64_t n) const {
    if (n <= 0) throw DomainError("factorize: n must be >= 1, got " + std::to_string(n));
    Factorization out;
    auto divide_out = [&](std::int64_t p) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    };
    if (n > limit_) {
        for (std::int64_t p : primes_) {
            if (p > n / p) break;
            divide_out(p);
            if (n <= limit_) break;
        }
        if (n > limit_) {
            std::int64_t d = primes_.empty() ? 2 : primes_.back() + 1;
            if (d % 2 == 0 && d > 2) ++d;
            for (; d <= n / d; d += (d == 2 ? 1 : 2)) divide_out(d);
            if (n > 1) ++out[n];
            return out;
        }
    }
    while (n > 1) {
        const std::int64_t p = spf_[n];
        ++out[p];
        n /= p;
    }
    return out;
}

const PrimeSieve& default_sieve() {
    static const PrimeSieve sieve(std::int64_t{1} << 20);
    return sieve;
}

Factorization factorize(std::int64_t n) { return default_sieve().factorize(n); }

// ---------------------------------------------------------------------------
// Enumeration table for Z_+^d (d > 1) and free abelian models

namespace detail {

struct ElementTable {
    std::vector<std::vector<std::int64_t>> elements; // dense exponent vectors
    std::map<std::vector<std::int64_t>, Index> lookup;

    void index_all() {
        for (std::size_t i = 0; i < elements.size(); ++i)
            lookup.emplace(elements[i], static_cast<Index>(i));
    }
};

namespace {

constexpr std::size_t kElementCap = 20'000'000;

void compositions(std::size_t dim, std::int64_t degree, std::vector<std::int64_t>& cur,
                  std::size_t pos, std::vector<std::vector<std::int64_t>>& out) {
    if (pos + 1 == dim) {
        cur[pos] = degree;
        out.push_back(cur);
        return;
    }
    for (std::int64_t k = 0; k <= degree; ++k) {
        cur[pos] = k;
        compositions(dim, degree - k, cur, pos + 1, out);
    }
}

std::shared_ptr<const ElementTable> build_zplus_table(std::size_t dim, Index capacity) {
    auto table = std::make_shared<ElementTable>();
    std::vector<std::int64_t> cur(dim, 0);
    for (std::int64_t degree = 0; static_cast<Index>(table->elements.size()) <= capacity; ++degree) {
        std::vector<std::vector<std::int64_t>> layer;
        compositions(dim, degree, cur, 0, layer);
        std::sort(layer.begin(), layer.end());
        for (auto& e : layer) {
            if (static_cast<Index>(table->elements.size()) > capacity) break;
            table->elements.push_back(std::move(e));
        }
        if (table->elements.size() > kElementCap) throw CapError("Z_+^d enumeration exceeds cap");
    }
    table->index_all();
    return table;
}

void enumerate_free(const std::vector<double>& log_norms, double log_bound, std::size_t pos,
                    double log_acc, std::vector<std::int64_t>& cur,
                    std::vector<std::pair<double, std::vector<std::int64_t>>>& out) {
    if (pos == log_norms.size()) {
        out.emplace_back(log_acc, cur);
        if (out.size() > kElementCap) throw CapError("free abelian enumeration exceeds cap");
        return;
    }
    cur[pos] = 0;
    for (double acc = log_acc; acc <= log_bound + 1e-12; acc += log_norms[pos]) {
        enumerate_free(log_norms, log_bound, pos + 1, acc, cur, out);
        ++cur[pos];
    }
    cur[pos] = 0;
}

} // namespace

std::shared_ptr<const ElementTable> build_free_table(const std::vector<double>& norms,
                                                     Index capacity) {
    auto table = std::make_shared<ElementTable>();
    std::vector<double> log_norms;
    for (double n : norms) log_norms.push_back(std::log(n));
    const std::size_t want = static_cast<std::size_t>(capacity) + 1;
    std::vector<std::pair<double, std::vector<std::int64_t>>> found;
    double log_bound = log_norms.empty() ? 0.0 : *std::min_element(log_norms.begin(), log_norms.end());
    for (;;) {
        found.clear();
        std::vector<std::int64_t> cur(norms.size(), 0);
        enumerate_free(log_norms, log_bound, 0, 0.0, cur, found);
        if (found.size() >= want || norms.empty()) break;
        log_bound += std::max(log_bound, std::log(2.0));
    }
    // (norm, then lexicographic); equal norms up to rounding compare as ties.
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        const auto ka = std::llround(a.first * 1e9);
        const auto kb = std::llround(b.first * 1e9);
        if (ka != kb) return ka < kb;
        return a.second < b.second;
    });
    for (std::size_t i = 0; i < found.size() && i < want; ++i)
        table->elements.push_back(std::move(found[i].second));
    table->index_all();
    return table;
}

} // namespace detail

// ---------------------------------------------------------------------------
// SemigroupModel

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("semigroup composition overflows int64");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("semigroup composition overflows int64");
    return r;
}

std::vector<std::int64_t> dense_exponents(const ExponentVector& e, std::size_t n) {
    std::vector<std::int64_t> out(n, 0);
    for (const auto& [g, k] : e.exponents) {
        if (g >= n) throw DomainError("exponent vector references unknown generator");
        out[g] = k;
    }
    return out;
}

ExponentVector sparse_exponents(const std::vector<std::int64_t>& dense) {
    ExponentVector e;
    for (std::size_t g = 0; g < dense.size(); ++g)
        if (dense[g] != 0) e.exponents.emplace(g, dense[g]);
    return e;
}

} // namespace

SemigroupModel::SemigroupModel(Family family, std::size_t dim, std::vector<double> norms,
                               Index capacity)
    : family_(family), dim_(dim), norms_(std::move(norms)) {
    if (capacity < 0) throw DomainError("enumeration capacity must be >= 0");
    if (family_ == Family::ZPlusD && dim_ > 1)
        table_ = detail::build_zplus_table(dim_, capacity);
    else if (family_ == Family::FreeAbelian)
        table_ = detail::build_free_table(norms_, capacity);
}

SemigroupModel SemigroupModel::zplus(std::size_t dim, Index capacity) {
    if (dim == 0) throw DomainError("Z_+^d requires d >= 1");
    return SemigroupModel(Family::ZPlusD, dim, {}, capacity);
}

SemigroupModel SemigroupModel::nstar() { return SemigroupModel(Family::NStar, 1, {}, 0); }

SemigroupModel SemigroupModel::free_abelian(std::vector<double> norms, Index capacity) {
    for (double n : norms)
        if (!(n > 1.0) || !std::isfinite(n))
            throw DomainError("free abelian generator norms must satisfy N(p) > 1");
    return SemigroupModel(Family::FreeAbelian, norms.size(), std::move(norms), capacity);
}

std::string SemigroupModel::name() const {
    switch (family_) {
    case Family::ZPlusD: return dim_ == 1 ? "Z+" : "Z+^" + std::to_string(dim_);
    case Family::NStar: return "N*";
    case Family::FreeAbelian: return "free(" + std::to_string(norms_.size()) + ")";
    }
    return "?";
}

Index SemigroupModel::max_index() const {
    if (is_arithmetic()) return std::numeric_limits<Index>::max();
    return static_cast<Index>(table_->elements.size()) - 1;
}

Element SemigroupModel::unit() const {
    switch (family_) {
    case Family::ZPlusD: return MultiIndex{std::vector<std::int64_t>(dim_, 0)};
    case Family::NStar: return PositiveInteger{1};
    case Family::FreeAbelian: return ExponentVector{};
    }
    return PositiveInteger{1};
}

bool SemigroupModel::contains(const Element& e) const {
    switch (family_) {
    case Family::ZPlusD: {
        const auto* m = std::get_if<MultiIndex>(&e);
        return m && m->components.size() == dim_ &&
               std::all_of(m->components.begin(), m->components.end(),
                           [](std::int64_t c) { return c >= 0; });
    }
    case Family::NStar: {
        const auto* p = std::get_if<PositiveInteger>(&e);
        return p && p->value >= 1;
    }
    case Family::FreeAbelian: {
        const auto* v = std::get_if<ExponentVector>(&e);
        return v && std::all_of(v->exponents.begin(), v->exponents.end(), [&](const auto& kv) {
                   return kv.first < norms_.size() && kv.second > 0;
               });
    }
    }
    return false;
}

Element SemigroupModel::compose(const Element& a, const Element& b) const {
    if (!contains(a) || !contains(b))
        throw DomainError("compose: element does not belong to " + name());
    switch (family_) {
    case Family::ZPlusD: {
        const auto& x = std::get<MultiIndex>(a).components;
        const auto& y = std::get<MultiIndex>(b).components;
        MultiIndex r{std::vector<std::int64_t>(dim_)};
        for (std::size_t i = 0; i < dim_; ++i) r.components[i] = checked_add(x[i], y[i]);
        return r;
    }
    case Family::NStar:
        return PositiveInteger{
            checked_mul(std::get<PositiveInteger>(a).value, std::get<PositiveInteger>(b).value)};
    case Family::FreeAbelian: {
        ExponentVector r = std::get<ExponentVector>(a);
        for (const auto& [g, k] : std::get<ExponentVector>(b).exponents)
            r.exponents[g] = checked_add(r.exponents[g], k);
        return r;
    }
    }
    return a;
}

Index SemigroupModel::index_of(const Element& e) const {
    if (!contains(e)) throw DomainError("index_of: element does not belong to " + name());
    if (family_ == Family::NStar) return std::get<PositiveInteger>(e).value;
    if (family_ == Family::ZPlusD && dim_ == 1) return std::get<MultiIndex>(e).components[0];
    std::vector<std::int64_t> key = family_ == Family::ZPlusD
                                        ? std::get<MultiIndex>(e).components
                                        : dense_exponents(std::get<ExponentVector>(e), norms_.size());
    auto it = table_->lookup.find(key);
    if (it == table_->lookup.end())
        throw HorizonError("index_of: element lies beyond the enumeration capacity of " + name());
    return it->second;
}

Element SemigroupModel::element_at(Index i) const {
    if (i < first_index()) throw DomainError("element_at: negative or zero index for " + name());
    if (family_ == Family::NStar) return PositiveInteger{i};
    if (family_ == Family::ZPlusD && dim_ == 1) return MultiIndex{{i}};
    if (i > max_index())
        throw HorizonError("element_at: index " + std::to_string(i) +
                           " beyond enumeration capacity of " + name());
    const auto& dense = table_->elements[static_cast<std::size_t>(i)];
    if (family_ == Family::ZPlusD) return MultiIndex{dense};
    return sparse_exponents(dense);
}

std::optional<Index> SemigroupModel::product_index(Index a, Index b, Index horizon) const {
    switch (family_) {
    case Family::NStar: {
        Index r;
        if (__builtin_mul_overflow(a, b, &r) || r > horizon) return std::nullopt;
        return r;
    }
    case Family::ZPlusD:
        if (dim_ == 1) {
            Index r;
            if (__builtin_add_overflow(a, b, &r) || r > horizon) return std::nullopt;
            return r;
        }
        [[fallthrough]];
    case Family::FreeAbelian: {
        if (horizon > max_index())
            throw HorizonError("product_index: horizon beyond enumeration capacity of " + name());
        const auto& x = table_->elements[static_cast<std::size_t>(a)];
        const auto& y = table_->elements[static_cast<std::size_t>(b)];
        std::vector<std::int64_t> key(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) key[i] = x[i] + y[i];
        auto it = table_->lookup.find(key);
        if (it == table_->lookup.end() || it->second > horizon) return std::nullopt;
        return it->second;
    }
    }
    return std::nullopt;
}

double SemigroupModel::norm(const Element& e) const {
    if (!contains(e)) throw DomainError("norm: element does not belong to " + name());
    if (family_ == Family::NStar) return static_cast<double>(std::get<PositiveInteger>(e).value);
    if (family_ == Family::FreeAbelian) {
        double n = 1.0;
        for (const auto& [g, k] : std::get<ExponentVector>(e).exponents)
            n *= std::pow(norms_[g], static_cast<double>(k));
        return n;
    }
    throw DomainError("norm: Z_+^d carries no multiplicative norm");
}

bool SemigroupModel::operator==(const SemigroupModel& other) const {
    return family_ == other.family_ && dim_ == other.dim_ && norms_ == other.norms_;
}

Factorization factorize(const SemigroupModel& model, const Element& n) {
    if (!model.contains(n)) throw DomainError("factorize: element does not belong to " + model.name());
    switch (model.family()) {
    case Family::NStar: return factorize(std::get<PositiveInteger>(n).value);
    case Family::FreeAbelian: {
        Factorization out;
        for (const auto& [g, k] : std::get<ExponentVector>(n).exponents)
            out.emplace(static_cast<std::int64_t>(g), k);
        return out;
    }
    case Family::ZPlusD: break;
    }
    throw DomainError("factorize: only defined on N* and free abelian models");
}

// ---------------------------------------------------------------------------
// Weight

Weight Weight::one() { return Weight{}; }

Weight Weight::exponential(std::vector<double> c) {
    for (double x : c)
        if (!std::isfinite(x)) throw DomainError("exponential weight: non-finite coefficient");
    Weight w;
    w.kind_ = Kind::ExponentialOfIndex;
    w.coeffs_ = std::move(c);
    return w;
}

Weight Weight::power(double sigma) {
    if (!std::isfinite(sigma)) throw DomainError("power weight: non-finite exponent");
    Weight w;
    w.kind_ = Kind::PowerOfInteger;
    w.sigma_ = sigma;
    return w;
}

Weight Weight::tabulated(std::vector<double> values, Index first) {
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("tabulated weight must be positive");
    Weight w;
    w.kind_ = Kind::Tabulated;
    w.coeffs_ = std::move(values);
    w.first_ = first;
    return w;
}

Index Weight::table_end() const noexcept {
    if (kind_ != Kind::Tabulated) return std::numeric_limits<Index>::max();
    return first_ + static_cast<Index>(coeffs_.size()) - 1;
}

double Weight::log_eval_index(const SemigroupModel& model, Index i) const {
    switch (kind_) {
    case Kind::ConstantOne: return 0.0;
    case Kind::Tabulated:
        if (i < first_ || i > table_end())
            throw HorizonError("tabulated weight queried at index " + std::to_string(i) +
                               " outside its horizon");
        return std::log(coeffs_[static_cast<std::size_t>(i - first_)]);
    case Kind::PowerOfInteger:
        if (model.family() == Family::NStar) return sigma_ * std::log(static_cast<double>(i));
        if (model.family() == Family::FreeAbelian)
            return sigma_ * std::log(model.norm(model.element_at(i)));
        throw DomainError("power weight is defined on N* and normed free abelian models only");
    case Kind::ExponentialOfIndex: {
        if (model.family() == Family::NStar)
            throw DomainError("exponential-of-index weight is not defined on N*");
        if (model.family() == Family::ZPlusD && model.dim() == 1) {
            if (coeffs_.size() != 1) throw DomainError("exponential weight: dimension mismatch");
            return coeffs_[0] * static_cast<double>(i);
        }
        const Element e = model.element_at(i);
        double acc = 0.0;
        if (const auto* m = std::get_if<MultiIndex>(&e)) {
            if (coeffs_.size() != m->components.size())
                throw DomainError("exponential weight: dimension mismatch");
            for (std::size_t k = 0; k < coeffs_.size(); ++k)
                acc += coeffs_[k] * static_cast<double>(m->components[k]);
        } else {
            for (const auto& [g, k] : std::get<ExponentVector>(e).exponents) {
                if (g >= coeffs_.size()) throw DomainError("exponential weight: missing generator coefficient");
                acc += coeffs_[g] * static_cast<double>(k);
            }
        }
        return acc;
    }
    }
    return 0.0;
}

double Weight::eval_index(const SemigroupModel& model, Index i) const {
    switch (kind_) {
    case Kind::ConstantOne: return 1.0;
    case Kind::Tabulated:
        if (i < first_ || i > table_end())
            throw HorizonError("tabulated weight queried at index " + std::to_string(i) +
                               " outside its horizon");
        return coeffs_[static_cast<std::size_t>(i - first_)];
    case Kind::PowerOfInteger:
        if (model.family() == Family::NStar) return std::pow(static_cast<double>(i), sigma_);
        break;
    case Kind::ExponentialOfIndex: break;
    }
    return std::exp(log_eval_index(model, i));
}

double Weight::eval(const SemigroupModel& model, const Element& s) const {
    return eval_index(model, model.index_of(s));
}

std::string Weight::describe() const {
    std::ostringstream os;
    switch (kind_) {
    case Kind::ConstantOne: os << "one"; break;
    case Kind::ExponentialOfIndex:
        os << "exp(";
        for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i];
        os << ")";
        break;
    case Kind::PowerOfInteger: os << "power(" << sigma_ << ")"; break;
    case Kind::Tabulated: os << "table[" << first_ << ".." << table_end() << "]"; break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Semicharacter

namespace {

Complex ipow(Complex z, std::int64_t k) {
    Complex r = 1.0;
    while (k > 0) {
        if (k & 1) r *= z;
        z *= z;
        k >>= 1;
    }
    return r;
}

} // namespace

Semicharacter Semicharacter::power_point(std::vector<Complex> z) {
    Semicharacter c;
    c.kind_ = Kind::PowerPoint;
    c.point_ = std::move(z);
    return c;
}

Semicharacter Semicharacter::prime_point(Weight rho, std::map<std::int64_t, Complex> z_by_prime,
                                         Complex z_default) {
    if (!rho.is_multiplicative() && rho.kind() != Weight::Kind::Tabulated)
        throw DomainError("prime_point: rho must be a positive semicharacter");
    Semicharacter c;
    c.kind_ = Kind::PrimePoint;
    c.rho_ = std::move(rho);
    c.by_prime_ = std::move(z_by_prime);
    c.z_default_ = z_default;
    return c;
}

Semicharacter Semicharacter::dirichlet(Complex s, Weight rho) {
    Semicharacter c;
    c.kind_ = Kind::DirichletPower;
    c.s_ = s;
    c.rho_ = std::move(rho);
    return c;
}

Complex Semicharacter::eval_index(const SemigroupModel& model, Index i) const {
    switch (kind_) {
    case Kind::PowerPoint: {
        if (model.family() == Family::NStar)
            throw DomainError("power_point semicharacter is not defined on N*");
        if (model.family() == Family::ZPlusD && model.dim() == 1) {
            if (point_.size() != 1) throw DomainError("power_point: dimension mismatch");
            return ipow(point_[0], i);
        }
        const Element e = model.element_at(i);
        Complex r = 1.0;
        if (const auto* m = std::get_if<MultiIndex>(&e)) {
            if (point_.size() != m->components.size())
                throw DomainError("power_point: dimension mismatch");
            for (std::size_t k = 0; k < point_.size(); ++k) r *= ipow(point_[k], m->components[k]);
        } else {
            for (const auto& [g, k] : std::get<ExponentVector>(e).exponents) {
                if (g >= point_.size()) throw DomainError("power_point: missing generator value");
                r *= ipow(point_[g], k);
            }
        }
        return r;
    }
    case Kind::PrimePoint: {
        if (model.family() != Family::NStar)
            throw DomainError("prime_point semicharacter is defined on N* only");
        Complex r = rho_.eval_index(model, i);
        for (const auto& [p, k] : factorize(i)) {
            auto it = by_prime_.find(p);
            r *= ipow(it == by_prime_.end() ? z_default_ : it->second, k);
        }
        return r;
    }
    case Kind::DirichletPower: {
        if (model.family() != Family::NStar)
            throw DomainError("dirichlet semicharacter is defined on N* only");
        if (i < 1) throw DomainError("dirichlet semicharacter: index must be >= 1");
        return rho_.eval_index(model, i) * std::exp(-s_ * std::log(static_cast<double>(i)));
    }
    }
    return 0.0;
}

Complex Semicharacter::eval(const SemigroupModel& model, const Element& s) const {
    return eval_index(model, model.index_of(s));
}

Semicharacter Semicharacter::conjugate() const {
    Semicharacter c = *this;
    for (auto& z : c.point_) z = std::conj(z);
    for (auto& [p, z] : c.by_prime_) z = std::conj(z);
    c.z_default_ = std::conj(c.z_default_);
    c.s_ = std::conj(c.s_);
    return c;
}

// ---------------------------------------------------------------------------
// Sampled checks

std::vector<std::pair<Index, Index>> sample_pairs(const SemigroupModel& model, std::size_t budget,
                                                  Index range_end, std::uint64_t seed) {
    std::vector<std::pair<Index, Index>> out;
    const Index first = model.first_index();
    if (budget == 0 || range_end < first) return out;
    const auto m = static_cast<Index>(std::sqrt(static_cast<double>(budget)));
    for (Index i = first; i < first + m && i <= range_end; ++i)
        for (Index j = i; j < first + m && j <= range_end; ++j) out.emplace_back(i, j);
    std::mt19937_64 rng(seed);
    const auto span = static_cast<std::uint64_t>(range_end - first) + 1;
    for (std::size_t k = 0; k < budget; ++k) {
        const auto a = first + static_cast<Index>(rng() % span);
        const auto b = first + static_cast<Index>(rng() % span);
        out.emplace_back(a, b);
    }
    return out;
}

std::vector<std::pair<Index, Index>> check_submultiplicative(const Weight& w,
                                                             const SemigroupModel& model,
                                                             std::size_t sample_budget) {
    if (sample_budget == 0) throw DomainError("check_submultiplicative: sample budget must be >= 1");
    Index range_end = model.is_arithmetic()
                          ? model.first_index() + 4 * static_cast<Index>(sample_budget)
                          : model.max_index();
    range_end = std::min(range_end, w.table_end());
    const Index horizon = std::min(model.max_index(), w.table_end());
    std::vector<std::pair<Index, Index>> violations;
    for (const auto& [a, b] : sample_pairs(model, sample_budget, range_end)) {
        const auto ab = model.product_index(a, b, horizon);
        if (!ab) continue;
        const double lhs = w.eval_index(model, *ab);
        const double rhs = w.eval_index(model, a) * w.eval_index(model, b);
        if (lhs > rhs * (1.0 + kMultiplicativeRelTol)) violations.emplace_back(a, b);
    }
    return violations;
}

SpectrumCheck check_in_spectrum(const Semicharacter& psi, const Weight& w,
                                const SemigroupModel& model, std::size_t sample_budget) {
    SpectrumCheck out;
    const Index first = model.first_index();
    Index last = first + static_cast<Index>(sample_budget) - 1;
    last = std::min({last, model.max_index(), w.table_end()});
    for (Index i = first; i <= last; ++i) {
        const double mod = std::abs(psi.eval_index(model, i));
        const double wi = w.eval_index(model, i);
        out.worst_ratio = std::max(out.worst_ratio, mod / wi);
        if (out.pass && mod > wi * (1.0 + kMultiplicativeRelTol)) {
            out.pass = false;
            out.witness = i;
        }
    }
    return out;
}

} // namespace tauber
