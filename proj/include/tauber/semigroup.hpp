#pragma once

// Concrete abelian semigroups with counting measure: Z_+^d (additive),
// N* (multiplicative) and free abelian semigroups over normed generators.
// Elements are addressed by an enumeration index ordered by (norm, lex);
// for Z_+ the index is n itself and for N* it is the integer n >= 1.

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tauber/error.hpp"

namespace tauber {

using Index = std::int64_t;
using Complex = std::complex<double>;

/// Relative tolerance for multiplicative identities evaluated in double.
inline constexpr double kMultiplicativeRelTol = 1e-12;

struct MultiIndex {
    std::vector<std::int64_t> components;
    auto operator<=>(const MultiIndex&) const = default;
};

struct PositiveInteger {
    std::int64_t value = 1;
    auto operator<=>(const PositiveInteger&) const = default;
};

/// Generator index -> exponent. Only nonzero exponents are stored.
struct ExponentVector {
    std::map<std::size_t, std::int64_t> exponents;
    auto operator<=>(const ExponentVector&) const = default;
};

using Element = std::variant<MultiIndex, PositiveInteger, ExponentVector>;

/// Prime (or generator index) -> exponent.
using Factorization = std::map<std::int64_t, std::int64_t>;

/// Smallest-prime-factor sieve on [0, limit].
class PrimeSieve {
public:
    explicit PrimeSieve(std::int64_t limit);

    std::int64_t limit() const noexcept { return limit_; }
    bool is_prime(std::int64_t n) const;
    std::int64_t smallest_factor(std::int64_t n) const;
    std::span<const std::int64_t> primes() const noexcept { return primes_; }

    /// Exact factorization by sieve lookup, falling back to trial division
    /// by sieved primes (then odd candidates) when n exceeds the limit.
    Factorization factorize(std::int64_t n) const;

private:
    std::int64_t limit_;
    std::vector<std::int32_t> spf_;
    std::vector<std::int64_t> primes_;
};

/// Shared sieve up to 2^20, built on first use.
const PrimeSieve& default_sieve();

enum class Family { ZPlusD, NStar, FreeAbelian };

namespace detail {
struct ElementTable;
}

class SemigroupModel {
public:
    /// Z_+^d. For d > 1 elements beyond index 0 need an enumeration table,
    /// built eagerly up to `capacity`.
    static SemigroupModel zplus(std::size_t dim = 1, Index capacity = 0);
    static SemigroupModel nstar();
    /// Free abelian semigroup on generators with the given norms (all > 1).
    static SemigroupModel free_abelian(std::vector<double> norms, Index capacity = 0);

    Family family() const noexcept { return family_; }
    std::size_t dim() const noexcept { return dim_; }
    const std::vector<double>& generator_norms() const noexcept { return norms_; }
    std::string name() const;

    /// Smallest valid enumeration index (1 for N*, else 0). It is the unit's index.
    Index first_index() const noexcept { return family_ == Family::NStar ? 1 : 0; }
    /// Largest index addressable without overflow or table lookup failure.
    Index max_index() const;
    /// True when indices follow closed-form arithmetic (Z_+ and N*).
    bool is_arithmetic() const noexcept {
        return family_ == Family::NStar || (family_ == Family::ZPlusD && dim_ == 1);
    }

    Element unit() const;
    bool contains(const Element& e) const;
    Element compose(const Element& a, const Element& b) const;

    Index index_of(const Element& e) const;
    Element element_at(Index i) const;

    /// Index of element(a)*element(b) if it is <= horizon, std::nullopt otherwise.
    std::optional<Index> product_index(Index a, Index b, Index horizon) const;

    /// Multiplicative norm N: n on N*, prod N(p)^e on free abelian models.
    double norm(const Element& e) const;

    bool operator==(const SemigroupModel& other) const;

private:
    SemigroupModel(Family family, std::size_t dim, std::vector<double> norms, Index capacity);

    Family family_;
    std::size_t dim_;
    std::vector<double> norms_;
    std::shared_ptr<const detail::ElementTable> table_;
};

/// Exponent multi-index alpha(n): primes -> exponents on N*, the stored
/// exponents on free abelian models.
Factorization factorize(const SemigroupModel& model, const Element& n);
Factorization factorize(std::int64_t n);

/// Positive submultiplicative weight w(st) <= w(s) w(t).
class Weight {
public:
    enum class Kind { ConstantOne, ExponentialOfIndex, PowerOfInteger, Tabulated };

    static Weight one();
    /// exp(c . alpha) on Z_+^d, exp(sum_j c_j e_j) on free abelian models.
    static Weight exponential(std::vector<double> c);
    /// n^sigma on N*, N(s)^sigma on free abelian models.
    static Weight power(double sigma);
    /// values[i] = w(first + i). Values must be positive.
    static Weight tabulated(std::vector<double> values, Index first = 0);

    Kind kind() const noexcept { return kind_; }
    const std::vector<double>& coefficients() const noexcept { return coeffs_; }
    double sigma() const noexcept { return sigma_; }
    /// Last index covered by a tabulated weight.
    Index table_end() const noexcept;
    /// True for the kinds that are positive semicharacters.
    bool is_multiplicative() const noexcept { return kind_ != Kind::Tabulated; }

    double eval(const SemigroupModel& model, const Element& s) const;
    double eval_index(const SemigroupModel& model, Index i) const;
    double log_eval_index(const SemigroupModel& model, Index i) const;

    std::string describe() const;

private:
    Kind kind_ = Kind::ConstantOne;
    std::vector<double> coeffs_;
    double sigma_ = 0.0;
    Index first_ = 0;
};

/// Multiplicative map psi: S -> C. The family is fixed at construction.
class Semicharacter {
public:
    enum class Kind { PowerPoint, PrimePoint, DirichletPower };

    /// psi(alpha) = prod z_i^alpha_i on Z_+^d (or per generator on free
    /// abelian models). 0^0 := 1.
    static Semicharacter power_point(std::vector<Complex> z);
    /// psi(n) = rho(n) * prod_p z_p^{alpha_p(n)} on N*; primes not listed
    /// take `z_default`.
    static Semicharacter prime_point(Weight rho, std::map<std::int64_t, Complex> z_by_prime,
                                     Complex z_default = 1.0);
    /// psi(n) = rho(n) n^{-s} on N*.
    static Semicharacter dirichlet(Complex s, Weight rho = Weight::one());

    Kind kind() const noexcept { return kind_; }

    Complex eval(const SemigroupModel& model, const Element& s) const;
    Complex eval_index(const SemigroupModel& model, Index i) const;

    /// The pointwise complex conjugate, again a semicharacter.
    Semicharacter conjugate() const;

private:
    Kind kind_ = Kind::PowerPoint;
    std::vector<Complex> point_;
    std::map<std::int64_t, Complex> by_prime_;
    Complex z_default_ = 1.0;
    Complex s_ = 0.0;
    Weight rho_ = Weight::one();
};

/// Deterministic sample of index pairs: every pair among the first
/// floor(sqrt(budget)) elements, then `budget` pairs from a seeded generator.
std::vector<std::pair<Index, Index>> sample_pairs(const SemigroupModel& model, std::size_t budget,
                                                  Index range_end, std::uint64_t seed = 0x5eed);

/// Pairs (s, t) with w(st) > w(s) w(t) (1 + 1e-12). Empty means pass.
std::vector<std::pair<Index, Index>> check_submultiplicative(const Weight& w,
                                                             const SemigroupModel& model,
                                                             std::size_t sample_budget);

struct SpectrumCheck {
    bool pass = true;
    std::optional<Index> witness;
    double worst_ratio = 0.0; ///< max |psi(s)| / w(s) over the sample
};

/// Membership of psi in the w-dominated spectrum, tested on the first
/// `sample_budget` elements of the enumeration.
SpectrumCheck check_in_spectrum(const Semicharacter& psi, const Weight& w,
                                const SemigroupModel& model, std::size_t sample_budget);

} // namespace tauber
