#include <cmath>
#include <sstream>

#include "doctest.h"
#include "tauber/error.hpp"
#include "tauber/norm_series.hpp"

using namespace tauber;

namespace {

bool naive_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

TEST_CASE("prime_norm_partial_sum examples") {
    const auto ns = SemigroupModel::nstar();
    CHECK(prime_norm_partial_sum(ns, 1.0) == 0.0);
    long double oracle = 0.0L;
    int count = 0;
    for (int n = 2; n <= 100; ++n)
        if (naive_prime(n)) {
            oracle += 1.0L / n;
            ++count;
        }
    CHECK(count == 25);
    CHECK(prime_norm_partial_sum(ns, 100.0) == doctest::Approx(static_cast<double>(oracle)).epsilon(1e-15));
    CHECK(prime_norm_partial_sum(ns, 100.0) == doctest::Approx(1.802817).epsilon(1e-6));

    const auto fa = SemigroupModel::free_abelian({2.0, 3.0});
    CHECK(prime_norm_partial_sum(fa, 10.0) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
    CHECK(prime_norm_partial_sum(fa, 1.5) == 0.0);
    CHECK_THROWS_AS(prime_norm_partial_sum(SemigroupModel::zplus(), 10.0), DomainError);
}

TEST_CASE("semigroup_norm_partial_sum examples") {
    const auto ns = SemigroupModel::nstar();
    CHECK(semigroup_norm_partial_sum(ns, 10.0) == doctest::Approx(2.9289682539).epsilon(1e-10));
    CHECK(semigroup_norm_partial_sum(SemigroupModel::free_abelian({2.0}), 16.0) == 1.9375);
    CHECK(semigroup_norm_partial_sum(SemigroupModel::free_abelian({}), 1000.0) == 1.0);

    // {2, 3}: 3-smooth numbers up to 100, checked by trial division
    const auto fa = SemigroupModel::free_abelian({2.0, 3.0});
    double oracle = 0.0;
    for (int n = 100; n >= 1; --n) {
        int m = n;
        while (m % 2 == 0) m /= 2;
        while (m % 3 == 0) m /= 3;
        if (m == 1) oracle += 1.0 / n;
    }
    CHECK(semigroup_norm_partial_sum(fa, 100.0) == doctest::Approx(oracle).epsilon(1e-15));

    CHECK_THROWS_AS(semigroup_norm_partial_sum(fa, 1e30, 1000), CapError);
    CHECK_THROWS_AS(semigroup_norm_partial_sum(ns, 1e6, 1000), CapError);
}

TEST_CASE("partial sums are non-decreasing and dominate") {
    for (const auto& model : {SemigroupModel::nstar(), SemigroupModel::free_abelian({2.0, 3.0, 7.5}),
                              SemigroupModel::free_abelian({1.5, 1.5})}) {
        double prev_p = -1.0, prev_e = -1.0;
        for (double b = 1.0; b < 400.0; b *= 1.3) {
            const double p = prime_norm_partial_sum(model, b);
            const double e = semigroup_norm_partial_sum(model, b);
            CHECK(p >= prev_p);
            CHECK(e >= prev_e);
            CHECK(e >= p);
            if (b >= 2.0) CHECK(e >= 1.0 + p - 1e-15);
            prev_p = p;
            prev_e = e;
        }
    }
}

TEST_CASE("euler product examples") {
    CHECK(euler_product(std::vector<double>{}, 10).value == 1.0);
    CHECK(euler_product(std::vector<double>{2.0, 3.0}, 10).value == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(euler_product(std::vector<double>{2.0}, 10).value == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(euler_product(std::vector<double>{1.0}, 10), DomainError);
    CHECK_THROWS_AS(euler_product(std::vector<double>{0.5, 2.0}, 10), DomainError);
    CHECK_THROWS_AS(euler_product(SemigroupModel::nstar(), 10), DomainError);
}

TEST_CASE("euler product against explicit enumeration") {
    const auto fa = SemigroupModel::free_abelian({2.0, 3.0});
    const auto e = euler_product(fa, 40);
    const double direct = semigroup_degree_partial_sum(fa, 40);
    CHECK(std::abs(direct - e.degree_bounded) <= 1e-13);
    CHECK(std::abs(direct - e.value) <= e.truncation_bound);
    CHECK(std::abs(direct - 3.0) <= 1e-6);

    const auto fb = SemigroupModel::free_abelian({2.0, 5.0, 1.25});
    const auto eb = euler_product(fb, 60);
    const double db = semigroup_degree_partial_sum(fb, 60);
    CHECK(std::abs(db - eb.degree_bounded) <= 1e-12 * eb.value);
    CHECK(eb.value - db <= eb.truncation_bound * (1.0 + 1e-9));
    CHECK_THROWS_AS(semigroup_degree_partial_sum(fb, 1000, 1000), CapError);
}

TEST_CASE("divergence diagnostic") {
    const auto ns = SemigroupModel::nstar();
    const std::vector<double> bounds{1e2, 1e3, 1e4, 1e5};
    const auto r = divergence_diagnostic(ns, bounds);
    REQUIRE(r.prime_sums.size() == 4);
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        CHECK(r.prime_sums[i] == doctest::Approx(prime_norm_partial_sum(ns, bounds[i])).epsilon(1e-14));
        CHECK(r.element_sums[i] == doctest::Approx(semigroup_norm_partial_sum(ns, bounds[i])).epsilon(1e-14));
    }
    CHECK(r.element_slope == doctest::Approx(1.0).epsilon(0.01));
    CHECK(r.prime_slope == doctest::Approx(1.0).epsilon(0.1));
    CHECK(r.co_divergence);
    CHECK_FALSE(r.euler_product_value.has_value());

    const auto fa = SemigroupModel::free_abelian({2.0, 3.0});
    const auto rf = divergence_diagnostic(fa, std::vector<double>{10.0, 100.0, 1000.0});
    CHECK_FALSE(rf.co_divergence);
    REQUIRE(rf.euler_product_value.has_value());
    CHECK(*rf.euler_product_value == doctest::Approx(3.0));
    CHECK(rf.element_sums.back() <= 3.0);

    std::ostringstream os;
    write_csv(rf, os);
    CHECK(os.str().rfind("B,primeSum,elementSum,lnB,lnlnB\n10,0.83333333333333326,", 0) == 0);

    CHECK_THROWS_AS(divergence_diagnostic(ns, std::vector<double>{10.0}), DomainError);
    CHECK_THROWS_AS(divergence_diagnostic(ns, std::vector<double>{10.0, 10.0}), DomainError);
    CHECK_THROWS_AS(divergence_diagnostic(ns, std::vector<double>{1.0, 10.0}), DomainError);
}

TEST_CASE("norm series at one million") {
    const auto ns = SemigroupModel::nstar();
    const double p = prime_norm_partial_sum(ns, 1e6);
    const double h = semigroup_norm_partial_sum(ns, 1e6);
    CHECK(p >= 2.86);
    CHECK(p <= 2.91);
    CHECK(h - std::log(1e6) >= 0.57);
    CHECK(h - std::log(1e6) <= 0.58);
    // oracle: H_n - ln n - 1/(2n) agrees with the Euler-Mascheroni constant to O(n^-2)
    CHECK(h - std::log(1e6) - 0.5e-6 == doctest::Approx(0.57721566490153286).epsilon(1e-12));
}
