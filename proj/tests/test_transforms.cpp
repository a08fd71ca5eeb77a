#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "tauber/transforms.hpp"

using namespace tauber;

namespace {

Complex example1_q(Index n) { return std::ldexp(1.0, -static_cast<int>(std::min<Index>(n + 1, 2000))); }

} // namespace

TEST_CASE("laplace examples") {
    const auto ns = SemigroupModel::nstar();
    const auto e = AlgebraElement::delta(ns, 1, 30);
    const auto psi = Semicharacter::dirichlet({0.4, 3.0});
    const auto v = laplace(e, psi, TailDescriptor::finite());
    CHECK(v.value == Complex(1.0));
    CHECK(v.tail_radius == 0.0);

    const Index B = 60;
    const auto q = AlgebraElement::from_function(ns, B, example1_q);
    const auto trivial = Semicharacter::prime_point(Weight::one(), {});
    const auto lq = laplace(q, trivial, TailDescriptor::geometric(0.5, 0.5));
    CHECK(lq.tail_radius == std::ldexp(1.0, -static_cast<int>(B + 1)));
    CHECK(std::abs(lq.value - 0.5) <= lq.tail_radius);

    CHECK_THROWS_AS(laplace(q, trivial, TailDescriptor::finite()), DomainError);
    // |psi| > w invalidates a tail bound
    CHECK_THROWS_AS(laplace(q, Semicharacter::prime_point(Weight::one(), {{2, 1.5}}), TailDescriptor::geometric(0.5, 0.5)),
                    DomainError);
}

TEST_CASE("laplace conjugates, evaluate_at does not") {
    const auto zp = SemigroupModel::zplus();
    const auto k = AlgebraElement::delta(zp, 1, 5);
    const Complex z{0.3, 0.4};
    const auto psi = Semicharacter::power_point({z});
    CHECK(laplace(k, psi, TailDescriptor::finite()).value == std::conj(z));
    CHECK(evaluate_at(k, psi, TailDescriptor::finite()).value == z);
    CHECK(laplace(k, psi.conjugate(), TailDescriptor::finite()).value == z);
}

TEST_CASE("power_series examples") {
    const auto zp = SemigroupModel::zplus();
    const auto d0 = AlgebraElement::delta(zp, 0, 10);
    for (const Complex z : {Complex(0.0), Complex(2.0, -1.0), Complex(-0.3)})
        CHECK(power_series(d0, z, TailDescriptor::finite()).value == Complex(1.0));

    const Index B = 40;
    const auto half = AlgebraElement::from_function(zp, B, [](Index n) { return std::ldexp(1.0, -static_cast<int>(n)); });
    const auto v = power_series(half, 1.0, TailDescriptor::geometric(0.5, 1.0));
    CHECK(v.tail_radius == std::ldexp(1.0, -static_cast<int>(B)));
    CHECK(std::abs(v.value - 2.0) <= v.tail_radius);

    const auto root = AlgebraElement::delta(zp, 0, 10) + AlgebraElement::delta(zp, 1, 10);
    CHECK(power_series(root, -1.0, TailDescriptor::finite()).value == Complex(0.0));

    CHECK_THROWS_AS(power_series(half, 1.5, TailDescriptor::geometric(0.5, 1.0)), DomainError);
    CHECK_THROWS_AS(power_series(AlgebraElement::delta(SemigroupModel::nstar(), 1, 3), 0.5, TailDescriptor::finite()),
                    DomainError);
}

TEST_CASE("power_series agrees with laplace at the conjugate point") {
    const auto zp = SemigroupModel::zplus();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto k = AlgebraElement::from_function(zp, 80, [&](Index) { return Complex(u(rng), u(rng)); }, false);
    for (int i = 0; i < 50; ++i) {
        const Complex z = std::polar(std::abs(u(rng)), 3.0 * u(rng));
        const auto a = power_series(k, z, TailDescriptor::finite()).value;
        const auto b = laplace(k, Semicharacter::power_point({std::conj(z)}), TailDescriptor::finite()).value;
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("dirichlet_series examples") {
    const auto ns = SemigroupModel::nstar();
    const auto d1 = AlgebraElement::delta(ns, 1, 10);
    for (const Complex s : {Complex(0.0), Complex(1.0, 5.0), Complex(3.0, -2.0)})
        CHECK(dirichlet_series(d1, Weight::one(), s, TailDescriptor::finite()).value == Complex(1.0));

    const Index B = 200;
    const auto q = AlgebraElement::from_function(ns, B, example1_q);
    const auto v = dirichlet_series(q, Weight::one(), 0.0, TailDescriptor::geometric(0.5, 0.5));
    CHECK(std::abs(v.value - 0.5) <= v.tail_radius + 1e-16);

    CHECK_THROWS_AS(dirichlet_series(q, Weight::one(), {-0.1, 0.0}, TailDescriptor::geometric(0.5, 0.5)), DomainError);
}

TEST_CASE("dirichlet_series: Basel sum with an integral tail bound") {
    const auto ns = SemigroupModel::nstar();
    const Index B = 1'000'000;
    const auto k = AlgebraElement::from_function(ns, B, [](Index n) { return 1.0 / (double(n) * double(n)); });
    // sum_{n > B} n^-2 < integral_B^inf x^-2 dx = 1/B
    const auto v = dirichlet_series(k, Weight::one(), 0.0, TailDescriptor::explicit_bound(1.0 / B));
    CHECK(v.tail_radius == doctest::Approx(1e-6));
    CHECK(std::abs(v.value - std::numbers::pi * std::numbers::pi / 6.0) <= 1e-6);
}

TEST_CASE("spectral_radius_bound") {
    const auto r1 = spectral_radius_bound(Weight::one(), 50);
    CHECK(r1.value == 1.0);
    CHECK_FALSE(r1.still_decreasing);

    const auto re = spectral_radius_bound(Weight::exponential({0.3}), 50);
    CHECK(re.value == std::exp(0.3));
    CHECK_FALSE(re.still_decreasing);

    std::vector<double> t(201);
    for (std::size_t n = 0; n <= 200; ++n) t[n] = n + 1.0;
    const auto rt = spectral_radius_bound(Weight::tabulated(t, 0), 200);
    CHECK(rt.value == doctest::Approx(std::pow(201.0, 1.0 / 200.0)));
    CHECK(rt.still_decreasing);
    CHECK(rt.value > 1.0);

    CHECK_THROWS_AS(spectral_radius_bound(Weight::one(), 0), DomainError);
}

TEST_CASE("tail descriptors") {
    const auto g = TailDescriptor::geometric(0.5, 1.0);
    for (Index b = 1; b < 60; ++b) CHECK(g.bound_beyond(b + 1) <= g.bound_beyond(b));
    CHECK_THROWS_AS(TailDescriptor::geometric(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(TailDescriptor::explicit_bound(-1.0), DomainError);
}

TEST_CASE("transform is multiplicative on finitely supported elements") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto ns = SemigroupModel::nstar();
    const Index B = 2000;
    for (int trial = 0; trial < 40; ++trial) {
        std::map<Index, Complex> ma, mb;
        for (int i = 0; i < 8; ++i) ma[1 + static_cast<Index>(rng() % 40)] = {u(rng), u(rng)};
        for (int i = 0; i < 8; ++i) mb[1 + static_cast<Index>(rng() % 40)] = {u(rng), u(rng)};
        const auto a = AlgebraElement::from_map(ns, B, ma);
        const auto b = AlgebraElement::from_map(ns, B, mb);
        const auto ab = convolve(a, b);
        const auto psi = Semicharacter::dirichlet({std::abs(u(rng)), 20.0 * u(rng)}, Weight::power(0.0));
        const auto lab = laplace(ab, psi, TailDescriptor::finite()).value;
        const auto la = laplace(a, psi, TailDescriptor::finite()).value;
        const auto lb = laplace(b, psi, TailDescriptor::finite()).value;
        CHECK(std::abs(lab - la * lb) <= 1e-10);
    }
}

TEST_CASE("DirichletPolynomial") {
    const auto ns = SemigroupModel::nstar();
    const Index B = 500;
    const auto q = AlgebraElement::from_function(ns, B, example1_q).with_unit_scalar(1.0);
    const auto tail = TailDescriptor::geometric(0.5, 0.5);
    const DirichletPolynomial poly(q, Weight::one(), tail, 1e-16);
    CHECK(poly.leading() == Complex(1.25));
    CHECK(poly.term_count() < 70);
    for (const Complex s : {Complex(0.0), Complex(0.5, 7.0), Complex(2.0, -30.0)}) {
        const auto a = poly(s);
        const auto b = dirichlet_series(q, Weight::one(), s, tail);
        CHECK(std::abs(a.value - b.value) <= a.tail_radius + 1e-15);
    }
    CHECK(poly.mass_beyond_leading(0.0) == doctest::Approx(0.25).epsilon(1e-12));
    const auto pp = DirichletPolynomial(AlgebraElement::delta(ns, 1, 20) + AlgebraElement::delta(ns, 8, 20, 0.5), Weight::one(),
                                        TailDescriptor::finite());
    CHECK(pp.single_prime_support() == std::int64_t{2});
    CHECK(pp.derivative_bound() == doctest::Approx(0.5 * std::log(8.0)));
}
