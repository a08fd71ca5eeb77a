#include <cmath>
#include <random>

#include "doctest.h"
#include "tauber/algebra.hpp"

using namespace tauber;

namespace {

Complex example1_q(Index n) { return std::ldexp(1.0, -static_cast<int>(std::min<Index>(n + 1, 2000))); }

// Independent oracle for Dirichlet convolution: divisor enumeration.
Complex dirichlet_oracle(const AlgebraElement& a, const AlgebraElement& b, Index t) {
    Complex s = 0.0;
    for (Index d = 1; d <= t; ++d)
        if (t % d == 0) s += a.coefficient(d) * b.coefficient(t / d);
    return s;
}

} // namespace

TEST_CASE("convolve: units of the two algebras") {
    const auto ns = SemigroupModel::nstar();
    const auto k = AlgebraElement::from_function(ns, 60, [](Index n) { return Complex(1.0 / n, n % 3); });
    const auto delta1 = AlgebraElement::delta(ns, 1, 60);
    const auto r = convolve(delta1, k);
    for (Index n = 1; n <= 60; ++n) CHECK(r.coefficient(n) == k.coefficient(n));

    const auto zp = SemigroupModel::zplus();
    const auto d3 = convolve(AlgebraElement::delta(zp, 1, 10), AlgebraElement::delta(zp, 2, 10));
    CHECK(d3.coefficients().size() == 1);
    CHECK(d3.coefficient(3) == Complex(1.0));
}

TEST_CASE("convolve: (1 * q)(6) = 57/128") {
    const auto ns = SemigroupModel::nstar();
    const auto one = AlgebraElement::from_function(ns, 100, [](Index) { return 1.0; });
    const auto q = AlgebraElement::from_function(ns, 100, example1_q);
    const Complex oracle = dirichlet_oracle(one, q, 6);
    CHECK(oracle == Complex(57.0 / 128.0));
    CHECK(convolve(one, q).coefficient(6) == oracle);
    for (Index t = 1; t <= 100; ++t) CHECK(std::abs(convolve(q, one).coefficient(t) - dirichlet_oracle(one, q, t)) < 1e-15);
}

TEST_CASE("convolve: unitization rule") {
    const auto zp = SemigroupModel::zplus();
    const auto a = AlgebraElement::delta(zp, 2, 20, 3.0).with_unit_scalar(2.0);
    const auto b = AlgebraElement::delta(zp, 5, 20, -1.0).with_unit_scalar(0.5);
    const auto c = convolve(a, b);
    CHECK(c.unit_scalar() == Complex(1.0));
    CHECK(c.coefficient(2) == Complex(1.5));  // lambda_b a
    CHECK(c.coefficient(5) == Complex(-2.0)); // lambda_a b
    CHECK(c.coefficient(7) == Complex(-3.0)); // a * b
}

TEST_CASE("convolve: model mismatch and horizon errors") {
    const auto a = AlgebraElement::delta(SemigroupModel::zplus(), 1, 10);
    const auto b = AlgebraElement::delta(SemigroupModel::nstar(), 1, 10);
    CHECK_THROWS_AS(convolve(a, b), DomainError);
    CHECK_THROWS_AS(a.coefficient(11), HorizonError);
    CHECK(convolve(a, AlgebraElement::delta(SemigroupModel::zplus(), 1, 5)).horizon() == 5);
}

TEST_CASE("norm_w examples") {
    const auto ns = SemigroupModel::nstar();
    CHECK(norm_w(AlgebraElement::delta(ns, 1, 10), Weight::one()) == 1.0);
    const auto q = AlgebraElement::from_function(ns, 60, example1_q);
    CHECK(std::abs(norm_w(q, Weight::one()) - 0.5) <= std::ldexp(1.0, -61));
    CHECK(std::abs(norm_w(q.with_unit_scalar(1.0), Weight::one()) - 1.5) <= std::ldexp(1.0, -61));
}

TEST_CASE("neumann_resolve examples") {
    const auto ns = SemigroupModel::nstar();
    const auto zero = AlgebraElement(ns, 50);
    const auto r0 = neumann_resolve(zero, Weight::one(), 1e-12);
    CHECK(r0.inverse_part.coefficients().empty());

    for (const Complex c : {Complex(0.3), Complex(-0.6), Complex(0.2, 0.5)}) {
        const auto q = AlgebraElement::delta(ns, 1, 50, c);
        const auto r = neumann_resolve(q, Weight::one(), 1e-13);
        CHECK(std::abs(r.inverse_part.coefficient(1) - (-c / (1.0 + c))) <= 1e-13);
        CHECK(r.residual <= 2e-13);
    }

    CHECK_THROWS_AS(neumann_resolve(AlgebraElement::delta(ns, 2, 50, 1.0), Weight::one(), 1e-10),
                    NeumannInapplicable);
    try {
        neumann_resolve(AlgebraElement::delta(ns, 2, 50, 1.25), Weight::one(), 1e-10);
    } catch (const NeumannInapplicable& e) {
        CHECK(e.norm() == 1.25);
    }
}

TEST_CASE("neumann_resolve on the counterexample kernel") {
    const auto ns = SemigroupModel::nstar();
    const Index B = 5000;
    const auto q = AlgebraElement::from_function(ns, B, example1_q);
    const double q_tail = std::ldexp(1.0, -static_cast<int>(B + 1));
    const auto r = neumann_resolve(q, Weight::one(), 5e-11, 200, q_tail);
    const double norm_k = norm_w(r.inverse_part, Weight::one());
    CHECK(norm_k <= r.q_norm / (1.0 - r.q_norm));
    CHECK(norm_k <= 1.0);
    CHECK(r.residual <= 1e-10);
    // Direct verification of K + q + K*q = 0 within the horizon.
    const auto eq = r.inverse_part + q + convolve(r.inverse_part, q);
    CHECK(norm_w(eq, Weight::one()) <= 1e-10);
    CHECK(r.certified_tail >= 0.0);
    CHECK(r.certified_tail <= 1e-3);
}

TEST_CASE("apply_unitized examples") {
    const auto ns = SemigroupModel::nstar();
    const Index B = 200;
    const auto one = BoundedFunction::from_function(ns, B, [](Index) { return 1.0; });
    const auto id = apply_unitized(AlgebraElement::unit(ns, B), one);
    for (Index t = 1; t <= B; ++t) CHECK(id.at(t) == Complex(1.0));

    const auto shifted = apply_unitized(AlgebraElement::delta(ns, 2, B), one);
    for (Index t = 1; t <= B; ++t) CHECK(shifted.at(t) == Complex(t % 2 == 0 ? 1.0 : 0.0));
    CHECK_THROWS_AS(shifted.at(B + 1), HorizonError);
}

TEST_CASE("apply_unitized is associative with convolve") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const auto& model : {SemigroupModel::zplus(), SemigroupModel::nstar()}) {
        const Index B = 300;
        const Index first = model.first_index();
        auto random_z = [&] {
            std::map<Index, Complex> m;
            for (int k = 0; k < 6; ++k) m[first + static_cast<Index>(rng() % 40)] = {u(rng), u(rng)};
            return AlgebraElement::from_map(model, B, m).with_unit_scalar(u(rng));
        };
        const auto z1 = random_z(), z2 = random_z();
        const auto f = BoundedFunction::from_function(model, B, [&](Index) { return Complex(u(rng), u(rng)); });
        const auto lhs = apply_unitized(z1, apply_unitized(z2, f));
        const auto rhs = apply_unitized(convolve(z1, z2), f);
        for (Index t = first; t <= B; ++t) CHECK(std::abs(lhs.at(t) - rhs.at(t)) <= 1e-12);
    }
}

TEST_CASE("pointwise_weighted_product examples") {
    const auto ns = SemigroupModel::nstar();
    const auto zp = SemigroupModel::zplus();
    const auto zero = pointwise_weighted_product(BoundedFunction::from_function(zp, 10, [](Index) { return 0.0; }), Weight::exponential({1.0}));
    CHECK(zero.sup_norm() == 0.0);
    const auto f = BoundedFunction::from_function(zp, 10, [](Index n) { return 1.0 / (n + 1.0); });
    const auto same = pointwise_weighted_product(f, Weight::one());
    for (Index n = 0; n <= 10; ++n) CHECK(same.at(n) == f.at(n));
    const auto g = pointwise_weighted_product(BoundedFunction::from_function(ns, 10, [](Index) { return 1.0; }), Weight::power(1.0));
    CHECK(g.at(4) == Complex(4.0));
}

TEST_CASE("BoundedFunction enforces its declared bound") {
    const auto zp = SemigroupModel::zplus();
    CHECK_THROWS_AS(BoundedFunction(zp, 2, {1.0, 2.0, 3.0}, 2.5), DomainError);
    CHECK_THROWS_AS(BoundedFunction(zp, 2, {1.0, 2.0}), DomainError);
    CHECK(BoundedFunction(zp, 2, {1.0, -2.0, 0.5}).declared_bound() == 2.0);
}

TEST_CASE("algebra on a free abelian model") {
    const auto fa = SemigroupModel::free_abelian({2.0, 3.0}, 30);
    const auto a = AlgebraElement::from_function(fa, 30, [](Index i) { return 1.0 / (i + 1.0); }, false);
    const auto b = AlgebraElement::from_function(fa, 30, [](Index i) { return i % 2 ? 0.5 : -0.25; }, false);
    const auto ab = convolve(a, b);
    const auto ba = convolve(b, a);
    for (Index t = 0; t <= 30; ++t) CHECK(ab.coefficient(t) == ba.coefficient(t));
    // Oracle: brute force over all pairs with element composition.
    for (Index t = 0; t <= 30; ++t) {
        Complex s = 0.0;
        for (Index i = 0; i <= 30; ++i)
            for (Index j = 0; j <= 30; ++j)
                if (fa.compose(fa.element_at(i), fa.element_at(j)) == fa.element_at(t))
                    s += a.coefficient(i) * b.coefficient(j);
        CHECK(std::abs(ab.coefficient(t) - s) <= 1e-15);
    }
}
