#include <cmath>
#include <sstream>

#include "doctest.h"
#include "tauber/halfline.hpp"

using namespace tauber;

namespace {

double max_error_exp_conv(double h) {
    const auto e = GridFunction::from_function({30.0}, h, [](auto x) { return std::exp(-x[0]); });
    const auto c = truncated_convolution(e, e);
    double err = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double x = c.point(i)[0];
        err = std::max(err, std::abs(c[i] - x * std::exp(-x)));
    }
    return err;
}

} // namespace

TEST_CASE("grid function shape and validation") {
    const auto g = GridFunction::from_function({1.0, 2.0}, 0.25, [](auto x) { return x[0] + 10.0 * x[1]; });
    CHECK(g.shape() == std::vector<std::size_t>{5, 9});
    CHECK(g.size() == 45);
    CHECK(g.point(1) == Point{0.0, 0.25});
    CHECK(g[g.flat_index(std::vector<std::size_t>{2, 3})] == Complex(0.5 + 7.5));
    CHECK(lattice_shape(std::vector<double>{30.0}, 0.01) == std::vector<std::size_t>{3001});
    CHECK_THROWS_AS(GridFunction({1.0}, 0.5, {1.0, 2.0}), DomainError);
    CHECK_THROWS_AS(GridFunction({1.0}, 0.0, {}), DomainError);
    CHECK_THROWS_AS(GridFunction({1.0, 1.0, 1.0, 1.0}, 0.5, std::vector<Complex>(81)), DomainError);
    CHECK_THROWS_AS(GridFunction({1.0}, 0.5, {1.0, NAN, 0.0}), DomainError);

    std::ostringstream os;
    GridFunction({1.0}, 0.5, {1.0, 2.0, Complex(0.0, -1.0)}).write_csv(os);
    CHECK(os.str() == "# d=1 X=1 h=0.5\nx1,re,im\n0,1,0\n0.5,2,0\n1,0,-1\n");
}

TEST_CASE("truncated convolution examples") {
    const double h = 0.05;
    const auto one = GridFunction::from_function({5.0}, h, [](auto) { return 1.0; });
    const auto zero = GridFunction::from_function({5.0}, h, [](auto) { return 0.0; });
    const auto c0 = truncated_convolution(one, zero);
    for (Complex v : c0.values()) CHECK(v == Complex(0.0));

    const auto c = truncated_convolution(one, one);
    double err = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) err = std::max(err, std::abs(c[i] - c.point(i)[0]));
    CHECK(err <= h * (1.0 + 1e-9));

    CHECK(max_error_exp_conv(0.02) <= 0.02 * (1.0 + 1e-9));
    CHECK_THROWS_AS(truncated_convolution(one, GridFunction::from_function({5.0}, 0.1, [](auto) { return 1.0; })),
                    DomainError);
}

TEST_CASE("truncated convolution is first order") {
    const double e1 = max_error_exp_conv(0.02);
    const double e2 = max_error_exp_conv(0.01);
    CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.15));
    CHECK(e2 <= 2.0 * 0.01);
}

TEST_CASE("truncated convolution in two and three dimensions") {
    // separable oracle: (e^{-x1-x2} * e^{-x1-x2})(x) = x1 x2 e^{-x1-x2}
    const double h = 0.05;
    const auto e = GridFunction::from_function({3.0, 3.0}, h, [](auto x) { return std::exp(-x[0] - x[1]); });
    const auto c = truncated_convolution(e, e);
    double err = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto x = c.point(i);
        err = std::max(err, std::abs(c[i] - x[0] * x[1] * std::exp(-x[0] - x[1])));
    }
    CHECK(err <= 3.0 * h);

    const auto one3 = GridFunction::from_function({0.5, 0.5, 0.5}, 0.1, [](auto) { return 1.0; });
    const auto c3 = truncated_convolution(one3, one3);
    // lattice count of [0, m] times h^3
    const auto last = c3[c3.size() - 1];
    CHECK(last.real() == doctest::Approx(6.0 * 6.0 * 6.0 * 1e-3));
}

TEST_CASE("lattice domination with a submultiplicative weight") {
    const double h = 0.05;
    const auto w = ContinuousWeight::exponential({0.3});
    const auto f = GridFunction::from_function({8.0}, h, [](auto x) { return Complex(std::cos(3.0 * x[0]), std::sin(x[0])); });
    const auto k = GridFunction::from_function({8.0}, h, [](auto x) { return std::exp(-x[0]) * std::sin(5.0 * x[0]); });
    const auto lhs = truncated_convolution(f, k);
    const auto fw = f.mapped([&](auto x, Complex v) { return std::abs(v) * w.eval(x); });
    const auto kw = k.mapped([&](auto x, Complex v) { return std::abs(v) * w.eval(x); });
    const auto rhs = truncated_convolution(fw, kw);
    for (std::size_t i = 0; i < lhs.size(); ++i)
        CHECK(std::abs(lhs[i]) * w.eval(lhs.point(i)) <= rhs[i].real() + 10.0 * h);
}

TEST_CASE("laplace_halfline examples") {
    const auto e = GridFunction::from_function({30.0}, 0.01, [](auto x) { return std::exp(-x[0]); });
    const std::vector<Complex> z1{1.0}, z0{0.0};
    const double tail1 = exponential_tail_bound(1.0, 1.0, std::vector<double>{1.0}, e.extent());
    const auto l1 = laplace_halfline(e, z1, tail1);
    CHECK(std::abs(l1.value - 0.5) <= 1e-3);
    CHECK(std::abs(l1.value - 0.5) <= l1.tail_radius + 1e-12);

    const auto l0 = laplace_halfline(e, z0, exponential_tail_bound(1.0, 1.0, std::vector<double>{0.0}, e.extent()));
    CHECK(std::abs(l0.value - 1.0) <= 1e-3);
    CHECK(l0.value.real() == l1_norm_halfline(e));
    CHECK(l0.value.imag() == 0.0);

    // 1 / (1 + z) at a complex point
    const std::vector<Complex> zc{Complex(0.5, 2.0)};
    const auto lc = laplace_halfline(e, zc, 0.0);
    CHECK(std::abs(lc.value - 1.0 / (1.0 + zc[0])) <= 1e-3);

    // two dimensions: product of one-dimensional transforms
    const auto e2 = GridFunction::from_function({20.0, 20.0}, 0.02, [](auto x) { return std::exp(-x[0] - 2.0 * x[1]); });
    const std::vector<Complex> z2{0.5, 1.0};
    const auto l2 = laplace_halfline(e2, z2, 0.0);
    CHECK(std::abs(l2.value - 1.0 / (1.5 * 3.0)) <= 1e-3);

    CHECK_THROWS_AS(laplace_halfline(e, z2, 0.0), DomainError);
}

TEST_CASE("exponential tail bound") {
    // d = 1: int_X^inf e^{-2x} dx = e^{-2X} / 2
    CHECK(exponential_tail_bound(1.0, 1.0, std::vector<double>{1.0}, std::vector<double>{3.0}) ==
          doctest::Approx(std::exp(-6.0) / 2.0));
    CHECK_THROWS_AS(exponential_tail_bound(1.0, 1.0, std::vector<double>{-1.0}, std::vector<double>{3.0}), DomainError);
}

TEST_CASE("weight_region_check examples") {
    const std::vector<double> box{2.0, 2.0};
    const std::vector<Complex> zpos{Complex(0.0, 3.0), Complex(0.5, -1.0)};
    CHECK(weight_region_check(ContinuousWeight::one(), zpos, box, 0.1).pass);

    const auto we = ContinuousWeight::exponential({0.7, 0.2});
    const std::vector<Complex> zb{Complex(-0.7, 1.0), Complex(-0.2, 0.0)};
    const auto rb = weight_region_check(we, zb, box, 0.1);
    CHECK(rb.pass);
    CHECK(rb.worst_margin == doctest::Approx(0.0));

    const std::vector<Complex> zbad{-1.0, 0.0};
    const auto rf = weight_region_check(ContinuousWeight::one(), zbad, box, 0.1);
    CHECK_FALSE(rf.pass);
    REQUIRE(rf.witness.has_value());
    CHECK((*rf.witness)[0] > 0.0);
    CHECK((*rf.witness)[1] == 0.0);
}

TEST_CASE("corollary1 experiment examples") {
    const double h = 0.02;
    const std::vector<double> X{30.0};
    const auto f = GridFunction::from_function(X, h, [](auto x) { return std::exp(-x[0]); });
    const auto k = GridFunction::from_function(X, h, [](auto x) { return 0.5 * std::exp(-2.0 * x[0]); });
    const auto zero = GridFunction::from_function(X, h, [](auto) { return 0.0; });
    std::vector<std::vector<Complex>> zs;
    for (double re : {-0.5, 0.0, 0.5, 2.0})
        for (double im : {-10.0, -1.0, 0.0, 1.0, 10.0}) zs.push_back({Complex(re, im)});
    const std::vector<double> levels{5.0, 10.0, 20.0};

    const auto r0 = corollary1_experiment(f, zero, ContinuousWeight::one(), zs, levels);
    CHECK(r0.g_profile.sup_outside == r0.f_profile.sup_outside);
    CHECK(r0.consistent);

    const auto tail = [&](std::span<const Complex> z) {
        return exponential_tail_bound(0.5, 2.0, std::vector<double>{z[0].real()}, X);
    };
    const auto r = corollary1_experiment(f, k, ContinuousWeight::one(), zs, levels, kDefaultEpsilon, tail);
    CHECK(r.condition.sampled == zs.size());
    CHECK(r.condition.in_region == 15); // Re z >= 0 only
    CHECK(r.condition.holds);
    // |1/2 / (2 + z) + 1| >= 1 - 1/4 on Re z >= 0
    CHECK(r.condition.min_distance >= 0.75 - 1e-3);
    CHECK(r.g_profile.verdict == Verdict::TendsToZero);
    CHECK(r.f_profile.verdict == Verdict::TendsToZero);
    CHECK(r.consistent);

    const std::vector<double> X2{12.0, 12.0};
    const auto f2 = GridFunction::from_function(X2, 0.1, [](auto x) { return std::exp(-x[0] - x[1]); });
    const auto k2 = GridFunction::from_function(X2, 0.1, [](auto x) { return 0.1 * std::exp(-2.0 * (x[0] + x[1])); });
    const std::vector<std::vector<Complex>> zs2{{0.0, 0.0}, {Complex(0.0, 2.0), 1.0}, {-1.0, 0.0}};
    const auto r2 = corollary1_experiment(f2, k2, ContinuousWeight::one(), zs2, std::vector<double>{2.0, 5.0, 9.0});
    CHECK(r2.condition.in_region == 2);
    CHECK(r2.condition.holds);
    for (std::size_t i = 1; i < 3; ++i) CHECK(r2.g_profile.sup_outside[i] <= r2.g_profile.sup_outside[i - 1]);
    CHECK(r2.f_profile.verdict == Verdict::TendsToZero);
    CHECK(r2.g_profile.verdict == Verdict::TendsToZero);
    CHECK(r2.consistent);
}
