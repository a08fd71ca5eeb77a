#include <algorithm>

#include "tauber/scenario.hpp"

namespace tauber {

const std::vector<BuiltinScenario>& builtin_scenarios() {
    static const std::vector<BuiltinScenario> catalog{
        {"example1", "counterexample on N*: f = 1 + 1*q has no limit although f + f*K tends to 1",
         R"(name = example1
experiment = example1
[domain]
horizon = 5000
[tolerances]
neumann_tol = 5e-11
[example1]
primes_up_to = 31
)"},
        {"tauber-zplus-roundtrip", "Wiener-type theorem on Z_+: recover f = 1/(n+1) from f + K*f by a Neumann series",
         R"(name = tauber-zplus-roundtrip
experiment = tauber
[domain]
family = zplus
horizon = 10000
[weight]
type = one
[kernel]
type = random
seed = 20240611
support = 50
norm = 0.4
[f]
type = reciprocal
[levels]
fractions = 0.25, 0.5, 0.75
[expect]
condition = certified
f_verdict = tends-to-0
g_verdict = tends-to-0
[roundtrip]
enabled = true
compare_up_to = 8000
tol = 1e-8
)"},
        {"abelian-zplus", "Abelian direction on Z_+: f -> 0 forces f*k -> 0",
         R"(name = abelian-zplus
experiment = abelian
[domain]
family = zplus
horizon = 3000
[kernel]
type = geometric
scale = 0.5
ratio = 0.5
start = 0
[f]
type = reciprocal
[levels]
values = 100, 500, 2500
)"},
        {"abelian-nstar", "Abelian direction on N* with a Dirichlet-convolution kernel",
         R"(name = abelian-nstar
experiment = abelian
[domain]
family = nstar
horizon = 3000
[kernel]
type = terms
terms = 1:0.5, 2:0.25, 3:0.125
[f]
type = reciprocal
[levels]
values = 100, 500, 2500
)"},
        {"corollary1-exp-kernel", "half-line R_+: f = k = e^{-x}, convolution quadrature and the sampled Laplace condition",
         R"(name = corollary1-exp-kernel
experiment = corollary1
[halfline]
dim = 1
extent = 30
step = 0.02
f_rate = 1
k_scale = 1
k_rate = 1
quadrature_check = true
[levels]
values = 5, 10, 20
[expect]
f_verdict = tends-to-0
g_verdict = tends-to-0
)"},
        {"corollary1-2d", "quadrant R_+^2 with an exponential weight: f = e^{-|x|_1}, k = 0.5 e^{-2|x|_1}",
         R"(name = corollary1-2d
experiment = corollary1
[halfline]
dim = 2
extent = 10
step = 0.1
f_rate = 1
k_scale = 0.5
k_rate = 2
weight_c = 0.1
[levels]
values = 2, 5, 9
[expect]
f_verdict = tends-to-0
g_verdict = tends-to-0
)"},
        {"corollary2-nstar", "N*: k*f -> 0 with Dirichlet transform of k avoiding 0 forces f -> 0",
         R"(name = corollary2-nstar
experiment = corollary2
[domain]
family = nstar
horizon = 3000
[kernel]
type = terms
terms = 1:1, 2:0.5
[f]
type = reciprocal
[levels]
values = 500, 1000, 2400
[expect]
condition = certified
f_verdict = tends-to-0
g_verdict = tends-to-0
)"},
        {"corollary3-disk", "Z_+ with w(n) = e^{0.02 n}: k = 1 + 0.5z + 0.7z^2 has no zero on the weighted disk",
         R"(name = corollary3-disk
experiment = corollary3
[domain]
family = zplus
horizon = 2000
[weight]
type = exponential
c = 0.02
[kernel]
type = terms
terms = 0:1, 1:0.5, 2:0.7
[f]
type = exp
rate = 0.05
[levels]
fractions = 0.25, 0.5, 0.75
[expect]
condition = certified
f_verdict = tends-to-0
g_verdict = tends-to-0
)"},
        {"dirichlet-avoid-zero", "N*: 1 + sum 2^{-n-1} n^{-s} stays at least 1/2 from 0 on Re s >= 0",
         R"(name = dirichlet-avoid-zero
experiment = dirichlet-check
[domain]
family = nstar
horizon = 5000
[kernel]
type = example1
unit = 1
[dirichlet]
target = 0
sigma_max = 10
t_max = 50
grid_step = 0.05
[expect]
condition = certified
min_modulus_at_least = 0.5
)"},
        {"mercer-roundtrip", "Mercer means with alpha = 1/2: inversion round trip on x_n = 1 + (-1)^n / sqrt(n)",
         R"(name = mercer-roundtrip
experiment = mercer
[mercer]
alpha = 0.5
length = 100000
sequence = alternating
[tolerances]
roundtrip_tol = 1e-12
)"},
        {"mercer-harmonic", "Mercer inversion of y_n = 1 + 1/n with alpha = 1/2 tends to 1",
         R"(name = mercer-harmonic
experiment = mercer
[mercer]
alpha = 0.5
length = 100000
sequence = harmonic
converge_from = 10000
converge_tol = 0.05
[tolerances]
roundtrip_tol = 1e-12
)"},
        {"norm-series-nstar", "N*: sums of 1/p and 1/n up to B = 10^6",
         R"(name = norm-series-nstar
experiment = norm-series
[domain]
family = nstar
[norm_series]
bounds = 100, 1000, 10000, 100000
max_bound = 1000000
[expect]
prime_sum_min = 2.86
prime_sum_max = 2.91
element_minus_log_min = 0.57
element_minus_log_max = 0.58
co_divergence = true
)"},
        {"norm-series-finite", "generators of norm 2 and 3: convergent element sum against the Euler product 3",
         R"(name = norm-series-finite
experiment = norm-series
[domain]
family = free
norms = 2, 3
[norm_series]
bounds = 10, 100, 1000, 10000
euler_degree = 40
[tolerances]
euler_tol = 1e-6
[expect]
co_divergence = false
)"},
    };
    return catalog;
}

const BuiltinScenario& find_builtin(const std::string& name) {
    const auto& all = builtin_scenarios();
    const auto it = std::find_if(all.begin(), all.end(), [&](const BuiltinScenario& b) { return b.name == name; });
    if (it == all.end()) throw DomainError("no built-in scenario named '" + name + "'");
    return *it;
}

} // namespace tauber
