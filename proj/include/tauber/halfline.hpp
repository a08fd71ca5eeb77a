#pragma once

// Quadrature on the orthant R_+^d (d <= 3): truncated convolution over [0, x],
// box-truncated Laplace transforms, the weight-region test for exponential
// semicharacters, and the continuous tauberian experiment.

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "tauber/verify.hpp"

namespace tauber {

using Point = std::vector<double>;

/// Samples on the lattice h Z^d intersected with [0, X_1] x ... x [0, X_d].
/// The last axis varies fastest in the flat layout.
class GridFunction {
public:
    GridFunction(std::vector<double> extent, double h, std::vector<Complex> values);

    static GridFunction from_function(std::vector<double> extent, double h,
                                      const std::function<Complex(std::span<const double>)>& fn);

    std::size_t dim() const noexcept { return extent_.size(); }
    const std::vector<double>& extent() const noexcept { return extent_; }
    double step() const noexcept { return h_; }
    /// Lattice points per axis: floor(X_i / h) + 1.
    const std::vector<std::size_t>& shape() const noexcept { return shape_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const Complex> values() const noexcept { return values_; }
    Complex operator[](std::size_t flat) const { return values_[flat]; }

    Point point(std::size_t flat) const;
    std::size_t flat_index(std::span<const std::size_t> multi) const;
    bool same_grid(const GridFunction& other) const;

    /// (x, f(x)) -> new value on the same lattice.
    GridFunction mapped(const std::function<Complex(std::span<const double>, Complex)>& fn) const;

    /// "# d=.. X=.. h=.." comment, a column header, then one row per point.
    void write_csv(std::ostream& out) const;

private:
    std::vector<double> extent_;
    double h_;
    std::vector<std::size_t> shape_;
    std::vector<Complex> values_;
};

/// Lattice size for an extent and step: prod (floor(X_i / h) + 1).
std::vector<std::size_t> lattice_shape(std::span<const double> extent, double h);

/// h^d sum_{0 <= j <= m} f(m - j) k(j) at every lattice point m h.
GridFunction truncated_convolution(const GridFunction& f, const GridFunction& k);

/// Box quadrature of int k(x) e^{-x . z} dx with product trapezoid weights.
/// tail_radius = |Q_h - Q_2h| (step-doubling estimate) + domain_tail_bound.
SeriesValue laplace_halfline(const GridFunction& k, std::span<const Complex> z, double domain_tail_bound);

/// Quadrature L^1 norm with the weights used by laplace_halfline.
double l1_norm_halfline(const GridFunction& k);

/// Bound on int over R_+^d minus [0, X] of A e^{-a |x|_1} e^{-x . Re z} dx;
/// requires a + Re z_i > 0 on every axis.
double exponential_tail_bound(double amplitude, double rate, std::span<const double> re_z,
                              std::span<const double> extent);

/// Positive weight on R_+^d given through its logarithm.
class ContinuousWeight {
public:
    static ContinuousWeight one();
    /// w(x) = exp(c . x)
    static ContinuousWeight exponential(std::vector<double> c);
    static ContinuousWeight custom(std::function<double(std::span<const double>)> log_w, std::string name);

    double log_eval(std::span<const double> x) const { return log_w_(x); }
    double eval(std::span<const double> x) const;
    const std::string& name() const noexcept { return name_; }

private:
    std::function<double(std::span<const double>)> log_w_;
    std::string name_;
};

struct RegionCheck {
    bool pass = true;
    std::optional<Point> witness; ///< first lattice point violating the inequality
    double worst_margin = 0.0;     ///< min of x . Re z + log w(x)
};

/// x . Re z >= -log w(x) at every lattice point of [0, X] with step h, i.e.
/// x -> e^{-x . z} is dominated by w on the samples.
RegionCheck weight_region_check(const ContinuousWeight& w, std::span<const Complex> z,
                                std::span<const double> extent, double h);

/// Sampled (heuristic) check that the transform of k avoids -1.
struct SampledCondition {
    std::size_t sampled = 0;
    std::size_t in_region = 0;
    double min_distance = 0.0;   ///< min |L(z) + 1| over in-region samples
    double max_error = 0.0;      ///< largest quadrature-plus-tail radius seen
    std::optional<std::vector<Complex>> witness; ///< sample where |L + 1| <= radius
    bool holds = false;          ///< in_region > 0 and every sample clears its radius
};

struct Corollary1Report {
    SampledCondition condition;
    DecayReport g_profile; ///< (f + k*f) w outside boxes [0, L]^d
    DecayReport f_profile; ///< f w
    bool consistent = true;
    std::string consistency_note;
    std::optional<GridFunction> g_weighted;
};

/// Continuous analog of tauberian_experiment. Levels are box sizes L, below
/// the lattice's largest coordinate. The transform is sampled at each z in
/// `z_samples` that passes the weight-region check.
Corollary1Report corollary1_experiment(const GridFunction& f, const GridFunction& k, const ContinuousWeight& w,
                                       std::span<const std::vector<Complex>> z_samples,
                                       std::span<const double> levels, double epsilon = kDefaultEpsilon,
                                       const std::function<double(std::span<const Complex>)>& tail_bound = {});

} // namespace tauber
