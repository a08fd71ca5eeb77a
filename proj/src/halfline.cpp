#include "tauber/halfline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "tauber/io.hpp"

namespace tauber {

std::vector<std::size_t> lattice_shape(std::span<const double> extent, double h) {
    if (extent.empty() || extent.size() > 3) throw DomainError("grid dimension must be 1, 2 or 3");
    if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("grid step must be positive");
    std::vector<std::size_t> shape;
    for (double x : extent) {
        if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("grid extent must be positive");
        // tolerate X / h landing a rounding error below an integer
        shape.push_back(static_cast<std::size_t>(std::floor(x / h * (1.0 + 1e-12))) + 1);
    }
    return shape;
}

GridFunction::GridFunction(std::vector<double> extent, double h, std::vector<Complex> values)
    : extent_(std::move(extent)), h_(h), values_(std::move(values)) {
    shape_ = lattice_shape(extent_, h_);
    std::size_t n = 1;
    for (std::size_t s : shape_) n *= s;
    if (values_.size() != n)
        throw DomainError("GridFunction: expected " + std::to_string(n) + " values, got " +
                          std::to_string(values_.size()));
    for (const Complex& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("GridFunction: values must be finite");
}

GridFunction GridFunction::from_function(std::vector<double> extent, double h,
                                         const std::function<Complex(std::span<const double>)>& fn) {
    const auto shape = lattice_shape(extent, h);
    std::size_t n = 1;
    for (std::size_t s : shape) n *= s;
    std::vector<Complex> values(n);
    Point x(shape.size());
    for (std::size_t flat = 0; flat < n; ++flat) {
        std::size_t rem = flat;
        for (std::size_t a = shape.size(); a-- > 0;) {
            x[a] = static_cast<double>(rem % shape[a]) * h;
            rem /= shape[a];
        }
        values[flat] = fn(x);
    }
    return GridFunction(std::move(extent), h, std::move(values));
}

Point GridFunction::point(std::size_t flat) const {
    Point x(dim());
    for (std::size_t a = dim(); a-- > 0;) {
        x[a] = static_cast<double>(flat % shape_[a]) * h_;
        flat /= shape_[a];
    }
    return x;
}

std::size_t GridFunction::flat_index(std::span<const std::size_t> multi) const {
    if (multi.size() != dim()) throw DomainError("GridFunction: index dimension mismatch");
    std::size_t flat = 0;
    for (std::size_t a = 0; a < dim(); ++a) {
        if (multi[a] >= shape_[a]) throw HorizonError("GridFunction: index outside the lattice");
        flat = flat * shape_[a] + multi[a];
    }
    return flat;
}

bool GridFunction::same_grid(const GridFunction& other) const {
    return h_ == other.h_ && shape_ == other.shape_;
}

GridFunction GridFunction::mapped(const std::function<Complex(std::span<const double>, Complex)>& fn) const {
    std::vector<Complex> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = fn(point(i), values_[i]);
    return GridFunction(extent_, h_, std::move(out));
}

void GridFunction::write_csv(std::ostream& out) const {
    out << "# d=" << dim() << " X=";
    for (std::size_t a = 0; a < dim(); ++a) out << (a ? " " : "") << format_number(extent_[a]);
    out << " h=" << format_number(h_) << '\n';
    for (std::size_t a = 0; a < dim(); ++a) out << 'x' << (a + 1) << ',';
    out << "re,im\n";
    for (std::size_t i = 0; i < values_.size(); ++i) {
        for (double c : point(i)) out << format_number(c) << ',';
        out << format_complex(values_[i]) << '\n';
    }
}

GridFunction truncated_convolution(const GridFunction& f, const GridFunction& k) {
    if (!f.same_grid(k)) throw DomainError("truncated_convolution: grids differ");
    const std::size_t d = f.dim();
    const auto& shape = f.shape();
    std::vector<std::size_t> stride(d, 1);
    for (std::size_t a = d - 1; a-- > 0;) stride[a] = stride[a + 1] * shape[a + 1];
    const double cell = std::pow(f.step(), static_cast<double>(d));

    std::vector<Complex> out(f.size());
    std::vector<std::size_t> m(d), j(d);
    for (std::size_t fm = 0; fm < f.size(); ++fm) {
        std::size_t rem = fm;
        for (std::size_t a = d; a-- > 0;) {
            m[a] = rem % shape[a];
            rem /= shape[a];
        }
        // The flat layout is linear, so flat(m - j) = flat(m) - flat(j).
        std::fill(j.begin(), j.end(), 0);
        Complex acc = 0.0;
        std::size_t fj = 0;
        while (true) {
            acc += f[fm - fj] * k[fj];
            std::size_t a = d;
            while (a-- > 0) {
                if (j[a] < m[a]) {
                    ++j[a];
                    fj += stride[a];
                    break;
                }
                fj -= j[a] * stride[a];
                j[a] = 0;
            }
            if (a == static_cast<std::size_t>(-1)) break;
        }
        out[fm] = acc * cell;
    }
    return GridFunction(f.extent(), f.step(), std::move(out));
}

namespace {

struct Quadratures {
    Complex full = 0.0;   // trapezoid on the whole lattice
    Complex fine = 0.0;   // trapezoid restricted to the even-sized sub-box
    Complex coarse = 0.0; // trapezoid with step 2h on the same sub-box
};

std::vector<double> trapezoid(std::size_t n, std::size_t last, std::size_t stride) {
    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i <= last; i += stride) c[i] = static_cast<double>(stride);
    c[0] *= 0.5;
    c[last] *= 0.5;
    return c;
}

Quadratures quadratures(const GridFunction& k, std::span<const Complex> z, bool absolute) {
    const std::size_t d = k.dim();
    const auto& shape = k.shape();
    for (std::size_t n : shape)
        if (n < 3) throw DomainError("laplace_halfline: need at least three lattice points per axis");
    std::vector<std::vector<double>> c_full(d), c_fine(d), c_coarse(d);
    std::vector<std::vector<Complex>> e(d);
    for (std::size_t a = 0; a < d; ++a) {
        const std::size_t n = shape[a];
        const std::size_t even = (n - 1) / 2 * 2;
        c_full[a] = trapezoid(n, n - 1, 1);
        c_fine[a] = trapezoid(n, even, 1);
        c_coarse[a] = trapezoid(n, even, 2);
        e[a].resize(n);
        for (std::size_t i = 0; i < n; ++i)
            e[a][i] = absolute || z[a] == Complex(0.0) ? Complex(1.0)
                                                       : std::exp(-static_cast<double>(i) * k.step() * z[a]);
    }
    Quadratures q;
    std::vector<std::size_t> idx(d);
    for (std::size_t flat = 0; flat < k.size(); ++flat) {
        std::size_t rem = flat;
        for (std::size_t a = d; a-- > 0;) {
            idx[a] = rem % shape[a];
            rem /= shape[a];
        }
        Complex kern = 1.0;
        double wf = 1.0, wi = 1.0, wc = 1.0;
        for (std::size_t a = 0; a < d; ++a) {
            kern *= e[a][idx[a]];
            wf *= c_full[a][idx[a]];
            wi *= c_fine[a][idx[a]];
            wc *= c_coarse[a][idx[a]];
        }
        const Complex v = absolute ? Complex(std::abs(k[flat])) : k[flat];
        q.full += v * (kern * wf);
        if (wi != 0.0) q.fine += v * (kern * wi);
        if (wc != 0.0) q.coarse += v * (kern * wc);
    }
    const double cell = std::pow(k.step(), static_cast<double>(d));
    q.full *= cell;
    q.fine *= cell;
    q.coarse *= cell;
    return q;
}

} // namespace

SeriesValue laplace_halfline(const GridFunction& k, std::span<const Complex> z, double domain_tail_bound) {
    if (z.size() != k.dim()) throw DomainError("laplace_halfline: z must have one component per axis");
    if (!(domain_tail_bound >= 0.0)) throw DomainError("laplace_halfline: tail bound must be >= 0");
    const auto q = quadratures(k, z, false);
    // Richardson would divide by 3; the undivided gap stays conservative
    // before the asymptotic regime sets in.
    return {q.full, std::abs(q.fine - q.coarse) + domain_tail_bound};
}

double l1_norm_halfline(const GridFunction& k) {
    const std::vector<Complex> zero(k.dim(), 0.0);
    return quadratures(k, zero, true).full.real();
}

double exponential_tail_bound(double amplitude, double rate, std::span<const double> re_z,
                              std::span<const double> extent) {
    if (re_z.size() != extent.size()) throw DomainError("exponential_tail_bound: dimension mismatch");
    if (!(amplitude >= 0.0)) throw DomainError("exponential_tail_bound: amplitude must be >= 0");
    std::vector<double> b(re_z.size());
    double prod = 1.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        b[i] = rate + re_z[i];
        if (!(b[i] > 0.0)) throw DomainError("exponential_tail_bound: integrand does not decay along an axis");
        prod /= b[i];
    }
    // union bound over the slabs {x_i > X_i}
    double total = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) total += std::exp(-b[i] * extent[i]) * prod;
    return amplitude * total;
}

ContinuousWeight ContinuousWeight::one() {
    ContinuousWeight w;
    w.log_w_ = [](std::span<const double>) { return 0.0; };
    w.name_ = "one";
    return w;
}

ContinuousWeight ContinuousWeight::exponential(std::vector<double> c) {
    for (double v : c)
        if (!std::isfinite(v)) throw DomainError("exponential weight coefficients must be finite");
    ContinuousWeight w;
    w.name_ = "exponential";
    w.log_w_ = [c = std::move(c)](std::span<const double> x) {
        if (x.size() != c.size()) throw DomainError("exponential weight: dimension mismatch");
        double s = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * x[i];
        return s;
    };
    return w;
}

ContinuousWeight ContinuousWeight::custom(std::function<double(std::span<const double>)> log_w, std::string name) {
    if (!log_w) throw DomainError("custom weight needs a log-weight function");
    ContinuousWeight w;
    w.log_w_ = std::move(log_w);
    w.name_ = std::move(name);
    return w;
}

double ContinuousWeight::eval(std::span<const double> x) const { return std::exp(log_w_(x)); }

RegionCheck weight_region_check(const ContinuousWeight& w, std::span<const Complex> z,
                                std::span<const double> extent, double h) {
    if (z.size() != extent.size()) throw DomainError("weight_region_check: dimension mismatch");
    const auto shape = lattice_shape(extent, h);
    std::size_t n = 1;
    for (std::size_t s : shape) n *= s;
    RegionCheck r;
    r.worst_margin = std::numeric_limits<double>::infinity();
    Point x(shape.size());
    for (std::size_t flat = 0; flat < n; ++flat) {
        std::size_t rem = flat;
        for (std::size_t a = shape.size(); a-- > 0;) {
            x[a] = static_cast<double>(rem % shape[a]) * h;
            rem /= shape[a];
        }
        double lhs = 0.0;
        for (std::size_t a = 0; a < x.size(); ++a) lhs += x[a] * z[a].real();
        const double lw = w.log_eval(x);
        const double margin = lhs + lw;
        r.worst_margin = std::min(r.worst_margin, margin);
        if (margin < -1e-12 * (1.0 + std::abs(lhs) + std::abs(lw)) && r.pass) {
            r.pass = false;
            r.witness = x;
        }
    }
    return r;
}

Corollary1Report corollary1_experiment(const GridFunction& f, const GridFunction& k, const ContinuousWeight& w,
                                       std::span<const std::vector<Complex>> z_samples,
                                       std::span<const double> levels, double epsilon,
                                       const std::function<double(std::span<const Complex>)>& tail_bound) {
    if (!f.same_grid(k)) throw DomainError("corollary1_experiment: f and k live on different grids");
    Corollary1Report r;
    SampledCondition& c = r.condition;
    c.min_distance = std::numeric_limits<double>::infinity();
    for (const auto& z : z_samples) {
        if (z.size() != f.dim()) throw DomainError("corollary1_experiment: z sample has the wrong dimension");
        ++c.sampled;
        if (!weight_region_check(w, z, f.extent(), f.step()).pass) continue;
        ++c.in_region;
        const auto lz = laplace_halfline(k, z, tail_bound ? tail_bound(z) : 0.0);
        const double dist = std::abs(lz.value + 1.0);
        c.min_distance = std::min(c.min_distance, dist);
        c.max_error = std::max(c.max_error, lz.tail_radius);
        if (dist <= lz.tail_radius && !c.witness) c.witness = z;
    }
    if (c.in_region == 0) c.min_distance = 0.0;
    c.holds = c.in_region > 0 && !c.witness;

    const GridFunction conv = truncated_convolution(f, k);
    std::vector<double> ranks(f.size());
    std::vector<Complex> gw(f.size()), fw(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Point x = f.point(i);
        ranks[i] = *std::max_element(x.begin(), x.end());
        const double wx = w.eval(x);
        gw[i] = (f[i] + conv[i]) * wx;
        fw[i] = f[i] * wx;
    }
    r.g_profile = decay_profile_ranked(ranks, gw, levels, epsilon);
    r.f_profile = decay_profile_ranked(ranks, fw, levels, epsilon);
    r.g_weighted = GridFunction(f.extent(), f.step(), gw);
    if (c.holds && r.g_profile.verdict == Verdict::TendsToZero) {
        r.consistent = r.f_profile.verdict == Verdict::TendsToZero;
        r.consistency_note = r.consistent ? "sampled condition holds, g -> 0 and f w -> 0"
                                          : "sampled condition holds and g -> 0 but f w does not: implementation bug";
    } else {
        r.consistent = true;
        r.consistency_note = "hypotheses not both met; consistency holds vacuously";
    }
    return r;
}

} // namespace tauber
