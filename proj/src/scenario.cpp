#include "tauber/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <random>
#include <set>
#include <sstream>

#include "tauber/halfline.hpp"
#include "tauber/io.hpp"
#include "tauber/norm_series.hpp"

namespace tauber {

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

} // namespace

ScenarioFile ScenarioFile::parse(std::istream& in, const std::string& source) {
    ScenarioFile f;
    f.source_ = source;
    std::string line, section;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw ParseError(source + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']') fail("unterminated section header");
            section = trim(std::string_view(t).substr(1, t.size() - 2));
            if (section.empty()) fail("empty section name");
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) fail("expected 'key = value'");
        const std::string key = trim(std::string_view(t).substr(0, eq));
        const std::string value = trim(std::string_view(t).substr(eq + 1));
        if (key.empty()) fail("empty key");
        const std::string full = section.empty() ? key : section + "." + key;
        if (!f.values_.emplace(full, value).second) fail("duplicate key '" + full + "'");
    }
    return f;
}

ScenarioFile ScenarioFile::parse_string(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    return parse(in, source);
}

namespace {

/// Typed access to a ScenarioFile that records which keys were read.
class Config {
public:
    explicit Config(const ScenarioFile& f) : f_(f) {}

    bool has(const std::string& key) const { return f_.has(key); }

    std::string str(const std::string& key) const {
        used_.insert(key);
        const auto it = f_.values().find(key);
        if (it == f_.values().end()) throw ParseError(f_.source() + ": missing required key '" + key + "'");
        return it->second;
    }
    std::string str(const std::string& key, const std::string& fallback) const {
        return has(key) ? str(key) : fallback;
    }

    double num(const std::string& key) const { return to_double(key, str(key)); }
    double num(const std::string& key, double fallback) const { return has(key) ? num(key) : fallback; }

    Index integer(const std::string& key) const {
        const double v = num(key);
        if (v != std::floor(v) || std::abs(v) > 9e15)
            throw ParseError(f_.source() + ": key '" + key + "' must be an integer");
        return static_cast<Index>(v);
    }
    Index integer(const std::string& key, Index fallback) const { return has(key) ? integer(key) : fallback; }

    std::optional<double> maybe(const std::string& key) const {
        std::optional<double> v;
        if (has(key)) v.emplace(num(key));
        return v;
    }

    bool flag(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const std::string v = str(key);
        if (v == "true" || v == "yes" || v == "1") return true;
        if (v == "false" || v == "no" || v == "0") return false;
        throw ParseError(f_.source() + ": key '" + key + "' must be true or false");
    }

    std::vector<double> list(const std::string& key) const {
        std::vector<double> out;
        for (const auto& item : split(str(key), ',')) out.push_back(to_double(key, item));
        return out;
    }
    std::vector<double> list(const std::string& key, std::vector<double> fallback) const {
        return has(key) ? list(key) : fallback;
    }

    std::string choice(const std::string& key, std::initializer_list<const char*> options,
                       std::optional<std::string> fallback = std::nullopt) const {
        const std::string v = fallback && !has(key) ? *fallback : str(key);
        for (const char* o : options)
            if (v == o) return v;
        std::string all;
        for (const char* o : options) all += std::string(all.empty() ? "" : ", ") + o;
        throw ParseError(f_.source() + ": key '" + key + "' must be one of: " + all + " (got '" + v + "')");
    }

    double to_double(const std::string& key, const std::string& s) const {
        double v = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v))
            throw ParseError(f_.source() + ": key '" + key + "' expects a number, got '" + s + "'");
        return v;
    }

    /// Every key in the file must have been read by the experiment.
    void finish() const {
        for (const auto& [k, v] : f_.values())
            if (!used_.count(k)) throw ParseError(f_.source() + ": unknown key '" + k + "'");
    }

    [[noreturn]] void invalid(const std::string& msg) const { throw ParseError(f_.source() + ": " + msg); }

private:
    const ScenarioFile& f_;
    mutable std::set<std::string> used_;
};

// ---------------------------------------------------------------------------
// Shared specs

struct Domain {
    SemigroupModel model = SemigroupModel::zplus();
    Index horizon = 0;
};

Domain read_domain(const Config& c, Index default_horizon = -1) {
    const std::string fam = c.choice("domain.family", {"zplus", "nstar", "free"});
    Domain d;
    d.horizon = default_horizon >= 0 ? c.integer("domain.horizon", default_horizon) : c.integer("domain.horizon");
    if (d.horizon < 1) c.invalid("domain.horizon must be >= 1");
    if (fam == "zplus") {
        const Index dim = c.integer("domain.dim", 1);
        if (dim < 1 || dim > 8) c.invalid("domain.dim must lie in 1..8");
        d.model = SemigroupModel::zplus(static_cast<std::size_t>(dim), dim > 1 ? d.horizon : 0);
    } else if (fam == "nstar") {
        d.model = SemigroupModel::nstar();
    } else {
        d.model = SemigroupModel::free_abelian(c.list("domain.norms"), d.horizon);
    }
    return d;
}

Weight read_weight(const Config& c, const std::string& prefix = "weight") {
    const std::string type = c.choice(prefix + ".type", {"one", "exponential", "power"}, std::string("one"));
    if (type == "one") return Weight::one();
    if (type == "exponential") return Weight::exponential(c.list(prefix + ".c"));
    return Weight::power(c.num(prefix + ".sigma"));
}

Complex parse_complex(const Config& c, const std::string& key, const std::string& s) {
    const auto parts = split(s, ':');
    if (parts.size() == 1) return c.to_double(key, parts[0]);
    if (parts.size() == 2) return {c.to_double(key, parts[0]), c.to_double(key, parts[1])};
    c.invalid("key '" + key + "' expects 're' or 're:im'");
}

struct Kernel {
    AlgebraElement element;
    TailDescriptor tail;
};

double example1_coefficient(Index n) { return std::ldexp(1.0, -static_cast<int>(std::min<Index>(n + 1, 2000))); }

Kernel read_kernel(const Config& c, const std::string& prefix, const Domain& d, const Weight& w) {
    const std::string type =
        c.choice(prefix + ".type", {"zero", "terms", "example1", "geometric", "random"});
    const Complex unit = parse_complex(c, prefix + ".unit", c.str(prefix + ".unit", "0"));
    const Index first = d.model.first_index();
    const bool unweighted = w.kind() == Weight::Kind::ConstantOne;
    Kernel k{AlgebraElement(d.model, d.horizon), TailDescriptor::finite()};

    if (type == "terms") {
        std::map<Index, Complex> m;
        for (const auto& item : split(c.str(prefix + ".terms"), ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos) c.invalid(prefix + ".terms entries look like index:re[:im]");
            const double idx = c.to_double(prefix + ".terms", item.substr(0, colon));
            if (idx != std::floor(idx) || idx < static_cast<double>(first) || idx > static_cast<double>(d.horizon))
                c.invalid(prefix + ".terms index " + item.substr(0, colon) + " outside [first index, horizon]");
            m[static_cast<Index>(idx)] += parse_complex(c, prefix + ".terms", item.substr(colon + 1));
        }
        k.element = AlgebraElement::from_map(d.model, d.horizon, std::move(m));
    } else if (type == "example1") {
        if (!unweighted) c.invalid("kernel type example1 carries a tail bound for the weight one only");
        k.element = AlgebraElement::from_function(d.model, d.horizon, [&](Index n) {
            return n >= 1 ? example1_coefficient(n) : 0.0;
        });
        k.tail = TailDescriptor::geometric(0.5, 0.5);
    } else if (type == "geometric") {
        if (!unweighted) c.invalid("kernel type geometric carries a tail bound for the weight one only");
        const double scale = c.num(prefix + ".scale");
        const double ratio = c.num(prefix + ".ratio");
        const Index start = c.integer(prefix + ".start", first);
        k.tail = TailDescriptor::geometric(ratio, std::abs(scale));
        k.element = AlgebraElement::from_function(d.model, d.horizon, [&](Index n) {
            return n >= start ? scale * std::pow(ratio, static_cast<double>(n)) : 0.0;
        });
    } else if (type == "random") {
        const auto seed = static_cast<std::uint64_t>(c.integer(prefix + ".seed"));
        const Index support = c.integer(prefix + ".support");
        const double target = c.num(prefix + ".norm");
        if (support < first || support > d.horizon) c.invalid(prefix + ".support must lie in [first index, horizon]");
        if (!(target >= 0.0)) c.invalid(prefix + ".norm must be >= 0");
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::map<Index, Complex> m;
        for (Index i = first; i <= support; ++i) m[i] = u(rng);
        auto raw = AlgebraElement::from_map(d.model, d.horizon, std::move(m));
        const double n = norm_w(raw, w);
        k.element = n > 0.0 ? raw * (target / n) : raw;
    }
    k.element = k.element.with_unit_scalar(unit);
    return k;
}

BoundedFunction read_f(const Config& c, const Domain& d) {
    const std::string type = c.choice("f.type", {"reciprocal", "one", "zero", "exp", "power", "alternating"});
    const bool additive = d.model.family() == Family::ZPlusD;
    // on Z_+ the index starts at 0, so shift by one where a reciprocal is taken
    const double shift = additive ? 1.0 : 0.0;
    std::function<Complex(Index)> fn;
    if (type == "reciprocal") {
        fn = [shift](Index n) { return 1.0 / (static_cast<double>(n) + shift); };
    } else if (type == "one") {
        fn = [](Index) { return 1.0; };
    } else if (type == "zero") {
        fn = [](Index) { return 0.0; };
    } else if (type == "exp") {
        const double rate = c.num("f.rate");
        fn = [rate](Index n) { return std::exp(-rate * static_cast<double>(n)); };
    } else if (type == "power") {
        const double p = c.num("f.exponent");
        fn = [p, shift](Index n) { return std::pow(static_cast<double>(n) + shift, -p); };
    } else {
        fn = [](Index n) { return n % 2 ? -1.0 : 1.0; };
    }
    return BoundedFunction::from_function(d.model, d.horizon, fn);
}

std::vector<Index> read_levels(const Config& c, Index horizon) {
    std::vector<Index> levels;
    if (c.has("levels.values")) {
        for (double v : c.list("levels.values")) {
            if (v != std::floor(v)) c.invalid("levels.values must be integers");
            levels.push_back(static_cast<Index>(v));
        }
    } else {
        for (double f : c.list("levels.fractions", {0.25, 0.5, 0.75})) {
            if (!(f > 0.0 && f < 1.0)) c.invalid("levels.fractions must lie in (0, 1)");
            levels.push_back(static_cast<Index>(std::floor(f * static_cast<double>(horizon))));
        }
    }
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (i && levels[i] <= levels[i - 1]) c.invalid("levels must be strictly increasing");
        if (levels[i] >= horizon) c.invalid("levels must lie below the horizon " + std::to_string(horizon));
    }
    if (levels.empty()) c.invalid("at least one level is required");
    return levels;
}

CertificateOptions read_certificate_options(const Config& c) {
    CertificateOptions o;
    o.grid_step = c.num("tolerances.grid_step", o.grid_step);
    o.sigma_max = c.num("tolerances.sigma_max", o.sigma_max);
    o.t_max = c.num("tolerances.t_max", o.t_max);
    o.tol = c.num("tolerances.grid_tol", o.tol);
    return o;
}

// ---------------------------------------------------------------------------
// Output helpers

class Output {
public:
    explicit Output(RunResult& r) : r_(r) {}

    void value(const std::string& key, const std::string& v) { r_.summary.emplace_back(key, v); }
    void value(const std::string& key, const char* v) { value(key, std::string(v)); }
    void value(const std::string& key, double v) { value(key, format_number(v)); }
    void value(const std::string& key, Index v) { value(key, format_number(v)); }
    void value(const std::string& key, std::size_t v) { value(key, format_number(v)); }
    void value(const std::string& key, bool v) { value(key, v ? "true" : "false"); }
    void value(const std::string& key, Complex v) { value(key, format_complex(v)); }

    void check(const std::string& name, bool ok, const std::string& detail) {
        r_.assertions.push_back({name, ok, detail});
    }
    void table(const std::string& file, std::string csv) { r_.tables.emplace_back(file, std::move(csv)); }

private:
    RunResult& r_;
};

std::string profile_csv(const DecayReport& p) {
    std::string s = "level,sup_outside\n";
    for (std::size_t i = 0; i < p.levels.size(); ++i)
        s += format_number(p.levels[i]) + "," + format_number(p.sup_outside[i]) + "\n";
    return s;
}

std::string function_csv(const BoundedFunction& f) {
    std::string s = "index,re,im\n";
    for (Index i = f.first_index(); i <= f.horizon(); ++i)
        s += format_number(i) + "," + format_complex(f.at(i)) + "\n";
    return s;
}

std::string element_csv(const AlgebraElement& k) {
    std::string s = "index,re,im\n";
    s += "unit," + format_complex(k.unit_scalar()) + "\n";
    for (const auto& [i, v] : k.coefficients()) s += format_number(i) + "," + format_complex(v) + "\n";
    return s;
}

std::string certificate_csv(const ConditionCertificate& c) {
    std::string s = "method,status,target_re,target_im,min_modulus,lower_bound,lipschitz_bound,grid_step,"
                     "tail_radius,grid_points,witness_re,witness_im\n";
    s += c.method + "," + to_string(c.status) + "," + format_complex(c.target) + "," + format_number(c.min_modulus) +
         "," + format_number(c.lower_bound) + "," + format_number(c.lipschitz_bound) + "," +
         format_number(c.grid_step) + "," + format_number(c.tail_radius) + "," + format_number(c.grid_points) + ",";
    s += c.witness_point ? format_complex(*c.witness_point) : std::string(",");
    return s + "\n";
}

void report_certificate(Output& out, const std::string& prefix, const ConditionCertificate& c) {
    out.value(prefix + "_status", to_string(c.status));
    out.value(prefix + "_method", c.method);
    out.value(prefix + "_min_modulus", c.min_modulus);
    out.value(prefix + "_lower_bound", c.lower_bound);
    out.value(prefix + "_lipschitz_bound", c.lipschitz_bound);
    out.value(prefix + "_tail_radius", c.tail_radius);
    out.value(prefix + "_grid_points", c.grid_points);
    if (!c.note.empty()) out.value(prefix + "_note", c.note);
}

void report_profile(Output& out, const std::string& prefix, const DecayReport& p) {
    out.value(prefix + "_verdict", to_string(p.verdict));
    out.value(prefix + "_sup_outside_last", p.sup_outside.back());
    out.value(prefix + "_limsup", p.limsup);
    out.value(prefix + "_liminf", p.liminf);
    out.value(prefix + "_spread", p.spread);
    if (p.verdict == Verdict::TendsToConstant) out.value(prefix + "_limit", p.limit);
}

/// Optional expectations in [expect]: each present key adds an assertion.
struct Expectations {
    std::optional<std::string> condition, f_verdict, g_verdict;
};

Expectations read_expectations(const Config& c) {
    Expectations e;
    if (c.has("expect.condition"))
        e.condition = c.choice("expect.condition", {"certified", "violated", "inconclusive"});
    const auto verdicts = {"tends-to-0", "tends-to-c", "no-limit", "inconclusive"};
    if (c.has("expect.f_verdict")) e.f_verdict = c.choice("expect.f_verdict", verdicts);
    if (c.has("expect.g_verdict")) e.g_verdict = c.choice("expect.g_verdict", verdicts);
    return e;
}

void check_expectation(Output& out, const std::string& name, const std::optional<std::string>& want,
                       const std::string& got) {
    if (want) out.check(name, got == *want, "expected " + *want + ", got " + got);
}

void report_tauberian(Output& out, const TauberianReport& r, const Expectations& e) {
    report_certificate(out, "condition", r.condition);
    report_profile(out, "f", r.f_profile);
    report_profile(out, "g", r.g_profile);
    out.value("consistent", r.consistent);
    out.value("consistency_note", r.consistency_note);
    out.check("consistency", r.consistent, r.consistency_note);
    check_expectation(out, "condition_status", e.condition, to_string(r.condition.status));
    check_expectation(out, "f_verdict", e.f_verdict, to_string(r.f_profile.verdict));
    check_expectation(out, "g_verdict", e.g_verdict, to_string(r.g_profile.verdict));
    out.table("profile_f.csv", profile_csv(r.f_profile));
    out.table("profile_g.csv", profile_csv(r.g_profile));
    out.table("certificate.csv", certificate_csv(r.condition));
    if (r.g_weighted) out.table("g_weighted.csv", function_csv(*r.g_weighted));
}

// ---------------------------------------------------------------------------
// Experiments

void run_example1(const Config& c, Output& out) {
    const Index horizon = c.integer("domain.horizon", 5000);
    const double tol = c.num("tolerances.neumann_tol", 5e-11);
    const Index primes_up_to = c.integer("example1.primes_up_to", 31);
    const auto options = read_certificate_options(c);
    c.finish();
    const auto r = example1_counterexample(horizon, tol, primes_up_to, options);
    for (const auto& a : r.assertions) out.check(a.name, a.passed, a.detail);
    const double limsup_floor = 11.0 / 8.0 - r.f_profile.epsilon;
    out.check("f_limsup_estimate_at_least_11_8_minus_eps", r.f_profile.limsup >= limsup_floor,
              "limsup=" + format_number(r.f_profile.limsup));
    out.check("f_2_equals_1_375", r.f->at(2) == Complex(1.375), "f(2)=" + format_number(r.f->at(2).real()));

    out.value("horizon", horizon);
    out.value("f(2)", r.f->at(2).real());
    out.value("f(840)", r.f->at(840).real());
    out.value("verdict_f", to_string(r.f_profile.verdict));
    out.value("limsup_f", r.f_profile.limsup);
    out.value("liminf_f", r.f_profile.liminf);
    out.value("verdict_g", to_string(r.g_profile.verdict));
    out.value("identity_error", r.identity_error);
    out.value("neumann_terms", static_cast<Index>(r.neumann.terms));
    out.value("neumann_q_norm", r.neumann.q_norm);
    out.value("neumann_residual", r.neumann.residual);
    out.value("neumann_certified_tail", r.neumann.certified_tail);
    report_certificate(out, "q_condition", r.q_condition);
    report_certificate(out, "kernel_condition", r.kernel_condition);

    out.table("f.csv", function_csv(*r.f));
    out.table("kernel.csv", element_csv(r.neumann.inverse_part));
    out.table("profile_f.csv", profile_csv(r.f_profile));
    out.table("profile_g.csv", profile_csv(r.g_profile));
    out.table("certificate_q.csv", certificate_csv(r.q_condition));
    out.table("certificate_kernel.csv", certificate_csv(r.kernel_condition));
}

void run_tauber_family(const Config& c, Output& out, const std::string& experiment) {
    const Domain d = read_domain(c);
    const Weight w = read_weight(c);
    const Kernel k = read_kernel(c, "kernel", d, w);
    const BoundedFunction f = read_f(c, d);
    const auto levels = read_levels(c, d.horizon);
    const double eps = c.num("tolerances.epsilon", kDefaultEpsilon);
    const auto options = read_certificate_options(c);
    const auto expect = read_expectations(c);
    const bool roundtrip = experiment == "tauber" && c.flag("roundtrip.enabled", false);
    const Index compare_up_to = roundtrip ? c.integer("roundtrip.compare_up_to", d.horizon) : 0;
    const double roundtrip_tol = roundtrip ? c.num("roundtrip.tol", 1e-8) : 0.0;
    const double neumann_tol = roundtrip ? c.num("roundtrip.neumann_tol", 1e-12) : 0.0;
    if (roundtrip && (compare_up_to < d.model.first_index() || compare_up_to > d.horizon))
        c.invalid("roundtrip.compare_up_to must lie within the horizon");
    c.finish();
    if (experiment == "corollary3" && !(d.model.family() == Family::ZPlusD && d.model.dim() == 1))
        throw DomainError("corollary3 runs on Z_+ (domain.family = zplus, dim = 1)");

    TauberianReport r;
    if (experiment == "tauber") r = tauberian_experiment(f, k.element, w, levels, eps, k.tail, options);
    else if (experiment == "corollary2") r = corollary2_experiment(f, k.element, w, levels, eps, k.tail, options);
    else r = corollary3_experiment(f, k.element, w, levels, eps, k.tail, options);

    out.value("family", d.model.name());
    out.value("horizon", d.horizon);
    out.value("weight", w.describe());
    out.value("kernel_norm_w", norm_w(k.element, w));
    report_tauberian(out, r, expect);
    out.table("kernel.csv", element_csv(k.element));

    if (roundtrip) {
        // f is recovered from g = f + K*f with (u + K)^{-1} = u + K', K' by Neumann series.
        if (k.element.unit_scalar() != Complex(0.0)) throw DomainError("roundtrip needs kernel.unit = 0");
        const auto neumann = neumann_resolve(k.element, w, neumann_tol, 400, k.tail.bound_beyond(d.horizon));
        const auto u = AlgebraElement::unit(d.model, d.horizon);
        const BoundedFunction g = apply_unitized(u + k.element, f);
        const BoundedFunction back = apply_unitized(u + neumann.inverse_part, g);
        double err = 0.0;
        for (Index i = d.model.first_index(); i <= compare_up_to; ++i) err = std::max(err, std::abs(back.at(i) - f.at(i)));
        out.value("roundtrip_neumann_terms", static_cast<Index>(neumann.terms));
        out.value("roundtrip_error", err);
        out.check("roundtrip_recovers_f", err <= roundtrip_tol,
                  "sup error " + format_number(err) + " on indices <= " + format_number(compare_up_to) +
                      ", bound " + format_number(roundtrip_tol));
    }
}

void run_abelian(const Config& c, Output& out) {
    const Domain d = read_domain(c);
    const Weight w = read_weight(c);
    const Kernel k = read_kernel(c, "kernel", d, w);
    const BoundedFunction f = read_f(c, d);
    const auto levels = read_levels(c, d.horizon);
    const double eps = c.num("tolerances.epsilon", kDefaultEpsilon);
    c.finish();
    const auto r = abelian_experiment(f, k.element, w, levels, eps);
    out.value("family", d.model.name());
    out.value("horizon", d.horizon);
    out.value("kernel_norm_w", r.kernel_norm);
    report_profile(out, "f", r.f_profile);
    report_profile(out, "convolution", r.convolution_profile);
    out.check("convolution_tends_to_0", r.passed,
              "verdict " + to_string(r.convolution_profile.verdict) + " at epsilon " +
                  format_number(r.convolution_profile.epsilon));
    out.table("profile_f.csv", profile_csv(r.f_profile));
    out.table("profile_convolution.csv", profile_csv(r.convolution_profile));
    out.table("convolution_weighted.csv", function_csv(*r.convolution_weighted));
}

void run_dirichlet_check(const Config& c, Output& out) {
    const Domain d = read_domain(c);
    if (d.model.family() != Family::NStar) c.invalid("dirichlet-check runs on N* (domain.family = nstar)");
    const Weight rho = read_weight(c);
    const Kernel k = read_kernel(c, "kernel", d, rho);
    const Complex target = parse_complex(c, "dirichlet.target", c.str("dirichlet.target", "0"));
    const double sigma_max = c.num("dirichlet.sigma_max", 10.0);
    const double t_max = c.num("dirichlet.t_max", 50.0);
    const double step = c.num("dirichlet.grid_step", 0.05);
    const double tol = c.num("tolerances.grid_tol", 1e-9);
    const auto expect = read_expectations(c);
    const std::optional<double> min_floor =
        c.maybe("expect.min_modulus_at_least");
    c.finish();
    const auto cert = check_avoid_value_dirichlet(k.element, rho, target, sigma_max, t_max, step, k.tail, tol);
    out.value("horizon", d.horizon);
    out.value("target", target);
    report_certificate(out, "condition", cert);
    out.check("not_violated", cert.status != CertificateStatus::Violated, "status " + to_string(cert.status));
    check_expectation(out, "condition_status", expect.condition, to_string(cert.status));
    if (min_floor)
        out.check("min_modulus_at_least_floor_minus_tail", cert.min_modulus >= *min_floor - cert.tail_radius,
                  "min modulus " + format_number(cert.min_modulus) + ", floor " + format_number(*min_floor) +
                      " minus tail " + format_number(cert.tail_radius));
    out.table("certificate.csv", certificate_csv(cert));
}

void run_mercer(const Config& c, Output& out) {
    const double alpha = c.num("mercer.alpha");
    const Index length = c.integer("mercer.length", 100000);
    const std::string seq = c.choice("mercer.sequence", {"alternating", "harmonic", "constant"});
    const double value = seq == "constant" ? c.num("mercer.value", 1.0) : 0.0;
    const Index converge_from = seq == "harmonic" ? c.integer("mercer.converge_from", 10000) : 0;
    const double converge_tol = seq == "harmonic" ? c.num("mercer.converge_tol", 0.05) : 0.0;
    const double tol = c.num("tolerances.roundtrip_tol", 1e-12);
    c.finish();
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("mercer.alpha must satisfy 0 < alpha < 1");
    if (length < 1) throw DomainError("mercer.length must be >= 1");

    const auto n_of = [](std::size_t i) { return static_cast<double>(i + 1); };
    std::vector<double> x, y;
    if (seq == "alternating") {
        x.resize(static_cast<std::size_t>(length));
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = 1.0 + ((i + 1) % 2 ? -1.0 : 1.0) / std::sqrt(n_of(i));
        y = mercer_mean(x, alpha);
    } else {
        y.resize(static_cast<std::size_t>(length));
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = seq == "harmonic" ? 1.0 + 1.0 / n_of(i) : value;
    }
    const auto recovered = mercer_invert(y, alpha);
    const auto y2 = mercer_mean(recovered, alpha);
    double ysup = 0.0, err = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        ysup = std::max(ysup, std::abs(y[i]));
        err = std::max(err, std::abs(y2[i] - y[i]));
    }
    const double rel = ysup > 0.0 ? err / ysup : err;
    out.value("alpha", alpha);
    out.value("length", length);
    out.value("sequence", seq);
    out.value("roundtrip_relative_error", rel);
    out.check("mean_of_inverse_reproduces_y", rel <= tol,
              "relative error " + format_number(rel) + ", bound " + format_number(tol));
    if (seq == "alternating") {
        double xe = 0.0, xs = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            xe = std::max(xe, std::abs(recovered[i] - x[i]));
            xs = std::max(xs, std::abs(x[i]));
        }
        out.value("recovered_x_error", xe);
        out.check("inverse_recovers_x", xe <= 1e-10 * xs, "sup error " + format_number(xe));
    } else if (seq == "harmonic") {
        double worst = 0.0;
        for (std::size_t i = static_cast<std::size_t>(std::max<Index>(converge_from, 1) - 1); i < recovered.size(); ++i)
            worst = std::max(worst, std::abs(recovered[i] - 1.0));
        out.value("converge_from", converge_from);
        out.value("max_deviation_from_1", worst);
        out.check("x_tends_to_1", worst <= converge_tol,
                  "max |x_n - 1| for n >= " + format_number(converge_from) + " is " + format_number(worst));
    } else {
        double worst = 0.0;
        for (double v : recovered) worst = std::max(worst, std::abs(v - value));
        out.value("max_deviation_from_constant", worst);
        out.check("constant_is_fixed", worst <= tol * std::max(1.0, std::abs(value)), "max deviation " + format_number(worst));
    }
    // every n up to 1000, then every 100th
    std::string csv = "n,y,x\n";
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i + 1 > 1000 && (i + 1) % 100 != 0) continue;
        csv += format_number(static_cast<Index>(i + 1)) + "," + format_number(y[i]) + "," + format_number(recovered[i]) + "\n";
    }
    out.table("mercer.csv", std::move(csv));
}

double exp_conv_1d(double a, double b, double x) {
    // int_0^x e^{-a (x - y)} e^{-b y} dy
    if (a == b) return x * std::exp(-a * x);
    return (std::exp(-a * x) - std::exp(-b * x)) / (b - a);
}

void run_corollary1(const Config& c, Output& out) {
    const Index dim = c.integer("halfline.dim", 1);
    if (dim < 1 || dim > 3) c.invalid("halfline.dim must be 1, 2 or 3");
    const double extent = c.num("halfline.extent");
    const double h = c.num("halfline.step");
    const double a = c.num("halfline.f_rate", 1.0);
    const double kc = c.num("halfline.k_scale");
    const double kb = c.num("halfline.k_rate");
    const auto wc = c.list("halfline.weight_c", {0.0});
    const auto z_re = c.list("halfline.z_re", {0.0, 0.5, 1.0, 2.0});
    const auto z_im = c.list("halfline.z_im", {-20.0, -5.0, -1.0, 0.0, 1.0, 5.0, 20.0});
    const auto levels = c.list("levels.values");
    const double eps = c.num("tolerances.epsilon", kDefaultEpsilon);
    const bool quadrature_check = c.flag("halfline.quadrature_check", false);
    const auto expect = read_expectations(c);
    if (expect.condition) c.invalid("expect.condition does not apply to corollary1; the check is sampled");
    c.finish();
    if (!(a > 0.0) || !(kb > 0.0)) throw DomainError("halfline rates must be positive");
    if (wc.size() != 1 && wc.size() != static_cast<std::size_t>(dim))
        throw DomainError("halfline.weight_c needs one value or one per axis");

    const std::size_t d = static_cast<std::size_t>(dim);
    const std::vector<double> X(d, extent);
    auto l1 = [](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += v;
        return s;
    };
    auto make = [&](double step) {
        return std::pair{GridFunction::from_function(X, step, [&](auto x) { return std::exp(-a * l1(x)); }),
                         GridFunction::from_function(X, step, [&](auto x) { return kc * std::exp(-kb * l1(x)); })};
    };
    const auto [f, k] = make(h);
    const std::vector<double> cw = wc.size() == 1 ? std::vector<double>(d, wc[0]) : wc;
    const bool unweighted = std::all_of(cw.begin(), cw.end(), [](double v) { return v == 0.0; });
    const ContinuousWeight w = unweighted ? ContinuousWeight::one() : ContinuousWeight::exponential(cw);

    std::vector<std::vector<Complex>> zs;
    for (double re : z_re)
        for (double im : z_im) zs.emplace_back(d, Complex(re, im));
    const auto tail = [&](std::span<const Complex> z) {
        std::vector<double> re(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) {
            re[i] = z[i].real();
            if (!(kb + re[i] > 0.0)) return std::numeric_limits<double>::infinity();
        }
        return exponential_tail_bound(std::abs(kc), kb, re, X);
    };
    const auto r = corollary1_experiment(f, k, w, zs, levels, eps, tail);

    out.value("dim", dim);
    out.value("extent", extent);
    out.value("step", h);
    out.value("condition_label", "heuristic (sampled)");
    out.value("condition_sampled", r.condition.sampled);
    out.value("condition_in_region", r.condition.in_region);
    out.value("condition_min_distance", r.condition.min_distance);
    out.value("condition_max_error", r.condition.max_error);
    out.value("condition_holds", r.condition.holds);
    report_profile(out, "f", r.f_profile);
    report_profile(out, "g", r.g_profile);
    out.value("consistent", r.consistent);
    out.check("consistency", r.consistent, r.consistency_note);
    out.check("condition_holds_on_samples", r.condition.holds,
              "min |L(z) + 1| " + format_number(r.condition.min_distance) + " over " +
                  format_number(r.condition.in_region) + " in-region samples");
    check_expectation(out, "f_verdict", expect.f_verdict, to_string(r.f_profile.verdict));
    check_expectation(out, "g_verdict", expect.g_verdict, to_string(r.g_profile.verdict));

    std::string samples = "z_re,z_im,in_region,value_re,value_im,radius\n";
    for (const auto& z : zs) {
        const bool in = weight_region_check(w, z, X, h).pass;
        samples += format_complex(z[0]) + "," + (in ? "1" : "0") + ",";
        if (in) {
            const auto lz = laplace_halfline(k, z, tail(z));
            samples += format_complex(lz.value) + "," + format_number(lz.tail_radius) + "\n";
        } else {
            samples += ",,\n";
        }
    }
    out.table("transform_samples.csv", std::move(samples));
    out.table("profile_f.csv", profile_csv(r.f_profile));
    out.table("profile_g.csv", profile_csv(r.g_profile));
    std::ostringstream g_csv;
    r.g_weighted->write_csv(g_csv);
    out.table("g_weighted.csv", g_csv.str());

    if (quadrature_check) {
        auto max_error = [&](const GridFunction& fg, const GridFunction& kg) {
            const auto conv = truncated_convolution(fg, kg);
            double err = 0.0;
            for (std::size_t i = 0; i < conv.size(); ++i) {
                const auto x = conv.point(i);
                double exact = kc;
                for (double xi : x) exact *= exp_conv_1d(a, kb, xi);
                err = std::max(err, std::abs(conv[i] - exact));
            }
            return err;
        };
        const double e1 = max_error(f, k);
        const auto [f2, k2] = make(h / 2.0);
        const double e2 = max_error(f2, k2);
        const double ratio = e1 / e2;
        const double scale = std::max(1.0, std::abs(kc));
        out.value("quadrature_error_h", e1);
        out.value("quadrature_error_h_half", e2);
        out.value("quadrature_error_ratio", ratio);
        out.check("convolution_error_at_most_2h", e1 <= 2.0 * h * scale && e2 <= h * scale,
                  "errors " + format_number(e1) + ", " + format_number(e2));
        out.check("convolution_first_order", ratio >= 1.7 && ratio <= 2.3, "ratio " + format_number(ratio));
        const std::vector<Complex> one(d, 1.0);
        const auto lf = laplace_halfline(f, one, exponential_tail_bound(1.0, a, std::vector<double>(d, 1.0), X));
        const double exact = std::pow(1.0 / (a + 1.0), static_cast<double>(d));
        out.value("laplace_f_at_1", lf.value);
        out.value("laplace_f_at_1_exact", exact);
        out.check("laplace_f_at_1", std::abs(lf.value - exact) <= 1e-3,
                  "value " + format_complex(lf.value) + ", exact " + format_number(exact));
        out.table("quadrature.csv", "h,max_error\n" + format_number(h) + "," + format_number(e1) + "\n" +
                                        format_number(h / 2.0) + "," + format_number(e2) + "\n");
    }
}

void run_norm_series(const Config& c, Output& out) {
    const std::string fam = c.choice("domain.family", {"nstar", "free"});
    const auto model = fam == "nstar" ? SemigroupModel::nstar() : SemigroupModel::free_abelian(c.list("domain.norms"));
    auto bounds = c.list("norm_series.bounds");
    if (c.has("norm_series.max_bound")) {
        const double top = c.num("norm_series.max_bound");
        std::erase_if(bounds, [&](double b) { return b >= top; });
        bounds.push_back(top);
    }
    const std::optional<double> pmin = c.maybe("expect.prime_sum_min");
    const std::optional<double> pmax = c.maybe("expect.prime_sum_max");
    const std::optional<double> emin =
        c.maybe("expect.element_minus_log_min");
    const std::optional<double> emax =
        c.maybe("expect.element_minus_log_max");
    const bool check_codiv = c.has("expect.co_divergence");
    const bool want_codiv = c.flag("expect.co_divergence", false);
    const Index euler_degree = fam == "free" ? c.integer("norm_series.euler_degree", 40) : 0;
    const double euler_tol = fam == "free" ? c.num("tolerances.euler_tol", 1e-6) : 0.0;
    const auto cap = static_cast<std::size_t>(c.integer("norm_series.element_cap", static_cast<Index>(kDefaultElementCap)));
    c.finish();

    const auto r = divergence_diagnostic(model, bounds, cap);
    const double p = r.prime_sums.back(), e = r.element_sums.back(), b = r.bounds.back();
    out.value("family", model.name());
    out.value("max_bound", b);
    out.value("prime_sum", p);
    out.value("element_sum", e);
    out.value("element_sum_minus_log", e - std::log(b));
    out.value("element_slope_vs_lnB", r.element_slope);
    out.value("prime_slope_vs_lnlnB", r.prime_slope);
    out.value("co_divergence", r.co_divergence);

    bool monotone = true, dominated = true;
    for (std::size_t i = 0; i < r.bounds.size(); ++i) {
        if (i && (r.prime_sums[i] < r.prime_sums[i - 1] || r.element_sums[i] < r.element_sums[i - 1])) monotone = false;
        if (r.element_sums[i] < r.prime_sums[i]) dominated = false;
    }
    out.check("partial_sums_non_decreasing", monotone, "over " + format_number(r.bounds.size()) + " bounds");
    out.check("element_sum_dominates_prime_sum", dominated, "elementSum >= primeSum at every bound");
    if (pmin) out.check("prime_sum_at_least", p >= *pmin, "primeSum " + format_number(p));
    if (pmax) out.check("prime_sum_at_most", p <= *pmax, "primeSum " + format_number(p));
    if (emin) out.check("element_minus_log_at_least", e - std::log(b) >= *emin, "elementSum - ln B " + format_number(e - std::log(b)));
    if (emax) out.check("element_minus_log_at_most", e - std::log(b) <= *emax, "elementSum - ln B " + format_number(e - std::log(b)));
    if (check_codiv) out.check("co_divergence_flag", r.co_divergence == want_codiv, std::string("flag ") + (r.co_divergence ? "set" : "clear"));
    if (fam == "free") {
        const auto ep = euler_product(model, static_cast<int>(euler_degree));
        const double direct = semigroup_degree_partial_sum(model, static_cast<int>(euler_degree), cap);
        out.value("euler_product", ep.value);
        out.value("euler_degree", euler_degree);
        out.value("degree_bounded_sum", direct);
        out.value("euler_truncation_bound", ep.truncation_bound);
        out.check("euler_product_matches_enumeration", std::abs(direct - ep.value) <= euler_tol,
                  "|direct - product| = " + format_number(std::abs(direct - ep.value)));
    }
    std::ostringstream csv;
    write_csv(r, csv);
    out.table("norm_series.csv", csv.str());
}

// Which key --horizon and --tol rewrite for each experiment.
struct OverrideRoute {
    const char* experiment;
    const char* horizon_key;
    const char* tol_key;
};

constexpr OverrideRoute kRoutes[] = {
    {"example1", "domain.horizon", "tolerances.neumann_tol"},
    {"tauber", "domain.horizon", "tolerances.epsilon"},
    {"abelian", "domain.horizon", "tolerances.epsilon"},
    {"corollary1", "halfline.extent", "tolerances.epsilon"},
    {"corollary2", "domain.horizon", "tolerances.epsilon"},
    {"corollary3", "domain.horizon", "tolerances.epsilon"},
    {"mercer", "mercer.length", "tolerances.roundtrip_tol"},
    {"dirichlet-check", "domain.horizon", "tolerances.grid_tol"},
    {"norm-series", "norm_series.max_bound", "tolerances.euler_tol"},
};

} // namespace

// ---------------------------------------------------------------------------

bool RunResult::passed() const {
    return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

RunResult run_scenario(ScenarioFile scenario, const RunOverrides& overrides) {
    RunResult result;
    {
        const Config c(scenario);
        result.experiment = c.str("experiment");
        result.name = c.str("name", "unnamed");
        c.str("description", "");
    }
    const OverrideRoute* route = nullptr;
    for (const auto& r : kRoutes)
        if (result.experiment == r.experiment) route = &r;
    if (!route) throw ParseError(scenario.source() + ": unknown experiment '" + result.experiment + "'");
    if (overrides.horizon) scenario.set(route->horizon_key, format_number(*overrides.horizon));
    if (overrides.tol) scenario.set(route->tol_key, format_number(*overrides.tol));

    const Config c(scenario);
    c.str("experiment");
    c.str("name", "");
    c.str("description", "");
    Output out(result);
    const std::string& e = result.experiment;
    if (e == "example1") run_example1(c, out);
    else if (e == "tauber" || e == "corollary2" || e == "corollary3") run_tauber_family(c, out, e);
    else if (e == "abelian") run_abelian(c, out);
    else if (e == "corollary1") run_corollary1(c, out);
    else if (e == "mercer") run_mercer(c, out);
    else if (e == "dirichlet-check") run_dirichlet_check(c, out);
    else run_norm_series(c, out);
    if (result.assertions.empty()) throw DomainError("scenario produced no assertions");
    return result;
}

std::string render_summary(const RunResult& r) {
    std::string s = "scenario=" + r.name + "\nexperiment=" + r.experiment + "\nstatus=" +
                    (r.passed() ? "pass" : "fail") + "\n";
    for (const auto& a : r.assertions) s += "assertion." + a.name + "=" + (a.passed ? "pass" : "fail") + "\n";
    for (const auto& [k, v] : r.summary) s += k + "=" + v + "\n";
    return s;
}

void write_outputs(const RunResult& r, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto write = [&](const std::string& file, const std::string& text) {
        std::ofstream out(dir / file, std::ios::binary);
        if (!out) throw Error("cannot write " + (dir / file).string());
        out << text;
    };
    write("summary.txt", render_summary(r));
    for (const auto& [file, csv] : r.tables) write(file, csv);
}

} // namespace tauber
