#include "gruss/operators.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "gruss/lagrange.hpp"
#include "numeric_util.hpp"

namespace gruss {

namespace {

constexpr std::array kFamilies{Family::bernstein, Family::sdelta,     Family::szasz,
                               Family::baskakov,  Family::bbh,        Family::king,
                               Family::two_point, Family::measure_example,
                               Family::lagrange_cheb};

constexpr std::array<std::string_view, kFamilies.size()> kFamilyNames{
    "bernstein", "sdelta", "szasz", "baskakov", "bbh", "king", "two_point", "measure_example",
    "lagrange_cheb"};

constexpr std::size_t kMaxSeriesTerms = 50'000'000;

void require_unit(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument(std::string(what) + ": x must lie in [0,1]");
    }
}

void require_degree(int n, const char* what) {
    if (n < 1) throw std::invalid_argument(std::string(what) + ": n must be positive");
}

std::vector<double> lattice_nodes(std::size_t count, int n) {
    std::vector<double> nodes(count);
    for (std::size_t k = 0; k < count; ++k) nodes[k] = static_cast<double>(k) / n;
    return nodes;
}

// Binomial(n, p) probabilities, grown outward from the mode by the term
// ratios and normalized at the end, so no factorial or power can overflow.
std::vector<double> binomial_weights(int n, double p) {
    std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
    if (p <= 0.0) {
        w.front() = 1.0;
        return w;
    }
    if (p >= 1.0) {
        w.back() = 1.0;
        return w;
    }
    const double odds = p / (1.0 - p);
    const int mode = std::clamp(static_cast<int>(std::floor((n + 1) * p)), 0, n);
    w[mode] = 1.0;
    for (int k = mode; k < n; ++k) w[k + 1] = w[k] * (static_cast<double>(n - k) / (k + 1)) * odds;
    for (int k = mode; k > 0; --k) w[k - 1] = w[k] * (static_cast<double>(k) / (n - k + 1)) / odds;
    const double total = detail::compensated_sum(w);
    for (double& v : w) v /= total;
    return w;
}

// Truncated unimodal series u_0..u_K with u_{k+1} = u_k * up(k) and
// u_{k-1} = u_k * down(k), where up(k) is nonincreasing in k. Stops at the
// first K past the mode for which the geometric tail bound
// u_{K+1} / (1 - up(K+1)) <= tail_eps * sum_{k<=K} u_k, then normalizes.
template <class Up, class Down>
std::vector<double> truncated_weights(std::size_t mode, Up up, Down down, double tail_eps) {
    std::vector<double> lower(mode + 1, 0.0);
    lower[mode] = 1.0;
    for (std::size_t k = mode; k > 0; --k) lower[k - 1] = lower[k] * down(k);

    std::vector<double> w = std::move(lower);
    double partial = detail::compensated_sum(w);
    std::size_t k = mode;
    while (true) {
        const double next = w[k] * up(k);
        const double next_ratio = up(k + 1);
        if (next_ratio < 1.0 && next <= tail_eps * partial * (1.0 - next_ratio)) break;
        w.push_back(next);
        partial += next;
        ++k;
        if (w.size() > kMaxSeriesTerms) {
            throw std::runtime_error("series truncation exceeded the term budget");
        }
    }
    const double total = detail::compensated_sum(w);
    for (double& v : w) v /= total;
    return w;
}

}  // namespace

// ---------------------------------------------------------------------------

std::span<const Family> all_families() noexcept { return kFamilies; }

std::string_view family_name(Family f) noexcept {
    return kFamilyNames[static_cast<std::size_t>(f)];
}

std::optional<Family> parse_family(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kFamilies.size(); ++i) {
        if (kFamilyNames[i] == name) return kFamilies[i];
    }
    return std::nullopt;
}

Interval family_domain(Family f, double x_max) {
    switch (f) {
        case Family::szasz:
        case Family::baskakov:
        case Family::bbh:
            if (!(x_max > 0.0) || !std::isfinite(x_max)) {
                throw std::invalid_argument("x_max must be positive and finite");
            }
            return {0.0, x_max};
        case Family::lagrange_cheb:
            return {-1.0, 1.0};
        default:
            return {0.0, 1.0};
    }
}

bool family_is_positive(Family f) noexcept { return f != Family::lagrange_cheb; }

bool family_is_truncated(Family f) noexcept {
    return f == Family::szasz || f == Family::baskakov;
}

bool family_is_parametric(Family f) noexcept {
    return f == Family::two_point || f == Family::measure_example;
}

OperatorSpec OperatorSpec::parse(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(':', start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    if (parts.size() < 2 || parts.size() > 3) {
        throw std::invalid_argument("operator spec must look like family:n[:param], got '" +
                                    std::string(text) + "'");
    }
    const auto fam = parse_family(parts[0]);
    if (!fam) throw std::invalid_argument("unknown operator family '" + std::string(parts[0]) + "'");
    OperatorSpec spec;
    spec.family = *fam;
    {
        const auto s = parts[1];
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), spec.n);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw std::invalid_argument("bad degree in operator spec '" + std::string(text) + "'");
        }
    }
    if (parts.size() == 3) {
        const std::string s(parts[2]);
        std::size_t used = 0;
        try {
            spec.param = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || s.empty()) {
            throw std::invalid_argument("bad parameter in operator spec '" + std::string(text) + "'");
        }
    } else if (family_is_parametric(spec.family)) {
        throw std::invalid_argument(std::string(family_name(spec.family)) +
                                    " needs a parameter: family:n:a");
    }
    spec.validate();
    return spec;
}

std::string OperatorSpec::to_string() const {
    std::string out = std::string(family_name(family)) + ":" + std::to_string(n);
    if (family_is_parametric(family)) {
        char buf[32];
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, param);
        out += ":";
        out.append(buf, ptr);
    }
    return out;
}

void OperatorSpec::validate() const {
    require_degree(n, "OperatorSpec");
    if (family_is_parametric(family) && !(param >= 0.0 && param <= 1.0)) {
        throw std::invalid_argument("OperatorSpec: parameter a must lie in [0,1]");
    }
}

// ---------------------------------------------------------------------------

PointFunctional::PointFunctional(NodeSet nodes, std::vector<double> weights,
                                 double tail_mass_bound)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), tail_(tail_mass_bound) {
    if (nodes_.size() != weights_.size() || nodes_.empty()) {
        throw std::invalid_argument("PointFunctional: nodes and weights must align");
    }
    if (!(tail_ >= 0.0)) throw std::invalid_argument("PointFunctional: negative tail bound");
    positive_ = std::all_of(weights_.begin(), weights_.end(), [](double w) { return w >= -1e-15; });
}

double PointFunctional::weight_sum() const noexcept { return detail::compensated_sum(weights_); }

double PointFunctional::sum_of_squares() const noexcept {
    double s = 0.0;
    for (double w : weights_) s += w * w;
    return s;
}

double PointFunctional::abs_sum() const noexcept {
    double s = 0.0;
    for (double w : weights_) s += std::abs(w);
    return s;
}

double PointFunctional::abs_pair_sum() const noexcept {
    const double a = abs_sum();
    return std::max(0.0, 0.5 * (a * a - sum_of_squares()));
}

PointFunctional PointFunctional::with_weight(std::size_t i, double w) const {
    auto copy = weights_;
    copy.at(i) = w;
    return PointFunctional(nodes_, std::move(copy), tail_);
}

// ---------------------------------------------------------------------------

PointFunctional bernstein_at(int n, double x) {
    require_degree(n, "bernstein_at");
    require_unit(x, "bernstein_at");
    auto w = binomial_weights(n, x);
    auto nodes = lattice_nodes(w.size(), n);
    return PointFunctional(NodeSet(std::move(nodes)), std::move(w));
}

PointFunctional sdelta_at(int n, double x) {
    require_degree(n, "sdelta_at");
    require_unit(x, "sdelta_at");
    std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
    const double nx = n * x;
    const double nearest = std::round(nx);
    if (std::abs(nx - nearest) <= 1e-12 * std::max(1.0, nx)) {
        w[static_cast<std::size_t>(nearest)] = 1.0;  // interpolation node
    } else {
        const int k = std::clamp(static_cast<int>(std::ceil(nx)), 1, n);
        w[k - 1] = k - nx;
        w[k] = nx - (k - 1);
    }
    auto nodes = lattice_nodes(w.size(), n);
    return PointFunctional(NodeSet(std::move(nodes)), std::move(w));
}

PointFunctional szasz_at(int n, double x, double tail_eps) {
    require_degree(n, "szasz_at");
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("szasz_at: x must be >= 0");
    if (!(tail_eps > 0.0)) throw std::invalid_argument("szasz_at: tail_eps must be positive");
    const double lambda = n * x;
    const auto mode = static_cast<std::size_t>(std::floor(lambda));
    auto w = truncated_weights(
        mode, [lambda](std::size_t k) { return lambda / static_cast<double>(k + 1); },
        [lambda](std::size_t k) { return static_cast<double>(k) / lambda; }, tail_eps);
    auto nodes = lattice_nodes(w.size(), n);
    return PointFunctional(NodeSet(std::move(nodes)), std::move(w), tail_eps);
}

PointFunctional baskakov_at(int n, double x, double tail_eps) {
    require_degree(n, "baskakov_at");
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("baskakov_at: x must be >= 0");
    if (!(tail_eps > 0.0)) throw std::invalid_argument("baskakov_at: tail_eps must be positive");
    const double q = x / (1.0 + x);
    const double start = std::ceil(n * x - 1.0 - x);
    const auto mode = static_cast<std::size_t>(std::max(0.0, start));
    auto w = truncated_weights(
        mode,
        [n, q](std::size_t k) {
            return (static_cast<double>(n) + k) / (static_cast<double>(k) + 1.0) * q;
        },
        [n, q](std::size_t k) {
            return static_cast<double>(k) / ((static_cast<double>(n) + k - 1.0) * q);
        },
        tail_eps);
    auto nodes = lattice_nodes(w.size(), n);
    return PointFunctional(NodeSet(std::move(nodes)), std::move(w), tail_eps);
}

PointFunctional bbh_at(int n, double x) {
    require_degree(n, "bbh_at");
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("bbh_at: x must be >= 0");
    auto w = binomial_weights(n, x / (1.0 + x));
    std::vector<double> nodes(w.size());
    for (int k = 0; k <= n; ++k) nodes[k] = static_cast<double>(k) / (n - k + 1);
    return PointFunctional(NodeSet(std::move(nodes)), std::move(w));
}

double r_star(int n, double x) {
    require_degree(n, "r_star");
    require_unit(x, "r_star");
    if (n == 1) return x * x;
    const double c = static_cast<double>(n) / (n - 1);
    const double b = 1.0 / (2.0 * (n - 1));
    // -b + sqrt(c x^2 + b^2), rationalized to avoid cancellation at small x.
    double r = c * x * x / (b + std::sqrt(c * x * x + b * b));
    // One Newton step on r/n + (n-1)/n r^2 - x^2.
    const double resid = r / n + (static_cast<double>(n - 1) / n) * r * r - x * x;
    const double slope = 1.0 / n + 2.0 * (static_cast<double>(n - 1) / n) * r;
    r -= resid / slope;
    return std::clamp(r, 0.0, 1.0);
}

PointFunctional king_at(int n, double x) {
    require_degree(n, "king_at");
    require_unit(x, "king_at");
    auto w = binomial_weights(n, r_star(n, x));
    auto nodes = lattice_nodes(w.size(), n);
    return PointFunctional(NodeSet(std::move(nodes)), std::move(w));
}

PointFunctional two_point(double a) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("two_point: a must lie in [0,1]");
    return PointFunctional(NodeSet({0.0, 1.0}), {1.0 - a, a});
}

PointFunctional make_functional(const OperatorSpec& spec, double x, double tail_eps) {
    spec.validate();
    switch (spec.family) {
        case Family::bernstein: return bernstein_at(spec.n, x);
        case Family::sdelta: return sdelta_at(spec.n, x);
        case Family::szasz: return szasz_at(spec.n, x, tail_eps);
        case Family::baskakov: return baskakov_at(spec.n, x, tail_eps);
        case Family::bbh: return bbh_at(spec.n, x);
        case Family::king: return king_at(spec.n, x);
        case Family::two_point: return two_point(spec.param);
        case Family::lagrange_cheb: return lagrange_basis(spec.n, x);
        case Family::measure_example: break;
    }
    throw std::invalid_argument("measure_example is not a discrete point functional");
}

// ---------------------------------------------------------------------------

double apply_values(std::span<const double> w, std::span<const double> f) {
    double s = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * f[k];
    return s;
}

double chebyshev_T_values(std::span<const double> w, std::span<const double> f,
                          std::span<const double> g) {
    double lf = 0.0, lg = 0.0, lfg = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        lf += w[k] * f[k];
        lg += w[k] * g[k];
        lfg += w[k] * f[k] * g[k];
    }
    return lfg - lf * lg;
}

double pairwise_identity_values(std::span<const double> w, std::span<const double> f,
                                std::span<const double> g) {
    double s = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k] == 0.0) continue;
        double inner = 0.0;
        for (std::size_t l = k + 1; l < w.size(); ++l) inner += w[l] * (f[k] - f[l]) * (g[k] - g[l]);
        s += w[k] * inner;
    }
    return s;
}

double apply(const PointFunctional& L, const RealFunction& f) {
    const auto fv = f.sample(L.nodes().values());
    return apply_values(L.weights(), fv);
}

double chebyshev_T(const PointFunctional& L, const RealFunction& f, const RealFunction& g) {
    const auto fv = f.sample(L.nodes().values());
    const auto gv = g.sample(L.nodes().values());
    return chebyshev_T_values(L.weights(), fv, gv);
}

double pairwise_identity(const PointFunctional& L, const RealFunction& f, const RealFunction& g) {
    const auto fv = f.sample(L.nodes().values());
    const auto gv = g.sample(L.nodes().values());
    return pairwise_identity_values(L.weights(), fv, gv);
}

// ---------------------------------------------------------------------------

double simpson(const std::function<double(double)>& h, double lo, double hi, int panels) {
    if (panels < 1) throw std::invalid_argument("simpson: need at least one panel");
    const int m = 2 * panels;
    const double step = (hi - lo) / m;
    double odd = 0.0, even = 0.0;
    for (int i = 1; i < m; ++i) {
        const double v = h(lo + step * i);
        (i % 2 ? odd : even) += v;
    }
    return step / 3.0 * (h(lo) + h(hi) + 4.0 * odd + 2.0 * even);
}

MeasureMoments measure_moments(const RealFunction& f, const RealFunction& g, int quad_n) {
    if (quad_n < 1) throw std::invalid_argument("measure_example: quad_n must be positive");
    if (!f.domain().contains(0.0) || !f.domain().contains(1.0) || !g.domain().contains(0.0) ||
        !g.domain().contains(1.0)) {
        throw std::invalid_argument("measure_example: f and g must be defined on [0,1]");
    }
    MeasureMoments m;
    m.int_f = simpson([&](double t) { return f(t); }, 0.0, 1.0, quad_n);
    m.int_g = simpson([&](double t) { return g(t); }, 0.0, 1.0, quad_n);
    m.int_fg = simpson([&](double t) { return f(t) * g(t); }, 0.0, 1.0, quad_n);
    m.f_half = f(0.5);
    m.g_half = g(0.5);
    return m;
}

double measure_T(const MeasureMoments& m, double a) noexcept {
    const double lf = a * m.int_f + (1.0 - a) * m.f_half;
    const double lg = a * m.int_g + (1.0 - a) * m.g_half;
    const double lfg = a * m.int_fg + (1.0 - a) * m.f_half * m.g_half;
    return lfg - lf * lg;
}

MeasureExampleResult measure_example_T(double a, const RealFunction& f, const RealFunction& g,
                                       int quad_n, std::size_t grid_points) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("measure_example: a must lie in [0,1]");
    const auto coarse = measure_moments(f, g, quad_n);
    const auto fine = measure_moments(f, g, 2 * quad_n);
    MeasureExampleResult r;
    r.T = measure_T(coarse, a);
    r.quad_tolerance = 4.0 * std::abs(r.T - measure_T(fine, a)) + 1e-12;
    if (a > 0.0) {
        const auto grid = NodeSet::uniform(0.0, 1.0, grid_points);
        r.osc_f = oscillation(f, grid);
        r.osc_g = oscillation(g, grid);
    }
    r.rhs = 0.5 * a * (2.0 - a) * r.osc_f * r.osc_g;
    return r;
}

}  // namespace gruss
