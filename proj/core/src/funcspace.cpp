#include "gruss/funcspace.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <memory>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>

namespace gruss {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Every corpus member is defined on [-1, inf), which covers [0,1], [-1,1] and [0,inf).
constexpr Interval kCorpusDomain{-1.0, kInf};

// Knots of the random Lipschitz member: -1, -0.9, ..., 5. The spacing is a
// multiple of every default grid spacing, so the extremes sit on the grids.
constexpr int kLipKnots = 61;
constexpr double kLipStart = -1.0;
constexpr double kLipStep = 0.1;

RealFunction make_lipschitz(std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    auto values = std::make_shared<std::array<double, kLipKnots>>();
    (*values)[0] = 0.0;
    for (int i = 1; i < kLipKnots; ++i) {
        // 53-bit uniform in [0,1), mapped to a slope in [-1,1).
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        (*values)[i] = (*values)[i - 1] + (2.0 * u - 1.0) * kLipStep;
    }
    Range r{*std::min_element(values->begin(), values->end()),
            *std::max_element(values->begin(), values->end())};
    auto eval = [values](double x) {
        const double s = (x - kLipStart) / kLipStep;
        if (s <= 0.0) return (*values)[0];
        if (s >= kLipKnots - 1) return (*values)[kLipKnots - 1];
        const auto i = static_cast<int>(std::floor(s));
        const double frac = s - i;
        return (*values)[i] + frac * ((*values)[i + 1] - (*values)[i]);
    };
    return RealFunction("lipschitz", kCorpusDomain, eval, r);
}

}  // namespace

RealFunction::RealFunction(std::string name, Interval domain, Evaluator eval,
                           std::optional<Range> published_range)
    : name_(std::move(name)), domain_(domain), eval_(std::move(eval)), range_(published_range) {
    if (!eval_) throw std::invalid_argument("RealFunction: empty evaluator");
    if (!(domain_.lo <= domain_.hi)) throw std::invalid_argument("RealFunction: empty domain");
}

double RealFunction::at(double x) const {
    if (!domain_.contains(x)) {
        throw std::invalid_argument("RealFunction '" + name_ + "': argument " +
                                    std::to_string(x) + " outside domain");
    }
    return eval_(x);
}

std::vector<double> RealFunction::sample(std::span<const double> xs) const {
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(at(x));
    return out;
}

NodeSet::NodeSet(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!std::isfinite(nodes_[i])) throw std::invalid_argument("NodeSet: non-finite node");
        if (i > 0 && !(nodes_[i] > nodes_[i - 1])) {
            throw std::invalid_argument("NodeSet: nodes must be strictly increasing");
        }
    }
}

NodeSet NodeSet::uniform(double lo, double hi, std::size_t count) {
    if (count == 0) throw std::invalid_argument("NodeSet::uniform: count must be positive");
    if (count == 1) {
        if (lo != hi) throw std::invalid_argument("NodeSet::uniform: one point needs lo == hi");
        return NodeSet({lo});
    }
    if (!(hi > lo) || !std::isfinite(hi)) {
        throw std::invalid_argument("NodeSet::uniform: need finite lo < hi");
    }
    std::vector<double> xs(count);
    const double span = hi - lo;
    const auto last = static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) xs[i] = lo + span * (static_cast<double>(i) / last);
    xs.back() = hi;
    return NodeSet(std::move(xs));
}

// ---------------------------------------------------------------------------

bool is_small_rational(double x) noexcept {
    if (!std::isfinite(x)) return false;
    constexpr double kMaxDen = 1048576.0;  // 2^20
    const double tol = 1e-14 * std::max(1.0, std::abs(x));
    double r = x;
    double h_prev = 1.0, h = std::floor(r);
    double k_prev = 0.0, k = 1.0;
    double frac = r - h;
    for (int iter = 0; iter < 64; ++iter) {
        if (std::abs(x - h / k) <= tol) return true;
        if (frac == 0.0) return true;
        r = 1.0 / frac;
        const double a = std::floor(r);
        frac = r - a;
        const double h_next = a * h + h_prev;
        const double k_next = a * k + k_prev;
        if (k_next > kMaxDen) return false;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
    return false;
}

const std::vector<std::string>& corpus_names() {
    static const std::vector<std::string> names{"e0",    "e1",   "e2",        "bump",
                                                "vee",   "sinpi", "expneg",   "step",
                                                "dirichlet", "lipschitz"};
    return names;
}

RealFunction corpus_function(std::string_view name, std::uint64_t seed) {
    using std::numbers::pi;
    if (name == "e0") return {"e0", kCorpusDomain, [](double) { return 1.0; }, Range{1.0, 1.0}};
    if (name == "e1") return {"e1", kCorpusDomain, [](double x) { return x; }};
    if (name == "e2") return {"e2", kCorpusDomain, [](double x) { return x * x; }};
    if (name == "bump") return {"bump", kCorpusDomain, [](double x) { return x * (1.0 - x); }};
    if (name == "vee") return {"vee", kCorpusDomain, [](double x) { return std::abs(x - 0.5); }};
    if (name == "sinpi") {
        return {"sinpi", kCorpusDomain, [](double x) { return std::sin(pi * x); },
                Range{-1.0, 1.0}};
    }
    if (name == "expneg") {
        return {"expneg", kCorpusDomain, [](double x) { return std::exp(-x); },
                Range{0.0, std::numbers::e}};
    }
    if (name == "step") {
        return {"step", kCorpusDomain, [](double x) { return std::floor(2.0 * x) / 2.0; }};
    }
    if (name == "dirichlet") {
        // Indicator of small-denominator rationals; equals 1 at every k/n node.
        return {"dirichlet", kCorpusDomain,
                [](double x) { return is_small_rational(x) ? 1.0 : 0.0; }, Range{0.0, 1.0}};
    }
    if (name == "lipschitz") return make_lipschitz(seed);
    if (name == "one_minus_e1") {
        return {"one_minus_e1", kCorpusDomain, [](double x) { return 1.0 - x; }};
    }
    throw std::invalid_argument("unknown corpus function '" + std::string(name) + "'");
}

std::vector<RealFunction> make_corpus(std::uint64_t seed) {
    std::vector<RealFunction> out;
    for (const auto& n : corpus_names()) out.push_back(corpus_function(n, seed));
    return out;
}

// ---------------------------------------------------------------------------

Range range_of_values(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("range of an empty node set");
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return {*lo, *hi};
}

double oscillation_of_values(std::span<const double> values) {
    return range_of_values(values).width();
}

double oscillation(const RealFunction& f, const NodeSet& nodes) {
    if (nodes.empty()) throw std::invalid_argument("oscillation: empty node set");
    const auto vals = f.sample(nodes.values());
    return oscillation_of_values(vals);
}

Range range_on_grid(const RealFunction& f, const NodeSet& grid) {
    if (grid.empty()) throw std::invalid_argument("range_on_grid: empty grid");
    const auto vals = f.sample(grid.values());
    return range_of_values(vals);
}

double modulus(const RealFunction& f, double t, const NodeSet& grid) {
    if (!(t >= 0.0)) throw std::invalid_argument("modulus: t must be nonnegative");
    if (grid.empty()) throw std::invalid_argument("modulus: empty grid");
    const auto xs = grid.values();
    const auto vals = f.sample(xs);
    const double reach = t + 1e-12 * (grid.back() - grid.front());
    double best = 0.0;
    std::size_t hi = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        hi = std::max(hi, i);
        while (hi + 1 < xs.size() && xs[hi + 1] - xs[i] <= reach) ++hi;
        for (std::size_t j = i + 1; j <= hi; ++j) best = std::max(best, std::abs(vals[j] - vals[i]));
    }
    return best;
}

double modulus_at_step(const RealFunction& f, double t, Interval domain, std::size_t grid_points,
                       std::span<const double> grid_values) {
    if (!(t >= 0.0)) throw std::invalid_argument("modulus_at_step: t must be nonnegative");
    if (!domain.bounded()) throw std::invalid_argument("modulus_at_step: unbounded domain");
    const double d = domain.diameter();
    const auto grid = NodeSet::uniform(domain, grid_points);
    const auto xs = grid.values();
    if (!grid_values.empty() && grid_values.size() != xs.size()) {
        throw std::invalid_argument("modulus_at_step: grid values do not match the grid");
    }
    if (t >= d) return grid_values.empty() ? range_on_grid(f, grid).width() : range_of_values(grid_values).width();
    double best = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        const double fx = grid_values.empty() ? f(x) : grid_values[i];
        if (x + t <= domain.hi) best = std::max(best, std::abs(f(x + t) - fx));
        if (x - t >= domain.lo) best = std::max(best, std::abs(fx - f(x - t)));
    }
    return best;
}

// ---------------------------------------------------------------------------

ModulusEnvelope::ModulusEnvelope(std::vector<double> ts, std::vector<double> omega,
                                 std::vector<HullVertex> hull)
    : ts_(std::move(ts)), omega_(std::move(omega)), hull_(std::move(hull)) {
    if (ts_.empty() || ts_.size() != omega_.size() || hull_.empty()) {
        throw std::invalid_argument("ModulusEnvelope: inconsistent samples");
    }
}

double ModulusEnvelope::majorant(double t) const {
    if (!(t >= 0.0)) throw std::invalid_argument("majorant: t must be nonnegative");
    if (t >= hull_.back().t) return hull_.back().value;
    // First vertex strictly to the right of t.
    const auto it = std::upper_bound(hull_.begin(), hull_.end(), t,
                                     [](double v, const HullVertex& h) { return v < h.t; });
    const auto& right = *it;
    const auto& left = *(it - 1);
    const double w = (t - left.t) / (right.t - left.t);
    return left.value + w * (right.value - left.value);
}

ModulusEnvelope concave_majorant(std::vector<double> ts, std::vector<double> omega) {
    if (ts.empty() || ts.size() != omega.size()) {
        throw std::invalid_argument("concave_majorant: need matching nonempty samples");
    }
    if (ts.front() != 0.0 || omega.front() != 0.0) {
        throw std::invalid_argument("concave_majorant: samples must start at (0, 0)");
    }
    for (std::size_t i = 1; i < ts.size(); ++i) {
        if (!(ts[i] > ts[i - 1])) {
            throw std::invalid_argument("concave_majorant: ts must be strictly increasing");
        }
    }
    std::vector<HullVertex> hull;
    hull.reserve(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const HullVertex p{ts[i], omega[i]};
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            // Drop b unless it lies strictly above the chord a-p.
            const double cross = (b.t - a.t) * (p.value - a.value) - (b.value - a.value) * (p.t - a.t);
            if (cross >= 0.0) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(p);
    }
    return ModulusEnvelope(std::move(ts), std::move(omega), std::move(hull));
}

ModulusEnvelope modulus_envelope(const RealFunction& f, Interval domain, std::size_t grid_points) {
    if (!domain.bounded()) throw std::invalid_argument("modulus_envelope: unbounded domain");
    if (grid_points < 2) throw std::invalid_argument("modulus_envelope: need at least 2 points");
    const auto grid = NodeSet::uniform(domain, grid_points);
    const auto vals = f.sample(grid.values());
    const std::size_t g = vals.size();
    const double h = domain.diameter() / static_cast<double>(g - 1);

    std::vector<double> ts(g), omega(g);
    double running = 0.0;
    for (std::size_t j = 0; j < g; ++j) {
        double dmax = 0.0;
        for (std::size_t i = 0; i + j < g; ++i) dmax = std::max(dmax, std::abs(vals[i + j] - vals[i]));
        running = std::max(running, dmax);
        ts[j] = static_cast<double>(j) * h;
        omega[j] = running;
    }
    ts.back() = domain.diameter();
    return concave_majorant(std::move(ts), std::move(omega));
}

}  // namespace gruss
