#include "gruss/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "gruss/special.hpp"

namespace gruss {

namespace {

constexpr double kRefineBand = 1e-4;

double node_osc(std::span<const double> v) { return oscillation_of_values(v); }

Range join(Range r, std::span<const double> v) {
    for (double a : v) {
        r.min = std::min(r.min, a);
        r.max = std::max(r.max, a);
    }
    return r;
}

BoundResult blank(const OperatorSpec& spec, double x, const FunctionProfile& pf,
                  const FunctionProfile& pg) {
    BoundResult r;
    r.op = spec;
    r.x = x;
    r.f = pf.name;
    r.g = pg.name;
    return r;
}

}  // namespace

double gruss_quarter(double m, double M, double p, double P) {
    if (!(m <= M) || !(p <= P)) throw std::invalid_argument("gruss_quarter: need m <= M and p <= P");
    return 0.25 * (M - m) * (P - p);
}

double mercer_bound_values(std::span<const double> w, std::span<const double> f,
                           std::span<const double> g) {
    const double F = apply_values(w, f);
    const double G = apply_values(w, g);
    double dev_f = 0.0, dev_g = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        dev_f += w[k] * std::abs(f[k] - F);
        dev_g += w[k] * std::abs(g[k] - G);
    }
    return 0.5 * std::min(node_osc(f) * dev_g, node_osc(g) * dev_f);
}

double mercer_bound(const PointFunctional& L, const RealFunction& f, const RealFunction& g) {
    if (!L.positive()) throw std::invalid_argument("mercer_bound: functional must be positive");
    const auto fv = f.sample(L.nodes().values());
    const auto gv = g.sample(L.nodes().values());
    return mercer_bound_values(L.weights(), fv, gv);
}

double new_bound_positive(const PointFunctional& L, const RealFunction& f, const RealFunction& g) {
    if (!L.positive()) {
        throw std::invalid_argument("new_bound_positive: functional has negative weights, use new_bound_signed");
    }
    return 0.5 * (1.0 - L.sum_of_squares()) * oscillation(f, L.nodes()) * oscillation(g, L.nodes());
}

double new_bound_signed(const PointFunctional& L, const RealFunction& f, const RealFunction& g) {
    return L.abs_pair_sum() * oscillation(f, L.nodes()) * oscillation(g, L.nodes());
}

double specialized_rhs(Family family, int n, std::optional<double> x) {
    if (n < 1) throw std::invalid_argument("specialized_rhs: n must be positive");
    switch (family) {
        case Family::bernstein:
        case Family::bbh:
            return 0.5 * (1.0 - central_binom_scaled(n));
        case Family::sdelta:
            return 0.25;
        case Family::szasz:
            return 0.5;
        case Family::baskakov:
            return x ? 0.5 * (1.0 - theta_baskakov(n, *x)) : 0.5;
        case Family::king:
            return n == 1 ? 0.25 : n / (2.0 * (n + 1.0));
        default:
            break;
    }
    throw std::invalid_argument("specialized_rhs: no closed-form majorant for " +
                                std::string(family_name(family)));
}

double coarse_positive_coefficient(std::size_t node_count) {
    if (node_count == 0) throw std::invalid_argument("coarse_positive_coefficient: no nodes");
    return 0.5 * (1.0 - 1.0 / static_cast<double>(node_count));
}

bool has_classical_bound(Family family) noexcept {
    return family == Family::bernstein || family == Family::sdelta || family == Family::king;
}

namespace {

template <class OmegaF, class OmegaG>
ClassicalBound classical_from(Family family, int n, double x, OmegaF&& of, OmegaG&& og) {
    if (!has_classical_bound(family)) {
        throw std::invalid_argument("classical_ws_bound: available for bernstein, sdelta, king only");
    }
    ClassicalBound b;
    b.step = 2.0 * std::sqrt(second_moment(family, n, x));
    b.rhs = 0.25 * of(b.step) * og(b.step);
    if (family == Family::bernstein) b.xfree_step = 1.0 / std::sqrt(static_cast<double>(n));
    if (family == Family::sdelta) b.xfree_step = 1.0 / n;
    if (b.xfree_step) b.xfree_rhs = 0.25 * of(*b.xfree_step) * og(*b.xfree_step);
    return b;
}

}  // namespace

double omega_tilde(const FunctionProfile& p, double t) {
    if (!p.envelope) throw std::invalid_argument("omega_tilde: profile has no modulus envelope");
    double v = p.envelope->majorant(t);
    if (p.source) v = std::max(v, modulus_at_step(*p.source, t, p.domain, p.grid_points, p.grid_values));
    return v;
}

double OmegaCache::get(const FunctionProfile& p, double t) {
    for (const auto& e : entries_) {
        if (e.profile == &p && e.t == t) return e.value;
    }
    const double v = omega_tilde(p, t);
    entries_.push_back({&p, t, v});
    return v;
}

ClassicalBound classical_ws_bound(Family family, int n, double x, const ModulusEnvelope& ef,
                                  const ModulusEnvelope& eg) {
    auto of = [&](double t) { return ef.majorant(t); };
    auto og = [&](double t) { return eg.majorant(t); };
    return classical_from(family, n, x, of, og);
}

ClassicalBound classical_ws_bound(Family family, int n, double x, const FunctionProfile& pf,
                                  const FunctionProfile& pg) {
    auto of = [&](double t) { return omega_tilde(pf, t); };
    auto og = [&](double t) { return omega_tilde(pg, t); };
    return classical_from(family, n, x, of, og);
}

ClassicalBound classical_ws_bound(Family family, int n, double x, const RealFunction& f,
                                  const RealFunction& g, std::size_t grid_points) {
    const Interval unit{0.0, 1.0};
    return classical_ws_bound(family, n, x, make_profile(f, unit, grid_points, true),
                              make_profile(g, unit, grid_points, true));
}

// ---------------------------------------------------------------------------

FunctionProfile make_profile(const RealFunction& f, Interval domain, std::size_t grid_points,
                             bool with_envelope) {
    FunctionProfile p;
    p.name = f.name();
    p.grid_range = range_on_grid(f, NodeSet::uniform(domain, grid_points));
    if (with_envelope) {
        p.envelope = modulus_envelope(f, domain, grid_points);
        p.source = f;
        p.grid_values = f.sample(NodeSet::uniform(domain, grid_points).values());
        p.domain = domain;
        p.grid_points = grid_points;
    }
    return p;
}

BoundResult evaluate_cell(const OperatorSpec& spec, double x, const PointFunctional& L,
                          std::span<const double> fv, std::span<const double> gv,
                          const FunctionProfile& pf, const FunctionProfile& pg, OmegaCache* cache) {
    namespace bn = bound_names;
    const auto w = L.weights();
    if (fv.size() != w.size() || gv.size() != w.size()) {
        throw std::invalid_argument("evaluate_cell: node values do not match the functional");
    }
    BoundResult r = blank(spec, x, pf, pg);
    r.T = chebyshev_T_values(w, fv, gv);
    r.lhs = std::abs(r.T);

    const double osc_f = node_osc(fv);
    const double osc_g = node_osc(gv);
    const double pair_sum = L.abs_pair_sum();
    const Family fam = spec.family;

    if (fam == Family::lagrange_cheb) {
        r.bounds.push_back({bn::new_signed, pair_sum * osc_f * osc_g, 0.0});
        const double om_f = join(pf.grid_range, fv).width();
        const double om_g = join(pg.grid_range, gv).width();
        const auto c = lagrange_classical_from_omega(spec.n, om_f, om_g);
        r.bounds.push_back({bn::lagrange_norm, c.norm_form, 0.0});
        r.bounds.push_back({bn::lagrange_log, c.log_form, 0.0});
        r.bounds.push_back({bn::log_displayed, c.log_form_displayed, 0.0});
        return r;
    }

    double slack = 0.0;
    const double glob_f = join(pf.grid_range, fv).width();
    const double glob_g = join(pg.grid_range, gv).width();
    if (family_is_truncated(fam)) {
        slack = 3.0 * L.tail_mass_bound() * std::max(osc_f, glob_f) * std::max(osc_g, glob_g);
    }
    const double sumsq = L.sum_of_squares();
    const double pointwise = 0.5 * (1.0 - sumsq);

    r.bounds.push_back({bn::gruss_quarter, 0.25 * osc_f * osc_g, slack});
    r.bounds.push_back({bn::mercer, mercer_bound_values(w, fv, gv), slack});
    r.bounds.push_back({bn::new_positive, pointwise * osc_f * osc_g, slack});
    r.bounds.push_back({bn::new_signed, pair_sum * osc_f * osc_g, slack});
    r.bounds.push_back({bn::coarse_positive, coarse_positive_coefficient(L.size()) * osc_f * osc_g, slack});
    if (fam != Family::two_point) {
        const auto px = fam == Family::baskakov ? std::optional<double>(x) : std::nullopt;
        r.bounds.push_back({bn::specialized, specialized_rhs(fam, spec.n, px) * osc_f * osc_g, slack});
    }
    if (family_is_truncated(fam)) {
        r.bounds.push_back({bn::new_pos_global, pointwise * glob_f * glob_g, slack});
    }
    if (has_classical_bound(fam)) {
        if (!pf.envelope || !pg.envelope) {
            throw std::invalid_argument("evaluate_cell: classical bound needs modulus envelopes");
        }
        auto c = classical_ws_bound(fam, spec.n, x, *pf.envelope, *pg.envelope);
        // Interpolating the sampled hull undershoots off the grid; resample when it matters.
        auto refine = [&](double t, double rhs) {
            if (rhs - r.lhs >= kRefineBand * rhs) return rhs;
            auto omega = [&](const FunctionProfile& p) { return cache ? cache->get(p, t) : omega_tilde(p, t); };
            const double of = omega(pf);
            const double og = &pf == &pg ? of : omega(pg);
            return 0.25 * of * og;
        };
        c.rhs = refine(c.step, c.rhs);
        if (c.xfree_rhs) c.xfree_rhs = refine(*c.xfree_step, *c.xfree_rhs);
        r.bounds.push_back({bn::classical_ws, c.rhs, 0.0});
        if (c.xfree_rhs) r.bounds.push_back({bn::classical_xfree, *c.xfree_rhs, 0.0});
    }
    return r;
}

BoundResult evaluate_measure_cell(double a, const MeasureMoments& coarse, const MeasureMoments& fine,
                                  const FunctionProfile& pf, const FunctionProfile& pg) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("measure_example: a must lie in [0,1]");
    OperatorSpec spec{Family::measure_example, 1, a};
    BoundResult r = blank(spec, a, pf, pg);
    r.T = measure_T(coarse, a);
    r.lhs = std::abs(r.T);
    const double quad_tol = 4.0 * std::abs(r.T - measure_T(fine, a)) + 1e-12;
    // For a > 0 the support of mu x mu is all of [0,1]^2.
    const double osc_f = a > 0.0 ? pf.grid_range.width() : 0.0;
    const double osc_g = a > 0.0 ? pg.grid_range.width() : 0.0;
    r.bounds.push_back({bound_names::measure, 0.5 * a * (2.0 - a) * osc_f * osc_g, quad_tol});
    r.bounds.push_back({bound_names::gruss_quarter, 0.25 * osc_f * osc_g, quad_tol});
    return r;
}

BoundResult evaluate_bounds(const OperatorSpec& spec, double x, const RealFunction& f,
                            const RealFunction& g, const EvalOptions& opt) {
    spec.validate();
    const Interval domain = family_domain(spec.family, opt.x_max);
    const bool env = has_classical_bound(spec.family);
    const auto pf = make_profile(f, domain, opt.grid_points, env);
    const auto pg = make_profile(g, domain, opt.grid_points, env);
    if (spec.family == Family::measure_example) {
        const auto coarse = measure_moments(f, g, opt.quad_n);
        const auto fine = measure_moments(f, g, 2 * opt.quad_n);
        return evaluate_measure_cell(spec.param, coarse, fine, pf, pg);
    }
    const double point = family_is_parametric(spec.family) ? spec.param : x;
    const auto L = make_functional(spec, point, opt.tail_eps);
    const auto fv = f.sample(L.nodes().values());
    const auto gv = g.sample(L.nodes().values());
    return evaluate_cell(spec, point, L, fv, gv, pf, pg);
}

}  // namespace gruss
