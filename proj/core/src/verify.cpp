#include "gruss/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string_view>
#include <thread>

#include "gruss/lagrange.hpp"
#include "gruss/special.hpp"

#ifndef GRUSS_VERSION
#define GRUSS_VERSION "0.1.0"
#endif

namespace gruss {

namespace {

namespace bn = bound_names;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double rel_scale(double a, double b) { return std::max({1.0, std::abs(a), std::abs(b)}); }

Witness cell_witness(const BoundResult& r) {
    Witness w;
    w.labels = {{"operator", r.op.to_string()}, {"f", r.f}, {"g", r.g}};
    w.values = {{"x", r.x}, {"T", r.T}, {"lhs", r.lhs}};
    for (const auto& b : r.bounds) w.values.emplace_back("rhs." + std::string(b.name), b.rhs);
    return w;
}

Witness point_witness(const OperatorSpec& spec, double x, std::initializer_list<std::pair<std::string, double>> vals,
                      std::string f = {}, std::string g = {}) {
    Witness w;
    w.labels.emplace_back("operator", spec.to_string());
    if (!f.empty()) w.labels.emplace_back("f", std::move(f));
    if (!g.empty()) w.labels.emplace_back("g", std::move(g));
    w.values.emplace_back("x", x);
    for (const auto& v : vals) w.values.push_back(v);
    return w;
}

Witness simple_witness(std::initializer_list<std::pair<std::string, double>> vals) {
    Witness w;
    w.values.assign(vals.begin(), vals.end());
    return w;
}

// Tallies keyed by (suite, check) literals; named "family/check" when exported.
class Ledger {
public:
    Tally& at(std::string_view suite, std::string_view check) {
        auto& t = map_[{suite, check}];
        if (t.name.empty()) t.name = std::string(check);
        return t;
    }
    const std::map<std::pair<std::string_view, std::string_view>, Tally>& entries() const { return map_; }

private:
    std::map<std::pair<std::string_view, std::string_view>, Tally> map_;
};

namespace suites {
inline constexpr std::string_view bound_sweep = "bound_sweep";
inline constexpr std::string_view partition = "partition_of_unity";
inline constexpr std::string_view reproduction = "linear_reproduction";
inline constexpr std::string_view identity = "identity_equivalence";
inline constexpr std::string_view signs = "chebyshev_signs";
inline constexpr std::string_view dominance = "dominance_lattice";
inline constexpr std::string_view sdelta_remark = "sdelta_remark";
}  // namespace suites

struct Task {
    Family family;
    int n;
};

struct TaskOut {
    std::string prefix;
    Ledger ledger;
    double max_lhs = 0.0;
};

struct Shared {
    const SuiteConfig* cfg = nullptr;
    bool bounds = true;
    std::vector<RealFunction> functions;
    std::map<Family, std::vector<FunctionProfile>> profiles;
};

std::vector<std::string_view> required_bounds(Family fam) {
    if (fam == Family::lagrange_cheb) return {bn::new_signed, bn::lagrange_norm, bn::lagrange_log, bn::log_displayed};
    if (fam == Family::measure_example) return {bn::measure, bn::gruss_quarter};
    std::vector<std::string_view> out{bn::gruss_quarter, bn::mercer, bn::new_positive, bn::new_signed,
                                      bn::coarse_positive};
    if (fam != Family::two_point) out.push_back(bn::specialized);
    if (family_is_truncated(fam)) out.push_back(bn::new_pos_global);
    if (has_classical_bound(fam)) out.push_back(bn::classical_ws);
    if (fam == Family::bernstein || fam == Family::sdelta) out.push_back(bn::classical_xfree);
    return out;
}

void record_bounds(Ledger& led, const BoundResult& r, double rel) {
    for (const auto& b : r.bounds) {
        led.at(suites::bound_sweep, b.name).record(r.margin(b), r.tolerance(b, rel), [&] { return cell_witness(r); });
    }
}

void run_measure_task(const Shared& sh, TaskOut& out) {
    const auto& cfg = *sh.cfg;
    auto& led = out.ledger;
    const auto& fns = sh.functions;
    const auto& prof = sh.profiles.at(Family::measure_example);
    const std::size_t F = fns.size();
    const auto xs = NodeSet::uniform(0.0, 1.0, cfg.x_grid);

    const auto e1 = corpus_function("e1");
    const auto e2 = corpus_function("e2");
    const auto anti = corpus_function("one_minus_e1");
    const auto e0 = corpus_function("e0");
    const auto m12 = measure_moments(e1, e2, cfg.quad_n);
    const auto m11 = measure_moments(e1, e1, cfg.quad_n);
    const auto manti = measure_moments(e1, anti, cfg.quad_n);
    const auto m00 = measure_moments(e0, e0, cfg.quad_n);

    std::vector<MeasureMoments> coarse, fine;
    if (sh.bounds) {
        coarse.reserve(F * F);
        fine.reserve(F * F);
        for (std::size_t i = 0; i < F; ++i) {
            for (std::size_t j = 0; j < F; ++j) {
                coarse.push_back(measure_moments(fns[i], fns[j], cfg.quad_n));
                fine.push_back(measure_moments(fns[i], fns[j], 2 * cfg.quad_n));
            }
        }
    }
    const double tol_sign = cfg.tol.sign;
    for (double a : xs.values()) {
        const OperatorSpec spec{Family::measure_example, 1, a};
        const double mass = a * m00.int_f + (1.0 - a) * m00.f_half;
        led.at(suites::partition, "sum").record(-std::abs(mass - 1.0), cfg.tol.partition,
                                                [&] { return point_witness(spec, a, {{"mass", mass}}); });
        const double t12 = measure_T(m12, a), t11 = measure_T(m11, a), ta = measure_T(manti, a);
        led.at(suites::signs, "comonotone").record(t12, tol_sign, [&] { return point_witness(spec, a, {{"T", t12}}, "e1", "e2"); });
        led.at(suites::signs, "comonotone").record(t11, tol_sign, [&] { return point_witness(spec, a, {{"T", t11}}, "e1", "e1"); });
        led.at(suites::signs, "antimonotone").record(-ta, tol_sign,
                                                     [&] { return point_witness(spec, a, {{"T", ta}}, "e1", "one_minus_e1"); });
        if (!sh.bounds) continue;
        for (std::size_t i = 0; i < F; ++i) {
            for (std::size_t j = 0; j < F; ++j) {
                const auto r = evaluate_measure_cell(a, coarse[i * F + j], fine[i * F + j], prof[i], prof[j]);
                out.max_lhs = std::max(out.max_lhs, r.lhs);
                record_bounds(led, r, cfg.tol.relative);
            }
        }
    }
}

void run_discrete_task(const Shared& sh, const Task& task, TaskOut& out) {
    const auto& cfg = *sh.cfg;
    auto& led = out.ledger;
    const Family fam = task.family;
    const bool parametric = family_is_parametric(fam);
    const bool positive = family_is_positive(fam);
    const bool exact = !family_is_truncated(fam);
    const Interval domain = parametric ? Interval{0.0, 1.0} : family_domain(fam, cfg.x_max);
    const auto xs = NodeSet::uniform(domain, cfg.x_grid);
    const auto& fns = sh.functions;
    const std::size_t F = fns.size();
    const auto& prof = sh.profiles.at(fam);
    const double rel = cfg.tol.relative;

    std::vector<std::vector<double>> vals(F);
    OmegaCache omega_cache;
    for (double x : xs.values()) {
        const OperatorSpec spec{fam, task.n, parametric ? x : 0.0};
        std::optional<PointFunctional> built;
        try {
            auto L = make_functional(spec, x, cfg.tail_eps);
            if (cfg.functional_hook) L = cfg.functional_hook(spec, x, std::move(L));
            built.emplace(std::move(L));
        } catch (const std::exception& e) {
            led.at(suites::bound_sweep, "cell_errors").record_error(e.what(), point_witness(spec, x, {}));
            continue;
        }
        const PointFunctional& L = *built;
        const auto nodes = L.nodes().values();
        const auto w = L.weights();
        const double tail = L.tail_mass_bound();

        const double sum = L.weight_sum();
        led.at(suites::partition, "sum").record(-std::abs(sum - 1.0), tail + cfg.tol.partition,
                                                [&] { return point_witness(spec, x, {{"weight_sum", sum}}); });
        if (positive) {
            led.at(suites::partition, "positivity").record(L.positive() ? 0.0 : -1.0, 0.0,
                                                           [&] { return point_witness(spec, x, {}); });
        }

        std::vector<double> e1v(nodes.begin(), nodes.end()), e2v(nodes.size()), antiv(nodes.size());
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            e2v[k] = nodes[k] * nodes[k];
            antiv[k] = 1.0 - nodes[k];
        }
        const double top = nodes.empty() ? 0.0 : std::abs(nodes.back());
        if (fam == Family::bernstein || fam == Family::sdelta || fam == Family::szasz ||
            fam == Family::baskakov || fam == Family::two_point) {
            const double target = parametric ? spec.param : x;
            const double got = apply_values(w, e1v);
            led.at(suites::reproduction, "e1").record(
                -std::abs(got - target), cfg.tol.reproduction * std::max(1.0, target) + tail * top,
                [&] { return point_witness(spec, x, {{"L(e1)", got}}); });
        }
        if (fam == Family::king) {
            const double got = apply_values(w, e2v);
            led.at(suites::reproduction, "e2").record(-std::abs(got - x * x), cfg.tol.reproduction,
                                                      [&] { return point_witness(spec, x, {{"L(e2)", got}}); });
        }
        if (fam == Family::sdelta) {
            const double nx = task.n * x;
            if (std::abs(nx - std::round(nx)) <= 1e-12 * std::max(1.0, nx)) {
                const double node = std::round(nx) / task.n;
                for (const auto& f : fns) {
                    const double got = apply(L, f);
                    const double want = f(node);
                    led.at(suites::reproduction, "interpolation").record(
                        got == want ? 0.0 : -std::abs(got - want), 0.0,
                        [&] { return point_witness(spec, x, {{"L(f)", got}, {"f(node)", want}}, f.name()); });
                }
            }
        }
        if (positive) {
            const double t12 = chebyshev_T_values(w, e1v, e2v);
            const double t11 = chebyshev_T_values(w, e1v, e1v);
            const double ta = chebyshev_T_values(w, e1v, antiv);
            led.at(suites::signs, "comonotone").record(t12, cfg.tol.sign, [&] { return point_witness(spec, x, {{"T", t12}}, "e1", "e2"); });
            led.at(suites::signs, "comonotone").record(t11, cfg.tol.sign, [&] { return point_witness(spec, x, {{"T", t11}}, "e1", "e1"); });
            led.at(suites::signs, "antimonotone").record(-ta, cfg.tol.sign,
                                                         [&] { return point_witness(spec, x, {{"T", ta}}, "e1", "one_minus_e1"); });
        }
        if (!sh.bounds) continue;

        const double pointwise = 0.5 * (1.0 - L.sum_of_squares());
        if (positive && fam != Family::two_point) {
            const auto px = fam == Family::baskakov ? std::optional<double>(x) : std::nullopt;
            const double coef = specialized_rhs(fam, task.n, px);
            led.at(suites::dominance, "specialized_coefficient")
                .record(coef - pointwise, cfg.tol.partition + tail,
                        [&] { return point_witness(spec, x, {{"specialized", coef}, {"pointwise", pointwise}}); });
        }

        for (std::size_t i = 0; i < F; ++i) vals[i] = fns[i].sample(nodes);
        omega_cache.clear();
        for (std::size_t i = 0; i < F; ++i) {
            for (std::size_t j = 0; j < F; ++j) {
                BoundResult r;
                try {
                    r = evaluate_cell(spec, x, L, vals[i], vals[j], prof[i], prof[j], &omega_cache);
                } catch (const std::exception& e) {
                    led.at(suites::bound_sweep, "cell_errors")
                        .record_error(e.what(), point_witness(spec, x, {}, fns[i].name(), fns[j].name()));
                    continue;
                }
                out.max_lhs = std::max(out.max_lhs, r.lhs);
                record_bounds(led, r, rel);
                auto witness = [&] { return cell_witness(r); };

                if (exact) {
                    const double P = pairwise_identity_values(w, vals[i], vals[j]);
                    double af = 0.0, ag = 0.0, afg = 0.0;
                    for (std::size_t k = 0; k < w.size(); ++k) {
                        const double aw = std::abs(w[k]);
                        af += aw * std::abs(vals[i][k]);
                        ag += aw * std::abs(vals[j][k]);
                        afg += aw * std::abs(vals[i][k] * vals[j][k]);
                    }
                    const double scale = std::max({std::abs(r.T), afg, af * ag});
                    led.at(suites::identity, "pairwise").record(-std::abs(r.T - P), cfg.tol.identity * scale, [&] {
                        auto wt = cell_witness(r);
                        wt.values.emplace_back("pairwise", P);
                        return wt;
                    });
                }
                if (!positive) continue;
                const auto* np = r.find(bn::new_positive);
                const auto* ns = r.find(bn::new_signed);
                const auto* gq = r.find(bn::gruss_quarter);
                const auto* me = r.find(bn::mercer);
                const auto* co = r.find(bn::coarse_positive);
                const double slack = np->slack;
                if (const auto* sp = r.find(bn::specialized)) {
                    led.at(suites::dominance, "new_positive<=specialized")
                        .record(sp->rhs - np->rhs, rel * rel_scale(sp->rhs, np->rhs) + slack, witness);
                }
                led.at(suites::dominance, "new_positive<=coarse")
                    .record(co->rhs - np->rhs, rel * rel_scale(co->rhs, np->rhs) + slack, witness);
                led.at(suites::dominance, "mercer<=gruss_quarter")
                    .record(gq->rhs - me->rhs, rel * rel_scale(gq->rhs, me->rhs) + slack, witness);
                led.at(suites::dominance, "new_signed==new_positive")
                    .record(-std::abs(ns->rhs - np->rhs), rel * rel_scale(ns->rhs, np->rhs) + slack, witness);
                if (fam == Family::sdelta) {
                    const auto& pf = prof[i];
                    const auto& pg = prof[j];
                    Range gf = pf.grid_range, gg = pg.grid_range;
                    for (double v : vals[i]) gf = {std::min(gf.min, v), std::max(gf.max, v)};
                    for (double v : vals[j]) gg = {std::min(gg.min, v), std::max(gg.max, v)};
                    const double global = gruss_quarter(gf.min, gf.max, gg.min, gg.max);
                    led.at(suites::sdelta_remark, "osc<=range")
                        .record(global - gq->rhs, rel * rel_scale(global, gq->rhs), witness);
                }
            }
        }
    }
}

void run_task(const Shared& sh, const Task& task, TaskOut& out) {
    out.prefix = std::string(family_name(task.family));
    if (task.family == Family::measure_example) {
        run_measure_task(sh, out);
    } else {
        run_discrete_task(sh, task, out);
    }
}

struct SweepResult {
    std::map<std::string_view, std::map<std::string, Tally>> suites;
    double max_lhs = 0.0;
};

SweepResult sweep(const SuiteConfig& cfg, bool bounds) {
    Shared sh;
    sh.cfg = &cfg;
    sh.bounds = bounds;
    for (const auto& name : cfg.functions) sh.functions.push_back(corpus_function(name, cfg.seed));

    std::vector<Task> tasks;
    for (Family fam : cfg.families) {
        if (family_is_parametric(fam)) {
            tasks.push_back({fam, 1});
        } else {
            for (int n : cfg.degrees) tasks.push_back({fam, n});
        }
        if (!bounds) continue;
        const Interval domain = family_domain(fam, cfg.x_max);
        auto& profs = sh.profiles[fam];
        for (const auto& f : sh.functions) {
            profs.push_back(make_profile(f, domain, cfg.global_grid, has_classical_bound(fam)));
        }
    }
    if (!bounds) {
        for (Family fam : cfg.families) sh.profiles[fam];
    }

    std::vector<TaskOut> outs(tasks.size());
    const unsigned workers = std::min<unsigned>(effective_threads(cfg.threads),
                                                static_cast<unsigned>(std::max<std::size_t>(1, tasks.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t t = next++; t < tasks.size(); t = next++) run_task(sh, tasks[t], outs[t]);
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    SweepResult res;
    for (const auto& out : outs) {
        res.max_lhs = std::max(res.max_lhs, out.max_lhs);
        for (const auto& [key, tally] : out.ledger.entries()) {
            const std::string name = out.prefix + "/" + std::string(key.second);
            auto& dst = res.suites[key.first][name];
            if (dst.name.empty()) {
                dst = tally;
                dst.name = name;
            } else {
                dst.merge(tally);
            }
        }
    }
    return res;
}

SuiteResult to_suite(std::string_view name, const SweepResult& sw) {
    SuiteResult s;
    s.name = std::string(name);
    const auto it = sw.suites.find(name);
    if (it != sw.suites.end()) {
        for (const auto& [k, t] : it->second) s.tallies.push_back(t);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Fixed suites

Tally make_tally(std::string name) {
    Tally t;
    t.name = std::move(name);
    return t;
}

SuiteResult phi_identities_suite(const SuiteConfig& cfg) {
    const auto& tol = cfg.tol;
    SuiteResult s;
    s.name = "phi_identities";
    auto half = make_tally("phi_half");
    auto leg = make_tally("legendre_match");
    auto sym = make_tally("symmetry");
    auto d2 = make_tally("second_derivative");
    auto bonnet = make_tally("bonnet_residual");
    auto explicit_sum = make_tally("legendre_explicit_sum");
    auto ineq8 = make_tally("legendre_ratio_inequality");
    auto bounds = make_tally("phi_bounds");

    for (int n = 1; n <= 64; ++n) {
        const double ph = phi_bernstein(n, 0.5);
        const double cb = central_binom_scaled(n);
        half.record(-std::abs(ph - cb), tol.phi_half, [&] { return simple_witness({{"n", n}, {"phi", ph}, {"central", cb}}); });

        for (int i = 0; i <= 499; ++i) {
            const double x = i / 1000.0;
            const double direct = phi_bernstein(n, x);
            const double via = phi_via_legendre(n, x);
            leg.record(-std::abs(via - direct) / direct, tol.legendre,
                       [&] { return simple_witness({{"n", n}, {"x", x}, {"direct", direct}, {"legendre", via}}); });
        }
        for (int i = 0; i <= 1000; ++i) {
            const double x = i / 1000.0;
            const double a = phi_bernstein(n, x);
            const double b = phi_bernstein(n, 1.0 - x);
            sym.record(-std::abs(a - b), tol.symmetry, [&] { return simple_witness({{"n", n}, {"x", x}, {"phi(x)", a}, {"phi(1-x)", b}}); });
            const double lower = std::max(1.0 / (n + 1.0), cb);
            bounds.record(std::min(a - lower, 1.0 - a), tol.symmetry,
                          [&] { return simple_witness({{"n", n}, {"x", x}, {"phi", a}, {"lower", lower}}); });
        }
        const double h = tol.second_derivative_step;
        const double num_d2 = (phi_bernstein(n, 0.5 + h) - 2.0 * ph + phi_bernstein(n, 0.5 - h)) / (h * h);
        const double want = 4.0 * central_binom_scaled(n - 1);
        d2.record(-std::abs(num_d2 - want) / want, tol.second_derivative,
                  [&] { return simple_witness({{"n", n}, {"numeric", num_d2}, {"closed_form", want}}); });
    }

    for (int n = 1; n < 64; ++n) {
        for (int i = 0; i <= 200; ++i) {
            const double y = -10.0 + 0.1 * i;
            const double pm = legendre_P(n - 1, y), p = legendre_P(n, y), pp = legendre_P(n + 1, y);
            const double resid = (n + 1.0) * pp - (2.0 * n + 1.0) * y * p + n * pm;
            const double scale = std::max(1.0, (n + 1.0) * std::abs(pp) + (2.0 * n + 1.0) * std::abs(y * p) + n * std::abs(pm));
            bonnet.record(-std::abs(resid) / scale, tol.bonnet, [&] { return simple_witness({{"n", n}, {"y", y}, {"residual", resid}}); });
        }
    }
    for (int n = 1; n <= 64; ++n) {
        for (int i = 0; i <= 90; ++i) {
            const double y = 1.0 + 0.1 * i;
            // 2^-n sum binom(n,k)^2 (y+1)^k (y-1)^(n-k); all terms are nonnegative here.
            double c = 1.0, s = 0.0;
            for (int k = 0; k <= n; ++k) {
                if (k > 0) c = c * (n - k + 1) / k;
                s += c * c * std::pow(y + 1.0, k) * std::pow(y - 1.0, n - k);
            }
            s = std::ldexp(s, -n);
            const double p = legendre_P(n, y);
            explicit_sum.record(-std::abs(p - s) / s, tol.bonnet, [&] { return simple_witness({{"n", n}, {"y", y}, {"recursion", p}, {"explicit", s}}); });
            if (i > 0) {
                const double rhs = (y + std::sqrt(y * y - 1.0)) * legendre_P(n - 1, y);
                ineq8.record((rhs - p) / rhs, tol.chain_slack, [&] { return simple_witness({{"n", n}, {"y", y}, {"P_n", p}, {"rhs", rhs}}); });
            }
        }
    }

    auto conj3 = make_tally("conjecture3");
    for (const auto& row : conjecture_scan(cfg.conjecture_nmax, cfg.global_grid, tol.conjecture3)) {
        conj3.record(row.min_gap, tol.conjecture3, [&] { return simple_witness({{"n", row.n}, {"min_gap", row.min_gap}}); });
    }
    s.tallies = {half, leg, sym, d2, bonnet, explicit_sum, ineq8, bounds, conj3};
    return s;
}

SuiteResult inequality_chains_suite(const SuiteConfig& cfg) {
    const double slack = cfg.tol.chain_slack;
    SuiteResult s;
    s.name = "inequality_chains";
    auto c1 = make_tally("1/(n+1)<1/(2sqrt(n))");
    auto c2 = make_tally("1/(2sqrt(n))<central");
    auto c3 = make_tally("central<1/sqrt(2n+1)");
    auto e1 = make_tally("1/sqrt(pi(n+3))<central");
    auto e2 = make_tally("central<1/sqrt(pi(n-1))");
    using std::numbers::pi;
    for (int n = 2; n <= 64; ++n) {
        const double cb = central_binom_scaled(n);
        const double a = 1.0 / (n + 1.0);
        const double b = 1.0 / (2.0 * std::sqrt(double(n)));
        const double c = 1.0 / std::sqrt(2.0 * n + 1.0);
        const double lo = 1.0 / std::sqrt(pi * (n + 3.0));
        const double hi = 1.0 / std::sqrt(pi * (n - 1.0));
        auto wit = [&] { return simple_witness({{"n", n}, {"central", cb}}); };
        c1.record(b - a - slack, 0.0, wit);
        c2.record(cb - b - slack, 0.0, wit);
        c3.record(c - cb - slack, 0.0, wit);
        e1.record(cb - lo - slack, 0.0, wit);
        e2.record(hi - cb - slack, 0.0, wit);
    }
    s.tallies = {c1, c2, c3, e1, e2};
    return s;
}

SuiteResult rivlin_suite(const SuiteConfig& cfg) {
    const double tol = cfg.tol.rivlin;
    SuiteResult s;
    s.name = "rivlin_window";
    auto lower = make_tally("excess>0.9625");
    auto upper = make_tally("excess<1");
    auto exact = make_tally("exact_values");
    for (const auto& row : rivlin_window(2, cfg.rivlin_nmax, kDefaultLebesgueGrid, tol)) {
        auto wit = [&] { return simple_witness({{"n", row.n}, {"lebesgue", row.lebesgue}, {"excess", row.excess}}); };
        lower.record(row.excess - kRivlinLower, tol, wit);
        upper.record(kRivlinUpper - row.excess, tol, wit);
    }
    const double l2 = lebesgue_constant(2), l3 = lebesgue_constant(3);
    exact.record(-std::abs(l2 - std::sqrt(2.0)), tol, [&] { return simple_witness({{"n", 2}, {"lebesgue", l2}}); });
    exact.record(-std::abs(l3 - 5.0 / 3.0), tol, [&] { return simple_witness({{"n", 3}, {"lebesgue", l3}}); });
    s.tallies = {lower, upper, exact};
    return s;
}

SuiteResult closed_forms_suite(const SuiteConfig& cfg) {
    const auto& tol = cfg.tol;
    SuiteResult s;
    s.name = "closed_forms";
    auto th1 = make_tally("theta1");
    auto th2 = make_tally("theta2");
    auto sig_int = make_tally("sigma_integral");
    auto sig_ser = make_tally("sigma_bessel_series");
    auto psi = make_tally("psi_substitution");
    auto tau = make_tally("tau_midpoint_min");
    auto tau_lo = make_tally("tau_lower");
    auto king = make_tally("king_phi1_min");
    auto king_lo = make_tally("king_sumsq_lower");
    auto m2 = make_tally("second_moment");
    auto decay = make_tally("decay");

    const auto big = NodeSet::uniform(0.0, cfg.x_max, cfg.global_grid);
    for (double x : big.values()) {
        const double a = theta_baskakov(1, x), b = 1.0 / (1.0 + 2.0 * x);
        th1.record(-std::abs(a - b), tol.closed_form, [&] { return simple_witness({{"x", x}, {"series", a}, {"closed", b}}); });
        const double c = theta_baskakov(2, x);
        const double d = (2.0 * x * x + 2.0 * x + 1.0) / std::pow(2.0 * x + 1.0, 3);
        th2.record(-std::abs(c - d), tol.closed_form, [&] { return simple_witness({{"x", x}, {"series", c}, {"closed", d}}); });
    }
    const auto xs = NodeSet::uniform(0.0, cfg.x_max, cfg.x_grid);
    for (int n : cfg.degrees) {
        for (double x : xs.values()) {
            const double sg = sigma_szasz(n, x);
            const double in = scaled_bessel_i0_integral(2.0 * n * x);
            const double se = scaled_bessel_i0(2.0 * n * x);
            sig_int.record(-std::abs(sg - in), tol.bessel_integral, [&] { return simple_witness({{"n", n}, {"x", x}, {"sigma", sg}, {"integral", in}}); });
            sig_ser.record(-std::abs(sg - se), tol.closed_form, [&] { return simple_witness({{"n", n}, {"x", x}, {"sigma", sg}, {"bessel", se}}); });
            const double ps = psi_bbh(n, x);
            const double ph = phi_bernstein(n, x / (1.0 + x));
            psi.record(-std::abs(ps - ph), tol.closed_form, [&] { return simple_witness({{"n", n}, {"t", x}, {"psi", ps}, {"phi", ph}}); });
        }
        for (int k = 1; k <= n; ++k) {
            const double mid = (2.0 * k - 1.0) / (2.0 * n);
            const double v = tau_hat(n, mid);
            tau.record(-std::abs(v - 0.5), tol.tau_min, [&] { return simple_witness({{"n", n}, {"x", mid}, {"tau", v}}); });
        }
        const auto unit = NodeSet::uniform(0.0, 1.0, cfg.x_grid);
        for (double x : unit.values()) {
            const double v = tau_hat(n, x);
            tau_lo.record(v - 0.5, tol.tau_min, [&] { return simple_witness({{"n", n}, {"x", x}, {"tau", v}}); });
            const double ks = king_sumsq(n, x);
            king_lo.record(ks - 1.0 / (n + 1.0), tol.tau_min, [&] { return simple_witness({{"n", n}, {"x", x}, {"sumsq", ks}}); });
            for (Family fam : {Family::bernstein, Family::sdelta, Family::king}) {
                const double closed = second_moment(fam, n, x);
                const auto L = make_functional({fam, n, 0.0}, x);
                double direct = 0.0;
                for (std::size_t i = 0; i < L.size(); ++i) {
                    const double d = L.nodes()[i] - x;
                    direct += L.weights()[i] * d * d;
                }
                m2.record(-std::abs(closed - direct), tol.closed_form, [&] {
                    return simple_witness({{"n", n}, {"x", x}, {"closed", closed}, {"direct", direct}});
                });
            }
        }
        double prev_s = 2.0, prev_t = 2.0;
        for (double x : {10.0, 20.0, 40.0, 80.0}) {
            const double sv = sigma_szasz(n, x), tv = theta_baskakov(n, x);
            decay.record(std::min(prev_s - sv, prev_t - tv), 0.0, [&] { return simple_witness({{"n", n}, {"x", x}, {"sigma", sv}, {"theta", tv}}); });
            prev_s = sv;
            prev_t = tv;
        }
    }
    const double k1 = king_sumsq(1, std::sqrt(2.0) / 2.0);
    king.record(-std::abs(k1 - 0.5), tol.king_min, [&] { return simple_witness({{"value", k1}}); });
    s.tallies = {th1, th2, sig_int, sig_ser, psi, tau, tau_lo, king, king_lo, m2, decay};
    return s;
}

SuiteResult baskakov_chain_suite(const SuiteConfig& cfg) {
    SuiteResult s;
    s.name = "baskakov_chain";
    auto chain = make_tally("theta_n>=theta_n+1");
    auto floor = make_tally("theta_64>=0");
    const auto xs = NodeSet::uniform(0.0, cfg.x_max, cfg.global_grid);
    for (double x : xs.values()) {
        double prev = theta_baskakov(2, x);
        for (int n = 3; n <= 64; ++n) {
            const double cur = theta_baskakov(n, x);
            chain.record(prev - cur, cfg.tol.baskakov_chain, [&] { return simple_witness({{"n", n - 1}, {"x", x}, {"theta_n", prev}, {"theta_n+1", cur}}); });
            prev = cur;
        }
        floor.record(prev, cfg.tol.baskakov_chain, [&] { return simple_witness({{"x", x}, {"theta_64", prev}}); });
    }
    s.tallies = {chain, floor};
    return s;
}

SuiteResult conjectures_suite(const SuiteConfig& cfg) {
    SuiteResult s;
    s.name = "conjectures";
    auto conj3 = make_tally("conjecture3");
    for (const auto& row : conjecture_scan(cfg.conjecture_nmax, cfg.global_grid, cfg.tol.conjecture3)) {
        conj3.record(row.min_gap, cfg.tol.conjecture3, [&] { return simple_witness({{"n", row.n}, {"min_gap", row.min_gap}}); });
        Note note;
        note.name = "n=" + std::to_string(row.n);
        note.values = {{"min_second_diff", row.min_second_diff},
                       {"sign_changes", row.sign_changes},
                       {"sign_change_at", row.sign_change_at},
                       {"min_gap", row.min_gap}};
        note.text = std::string("convexity ") + (row.min_second_diff > 0 ? "observed" : "not observed") +
                    ", unimodality " + (row.sign_changes == 1 ? "observed" : "not observed");
        s.notes.push_back(std::move(note));
    }
    s.notes.push_back({"status", {}, "convexity and unimodality are scanned and reported only; the midpoint minimum is asserted. "
                                     "Convexity implies unimodality implies the midpoint minimum."});
    s.tallies = {conj3};
    return s;
}

SuiteResult sharpness_as_suite(const SuiteConfig& cfg) {
    SuiteResult s;
    s.name = "sharpness";
    auto t = make_tally("equality_witnesses");
    for (const auto& row : sharpness_suite(cfg.tol.equality)) {
        t.record(-std::abs(row.lhs - row.rhs), cfg.tol.equality, [&] {
            Witness w;
            w.labels = {{"witness", row.witness}};
            w.values = {{"lhs", row.lhs}, {"rhs", row.rhs}};
            return w;
        });
    }
    s.tallies = {t};
    return s;
}

SuiteResult lagrange_suite(const SuiteConfig& cfg) {
    const auto& tol = cfg.tol;
    SuiteResult s;
    s.name = "lagrange_properties";
    auto part = make_tally("partition_of_unity");
    auto repro = make_tally("polynomial_reproduction");
    auto idem = make_tally("node_idempotence");
    auto lam = make_tally("lebesgue>=1");
    auto lam_nodes = make_tally("lebesgue_at_nodes");
    auto pairs = make_tally("pair_sum_identity");
    auto forms = make_tally("norm_form<=log_form");
    const auto xs = NodeSet::uniform(-1.0, 1.0, cfg.x_grid);
    const auto corpus = make_corpus(cfg.seed);

    for (int n = 1; n <= 64; ++n) {
        for (double x : xs.values()) {
            const auto L = lagrange_basis(n, x);
            const auto w = L.weights();
            const auto nodes = L.nodes().values();
            const double sum = L.weight_sum();
            part.record(-std::abs(sum - 1.0), tol.partition, [&] { return simple_witness({{"n", n}, {"x", x}, {"sum", sum}}); });
            std::vector<double> pw(nodes.size(), 1.0);
            double xj = 1.0;
            for (int j = 0; j < n; ++j) {
                const double got = apply_values(w, pw);
                repro.record(-std::abs(got - xj), tol.reproduction, [&] { return simple_witness({{"n", n}, {"x", x}, {"j", j}, {"L(e_j)", got}}); });
                for (std::size_t k = 0; k < pw.size(); ++k) pw[k] *= nodes[k];
                xj *= x;
            }
            const double lv = L.abs_sum();
            lam.record(lv - 1.0, tol.partition, [&] { return simple_witness({{"n", n}, {"x", x}, {"lebesgue", lv}}); });
            double direct = 0.0;
            for (std::size_t k = 0; k < w.size(); ++k) {
                for (std::size_t m = k + 1; m < w.size(); ++m) direct += std::abs(w[k] * w[m]);
            }
            const double half = pair_product_sum(n, x);
            pairs.record(-std::abs(half - direct), tol.identity, [&] { return simple_witness({{"n", n}, {"x", x}, {"identity", half}, {"direct", direct}}); });
        }
        const auto grid = chebyshev_grid(n);
        for (double node : grid.nodes) {
            const auto L = lagrange_basis(n, node);
            const double lv = L.abs_sum();
            lam_nodes.record(-std::abs(lv - 1.0), 0.0, [&] { return simple_witness({{"n", n}, {"x", node}, {"lebesgue", lv}}); });
            for (const auto& f : corpus) {
                const double got = apply(L, f), want = f(node);
                idem.record(got == want ? 0.0 : -std::abs(got - want), 0.0, [&] {
                    Witness wt = simple_witness({{"n", n}, {"x", node}, {"L(f)", got}, {"f", want}});
                    wt.labels = {{"f", f.name()}};
                    return wt;
                });
            }
        }
        if (n >= 2) {
            const auto c = lagrange_classical_from_omega(n, 1.0, 1.0);
            forms.record(c.log_form - c.norm_form, tol.partition, [&] { return simple_witness({{"n", n}, {"norm_form", c.norm_form}, {"log_form", c.log_form}}); });
        }
    }
    for (int n : cfg.degrees) {
        s.notes.push_back({"hermann_ratio n=" + std::to_string(n), {{"ratio", hermann_ratio(n, cfg.global_grid)}},
                           "min of sum l^2 / (1 + cos^2(nt) pi^2/6); the constant is unspecified, so reported only"});
    }
    s.notes.push_back({"log_form_coefficient", {{"canonical", 2.0 / (std::numbers::pi * std::numbers::pi)}, {"displayed", 2.0 / std::numbers::pi}},
                       "the log-form majorant derived from the norm bound carries 2/pi^2 in front of ln^2 n; the "
                       "displayed statement carries 2/pi. Both are evaluated; 2/pi^2 is canonical."});
    s.tallies = {part, repro, idem, lam, lam_nodes, pairs, forms};
    return s;
}

SuiteResult coverage_suite(const SuiteConfig& cfg, const SuiteResult& sweep_suite) {
    SuiteResult s;
    s.name = "coverage";
    auto t = make_tally("bounds_exercised");
    for (Family fam : cfg.families) {
        for (auto b : required_bounds(fam)) {
            const std::string key = std::string(family_name(fam)) + "/" + std::string(b);
            const auto* found = sweep_suite.find(key);
            const bool hit = found && found->checks > 0;
            t.record(hit ? 0.0 : -1.0, 0.0, [&] {
                Witness w;
                w.labels = {{"missing", key}};
                return w;
            });
        }
    }
    s.tallies = {t};
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------

void SuiteConfig::validate() const {
    if (families.empty()) throw std::invalid_argument("SuiteConfig: no families");
    if (degrees.empty()) throw std::invalid_argument("SuiteConfig: degree list is empty");
    for (int n : degrees) {
        if (n < 1) throw std::invalid_argument("SuiteConfig: degrees must be positive");
    }
    if (x_grid < 3 || global_grid < 3) throw std::invalid_argument("SuiteConfig: grids need at least 3 points");
    if (!(x_max > 0.0) || !std::isfinite(x_max)) throw std::invalid_argument("SuiteConfig: x_max must be positive");
    if (functions.empty()) throw std::invalid_argument("SuiteConfig: empty corpus");
    for (const auto& f : functions) (void)corpus_function(f, seed);
    if (!(tail_eps > 0.0)) throw std::invalid_argument("SuiteConfig: tail_eps must be positive");
    if (quad_n < 1) throw std::invalid_argument("SuiteConfig: quad_n must be positive");
    if (conjecture_nmax < 1) throw std::invalid_argument("SuiteConfig: conjecture_nmax must be positive");
    if (rivlin_nmax < 2) throw std::invalid_argument("SuiteConfig: rivlin_nmax must be at least 2");
}

void Tally::record_error(const std::string& what, Witness w) {
    ++checks;
    ++failures;
    w.labels.emplace_back("error", what);
    if (checks == 1 || -std::numeric_limits<double>::infinity() < worst_margin + worst_tolerance) {
        worst_margin = -std::numeric_limits<double>::infinity();
        worst_tolerance = 0.0;
        witness = std::move(w);
    }
}

void Tally::merge(const Tally& later) {
    if (later.checks == 0) return;
    const bool worse = std::isnan(later.worst_margin)
                           ? !std::isnan(worst_margin)
                           : later.worst_margin + later.worst_tolerance < worst_margin + worst_tolerance;
    if (checks == 0 || worse) {
        worst_margin = later.worst_margin;
        worst_tolerance = later.worst_tolerance;
        witness = later.witness;
    }
    checks += later.checks;
    failures += later.failures;
}

bool SuiteResult::passed() const noexcept { return failures() == 0; }

std::size_t SuiteResult::checks() const noexcept {
    std::size_t c = 0;
    for (const auto& t : tallies) c += t.checks;
    return c;
}

std::size_t SuiteResult::failures() const noexcept {
    std::size_t c = 0;
    for (const auto& t : tallies) c += t.failures;
    return c;
}

const Tally* SuiteResult::find(std::string_view tally) const noexcept {
    for (const auto& t : tallies) {
        if (t.name == tally) return &t;
    }
    return nullptr;
}

bool VerificationReport::passed() const noexcept { return failures() == 0; }

std::size_t VerificationReport::failures() const noexcept {
    std::size_t c = 0;
    for (const auto& s : suites) c += s.failures();
    return c;
}

const SuiteResult* VerificationReport::find(std::string_view suite) const noexcept {
    for (const auto& s : suites) {
        if (s.name == suite) return &s;
    }
    return nullptr;
}

const Tally* VerificationReport::worst_failure() const noexcept {
    const Tally* worst = nullptr;
    for (const auto& s : suites) {
        for (const auto& t : s.tallies) {
            if (t.failures == 0) continue;
            if (!worst || t.worst_margin + t.worst_tolerance < worst->worst_margin + worst->worst_tolerance) worst = &t;
        }
    }
    return worst;
}

Environment environment_stamp() {
    Environment e;
    e.library_version = GRUSS_VERSION;
#if defined(__clang__)
    e.compiler = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
    e.compiler = std::string("gcc ") + __VERSION__;
#else
    e.compiler = "unknown";
#endif
    e.cxx_standard = std::to_string(__cplusplus);
#if defined(__linux__)
    e.platform = "linux";
#elif defined(__APPLE__)
    e.platform = "darwin";
#elif defined(_WIN32)
    e.platform = "windows";
#else
    e.platform = "unknown";
#endif
    return e;
}

unsigned effective_threads(unsigned requested) {
    unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("GRUSS_LAB_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return std::max(1u, n);
}

VerificationReport run_suite(const SuiteConfig& cfg) {
    cfg.validate();
    VerificationReport rep;
    rep.config = cfg;
    rep.config.functional_hook = nullptr;
    rep.environment = environment_stamp();

    const auto sw = sweep(cfg, true);
    auto bound_suite = to_suite(suites::bound_sweep, sw);
    bound_suite.notes.push_back({"max_lhs", {{"value", sw.max_lhs}}, "largest |T| over all cells"});
    rep.suites.push_back(bound_suite);
    for (auto name : {suites::partition, suites::reproduction, suites::identity, suites::signs,
                      suites::dominance, suites::sdelta_remark}) {
        rep.suites.push_back(to_suite(name, sw));
    }
    rep.suites.push_back(sharpness_as_suite(cfg));
    rep.suites.push_back(phi_identities_suite(cfg));
    rep.suites.push_back(inequality_chains_suite(cfg));
    rep.suites.push_back(rivlin_suite(cfg));
    rep.suites.push_back(closed_forms_suite(cfg));
    rep.suites.push_back(baskakov_chain_suite(cfg));
    rep.suites.push_back(conjectures_suite(cfg));
    rep.suites.push_back(lagrange_suite(cfg));
    rep.suites.push_back(coverage_suite(cfg, bound_suite));
    return rep;
}

SuiteResult monotone_chebyshev_check(const SuiteConfig& cfg) {
    cfg.validate();
    return to_suite(suites::signs, sweep(cfg, false));
}

std::vector<ConjectureRow> conjecture_scan(int n_max, std::size_t grid, double tol) {
    if (n_max < 1) throw std::invalid_argument("conjecture_scan: n_max must be positive");
    if (grid < 3) throw std::invalid_argument("conjecture_scan: grid needs at least 3 points");
    const auto xs = NodeSet::uniform(0.0, 1.0, grid);
    const double h = 1.0 / static_cast<double>(grid - 1);
    std::vector<ConjectureRow> rows;
    for (int n = 1; n <= n_max; ++n) {
        std::vector<double> phi(grid);
        for (std::size_t i = 0; i < grid; ++i) phi[i] = phi_bernstein(n, xs[i]);
        const double mid = phi_bernstein(n, 0.5);
        ConjectureRow row;
        row.n = n;
        row.min_second_diff = std::numeric_limits<double>::infinity();
        row.min_gap = std::numeric_limits<double>::infinity();
        int last_sign = 0;
        for (std::size_t i = 0; i < grid; ++i) {
            row.min_gap = std::min(row.min_gap, phi[i] - mid);
            if (i > 0 && i + 1 < grid) {
                row.min_second_diff = std::min(row.min_second_diff, (phi[i + 1] - 2.0 * phi[i] + phi[i - 1]) / (h * h));
            }
            if (i + 1 < grid) {
                const double d = phi[i + 1] - phi[i];
                const int sg = d > 0 ? 1 : (d < 0 ? -1 : 0);
                if (sg != 0) {
                    if (last_sign != 0 && sg != last_sign) {
                        if (row.sign_changes == 0) row.sign_change_at = xs[i];
                        ++row.sign_changes;
                    }
                    last_sign = sg;
                }
            }
        }
        row.conjecture3_holds = row.min_gap >= -tol;
        rows.push_back(row);
    }
    return rows;
}

std::vector<SharpnessRow> sharpness_suite(double tol) {
    std::vector<SharpnessRow> rows;
    auto add = [&](std::string name, double lhs, double rhs) {
        rows.push_back({std::move(name), lhs, rhs, std::abs(lhs - rhs) <= tol});
    };
    const auto e1 = corpus_function("e1");
    const Interval unit{0.0, 1.0};
    const auto env = modulus_envelope(e1, unit, 1001);

    for (int n : {1, 2, 4, 8, 64}) {
        for (double x : {0.1, 0.3, 0.5, 0.77}) {
            const auto L = bernstein_at(n, x);
            const double lhs = std::abs(chebyshev_T(L, e1, e1));
            const auto c = classical_ws_bound(Family::bernstein, n, x, env, env);
            add("bernstein_classical_e1 n=" + std::to_string(n) + " x=" + num(x), lhs, c.rhs);
        }
    }
    {
        const double lhs = std::abs(chebyshev_T(bernstein_at(4, 0.3), e1, e1));
        add("bernstein_second_moment n=4 x=0.3", lhs, 0.0525);
    }
    const auto corpus = make_corpus();
    for (double a : {0.1, 0.25, 0.5, 0.9}) {
        const auto L = two_point(a);
        const double lhs = std::abs(chebyshev_T(L, e1, e1));
        add("two_point_new e1 a=" + num(a), lhs, new_bound_positive(L, e1, e1));
        add("two_point_mercer e1 a=" + num(a), lhs, mercer_bound(L, e1, e1));
        // Worst pair over the corpus: the equality holds for every f, g.
        double worst = -1.0, wl = 0.0, wr = 0.0;
        for (const auto& f : corpus) {
            for (const auto& g : corpus) {
                const double l = std::abs(chebyshev_T(L, f, g));
                const double r = new_bound_positive(L, f, g);
                if (std::abs(l - r) > worst) {
                    worst = std::abs(l - r);
                    wl = l;
                    wr = r;
                }
            }
        }
        add("two_point_new corpus a=" + num(a), wl, wr);
    }
    {
        const auto nb = lagrange_new_bound(2, e1, e1, 0.0);
        add("lagrange_new n=2 x=0", nb.lhs, nb.rhs);
    }
    {
        const PointFunctional L(NodeSet({0.0, 1.0}), {1.5, -0.5});
        add("signed_two_point", std::abs(chebyshev_T(L, e1, e1)), new_bound_signed(L, e1, e1));
    }
    return rows;
}

}  // namespace gruss
