#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "gruss/bounds.hpp"
#include "gruss/lagrange.hpp"
#include "gruss/special.hpp"
#include "gruss/verify.hpp"

namespace gruss::cli {

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Writes to --out when given, otherwise to the caller's stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw std::runtime_error("cannot open '" + path + "' for writing");
        }
        stream_ = path.empty() ? &fallback : &file_;
    }
    std::ostream& get() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

struct VerifyArgs {
    std::string out;
    std::uint64_t seed = kDefaultSeed;
    std::size_t grid = 1001;
    std::size_t xgrid = 257;
    std::vector<int> degrees;
    std::vector<std::string> families;
    std::vector<std::string> functions;
    double tail_eps = kDefaultTailEps;
    unsigned threads = 0;
};

struct SpecialArgs {
    std::string out;
    std::string fn;
    int n = 8;
    std::size_t grid = 257;
    double x_max = 50.0;
};

struct LagrangeArgs {
    std::string out;
    int n = 8;
    std::size_t grid = 257;
};

struct BoundsArgs {
    std::string out;
    std::string op, f, g;
    double x = 0.0;
    std::size_t grid = 1001;
    double tail_eps = kDefaultTailEps;
    double x_max = 50.0;
    std::uint64_t seed = kDefaultSeed;
};

struct ConjArgs {
    std::string out;
    int nmax = 64;
    std::size_t grid = 1001;
};

struct SharpArgs {
    std::string out;
};

void print_witness(const Tally& t, std::ostream& err) {
    err << "worst failure: " << t.name << " margin " << g17(t.worst_margin) << " tolerance "
        << g17(t.worst_tolerance) << "\n";
    for (const auto& [k, v] : t.witness.labels) err << "  " << k << " = " << v << "\n";
    for (const auto& [k, v] : t.witness.values) err << "  " << k << " = " << g17(v) << "\n";
}

int do_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
    SuiteConfig cfg;
    cfg.seed = a.seed;
    cfg.global_grid = a.grid;
    cfg.x_grid = a.xgrid;
    if (!a.degrees.empty()) cfg.degrees = a.degrees;
    if (!a.families.empty()) {
        cfg.families.clear();
        for (const auto& name : a.families) {
            const auto fam = parse_family(name);
            if (!fam) throw std::invalid_argument("unknown family '" + name + "'");
            cfg.families.push_back(*fam);
        }
    }
    if (!a.functions.empty()) cfg.functions = a.functions;
    cfg.tail_eps = a.tail_eps;
    cfg.threads = a.threads;
    const auto rep = run_suite(cfg);
    Sink sink(a.out, out);
    sink.get() << rep.to_json(2) << "\n";
    if (rep.passed()) return 0;
    if (const auto* t = rep.worst_failure()) print_witness(*t, err);
    return 1;
}

int do_special(const SpecialArgs& a, std::ostream& out) {
    Sink sink(a.out, out);
    auto& os = sink.get();
    const int n = a.n;
    if (a.fn == "central_binom") {
        os << "n,value\n" << n << "," << g17(central_binom_scaled(n)) << "\n";
        return 0;
    }
    if (a.fn == "bessel_i0_scaled") {
        os << "z,value\n";
        const auto grid_z = NodeSet::uniform(0.0, a.x_max, a.grid);
        for (double z : grid_z.values()) {
            os << g17(z) << "," << g17(scaled_bessel_i0(z)) << "\n";
        }
        return 0;
    }
    if (a.fn == "legendre") {
        os << "n,y,value\n";
        const auto grid_y = NodeSet::uniform(-1.0, 1.0, a.grid);
        for (double y : grid_y.values()) {
            os << n << "," << g17(y) << "," << g17(legendre_P(n, y)) << "\n";
        }
        return 0;
    }
    std::function<double(double)> fn;
    Interval dom{0.0, 1.0};
    bool skip_half = false;
    if (a.fn == "phi") {
        fn = [n](double x) { return phi_bernstein(n, x); };
    } else if (a.fn == "phi_legendre") {
        fn = [n](double x) { return phi_via_legendre(n, x); };
        skip_half = true;
    } else if (a.fn == "tau") {
        fn = [n](double x) { return tau_hat(n, x); };
    } else if (a.fn == "king_sumsq") {
        fn = [n](double x) { return king_sumsq(n, x); };
    } else if (a.fn == "r_star") {
        fn = [n](double x) { return r_star(n, x); };
    } else if (a.fn == "sigma") {
        fn = [n](double x) { return sigma_szasz(n, x); };
        dom = {0.0, a.x_max};
    } else if (a.fn == "theta") {
        fn = [n](double x) { return theta_baskakov(n, x); };
        dom = {0.0, a.x_max};
    } else if (a.fn == "psi") {
        fn = [n](double x) { return psi_bbh(n, x); };
        dom = {0.0, a.x_max};
    } else {
        throw std::invalid_argument("unknown function '" + a.fn + "'");
    }
    os << "n,x,value\n";
    const auto grid_x = NodeSet::uniform(dom, a.grid);
    for (double x : grid_x.values()) {
        if (skip_half && std::abs(x - 0.5) < kLegendreExclusion) continue;
        os << n << "," << g17(x) << "," << g17(fn(x)) << "\n";
    }
    return 0;
}

int do_lagrange(const LagrangeArgs& a, std::ostream& out) {
    Sink sink(a.out, out);
    auto& os = sink.get();
    os << "x,lambda,pair_product_sum\n";
    const auto grid_x = NodeSet::uniform(-1.0, 1.0, a.grid);
    for (double x : grid_x.values()) {
        os << g17(x) << "," << g17(lebesgue_function(a.n, x)) << "," << g17(pair_product_sum(a.n, x)) << "\n";
    }
    os << "\n# rivlin window\nn,lebesgue,excess,in_window\n";
    bool ok = true;
    if (a.n >= 2) {
        for (const auto& r : rivlin_window(2, a.n)) {
            os << r.n << "," << g17(r.lebesgue) << "," << g17(r.excess) << "," << (r.in_window ? 1 : 0) << "\n";
            ok = ok && r.in_window;
        }
    }
    return ok ? 0 : 1;
}

int do_bounds(const BoundsArgs& a, std::ostream& out, std::ostream& err) {
    const auto spec = OperatorSpec::parse(a.op);
    const auto f = corpus_function(a.f, a.seed);
    const auto g = corpus_function(a.g, a.seed);
    EvalOptions opt;
    opt.grid_points = a.grid;
    opt.tail_eps = a.tail_eps;
    opt.x_max = a.x_max;
    const auto r = evaluate_bounds(spec, a.x, f, g, opt);
    Sink sink(a.out, out);
    sink.get() << to_json(r, 2) << "\n";
    bool ok = true;
    for (const auto& b : r.bounds) {
        if (!r.holds(b)) {
            ok = false;
            err << "bound " << b.name << " violated: lhs " << g17(r.lhs) << " rhs " << g17(b.rhs) << "\n";
        }
    }
    return ok ? 0 : 1;
}

int do_conjectures(const ConjArgs& a, std::ostream& out, std::ostream& err) {
    Sink sink(a.out, out);
    auto& os = sink.get();
    os << "n,min_second_diff,sign_changes,sign_change_at,min_gap,conjecture3\n";
    bool ok = true;
    for (const auto& r : conjecture_scan(a.nmax, a.grid)) {
        os << r.n << "," << g17(r.min_second_diff) << "," << r.sign_changes << "," << g17(r.sign_change_at) << ","
           << g17(r.min_gap) << "," << (r.conjecture3_holds ? 1 : 0) << "\n";
        if (!r.conjecture3_holds) {
            ok = false;
            err << "midpoint minimum check failed at n=" << r.n << ": min gap " << g17(r.min_gap) << "\n";
        }
    }
    return ok ? 0 : 1;
}

int do_sharpness(const SharpArgs& a, std::ostream& out, std::ostream& err) {
    Sink sink(a.out, out);
    auto& os = sink.get();
    os << "witness,lhs,rhs,abs_diff,pass\n";
    bool ok = true;
    for (const auto& r : sharpness_suite()) {
        os << r.witness << "," << g17(r.lhs) << "," << g17(r.rhs) << "," << g17(std::abs(r.lhs - r.rhs)) << ","
           << (r.passed ? 1 : 0) << "\n";
        if (!r.passed) {
            ok = false;
            err << "equality witness failed: " << r.witness << "\n";
        }
    }
    return ok ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Chebyshev-Gruss inequality laboratory", "gruss_lab"};
    app.require_subcommand(1, 1);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "run every verification suite and write the JSON report");
    verify->add_option("--out", va.out, "output file (default stdout)");
    verify->add_option("--seed", va.seed, "seed of the random Lipschitz corpus member");
    verify->add_option("--grid", va.grid, "points of the global grids")->check(CLI::Range(3, 1000000));
    verify->add_option("--xgrid", va.xgrid, "evaluation points per domain")->check(CLI::Range(3, 1000000));
    verify->add_option("--degrees", va.degrees, "comma-separated degree list")->delimiter(',');
    verify->add_option("--families", va.families, "comma-separated operator families")->delimiter(',');
    verify->add_option("--functions", va.functions, "comma-separated corpus subset")->delimiter(',');
    verify->add_option("--tail-eps", va.tail_eps, "tail mass for truncated series");
    verify->add_option("--threads", va.threads, "worker threads (0 = all cores)");

    SpecialArgs sa;
    auto* special = app.add_subcommand("special", "tabulate a special function as CSV");
    special->add_option("--fn", sa.fn,
                        "phi, phi_legendre, central_binom, legendre, bessel_i0_scaled, sigma, theta, psi, tau, "
                        "king_sumsq, r_star")
        ->required();
    special->add_option("--n", sa.n, "degree")->check(CLI::PositiveNumber);
    special->add_option("--grid", sa.grid, "number of points")->check(CLI::Range(2, 10000000));
    special->add_option("--x-max", sa.x_max, "right end for unbounded domains");
    special->add_option("--out", sa.out, "output file (default stdout)");

    LagrangeArgs la;
    auto* lagrange = app.add_subcommand("lagrange", "Lebesgue function table and Rivlin window");
    lagrange->add_option("--n", la.n, "number of Chebyshev nodes")->check(CLI::PositiveNumber);
    lagrange->add_option("--grid", la.grid, "number of x points")->check(CLI::Range(2, 10000000));
    lagrange->add_option("--out", la.out, "output file (default stdout)");

    BoundsArgs ba;
    auto* bounds = app.add_subcommand("bounds", "evaluate every bound for one cell");
    bounds->add_option("--op", ba.op, "operator as family:n[:param]")->required();
    bounds->add_option("--f", ba.f, "corpus function")->required();
    bounds->add_option("--g", ba.g, "corpus function")->required();
    bounds->add_option("--x", ba.x, "evaluation point");
    bounds->add_option("--grid", ba.grid, "points of the global grid")->check(CLI::Range(3, 1000000));
    bounds->add_option("--tail-eps", ba.tail_eps, "tail mass for truncated series");
    bounds->add_option("--x-max", ba.x_max, "right end for unbounded domains");
    bounds->add_option("--seed", ba.seed, "seed of the random Lipschitz corpus member");
    bounds->add_option("--out", ba.out, "output file (default stdout)");

    ConjArgs ca;
    auto* conj = app.add_subcommand("conjectures", "scan convexity, unimodality and the midpoint minimum");
    conj->add_option("--nmax", ca.nmax, "largest degree")->check(CLI::PositiveNumber);
    conj->add_option("--grid", ca.grid, "points on [0,1]")->check(CLI::Range(3, 10000000));
    conj->add_option("--out", ca.out, "output file (default stdout)");

    SharpArgs ha;
    auto* sharp = app.add_subcommand("sharpness", "reproduce the equality witnesses");
    sharp->add_option("--out", ha.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (verify->parsed()) return do_verify(va, out, err);
        if (special->parsed()) return do_special(sa, out);
        if (lagrange->parsed()) return do_lagrange(la, out);
        if (bounds->parsed()) return do_bounds(ba, out, err);
        if (conj->parsed()) return do_conjectures(ca, out, err);
        if (sharp->parsed()) return do_sharpness(ha, out, err);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << app.help();
    return 2;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"gruss_lab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace gruss::cli
