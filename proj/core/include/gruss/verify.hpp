#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gruss/bounds.hpp"
#include "gruss/funcspace.hpp"
#include "gruss/operators.hpp"

namespace gruss {

struct Tolerances {
    double relative = 1e-9;
    double sign = 1e-12;
    double identity = 1e-10;
    double equality = 1e-10;
    double partition = 1e-12;
    double reproduction = 1e-9;
    double phi_half = 1e-12;
    double legendre = 1e-9;
    double symmetry = 1e-12;
    double second_derivative = 1e-4;
    double second_derivative_step = 1e-3;
    double bonnet = 1e-10;
    double chain_slack = 1e-12;
    double rivlin = 1e-6;
    double closed_form = 1e-10;
    double bessel_integral = 1e-8;
    double tau_min = 1e-12;
    double king_min = 1e-12;
    double baskakov_chain = 1e-12;
    double conjecture3 = 1e-12;
};

struct SuiteConfig {
    std::vector<Family> families{all_families().begin(), all_families().end()};
    std::vector<int> degrees{1, 2, 3, 4, 8, 16, 32, 64};
    std::size_t x_grid = 257;
    std::size_t global_grid = 1001;
    double x_max = 50.0;
    std::vector<std::string> functions = corpus_names();
    std::uint64_t seed = kDefaultSeed;
    double tail_eps = kDefaultTailEps;
    int quad_n = kDefaultQuadPanels;
    /// 0 picks the hardware concurrency; GRUSS_LAB_THREADS caps it either way.
    unsigned threads = 0;
    int conjecture_nmax = 64;
    int rivlin_nmax = 100;
    Tolerances tol;
    /// Test-only: rewrites every functional the sweep builds.
    std::function<PointFunctional(const OperatorSpec&, double, PointFunctional)> functional_hook;

    void validate() const;
};

struct Witness {
    std::vector<std::pair<std::string, std::string>> labels;
    std::vector<std::pair<std::string, double>> values;
};

/// Aggregate of many checks of one kind. A check passes iff margin >= -tolerance.
struct Tally {
    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    double worst_tolerance = 0.0;
    Witness witness;

    template <class MakeWitness>
    bool record(double margin, double tolerance, MakeWitness&& make) {
        ++checks;
        const bool ok = margin >= -tolerance;
        if (!ok) ++failures;
        const bool worse = std::isnan(margin) ? !std::isnan(worst_margin)
                                              : margin + tolerance < worst_margin + worst_tolerance;
        if (worse || checks == 1) {
            worst_margin = margin;
            worst_tolerance = tolerance;
            witness = make();
        }
        return ok;
    }
    bool record(double margin, double tolerance) {
        return record(margin, tolerance, [] { return Witness{}; });
    }
    void record_error(const std::string& what, Witness w);
    /// Combine with a tally computed later in canonical order.
    void merge(const Tally& later);
    [[nodiscard]] bool passed() const noexcept { return failures == 0; }
};

struct Note {
    std::string name;
    std::vector<std::pair<std::string, double>> values;
    std::string text;
};

struct SuiteResult {
    std::string name;
    std::vector<Tally> tallies;
    std::vector<Note> notes;

    [[nodiscard]] bool passed() const noexcept;
    [[nodiscard]] std::size_t checks() const noexcept;
    [[nodiscard]] std::size_t failures() const noexcept;
    [[nodiscard]] const Tally* find(std::string_view tally) const noexcept;
};

struct Environment {
    std::string library_version;
    std::string compiler;
    std::string cxx_standard;
    std::string platform;
};

[[nodiscard]] Environment environment_stamp();

struct VerificationReport {
    static constexpr int kSchema = 1;
    SuiteConfig config;
    std::vector<SuiteResult> suites;
    Environment environment;

    [[nodiscard]] bool passed() const noexcept;
    [[nodiscard]] std::size_t failures() const noexcept;
    [[nodiscard]] const SuiteResult* find(std::string_view suite) const noexcept;
    /// Failing tally with the most negative slack-adjusted margin, if any.
    [[nodiscard]] const Tally* worst_failure() const noexcept;
    [[nodiscard]] std::string to_json(int indent = 2) const;
};

[[nodiscard]] VerificationReport run_suite(const SuiteConfig& cfg);

struct ConjectureRow {
    int n = 0;
    double min_second_diff = 0;  // divided by h^2
    int sign_changes = 0;        // of the first difference
    double sign_change_at = 0;   // midpoint of the first change
    double min_gap = 0;          // min phi_n - phi_n(1/2)
    bool conjecture3_holds = false;
};

[[nodiscard]] std::vector<ConjectureRow> conjecture_scan(int n_max, std::size_t grid = 1001,
                                                         double tol = 1e-12);

struct SharpnessRow {
    std::string witness;
    double lhs = 0, rhs = 0;
    bool passed = false;
};

[[nodiscard]] std::vector<SharpnessRow> sharpness_suite(double tol = 1e-10);

/// Chebyshev sign checks over every positive functional the config sweeps.
[[nodiscard]] SuiteResult monotone_chebyshev_check(const SuiteConfig& cfg);

/// Worker count after the GRUSS_LAB_THREADS cap.
[[nodiscard]] unsigned effective_threads(unsigned requested);

}  // namespace gruss
