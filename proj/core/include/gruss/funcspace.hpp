#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gruss {

/// Closed interval [lo, hi]; hi may be +infinity.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    [[nodiscard]] bool contains(double x) const noexcept { return x >= lo && x <= hi; }
    [[nodiscard]] double diameter() const noexcept { return hi - lo; }
    [[nodiscard]] bool bounded() const noexcept {
        return hi < std::numeric_limits<double>::infinity();
    }
};

struct Range {
    double min = 0.0;
    double max = 0.0;

    [[nodiscard]] double width() const noexcept { return max - min; }
};

/// A named scalar function with its domain of definition.
class RealFunction {
public:
    using Evaluator = std::function<double(double)>;

    RealFunction(std::string name, Interval domain, Evaluator eval,
                 std::optional<Range> published_range = std::nullopt);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] const Interval& domain() const noexcept { return domain_; }
    [[nodiscard]] const std::optional<Range>& published_range() const noexcept { return range_; }
    [[nodiscard]] bool bounded() const noexcept { return range_.has_value(); }

    /// Unchecked evaluation.
    double operator()(double x) const { return eval_(x); }
    /// Throws std::invalid_argument when x lies outside the domain.
    [[nodiscard]] double at(double x) const;

    /// Values at every node; throws if a node leaves the domain.
    [[nodiscard]] std::vector<double> sample(std::span<const double> xs) const;

private:
    std::string name_;
    Interval domain_;
    Evaluator eval_;
    std::optional<Range> range_;
};

/// Strictly increasing finite list of reals.
class NodeSet {
public:
    NodeSet() = default;
    explicit NodeSet(std::vector<double> nodes);

    /// `count` equispaced points from lo to hi inclusive (count >= 2, or 1 with lo == hi).
    static NodeSet uniform(double lo, double hi, std::size_t count);
    static NodeSet uniform(Interval domain, std::size_t count) {
        return uniform(domain.lo, domain.hi, count);
    }

    [[nodiscard]] std::span<const double> values() const noexcept { return nodes_; }
    [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
    [[nodiscard]] bool empty() const noexcept { return nodes_.empty(); }
    [[nodiscard]] double operator[](std::size_t i) const { return nodes_[i]; }
    [[nodiscard]] double front() const { return nodes_.front(); }
    [[nodiscard]] double back() const { return nodes_.back(); }

private:
    std::vector<double> nodes_;
};

// ---------------------------------------------------------------------------
// Corpus

inline constexpr std::uint64_t kDefaultSeed = 0x5EED2011ULL;

/// Names of the ten corpus members, in canonical order.
[[nodiscard]] const std::vector<std::string>& corpus_names();

/// Builds one corpus member (or the auxiliary "one_minus_e1") by name.
/// Throws std::invalid_argument for unknown names.
[[nodiscard]] RealFunction corpus_function(std::string_view name,
                                           std::uint64_t seed = kDefaultSeed);

[[nodiscard]] std::vector<RealFunction> make_corpus(std::uint64_t seed = kDefaultSeed);

/// True when x agrees, to 1e-14 relative, with a fraction whose denominator is at most 2^20.
[[nodiscard]] bool is_small_rational(double x) noexcept;

// ---------------------------------------------------------------------------
// Oscillations and ranges

/// max - min over the values; throws on empty input.
[[nodiscard]] double oscillation_of_values(std::span<const double> values);
[[nodiscard]] Range range_of_values(std::span<const double> values);

[[nodiscard]] double oscillation(const RealFunction& f, const NodeSet& nodes);
[[nodiscard]] Range range_on_grid(const RealFunction& f, const NodeSet& grid);

/// Sup of |f(x) - f(y)| over grid pairs with |x - y| <= t (t is widened by a
/// rounding allowance of 1e-12 times the grid diameter).
[[nodiscard]] double modulus(const RealFunction& f, double t, const NodeSet& grid);

/// max |f(x + t) - f(x)| over pairs with one end on the uniform grid and the
/// other exactly t away. A lower estimate of omega(f; t) that needs no grid
/// alignment of t.
/// `grid_values`, when nonempty, are f on that grid and are not re-evaluated.
[[nodiscard]] double modulus_at_step(const RealFunction& f, double t, Interval domain,
                                     std::size_t grid_points,
                                     std::span<const double> grid_values = {});

// ---------------------------------------------------------------------------
// Least concave majorant

struct HullVertex {
    double t;
    double value;
};

/// Sampled modulus of continuity and its least concave majorant.
///
/// The majorant is the upper concave envelope of the samples (t_i, omega_i);
/// between vertices it is linear and beyond the last sample it stays at
/// omega(diameter).
class ModulusEnvelope {
public:
    ModulusEnvelope(std::vector<double> ts, std::vector<double> omega,
                    std::vector<HullVertex> hull);

    [[nodiscard]] std::span<const double> ts() const noexcept { return ts_; }
    [[nodiscard]] std::span<const double> omega() const noexcept { return omega_; }
    [[nodiscard]] std::span<const HullVertex> hull() const noexcept { return hull_; }
    [[nodiscard]] double diameter() const noexcept { return ts_.back(); }

    /// Least concave majorant evaluated at t >= 0.
    [[nodiscard]] double majorant(double t) const;

private:
    std::vector<double> ts_;
    std::vector<double> omega_;
    std::vector<HullVertex> hull_;
};

/// Upper concave envelope of the samples by a monotone-chain scan.
/// Requires ts strictly increasing, ts[0] == 0 and omega[0] == 0.
[[nodiscard]] ModulusEnvelope concave_majorant(std::vector<double> ts, std::vector<double> omega);

/// Envelope of f on a uniform grid of `grid_points` points over `domain`
/// (which must be bounded). omega is sampled at every multiple of the spacing.
[[nodiscard]] ModulusEnvelope modulus_envelope(const RealFunction& f, Interval domain,
                                               std::size_t grid_points);

}  // namespace gruss
