#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ruleinfer/inference.hpp"

namespace ruleinfer {

class CoverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Nonnegative fraction num/den in lowest terms.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);
    /// Accepts "3", "3/2" and decimals such as "0.25".
    static Rational parse(const std::string& text);

    [[nodiscard]] std::int64_t num() const noexcept { return num_; }
    [[nodiscard]] std::int64_t den() const noexcept { return den_; }
    [[nodiscard]] std::string str() const;
    [[nodiscard]] double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
    }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// exact: only spurious-free candidates, minimize rule count.
/// lossy: all candidates, minimize ρ·rules + w·spurious.
/// generating: all candidates, minimize rule count ignoring spurious transitions.
enum class CoverMode { exact, lossy, generating };

struct CoverProblem {
    CoverMode mode = CoverMode::exact;
    Rational rho{1};
    Rational spurious_weight{1};
    std::size_t universe = 0;
    std::vector<Coverage> sets;
    /// Per set: ids of the spurious transitions it generates (lossy mode only).
    std::vector<std::vector<std::uint32_t>> spurious;
    std::size_t spurious_total = 0;
    /// Canonical rule codes, used for deterministic tie-breaking.
    std::vector<CanonicalCode> codes;
    /// Pool index of every set.
    std::vector<std::size_t> origin;

    /// Integer objective coefficients: objective = (rule_cost·|x| + spurious_cost·|z|) / scale.
    [[nodiscard]] std::int64_t rule_cost() const;
    [[nodiscard]] std::int64_t spurious_cost() const;
    [[nodiscard]] std::int64_t scale() const;
};

struct Solution {
    std::vector<std::size_t> chosen; ///< set indices, ascending
    Rational objective;
    std::vector<std::uint32_t> spurious_incurred;
    bool optimal = false;
    std::size_t nodes = 0;
};

/// Throws CoverError when some universe element cannot be covered. Lossy mode
/// requires complete spurious sets.
[[nodiscard]] CoverProblem build_cover_problem(const CandidatePool& pool, CoverMode mode, Rational rho = Rational(1),
                                               Rational spurious_weight = Rational(1));

struct SolveOptions {
    std::optional<std::chrono::duration<double>> timeout;
};

/// Branch and bound with reductions and a greedy incumbent. In lossy mode ties in
/// the objective go to the selection with fewer spurious transitions. On timeout
/// the incumbent is returned with optimal = false.
[[nodiscard]] Solution solve_exact(const CoverProblem& problem, const SolveOptions& options = {});
[[nodiscard]] Solution solve_greedy(const CoverProblem& problem);

/// Objective of an arbitrary selection; throws CoverError when it does not cover.
[[nodiscard]] Solution evaluate(const CoverProblem& problem, std::vector<std::size_t> chosen);

/// The 0-1 program in CPLEX LP syntax with integer-scaled coefficients.
[[nodiscard]] std::string export_lp(const CoverProblem& problem);

} // namespace ruleinfer
