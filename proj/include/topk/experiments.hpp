#pragma once

#include "topk/ballots.hpp"
#include "topk/csv.hpp"
#include "topk/preflib.hpp"
#include "topk/rational.hpp"
#include "topk/rules.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace topk {

/// Complete profiles drawn from a Mallows model centred on the identity ranking.
struct MallowsSource {
    std::size_t m = 7;
    double phi = 1.0;
    std::size_t n = 100;
};

/// Sub-elections of n_star voters drawn from a real dataset.
struct PreflibSource {
    std::shared_ptr<const ElectionDataset> dataset;
    Count n_star = 10;
    SamplingMode mode = SamplingMode::without_replacement;
};

/// The same profile in every trial.
struct FixedSource {
    Profile profile;
};

using ProfileSource = std::variant<MallowsSource, PreflibSource, FixedSource>;

std::size_t source_candidates(const ProfileSource& source);

struct ExperimentConfig {
    ProfileSource source = MallowsSource{};
    /// Rules without a k part; truncation levels come from k_values.
    std::vector<RuleId> rules;
    std::vector<std::size_t> k_values;
    std::size_t trials = 1000;
    std::uint64_t base_seed = 0;
    /// Defaults to ascending candidate index.
    std::optional<TieBreak> tiebreak;
    /// Worker threads; never changes results.
    std::size_t workers = 1;

    /// Throws DomainError on out-of-range k, zero trials, empty rule list or rules carrying k.
    void validate() const;
};

struct TrialRecord {
    std::size_t trial_index = 0;
    RuleId rule;
    std::size_t k = 0;
    CandidateId true_winner = 0;
    CandidateId topk_winner = 0;
    bool agree = false;
    /// Present only when requested and the rule is score-based.
    std::optional<ExtendedRatio> ratio;
};

/// All (trial, rule, k) outcomes, ordered by trial index, then rule, then k. Trial t draws its
/// profile from an Rng seeded with derive_seed(base_seed, t).
std::vector<TrialRecord> run_trials(const ExperimentConfig& cfg, bool with_ratio);

struct SuccessRow {
    RuleId rule;
    std::size_t k = 0;
    std::size_t trials = 0;
    std::size_t agreements = 0;

    [[nodiscard]] double rate() const { return static_cast<double>(agreements) / static_cast<double>(trials); }
};

/// One row per (rule, k), rules outermost.
std::vector<SuccessRow> run_success_rate(const ExperimentConfig& cfg);

struct RatioRow {
    RuleId rule;
    std::size_t k = 0;
    std::size_t trials = 0;
    double mean_ratio = 0.0;          ///< over finite ratios only
    std::optional<Rational> max_ratio;  ///< largest finite ratio, exact
    std::size_t inf_count = 0;
};

/// Throws UnsupportedRuleError before running anything if a rule is not score-based.
std::vector<RatioRow> run_ratio(const ExperimentConfig& cfg);

struct MinKRow {
    RuleId rule;
    std::size_t min_k = 0;
};

/// Smallest k for which every trial agrees; m-1 if none smaller does. Uses k = 1..m-1
/// regardless of cfg.k_values.
std::vector<MinKRow> min_k_search(const ExperimentConfig& cfg);

struct SweepRow {
    RuleId rule;
    std::size_t k = 0;
    Count n_star = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double rate = 0.0;
};

struct SweepConfig {
    std::vector<Count> n_star_grid;
    std::vector<std::size_t> k_grid;
    std::vector<RuleId> rules;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    std::optional<TieBreak> tiebreak;
    std::size_t workers = 1;
    SamplingMode mode = SamplingMode::without_replacement;
};

/// Success rate for each (n_star, rule, k) over resampled sub-elections of `dataset`.
std::vector<SweepRow> sweep_real_data(std::shared_ptr<const ElectionDataset> dataset, const SweepConfig& cfg);

/// `rule,k,phi,n,trials,seed,rate`
CsvTable success_table(const ExperimentConfig& cfg, const std::vector<SuccessRow>& rows);
/// `rule,k,phi,n,trials,seed,mean_ratio,max_ratio,inf_count`
CsvTable ratio_table(const ExperimentConfig& cfg, const std::vector<RatioRow>& rows);
/// `rule,k,n_star,trials,seed,rate`
CsvTable sweep_table(const std::vector<SweepRow>& rows);
/// `rule,min_k,phi,n,trials,seed`
CsvTable min_k_table(const ExperimentConfig& cfg, const std::vector<MinKRow>& rows);

}  // namespace topk
