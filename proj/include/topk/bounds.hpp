#pragma once

#include "topk/ballots.hpp"
#include "topk/rational.hpp"
#include "topk/rules.hpp"

#include <cstddef>

namespace topk {

/// Worst-case ratio S(true winner) / S(top-k winner) over all profiles lies in [lower, upper].
struct RatioBound {
    ExtendedRatio lower;
    ExtendedRatio upper;
};

/// A complete profile whose top-k truncation elects x1 while the complete rule elects x2.
/// Both winners are checked against the rules module at construction time.
struct AdversarialInstance {
    Profile profile;
    std::size_t k = 0;
    CandidateId x1 = 0;  ///< top-k winner
    CandidateId x2 = 1;  ///< true winner
    ExtendedRatio claimed_ratio;
    /// Every candidate has the same top-k score (the truncated winner is decided by tie-break).
    bool topk_scores_tied = false;
};

/// Bounds for the top-k PSR (s_1..s_k, s_star) approximating `s`. With s'_i = s_i - s_star:
///   lower = 1 - s_{k+1}/s_1 + (s_{k+1}/s_1) * m s'_1 / (s'_1 + ... + s'_k)
///   upper = 1 - s_{k+1}/s'_1 + (1 + s_star/s'_1) * m s_{k+1} / (s'_1 + ... + s'_k)
/// Requires 1 <= k <= m-2, s'_k >= 0 and s'_1 > 0.
RatioBound psr_bounds(const ScoringVector& s, std::size_t k, const Rational& s_star);

/// Two-block-plus-filler construction: for every ordered (k-1)-list L of x3..xm, alpha votes
/// x1 L x2 - and alpha votes x2 L - x1; for every ordered k-list L' of x3..xm, beta votes
/// L' x2 - x1 ("-" = remaining candidates by ascending id). alpha and beta are the smallest
/// integers making every top-k score equal. x1 = candidate 0, x2 = candidate 1.
/// Requires k >= 2, m >= k+2; throws ConstructionError when beta would be negative or the
/// winners come out differently.
AdversarialInstance psr_adversarial(const ScoringVector& s, std::size_t k, const Rational& s_star);

/// (m-k, m-k+1). Requires 1 <= k <= m-1.
RatioBound maximin_bounds(std::size_t m, std::size_t k);

/// Cyclic profile (vote i starts at x_{i+1} and wraps), then in every vote x1 is moved to the
/// bottom unless in the top k, and x2 is moved to position k+1 unless in the top k.
/// Requires 2 <= k <= m-2.
AdversarialInstance maximin_adversarial(std::size_t m, std::size_t k);

/// (infinity, infinity).
RatioBound copeland_bounds(std::size_t m, std::size_t k);

/// Two votes x1..xk plus one vote per ordered k-list of all candidates, completed with x1 last
/// and x2 at position k+1 where they are unranked. Requires 2 <= k <= m-2.
AdversarialInstance copeland_adversarial(std::size_t m, std::size_t k);

/// S(f(P)) / S(f_k(P_k)), both scored by the complete rule on P. Infinity when the denominator
/// is 0. Throws UnsupportedRuleError for Ranked Pairs and STV.
ExtendedRatio price_of_truncation(const Profile& profile, const RuleId& rule, std::size_t k, const TieBreak& tb);

/// All ordered r-lists of distinct elements of `pool`, lexicographic in pool order.
std::vector<std::vector<CandidateId>> ordered_lists(std::span<const CandidateId> pool, std::size_t r);

}  // namespace topk
