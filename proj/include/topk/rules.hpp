#pragma once

#include "topk/ballots.hpp"
#include "topk/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace topk {

/// Non-increasing, non-negative positional scores with s[0] > 0.
class ScoringVector {
public:
    explicit ScoringVector(std::vector<Rational> s);

    [[nodiscard]] std::size_t size() const { return s_.size(); }
    [[nodiscard]] const Rational& operator[](std::size_t pos) const { return s_[pos]; }
    [[nodiscard]] std::span<const Rational> values() const { return s_; }

private:
    std::vector<Rational> s_;
};

/// (s_1, ..., s_k, s*): ranked positions earn head[j], unranked candidates earn s_star.
class TopKScoringVector {
public:
    TopKScoringVector(std::vector<Rational> head, Rational s_star);

    [[nodiscard]] std::size_t k() const { return head_.size(); }
    [[nodiscard]] std::span<const Rational> head() const { return head_; }
    [[nodiscard]] const Rational& s_star() const { return s_star_; }

private:
    std::vector<Rational> head_;
    Rational s_star_;
};

enum class CompletionPolicy { zero, average };

/// Per-candidate exact scores.
using ScoreTable = std::vector<Rational>;

ScoringVector borda_vector(std::size_t m);
ScoringVector harmonic_vector(std::size_t m);
/// k'-approval: k' ones followed by zeros. approval_vector(m, 1) is plurality.
ScoringVector approval_vector(std::size_t m, std::size_t approved);

/// s* for a top-k version of `vector`: 0, or the mean of s_{k+1..m}.
Rational completion_score(const ScoringVector& vector, std::size_t k, CompletionPolicy policy);

/// (s_1..s_k, completion_score(...)).
TopKScoringVector topk_vector(const ScoringVector& vector, std::size_t k, CompletionPolicy policy);

/// position_counts[c * m + j]: voters placing c at position j.
std::vector<Count> position_counts(const Profile& profile);

ScoreTable psr_scores(const Profile& profile, const ScoringVector& vector);
ScoreTable topk_psr_scores(const TopKProfile& topk, const TopKScoringVector& tv);
/// Wins plus half a point per non-adjacent pair.
ScoreTable copeland_scores(const MajorityGraph& graph);
/// min over x != a of counts(a, x).
ScoreTable maximin_scores(const PairwiseTally& tally);

/// Locks ordered pairs by descending count (ties: tie-break order of winner, then loser),
/// skipping pairs that would close a cycle; returns the source of the locked order.
CandidateId ranked_pairs_winner(const PairwiseTally& tally, const TieBreak& tb);

/// Eliminates the candidate with the fewest current top-counts each round (ties: lowest
/// priority goes), skipping exhausted ballots, until one candidate remains.
CandidateId stv_winner(const TopKProfile& topk, const TieBreak& tb);
/// STV on complete rankings.
CandidateId stv_winner(const Profile& profile, const TieBreak& tb);

/// argmax; among maxima the highest-priority candidate.
CandidateId winner_from_scores(const ScoreTable& table, const TieBreak& tb);

enum class RuleFamily { borda, harmonic, approval, copeland, maximin, ranked_pairs, stv };

/// A voting rule, optionally in its top-k form.
///
/// Canonical string syntax: `name[@k=K][:policy]`, where name is one of borda, harmonic,
/// plurality, approvalN (N-approval), copeland, maximin, rp, stv and policy (PSRs only) is
/// `zero` or `avg`. Examples: `borda`, `borda@k=2:avg`, `harmonic@k=1:zero`, `copeland@k=2`.
struct RuleId {
    RuleFamily family = RuleFamily::borda;
    std::size_t approved = 1;  ///< k' for the approval family
    std::optional<std::size_t> k;
    CompletionPolicy policy = CompletionPolicy::average;

    [[nodiscard]] bool is_psr() const {
        return family == RuleFamily::borda || family == RuleFamily::harmonic ||
               family == RuleFamily::approval;
    }
    /// PSR, Maximin or Copeland.
    [[nodiscard]] bool is_score_based() const {
        return is_psr() || family == RuleFamily::maximin || family == RuleFamily::copeland;
    }
    [[nodiscard]] ScoringVector scoring_vector(std::size_t m) const;

    [[nodiscard]] RuleId with_k(std::optional<std::size_t> new_k) const;
    /// Round-trips through parse_rule.
    [[nodiscard]] std::string to_string() const;
    /// Family (+ policy for PSRs) without the k part, e.g. "borda:avg", "copeland".
    [[nodiscard]] std::string base_name() const;

    friend bool operator==(const RuleId&, const RuleId&) = default;
};

/// Throws RuleSyntaxError on malformed input.
RuleId parse_rule(std::string_view text);

/// Scores of the complete (non-truncated) rule on a complete profile. Score-based rules only.
ScoreTable full_scores(const RuleId& rule, const Profile& profile);
/// Scores of the top-k form of `rule` (k taken from `topk`). Score-based rules only.
ScoreTable topk_scores(const RuleId& rule, const TopKProfile& topk);

/// If rule.k is set, truncates `profile` at k and applies the top-k rule; otherwise applies
/// the complete rule.
CandidateId apply_rule(const RuleId& rule, const Profile& profile, const TieBreak& tb);
/// Applies the top-k rule at topk.k(); rule.k, when set, must equal topk.k().
CandidateId apply_rule(const RuleId& rule, const TopKProfile& topk, const TieBreak& tb);

}  // namespace topk
