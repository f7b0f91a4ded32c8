#include "topk/bounds.hpp"

#include "topk/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace topk {

namespace {

Rational falling_factorial_ratio(std::size_t top, std::size_t bottom) {
    // top! / bottom!, top >= bottom
    Rational out = 1;
    for (std::size_t i = bottom + 1; i <= top; ++i) {
        out *= static_cast<unsigned long long>(i);
    }
    return out;
}

std::vector<CandidateId> candidates_from(std::size_t first, std::size_t m) {
    std::vector<CandidateId> out(m - first);
    std::iota(out.begin(), out.end(), static_cast<CandidateId>(first));
    return out;
}

// prefix followed by every other candidate in ascending order.
std::vector<CandidateId> complete_ascending(const std::vector<CandidateId>& prefix, std::size_t m) {
    std::vector<bool> used(m, false);
    for (CandidateId c : prefix) {
        used[c] = true;
    }
    std::vector<CandidateId> out = prefix;
    for (CandidateId c = 0; c < m; ++c) {
        if (!used[c]) {
            out.push_back(c);
        }
    }
    return out;
}

// Moves x1 (id 0) to the bottom and x2 (id 1) to position k+1 wherever they sit below the top k.
std::vector<CandidateId> push_x1_down_x2_up(std::vector<CandidateId> vote, std::size_t k) {
    auto pos = [&vote](CandidateId c) { return static_cast<std::size_t>(std::find(vote.begin(), vote.end(), c) - vote.begin()); };
    if (const auto p1 = pos(0); p1 >= k) {
        vote.erase(vote.begin() + static_cast<std::ptrdiff_t>(p1));
        vote.push_back(0);
    }
    if (const auto p2 = pos(1); p2 >= k) {
        vote.erase(vote.begin() + static_cast<std::ptrdiff_t>(p2));
        vote.insert(vote.begin() + static_cast<std::ptrdiff_t>(k), 1);
    }
    return vote;
}

Profile merged_profile(std::size_t m, const std::map<std::vector<CandidateId>, Count>& votes) {
    std::vector<Profile::Entry> entries;
    entries.reserve(votes.size());
    for (const auto& [order, count] : votes) {
        entries.push_back({Ranking(order), count});
    }
    return Profile(m, std::move(entries));
}

bool all_equal(const ScoreTable& t) {
    return std::adjacent_find(t.begin(), t.end(), std::not_equal_to<>()) == t.end();
}

void require_pathological_range(std::size_t m, std::size_t k, const char* what) {
    if (k < 2 || k + 2 > m) {
        throw ConstructionError(std::string(what) + " needs 2 <= k <= m-2 (m=" + std::to_string(m) +
                                ", k=" + std::to_string(k) + ")");
    }
}

}  // namespace

std::vector<std::vector<CandidateId>> ordered_lists(std::span<const CandidateId> pool, std::size_t r) {
    std::vector<std::vector<CandidateId>> out;
    if (r > pool.size()) {
        return out;
    }
    std::vector<CandidateId> current;
    std::vector<bool> used(pool.size(), false);
    std::function<void()> extend = [&]() {
        if (current.size() == r) {
            out.push_back(current);
            return;
        }
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (used[i]) {
                continue;
            }
            used[i] = true;
            current.push_back(pool[i]);
            extend();
            current.pop_back();
            used[i] = false;
        }
    };
    extend();
    return out;
}

RatioBound psr_bounds(const ScoringVector& s, std::size_t k, const Rational& s_star) {
    const std::size_t m = s.size();
    if (k < 1 || k + 2 > m) {
        throw DomainError("psr_bounds needs 1 <= k <= m-2");
    }
    if (s_star < 0 || s[k - 1] < s_star) {
        throw DomainError("psr_bounds needs 0 <= s* <= s_k");
    }
    const Rational s1_shift = s[0] - s_star;
    if (s1_shift <= 0) {
        throw DomainError("psr_bounds needs s_1 - s* > 0");
    }
    Rational shifted_sum = 0;
    for (std::size_t i = 0; i < k; ++i) {
        shifted_sum += s[i] - s_star;
    }
    const Rational& next = s[k];  // s_{k+1}
    const auto m_r = static_cast<unsigned long long>(m);

    const Rational lower = 1 - next / s[0] + (next / s[0]) * (m_r * s1_shift) / shifted_sum;
    const Rational upper = 1 - next / s1_shift + (1 + s_star / s1_shift) * (m_r * next) / shifted_sum;
    return {ExtendedRatio(lower), ExtendedRatio(upper)};
}

AdversarialInstance psr_adversarial(const ScoringVector& s, std::size_t k, const Rational& s_star) {
    const std::size_t m = s.size();
    require_pathological_range(m, k, "psr_adversarial");
    if (s_star < 0 || s[k - 1] < s_star || s[0] <= s_star) {
        throw ConstructionError("psr_adversarial needs 0 <= s* <= s_k and s* < s_1");
    }
    Rational shifted_sum = 0;
    for (std::size_t i = 0; i < k; ++i) {
        shifted_sum += s[i] - s_star;
    }
    const Rational s1_shift = s[0] - s_star;
    const Rational tail_shift = shifted_sum - s1_shift;  // s'_2 + ... + s'_k

    // All top-k scores tie iff beta/alpha equals this ratio.
    const Rational beta_num = static_cast<unsigned long long>(m - 2) * s1_shift - 2 * tail_shift;
    if (beta_num < 0) {
        throw ConstructionError("construction inapplicable: beta would be negative for this scoring vector");
    }
    const Rational beta_over_alpha = beta_num / (static_cast<unsigned long long>(m - k - 1) * shifted_sum);
    const auto alpha = static_cast<Count>(boost::multiprecision::denominator(beta_over_alpha));
    const auto beta = static_cast<Count>(boost::multiprecision::numerator(beta_over_alpha));

    const auto others = candidates_from(2, m);
    std::map<std::vector<CandidateId>, Count> votes;
    for (const auto& tail : ordered_lists(others, k - 1)) {
        std::vector<CandidateId> x1_vote{0};
        x1_vote.insert(x1_vote.end(), tail.begin(), tail.end());
        x1_vote.push_back(1);
        votes[complete_ascending(x1_vote, m)] += alpha;

        std::vector<CandidateId> x2_vote{1};
        x2_vote.insert(x2_vote.end(), tail.begin(), tail.end());
        auto completed = complete_ascending(x2_vote, m);
        completed.erase(std::find(completed.begin(), completed.end(), 0));
        completed.push_back(0);
        votes[completed] += alpha;
    }
    if (beta > 0) {
        for (const auto& head : ordered_lists(others, k)) {
            std::vector<CandidateId> vote = head;
            vote.push_back(1);
            auto completed = complete_ascending(vote, m);
            completed.erase(std::find(completed.begin(), completed.end(), 0));
            completed.push_back(0);
            votes[completed] += beta;
        }
    }

    AdversarialInstance inst{merged_profile(m, votes), k, 0, 1, {}, false};

    const auto values = s.values();
    const TopKScoringVector tv(std::vector<Rational>(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k)),
                               s_star);
    const auto tb = TieBreak::ascending(m);
    const auto truncated = topk_psr_scores(truncate(inst.profile, k), tv);
    inst.topk_scores_tied = all_equal(truncated);
    const auto full = psr_scores(inst.profile, s);
    if (winner_from_scores(truncated, tb) != inst.x1 || winner_from_scores(full, tb) != inst.x2) {
        throw ConstructionError("construction inapplicable: winners differ from x1 (top-k) / x2 (complete)");
    }

    // x1 is on top of Q*alpha votes and last elsewhere; x2 is on top of Q*alpha votes and at
    // position k+1 elsewhere.
    const Rational q = falling_factorial_ratio(m - 2, m - k - 1);
    const Rational alpha_votes = q * static_cast<unsigned long long>(alpha);
    const Rational beta_votes = q * static_cast<unsigned long long>(m - k - 1) * static_cast<unsigned long long>(beta);
    const Rational score_x1 = alpha_votes * s[0] + (alpha_votes + beta_votes) * s[m - 1];
    const Rational score_x2 = alpha_votes * s[0] + (alpha_votes + beta_votes) * s[k];
    inst.claimed_ratio = ExtendedRatio::quotient(score_x2, score_x1);
    return inst;
}

RatioBound maximin_bounds(std::size_t m, std::size_t k) {
    if (k < 1 || k + 1 > m) {
        throw DomainError("maximin_bounds needs 1 <= k <= m-1");
    }
    const auto gap = static_cast<long long>(m - k);
    return {ExtendedRatio(Rational(gap)), ExtendedRatio(Rational(gap + 1))};
}

AdversarialInstance maximin_adversarial(std::size_t m, std::size_t k) {
    require_pathological_range(m, k, "maximin_adversarial");
    std::map<std::vector<CandidateId>, Count> votes;
    for (std::size_t start = 0; start < m; ++start) {
        std::vector<CandidateId> cyc(m);
        for (std::size_t j = 0; j < m; ++j) {
            cyc[j] = static_cast<CandidateId>((start + j) % m);
        }
        votes[push_x1_down_x2_up(std::move(cyc), k)] += 1;
    }
    AdversarialInstance inst{merged_profile(m, votes), k, 0, 1, {}, false};
    inst.claimed_ratio = ExtendedRatio(Rational(static_cast<long long>(m - k)));

    const auto tb = TieBreak::ascending(m);
    const auto truncated = maximin_scores(dominance_tally(truncate(inst.profile, k)));
    inst.topk_scores_tied = all_equal(truncated);
    const auto full = maximin_scores(pairwise_tally(inst.profile));
    if (winner_from_scores(truncated, tb) != inst.x1 || winner_from_scores(full, tb) != inst.x2) {
        throw ConstructionError("construction inapplicable: winners differ from x1 (top-k) / x2 (complete)");
    }
    return inst;
}

RatioBound copeland_bounds(std::size_t m, std::size_t k) {
    if (k < 1 || k + 1 > m) {
        throw DomainError("copeland_bounds needs 1 <= k <= m-1");
    }
    return {ExtendedRatio::infinity(), ExtendedRatio::infinity()};
}

AdversarialInstance copeland_adversarial(std::size_t m, std::size_t k) {
    require_pathological_range(m, k, "copeland_adversarial");
    const auto all = candidates_from(0, m);
    std::map<std::vector<CandidateId>, Count> votes;
    auto complete = [&](const std::vector<CandidateId>& head) {
        return push_x1_down_x2_up(complete_ascending(head, m), k);
    };
    votes[complete(candidates_from(0, k))] += 2;
    for (const auto& head : ordered_lists(all, k)) {
        votes[complete(head)] += 1;
    }
    AdversarialInstance inst{merged_profile(m, votes), k, 0, 1, ExtendedRatio::infinity(), false};

    const auto tb = TieBreak::ascending(m);
    const auto truncated = copeland_scores(majority_graph(dominance_tally(truncate(inst.profile, k)), MajorityMode::topk));
    inst.topk_scores_tied = all_equal(truncated);
    const auto full = copeland_scores(majority_graph(pairwise_tally(inst.profile), MajorityMode::complete));
    if (winner_from_scores(truncated, tb) != inst.x1 || winner_from_scores(full, tb) != inst.x2) {
        throw ConstructionError("construction inapplicable: winners differ from x1 (top-k) / x2 (complete)");
    }
    return inst;
}

ExtendedRatio price_of_truncation(const Profile& profile, const RuleId& rule, std::size_t k, const TieBreak& tb) {
    if (!rule.is_score_based()) {
        throw UnsupportedRuleError("score ratio is undefined for " + rule.base_name() + " (not score-based)");
    }
    const RuleId complete_rule = rule.with_k(std::nullopt);
    const auto full = full_scores(complete_rule, profile);
    const CandidateId true_winner = winner_from_scores(full, tb);
    const CandidateId topk_winner = winner_from_scores(topk_scores(complete_rule, truncate(profile, k)), tb);
    return ExtendedRatio::quotient(full[true_winner], full[topk_winner]);
}

}  // namespace topk
