#include "topk/rules.hpp"

#include "topk/errors.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <regex>
#include <tuple>

namespace topk {

namespace {

void require_size(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw DomainError(std::string(what) + ": expected " + std::to_string(want) + " candidates, got " +
                          std::to_string(got));
    }
}

}  // namespace

ScoringVector::ScoringVector(std::vector<Rational> s) : s_(std::move(s)) {
    if (s_.empty() || s_.front() <= 0) {
        throw DomainError("scoring vector needs s_1 > 0");
    }
    for (std::size_t j = 0; j < s_.size(); ++j) {
        if (s_[j] < 0 || (j > 0 && s_[j] > s_[j - 1])) {
            throw DomainError("scoring vector must be non-negative and non-increasing");
        }
    }
}

TopKScoringVector::TopKScoringVector(std::vector<Rational> head, Rational s_star)
    : head_(std::move(head)), s_star_(std::move(s_star)) {
    if (head_.empty()) {
        throw DomainError("top-k scoring vector needs k >= 1");
    }
    for (std::size_t j = 1; j < head_.size(); ++j) {
        if (head_[j] > head_[j - 1]) {
            throw DomainError("top-k scoring vector must be non-increasing");
        }
    }
    if (s_star_ < 0 || head_.back() < s_star_ || head_.front() <= s_star_) {
        throw DomainError("top-k scoring vector needs s_k >= s* >= 0 and s_1 > s*");
    }
}

ScoringVector borda_vector(std::size_t m) {
    std::vector<Rational> s(m);
    for (std::size_t j = 0; j < m; ++j) {
        s[j] = Rational(static_cast<long long>(m - 1 - j));
    }
    return ScoringVector(std::move(s));
}

ScoringVector harmonic_vector(std::size_t m) {
    std::vector<Rational> s(m);
    for (std::size_t j = 0; j < m; ++j) {
        s[j] = make_rational(1, static_cast<std::int64_t>(j + 1));
    }
    return ScoringVector(std::move(s));
}

ScoringVector approval_vector(std::size_t m, std::size_t approved) {
    if (approved < 1 || approved > m) {
        throw DomainError("approval width must lie in [1, m]");
    }
    std::vector<Rational> s(m, Rational(0));
    std::fill_n(s.begin(), approved, Rational(1));
    return ScoringVector(std::move(s));
}

Rational completion_score(const ScoringVector& vector, std::size_t k, CompletionPolicy policy) {
    const std::size_t m = vector.size();
    if (k < 1 || k + 1 > m) {
        throw DomainError("completion score needs 1 <= k <= m-1");
    }
    if (policy == CompletionPolicy::zero) {
        return Rational(0);
    }
    Rational tail = 0;
    for (std::size_t j = k; j < m; ++j) {
        tail += vector[j];
    }
    return tail / static_cast<long long>(m - k);
}

TopKScoringVector topk_vector(const ScoringVector& vector, std::size_t k, CompletionPolicy policy) {
    const auto values = vector.values();
    Rational s_star = completion_score(vector, k, policy);
    return TopKScoringVector(std::vector<Rational>(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k)),
                             std::move(s_star));
}

std::vector<Count> position_counts(const Profile& profile) {
    const std::size_t m = profile.num_candidates();
    std::vector<Count> counts(m * m, 0);
    for (const auto& e : profile.entries()) {
        const auto order = e.ballot.order();
        for (std::size_t j = 0; j < m; ++j) {
            counts[order[j] * m + j] += e.count;
        }
    }
    return counts;
}

ScoreTable psr_scores(const Profile& profile, const ScoringVector& vector) {
    const std::size_t m = profile.num_candidates();
    require_size(vector.size(), m, "psr_scores");
    const auto counts = position_counts(profile);
    ScoreTable scores(m, Rational(0));
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t j = 0; j < m; ++j) {
            if (counts[c * m + j] != 0) {
                scores[c] += vector[j] * static_cast<unsigned long long>(counts[c * m + j]);
            }
        }
    }
    return scores;
}

ScoreTable topk_psr_scores(const TopKProfile& topk, const TopKScoringVector& tv) {
    const std::size_t m = topk.num_candidates();
    const std::size_t k = topk.k();
    if (tv.k() != k) {
        throw DomainError("top-k scoring vector length differs from profile k");
    }
    std::vector<Count> counts(m * k, 0);
    std::vector<Count> ranked(m, 0);
    for (const auto& e : topk.entries()) {
        const auto order = e.ballot.order();
        for (std::size_t j = 0; j < order.size(); ++j) {
            counts[order[j] * k + j] += e.count;
            ranked[order[j]] += e.count;
        }
    }
    const auto head = tv.head();
    ScoreTable scores(m, Rational(0));
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t j = 0; j < k; ++j) {
            if (counts[c * k + j] != 0) {
                scores[c] += head[j] * static_cast<unsigned long long>(counts[c * k + j]);
            }
        }
        const Count unranked = topk.num_voters() - ranked[c];
        if (unranked != 0) {
            scores[c] += tv.s_star() * static_cast<unsigned long long>(unranked);
        }
    }
    return scores;
}

ScoreTable copeland_scores(const MajorityGraph& graph) {
    const std::size_t m = graph.num_candidates();
    ScoreTable scores(m, Rational(0));
    const Rational half = make_rational(1, 2);
    for (CandidateId a = 0; a < m; ++a) {
        for (CandidateId b = 0; b < m; ++b) {
            if (a == b) {
                continue;
            }
            if (graph.has_edge(a, b)) {
                scores[a] += 1;
            } else if (!graph.has_edge(b, a)) {
                scores[a] += half;
            }
        }
    }
    return scores;
}

ScoreTable maximin_scores(const PairwiseTally& tally) {
    const std::size_t m = tally.num_candidates();
    if (m < 2) {
        throw DomainError("maximin needs at least two candidates");
    }
    ScoreTable scores(m);
    for (CandidateId a = 0; a < m; ++a) {
        Count worst = tally.num_voters();
        for (CandidateId x = 0; x < m; ++x) {
            if (x != a) {
                worst = std::min(worst, tally(a, x));
            }
        }
        scores[a] = Rational(static_cast<unsigned long long>(worst));
    }
    return scores;
}

CandidateId ranked_pairs_winner(const PairwiseTally& tally, const TieBreak& tb) {
    const std::size_t m = tally.num_candidates();
    require_size(tb.size(), m, "ranked_pairs_winner");
    if (m == 1) {
        return 0;
    }
    struct Pair {
        CandidateId winner;
        CandidateId loser;
        Count count;
    };
    std::vector<Pair> pairs;
    pairs.reserve(m * (m - 1));
    for (CandidateId a = 0; a < m; ++a) {
        for (CandidateId b = 0; b < m; ++b) {
            if (a != b) {
                pairs.push_back({a, b, tally(a, b)});
            }
        }
    }
    std::sort(pairs.begin(), pairs.end(), [&tb](const Pair& p, const Pair& q) {
        if (p.count != q.count) {
            return p.count > q.count;
        }
        return std::tuple(tb.rank_of(p.winner), tb.rank_of(p.loser)) <
               std::tuple(tb.rank_of(q.winner), tb.rank_of(q.loser));
    });

    // reach[a * m + b]: b reachable from a over locked edges (reflexive).
    std::vector<bool> reach(m * m, false);
    for (std::size_t a = 0; a < m; ++a) {
        reach[a * m + a] = true;
    }
    std::vector<bool> has_incoming(m, false);
    for (const auto& p : pairs) {
        if (reach[p.loser * m + p.winner]) {
            continue;  // would close a cycle
        }
        has_incoming[p.loser] = true;
        for (std::size_t a = 0; a < m; ++a) {
            if (!reach[a * m + p.winner]) {
                continue;
            }
            for (std::size_t b = 0; b < m; ++b) {
                if (reach[p.loser * m + b]) {
                    reach[a * m + b] = true;
                }
            }
        }
    }
    // Every pair ends up locked in one direction, so the source is unique.
    const auto it = std::find(has_incoming.begin(), has_incoming.end(), false);
    return static_cast<CandidateId>(it - has_incoming.begin());
}

CandidateId stv_winner(const TopKProfile& topk, const TieBreak& tb) {
    const std::size_t m = topk.num_candidates();
    require_size(tb.size(), m, "stv_winner");
    std::vector<bool> eliminated(m, false);
    std::vector<Count> tops(m);
    for (std::size_t remaining = m; remaining > 1; --remaining) {
        std::fill(tops.begin(), tops.end(), 0);
        for (const auto& e : topk.entries()) {
            for (CandidateId c : e.ballot.order()) {
                if (!eliminated[c]) {
                    tops[c] += e.count;
                    break;
                }
            }
            // A ballot whose ranked candidates are all eliminated is exhausted.
        }
        std::optional<CandidateId> loser;
        for (CandidateId c = 0; c < m; ++c) {
            if (eliminated[c]) {
                continue;
            }
            if (!loser || tops[c] < tops[*loser] || (tops[c] == tops[*loser] && tb.prefers(*loser, c))) {
                loser = c;
            }
        }
        eliminated[*loser] = true;
    }
    const auto it = std::find(eliminated.begin(), eliminated.end(), false);
    return static_cast<CandidateId>(it - eliminated.begin());
}

CandidateId stv_winner(const Profile& profile, const TieBreak& tb) {
    if (profile.num_candidates() == 1) {
        return 0;
    }
    // Dropping the last position loses nothing.
    return stv_winner(truncate(profile, profile.num_candidates() - 1), tb);
}

CandidateId winner_from_scores(const ScoreTable& table, const TieBreak& tb) {
    if (table.empty()) {
        throw DomainError("empty score table");
    }
    require_size(tb.size(), table.size(), "winner_from_scores");
    CandidateId best = tb.priority()[0];
    for (CandidateId c : tb.priority()) {
        if (table[c] > table[best]) {
            best = c;
        }
    }
    return best;
}

ScoringVector RuleId::scoring_vector(std::size_t m) const {
    switch (family) {
        case RuleFamily::borda:
            return borda_vector(m);
        case RuleFamily::harmonic:
            return harmonic_vector(m);
        case RuleFamily::approval:
            return approval_vector(m, approved);
        default:
            throw UnsupportedRuleError(base_name() + " is not a positional scoring rule");
    }
}

RuleId RuleId::with_k(std::optional<std::size_t> new_k) const {
    RuleId out = *this;
    out.k = new_k;
    return out;
}

std::string RuleId::base_name() const {
    std::string name;
    switch (family) {
        case RuleFamily::borda:
            name = "borda";
            break;
        case RuleFamily::harmonic:
            name = "harmonic";
            break;
        case RuleFamily::approval:
            name = approved == 1 ? "plurality" : "approval" + std::to_string(approved);
            break;
        case RuleFamily::copeland:
            return "copeland";
        case RuleFamily::maximin:
            return "maximin";
        case RuleFamily::ranked_pairs:
            return "rp";
        case RuleFamily::stv:
            return "stv";
    }
    return name + (policy == CompletionPolicy::zero ? ":zero" : ":avg");
}

std::string RuleId::to_string() const {
    std::string base = base_name();
    if (!k) {
        return base;
    }
    const auto colon = base.find(':');
    const std::string suffix = "@k=" + std::to_string(*k);
    if (colon == std::string::npos) {
        return base + suffix;
    }
    return base.substr(0, colon) + suffix + base.substr(colon);
}

RuleId parse_rule(std::string_view text) {
    static const std::regex grammar(R"(^([a-z]+?)([0-9]*)(?:@k=([0-9]+))?(?::([a-z]+))?$)");
    const std::string s(text);
    std::smatch match;
    if (!std::regex_match(s, match, grammar)) {
        throw RuleSyntaxError("malformed rule '" + s + "' (expected name[@k=K][:zero|avg])");
    }
    const std::string name = match[1].str();
    const std::string digits = match[2].str();
    RuleId rule;
    if (name == "approval") {
        if (digits.empty()) {
            throw RuleSyntaxError("approval rule needs a width, e.g. approval2");
        }
        rule.family = RuleFamily::approval;
        rule.approved = std::stoul(digits);
        if (rule.approved == 0) {
            throw RuleSyntaxError("approval width must be positive");
        }
    } else if (!digits.empty()) {
        throw RuleSyntaxError("unknown rule '" + name + digits + "'");
    } else if (name == "borda") {
        rule.family = RuleFamily::borda;
    } else if (name == "harmonic") {
        rule.family = RuleFamily::harmonic;
    } else if (name == "plurality") {
        rule.family = RuleFamily::approval;
        rule.approved = 1;
    } else if (name == "copeland") {
        rule.family = RuleFamily::copeland;
    } else if (name == "maximin") {
        rule.family = RuleFamily::maximin;
    } else if (name == "rp") {
        rule.family = RuleFamily::ranked_pairs;
    } else if (name == "stv") {
        rule.family = RuleFamily::stv;
    } else {
        throw RuleSyntaxError("unknown rule '" + name + "'");
    }
    if (match[3].matched) {
        const std::string k_text = match[3].str();
        std::size_t k = 0;
        const auto [ptr, ec] = std::from_chars(k_text.data(), k_text.data() + k_text.size(), k);
        if (ec != std::errc() || k == 0) {
            throw RuleSyntaxError("rule k must be a positive integer");
        }
        rule.k = k;
    }
    if (match[4].matched) {
        if (!rule.is_psr()) {
            throw RuleSyntaxError("completion policy only applies to positional scoring rules");
        }
        const std::string policy = match[4].str();
        if (policy == "zero") {
            rule.policy = CompletionPolicy::zero;
        } else if (policy == "avg") {
            rule.policy = CompletionPolicy::average;
        } else {
            throw RuleSyntaxError("unknown completion policy '" + policy + "'");
        }
    }
    return rule;
}

ScoreTable full_scores(const RuleId& rule, const Profile& profile) {
    if (rule.is_psr()) {
        return psr_scores(profile, rule.scoring_vector(profile.num_candidates()));
    }
    switch (rule.family) {
        case RuleFamily::copeland:
            return copeland_scores(majority_graph(pairwise_tally(profile), MajorityMode::complete));
        case RuleFamily::maximin:
            return maximin_scores(pairwise_tally(profile));
        default:
            throw UnsupportedRuleError(rule.base_name() + " is not score-based");
    }
}

ScoreTable topk_scores(const RuleId& rule, const TopKProfile& topk) {
    if (rule.is_psr()) {
        return topk_psr_scores(topk, topk_vector(rule.scoring_vector(topk.num_candidates()), topk.k(), rule.policy));
    }
    switch (rule.family) {
        case RuleFamily::copeland:
            return copeland_scores(majority_graph(dominance_tally(topk), MajorityMode::topk));
        case RuleFamily::maximin:
            return maximin_scores(dominance_tally(topk));
        default:
            throw UnsupportedRuleError(rule.base_name() + " is not score-based");
    }
}

CandidateId apply_rule(const RuleId& rule, const Profile& profile, const TieBreak& tb) {
    require_size(tb.size(), profile.num_candidates(), "apply_rule");
    if (rule.k) {
        return apply_rule(rule, truncate(profile, *rule.k), tb);
    }
    switch (rule.family) {
        case RuleFamily::ranked_pairs:
            return ranked_pairs_winner(pairwise_tally(profile), tb);
        case RuleFamily::stv:
            return stv_winner(profile, tb);
        default:
            return winner_from_scores(full_scores(rule, profile), tb);
    }
}

CandidateId apply_rule(const RuleId& rule, const TopKProfile& topk, const TieBreak& tb) {
    require_size(tb.size(), topk.num_candidates(), "apply_rule");
    if (rule.k && *rule.k != topk.k()) {
        throw DomainError("rule " + rule.to_string() + " applied to a top-" + std::to_string(topk.k()) +
                          " profile");
    }
    switch (rule.family) {
        case RuleFamily::ranked_pairs:
            return ranked_pairs_winner(dominance_tally(topk), tb);
        case RuleFamily::stv:
            return stv_winner(topk, tb);
        default:
            return winner_from_scores(topk_scores(rule, topk), tb);
    }
}

}  // namespace topk
