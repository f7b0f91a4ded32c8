#include "support.hpp"

#include "topk/errors.hpp"
#include "topk/rules.hpp"

#include <doctest.h>

using namespace topk;
using namespace testing_support;

namespace {

constexpr CandidateId a = 0, b = 1, c = 2, d = 3;

std::vector<Rational> rats(std::initializer_list<std::int64_t> xs) {
    std::vector<Rational> out;
    for (auto x : xs) {
        out.emplace_back(x);
    }
    return out;
}

}  // namespace

TEST_CASE("scoring vectors") {
    const auto borda = borda_vector(4);
    CHECK(std::vector<Rational>(borda.values().begin(), borda.values().end()) == rats({3, 2, 1, 0}));
    const auto h = harmonic_vector(3);
    CHECK(h[0] == 1);
    CHECK(h[1] == Rational(1, 2));
    CHECK(h[2] == Rational(1, 3));
    const auto plur = approval_vector(4, 1);
    CHECK(std::vector<Rational>(plur.values().begin(), plur.values().end()) == rats({1, 0, 0, 0}));
    CHECK_THROWS_AS(ScoringVector(rats({1, 2})), DomainError);
    CHECK_THROWS_AS(ScoringVector(rats({0, 0})), DomainError);
    CHECK_THROWS_AS(ScoringVector(rats({1, -1})), DomainError);
    CHECK_THROWS_AS(TopKScoringVector(rats({1}), Rational(2)), DomainError);
}

TEST_CASE("completion score") {
    CHECK(completion_score(borda_vector(5), 2, CompletionPolicy::average) == 1);
    CHECK(completion_score(harmonic_vector(4), 2, CompletionPolicy::average) == Rational(7, 24));
    CHECK(completion_score(harmonic_vector(4), 2, CompletionPolicy::zero) == 0);
    CHECK(completion_score(borda_vector(7), 3, CompletionPolicy::zero) == 0);
}

TEST_CASE("positional scores") {
    const auto p = example1();
    CHECK(psr_scores(p, borda_vector(4)) == rats({77, 45, 119, 131}));
    CHECK(psr_scores(profile_of(3, {{5, "abc"}}), borda_vector(3)) == rats({10, 5, 0}));
    CHECK(psr_scores(p, ScoringVector(rats({1, 1, 1, 1}))) == rats({62, 62, 62, 62}));

    const auto tv = topk_vector(borda_vector(4), 1, CompletionPolicy::average);
    CHECK(tv.s_star() == 1);
    const auto s1 = topk_psr_scores(truncate(p, 1), tv);
    CHECK(s1 == rats({102, 82, 92, 96}));
    CHECK(winner_from_scores(s1, TieBreak::ascending(4)) == a);

    const TopKProfile single(3, 1, {{TopKBallot({a}, 1, 3), 1}});
    CHECK(topk_psr_scores(single, TopKScoringVector(rats({1}), Rational(0))) == rats({1, 0, 0}));
}

TEST_CASE("positional scores match the brute-force oracle") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 3 + rng.uniform_below(5);
        std::vector<Ranking> rs;
        for (std::size_t i = 0, n = 1 + rng.uniform_below(30); i < n; ++i) {
            rs.emplace_back(random_permutation(m, rng));
        }
        const auto p = Profile::aggregate(m, rs);
        const auto votes = expand(p);
        const std::size_t k = 1 + rng.uniform_below(m - 1);
        for (const auto& s : {borda_vector(m), harmonic_vector(m)}) {
            const std::vector<Rational> full(s.values().begin(), s.values().end());
            CHECK(psr_scores(p, s) == positional(votes, m, full, Rational(0)));
            for (auto policy : {CompletionPolicy::zero, CompletionPolicy::average}) {
                const auto tv = topk_vector(s, k, policy);
                const std::vector<Rational> head(tv.head().begin(), tv.head().end());
                CHECK(topk_psr_scores(truncate(p, k), tv) == positional(prefixes(votes, k), m, head, tv.s_star()));
            }
        }
        const auto topk = truncate(p, k);
        const auto tk = prefixes(votes, k);
        CHECK(copeland_scores(majority_graph(dominance_tally(topk), MajorityMode::topk)) == copeland(tk, m));
        CHECK(maximin_scores(dominance_tally(topk)) == maximin(tk, m));
        CHECK(copeland_scores(majority_graph(pairwise_tally(p), MajorityMode::complete)) == copeland(votes, m));
        CHECK(maximin_scores(pairwise_tally(p)) == maximin(votes, m));
    }
}

TEST_CASE("copeland") {
    const auto topk_graph = majority_graph(dominance_tally(truncate(example1(), 2)), MajorityMode::topk);
    const auto s = copeland_scores(topk_graph);
    CHECK(s == rats({1, 0, 2, 3}));
    CHECK(winner_from_scores(s, TieBreak::ascending(4)) == d);
    CHECK(copeland_scores(MajorityGraph(4)) == std::vector<Rational>(4, Rational(3, 2)));
    const auto full = copeland_scores(majority_graph(pairwise_tally(example1()), MajorityMode::complete));
    CHECK(full[d] == 3);

    Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 2 + rng.uniform_below(6);
        std::vector<Ranking> rs;
        for (std::size_t i = 0, n = 1 + rng.uniform_below(10); i < n; ++i) {
            rs.emplace_back(random_permutation(m, rng));
        }
        const auto sc = copeland_scores(majority_graph(pairwise_tally(Profile::aggregate(m, rs)), MajorityMode::complete));
        Rational total = 0;
        for (const auto& x : sc) {
            total += x;
        }
        CHECK(total == Rational(m * (m - 1), 2));
    }
}

TEST_CASE("maximin") {
    const auto s = maximin_scores(dominance_tally(truncate(example1(), 2)));
    CHECK(s == rats({20, 10, 25, 32}));
    CHECK(winner_from_scores(s, TieBreak::ascending(4)) == d);
    CHECK(maximin_scores(pairwise_tally(profile_of(3, {{4, "abc"}}))) == rats({4, 0, 0}));
}

TEST_CASE("ranked pairs") {
    CHECK(ranked_pairs_winner(pairwise_tally(example1()), TieBreak::ascending(4)) == d);
    const auto cycle = pairwise_tally(profile_of(3, {{1, "abc"}, {1, "bca"}, {1, "cab"}}));
    CHECK(ranked_pairs_winner(cycle, TieBreak::ascending(3)) == a);
    CHECK(ranked_pairs_winner(cycle, TieBreak({b, c, a})) == b);
    CHECK(ranked_pairs_winner(cycle, TieBreak({c, a, b})) == c);
    CHECK(ranked_pairs_winner(pairwise_tally(profile_of(4, {{3, "cbda"}})), TieBreak::ascending(4)) == c);
}

TEST_CASE("stv") {
    const auto tb = TieBreak::ascending(4);
    CHECK(stv_winner(example1(), tb) == c);
    CHECK(stv_winner(truncate(example1(), 3), tb) == c);
    CHECK(stv_winner(truncate(example1(), 1), tb) == a);
    CHECK(stv_winner(profile_of(4, {{9, "bdca"}}), tb) == b);

    SUBCASE("exhausted ballots stop counting") {
        // k=1: b is eliminated and its 3 voters are gone; a keeps its 4 against c's 5.
        const auto p = profile_of(3, {{4, "abc"}, {3, "bac"}, {5, "cab"}});
        CHECK(stv_winner(p, TieBreak::ascending(3)) == a);
        CHECK(stv_winner(truncate(p, 1), TieBreak::ascending(3)) == c);
    }
}

TEST_CASE("winner from scores") {
    CHECK(winner_from_scores(rats({3, 3, 1}), TieBreak::ascending(3)) == 0);
    CHECK(winner_from_scores(rats({0, 5, 2}), TieBreak::ascending(3)) == 1);
    CHECK(winner_from_scores(rats({2, 2, 2}), TieBreak({2, 0, 1})) == 2);
}

TEST_CASE("rule syntax") {
    for (const std::string text : {"borda", "borda@k=2:avg", "harmonic@k=1:zero", "copeland@k=2", "maximin", "rp@k=3",
                                   "stv@k=2", "plurality", "approval3:zero"}) {
        const RuleId r = parse_rule(text);
        CHECK(parse_rule(r.to_string()) == r);
    }
    const RuleId h = parse_rule("harmonic@k=1:zero");
    CHECK(h.family == RuleFamily::harmonic);
    CHECK(h.k == 1u);
    CHECK(h.policy == CompletionPolicy::zero);
    CHECK(parse_rule("borda").policy == CompletionPolicy::average);
    CHECK(parse_rule("plurality").family == RuleFamily::approval);
    CHECK(parse_rule("rp").family == RuleFamily::ranked_pairs);
    for (const std::string bad : {"", "bordaa", "borda@k=", "copeland:zero", "borda:mean", "Borda", "stv@k=x"}) {
        CHECK_THROWS_AS(parse_rule(bad), RuleSyntaxError);
    }
}

TEST_CASE("apply rule on the example") {
    const auto p = example1();
    const auto tb = TieBreak::ascending(4);
    CHECK(apply_rule(parse_rule("copeland@k=2"), p, tb) == d);
    CHECK(apply_rule(parse_rule("maximin@k=2"), p, tb) == d);
    for (const std::string f : {"copeland", "maximin", "rp"}) {
        CAPTURE(f);
        CHECK(apply_rule(parse_rule(f + "@k=1"), p, tb) == a);
        CHECK(apply_rule(parse_rule(f + "@k=3"), p, tb) == d);
    }
    CHECK(apply_rule(parse_rule("borda"), p, tb) == d);
    CHECK_THROWS_AS(apply_rule(parse_rule("borda"), p, TieBreak::ascending(3)), DomainError);
    CHECK_THROWS_AS(apply_rule(parse_rule("borda@k=2"), truncate(p, 1), tb), DomainError);
}
