#pragma once

// Fixtures and slow, obviously-correct reference computations. Everything here works on the
// expanded voter list (one std::vector per voter) so it shares no code path with the library.

#include "topk/ballots.hpp"
#include "topk/rational.hpp"
#include "topk/rng.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace testing_support {

using topk::CandidateId;
using topk::Count;
using topk::Rational;

using Votes = std::vector<std::vector<CandidateId>>;

// "adcb" -> {0, 3, 2, 1}
inline std::vector<CandidateId> letters(const std::string& s) {
    std::vector<CandidateId> out;
    for (char ch : s) {
        out.push_back(static_cast<CandidateId>(ch - 'a'));
    }
    return out;
}

inline topk::Profile profile_of(std::size_t m, const std::vector<std::pair<Count, std::string>>& rows) {
    std::vector<topk::Profile::Entry> entries;
    for (const auto& [count, s] : rows) {
        entries.push_back({topk::Ranking(letters(s)), count});
    }
    return topk::Profile(m, std::move(entries));
}

inline topk::Profile example1() {
    return profile_of(4, {{20, "adcb"}, {10, "bcda"}, {15, "cdba"}, {17, "dcab"}});
}

inline Votes expand(const topk::Profile& p) {
    Votes out;
    for (const auto& e : p.entries()) {
        for (Count i = 0; i < e.count; ++i) {
            out.emplace_back(e.ballot.order().begin(), e.ballot.order().end());
        }
    }
    return out;
}

inline Votes prefixes(const Votes& votes, std::size_t k) {
    Votes out;
    for (const auto& v : votes) {
        out.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
    }
    return out;
}

inline long index_in(const std::vector<CandidateId>& v, CandidateId c) {
    const auto it = std::find(v.begin(), v.end(), c);
    return it == v.end() ? -1 : static_cast<long>(it - v.begin());
}

// a over b: ranked above b, or ranked while b is not. Works for complete votes too.
inline bool dominates(const std::vector<CandidateId>& v, CandidateId a, CandidateId b) {
    const long ia = index_in(v, a);
    const long ib = index_in(v, b);
    return ia >= 0 && (ib < 0 || ia < ib);
}

inline Count count_over(const Votes& votes, CandidateId a, CandidateId b) {
    Count n = 0;
    for (const auto& v : votes) {
        n += dominates(v, a, b) ? 1 : 0;
    }
    return n;
}

// score = sum over voters of head[pos] for ranked candidates, s_star otherwise.
inline std::vector<Rational> positional(const Votes& votes, std::size_t m, const std::vector<Rational>& head,
                                        const Rational& s_star) {
    std::vector<Rational> score(m, Rational(0));
    for (const auto& v : votes) {
        for (CandidateId c = 0; c < m; ++c) {
            const long i = index_in(v, c);
            score[c] += i >= 0 ? head[static_cast<std::size_t>(i)] : s_star;
        }
    }
    return score;
}

inline std::vector<Rational> copeland(const Votes& votes, std::size_t m) {
    std::vector<Rational> score(m, Rational(0));
    for (CandidateId a = 0; a < m; ++a) {
        for (CandidateId b = 0; b < m; ++b) {
            if (a == b) {
                continue;
            }
            const Count ab = count_over(votes, a, b);
            const Count ba = count_over(votes, b, a);
            if (ab > ba) {
                score[a] += 1;
            } else if (ab == ba) {
                score[a] += Rational(1, 2);
            }
        }
    }
    return score;
}

inline std::vector<Rational> maximin(const Votes& votes, std::size_t m) {
    std::vector<Rational> score(m);
    for (CandidateId a = 0; a < m; ++a) {
        Count worst = votes.size();
        for (CandidateId b = 0; b < m; ++b) {
            if (a != b) {
                worst = std::min(worst, count_over(votes, a, b));
            }
        }
        score[a] = Rational(worst);
    }
    return score;
}

// Ascending-index tie-break.
inline CandidateId argmax(const std::vector<Rational>& score) {
    CandidateId best = 0;
    for (CandidateId c = 1; c < score.size(); ++c) {
        if (score[c] > score[best]) {
            best = c;
        }
    }
    return best;
}

inline CandidateId plurality_winner(const Votes& votes, std::size_t m) {
    std::vector<Rational> first(m, Rational(0));
    for (const auto& v : votes) {
        first[v.front()] += 1;
    }
    return argmax(first);
}

inline std::vector<CandidateId> random_permutation(std::size_t m, topk::Rng& rng) {
    std::vector<CandidateId> p(m);
    std::iota(p.begin(), p.end(), CandidateId{0});
    for (std::size_t i = m; i > 1; --i) {
        std::swap(p[i - 1], p[rng.uniform_below(i)]);
    }
    return p;
}

}  // namespace testing_support
