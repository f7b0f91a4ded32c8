#include "topk/ballots.hpp"

#include "topk/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace topk {

namespace {

// True iff ids are distinct and all < m.
bool distinct_in_range(std::span<const CandidateId> ids, std::size_t m) {
    std::vector<bool> seen(m, false);
    for (CandidateId c : ids) {
        if (c >= m || seen[c]) {
            return false;
        }
        seen[c] = true;
    }
    return true;
}

template <class Entry>
std::map<std::vector<CandidateId>, Count> as_multiset(std::span<const Entry> entries) {
    std::map<std::vector<CandidateId>, Count> out;
    for (const auto& e : entries) {
        const auto order = e.ballot.order();
        out[std::vector<CandidateId>(order.begin(), order.end())] += e.count;
    }
    return out;
}

}  // namespace

Ranking::Ranking(std::vector<CandidateId> order) : order_(std::move(order)) {
    if (order_.empty() || !distinct_in_range(order_, order_.size())) {
        throw DomainError("ranking must be a permutation of 0..m-1");
    }
}

Ranking Ranking::identity(std::size_t m) {
    std::vector<CandidateId> order(m);
    std::iota(order.begin(), order.end(), CandidateId{0});
    return Ranking(std::move(order));
}

std::vector<std::size_t> Ranking::positions() const {
    std::vector<std::size_t> pos(order_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) {
        pos[order_[i]] = i;
    }
    return pos;
}

TopKBallot::TopKBallot(std::vector<CandidateId> order, std::size_t nominal_k, std::size_t m)
    : order_(std::move(order)), nominal_k_(nominal_k) {
    if (order_.empty() || order_.size() > nominal_k_ || nominal_k_ + 1 > m) {
        throw DomainError("top-k ballot needs 1 <= length <= k <= m-1 (length " +
                          std::to_string(order_.size()) + ", k " + std::to_string(nominal_k_) +
                          ", m " + std::to_string(m) + ")");
    }
    if (!distinct_in_range(order_, m)) {
        throw DomainError("top-k ballot has a repeated or out-of-range candidate");
    }
}

Profile::Profile(std::size_t m, std::vector<Entry> entries) : m_(m), entries_(std::move(entries)) {
    if (m_ == 0) {
        throw DomainError("profile needs at least one candidate");
    }
    for (const auto& e : entries_) {
        if (e.ballot.size() != m_) {
            throw DomainError("ranking size does not match candidate count");
        }
        if (e.count == 0) {
            throw DomainError("ballot count must be positive");
        }
        n_ += e.count;
    }
    if (n_ == 0) {
        throw DomainError("profile must contain at least one voter");
    }
}

Profile Profile::aggregate(std::size_t m, std::span<const Ranking> rankings) {
    std::map<Ranking, Count> merged;
    for (const auto& r : rankings) {
        ++merged[r];
    }
    std::vector<Entry> entries;
    entries.reserve(merged.size());
    for (auto& [r, c] : merged) {
        entries.push_back({r, c});
    }
    return Profile(m, std::move(entries));
}

bool Profile::same_multiset(const Profile& other) const {
    return m_ == other.m_ && as_multiset<Entry>(entries_) == as_multiset<Entry>(other.entries_);
}

TopKProfile::TopKProfile(std::size_t m, std::size_t k, std::vector<Entry> entries)
    : m_(m), k_(k), entries_(std::move(entries)) {
    if (k_ < 1 || k_ + 1 > m_) {
        throw DomainError("top-k profile needs 1 <= k <= m-1");
    }
    for (const auto& e : entries_) {
        if (e.ballot.nominal_k() != k_) {
            throw DomainError("ballot nominal k differs from profile k");
        }
        if (e.count == 0) {
            throw DomainError("ballot count must be positive");
        }
        // Ballots are validated against their own m at construction; recheck ids here.
        if (!distinct_in_range(e.ballot.order(), m_)) {
            throw DomainError("ballot candidate out of range");
        }
        n_ += e.count;
    }
    if (n_ == 0) {
        throw DomainError("top-k profile must contain at least one voter");
    }
}

bool TopKProfile::same_multiset(const TopKProfile& other) const {
    return m_ == other.m_ && k_ == other.k_ &&
           as_multiset<Entry>(entries_) == as_multiset<Entry>(other.entries_);
}

PairwiseTally::PairwiseTally(std::size_t m, Count n) : m_(m), n_(n), counts_(m * m, 0) {}

MajorityGraph::MajorityGraph(std::size_t m) : m_(m), adj_(m * m, false) {}

void MajorityGraph::add_edge(CandidateId a, CandidateId b) {
    if (a == b || a >= m_ || b >= m_) {
        throw DomainError("invalid majority edge");
    }
    if (has_edge(b, a)) {
        throw DomainError("majority graph must be antisymmetric");
    }
    adj_[a * m_ + b] = true;
}

std::vector<std::pair<CandidateId, CandidateId>> MajorityGraph::edges() const {
    std::vector<std::pair<CandidateId, CandidateId>> out;
    for (CandidateId a = 0; a < m_; ++a) {
        for (CandidateId b = 0; b < m_; ++b) {
            if (has_edge(a, b)) {
                out.emplace_back(a, b);
            }
        }
    }
    return out;
}

TieBreak::TieBreak(std::vector<CandidateId> priority) : priority_(std::move(priority)) {
    if (priority_.empty() || !distinct_in_range(priority_, priority_.size())) {
        throw DomainError("tie-break priority must be a permutation of 0..m-1");
    }
    rank_.resize(priority_.size());
    for (std::size_t i = 0; i < priority_.size(); ++i) {
        rank_[priority_[i]] = i;
    }
}

TieBreak TieBreak::ascending(std::size_t m) {
    std::vector<CandidateId> p(m);
    std::iota(p.begin(), p.end(), CandidateId{0});
    return TieBreak(std::move(p));
}

TopKProfile truncate(const Profile& profile, std::size_t k) {
    const std::size_t m = profile.num_candidates();
    if (k < 1 || k + 1 > m) {
        throw DomainError("truncation level k=" + std::to_string(k) + " outside [1, m-1] for m=" +
                          std::to_string(m));
    }
    std::map<std::vector<CandidateId>, Count> merged;
    for (const auto& e : profile.entries()) {
        const auto order = e.ballot.order();
        merged[std::vector<CandidateId>(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k))] +=
            e.count;
    }
    std::vector<TopKProfile::Entry> entries;
    entries.reserve(merged.size());
    for (auto& [prefix, count] : merged) {
        entries.push_back({TopKBallot(prefix, k, m), count});
    }
    return TopKProfile(m, k, std::move(entries));
}

PairwiseTally pairwise_tally(const Profile& profile) {
    const std::size_t m = profile.num_candidates();
    PairwiseTally tally(m, profile.num_voters());
    for (const auto& e : profile.entries()) {
        const auto order = e.ballot.order();
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                tally.add(order[i], order[j], e.count);
            }
        }
    }
    return tally;
}

PairwiseTally dominance_tally(const TopKProfile& topk) {
    const std::size_t m = topk.num_candidates();
    PairwiseTally tally(m, topk.num_voters());
    std::vector<bool> ranked(m);
    for (const auto& e : topk.entries()) {
        const auto order = e.ballot.order();
        std::fill(ranked.begin(), ranked.end(), false);
        for (CandidateId c : order) {
            ranked[c] = true;
        }
        for (std::size_t i = 0; i < order.size(); ++i) {
            for (std::size_t j = i + 1; j < order.size(); ++j) {
                tally.add(order[i], order[j], e.count);
            }
            for (CandidateId b = 0; b < m; ++b) {
                if (!ranked[b]) {
                    tally.add(order[i], b, e.count);
                }
            }
        }
    }
    return tally;
}

MajorityGraph majority_graph(const PairwiseTally& tally, MajorityMode mode) {
    const std::size_t m = tally.num_candidates();
    MajorityGraph graph(m);
    for (CandidateId a = 0; a < m; ++a) {
        for (CandidateId b = 0; b < m; ++b) {
            if (a == b) {
                continue;
            }
            const bool edge = mode == MajorityMode::complete ? 2 * tally(a, b) > tally.num_voters()
                                                             : tally(a, b) > tally(b, a);
            if (edge) {
                graph.add_edge(a, b);
            }
        }
    }
    return graph;
}

}  // namespace topk
