#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace topk {

/// Dense candidate index in [0, m).
using CandidateId = std::uint32_t;
/// Ballot multiplicity / voter count.
using Count = std::uint64_t;

/// Complete linear order over m candidates, most preferred first.
class Ranking {
public:
    /// Throws DomainError unless `order` is a permutation of 0..m-1.
    explicit Ranking(std::vector<CandidateId> order);

    static Ranking identity(std::size_t m);

    [[nodiscard]] std::size_t size() const { return order_.size(); }
    [[nodiscard]] std::span<const CandidateId> order() const { return order_; }
    [[nodiscard]] CandidateId operator[](std::size_t pos) const { return order_[pos]; }
    /// position[c] = rank of candidate c (0 = top).
    [[nodiscard]] std::vector<std::size_t> positions() const;

    friend bool operator==(const Ranking&, const Ranking&) = default;
    friend auto operator<=>(const Ranking&, const Ranking&) = default;

private:
    std::vector<CandidateId> order_;
};

/// Prefix of a ranking. nominal_k is the truncation level it was elicited at;
/// real-world ballots may be shorter than nominal_k.
class TopKBallot {
public:
    /// Requires 1 <= order.size() <= nominal_k <= m-1, distinct ids < m.
    TopKBallot(std::vector<CandidateId> order, std::size_t nominal_k, std::size_t m);

    [[nodiscard]] std::size_t length() const { return order_.size(); }
    [[nodiscard]] std::size_t nominal_k() const { return nominal_k_; }
    [[nodiscard]] std::span<const CandidateId> order() const { return order_; }
    [[nodiscard]] CandidateId operator[](std::size_t pos) const { return order_[pos]; }

    friend bool operator==(const TopKBallot&, const TopKBallot&) = default;
    friend auto operator<=>(const TopKBallot&, const TopKBallot&) = default;

private:
    std::vector<CandidateId> order_;
    std::size_t nominal_k_;
};

template <class Ballot>
struct WeightedBallot {
    Ballot ballot;
    Count count;

    friend bool operator==(const WeightedBallot&, const WeightedBallot&) = default;
};

/// Weighted multiset of complete rankings.
class Profile {
public:
    using Entry = WeightedBallot<Ranking>;

    /// Throws DomainError on empty profile, zero counts or rankings of the wrong size.
    /// Entries are kept as given (not merged).
    Profile(std::size_t m, std::vector<Entry> entries);

    /// Merges identical rankings; result is sorted lexicographically.
    static Profile aggregate(std::size_t m, std::span<const Ranking> rankings);

    [[nodiscard]] std::size_t num_candidates() const { return m_; }
    [[nodiscard]] Count num_voters() const { return n_; }
    [[nodiscard]] std::span<const Entry> entries() const { return entries_; }

    /// Same multiset (entry order and splitting ignored).
    [[nodiscard]] bool same_multiset(const Profile& other) const;

private:
    std::size_t m_;
    Count n_ = 0;
    std::vector<Entry> entries_;
};

/// Weighted multiset of top-k ballots sharing one nominal k.
class TopKProfile {
public:
    using Entry = WeightedBallot<TopKBallot>;

    /// Requires 1 <= k <= m-1, every ballot with nominal_k == k, total count >= 1.
    TopKProfile(std::size_t m, std::size_t k, std::vector<Entry> entries);

    [[nodiscard]] std::size_t num_candidates() const { return m_; }
    [[nodiscard]] std::size_t k() const { return k_; }
    [[nodiscard]] Count num_voters() const { return n_; }
    [[nodiscard]] std::span<const Entry> entries() const { return entries_; }

    [[nodiscard]] bool same_multiset(const TopKProfile& other) const;

private:
    std::size_t m_;
    std::size_t k_;
    Count n_ = 0;
    std::vector<Entry> entries_;
};

/// counts(a, b): voters preferring (or, for top-k input, dominating) a over b.
class PairwiseTally {
public:
    PairwiseTally(std::size_t m, Count n);

    [[nodiscard]] std::size_t num_candidates() const { return m_; }
    [[nodiscard]] Count num_voters() const { return n_; }
    [[nodiscard]] Count operator()(CandidateId a, CandidateId b) const { return counts_[a * m_ + b]; }
    void add(CandidateId a, CandidateId b, Count c) { counts_[a * m_ + b] += c; }

    friend bool operator==(const PairwiseTally&, const PairwiseTally&) = default;

private:
    std::size_t m_;
    Count n_;
    std::vector<Count> counts_;
};

enum class MajorityMode {
    complete,  ///< edge a->b iff N(a,b) > n/2
    topk,      ///< edge a->b iff N(a,b) > N(b,a)
};

class MajorityGraph {
public:
    explicit MajorityGraph(std::size_t m);

    [[nodiscard]] std::size_t num_candidates() const { return m_; }
    [[nodiscard]] bool has_edge(CandidateId a, CandidateId b) const { return adj_[a * m_ + b]; }
    /// Throws DomainError on self-loops or if (b, a) is already present.
    void add_edge(CandidateId a, CandidateId b);
    [[nodiscard]] std::vector<std::pair<CandidateId, CandidateId>> edges() const;

    friend bool operator==(const MajorityGraph&, const MajorityGraph&) = default;

private:
    std::size_t m_;
    std::vector<bool> adj_;
};

/// Priority permutation; earlier entries win ties.
class TieBreak {
public:
    /// Throws DomainError unless `priority` is a permutation of 0..m-1.
    explicit TieBreak(std::vector<CandidateId> priority);

    /// Ascending candidate index.
    static TieBreak ascending(std::size_t m);

    [[nodiscard]] std::size_t size() const { return priority_.size(); }
    [[nodiscard]] std::span<const CandidateId> priority() const { return priority_; }
    /// 0 = highest priority.
    [[nodiscard]] std::size_t rank_of(CandidateId c) const { return rank_[c]; }
    [[nodiscard]] bool prefers(CandidateId a, CandidateId b) const { return rank_[a] < rank_[b]; }

private:
    std::vector<CandidateId> priority_;
    std::vector<std::size_t> rank_;
};

/// Length-k prefixes of every ranking, identical prefixes merged. Requires 1 <= k <= m-1.
TopKProfile truncate(const Profile& profile, std::size_t k);

PairwiseTally pairwise_tally(const Profile& profile);

/// Dominance counts: a over b when a is ranked above b, or a is ranked and b is not.
PairwiseTally dominance_tally(const TopKProfile& topk);

MajorityGraph majority_graph(const PairwiseTally& tally, MajorityMode mode);

}  // namespace topk
