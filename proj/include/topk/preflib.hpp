#pragma once

#include "topk/ballots.hpp"
#include "topk/rng.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace topk {

/// A strict, possibly incomplete ballot with its multiplicity.
struct DatasetBallot {
    std::vector<CandidateId> order;
    Count count = 0;

    friend bool operator==(const DatasetBallot&, const DatasetBallot&) = default;
};

/// Election data as read from a PrefLib SOC/SOI file.
struct ElectionDataset {
    std::size_t m = 0;
    std::vector<std::string> candidate_names;  ///< indexed by CandidateId
    std::vector<DatasetBallot> ballots;
    Count n = 0;

    /// Throws DomainError if counts, ids or lengths are inconsistent.
    void validate() const;
    /// Every ballot ranks at least m-1 candidates (the last position is implied).
    [[nodiscard]] bool is_complete() const;

    friend bool operator==(const ElectionDataset&, const ElectionDataset&) = default;
};

/// Accepts the classic layout (m, "id,name" lines, "n,sum,unique", "count,id,..." lines) and
/// the current layout ("# KEY: value" metadata, "count: id,..." lines). Ids are 1-based on disk.
/// Throws ParseError (with line number) on malformed input or tie groups.
ElectionDataset parse_preflib(std::string_view text);
ElectionDataset parse_preflib(std::istream& in);
/// Throws ParseError(line 0) when the file cannot be read.
ElectionDataset load_preflib(const std::filesystem::path& path);

/// Classic layout, ballots in dataset order.
std::string serialize_classic(const ElectionDataset& ds);

/// Default names: "x1", "x2", ...
ElectionDataset dataset_from_profile(const Profile& profile, std::vector<std::string> names = {});
ElectionDataset dataset_from_topk(const TopKProfile& topk, std::vector<std::string> names = {});
/// Requires is_complete(); a missing last candidate is appended.
Profile dataset_to_profile(const ElectionDataset& ds);

enum class SamplingMode { without_replacement, with_replacement };

/// n_star voters drawn uniformly from the expanded voter list. Ballot contents are never
/// altered; ballot types keep dataset order.
ElectionDataset resample(const ElectionDataset& ds, Count n_star, Rng& rng,
                         SamplingMode mode = SamplingMode::without_replacement);

/// Each ballot cut to its first min(k, length) candidates, nominal k = k. Requires 1 <= k <= m-1.
TopKProfile effective_truncate(const ElectionDataset& ds, std::size_t k);

}  // namespace topk
