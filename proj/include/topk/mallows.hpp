#pragma once

#include "topk/ballots.hpp"
#include "topk/rng.hpp"

#include <cstddef>
#include <vector>

namespace topk {

/// Number of candidate pairs the two rankings order differently.
std::size_t kendall_tau(const Ranking& r1, const Ranking& r2);

/// prod_{j=1..m} (1 + phi + ... + phi^(j-1)).
double mallows_normalization(std::size_t m, double phi);

/// Mallows phi-model around a reference ranking; phi = 1 is Impartial Culture.
class MallowsModel {
public:
    /// Requires 0 < phi <= 1.
    MallowsModel(Ranking reference, double phi);

    [[nodiscard]] const Ranking& reference() const { return reference_; }
    [[nodiscard]] double phi() const { return phi_; }
    [[nodiscard]] std::size_t num_candidates() const { return reference_.size(); }

    /// phi^d(r, reference) / Z.
    [[nodiscard]] double pmf(const Ranking& r) const;

    /// Exact draw by repeated insertion: the j-th reference candidate is inserted among the
    /// j-1 already placed so that it sits above v of them with probability proportional to phi^v.
    [[nodiscard]] Ranking sample(Rng& rng) const;

    /// n i.i.d. draws merged into a weighted profile.
    [[nodiscard]] Profile sample_profile(std::size_t n, Rng& rng) const;

private:
    Ranking reference_;
    double phi_;
    double log_z_;
    // insertion_cdf_[j][v]: P(inversions introduced by the (j+1)-th insertion <= v).
    std::vector<std::vector<double>> insertion_cdf_;
};

}  // namespace topk
