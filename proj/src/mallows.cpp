#include "topk/mallows.hpp"

#include "topk/errors.hpp"

#include <cmath>

namespace topk {

std::size_t kendall_tau(const Ranking& r1, const Ranking& r2) {
    if (r1.size() != r2.size()) {
        throw DomainError("kendall_tau needs rankings over the same candidates");
    }
    const auto pos2 = r2.positions();
    const auto order1 = r1.order();
    std::size_t discordant = 0;
    for (std::size_t i = 0; i < order1.size(); ++i) {
        for (std::size_t j = i + 1; j < order1.size(); ++j) {
            if (pos2[order1[i]] > pos2[order1[j]]) {
                ++discordant;
            }
        }
    }
    return discordant;
}

double mallows_normalization(std::size_t m, double phi) {
    if (!(phi > 0.0)) {
        throw DomainError("mallows normalization needs phi > 0");
    }
    double z = 1.0;
    double partial = 0.0;
    double power = 1.0;
    for (std::size_t j = 1; j <= m; ++j) {
        partial += power;  // 1 + phi + ... + phi^(j-1)
        power *= phi;
        z *= partial;
    }
    return z;
}

MallowsModel::MallowsModel(Ranking reference, double phi)
    : reference_(std::move(reference)), phi_(phi) {
    if (!(phi_ > 0.0 && phi_ <= 1.0)) {
        throw DomainError("mallows dispersion must lie in (0, 1]");
    }
    const std::size_t m = reference_.size();
    log_z_ = std::log(mallows_normalization(m, phi_));
    insertion_cdf_.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        // j candidates already placed: v in [0, j].
        std::vector<double> weights(j + 1);
        double total = 0.0;
        double w = 1.0;
        for (std::size_t v = 0; v <= j; ++v) {
            weights[v] = w;
            total += w;
            w *= phi_;
        }
        double acc = 0.0;
        for (std::size_t v = 0; v <= j; ++v) {
            acc += weights[v] / total;
            weights[v] = acc;
        }
        weights[j] = 1.0;
        insertion_cdf_[j] = std::move(weights);
    }
}

double MallowsModel::pmf(const Ranking& r) const {
    const auto d = static_cast<double>(kendall_tau(r, reference_));
    return std::exp(d * std::log(phi_) - log_z_);
}

Ranking MallowsModel::sample(Rng& rng) const {
    const std::size_t m = reference_.size();
    std::vector<CandidateId> order;
    order.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        const auto& cdf = insertion_cdf_[j];
        const double u = rng.uniform01();
        std::size_t v = 0;
        while (v < j && u >= cdf[v]) {
            ++v;
        }
        // Placing the candidate above v earlier ones inverts exactly v reference pairs.
        order.insert(order.end() - static_cast<std::ptrdiff_t>(v), reference_[j]);
    }
    return Ranking(std::move(order));
}

Profile MallowsModel::sample_profile(std::size_t n, Rng& rng) const {
    if (n == 0) {
        throw DomainError("sample_profile needs n >= 1");
    }
    std::vector<Ranking> draws;
    draws.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        draws.push_back(sample(rng));
    }
    return Profile::aggregate(num_candidates(), draws);
}

}  // namespace topk
