#include "topk/experiments.hpp"

#include "topk/errors.hpp"
#include "topk/mallows.hpp"
#include "topk/rng.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace topk {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

// One trial's input: a complete profile, or real ballots of varying length.
using TrialInput = std::variant<Profile, ElectionDataset>;

TrialInput draw_input(const ProfileSource& source, Rng& rng) {
    return std::visit(Overloaded{
                          [&rng](const MallowsSource& s) -> TrialInput {
                              const MallowsModel model(Ranking::identity(s.m), s.phi);
                              return model.sample_profile(s.n, rng);
                          },
                          [&rng](const PreflibSource& s) -> TrialInput {
                              return resample(*s.dataset, s.n_star, rng, s.mode);
                          },
                          [](const FixedSource& s) -> TrialInput { return s.profile; },
                      },
                      source);
}

// Evaluates one rule on one trial input at every requested k.
class TrialEvaluator {
public:
    TrialEvaluator(const TrialInput& input, const TieBreak& tb) : input_(input), tb_(tb) {}

    CandidateId true_winner(const RuleId& rule) const {
        if (const auto* profile = std::get_if<Profile>(&input_)) {
            return apply_rule(rule, *profile, tb_);
        }
        const auto& ds = std::get<ElectionDataset>(input_);
        // Real ballots: the rule with everything the data holds, i.e. its top-(m-1) form.
        return apply_rule(rule, effective_truncate(ds, ds.m - 1), tb_);
    }

    CandidateId topk_winner(const RuleId& rule, std::size_t k) const {
        if (const auto* profile = std::get_if<Profile>(&input_)) {
            return apply_rule(rule, truncate(*profile, k), tb_);
        }
        return apply_rule(rule, effective_truncate(std::get<ElectionDataset>(input_), k), tb_);
    }

    // Scores under the rule with full information.
    ScoreTable reference_scores(const RuleId& rule) const {
        if (const auto* profile = std::get_if<Profile>(&input_)) {
            return full_scores(rule, *profile);
        }
        const auto& ds = std::get<ElectionDataset>(input_);
        return topk_scores(rule, effective_truncate(ds, ds.m - 1));
    }

private:
    const TrialInput& input_;
    const TieBreak& tb_;
};

std::vector<TrialRecord> evaluate_trial(const ExperimentConfig& cfg, const TieBreak& tb, std::size_t trial,
                                        bool with_ratio) {
    Rng rng(derive_seed(cfg.base_seed, trial));
    const TrialInput input = draw_input(cfg.source, rng);
    const TrialEvaluator eval(input, tb);
    std::vector<TrialRecord> out;
    out.reserve(cfg.rules.size() * cfg.k_values.size());
    for (const auto& rule : cfg.rules) {
        const CandidateId truth = eval.true_winner(rule);
        std::optional<ScoreTable> reference;
        if (with_ratio && rule.is_score_based()) {
            reference = eval.reference_scores(rule);
        }
        for (std::size_t k : cfg.k_values) {
            TrialRecord rec;
            rec.trial_index = trial;
            rec.rule = rule;
            rec.k = k;
            rec.true_winner = truth;
            rec.topk_winner = eval.topk_winner(rule, k);
            rec.agree = rec.true_winner == rec.topk_winner;
            if (reference) {
                rec.ratio = ExtendedRatio::quotient((*reference)[truth], (*reference)[rec.topk_winner]);
            }
            out.push_back(std::move(rec));
        }
    }
    return out;
}

std::string format_phi(const ProfileSource& source) {
    if (const auto* s = std::get_if<MallowsSource>(&source)) {
        std::ostringstream os;
        os << s->phi;
        return os.str();
    }
    return "";
}

std::string source_voters(const ProfileSource& source) {
    return std::visit(Overloaded{
                          [](const MallowsSource& s) { return std::to_string(s.n); },
                          [](const PreflibSource& s) { return std::to_string(s.n_star); },
                          [](const FixedSource& s) { return std::to_string(s.profile.num_voters()); },
                      },
                      source);
}

}  // namespace

std::size_t source_candidates(const ProfileSource& source) {
    return std::visit(Overloaded{
                          [](const MallowsSource& s) { return s.m; },
                          [](const PreflibSource& s) { return s.dataset ? s.dataset->m : std::size_t{0}; },
                          [](const FixedSource& s) { return s.profile.num_candidates(); },
                      },
                      source);
}

void ExperimentConfig::validate() const {
    const std::size_t m = source_candidates(source);
    if (m < 2) {
        throw DomainError("experiments need at least two candidates");
    }
    if (const auto* s = std::get_if<MallowsSource>(&source)) {
        if (s->n < 1 || !(s->phi > 0.0 && s->phi <= 1.0)) {
            throw DomainError("mallows source needs n >= 1 and phi in (0, 1]");
        }
    }
    if (const auto* s = std::get_if<PreflibSource>(&source)) {
        s->dataset->validate();
        if (s->n_star < 1 || (s->mode == SamplingMode::without_replacement && s->n_star > s->dataset->n)) {
            throw DomainError("n_star outside [1, dataset voters]");
        }
    }
    if (trials < 1) {
        throw DomainError("trials must be positive");
    }
    if (rules.empty()) {
        throw DomainError("no rules given");
    }
    for (const auto& r : rules) {
        if (r.k) {
            throw DomainError("experiment rules take k from the k list, not from '" + r.to_string() + "'");
        }
    }
    if (k_values.empty()) {
        throw DomainError("no k values given");
    }
    for (std::size_t k : k_values) {
        if (k < 1 || k + 1 > m) {
            throw DomainError("k=" + std::to_string(k) + " outside [1, m-1]");
        }
    }
    if (tiebreak && tiebreak->size() != m) {
        throw DomainError("tie-break size differs from candidate count");
    }
}

std::vector<TrialRecord> run_trials(const ExperimentConfig& cfg, bool with_ratio) {
    cfg.validate();
    const TieBreak tb = cfg.tiebreak.value_or(TieBreak::ascending(source_candidates(cfg.source)));
    std::vector<std::vector<TrialRecord>> per_trial(cfg.trials);

    const std::size_t workers = std::clamp<std::size_t>(cfg.workers, 1, cfg.trials);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&]() {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= cfg.trials) {
                return;
            }
            try {
                per_trial[t] = evaluate_trial(cfg, tb, t, with_ratio);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(cfg.trials);
                return;
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    std::vector<TrialRecord> out;
    out.reserve(cfg.trials * cfg.rules.size() * cfg.k_values.size());
    for (auto& records : per_trial) {
        std::move(records.begin(), records.end(), std::back_inserter(out));
    }
    return out;
}

std::vector<SuccessRow> run_success_rate(const ExperimentConfig& cfg) {
    const auto records = run_trials(cfg, false);
    const std::size_t nk = cfg.k_values.size();
    std::vector<SuccessRow> rows;
    for (const auto& rule : cfg.rules) {
        for (std::size_t k : cfg.k_values) {
            rows.push_back({rule, k, cfg.trials, 0});
        }
    }
    // Records come in (trial, rule, k) order.
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].agree) {
            ++rows[i % (cfg.rules.size() * nk)].agreements;
        }
    }
    return rows;
}

std::vector<RatioRow> run_ratio(const ExperimentConfig& cfg) {
    for (const auto& rule : cfg.rules) {
        if (!rule.is_score_based()) {
            throw UnsupportedRuleError("score ratio is undefined for " + rule.base_name() + " (not score-based)");
        }
    }
    const auto records = run_trials(cfg, true);
    const std::size_t cells = cfg.rules.size() * cfg.k_values.size();
    std::vector<RatioRow> rows;
    for (const auto& rule : cfg.rules) {
        for (std::size_t k : cfg.k_values) {
            rows.push_back({rule, k, cfg.trials, 0.0, std::nullopt, 0});
        }
    }
    std::vector<double> sums(cells, 0.0);
    std::vector<std::size_t> finite(cells, 0);
    for (std::size_t i = 0; i < records.size(); ++i) {
        auto& row = rows[i % cells];
        const auto& ratio = *records[i].ratio;
        if (ratio.is_infinite()) {
            ++row.inf_count;
            continue;
        }
        sums[i % cells] += ratio.to_double();
        ++finite[i % cells];
        if (!row.max_ratio || ratio.value() > *row.max_ratio) {
            row.max_ratio = ratio.value();
        }
    }
    for (std::size_t c = 0; c < cells; ++c) {
        rows[c].mean_ratio = finite[c] == 0 ? 0.0 : sums[c] / static_cast<double>(finite[c]);
    }
    return rows;
}

std::vector<MinKRow> min_k_search(const ExperimentConfig& cfg) {
    const std::size_t m = source_candidates(cfg.source);
    ExperimentConfig full = cfg;
    full.k_values.clear();
    for (std::size_t k = 1; k + 1 <= m; ++k) {
        full.k_values.push_back(k);
    }
    const auto rows = run_success_rate(full);
    std::vector<MinKRow> out;
    for (std::size_t r = 0; r < cfg.rules.size(); ++r) {
        std::size_t best = m - 1;
        for (std::size_t i = 0; i < full.k_values.size(); ++i) {
            const auto& row = rows[r * full.k_values.size() + i];
            if (row.agreements == row.trials) {
                best = row.k;
                break;
            }
        }
        out.push_back({cfg.rules[r], best});
    }
    return out;
}

std::vector<SweepRow> sweep_real_data(std::shared_ptr<const ElectionDataset> dataset, const SweepConfig& cfg) {
    if (!dataset) {
        throw DomainError("no dataset");
    }
    for (Count n_star : cfg.n_star_grid) {
        if (n_star < 1 || (cfg.mode == SamplingMode::without_replacement && n_star > dataset->n)) {
            throw DomainError("n_star=" + std::to_string(n_star) + " outside [1, " + std::to_string(dataset->n) + "]");
        }
    }
    std::vector<SweepRow> out;
    for (Count n_star : cfg.n_star_grid) {
        ExperimentConfig exp;
        exp.source = PreflibSource{dataset, n_star, cfg.mode};
        exp.rules = cfg.rules;
        exp.k_values = cfg.k_grid;
        exp.trials = cfg.trials;
        exp.base_seed = derive_seed(cfg.seed, n_star);
        exp.tiebreak = cfg.tiebreak;
        exp.workers = cfg.workers;
        for (const auto& row : run_success_rate(exp)) {
            out.push_back({row.rule, row.k, n_star, row.trials, cfg.seed, row.rate()});
        }
    }
    return out;
}

CsvTable success_table(const ExperimentConfig& cfg, const std::vector<SuccessRow>& rows) {
    CsvTable t{{"rule", "k", "phi", "n", "trials", "seed", "rate"}, {}};
    for (const auto& r : rows) {
        t.rows.push_back({r.rule.base_name(), std::to_string(r.k), format_phi(cfg.source), source_voters(cfg.source),
                          std::to_string(r.trials), std::to_string(cfg.base_seed), format_fixed(r.rate(), 4)});
    }
    return t;
}

CsvTable ratio_table(const ExperimentConfig& cfg, const std::vector<RatioRow>& rows) {
    CsvTable t{{"rule", "k", "phi", "n", "trials", "seed", "mean_ratio", "max_ratio", "inf_count"}, {}};
    for (const auto& r : rows) {
        const bool any_finite = r.max_ratio.has_value();
        t.rows.push_back({r.rule.base_name(), std::to_string(r.k), format_phi(cfg.source), source_voters(cfg.source),
                          std::to_string(r.trials), std::to_string(cfg.base_seed),
                          any_finite ? format_fixed(r.mean_ratio, 6) : "",
                          any_finite ? format_fixed(to_double(*r.max_ratio), 6) : "", std::to_string(r.inf_count)});
    }
    return t;
}

CsvTable sweep_table(const std::vector<SweepRow>& rows) {
    CsvTable t{{"rule", "k", "n_star", "trials", "seed", "rate"}, {}};
    for (const auto& r : rows) {
        t.rows.push_back({r.rule.base_name(), std::to_string(r.k), std::to_string(r.n_star), std::to_string(r.trials),
                          std::to_string(r.seed), format_fixed(r.rate, 4)});
    }
    return t;
}

CsvTable min_k_table(const ExperimentConfig& cfg, const std::vector<MinKRow>& rows) {
    CsvTable t{{"rule", "min_k", "phi", "n", "trials", "seed"}, {}};
    for (const auto& r : rows) {
        t.rows.push_back({r.rule.base_name(), std::to_string(r.min_k), format_phi(cfg.source),
                          source_voters(cfg.source), std::to_string(cfg.trials), std::to_string(cfg.base_seed)});
    }
    return t;
}

}  // namespace topk
