#include "cli.hpp"

#include "topk/ballots.hpp"
#include "topk/bounds.hpp"
#include "topk/csv.hpp"
#include "topk/errors.hpp"
#include "topk/experiments.hpp"
#include "topk/mallows.hpp"
#include "topk/preflib.hpp"
#include "topk/rules.hpp"

#include <CLI11.hpp>

#include <functional>
#include <memory>
#include <ostream>
#include <sstream>

namespace topk::cli {

namespace {

std::optional<TieBreak> parse_tiebreak(const std::vector<std::size_t>& ids) {
    if (ids.empty()) {
        return std::nullopt;
    }
    return TieBreak(std::vector<CandidateId>(ids.begin(), ids.end()));
}

TieBreak tiebreak_or_default(const std::vector<std::size_t>& ids, std::size_t m) {
    auto tb = parse_tiebreak(ids);
    if (tb && tb->size() != m) {
        throw DomainError("--tiebreak must list all " + std::to_string(m) + " candidates");
    }
    return tb.value_or(TieBreak::ascending(m));
}

std::vector<RuleId> parse_rules(const std::vector<std::string>& texts) {
    std::vector<RuleId> rules;
    rules.reserve(texts.size());
    for (const auto& t : texts) {
        rules.push_back(parse_rule(t));
    }
    return rules;
}

void emit(const std::string& content, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << content;
    } else {
        write_file_atomic(out_path, content);
    }
}

struct WinnerOpts {
    std::string rule;
    std::string profile;
    std::vector<std::size_t> tiebreak;
};

void cmd_winner(const WinnerOpts& o, std::ostream& out) {
    const RuleId rule = parse_rule(o.rule);
    const auto ds = load_preflib(o.profile);
    const TieBreak tb = tiebreak_or_default(o.tiebreak, ds.m);
    CandidateId winner = 0;
    if (ds.is_complete()) {
        winner = apply_rule(rule, dataset_to_profile(ds), tb);
    } else if (rule.k) {
        winner = apply_rule(rule, effective_truncate(ds, *rule.k), tb);
    } else {
        // Incomplete ballots and no k: use everything the ballots hold.
        winner = apply_rule(rule.with_k(ds.m - 1), effective_truncate(ds, ds.m - 1), tb);
    }
    out << ds.candidate_names[winner] << '\n';
}

struct TruncateOpts {
    std::string profile;
    std::size_t k = 1;
    std::string out;
};

void cmd_truncate(const TruncateOpts& o, std::ostream& out) {
    const auto ds = load_preflib(o.profile);
    const auto topk = effective_truncate(ds, o.k);
    emit(serialize_classic(dataset_from_topk(topk, ds.candidate_names)), o.out, out);
}

struct SampleOpts {
    std::size_t m = 7;
    double phi = 1.0;
    std::size_t n = 100;
    std::uint64_t seed = 0;
    std::string out;
};

void cmd_sample(const SampleOpts& o, std::ostream& out) {
    const MallowsModel model(Ranking::identity(o.m), o.phi);
    Rng rng(o.seed);
    emit(serialize_classic(dataset_from_profile(model.sample_profile(o.n, rng))), o.out, out);
}

struct BoundsOpts {
    std::vector<std::string> rules;
    std::size_t m = 0;
    std::size_t k = 0;
    bool table = false;
    std::size_t m_min = 4;
    std::size_t m_max = 8;
    std::string out;
};

RatioBound bounds_for(const RuleId& rule, std::size_t m, std::size_t k) {
    if (rule.is_psr()) {
        const auto s = rule.scoring_vector(m);
        return psr_bounds(s, k, completion_score(s, k, rule.policy));
    }
    switch (rule.family) {
        case RuleFamily::maximin:
            return maximin_bounds(m, k);
        case RuleFamily::copeland:
            return copeland_bounds(m, k);
        default:
            throw UnsupportedRuleError("no worst-case bound for " + rule.base_name() + " (not score-based)");
    }
}

// Exact ratio of the pathological profile, when the construction applies.
std::optional<ExtendedRatio> attained_for(const RuleId& rule, std::size_t m, std::size_t k) {
    try {
        AdversarialInstance inst = [&] {
            if (rule.is_psr()) {
                const auto s = rule.scoring_vector(m);
                return psr_adversarial(s, k, completion_score(s, k, rule.policy));
            }
            return rule.family == RuleFamily::maximin ? maximin_adversarial(m, k) : copeland_adversarial(m, k);
        }();
        return price_of_truncation(inst.profile, rule, k, TieBreak::ascending(m));
    } catch (const ConstructionError&) {
        return std::nullopt;
    }
}

void cmd_bounds(const BoundsOpts& o, std::ostream& out) {
    const auto rules = parse_rules(o.rules);
    if (!o.table) {
        if (rules.size() != 1 || o.m == 0 || o.k == 0) {
            throw DomainError("bounds needs exactly one --rule plus --m and --k (or --table)");
        }
        const auto b = bounds_for(rules.front(), o.m, o.k);
        out << "lower=" << b.lower.to_string() << " upper=" << b.upper.to_string() << '\n';
        return;
    }
    if (o.m_min < 4 || o.m_max < o.m_min) {
        throw DomainError("--table needs 4 <= --m-min <= --m-max");
    }
    CsvTable t{{"m", "k", "rule", "lower", "upper", "attained"}, {}};
    for (std::size_t m = o.m_min; m <= o.m_max; ++m) {
        for (std::size_t k = 2; k + 2 <= m; ++k) {
            for (const auto& rule : rules) {
                const auto b = bounds_for(rule, m, k);
                const auto attained = attained_for(rule, m, k);
                t.rows.push_back({std::to_string(m), std::to_string(k), rule.base_name(), b.lower.to_string(),
                                  b.upper.to_string(), attained ? attained->to_string() : ""});
            }
        }
    }
    emit(to_csv(t), o.out, out);
}

struct AdversarialOpts {
    std::string rule;
    std::size_t m = 0;
    std::size_t k = 0;
    std::string out;
};

void cmd_adversarial(const AdversarialOpts& o, std::ostream& out, std::ostream& err) {
    const RuleId rule = parse_rule(o.rule);
    AdversarialInstance inst = [&] {
        if (rule.is_psr()) {
            const auto s = rule.scoring_vector(o.m);
            return psr_adversarial(s, o.k, completion_score(s, o.k, rule.policy));
        }
        switch (rule.family) {
            case RuleFamily::maximin:
                return maximin_adversarial(o.m, o.k);
            case RuleFamily::copeland:
                return copeland_adversarial(o.m, o.k);
            default:
                throw UnsupportedRuleError("no pathological construction for " + rule.base_name());
        }
    }();
    const auto ratio = price_of_truncation(inst.profile, rule, o.k, TieBreak::ascending(o.m));
    err << "x1=x" << inst.x1 + 1 << " x2=x" << inst.x2 + 1 << " voters=" << inst.profile.num_voters()
        << " claimed_ratio=" << inst.claimed_ratio.to_string() << " computed_ratio=" << ratio.to_string()
        << " topk_tied=" << (inst.topk_scores_tied ? "yes" : "no") << '\n';
    emit(serialize_classic(dataset_from_profile(inst.profile)), o.out, out);
}

struct ExperimentOpts {
    std::string model = "mallows";
    std::size_t m = 7;
    double phi = 1.0;
    std::size_t n = 100;
    std::string data;
    std::vector<Count> n_star;
    std::vector<std::size_t> ks;
    std::vector<std::string> rules;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    std::vector<std::size_t> tiebreak;
    bool with_replacement = false;
    std::string out;
};

ExperimentConfig build_config(const ExperimentOpts& o, bool need_k) {
    ExperimentConfig cfg;
    const SamplingMode mode = o.with_replacement ? SamplingMode::with_replacement : SamplingMode::without_replacement;
    if (o.model == "mallows") {
        cfg.source = MallowsSource{o.m, o.phi, o.n};
    } else {
        if (o.data.empty() || o.n_star.size() != 1) {
            throw DomainError("--model preflib needs --data and a single --n-star");
        }
        cfg.source = PreflibSource{std::make_shared<const ElectionDataset>(load_preflib(o.data)), o.n_star.front(), mode};
    }
    cfg.rules = parse_rules(o.rules);
    cfg.k_values = o.ks;
    if (need_k && cfg.k_values.empty()) {
        throw DomainError("--k is required");
    }
    cfg.trials = o.trials;
    cfg.base_seed = o.seed;
    cfg.workers = o.workers;
    cfg.tiebreak = parse_tiebreak(o.tiebreak);
    return cfg;
}

void cmd_experiment(const std::string& kind, const ExperimentOpts& o, std::ostream& out) {
    if (kind == "real-sweep") {
        if (o.data.empty() || o.n_star.empty() || o.ks.empty()) {
            throw DomainError("real-sweep needs --data, --n-star and --k");
        }
        SweepConfig sc;
        sc.n_star_grid = o.n_star;
        sc.k_grid = o.ks;
        sc.rules = parse_rules(o.rules);
        sc.trials = o.trials;
        sc.seed = o.seed;
        sc.tiebreak = parse_tiebreak(o.tiebreak);
        sc.workers = o.workers;
        sc.mode = o.with_replacement ? SamplingMode::with_replacement : SamplingMode::without_replacement;
        const auto ds = std::make_shared<const ElectionDataset>(load_preflib(o.data));
        emit(to_csv(sweep_table(sweep_real_data(ds, sc))), o.out, out);
        return;
    }
    if (kind == "min-k") {
        ExperimentConfig cfg = build_config(o, false);
        const std::size_t m = source_candidates(cfg.source);
        for (std::size_t k = 1; k + 1 <= m; ++k) {
            cfg.k_values.push_back(k);
        }
        emit(to_csv(min_k_table(cfg, min_k_search(cfg))), o.out, out);
        return;
    }
    const ExperimentConfig cfg = build_config(o, true);
    if (kind == "success") {
        emit(to_csv(success_table(cfg, run_success_rate(cfg))), o.out, out);
    } else {
        emit(to_csv(ratio_table(cfg, run_ratio(cfg))), o.out, out);
    }
}

struct ParseCheckOpts {
    std::string profile;
};

void cmd_parse_check(const ParseCheckOpts& o, std::ostream& out) {
    const auto ds = load_preflib(o.profile);
    ds.validate();
    std::size_t shortest = ds.m;
    std::size_t longest = 0;
    for (const auto& b : ds.ballots) {
        shortest = std::min(shortest, b.order.size());
        longest = std::max(longest, b.order.size());
    }
    out << "m=" << ds.m << " n=" << ds.n << " unique=" << ds.ballots.size() << " min_length=" << shortest
        << " max_length=" << longest << " complete=" << (ds.is_complete() ? "yes" : "no") << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Voting rules on complete and top-k truncated ballots", "topk"};
    app.require_subcommand(1, 1);
    std::function<void()> action;

    WinnerOpts winner;
    auto* winner_cmd = app.add_subcommand("winner", "Print the winner of a rule on a PrefLib profile");
    winner_cmd->add_option("--rule", winner.rule, "Rule, e.g. borda, copeland@k=2, harmonic@k=1:zero")->required();
    winner_cmd->add_option("--profile", winner.profile, "PrefLib SOC/SOI file")->required()->check(CLI::ExistingFile);
    winner_cmd->add_option("--tiebreak", winner.tiebreak, "Priority order of 0-based candidate ids, e.g. 3,0,1,2")
        ->delimiter(',');
    winner_cmd->callback([&] { action = [&] { cmd_winner(winner, out); }; });

    TruncateOpts trunc;
    auto* trunc_cmd = app.add_subcommand("truncate", "Cut every ballot to its top k and print the profile");
    trunc_cmd->add_option("--profile", trunc.profile, "PrefLib SOC/SOI file")->required()->check(CLI::ExistingFile);
    trunc_cmd->add_option("--k", trunc.k, "Truncation level (1..m-1)")->required();
    trunc_cmd->add_option("--out", trunc.out, "Output file (default stdout)");
    trunc_cmd->callback([&] { action = [&] { cmd_truncate(trunc, out); }; });

    SampleOpts sample;
    auto* sample_cmd = app.add_subcommand("sample", "Draw a Mallows profile around x1 > x2 > ... > xm");
    sample_cmd->add_option("--m", sample.m, "Number of candidates")->required();
    sample_cmd->add_option("--phi", sample.phi, "Dispersion in (0, 1]; 1 is Impartial Culture")->required();
    sample_cmd->add_option("--n", sample.n, "Number of voters")->required();
    sample_cmd->add_option("--seed", sample.seed, "Random seed")->required();
    sample_cmd->add_option("--out", sample.out, "Output file (default stdout)");
    sample_cmd->callback([&] { action = [&] { cmd_sample(sample, out); }; });

    BoundsOpts bounds;
    auto* bounds_cmd = app.add_subcommand("bounds", "Worst-case score-ratio bounds of top-k truncation");
    bounds_cmd->add_option("--rule", bounds.rules, "Rule(s): borda:zero, harmonic:avg, approval3:zero, maximin, copeland")
        ->required()
        ->delimiter(',');
    bounds_cmd->add_option("--m", bounds.m, "Number of candidates");
    bounds_cmd->add_option("--k", bounds.k, "Truncation level");
    bounds_cmd->add_flag("--table", bounds.table, "CSV table over m-min..m-max and 2 <= k <= m-2 with attained ratios");
    bounds_cmd->add_option("--m-min", bounds.m_min, "Smallest m for --table")->capture_default_str();
    bounds_cmd->add_option("--m-max", bounds.m_max, "Largest m for --table")->capture_default_str();
    bounds_cmd->add_option("--out", bounds.out, "Output file (default stdout)");
    bounds_cmd->callback([&] { action = [&] { cmd_bounds(bounds, out); }; });

    AdversarialOpts adv;
    auto* adv_cmd = app.add_subcommand("adversarial", "Build a pathological profile and print it (summary on stderr)");
    adv_cmd->add_option("--rule", adv.rule, "borda:zero, harmonic:zero, borda:avg, maximin, copeland, ...")->required();
    adv_cmd->add_option("--m", adv.m, "Number of candidates")->required();
    adv_cmd->add_option("--k", adv.k, "Truncation level (2..m-2)")->required();
    adv_cmd->add_option("--out", adv.out, "Output file (default stdout)");
    adv_cmd->callback([&] { action = [&] { cmd_adversarial(adv, out, err); }; });

    ExperimentOpts exp;
    std::string exp_kind;
    auto* exp_cmd = app.add_subcommand("experiment", "Monte-Carlo experiments (CSV output)");
    exp_cmd->require_subcommand(1, 1);
    auto add_common = [&exp](CLI::App* sub, bool with_source) {
        sub->add_option("--rule", exp.rules, "Rule(s) without @k, e.g. borda:avg,harmonic,copeland")
            ->required()
            ->delimiter(',');
        sub->add_option("--trials", exp.trials, "Profiles per cell")->capture_default_str();
        sub->add_option("--seed", exp.seed, "Base random seed")->required();
        sub->add_option("--workers", exp.workers, "Worker threads (does not change output)")->capture_default_str();
        sub->add_option("--tiebreak", exp.tiebreak, "Priority order of 0-based candidate ids")->delimiter(',');
        sub->add_flag("--with-replacement", exp.with_replacement, "Resample real data with replacement");
        sub->add_option("--out", exp.out, "Output CSV file (default stdout)");
        if (with_source) {
            sub->add_option("--model", exp.model, "Profile source")
                ->check(CLI::IsMember({"mallows", "preflib"}))
                ->capture_default_str();
            sub->add_option("--m", exp.m, "Candidates (mallows)")->capture_default_str();
            sub->add_option("--phi", exp.phi, "Dispersion (mallows)")->capture_default_str();
            sub->add_option("--n", exp.n, "Voters (mallows)")->capture_default_str();
            sub->add_option("--data", exp.data, "PrefLib file (preflib)")->check(CLI::ExistingFile);
            sub->add_option("--n-star", exp.n_star, "Sub-election size (preflib)")->delimiter(',');
        }
    };
    auto* success_cmd = exp_cmd->add_subcommand("success", "Rate of agreement between f and f_k");
    add_common(success_cmd, true);
    success_cmd->add_option("--k", exp.ks, "Truncation level(s)")->required()->delimiter(',');
    auto* ratio_cmd = exp_cmd->add_subcommand("ratio", "Score ratio of the true winner to the top-k winner");
    add_common(ratio_cmd, true);
    ratio_cmd->add_option("--k", exp.ks, "Truncation level(s)")->required()->delimiter(',');
    auto* mink_cmd = exp_cmd->add_subcommand("min-k", "Smallest k agreeing on every trial");
    add_common(mink_cmd, true);
    auto* sweep_cmd = exp_cmd->add_subcommand("real-sweep", "Success rate over resampled real elections");
    add_common(sweep_cmd, false);
    sweep_cmd->add_option("--data", exp.data, "PrefLib file")->required()->check(CLI::ExistingFile);
    sweep_cmd->add_option("--n-star", exp.n_star, "Sub-election sizes, e.g. 10,20,30")->required()->delimiter(',');
    sweep_cmd->add_option("--k", exp.ks, "Truncation level(s)")->required()->delimiter(',');
    for (auto* sub : {success_cmd, ratio_cmd, mink_cmd, sweep_cmd}) {
        sub->callback([&, sub] {
            exp_kind = sub->get_name();
            action = [&] { cmd_experiment(exp_kind, exp, out); };
        });
    }

    ParseCheckOpts check;
    auto* check_cmd = app.add_subcommand("parse-check", "Parse a PrefLib file and print a summary");
    check_cmd->add_option("--profile", check.profile, "PrefLib SOC/SOI file")->required()->check(CLI::ExistingFile);
    check_cmd->callback([&] { action = [&] { cmd_parse_check(check, out); }; });

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsageError;
    }

    try {
        if (action) {
            action();
        }
        return kOk;
    } catch (const RuleSyntaxError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kDomainError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
}

}  // namespace topk::cli
