#include "stancekit/cli/config.hpp"
#include "stancekit/cli/pipeline.hpp"
#include "stancekit/error.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using stancekit::cli::json;

enum class FlagType { integer, number, string, boolean, number_or_auto };

struct FlagSpec {
    const char* flag;
    const char* key;
    FlagType type;
    const char* help;
};

// Flags mirror config keys; grouped by the subcommand that owns them.
const std::map<std::string, std::vector<FlagSpec>>& flag_table() {
    static const std::map<std::string, std::vector<FlagSpec>> table{
        {"filter",
         {{"--raw", "sources.raw", FlagType::string, "raw corpus path (source @raw)"},
          {"--timelines", "sources.timelines", FlagType::string, "timeline corpus path (source @timelines)"},
          {"--state-table", "filter.state_table", FlagType::string, "US state table (name<TAB>abbrev)"}}},
        {"matrix",
         {{"--stance-corpus", "stance.corpus", FlagType::string, "recipe name or corpus path to cluster"},
          {"--min-user-retweets", "matrix.min_user_retweets", FlagType::integer, "drop users with fewer retweets"},
          {"--min-account-mentions", "matrix.min_account_mentions", FlagType::integer,
           "drop accounts with fewer distinct retweeters"},
          {"--binary", "matrix.binary", FlagType::boolean, "binary retweet indicators instead of counts"}}},
        {"knn", {{"--k", "knn.k", FlagType::integer, "neighbors per user"}}},
        {"embed",
         {{"--min-dist", "embed.min_dist", FlagType::number, "layout min_dist"},
          {"--spread", "embed.spread", FlagType::number, "layout spread"},
          {"--n-epochs", "embed.n_epochs", FlagType::integer, "optimization epochs"},
          {"--learning-rate", "embed.learning_rate", FlagType::number, "initial learning rate"},
          {"--negative-sample-rate", "embed.negative_sample_rate", FlagType::integer, "negatives per positive"},
          {"--embed-seed", "embed.seed", FlagType::integer, "layout seed (defaults to --seed)"}}},
        {"cluster",
         {{"--bandwidth", "cluster.bandwidth", FlagType::number_or_auto, "kernel bandwidth or \"auto\""},
          {"--auto-quantile", "cluster.auto_quantile", FlagType::number, "distance quantile for auto bandwidth"},
          {"--max-iterations", "cluster.max_iterations", FlagType::integer, "mean-shift iteration cap"},
          {"--convergence-tol", "cluster.convergence_tol", FlagType::number, "mean-shift shift tolerance"},
          {"--mode-merge-radius", "cluster.mode_merge_radius", FlagType::number, "merge modes closer than this"},
          {"--min-cluster-fraction", "cluster.min_cluster_fraction", FlagType::number,
           "smaller clusters become unclustered"}}},
        {"valence",
         {{"--threshold", "valence.threshold", FlagType::number, "minimum valence of a distinctive term"},
          {"--per-tweet-dedup", "valence.per_tweet_dedup", FlagType::boolean, "count a term once per tweet"},
          {"--url-expansions", "valence.url_expansions", FlagType::string, "short<TAB>expanded URL map"}}},
        {"report",
         {{"--start", "report.start", FlagType::string, "first day of the daily series"},
          {"--end", "report.end", FlagType::string, "last day of the daily series"},
          {"--top-n", "report.top_n", FlagType::integer, "terms per camp table"},
          {"--lexicon", "report.lexicon", FlagType::string, "category lexicon (category<TAB>term)"}}},
        {"synth",
         {{"--output", "synth.output", FlagType::string, "corpus output path"},
          {"--truth", "synth.truth", FlagType::string, "ground-truth output path"},
          {"--crossover", "synth.crossover", FlagType::number, "probability of drawing from the other camp"},
          {"--shared-probability", "synth.shared_probability", FlagType::number, "probability of the shared pool"},
          {"--shared-accounts", "synth.shared_account_count", FlagType::integer, "size of the shared pool"},
          {"--retweets-mean", "synth.retweets_mean", FlagType::number, "mean retweets per user"},
          {"--synth-seed", "synth.seed", FlagType::integer, "generator seed (defaults to --seed)"}}},
    };
    return table;
}

json typed_value(const FlagSpec& spec, const std::string& raw) {
    const auto bad = [&]() {
        return stancekit::ConfigError(std::string(spec.flag) + ": cannot parse '" + raw + "'");
    };
    try {
        std::size_t used = 0;
        switch (spec.type) {
        case FlagType::string: return raw;
        case FlagType::boolean: return raw == "true";
        case FlagType::integer: {
            if (!raw.empty() && raw.front() == '-') {
                const long long v = std::stoll(raw, &used);
                if (used != raw.size()) throw bad();
                return v;
            }
            const unsigned long long v = std::stoull(raw, &used);
            if (used != raw.size()) throw bad();
            return v;
        }
        case FlagType::number_or_auto:
            if (raw == "auto") return raw;
            [[fallthrough]];
        case FlagType::number: {
            const double v = std::stod(raw, &used);
            if (used != raw.size()) throw bad();
            return v;
        }
        }
    } catch (const std::logic_error&) {
        throw bad();
    }
    throw bad();
}

/// Options shared by every config-driven subcommand.
struct Common {
    std::string config_path;
    std::optional<std::string> workdir;
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
    bool force = false;
    std::vector<std::string> overrides;
    std::map<const FlagSpec*, std::string> values;
    std::map<const FlagSpec*, int> on;
    std::map<const FlagSpec*, int> off;
};

void add_common(CLI::App* sub, Common& common, bool runs_stages) {
    sub->add_option("-c,--config", common.config_path, "JSON config merged over the built-in defaults");
    sub->add_option("--workdir", common.workdir, "artifact directory");
    sub->add_option("--seed", common.seed, "global seed for every stochastic stage");
    sub->add_option("--jobs", common.jobs, "threads for knn and mean-shift (1 keeps runs reproducible)");
    sub->add_option("--set", common.overrides, "override any config key: dotted.key=value (JSON value)");
    if (runs_stages) {
        sub->add_flag("--force", common.force, "re-run even when the stage manifest is current");
    }
}

void add_flags(CLI::App* sub, Common& common, const std::vector<std::string>& groups) {
    for (const auto& group : groups) {
        for (const auto& spec : flag_table().at(group)) {
            if (spec.type == FlagType::boolean) {
                const std::string name = spec.flag;
                sub->add_flag(name, common.on[&spec], spec.help);
                sub->add_flag("--no-" + name.substr(2), common.off[&spec], "disable " + name);
            } else {
                sub->add_option(spec.flag, common.values[&spec], spec.help);
            }
        }
    }
}

json build_config(const Common& common) {
    json config = common.config_path.empty() ? stancekit::cli::default_config()
                                             : stancekit::cli::load_config(common.config_path);
    for (const auto& [spec, raw] : common.values) {
        if (!raw.empty()) {
            stancekit::cli::set_path(config, spec->key, typed_value(*spec, raw));
        }
    }
    for (const auto& [spec, count] : common.on) {
        if (count > 0) {
            stancekit::cli::set_path(config, spec->key, true);
        }
    }
    for (const auto& [spec, count] : common.off) {
        if (count > 0) {
            stancekit::cli::set_path(config, spec->key, false);
        }
    }
    if (common.workdir) config["workdir"] = *common.workdir;
    if (common.seed) config["seed"] = *common.seed;
    if (common.jobs) config["jobs"] = *common.jobs;
    for (const auto& assignment : common.overrides) {
        stancekit::cli::apply_override(config, assignment);
    }
    return config;
}

int exit_code(stancekit::ErrorKind kind) {
    switch (kind) {
    case stancekit::ErrorKind::config: return 2;
    case stancekit::ErrorKind::data: return 3;
    case stancekit::ErrorKind::io: return 3;
    case stancekit::ErrorKind::numeric: return 4;
    }
    return 1;
}

void report(const stancekit::cli::StageResult& r) {
    std::cout << stancekit::cli::stage_name(r.stage) << ": " << (r.skipped ? "up to date" : "done");
    for (const auto& o : r.outputs) {
        std::cout << ' ' << o;
    }
    std::cout << '\n';
}

} // namespace

int main(int argc, char** argv) {
    using namespace stancekit::cli;

    CLI::App app{"stancekit: retweet-based stance detection and frame analysis"};
    app.require_subcommand(1);
    app.set_version_flag("--version", STANCEKIT_VERSION);

    Common common;
    std::vector<std::string> all_groups;
    for (const auto& [group, specs] : flag_table()) {
        if (group != "synth") {
            all_groups.push_back(group);
        }
    }

    std::map<CLI::App*, Stage> stage_commands;
    for (Stage stage : kStageOrder) {
        auto* sub = app.add_subcommand(stage_name(stage), std::string("run the ") + stage_name(stage) + " stage");
        add_common(sub, common, true);
        add_flags(sub, common, {stage_name(stage)});
        if (stage == Stage::valence || stage == Stage::report) {
            // Both read the stance corpus, whose flag lives with the matrix stage.
            const FlagSpec& corpus_flag = flag_table().at("matrix").front();
            sub->add_option(corpus_flag.flag, common.values[&corpus_flag], corpus_flag.help);
        }
        stage_commands[sub] = stage;
    }
    auto* pipeline = app.add_subcommand("pipeline", "run every stage in order, skipping up-to-date stages");
    add_common(pipeline, common, true);
    add_flags(pipeline, common, all_groups);

    auto* synth = app.add_subcommand("synth", "write a synthetic two-camp corpus and its ground truth");
    add_common(synth, common, false);
    add_flags(synth, common, {"synth"});

    auto* validate = app.add_subcommand("validate", "check a config file and list every problem");
    std::string validate_path;
    validate->add_option("config", validate_path, "config file")->required();

    auto* show = app.add_subcommand("show-config", "print the effective configuration");
    add_common(show, common, false);
    add_flags(show, common, all_groups);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (validate->parsed()) {
            const auto errors = validate_config_file(validate_path);
            if (errors.empty()) {
                std::cout << validate_path << ": ok\n";
                return 0;
            }
            for (const auto& e : errors) {
                std::cerr << validate_path << ": " << e << '\n';
            }
            return 2;
        }

        const json config = build_config(common);
        if (show->parsed()) {
            require_valid(config);
            std::cout << config.dump(2) << '\n';
            return 0;
        }
        if (synth->parsed()) {
            for (const auto& path : run_synth(config)) {
                std::cout << "wrote " << path << '\n';
            }
            return 0;
        }
        const RunOptions options{common.force};
        if (pipeline->parsed()) {
            for (const auto& r : run_pipeline(config, options)) {
                report(r);
            }
            return 0;
        }
        for (const auto& [sub, stage] : stage_commands) {
            if (sub->parsed()) {
                report(run_stage(stage, config, options));
                return 0;
            }
        }
    } catch (const stancekit::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
