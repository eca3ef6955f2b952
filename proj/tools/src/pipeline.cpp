#include "stancekit/cli/pipeline.hpp"

#include "stancekit/cli/config.hpp"
#include "stancekit/cluster.hpp"
#include "stancekit/corpus.hpp"
#include "stancekit/embed.hpp"
#include "stancekit/error.hpp"
#include "stancekit/graph.hpp"
#include "stancekit/report.hpp"
#include "stancekit/synth.hpp"
#include "stancekit/valence.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#ifndef STANCEKIT_VERSION
#define STANCEKIT_VERSION "unknown"
#endif

namespace fs = std::filesystem;

namespace stancekit::cli {

const char* stage_name(Stage stage) {
    switch (stage) {
    case Stage::filter: return "filter";
    case Stage::matrix: return "matrix";
    case Stage::knn: return "knn";
    case Stage::embed: return "embed";
    case Stage::cluster: return "cluster";
    case Stage::valence: return "valence";
    case Stage::report: return "report";
    }
    return "?";
}

std::optional<Stage> parse_stage(std::string_view name) {
    for (Stage s : kStageOrder) {
        if (name == stage_name(s)) {
            return s;
        }
    }
    return std::nullopt;
}

std::string sha256_hex(std::string_view bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
        throw IoError("SHA-256 computation failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(kHex[digest[i] >> 4]);
        out.push_back(kHex[digest[i] & 0xF]);
    }
    return out;
}

std::string file_sha256(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return sha256_hex(buffer.str());
}

namespace {

/// A file a stage reads, with the stage that writes it (empty for external inputs).
struct Input {
    std::string path;
    std::string producer;
};

struct StagePlan {
    std::vector<Input> inputs;
    json config_subset;
    std::function<std::vector<std::string>()> run;
};

class Context {
public:
    explicit Context(const json& config) : config_(config), workdir_(config.at("workdir").get<std::string>()) {}

    const json& config() const { return config_; }
    fs::path out(const std::string& name) const { return workdir_ / name; }
    const fs::path& workdir() const { return workdir_; }

    /// "@source" names a configured source path, a recipe name its output, anything else a file path.
    Input resolve(const std::string& ref) const {
        if (!ref.empty() && ref.front() == '@') {
            return {config_.at("sources").at(ref.substr(1)).get<std::string>(), ""};
        }
        for (const auto& r : config_.at("filter").at("recipes")) {
            if (r.at("name") == ref) {
                return {out(r.at("output").get<std::string>()).string(), "filter"};
            }
        }
        return {ref, ""};
    }

private:
    const json& config_;
    fs::path workdir_;
};

void write_json_file(const fs::path& path, const json& value) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path.string() + "'");
    }
    out << value.dump(2) << '\n';
    if (!out) {
        throw IoError("write failed for '" + path.string() + "'");
    }
}

json stats_json(const corpus::CorpusStats& s) {
    return {{"tweet_count", s.tweet_count},
            {"user_count", s.user_count},
            {"tweets_per_user_mean", s.tweets_per_user_mean},
            {"tweets_per_user_stddev", s.tweets_per_user_stddev},
            {"min_tweets_per_user", s.min_tweets_per_user},
            {"max_tweets_per_user", s.max_tweets_per_user}};
}

std::vector<std::string> distinct_users(const std::vector<corpus::Tweet>& tweets) {
    std::set<std::string> users;
    for (const auto& t : tweets) {
        users.insert(t.user_id);
    }
    return {users.begin(), users.end()};
}

// ---- filter ----------------------------------------------------------------

StagePlan plan_filter(const Context& ctx) {
    const json& config = ctx.config();
    StagePlan plan;
    std::set<std::string> seen;
    auto add_external = [&](const std::string& ref) {
        Input in = ctx.resolve(ref);
        if (in.producer.empty() && seen.insert(in.path).second) {
            plan.inputs.push_back(in);
        }
    };
    for (const auto& recipe : recipes(config)) {
        add_external(recipe.input);
        for (const auto& step : recipe.steps) {
            if (step.params.contains("timelines") && step.params.at("timelines").is_string()) {
                add_external(step.params.at("timelines").get<std::string>());
            }
        }
    }
    const json& state_table = config.at("filter").value("state_table", json(nullptr));
    if (state_table.is_string()) {
        add_external(state_table.get<std::string>());
    }
    plan.config_subset = {{"filter", config.at("filter")}, {"sources", config.at("sources")},
                          {"seed", config.at("seed")}};

    plan.run = [&ctx]() {
        const json& config = ctx.config();
        const json& st = config.at("filter").value("state_table", json(nullptr));
        const corpus::StateTable states =
            st.is_string() ? corpus::read_state_table_file(st.get<std::string>()) : corpus::default_state_table();

        std::map<std::string, std::vector<corpus::Tweet>> files;
        std::map<std::string, std::vector<corpus::Tweet>> produced;
        auto load = [&](const std::string& ref) -> const std::vector<corpus::Tweet>& {
            if (auto it = produced.find(ref); it != produced.end()) {
                return it->second;
            }
            const std::string path = ctx.resolve(ref).path;
            auto it = files.find(path);
            if (it == files.end()) {
                it = files.emplace(path, corpus::read_corpus_file(path)).first;
            }
            return it->second;
        };

        std::vector<std::string> outputs;
        json stats = json::object();
        for (const auto& recipe : recipes(config)) {
            std::vector<corpus::Tweet> tweets = load(recipe.input);
            for (const auto& step : recipe.steps) {
                const json& p = step.params;
                if (step.op == "language") {
                    tweets = corpus::filter_by_language(tweets, p.at("tag").get<std::string>());
                } else if (step.op == "keywords") {
                    const corpus::FilterSpec spec = keyword_spec(p);
                    corpus::validate(spec, true);
                    tweets = corpus::filter_by_keywords(tweets, spec);
                } else if (step.op == "date_range") {
                    tweets = corpus::filter_by_daterange(tweets, parse_day(p.at("start").get<std::string>()),
                                                         parse_day(p.at("end").get<std::string>()));
                } else if (step.op == "us_location") {
                    const auto users = corpus::users_with_us_location(tweets, states);
                    tweets = corpus::filter_by_users(tweets, {users.begin(), users.end()});
                } else if (step.op == "top_users" || step.op == "sample_users") {
                    std::vector<std::string> users;
                    if (step.op == "top_users") {
                        users = corpus::select_top_users(tweets, p.at("k").get<std::size_t>());
                    } else {
                        const json& s = p.value("seed", json(nullptr));
                        const std::uint64_t seed = s.is_null() ? global_seed(config) : s.get<std::uint64_t>();
                        users = corpus::sample_users(distinct_users(tweets), p.at("n").get<std::size_t>(), seed);
                    }
                    const json& t = p.value("timelines", json(nullptr));
                    if (t.is_string()) {
                        tweets = load(t.get<std::string>());
                    }
                    tweets = corpus::filter_by_users(tweets, {users.begin(), users.end()});
                } else if (step.op == "timeline_cap") {
                    tweets = corpus::cap_user_timelines(tweets, p.at("cap").get<std::size_t>());
                } else {
                    throw ConfigError("unknown filter op '" + step.op + "'");
                }
            }
            corpus::write_corpus_file(ctx.out(recipe.output).string(), tweets);
            outputs.push_back(recipe.output);
            stats[recipe.name] = stats_json(corpus::corpus_stats(tweets));
            produced[recipe.name] = std::move(tweets);
        }
        write_json_file(ctx.out("filter_stats.json"), stats);
        outputs.push_back("filter_stats.json");
        return outputs;
    };
    return plan;
}

// ---- stance stages ---------------------------------------------------------

constexpr const char* kMatrixFile = "retweet_matrix.txt";
constexpr const char* kKnnFile = "knn_graph.txt";
constexpr const char* kEmbeddingFile = "embedding.txt";
constexpr const char* kAssignmentFile = "assignment.txt";

std::vector<Input> matrix_inputs(const Context& ctx) {
    const std::string base = ctx.out(kMatrixFile).string();
    return {{base, "matrix"}, {base + ".users", "matrix"}, {base + ".accounts", "matrix"}};
}

StagePlan plan_matrix(const Context& ctx) {
    const json& config = ctx.config();
    StagePlan plan;
    plan.inputs.push_back(ctx.resolve(config.at("stance").at("corpus").get<std::string>()));
    plan.config_subset = {{"matrix", config.at("matrix")}, {"stance", config.at("stance")}};
    plan.run = [&ctx]() {
        const auto tweets = corpus::read_corpus_file(ctx.resolve(ctx.config().at("stance").at("corpus")).path);
        const auto matrix = graph::build_retweet_matrix(tweets, matrix_options(ctx.config()));
        graph::write_matrix_files(ctx.out(kMatrixFile).string(), matrix);
        return std::vector<std::string>{kMatrixFile, std::string(kMatrixFile) + ".users",
                                        std::string(kMatrixFile) + ".accounts"};
    };
    return plan;
}

StagePlan plan_knn(const Context& ctx) {
    StagePlan plan;
    plan.inputs = matrix_inputs(ctx);
    plan.config_subset = {{"knn", ctx.config().at("knn")}};
    plan.run = [&ctx]() {
        const auto matrix = graph::read_matrix_files(ctx.out(kMatrixFile).string());
        const auto knn = graph::knn_graph(matrix, knn_k(ctx.config()), jobs(ctx.config()));
        graph::write_knn_file(ctx.out(kKnnFile).string(), knn);
        return std::vector<std::string>{kKnnFile};
    };
    return plan;
}

StagePlan plan_embed(const Context& ctx) {
    StagePlan plan;
    plan.inputs = {{ctx.out(kKnnFile).string(), "knn"}, {ctx.out(kMatrixFile).string() + ".users", "matrix"}};
    const auto params = embed_params(ctx.config());
    plan.config_subset = {{"embed", ctx.config().at("embed")}, {"seed", params.seed}};
    plan.run = [&ctx]() {
        const auto params = embed_params(ctx.config());
        const auto matrix = graph::read_matrix_files(ctx.out(kMatrixFile).string());
        const auto knn = graph::read_knn_file(ctx.out(kKnnFile).string());
        if (knn.neighbors.size() != matrix.num_users()) {
            throw DataError("knn graph has " + std::to_string(knn.neighbors.size()) + " rows but the matrix has " +
                            std::to_string(matrix.num_users()) + " users; re-run stage 'knn'");
        }
        const auto fuzzy = embed::build_fuzzy_graph(knn.neighbors);
        const auto layout = embed::optimize_layout(fuzzy, params);
        embed::write_embedding_file(ctx.out(kEmbeddingFile).string(), matrix.users(), layout.embedding);

        json echo = {{"n_points", matrix.num_users()},
                     {"n_neighbors", knn.k},
                     {"min_dist", params.min_dist},
                     {"spread", params.spread},
                     {"n_epochs", params.n_epochs},
                     {"learning_rate", params.learning_rate},
                     {"negative_sample_rate", params.negative_sample_rate},
                     {"seed", params.seed},
                     {"curve_a", layout.curve.a},
                     {"curve_b", layout.curve.b},
                     {"initialization", layout.spectral ? "spectral" : "random"}};
        write_json_file(ctx.out("embed_params.json"), echo);
        return std::vector<std::string>{kEmbeddingFile, "embed_params.json"};
    };
    return plan;
}

StagePlan plan_cluster(const Context& ctx) {
    StagePlan plan;
    plan.inputs = matrix_inputs(ctx);
    plan.inputs.insert(plan.inputs.begin(), Input{ctx.out(kEmbeddingFile).string(), "embed"});
    plan.config_subset = {{"cluster", ctx.config().at("cluster")}, {"seed", mean_shift_params(ctx.config()).seed}};
    plan.run = [&ctx]() {
        const auto params = mean_shift_params(ctx.config());
        const auto labeled = embed::read_embedding_file(ctx.out(kEmbeddingFile).string());
        const auto matrix = graph::read_matrix_files(ctx.out(kMatrixFile).string());
        if (labeled.users != matrix.users()) {
            throw DataError("embedding users do not match the retweet matrix; re-run stage 'embed'");
        }
        const auto assignment = cluster::mean_shift(labeled.embedding.coords, params);
        const auto named = cluster::label_clusters_by_seeds(assignment, matrix, camp_seeds(ctx.config()));
        cluster::write_assignment_file(ctx.out(kAssignmentFile).string(), named);

        std::array<std::size_t, 2> camp_sizes{0, 0};
        for (int c : named.camp) {
            if (c >= 0) {
                ++camp_sizes[static_cast<std::size_t>(c)];
            }
        }
        json modes = json::array();
        for (std::size_t i = 0; i < assignment.modes.size(); ++i) {
            modes.push_back({{"x", assignment.modes[i][0]},
                             {"y", assignment.modes[i][1]},
                             {"size", assignment.sizes[i]}});
        }
        json summary = {{"n_points", labeled.users.size()},
                        {"bandwidth", assignment.bandwidth},
                        {"raw_modes", assignment.raw_modes},
                        {"clusters", modes},
                        {"unclustered_by_size", assignment.unclustered},
                        {"non_converged", assignment.non_converged},
                        {"camps",
                         {{named.camps[0], camp_sizes[0]}, {named.camps[1], camp_sizes[1]}}},
                        {"unclustered", labeled.users.size() - camp_sizes[0] - camp_sizes[1]}};
        write_json_file(ctx.out("cluster_summary.json"), summary);
        return std::vector<std::string>{kAssignmentFile, "cluster_summary.json"};
    };
    return plan;
}

std::vector<valence::TermKind> term_kinds(const json& list) {
    std::vector<valence::TermKind> kinds;
    for (const auto& k : list) {
        kinds.push_back(valence::parse_term_kind(k.get<std::string>()));
    }
    return kinds;
}

StagePlan plan_valence(const Context& ctx) {
    const json& config = ctx.config();
    StagePlan plan;
    plan.inputs.push_back(ctx.resolve(config.at("stance").at("corpus").get<std::string>()));
    plan.inputs.push_back({ctx.out(kAssignmentFile).string(), "cluster"});
    const json& expansions = config.at("valence").value("url_expansions", json(nullptr));
    if (expansions.is_string()) {
        plan.inputs.push_back({expansions.get<std::string>(), ""});
    }
    plan.config_subset = {{"valence", config.at("valence")}, {"camps", camp_names(config)}};
    plan.run = [&ctx]() {
        const json& config = ctx.config();
        const json& v = config.at("valence");
        const auto tweets = corpus::read_corpus_file(ctx.resolve(config.at("stance").at("corpus")).path);
        const auto named = cluster::read_assignment_file(ctx.out(kAssignmentFile).string(), camp_names(config));
        valence::CountOptions options;
        options.per_tweet_dedup = v.at("per_tweet_dedup").get<bool>();
        const json& exp = v.value("url_expansions", json(nullptr));
        if (exp.is_string()) {
            options.url_expansions = valence::read_url_expansions_file(exp.get<std::string>());
        }
        const double threshold = v.at("threshold").get<double>();
        std::vector<std::string> outputs;
        for (auto kind : term_kinds(v.at("kinds"))) {
            const auto counts = valence::count_terms(tweets, named, kind, options);
            for (int camp = 0; camp < 2; ++camp) {
                const std::string name = "valence_" + named.camps[static_cast<std::size_t>(camp)] + "_" +
                                         valence::to_string(kind) + ".csv";
                valence::write_valence_csv_file(ctx.out(name).string(),
                                                valence::distinctive_terms(counts, camp, threshold));
                outputs.push_back(name);
            }
        }
        return outputs;
    };
    return plan;
}

template <typename Fn>
void write_text_file(const fs::path& path, Fn&& writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path.string() + "'");
    }
    writer(out);
    if (!out) {
        throw IoError("write failed for '" + path.string() + "'");
    }
}

StagePlan plan_report(const Context& ctx) {
    const json& config = ctx.config();
    const json& r = config.at("report");
    StagePlan plan;
    plan.inputs.push_back(ctx.resolve(config.at("stance").at("corpus").get<std::string>()));
    plan.inputs.push_back({ctx.out(kAssignmentFile).string(), "cluster"});
    if (r.value("lexicon", json(nullptr)).is_string()) {
        plan.inputs.push_back({r.at("lexicon").get<std::string>(), ""});
    }
    const json& reference = r.value("reference", json(nullptr));
    if (reference.is_object()) {
        plan.inputs.push_back(ctx.resolve(reference.at("corpus").get<std::string>()));
    }
    plan.config_subset = {{"report", r}, {"camps", camp_names(config)}};

    plan.run = [&ctx]() {
        const json& config = ctx.config();
        const json& r = config.at("report");
        const auto tweets = corpus::read_corpus_file(ctx.resolve(config.at("stance").at("corpus")).path);
        const auto named = cluster::read_assignment_file(ctx.out(kAssignmentFile).string(), camp_names(config));
        std::vector<std::string> outputs;

        const auto series = report::daily_counts(tweets, named, parse_day(r.at("start").get<std::string>()),
                                                 parse_day(r.at("end").get<std::string>()));
        write_text_file(ctx.out("daily_counts.csv"), [&](std::ostream& os) { report::write_daily_csv(os, series); });
        report::emit_timeseries_plot(series, ctx.out("daily_counts.svg").string());
        outputs.insert(outputs.end(), {"daily_counts.csv", "daily_counts.svg"});

        std::optional<report::CategoryLexicon> lexicon;
        std::set<std::string> excluded;
        for (const auto& e : r.at("exclude")) {
            excluded.insert(e.get<std::string>());
        }
        if (r.value("lexicon", json(nullptr)).is_string()) {
            lexicon = report::read_lexicon_file(r.at("lexicon").get<std::string>());
            excluded.insert(lexicon->excluded.begin(), lexicon->excluded.end());
        }
        const report::TermFilter filter(excluded);
        const auto top_n = r.at("top_n").get<std::size_t>();

        auto emit_tables = [&](const valence::GroupTermCounts& counts, int camp, std::size_t n,
                               const std::string& group) {
            const auto tables = report::top_terms_table(counts, n, filter);
            const auto& table = tables[static_cast<std::size_t>(camp)];
            const std::string kind = valence::to_string(counts.kind);
            const std::string top_name = "top_" + kind + "_" + group + ".csv";
            write_text_file(ctx.out(top_name), [&](std::ostream& os) { report::write_top_terms_csv(os, table); });
            outputs.push_back(top_name);
            if (lexicon) {
                const std::string cat_name = "categories_" + kind + "_" + group + ".csv";
                const auto cats = report::categorize_terms(table, *lexicon);
                write_text_file(ctx.out(cat_name),
                                [&](std::ostream& os) { report::write_categories_csv(os, cats); });
                outputs.push_back(cat_name);
            }
        };

        const auto kinds = term_kinds(r.at("kinds"));
        for (auto kind : kinds) {
            const auto counts = valence::count_terms(tweets, named, kind);
            for (int camp = 0; camp < 2; ++camp) {
                emit_tables(counts, camp, top_n, named.camps[static_cast<std::size_t>(camp)]);
            }
        }

        json stats = {{"stance_corpus", stats_json(corpus::corpus_stats(tweets))}};
        for (int camp = 0; camp < 2; ++camp) {
            std::vector<corpus::Tweet> mine;
            for (const auto& t : tweets) {
                if (named.camp_of(t.user_id) == camp) {
                    mine.push_back(t);
                }
            }
            stats[named.camps[static_cast<std::size_t>(camp)]] = stats_json(corpus::corpus_stats(mine));
        }

        const json& reference = r.value("reference", json(nullptr));
        if (reference.is_object()) {
            const std::string name = reference.at("name").get<std::string>();
            const auto ref_tweets = corpus::read_corpus_file(ctx.resolve(reference.at("corpus")).path);
            // Every author of the reference corpus forms a single group.
            cluster::NamedAssignment everyone;
            everyone.users = distinct_users(ref_tweets);
            everyone.camp.assign(everyone.users.size(), 0);
            everyone.camps = {name, name + "_complement"};
            for (auto kind : kinds) {
                emit_tables(valence::count_terms(ref_tweets, everyone, kind), 0,
                            reference.at("top_n").get<std::size_t>(), name);
            }
            stats[name] = stats_json(corpus::corpus_stats(ref_tweets));
        }
        write_json_file(ctx.out("corpus_stats.json"), stats);
        outputs.push_back("corpus_stats.json");
        return outputs;
    };
    return plan;
}

StagePlan make_plan(Stage stage, const Context& ctx) {
    switch (stage) {
    case Stage::filter: return plan_filter(ctx);
    case Stage::matrix: return plan_matrix(ctx);
    case Stage::knn: return plan_knn(ctx);
    case Stage::embed: return plan_embed(ctx);
    case Stage::cluster: return plan_cluster(ctx);
    case Stage::valence: return plan_valence(ctx);
    case Stage::report: return plan_report(ctx);
    }
    throw ConfigError("unknown stage");
}

json read_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        return nullptr;
    }
    json m = json::parse(in, nullptr, false);
    return m.is_discarded() ? json(nullptr) : m;
}

bool manifest_current(const json& manifest, const std::string& config_hash, const json& input_hashes,
                      const Context& ctx) {
    if (!manifest.is_object() || manifest.value("config_hash", "") != config_hash ||
        manifest.value("version", "") != STANCEKIT_VERSION || manifest.value("inputs", json()) != input_hashes) {
        return false;
    }
    const json& outputs = manifest.value("outputs", json());
    if (!outputs.is_object() || outputs.empty()) {
        return false;
    }
    for (const auto& [name, hash] : outputs.items()) {
        const fs::path path = ctx.out(name);
        if (!fs::exists(path) || file_sha256(path.string()) != hash) {
            return false;
        }
    }
    return true;
}

/// Rethrows as the same error category with the stage name prefixed.
[[noreturn]] void rethrow_with_stage(Stage stage, const Error& e) {
    const std::string message = std::string("stage '") + stage_name(stage) + "': " + e.what();
    switch (e.kind()) {
    case ErrorKind::config:
        throw ConfigError(message);
    case ErrorKind::data:
        throw DataError(message);
    case ErrorKind::numeric:
        throw NumericError(message);
    case ErrorKind::io:
        throw IoError(message);
    }
    throw Error(e.kind(), message);
}

} // namespace

StageResult run_stage(Stage stage, const json& config, const RunOptions& options) {
    require_valid(config);
    const Context ctx(config);
    StageResult result{stage, false, {}};
    try {
        const auto start = std::chrono::steady_clock::now();
        StagePlan plan = make_plan(stage, ctx);

        json input_hashes = json::object();
        for (const auto& in : plan.inputs) {
            if (!fs::is_regular_file(in.path)) {
                std::string message = "missing input '" + in.path + "'";
                message += in.producer.empty() ? " (external input; check the configured path)"
                                               : ", produced by stage '" + in.producer + "'; run that stage first";
                throw DataError(message);
            }
            input_hashes[in.path] = file_sha256(in.path);
        }
        const std::string config_hash = sha256_hex(plan.config_subset.dump());
        const fs::path manifest_path = ctx.workdir() / "manifests" / (std::string(stage_name(stage)) + ".json");

        const json previous = read_manifest(manifest_path);
        if (!options.force && manifest_current(previous, config_hash, input_hashes, ctx)) {
            result.skipped = true;
            for (const auto& [name, hash] : previous.at("outputs").items()) {
                result.outputs.push_back(name);
            }
            return result;
        }

        fs::create_directories(ctx.workdir() / "manifests");
        result.outputs = plan.run();

        json output_hashes = json::object();
        for (const auto& name : result.outputs) {
            output_hashes[name] = file_sha256(ctx.out(name).string());
        }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        json manifest = {{"stage", stage_name(stage)},
                         {"version", STANCEKIT_VERSION},
                         {"config_hash", config_hash},
                         {"config", plan.config_subset},
                         {"inputs", input_hashes},
                         {"outputs", output_hashes},
                         {"wall_time_seconds", elapsed.count()}};
        write_json_file(manifest_path, manifest);
        return result;
    } catch (const Error& e) {
        rethrow_with_stage(stage, e);
    } catch (const fs::filesystem_error& e) {
        rethrow_with_stage(stage, IoError(e.what()));
    } catch (const json::exception& e) {
        rethrow_with_stage(stage, ConfigError(e.what()));
    }
}

std::vector<StageResult> run_pipeline(const json& config, const RunOptions& options) {
    require_valid(config);
    std::vector<StageResult> results;
    for (Stage stage : kStageOrder) {
        results.push_back(run_stage(stage, config, options));
    }
    return results;
}

std::vector<std::string> run_synth(const json& config) {
    require_valid(config);
    const auto params = synth_params(config);
    const auto corpus = synth::generate_corpus(params);
    const std::string output = config.at("synth").at("output").get<std::string>();
    const std::string truth = config.at("synth").at("truth").get<std::string>();
    for (const auto& path : {output, truth}) {
        const fs::path parent = fs::path(path).parent_path();
        if (!parent.empty()) {
            fs::create_directories(parent);
        }
    }
    corpus::write_corpus_file(output, corpus.tweets);
    synth::write_truth_file(truth, params, corpus.truth);
    return {output, truth};
}

} // namespace stancekit::cli
