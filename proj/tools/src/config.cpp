#include "stancekit/cli/config.hpp"

#include "stancekit/civil_time.hpp"
#include "stancekit/error.hpp"
#include "stancekit/text.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace stancekit::cli {

// Generated at build time from configs/default.json.
extern const char* const kDefaultConfigText;

const json& default_config() {
    static const json config = json::parse(kDefaultConfigText);
    return config;
}

json merge(json base, const json& overlay) {
    if (!base.is_object() || !overlay.is_object()) {
        return overlay;
    }
    for (const auto& [key, value] : overlay.items()) {
        if (base.contains(key)) {
            base[key] = merge(base[key], value);
        } else {
            base[key] = value;
        }
    }
    return base;
}

namespace {

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
}

} // namespace

json load_config(const std::string& path) { return merge(default_config(), parse_file(path)); }

void set_path(json& config, const std::string& dotted, json value) {
    json* node = &config;
    for (const auto& part : text::split(dotted, '.')) {
        if (part.empty()) {
            throw ConfigError("malformed config key '" + dotted + "'");
        }
        if (!node->is_object()) {
            *node = json::object();
        }
        node = &(*node)[part];
    }
    *node = std::move(value);
}

void apply_override(json& config, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("override '" + assignment + "' must look like key.path=value");
    }
    const std::string key = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) {
        value = raw;
    }
    set_path(config, key, std::move(value));
}

namespace {

// Seeds set from C++ arrive as signed integers, parsed ones as unsigned.
bool is_seed(const json& node) {
    return node.is_number_unsigned() || (node.is_number_integer() && node.get<std::int64_t>() >= 0);
}

/// Collects problems without stopping; each check reports against a dotted path.
class Checker {
public:
    std::vector<std::string> errors;

    void fail(const std::string& path, const std::string& what) { errors.push_back(path + ": " + what); }

    const json* member(const json& object, const std::string& path, const std::string& key, bool required = true) {
        if (!object.is_object()) {
            return nullptr;
        }
        auto it = object.find(key);
        if (it == object.end()) {
            if (required) {
                fail(join(path, key), "missing");
            }
            return nullptr;
        }
        return &*it;
    }

    bool object(const json* node, const std::string& path, const std::set<std::string>& allowed) {
        if (node == nullptr) {
            return false;
        }
        if (!node->is_object()) {
            fail(path, "expected an object");
            return false;
        }
        for (const auto& [key, value] : node->items()) {
            if (allowed.count(key) == 0) {
                fail(join(path, key), "unknown key");
            }
        }
        return true;
    }

    std::optional<double> number(const json& parent, const std::string& path, const std::string& key, double lo,
                                 double hi, bool lo_open = false, bool hi_open = false) {
        const json* node = member(parent, path, key);
        if (node == nullptr) {
            return std::nullopt;
        }
        if (!node->is_number()) {
            fail(join(path, key), "expected a number");
            return std::nullopt;
        }
        const double v = node->get<double>();
        const bool below = lo_open ? !(v > lo) : !(v >= lo);
        const bool above = hi_open ? !(v < hi) : !(v <= hi);
        if (below || above) {
            std::ostringstream os;
            os << "must lie in " << (lo_open ? "(" : "[") << lo << ", " << hi << (hi_open ? ")" : "]") << ", got " << v;
            fail(join(path, key), os.str());
            return std::nullopt;
        }
        return v;
    }

    std::optional<std::int64_t> integer(const json& parent, const std::string& path, const std::string& key,
                                        std::int64_t lo, std::int64_t hi = INT64_MAX) {
        const json* node = member(parent, path, key);
        if (node == nullptr) {
            return std::nullopt;
        }
        return integer_value(*node, join(path, key), lo, hi);
    }

    std::optional<std::int64_t> integer_value(const json& node, const std::string& path, std::int64_t lo,
                                              std::int64_t hi = INT64_MAX) {
        if (!node.is_number_integer()) {
            fail(path, "expected an integer");
            return std::nullopt;
        }
        if (node.is_number_unsigned() && node.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
            if (hi != INT64_MAX) {
                fail(path, "too large");
                return std::nullopt;
            }
            return INT64_MAX;
        }
        const auto v = node.get<std::int64_t>();
        if (v < lo || v > hi) {
            fail(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " + std::to_string(v));
            return std::nullopt;
        }
        return v;
    }

    void seed_or_null(const json& parent, const std::string& path, const std::string& key) {
        const json* node = member(parent, path, key, false);
        if (node != nullptr && !node->is_null() && !is_seed(*node)) {
            fail(join(path, key), "expected a non-negative integer seed or null");
        }
    }

    void boolean(const json& parent, const std::string& path, const std::string& key) {
        const json* node = member(parent, path, key);
        if (node != nullptr && !node->is_boolean()) {
            fail(join(path, key), "expected true or false");
        }
    }

    std::optional<std::string> string(const json& parent, const std::string& path, const std::string& key,
                                      bool required = true) {
        const json* node = member(parent, path, key, required);
        if (node == nullptr) {
            return std::nullopt;
        }
        if (!node->is_string() || node->get<std::string>().empty()) {
            fail(join(path, key), "expected a non-empty string");
            return std::nullopt;
        }
        return node->get<std::string>();
    }

    /// Absent and null are both fine.
    std::optional<std::string> optional_string(const json& parent, const std::string& path, const std::string& key) {
        const json* node = member(parent, path, key, false);
        if (node == nullptr || node->is_null()) {
            return std::nullopt;
        }
        return string(parent, path, key);
    }

    std::optional<Day> date(const json& parent, const std::string& path, const std::string& key) {
        auto s = string(parent, path, key);
        if (!s) {
            return std::nullopt;
        }
        try {
            return parse_day(*s);
        } catch (const Error& e) {
            fail(join(path, key), "expected a YYYY-MM-DD date, got '" + *s + "'");
            return std::nullopt;
        }
    }

    void date_range(const json& parent, const std::string& path, const std::string& start_key,
                    const std::string& end_key) {
        auto start = date(parent, path, start_key);
        auto end = date(parent, path, end_key);
        if (start && end && *start > *end) {
            fail(path, start_key + " is after " + end_key);
        }
    }

    std::optional<std::vector<std::string>> string_list(const json& parent, const std::string& path,
                                                        const std::string& key, bool allow_empty) {
        const json* node = member(parent, path, key);
        if (node == nullptr) {
            return std::nullopt;
        }
        if (!node->is_array()) {
            fail(join(path, key), "expected a list of strings");
            return std::nullopt;
        }
        if (node->empty() && !allow_empty) {
            fail(join(path, key), "must not be empty");
        }
        std::vector<std::string> out;
        for (std::size_t i = 0; i < node->size(); ++i) {
            const json& item = (*node)[i];
            if (!item.is_string() || item.get<std::string>().empty()) {
                fail(join(path, key) + "[" + std::to_string(i) + "]", "expected a non-empty string");
                continue;
            }
            out.push_back(item.get<std::string>());
        }
        return out;
    }

    void count_pair(const json& parent, const std::string& path, const std::string& key, std::int64_t lo) {
        const json* node = member(parent, path, key);
        if (node == nullptr) {
            return;
        }
        if (!node->is_array() || node->size() != 2) {
            fail(join(path, key), "expected a list of two integers");
            return;
        }
        for (std::size_t i = 0; i < 2; ++i) {
            integer_value((*node)[i], join(path, key) + "[" + std::to_string(i) + "]", lo);
        }
    }

    static std::string join(const std::string& path, const std::string& key) {
        return path.empty() ? key : path + "." + key;
    }
};

bool has_whitespace(const std::string& s) {
    for (unsigned char c : s) {
        if (std::isspace(c) != 0) {
            return true;
        }
    }
    return false;
}

/// Names a "@source", an earlier recipe, or (anything else) a file path.
void check_reference(Checker& c, const json& config, const std::string& path, const std::string& ref) {
    if (!ref.empty() && ref.front() == '@') {
        const std::string source = ref.substr(1);
        const json* sources = config.contains("sources") ? &config.at("sources") : nullptr;
        if (sources == nullptr || !sources->is_object() || !sources->contains(source)) {
            c.fail(path, "unknown source '" + ref + "'");
        } else if (!sources->at(source).is_string()) {
            c.fail(path, "source '" + ref + "' has no path configured");
        }
    }
}

void check_keyword_step(Checker& c, const json& step, const std::string& path) {
    if (!step.contains("keywords")) {
        c.fail(path + ".keywords", "missing");
    } else if (!step.at("keywords").is_array()) {
        c.fail(path + ".keywords", "expected a list");
    } else {
        const json& list = step.at("keywords");
        if (list.empty()) {
            c.fail(path + ".keywords", "must not be empty");
        }
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string item_path = path + ".keywords[" + std::to_string(i) + "]";
            const json& k = list[i];
            if (k.is_string()) {
                if (k.get<std::string>().empty()) {
                    c.fail(item_path, "empty keyword");
                }
            } else if (k.is_object()) {
                c.object(&k, item_path, {"text", "case_sensitive"});
                c.string(k, item_path, "text");
                c.boolean(k, item_path, "case_sensitive");
            } else {
                c.fail(item_path, "expected a string or {text, case_sensitive}");
            }
        }
    }
    if (const json* mode = c.member(step, path, "match_mode", false)) {
        if (!mode->is_string() || (*mode != "substring" && *mode != "token")) {
            c.fail(path + ".match_mode", "expected \"substring\" or \"token\"");
        }
    }
    if (const json* cs = c.member(step, path, "case_sensitive", false)) {
        if (!cs->is_boolean() && *cs != "auto") {
            c.fail(path + ".case_sensitive", "expected true, false or \"auto\"");
        }
    }
}

void check_filter(Checker& c, const json& config) {
    const json* filter = c.member(config, "", "filter");
    if (!c.object(filter, "filter", {"state_table", "recipes"})) {
        return;
    }
    c.optional_string(*filter, "filter", "state_table");
    const json* list = c.member(*filter, "filter", "recipes");
    if (list == nullptr) {
        return;
    }
    if (!list->is_array()) {
        c.fail("filter.recipes", "expected a list");
        return;
    }
    std::set<std::string> names;
    std::set<std::string> outputs;
    for (std::size_t r = 0; r < list->size(); ++r) {
        const json& recipe = (*list)[r];
        const std::string rpath = "filter.recipes[" + std::to_string(r) + "]";
        if (!c.object(&recipe, rpath, {"name", "input", "output", "steps"})) {
            continue;
        }
        auto name = c.string(recipe, rpath, "name");
        if (name && (names.count(*name) != 0 || name->front() == '@')) {
            c.fail(rpath + ".name", "duplicate or reserved recipe name '" + *name + "'");
        }
        if (auto input = c.string(recipe, rpath, "input")) {
            check_reference(c, config, rpath + ".input", *input);
        }
        if (auto output = c.string(recipe, rpath, "output")) {
            if (output->find('/') != std::string::npos || *output == "manifests") {
                c.fail(rpath + ".output", "must be a plain file name inside the work directory");
            } else if (!outputs.insert(*output).second) {
                c.fail(rpath + ".output", "two recipes write '" + *output + "'");
            }
        }
        if (name) {
            names.insert(*name);
        }
        const json* steps = c.member(recipe, rpath, "steps");
        if (steps == nullptr) {
            continue;
        }
        if (!steps->is_array()) {
            c.fail(rpath + ".steps", "expected a list");
            continue;
        }
        for (std::size_t s = 0; s < steps->size(); ++s) {
            const json& step = (*steps)[s];
            const std::string spath = rpath + ".steps[" + std::to_string(s) + "]";
            if (!step.is_object()) {
                c.fail(spath, "expected an object");
                continue;
            }
            auto op = c.string(step, spath, "op");
            if (!op) {
                continue;
            }
            if (*op == "language") {
                c.object(&step, spath, {"op", "tag"});
                c.string(step, spath, "tag");
            } else if (*op == "keywords") {
                c.object(&step, spath, {"op", "keywords", "match_mode", "case_sensitive"});
                check_keyword_step(c, step, spath);
            } else if (*op == "date_range") {
                c.object(&step, spath, {"op", "start", "end"});
                c.date_range(step, spath, "start", "end");
            } else if (*op == "us_location") {
                c.object(&step, spath, {"op"});
            } else if (*op == "top_users") {
                c.object(&step, spath, {"op", "k", "timelines"});
                c.integer(step, spath, "k", 1);
                if (auto t = c.optional_string(step, spath, "timelines")) {
                    check_reference(c, config, spath + ".timelines", *t);
                }
            } else if (*op == "sample_users") {
                c.object(&step, spath, {"op", "n", "timelines", "seed"});
                c.integer(step, spath, "n", 0);
                c.seed_or_null(step, spath, "seed");
                if (auto t = c.optional_string(step, spath, "timelines")) {
                    check_reference(c, config, spath + ".timelines", *t);
                }
            } else if (*op == "timeline_cap") {
                c.object(&step, spath, {"op", "cap"});
                c.integer(step, spath, "cap", 1);
            } else {
                c.fail(spath + ".op", "unknown filter op '" + *op + "'");
            }
        }
    }
}

void check_camps(Checker& c, const json& cluster) {
    const json* camps = c.member(cluster, "cluster", "camps");
    if (camps == nullptr) {
        return;
    }
    if (!camps->is_array() || camps->size() != 2) {
        c.fail("cluster.camps", "expected exactly two camps");
        return;
    }
    std::array<std::optional<std::string>, 2> names;
    std::array<std::vector<std::string>, 2> seeds;
    for (std::size_t i = 0; i < 2; ++i) {
        const json& camp = (*camps)[i];
        const std::string path = "cluster.camps[" + std::to_string(i) + "]";
        if (!c.object(&camp, path, {"name", "seeds"})) {
            continue;
        }
        names[i] = c.string(camp, path, "name");
        if (names[i] && (has_whitespace(*names[i]) || *names[i] == cluster::kUnclusteredLabel)) {
            c.fail(path + ".name", "camp names must not contain whitespace or be '" +
                                       std::string(cluster::kUnclusteredLabel) + "'");
        }
        if (auto list = c.string_list(camp, path, "seeds", false)) {
            seeds[i] = *list;
        }
    }
    if (names[0] && names[1] && *names[0] == *names[1]) {
        c.fail("cluster.camps", "camp names must differ");
    }
    for (const auto& s : seeds[0]) {
        for (const auto& t : seeds[1]) {
            if (s == t) {
                c.fail("cluster.camps", "seed account '" + s + "' is listed for both camps");
            }
        }
    }
}

void check_kinds(Checker& c, const json& parent, const std::string& path) {
    auto kinds = c.string_list(parent, path, "kinds", false);
    if (!kinds) {
        return;
    }
    std::set<std::string> seen;
    for (const auto& k : *kinds) {
        if (k != "hashtag" && k != "account" && k != "url") {
            c.fail(path + ".kinds", "unknown term kind '" + k + "'");
        } else if (!seen.insert(k).second) {
            c.fail(path + ".kinds", "duplicate term kind '" + k + "'");
        }
    }
}

void check_synth(Checker& c, const json& config) {
    const json* synth = c.member(config, "", "synth", false);
    if (synth == nullptr) {
        return;
    }
    const std::string p = "synth";
    if (!c.object(synth, p,
                  {"output", "truth", "camp_names", "users_per_camp", "accounts_per_camp", "shared_account_count",
                   "shared_probability", "crossover", "retweets_mean", "retweets_dispersion", "original_tweets_mean",
                   "hashtags_per_camp", "hashtags_per_tweet", "urls_per_camp", "url_probability", "start", "end",
                   "seed"})) {
        return;
    }
    c.string(*synth, p, "output");
    c.string(*synth, p, "truth");
    if (auto names = c.string_list(*synth, p, "camp_names", false)) {
        if (names->size() != 2) {
            c.fail(p + ".camp_names", "expected two names");
        } else if ((*names)[0] == (*names)[1] || has_whitespace((*names)[0]) || has_whitespace((*names)[1])) {
            c.fail(p + ".camp_names", "names must be distinct and free of whitespace");
        }
    }
    c.count_pair(*synth, p, "users_per_camp", 1);
    c.count_pair(*synth, p, "accounts_per_camp", 1);
    c.integer(*synth, p, "shared_account_count", 0);
    c.number(*synth, p, "shared_probability", 0.0, 1.0);
    c.number(*synth, p, "crossover", 0.0, 1.0);
    c.number(*synth, p, "retweets_mean", 0.0, 1e9);
    c.number(*synth, p, "retweets_dispersion", 0.0, 1e9, true);
    c.number(*synth, p, "original_tweets_mean", 0.0, 1e9);
    c.count_pair(*synth, p, "hashtags_per_camp", 0);
    c.number(*synth, p, "hashtags_per_tweet", 0.0, 1e3);
    c.count_pair(*synth, p, "urls_per_camp", 0);
    c.number(*synth, p, "url_probability", 0.0, 1.0);
    c.date_range(*synth, p, "start", "end");
    c.seed_or_null(*synth, p, "seed");
    if (c.errors.empty()) {
        try {
            synth::validate(synth_params(config));
        } catch (const Error& e) {
            c.fail(p, e.what());
        }
    }
}

} // namespace

std::vector<std::string> validate_config(const json& config) {
    Checker c;
    if (!config.is_object()) {
        c.fail("(root)", "expected an object");
        return c.errors;
    }
    c.object(&config, "",
             {"workdir", "seed", "jobs", "sources", "filter", "stance", "matrix", "knn", "embed", "cluster",
              "valence", "report", "synth"});
    c.string(config, "", "workdir");
    if (const json* seed = c.member(config, "", "seed")) {
        if (!is_seed(*seed)) {
            c.fail("seed", "expected a non-negative integer");
        }
    }
    c.integer(config, "", "jobs", 1, 1024);

    if (const json* sources = c.member(config, "", "sources")) {
        if (!sources->is_object()) {
            c.fail("sources", "expected an object of name to path");
        } else {
            for (const auto& [key, value] : sources->items()) {
                if (!value.is_null() && (!value.is_string() || value.get<std::string>().empty())) {
                    c.fail("sources." + key, "expected a path or null");
                }
            }
        }
    }

    check_filter(c, config);

    if (const json* stance = c.member(config, "", "stance"); c.object(stance, "stance", {"corpus"})) {
        if (auto corpus = c.string(*stance, "stance", "corpus"); corpus && corpus->front() == '@') {
            check_reference(c, config, "stance.corpus", *corpus);
        }
    }

    if (const json* m = c.member(config, "", "matrix");
        c.object(m, "matrix", {"min_user_retweets", "min_account_mentions", "binary"})) {
        c.integer(*m, "matrix", "min_user_retweets", 1);
        c.integer(*m, "matrix", "min_account_mentions", 1);
        c.boolean(*m, "matrix", "binary");
    }

    if (const json* k = c.member(config, "", "knn"); c.object(k, "knn", {"k"})) {
        c.integer(*k, "knn", "k", 1);
    }

    if (const json* e = c.member(config, "", "embed");
        c.object(e, "embed",
                 {"min_dist", "spread", "n_epochs", "learning_rate", "negative_sample_rate", "seed"})) {
        auto spread = c.number(*e, "embed", "spread", 0.0, 1e6, true);
        auto min_dist = c.number(*e, "embed", "min_dist", 0.0, 1e6, true);
        if (spread && min_dist && *min_dist > *spread) {
            c.fail("embed.min_dist", "must not exceed spread");
        }
        c.integer(*e, "embed", "n_epochs", 1, 1000000);
        c.number(*e, "embed", "learning_rate", 0.0, 1e6, true);
        c.integer(*e, "embed", "negative_sample_rate", 0, 1000);
        c.seed_or_null(*e, "embed", "seed");
    }

    if (const json* cl = c.member(config, "", "cluster");
        c.object(cl, "cluster",
                 {"bandwidth", "auto_quantile", "max_iterations", "convergence_tol", "mode_merge_radius",
                  "min_cluster_fraction", "seed", "camps"})) {
        if (const json* bw = c.member(*cl, "cluster", "bandwidth")) {
            if (!(*bw == "auto") && !(bw->is_number() && bw->get<double>() > 0.0)) {
                c.fail("cluster.bandwidth", "expected \"auto\" or a positive number");
            }
        }
        c.number(*cl, "cluster", "auto_quantile", 0.0, 1.0, true, false);
        c.integer(*cl, "cluster", "max_iterations", 1, 1000000);
        c.number(*cl, "cluster", "convergence_tol", 0.0, 1e6, true);
        if (const json* r = c.member(*cl, "cluster", "mode_merge_radius", false); r != nullptr && !r->is_null()) {
            c.number(*cl, "cluster", "mode_merge_radius", 0.0, 1e12, true);
        }
        c.number(*cl, "cluster", "min_cluster_fraction", 0.0, 1.0, false, true);
        c.seed_or_null(*cl, "cluster", "seed");
        check_camps(c, *cl);
    }

    if (const json* v = c.member(config, "", "valence");
        c.object(v, "valence", {"threshold", "kinds", "per_tweet_dedup", "url_expansions"})) {
        c.number(*v, "valence", "threshold", 0.0, 1.0, true, false);
        check_kinds(c, *v, "valence");
        c.boolean(*v, "valence", "per_tweet_dedup");
        c.optional_string(*v, "valence", "url_expansions");
    }

    if (const json* r = c.member(config, "", "report");
        c.object(r, "report", {"start", "end", "top_n", "kinds", "lexicon", "exclude", "reference"})) {
        c.date_range(*r, "report", "start", "end");
        c.integer(*r, "report", "top_n", 1);
        check_kinds(c, *r, "report");
        c.optional_string(*r, "report", "lexicon");
        c.string_list(*r, "report", "exclude", true);
        if (const json* ref = c.member(*r, "report", "reference", false); ref != nullptr && !ref->is_null()) {
            if (c.object(ref, "report.reference", {"corpus", "name", "top_n"})) {
                c.string(*ref, "report.reference", "corpus");
                if (auto name = c.string(*ref, "report.reference", "name"); name && has_whitespace(*name)) {
                    c.fail("report.reference.name", "must not contain whitespace");
                }
                c.integer(*ref, "report.reference", "top_n", 1);
            }
        }
    }

    check_synth(c, config);
    return c.errors;
}

std::vector<std::string> validate_config_file(const std::string& path) {
    json config;
    try {
        config = load_config(path);
    } catch (const Error& e) {
        return {e.what()};
    }
    return validate_config(config);
}

void require_valid(const json& config) {
    const auto errors = validate_config(config);
    if (errors.empty()) {
        return;
    }
    std::string message = "invalid configuration (" + std::to_string(errors.size()) + " problem" +
                          (errors.size() == 1 ? "" : "s") + "):";
    for (const auto& e : errors) {
        message += "\n  " + e;
    }
    throw ConfigError(message);
}

std::vector<Recipe> recipes(const json& config) {
    std::vector<Recipe> out;
    for (const auto& r : config.at("filter").at("recipes")) {
        Recipe recipe;
        recipe.name = r.at("name").get<std::string>();
        recipe.input = r.at("input").get<std::string>();
        recipe.output = r.at("output").get<std::string>();
        for (const auto& s : r.at("steps")) {
            recipe.steps.push_back({s.at("op").get<std::string>(), s});
        }
        out.push_back(std::move(recipe));
    }
    return out;
}

corpus::FilterSpec keyword_spec(const json& step) {
    corpus::FilterSpec spec;
    const json case_rule = step.value("case_sensitive", json(false));
    for (const auto& k : step.at("keywords")) {
        if (k.is_object()) {
            spec.keywords.push_back({k.at("text").get<std::string>(), k.at("case_sensitive").get<bool>()});
        } else if (case_rule == "auto") {
            spec.keywords.push_back(corpus::keyword_with_default_case(k.get<std::string>()));
        } else {
            spec.keywords.push_back({k.get<std::string>(), case_rule.get<bool>()});
        }
    }
    spec.match_mode = step.value("match_mode", std::string("substring")) == "token" ? corpus::MatchMode::token
                                                                                    : corpus::MatchMode::substring;
    return spec;
}

std::uint64_t global_seed(const json& config) { return config.at("seed").get<std::uint64_t>(); }

int jobs(const json& config) { return config.at("jobs").get<int>(); }

namespace {

std::uint64_t seed_or_global(const json& section, const json& config) {
    const json& s = section.contains("seed") ? section.at("seed") : json(nullptr);
    return s.is_null() ? global_seed(config) : s.get<std::uint64_t>();
}

} // namespace

graph::MatrixOptions matrix_options(const json& config) {
    const json& m = config.at("matrix");
    graph::MatrixOptions options;
    options.min_user_retweets = m.at("min_user_retweets").get<std::size_t>();
    options.min_account_mentions = m.at("min_account_mentions").get<std::size_t>();
    options.binary = m.at("binary").get<bool>();
    return options;
}

std::size_t knn_k(const json& config) { return config.at("knn").at("k").get<std::size_t>(); }

embed::EmbedParams embed_params(const json& config) {
    const json& e = config.at("embed");
    embed::EmbedParams params;
    params.n_neighbors = knn_k(config);
    params.min_dist = e.at("min_dist").get<double>();
    params.spread = e.at("spread").get<double>();
    params.n_epochs = e.at("n_epochs").get<int>();
    params.learning_rate = e.at("learning_rate").get<double>();
    params.negative_sample_rate = e.at("negative_sample_rate").get<int>();
    params.seed = seed_or_global(e, config);
    return params;
}

cluster::MeanShiftParams mean_shift_params(const json& config) {
    const json& c = config.at("cluster");
    cluster::MeanShiftParams params;
    if (c.at("bandwidth").is_number()) {
        params.bandwidth = c.at("bandwidth").get<double>();
    }
    params.auto_quantile = c.at("auto_quantile").get<double>();
    params.max_iterations = c.at("max_iterations").get<int>();
    params.convergence_tol = c.at("convergence_tol").get<double>();
    if (c.contains("mode_merge_radius") && !c.at("mode_merge_radius").is_null()) {
        params.mode_merge_radius = c.at("mode_merge_radius").get<double>();
    }
    params.min_cluster_fraction = c.at("min_cluster_fraction").get<double>();
    params.seed = seed_or_global(c, config);
    params.jobs = jobs(config);
    return params;
}

std::array<cluster::CampSeeds, 2> camp_seeds(const json& config) {
    std::array<cluster::CampSeeds, 2> out;
    const json& camps = config.at("cluster").at("camps");
    for (std::size_t i = 0; i < 2; ++i) {
        out[i].name = camps.at(i).at("name").get<std::string>();
        out[i].accounts = camps.at(i).at("seeds").get<std::vector<std::string>>();
    }
    return out;
}

std::array<std::string, 2> camp_names(const json& config) {
    const auto seeds = camp_seeds(config);
    return {seeds[0].name, seeds[1].name};
}

synth::SynthParams synth_params(const json& config) {
    const json& s = config.at("synth");
    synth::SynthParams p;
    const auto names = s.at("camp_names").get<std::vector<std::string>>();
    p.camp_names = {names.at(0), names.at(1)};
    const auto pair = [&](const char* key) {
        const auto v = s.at(key).get<std::vector<std::size_t>>();
        return std::array<std::size_t, 2>{v.at(0), v.at(1)};
    };
    p.users_per_camp = pair("users_per_camp");
    p.accounts_per_camp = pair("accounts_per_camp");
    p.shared_account_count = s.at("shared_account_count").get<std::size_t>();
    p.shared_probability = s.at("shared_probability").get<double>();
    p.crossover = s.at("crossover").get<double>();
    p.retweets_mean = s.at("retweets_mean").get<double>();
    p.retweets_dispersion = s.at("retweets_dispersion").get<double>();
    p.original_tweets_mean = s.at("original_tweets_mean").get<double>();
    p.hashtags_per_camp = pair("hashtags_per_camp");
    p.hashtags_per_tweet = s.at("hashtags_per_tweet").get<double>();
    p.urls_per_camp = pair("urls_per_camp");
    p.url_probability = s.at("url_probability").get<double>();
    p.start = parse_day(s.at("start").get<std::string>());
    p.end = parse_day(s.at("end").get<std::string>());
    p.seed = seed_or_global(s, config);
    return p;
}

} // namespace stancekit::cli
