#ifndef STANCEKIT_CLI_CONFIG_HPP
#define STANCEKIT_CLI_CONFIG_HPP

#include "stancekit/cluster.hpp"
#include "stancekit/corpus.hpp"
#include "stancekit/embed.hpp"
#include "stancekit/graph.hpp"
#include "stancekit/synth.hpp"
#include "stancekit/valence.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

/**
 * @file config.hpp
 *
 * @brief Pipeline configuration: a JSON document layered over the built-in defaults.
 *
 * The defaults are compiled in from `configs/default.json`. A user file is
 * deep-merged over them (objects merge key by key, everything else replaces),
 * and command-line overrides are applied last.
 */

namespace stancekit::cli {

using json = nlohmann::json;

/// The built-in default configuration.
const json& default_config();

/// Objects merge recursively; any other value in `overlay` replaces the base value.
json merge(json base, const json& overlay);

/// Reads a JSON file and merges it over `default_config()`. Throws ConfigError on syntax errors.
json load_config(const std::string& path);

/// Applies `dotted.key=value`; value is parsed as JSON when possible, else taken as a string.
void apply_override(json& config, const std::string& assignment);

/// Sets the value at a dotted path, creating intermediate objects.
void set_path(json& config, const std::string& dotted, json value);

/// Every structural and range problem in `config`, in document order. Empty means valid.
std::vector<std::string> validate_config(const json& config);

/// Reads and validates a file; a JSON syntax error is reported as a single entry.
std::vector<std::string> validate_config_file(const std::string& path);

/// Throws ConfigError listing every problem when the configuration is invalid.
void require_valid(const json& config);

struct FilterStep {
    std::string op;
    json params;
};

struct Recipe {
    std::string name;
    std::string input;
    std::string output;
    std::vector<FilterStep> steps;
};

std::vector<Recipe> recipes(const json& config);

/// Keyword list of a "keywords" step with its case rule resolved per keyword.
corpus::FilterSpec keyword_spec(const json& step);

graph::MatrixOptions matrix_options(const json& config);
std::size_t knn_k(const json& config);
embed::EmbedParams embed_params(const json& config);
cluster::MeanShiftParams mean_shift_params(const json& config);
std::array<cluster::CampSeeds, 2> camp_seeds(const json& config);
std::array<std::string, 2> camp_names(const json& config);
synth::SynthParams synth_params(const json& config);

std::uint64_t global_seed(const json& config);
int jobs(const json& config);

} // namespace stancekit::cli

#endif
