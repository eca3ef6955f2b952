#ifndef STANCEKIT_CLI_PIPELINE_HPP
#define STANCEKIT_CLI_PIPELINE_HPP

#include <nlohmann/json.hpp>

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stancekit::cli {

enum class Stage { filter, matrix, knn, embed, cluster, valence, report };

inline constexpr std::array<Stage, 7> kStageOrder{Stage::filter, Stage::matrix,  Stage::knn,   Stage::embed,
                                                  Stage::cluster, Stage::valence, Stage::report};

const char* stage_name(Stage stage);
std::optional<Stage> parse_stage(std::string_view name);

struct RunOptions {
    /// Re-run even when the manifest says inputs and configuration are unchanged.
    bool force = false;
};

struct StageResult {
    Stage stage;
    bool skipped = false;
    std::vector<std::string> outputs;
};

/**
 * Runs one stage against files in the configured work directory and writes
 * `manifests/<stage>.json` recording the stage's configuration hash, input and
 * output hashes, tool version and wall time.
 *
 * A stage whose manifest matches the current configuration, inputs and
 * outputs is skipped unless `options.force` is set. A missing input raises a
 * DataError naming the stage that produces it. Errors are rethrown with the
 * stage name prefixed.
 */
StageResult run_stage(Stage stage, const nlohmann::json& config, const RunOptions& options = {});

/// Runs every stage in order: filter, matrix, knn, embed, cluster, valence, report.
std::vector<StageResult> run_pipeline(const nlohmann::json& config, const RunOptions& options = {});

/// Lowercase hex SHA-256 of a byte string / a file's contents.
std::string sha256_hex(std::string_view bytes);
std::string file_sha256(const std::string& path);

/// Writes the synthetic corpus and its ground-truth file as configured under "synth".
std::vector<std::string> run_synth(const nlohmann::json& config);

} // namespace stancekit::cli

#endif
