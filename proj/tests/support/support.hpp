#ifndef STANCEKIT_TESTS_SUPPORT_HPP
#define STANCEKIT_TESTS_SUPPORT_HPP

#include "stancekit/cluster.hpp"
#include "stancekit/corpus.hpp"
#include "stancekit/embed.hpp"
#include "stancekit/graph.hpp"
#include "stancekit/valence.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stancekit::testing {

/// Fresh directory removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Seconds since epoch for "YYYY-MM-DD" plus an hour offset.
std::int64_t at(const std::string& day, int hour = 12);

corpus::Tweet make_tweet(std::string id, std::string user, std::int64_t timestamp, std::string text,
                         std::optional<std::string> retweeted = std::nullopt);

/// Matrix from dense rows (zeros dropped); users are "u0000".., accounts "a0000"...
graph::UserRetweetMatrix matrix_from_dense(const std::vector<std::vector<double>>& rows);

// ---- independent oracles ---------------------------------------------------

/// Cosine distance over dense rows, accumulated in long double.
double dense_cosine_distance(const std::vector<double>& u, const std::vector<double>& v);
std::vector<std::vector<double>> dense_rows(const graph::UserRetweetMatrix& matrix);

/// All-pairs distances sorted by (distance, index), excluding self.
std::vector<std::vector<graph::Neighbor>> brute_force_neighbors(const graph::UserRetweetMatrix& matrix);

/// Euclidean k nearest neighbors of points in any dimension, ties by index.
graph::NeighborList euclidean_knn(const std::vector<std::vector<double>>& points, std::size_t k);

/// Gaussian blobs in `dim` dimensions; labels[i] is the blob of point i.
struct Blobs {
    std::vector<std::vector<double>> points;
    std::vector<int> labels;
};
Blobs gaussian_blobs(const std::vector<std::vector<double>>& centers, std::size_t per_blob, double sigma,
                     std::uint64_t seed);

std::vector<embed::Point> to_points(const Blobs& blobs);

/// Fraction of points whose cluster majority label equals their own, over points with label >= 0.
double oracle_purity(const std::vector<int>& labels, const std::vector<int>& truth);

/// Share of each point's `k` nearest embedded neighbors carrying the same truth label.
double same_label_neighbor_fraction(const std::vector<embed::Point>& coords, const std::vector<int>& truth,
                                    std::size_t k);

struct OracleEntry {
    std::string term;
    std::int64_t count_g = 0;
    std::int64_t count_other = 0;
    long double valence = 0;
    long double rank_score = 0;
};

/**
 * Distinctive terms recomputed from raw tweets: hashtags recounted from
 * whitespace-separated "#tag" tokens of the text (case-folded), accounts from
 * the retweet field, valence from the literal 2 r_g / (r_g + r_o) - 1, the threshold
 * applied as an exact rational comparison `valence >= num / den`.
 */
std::vector<OracleEntry> oracle_distinctive(const std::vector<corpus::Tweet>& tweets,
                                            const std::map<std::string, int>& camp_of_user, valence::TermKind kind,
                                            int camp, std::int64_t threshold_num, std::int64_t threshold_den);

/// Random corpus with 2..6 users per camp, mixed-case hashtags and retweets, parsed from JSON lines.
struct RandomCorpus {
    std::vector<corpus::Tweet> tweets;
    cluster::NamedAssignment assignment;
    std::map<std::string, int> camp_of_user;
};
RandomCorpus random_valence_corpus(std::uint64_t seed, std::size_t max_tweets = 200, std::size_t max_terms = 30);

/// Bin of i / 1000 computed on the integer grid.
int oracle_bin_millis(int i);

} // namespace stancekit::testing

#endif
