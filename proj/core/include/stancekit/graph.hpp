#ifndef STANCEKIT_GRAPH_HPP
#define STANCEKIT_GRAPH_HPP

#include "stancekit/corpus.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace stancekit::graph {

/// One nonzero of a sparse row.
struct Entry {
    std::uint32_t column;
    double value;
};

/**
 * Sparse user x retweeted-account count matrix in CSR layout.
 *
 * Rows follow `users` (sorted), columns follow `accounts` (sorted). Every row
 * has at least one nonzero and columns within a row are strictly increasing.
 */
class UserRetweetMatrix {
public:
    UserRetweetMatrix() = default;

    /// Validates the CSR invariants; throws DataError on violation.
    UserRetweetMatrix(std::vector<std::string> users, std::vector<std::string> accounts,
                      std::vector<std::size_t> row_offsets, std::vector<Entry> entries);

    std::size_t num_users() const { return users_.size(); }
    std::size_t num_accounts() const { return accounts_.size(); }
    std::size_t nnz() const { return entries_.size(); }

    const std::vector<std::string>& users() const { return users_; }
    const std::vector<std::string>& accounts() const { return accounts_; }

    std::span<const Entry> row(std::size_t user) const {
        return {entries_.data() + offsets_[user], offsets_[user + 1] - offsets_[user]};
    }

    /// Index of an account in `accounts()`, or `num_accounts()` if absent.
    std::size_t account_index(const std::string& account) const;

private:
    std::vector<std::string> users_;
    std::vector<std::string> accounts_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Entry> entries_;
};

struct MatrixOptions {
    std::size_t min_user_retweets = 5;
    std::size_t min_account_mentions = 2;
    /// Store 1 for every retweeted account instead of the retweet count.
    bool binary = false;
};

/**
 * Counts retweets per (user, account).
 *
 * Accounts retweeted by fewer than `min_account_mentions` distinct users are
 * dropped first; users whose remaining retweet total is below
 * `min_user_retweets` are dropped next. Accounts left without any retweeting
 * user are then removed from the column set. Throws DataError when no user
 * survives.
 */
UserRetweetMatrix build_retweet_matrix(const std::vector<corpus::Tweet>& tweets, const MatrixOptions& options);

/// dot(u, v) / (|u| |v|), clamped to [0, 1]. Throws DataError on a zero row.
double cosine_similarity(std::span<const Entry> u, std::span<const Entry> v);

struct Neighbor {
    std::uint32_t index;
    double distance;
};

using NeighborList = std::vector<std::vector<Neighbor>>;

/// Cosine-distance k-nearest-neighbor lists, ascending by distance then index.
struct KnnGraph {
    std::size_t k = 0;
    NeighborList neighbors;
};

/**
 * Exact k nearest neighbors under 1 - cosine similarity.
 *
 * Uses an inverted index over account columns so that only users sharing an
 * account are visited; everyone else sits at distance 1. Rows are independent
 * and are spread over `jobs` threads with identical results.
 */
KnnGraph knn_graph(const UserRetweetMatrix& matrix, std::size_t k, int jobs = 1);

/// Triplet file: "n_users n_accounts nnz" header, then "user_idx account_idx count".
void write_matrix(std::ostream& out, const UserRetweetMatrix& matrix);
/// Writes `<path>`, `<path>.users` and `<path>.accounts`.
void write_matrix_files(const std::string& path, const UserRetweetMatrix& matrix);
UserRetweetMatrix read_matrix_files(const std::string& path);

/// "n_users k" header, then "user_idx neighbor_idx distance" lines.
void write_knn(std::ostream& out, const KnnGraph& graph);
void write_knn_file(const std::string& path, const KnnGraph& graph);
KnnGraph read_knn(std::istream& in);
KnnGraph read_knn_file(const std::string& path);

} // namespace stancekit::graph

#endif
