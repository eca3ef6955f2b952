#include "support.hpp"

#include "stancekit/error.hpp"
#include "stancekit/graph.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

using namespace stancekit;
using namespace stancekit::graph;
using stancekit::testing::make_tweet;

namespace {

std::vector<corpus::Tweet> retweets(const std::vector<std::tuple<std::string, std::string, int>>& spec) {
    std::vector<corpus::Tweet> out;
    int id = 0;
    for (const auto& [user, account, n] : spec) {
        for (int i = 0; i < n; ++i) {
            out.push_back(make_tweet(std::to_string(id++), user, 0, "RT", account));
        }
    }
    return out;
}

std::vector<std::vector<double>> random_sparse_rows(std::mt19937_64& rng, std::size_t n, std::size_t width,
                                                    double density, int max_count) {
    std::bernoulli_distribution present(density);
    std::uniform_int_distribution<int> count(1, max_count);
    std::uniform_int_distribution<std::size_t> col(0, width - 1);
    std::vector<std::vector<double>> rows(n, std::vector<double>(width, 0.0));
    for (auto& row : rows) {
        for (auto& x : row) {
            if (present(rng)) {
                x = count(rng);
            }
        }
        row[col(rng)] = count(rng); // no empty rows
    }
    return rows;
}

/// Compares against the oracle while allowing any order among equal distances.
void expect_matches_brute_force(const UserRetweetMatrix& m, const KnnGraph& g) {
    const auto oracle = stancekit::testing::brute_force_neighbors(m);
    ASSERT_EQ(g.neighbors.size(), m.num_users());
    for (std::size_t i = 0; i < m.num_users(); ++i) {
        ASSERT_EQ(g.neighbors[i].size(), g.k);
        const double kth = oracle[i][g.k - 1].distance;
        std::set<std::uint32_t> seen;
        for (std::size_t r = 0; r < g.k; ++r) {
            const auto& n = g.neighbors[i][r];
            EXPECT_NEAR(n.distance, oracle[i][r].distance, 1e-12) << "user " << i << " rank " << r;
            EXPECT_NE(n.index, i);
            EXPECT_TRUE(seen.insert(n.index).second);
            double truth = 0;
            for (const auto& o : oracle[i]) {
                if (o.index == n.index) {
                    truth = o.distance;
                }
            }
            EXPECT_NEAR(n.distance, truth, 1e-12);
            EXPECT_LE(truth, kth + 1e-12);
        }
    }
}

} // namespace

TEST(Matrix, CountsAndPruningExamples) {
    MatrixOptions keep_all{1, 1, false};
    const auto m = build_retweet_matrix(retweets({{"u", "a", 3}, {"u", "b", 1}}), keep_all);
    ASSERT_EQ(m.num_users(), 1u);
    ASSERT_EQ(m.row(0).size(), 2u);
    EXPECT_EQ(m.row(0)[0].value, 3.0);
    EXPECT_EQ(m.row(0)[1].value, 1.0);

    auto tweets = retweets({{"u", "a", 2}, {"v", "a", 2}});
    tweets.push_back(make_tweet("orig", "w", 0, "original only"));
    const auto m2 = build_retweet_matrix(tweets, keep_all);
    EXPECT_EQ(m2.users(), (std::vector<std::string>{"u", "v"}));

    MatrixOptions two_mentions{1, 2, false};
    const auto m3 = build_retweet_matrix(retweets({{"u", "a", 2}, {"v", "a", 1}, {"u", "solo", 5}}), two_mentions);
    EXPECT_EQ(m3.accounts(), std::vector<std::string>{"a"});
    EXPECT_THROW(build_retweet_matrix(retweets({{"u", "solo", 5}}), two_mentions), DataError);

    MatrixOptions binary{1, 1, true};
    EXPECT_EQ(build_retweet_matrix(retweets({{"u", "a", 3}}), binary).row(0)[0].value, 1.0);
}

TEST(Matrix, UserThresholdCountsOnlyKeptAccounts) {
    // u has 5 retweets but 3 go to an account nobody else retweets.
    const auto m = build_retweet_matrix(retweets({{"u", "a", 2}, {"u", "solo", 3}, {"v", "a", 5}}), {5, 2, false});
    EXPECT_EQ(m.users(), std::vector<std::string>{"v"});
}

TEST(Matrix, ConstructorRejectsMalformedCsr) {
    EXPECT_THROW(UserRetweetMatrix({"b", "a"}, {"x"}, {0, 1, 2}, {{0, 1.0}, {0, 1.0}}), DataError);
    EXPECT_THROW(UserRetweetMatrix({"a"}, {"x"}, {0, 0}, {}), DataError);
    EXPECT_THROW(UserRetweetMatrix({"a"}, {"x", "y"}, {0, 2}, {{1, 1.0}, {0, 1.0}}), DataError);
    EXPECT_THROW(UserRetweetMatrix({"a"}, {"x"}, {0, 1}, {{0, -1.0}}), DataError);
}

TEST(Cosine, Examples) {
    const std::vector<Entry> u{{0, 1}, {1, 1}};
    const std::vector<Entry> v{{0, 1}, {2, 1}};
    const std::vector<Entry> w{{3, 4}};
    EXPECT_DOUBLE_EQ(cosine_similarity(u, u), 1.0);
    EXPECT_EQ(cosine_similarity(u, w), 0.0);
    EXPECT_NEAR(cosine_similarity(u, v), 0.5, 1e-15);
    EXPECT_THROW(cosine_similarity({}, u), DataError);
}

TEST(CosineProperty, SymmetricAndScaleInvariant) {
    std::mt19937_64 rng(17);
    const auto rows = random_sparse_rows(rng, 60, 40, 0.2, 9);
    const auto m = stancekit::testing::matrix_from_dense(rows);
    for (std::size_t i = 0; i < m.num_users(); ++i) {
        std::vector<Entry> scaled(m.row(i).begin(), m.row(i).end());
        for (auto& e : scaled) {
            e.value *= 7;
        }
        for (std::size_t j = 0; j < m.num_users(); ++j) {
            EXPECT_EQ(cosine_similarity(m.row(i), m.row(j)), cosine_similarity(m.row(j), m.row(i)));
            EXPECT_NEAR(cosine_similarity(scaled, m.row(j)), cosine_similarity(m.row(i), m.row(j)), 1e-12);
        }
    }
}

TEST(Knn, IdenticalRowsAreAtDistanceZero) {
    const auto m = stancekit::testing::matrix_from_dense({{1, 2}, {1, 2}, {1, 2}});
    const auto g = knn_graph(m, 1);
    for (const auto& list : g.neighbors) {
        ASSERT_EQ(list.size(), 1u);
        EXPECT_NEAR(list[0].distance, 0.0, 1e-15);
    }
}

TEST(Knn, OrthogonalBlocksStayIntraBlock) {
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 12; ++i) {
        std::vector<double> r(10, 0.0);
        const int base = i < 6 ? 0 : 5;
        // Three of five block columns: any two rows of a block overlap.
        r[static_cast<std::size_t>(base + i % 5)] = 1 + i % 3;
        r[static_cast<std::size_t>(base + (i + 1) % 5)] = 2;
        r[static_cast<std::size_t>(base + (i + 2) % 5)] = 1;
        rows.push_back(r);
    }
    const auto m = stancekit::testing::matrix_from_dense(rows);
    const auto g = knn_graph(m, 4);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (const auto& n : g.neighbors[i]) {
            EXPECT_EQ(i < 6, n.index < 6) << "user " << i << " -> " << n.index;
        }
    }
    expect_matches_brute_force(m, g);
}

TEST(Knn, CompleteListsAtNMinusOne) {
    std::mt19937_64 rng(2);
    const auto m = stancekit::testing::matrix_from_dense(random_sparse_rows(rng, 9, 6, 0.3, 3));
    const auto g = knn_graph(m, 8);
    for (std::size_t i = 0; i < 9; ++i) {
        std::set<std::uint32_t> all;
        for (const auto& n : g.neighbors[i]) {
            all.insert(n.index);
        }
        EXPECT_EQ(all.size(), 8u);
        EXPECT_EQ(all.count(static_cast<std::uint32_t>(i)), 0u);
    }
    EXPECT_THROW(knn_graph(m, 9), ConfigError);
    EXPECT_THROW(knn_graph(m, 0), ConfigError);
}

TEST(KnnProperty, EqualsBruteForceOnRandomInstances) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t n = 20 + static_cast<std::size_t>(trial) * 40;
        const auto m = stancekit::testing::matrix_from_dense(random_sparse_rows(rng, n, 30, 0.05, 4));
        const std::size_t k = 1 + static_cast<std::size_t>(trial) % 15;
        expect_matches_brute_force(m, knn_graph(m, k, 1 + trial % 3));
    }
}

TEST(KnnProperty, ParallelMatchesSerialExactly) {
    std::mt19937_64 rng(5);
    const auto m = stancekit::testing::matrix_from_dense(random_sparse_rows(rng, 300, 50, 0.05, 5));
    const auto a = knn_graph(m, 10, 1);
    const auto b = knn_graph(m, 10, 4);
    for (std::size_t i = 0; i < a.neighbors.size(); ++i) {
        for (std::size_t r = 0; r < 10; ++r) {
            EXPECT_EQ(a.neighbors[i][r].index, b.neighbors[i][r].index);
            EXPECT_EQ(a.neighbors[i][r].distance, b.neighbors[i][r].distance);
        }
    }
}

TEST(KnnProperty, BinaryModeMatchesCountModeWhenCountsAreOne) {
    std::vector<std::tuple<std::string, std::string, int>> spec;
    std::mt19937_64 rng(8);
    std::bernoulli_distribution edge(0.3);
    for (int u = 0; u < 40; ++u) {
        for (int a = 0; a < 15; ++a) {
            if (edge(rng) || a == u % 15) {
                spec.emplace_back("user" + std::to_string(u), "acct" + std::to_string(a), 1);
            }
        }
    }
    const auto tweets = retweets(spec);
    const auto counts = build_retweet_matrix(tweets, {1, 1, false});
    const auto binary = build_retweet_matrix(tweets, {1, 1, true});
    const auto a = knn_graph(counts, 6);
    const auto b = knn_graph(binary, 6);
    for (std::size_t i = 0; i < a.neighbors.size(); ++i) {
        std::set<std::uint32_t> sa;
        std::set<std::uint32_t> sb;
        for (std::size_t r = 0; r < 6; ++r) {
            sa.insert(a.neighbors[i][r].index);
            sb.insert(b.neighbors[i][r].index);
        }
        EXPECT_EQ(sa, sb);
    }
}

TEST(GraphIo, MatrixAndKnnRoundTrip) {
    stancekit::testing::TempDir dir;
    std::mt19937_64 rng(4);
    const auto m = stancekit::testing::matrix_from_dense(random_sparse_rows(rng, 25, 12, 0.2, 1000));
    write_matrix_files(dir.file("m.txt"), m);
    const auto back = read_matrix_files(dir.file("m.txt"));
    EXPECT_EQ(back.users(), m.users());
    EXPECT_EQ(back.accounts(), m.accounts());
    ASSERT_EQ(back.nnz(), m.nnz());
    for (std::size_t i = 0; i < m.num_users(); ++i) {
        for (std::size_t j = 0; j < m.row(i).size(); ++j) {
            EXPECT_EQ(back.row(i)[j].column, m.row(i)[j].column);
            EXPECT_EQ(back.row(i)[j].value, m.row(i)[j].value);
        }
    }
    const auto g = knn_graph(m, 5);
    write_knn_file(dir.file("k.txt"), g);
    const auto g2 = read_knn_file(dir.file("k.txt"));
    ASSERT_EQ(g2.k, g.k);
    for (std::size_t i = 0; i < g.neighbors.size(); ++i) {
        for (std::size_t r = 0; r < g.k; ++r) {
            EXPECT_EQ(g2.neighbors[i][r].index, g.neighbors[i][r].index);
            EXPECT_EQ(g2.neighbors[i][r].distance, g.neighbors[i][r].distance);
        }
    }
    std::istringstream bad("2 1\n0 5 0.1\n");
    EXPECT_THROW(read_knn(bad), DataError);
}
