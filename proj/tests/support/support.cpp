#include "support.hpp"

#include "stancekit/civil_time.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include <unistd.h>

namespace stancekit::testing {

namespace fs = std::filesystem;

TempDir::TempDir() {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("stancekit_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

std::int64_t at(const std::string& day, int hour) { return day_start(parse_day(day)) + hour * 3600; }

corpus::Tweet make_tweet(std::string id, std::string user, std::int64_t timestamp, std::string text,
                         std::optional<std::string> retweeted) {
    corpus::Tweet t;
    t.id = std::move(id);
    t.user_id = std::move(user);
    t.timestamp_utc = timestamp;
    t.text = std::move(text);
    t.lang = "en";
    t.retweeted_account = std::move(retweeted);
    return t;
}

graph::UserRetweetMatrix matrix_from_dense(const std::vector<std::vector<double>>& rows) {
    std::vector<std::string> users;
    std::vector<std::string> accounts;
    const std::size_t width = rows.empty() ? 0 : rows.front().size();
    for (std::size_t j = 0; j < width; ++j) {
        char name[32];
        std::snprintf(name, sizeof name, "a%04zu", j);
        accounts.emplace_back(name);
    }
    std::vector<std::size_t> offsets{0};
    std::vector<graph::Entry> entries;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "u%04zu", i);
        users.emplace_back(name);
        for (std::size_t j = 0; j < width; ++j) {
            if (rows[i][j] != 0.0) {
                entries.push_back({static_cast<std::uint32_t>(j), rows[i][j]});
            }
        }
        offsets.push_back(entries.size());
    }
    return graph::UserRetweetMatrix(users, accounts, offsets, entries);
}

std::vector<std::vector<double>> dense_rows(const graph::UserRetweetMatrix& matrix) {
    std::vector<std::vector<double>> rows(matrix.num_users(), std::vector<double>(matrix.num_accounts(), 0.0));
    for (std::size_t i = 0; i < matrix.num_users(); ++i) {
        for (const auto& e : matrix.row(i)) {
            rows[i][e.column] = e.value;
        }
    }
    return rows;
}

double dense_cosine_distance(const std::vector<double>& u, const std::vector<double>& v) {
    long double dot = 0;
    long double nu = 0;
    long double nv = 0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        dot += static_cast<long double>(u[j]) * v[j];
        nu += static_cast<long double>(u[j]) * u[j];
        nv += static_cast<long double>(v[j]) * v[j];
    }
    long double cos = dot / std::sqrt(nu * nv);
    cos = std::clamp<long double>(cos, 0.0L, 1.0L);
    return static_cast<double>(1.0L - cos);
}

std::vector<std::vector<graph::Neighbor>> brute_force_neighbors(const graph::UserRetweetMatrix& matrix) {
    const auto rows = dense_rows(matrix);
    std::vector<std::vector<graph::Neighbor>> out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (i != j) {
                out[i].push_back({static_cast<std::uint32_t>(j), dense_cosine_distance(rows[i], rows[j])});
            }
        }
        std::sort(out[i].begin(), out[i].end(), [](const auto& a, const auto& b) {
            return a.distance != b.distance ? a.distance < b.distance : a.index < b.index;
        });
    }
    return out;
}

graph::NeighborList euclidean_knn(const std::vector<std::vector<double>>& points, std::size_t k) {
    graph::NeighborList out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<graph::Neighbor> all;
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (i == j) {
                continue;
            }
            double s = 0.0;
            for (std::size_t d = 0; d < points[i].size(); ++d) {
                const double diff = points[i][d] - points[j][d];
                s += diff * diff;
            }
            all.push_back({static_cast<std::uint32_t>(j), std::sqrt(s)});
        }
        std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
            return a.distance != b.distance ? a.distance < b.distance : a.index < b.index;
        });
        all.resize(std::min(k, all.size()));
        out[i] = std::move(all);
    }
    return out;
}

Blobs gaussian_blobs(const std::vector<std::vector<double>>& centers, std::size_t per_blob, double sigma,
                     std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    Blobs blobs;
    for (std::size_t c = 0; c < centers.size(); ++c) {
        for (std::size_t i = 0; i < per_blob; ++i) {
            std::vector<double> p = centers[c];
            for (double& x : p) {
                x += noise(rng);
            }
            blobs.points.push_back(std::move(p));
            blobs.labels.push_back(static_cast<int>(c));
        }
    }
    return blobs;
}

std::vector<embed::Point> to_points(const Blobs& blobs) {
    std::vector<embed::Point> out;
    for (const auto& p : blobs.points) {
        out.push_back({p.at(0), p.at(1)});
    }
    return out;
}

double oracle_purity(const std::vector<int>& labels, const std::vector<int>& truth) {
    std::map<int, std::map<int, std::size_t>> table;
    std::size_t total = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] >= 0) {
            ++table[labels[i]][truth[i]];
            ++total;
        }
    }
    std::size_t majority = 0;
    for (const auto& [cluster, row] : table) {
        std::size_t best = 0;
        for (const auto& [label, n] : row) {
            best = std::max(best, n);
        }
        majority += best;
    }
    return total == 0 ? 0.0 : static_cast<double>(majority) / static_cast<double>(total);
}

double same_label_neighbor_fraction(const std::vector<embed::Point>& coords, const std::vector<int>& truth,
                                    std::size_t k) {
    std::vector<std::vector<double>> pts;
    for (const auto& p : coords) {
        pts.push_back({p[0], p[1]});
    }
    const auto knn = euclidean_knn(pts, k);
    std::size_t same = 0;
    std::size_t total = 0;
    for (std::size_t i = 0; i < knn.size(); ++i) {
        for (const auto& n : knn[i]) {
            same += truth[n.index] == truth[i] ? 1 : 0;
            ++total;
        }
    }
    return static_cast<double>(same) / static_cast<double>(total);
}

std::vector<OracleEntry> oracle_distinctive(const std::vector<corpus::Tweet>& tweets,
                                            const std::map<std::string, int>& camp_of_user, valence::TermKind kind,
                                            int camp, std::int64_t threshold_num, std::int64_t threshold_den) {
    std::map<std::string, std::int64_t> n[2];
    std::int64_t total[2] = {0, 0};
    for (const auto& t : tweets) {
        const auto it = camp_of_user.find(t.user_id);
        if (it == camp_of_user.end() || it->second < 0) {
            continue;
        }
        std::vector<std::string> terms;
        if (kind == valence::TermKind::hashtag) {
            std::istringstream words(t.text);
            std::string w;
            while (words >> w) {
                if (w.size() > 1 && w[0] == '#') {
                    std::transform(w.begin(), w.end(), w.begin(), [](unsigned char c) { return std::tolower(c); });
                    terms.push_back(w.substr(1));
                }
            }
        } else if (kind == valence::TermKind::account && t.retweeted_account) {
            terms.push_back(*t.retweeted_account);
        }
        for (const auto& term : terms) {
            n[it->second][term] += 1;
            total[it->second] += 1;
        }
    }
    const int other = 1 - camp;
    std::vector<OracleEntry> out;
    if (total[camp] == 0 || total[other] == 0) {
        return out;
    }
    for (const auto& [term, cg] : n[camp]) {
        const std::int64_t co = n[other].count(term) ? n[other].at(term) : 0;
        // valence >= num/den  <=>  den (g - o) >= num (g + o), with g = cg T_o and o = co T_g.
        const std::int64_t g = cg * total[other];
        const std::int64_t o = co * total[camp];
        if (threshold_den * (g - o) < threshold_num * (g + o)) {
            continue;
        }
        const long double rg = static_cast<long double>(cg) / total[camp];
        const long double ro = static_cast<long double>(co) / total[other];
        OracleEntry e{term, cg, co, 2.0L * rg / (rg + ro) - 1.0L, 0};
        e.rank_score = e.valence * std::log(static_cast<long double>(cg));
        out.push_back(e);
    }
    std::sort(out.begin(), out.end(), [](const OracleEntry& a, const OracleEntry& b) {
        const long double scale = std::max({1.0L, std::fabs(a.rank_score), std::fabs(b.rank_score)});
        if (std::fabs(a.rank_score - b.rank_score) > 1e-12L * scale) {
            return a.rank_score > b.rank_score;
        }
        if (a.count_g != b.count_g) {
            return a.count_g > b.count_g;
        }
        return a.term < b.term;
    });
    return out;
}

RandomCorpus random_valence_corpus(std::uint64_t seed, std::size_t max_tweets, std::size_t max_terms) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    RandomCorpus out;
    const std::size_t n_terms = uniform(2, max_terms);
    const std::size_t users_per_camp = uniform(2, 6);
    out.assignment.camps = {"left", "right"};
    std::vector<std::string> users;
    for (int c = 0; c < 2; ++c) {
        for (std::size_t i = 0; i < users_per_camp; ++i) {
            users.push_back("c" + std::to_string(c) + "u" + std::to_string(i));
            out.camp_of_user[users.back()] = c;
        }
    }
    // One unclustered author whose tweets must not count.
    users.push_back("zz_unclustered");
    out.camp_of_user[users.back()] = cluster::kUnclustered;
    for (const auto& [user, camp] : out.camp_of_user) {
        out.assignment.users.push_back(user);
        out.assignment.camp.push_back(camp);
    }
    // Camp-skewed term preference so that distinctive terms exist.
    const std::size_t n_tweets = uniform(10, max_tweets);
    for (std::size_t i = 0; i < n_tweets; ++i) {
        const auto& user = users[uniform(0, users.size() - 1)];
        const int camp = std::max(0, out.camp_of_user[user]);
        std::string text;
        const std::size_t n_tags = uniform(0, 3);
        for (std::size_t h = 0; h < n_tags; ++h) {
            std::size_t term = uniform(0, n_terms - 1);
            if (uniform(0, 2) == 0) {
                term = camp == 0 ? term / 2 : n_terms - 1 - term / 2;
            }
            std::string tag = "Tag" + std::to_string(term);
            if (uniform(0, 1) == 0) {
                std::transform(tag.begin(), tag.end(), tag.begin(), [](unsigned char c) { return std::toupper(c); });
            }
            text += (text.empty() ? "#" : " #") + tag;
        }
        nlohmann::json record = {{"id", std::to_string(i)},
                                 {"user_id", user},
                                 {"created_at", "2020-03-10T12:00:00Z"},
                                 {"text", text.empty() ? "plain words" : text},
                                 {"lang", "en"}};
        if (uniform(0, 1) == 0) {
            const std::size_t acct = camp == 0 ? uniform(0, n_terms / 2) : uniform(n_terms / 3, n_terms);
            record["retweeted_user"] = "acct" + std::to_string(acct);
        }
        out.tweets.push_back(corpus::parse_tweet_record(record.dump(), i + 1));
    }
    return out;
}

int oracle_bin_millis(int i) {
    if (i < -600) return 0;
    if (i < -200) return 1;
    if (i < 200) return 2;
    if (i < 600) return 3;
    return 4;
}

} // namespace stancekit::testing
