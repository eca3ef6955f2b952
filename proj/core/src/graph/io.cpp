#include "stancekit/graph.hpp"

#include "stancekit/error.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace stancekit::graph {

namespace {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    return in;
}

std::vector<std::string> read_lines(const std::string& path) {
    auto in = open_in(path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!line.empty()) {
            out.push_back(line);
        }
    }
    return out;
}

} // namespace

void write_matrix(std::ostream& out, const UserRetweetMatrix& matrix) {
    out << matrix.num_users() << ' ' << matrix.num_accounts() << ' ' << matrix.nnz() << '\n';
    for (std::size_t u = 0; u < matrix.num_users(); ++u) {
        for (const auto& e : matrix.row(u)) {
            out << u << ' ' << e.column << ' ' << format_real(e.value) << '\n';
        }
    }
}

void write_matrix_files(const std::string& path, const UserRetweetMatrix& matrix) {
    auto out = open_out(path);
    write_matrix(out, matrix);
    auto users = open_out(path + ".users");
    for (const auto& u : matrix.users()) {
        users << u << '\n';
    }
    auto accounts = open_out(path + ".accounts");
    for (const auto& a : matrix.accounts()) {
        accounts << a << '\n';
    }
}

UserRetweetMatrix read_matrix_files(const std::string& path) {
    auto in = open_in(path);
    std::size_t n_users = 0;
    std::size_t n_accounts = 0;
    std::size_t nnz = 0;
    if (!(in >> n_users >> n_accounts >> nnz)) {
        throw DataError(path + ": missing matrix header");
    }
    auto users = read_lines(path + ".users");
    auto accounts = read_lines(path + ".accounts");
    if (users.size() != n_users || accounts.size() != n_accounts) {
        throw DataError(path + ": sidecar id files disagree with the header");
    }
    std::vector<std::size_t> offsets{0};
    std::vector<Entry> entries;
    entries.reserve(nnz);
    std::size_t current = 0;
    for (std::size_t i = 0; i < nnz; ++i) {
        std::size_t u = 0;
        std::uint32_t c = 0;
        double value = 0.0;
        if (!(in >> u >> c >> value)) {
            throw DataError(path + ": truncated triplet list at entry " + std::to_string(i));
        }
        if (u < current || u >= n_users) {
            throw DataError(path + ": triplets must be grouped by ascending user index");
        }
        while (current < u) {
            offsets.push_back(entries.size());
            ++current;
        }
        entries.push_back({c, value});
    }
    while (offsets.size() < n_users + 1) {
        offsets.push_back(entries.size());
    }
    return UserRetweetMatrix(std::move(users), std::move(accounts), std::move(offsets), std::move(entries));
}

void write_knn(std::ostream& out, const KnnGraph& graph) {
    out << graph.neighbors.size() << ' ' << graph.k << '\n';
    for (std::size_t u = 0; u < graph.neighbors.size(); ++u) {
        for (const auto& nb : graph.neighbors[u]) {
            out << u << ' ' << nb.index << ' ' << format_real(nb.distance) << '\n';
        }
    }
}

void write_knn_file(const std::string& path, const KnnGraph& graph) {
    auto out = open_out(path);
    write_knn(out, graph);
}

KnnGraph read_knn(std::istream& in) {
    std::size_t n = 0;
    KnnGraph graph;
    if (!(in >> n >> graph.k)) {
        throw DataError("knn graph: missing header");
    }
    graph.neighbors.resize(n);
    std::size_t u = 0;
    std::uint32_t v = 0;
    double d = 0.0;
    while (in >> u >> v >> d) {
        if (u >= n || v >= n || u == v) {
            throw DataError("knn graph: invalid edge " + std::to_string(u) + " -> " + std::to_string(v));
        }
        if (!(d >= 0.0 && d <= 1.0)) {
            throw DataError("knn graph: distance outside [0, 1]");
        }
        graph.neighbors[u].push_back({v, d});
    }
    if (!in.eof()) {
        throw DataError("knn graph: malformed edge line");
    }
    for (const auto& row : graph.neighbors) {
        if (row.size() > graph.k) {
            throw DataError("knn graph: neighbor list longer than k");
        }
    }
    return graph;
}

KnnGraph read_knn_file(const std::string& path) {
    auto in = open_in(path);
    return read_knn(in);
}

} // namespace stancekit::graph
