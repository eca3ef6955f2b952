#include "stancekit/embed.hpp"

#include "stancekit/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace stancekit::embed {

void write_embedding(std::ostream& out, const std::vector<std::string>& users, const Embedding& embedding) {
    if (users.size() != embedding.coords.size()) {
        throw DataError("embedding: user list and coordinates differ in length");
    }
    char buf[96];
    for (std::size_t i = 0; i < users.size(); ++i) {
        std::snprintf(buf, sizeof(buf), " %.17g %.17g\n", embedding.coords[i][0], embedding.coords[i][1]);
        out << users[i] << buf;
    }
}

void write_embedding_file(const std::string& path, const std::vector<std::string>& users,
                          const Embedding& embedding) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    write_embedding(out, users, embedding);
}

LabeledEmbedding read_embedding_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    LabeledEmbedding out;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        std::string user;
        Point p{};
        if (!(fields >> user >> p[0] >> p[1]) || !std::isfinite(p[0]) || !std::isfinite(p[1])) {
            throw ParseError(line_number, path + ": expected 'user_id x y' with finite coordinates");
        }
        out.users.push_back(std::move(user));
        out.embedding.coords.push_back(p);
    }
    return out;
}

} // namespace stancekit::embed
