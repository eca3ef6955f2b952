#include "stancekit/cluster.hpp"

#include "stancekit/error.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace stancekit::cluster {

void write_assignment_file(const std::string& path, const NamedAssignment& assignment) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    for (std::size_t i = 0; i < assignment.users.size(); ++i) {
        const int c = assignment.camp[i];
        out << assignment.users[i] << ' '
            << (c == kUnclustered ? std::string(kUnclusteredLabel) : assignment.camps[static_cast<std::size_t>(c)])
            << '\n';
    }
}

NamedAssignment read_assignment_file(const std::string& path, const std::array<std::string, 2>& camps) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    NamedAssignment out;
    out.camps = camps;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        std::string user;
        std::string label;
        if (!(fields >> user >> label)) {
            throw ParseError(line_number, path + ": expected 'user_id label'");
        }
        int camp = kUnclustered;
        if (label == camps[0]) {
            camp = 0;
        } else if (label == camps[1]) {
            camp = 1;
        } else if (label != kUnclusteredLabel) {
            throw ParseError(line_number, path + ": unknown label '" + label + "'");
        }
        out.users.push_back(std::move(user));
        out.camp.push_back(camp);
    }
    if (!std::is_sorted(out.users.begin(), out.users.end())) {
        throw DataError(path + ": user ids must be sorted");
    }
    return out;
}

} // namespace stancekit::cluster
