#include "stancekit/valence.hpp"

#include "stancekit/error.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace stancekit::valence {

std::string csv_field(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

void write_valence_csv(std::ostream& out, const std::vector<ValenceEntry>& entries) {
    out << "term,count_g,count_other,valence,bin,rank_score\n";
    char buf[128];
    for (const auto& e : entries) {
        std::snprintf(buf, sizeof(buf), ",%lld,%lld,%.12g,%d,%.12g\n", static_cast<long long>(e.count_g),
                      static_cast<long long>(e.count_other), e.valence, e.bin, e.rank_score);
        out << csv_field(e.term) << buf;
    }
}

void write_valence_csv_file(const std::string& path, const std::vector<ValenceEntry>& entries) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    write_valence_csv(out, entries);
}

} // namespace stancekit::valence
