#include "stancekit/corpus.hpp"

#include "stancekit/error.hpp"
#include "stancekit/text.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>

namespace stancekit::corpus {

const StateTable& default_state_table() {
    static const StateTable table = {
        {"Alabama", "AL"},
        {"Alaska", "AK"},
        {"Arizona", "AZ"},
        {"Arkansas", "AR"},
        {"California", "CA"},
        {"Colorado", "CO"},
        {"Connecticut", "CT"},
        {"Delaware", "DE"},
        {"Florida", "FL"},
        {"Georgia", "GA"},
        {"Hawaii", "HI"},
        {"Idaho", "ID"},
        {"Illinois", "IL"},
        {"Indiana", "IN"},
        {"Iowa", "IA"},
        {"Kansas", "KS"},
        {"Kentucky", "KY"},
        {"Louisiana", "LA"},
        {"Maine", "ME"},
        {"Maryland", "MD"},
        {"Massachusetts", "MA"},
        {"Michigan", "MI"},
        {"Minnesota", "MN"},
        {"Mississippi", "MS"},
        {"Missouri", "MO"},
        {"Montana", "MT"},
        {"Nebraska", "NE"},
        {"Nevada", "NV"},
        {"New Hampshire", "NH"},
        {"New Jersey", "NJ"},
        {"New Mexico", "NM"},
        {"New York", "NY"},
        {"North Carolina", "NC"},
        {"North Dakota", "ND"},
        {"Ohio", "OH"},
        {"Oklahoma", "OK"},
        {"Oregon", "OR"},
        {"Pennsylvania", "PA"},
        {"Rhode Island", "RI"},
        {"South Carolina", "SC"},
        {"South Dakota", "SD"},
        {"Tennessee", "TN"},
        {"Texas", "TX"},
        {"Utah", "UT"},
        {"Vermont", "VT"},
        {"Virginia", "VA"},
        {"Washington", "WA"},
        {"West Virginia", "WV"},
        {"Wisconsin", "WI"},
        {"Wyoming", "WY"}
    };
    return table;
}

StateTable read_state_table(std::istream& in) {
    StateTable out;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto trimmed = text::trim(line);
        if (trimmed.empty() || trimmed.front() == '#') {
            continue;
        }
        const auto fields = text::split(trimmed, '\t');
        if (fields.size() != 2 || text::trim(fields[0]).empty() || text::trim(fields[1]).empty()) {
            throw ParseError(line_number, "expected 'name<TAB>abbreviation'");
        }
        out.push_back({std::string(text::trim(fields[0])), std::string(text::trim(fields[1]))});
    }
    if (out.empty()) {
        throw DataError("state table is empty");
    }
    return out;
}

StateTable read_state_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open state table '" + path + "'");
    }
    return read_state_table(in);
}

bool match_us_location(std::string_view location, const StateTable& states) {
    if (location.empty()) {
        return false;
    }
    if (text::contains_icase(location, "United States") || text::contains_icase(location, "America")) {
        return true;
    }
    for (const auto& s : states) {
        if (text::contains_icase(location, s.name)) {
            return true;
        }
    }
    for (const auto tok : text::bare_tokens(location)) {
        if (tok == "USA") {
            return true;
        }
        for (const auto& s : states) {
            if (tok == s.abbreviation) {
                return true;
            }
        }
    }
    return false;
}

std::vector<std::string> users_with_us_location(const std::vector<Tweet>& tweets, const StateTable& states) {
    std::set<std::string> users;
    for (const auto& t : tweets) {
        if (t.user_location && !users.count(t.user_id) && match_us_location(*t.user_location, states)) {
            users.insert(t.user_id);
        }
    }
    return {users.begin(), users.end()};
}

} // namespace stancekit::corpus
