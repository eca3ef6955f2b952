#include "stancekit/report.hpp"

#include "stancekit/error.hpp"

#include <algorithm>
#include <ostream>

namespace stancekit::report {

TermFilter::TermFilter(const std::set<std::string>& patterns) {
    for (const auto& p : patterns) {
        if (!p.empty() && p.back() == '*') {
            prefixes_.push_back(p.substr(0, p.size() - 1));
        } else {
            exact_.insert(p);
        }
    }
}

bool TermFilter::matches(const std::string& term) const {
    if (exact_.count(term)) {
        return true;
    }
    return std::any_of(prefixes_.begin(), prefixes_.end(),
                       [&](const std::string& prefix) { return term.starts_with(prefix); });
}

std::array<TermTable, 2> top_terms_table(const valence::GroupTermCounts& counts, std::size_t n,
                                         const TermFilter& excluded) {
    if (n < 1) {
        throw ConfigError("top_terms_table: n must be at least 1");
    }
    std::array<TermTable, 2> out;
    for (std::size_t c = 0; c < 2; ++c) {
        for (const auto& [term, count] : counts.counts[c]) {
            if (excluded.matches(term)) {
                continue;
            }
            const auto it = counts.display.find(term);
            out[c].push_back({term, it == counts.display.end() ? term : it->second, count});
        }
        std::stable_sort(out[c].begin(), out[c].end(),
                         [](const TermCount& a, const TermCount& b) { return a.count > b.count; });
        if (out[c].size() > n) {
            out[c].resize(n);
        }
    }
    return out;
}

void write_top_terms_csv(std::ostream& out, const TermTable& table) {
    out << "rank,term,count\n";
    for (std::size_t i = 0; i < table.size(); ++i) {
        out << (i + 1) << ',' << valence::csv_field(table[i].display) << ',' << table[i].count << '\n';
    }
}

} // namespace stancekit::report
