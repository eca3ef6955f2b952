#include "stancekit/report.hpp"

#include "stancekit/error.hpp"
#include "stancekit/text.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

namespace stancekit::report {

namespace {

constexpr const char* kExcludedCategory = "!excluded";

std::string fold_term(std::string_view raw) {
    auto t = text::trim(raw);
    if (!t.empty() && t.front() == '#') {
        t.remove_prefix(1);
    }
    return text::ascii_lower(t);
}

} // namespace

void validate(const CategoryLexicon& lexicon) {
    std::map<std::string, std::string> owner;
    const TermFilter excluded(lexicon.excluded);
    for (const auto& [category, terms] : lexicon.categories) {
        for (const auto& term : terms) {
            const auto [it, inserted] = owner.emplace(term, category);
            if (!inserted) {
                throw DataError("lexicon: term '" + term + "' is in both '" + it->second + "' and '" + category + "'");
            }
            if (excluded.matches(term)) {
                throw DataError("lexicon: term '" + term + "' is both excluded and in category '" + category + "'");
            }
        }
    }
}

CategoryLexicon read_lexicon(std::istream& in) {
    CategoryLexicon lexicon;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto trimmed = text::trim(line);
        if (trimmed.empty() || trimmed.front() == '#') {
            continue;
        }
        const auto fields = text::split(trimmed, '\t');
        if (fields.size() != 2) {
            throw ParseError(line_number, "lexicon: expected 'category<TAB>term'");
        }
        const std::string category(text::trim(fields[0]));
        const auto term = fold_term(fields[1]);
        if (category.empty() || term.empty()) {
            throw ParseError(line_number, "lexicon: empty category or term");
        }
        if (category == kExcludedCategory) {
            lexicon.excluded.insert(term);
        } else {
            lexicon.categories[category].insert(term);
        }
    }
    validate(lexicon);
    return lexicon;
}

CategoryLexicon read_lexicon_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open lexicon '" + path + "'");
    }
    return read_lexicon(in);
}

CategoryReport categorize_terms(const TermTable& table, const CategoryLexicon& lexicon) {
    validate(lexicon);
    std::map<std::string, std::string> owner;
    for (const auto& [category, terms] : lexicon.categories) {
        for (const auto& term : terms) {
            owner.emplace(term, category);
        }
    }
    const TermFilter excluded(lexicon.excluded);

    std::map<std::string, std::vector<const TermCount*>> members;
    CategoryReport report;
    for (const auto& tc : table) {
        if (excluded.matches(tc.term)) {
            continue;
        }
        const auto it = owner.find(tc.term);
        if (it == owner.end()) {
            report.uncategorized.push_back(tc);
            continue;
        }
        members[it->second].push_back(&tc);
        report.categorized_total += tc.count;
    }

    for (auto& [category, terms] : members) {
        CategoryRow row;
        row.category = category;
        for (const auto* tc : terms) {
            row.count += tc->count;
        }
        std::stable_sort(terms.begin(), terms.end(),
                         [](const TermCount* a, const TermCount* b) { return a->count > b->count; });
        for (std::size_t i = 0; i < terms.size() && i < 3; ++i) {
            row.examples.push_back(terms[i]->display);
        }
        row.percent = report.categorized_total > 0
                          ? 100.0 * static_cast<double>(row.count) / static_cast<double>(report.categorized_total)
                          : 0.0;
        report.rows.push_back(std::move(row));
    }
    std::sort(report.rows.begin(), report.rows.end(), [](const CategoryRow& a, const CategoryRow& b) {
        if (a.count != b.count) {
            return a.count > b.count;
        }
        return a.category < b.category;
    });
    return report;
}

void write_categories_csv(std::ostream& out, const CategoryReport& report) {
    out << "category,count,percent,examples\n";
    char pct[32];
    for (const auto& row : report.rows) {
        std::snprintf(pct, sizeof(pct), "%.1f", row.percent);
        std::string examples;
        for (const auto& e : row.examples) {
            examples += (examples.empty() ? "#" : " #") + e;
        }
        out << valence::csv_field(row.category) << ',' << row.count << ',' << pct << ','
            << valence::csv_field(examples) << '\n';
    }
    std::int64_t rest = 0;
    std::string examples;
    for (std::size_t i = 0; i < report.uncategorized.size(); ++i) {
        rest += report.uncategorized[i].count;
        if (i < 3) {
            examples += (examples.empty() ? "#" : " #") + report.uncategorized[i].display;
        }
    }
    out << "uncategorized," << rest << ",," << valence::csv_field(examples) << '\n';
}

} // namespace stancekit::report
