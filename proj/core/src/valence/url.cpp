#include "stancekit/valence.hpp"

#include "stancekit/error.hpp"
#include "stancekit/text.hpp"

#include <fstream>

namespace stancekit::valence {

namespace {

bool is_tracking_parameter(std::string_view param) {
    const auto eq = param.find('=');
    const auto name = text::ascii_lower(param.substr(0, eq));
    return name.starts_with("utm_") || name == "fbclid" || name == "gclid" || name == "igshid";
}

} // namespace

UrlExpansions read_url_expansions_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open URL expansion map '" + path + "'");
    }
    UrlExpansions out;
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
            throw ParseError(line_number, path + ": expected 'short<TAB>expanded'");
        }
        out[fields[0]] = fields[1];
    }
    return out;
}

std::string normalize_url(std::string_view url, const UrlExpansions& expansions) {
    std::string raw(text::trim(url));
    if (const auto it = expansions.find(raw); it != expansions.end()) {
        raw = it->second;
    }
    std::string_view rest = raw;

    const auto scheme_end = rest.find("://");
    if (scheme_end != std::string_view::npos) {
        const auto scheme = text::ascii_lower(rest.substr(0, scheme_end));
        if (scheme == "http" || scheme == "https") {
            rest.remove_prefix(scheme_end + 3);
        }
    }

    const auto host_end = rest.find_first_of("/?#");
    std::string out = text::ascii_lower(rest.substr(0, host_end));
    if (host_end == std::string_view::npos) {
        return out;
    }
    rest.remove_prefix(host_end);

    std::string_view fragment;
    if (const auto hash = rest.find('#'); hash != std::string_view::npos) {
        fragment = rest.substr(hash);
        rest = rest.substr(0, hash);
    }
    std::string_view path = rest;
    std::string query;
    if (const auto q = rest.find('?'); q != std::string_view::npos) {
        path = rest.substr(0, q);
        for (const auto& param : text::split(rest.substr(q + 1), '&')) {
            if (param.empty() || is_tracking_parameter(param)) {
                continue;
            }
            query += (query.empty() ? "?" : "&") + param;
        }
    }
    while (!path.empty() && path.back() == '/') {
        path.remove_suffix(1);
    }
    out += path;
    out += query;
    out += fragment;
    return out;
}

} // namespace stancekit::valence
