#include "stancekit/text.hpp"

#include <algorithm>
#include <cctype>

namespace stancekit::text {

namespace {

bool is_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_ascii_punct(unsigned char c) { return c < 0x80 && std::ispunct(c); }

template <typename Keep>
std::vector<std::string_view> split_tokens(std::string_view s, Keep keep) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && !keep(static_cast<unsigned char>(s[i]))) {
            ++i;
        }
        const std::size_t start = i;
        while (i < s.size() && keep(static_cast<unsigned char>(s[i]))) {
            ++i;
        }
        if (i > start) {
            out.push_back(s.substr(start, i - start));
        }
    }
    return out;
}

} // namespace

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) {
        if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>(c - 'A' + 'a');
        }
    }
    return out;
}

bool is_word_byte(unsigned char c) { return c >= 0x80 || std::isalnum(c) || c == '_'; }

bool contains_icase(std::string_view haystack, std::string_view needle) {
    if (needle.empty()) {
        return true;
    }
    const auto it = std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end(), [](char a, char b) {
        return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
    });
    return it != haystack.end();
}

std::vector<std::string_view> tokens(std::string_view s) {
    return split_tokens(s, [](unsigned char c) {
        return !is_space(c) && (!is_ascii_punct(c) || c == '#' || c == '@' || c == '_');
    });
}

std::vector<std::string_view> bare_tokens(std::string_view s) {
    return split_tokens(s, [](unsigned char c) { return !is_space(c) && !is_ascii_punct(c); });
}

std::vector<std::string> extract_hashtags(std::string_view s) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '#') {
            continue;
        }
        if (i > 0 && (is_word_byte(static_cast<unsigned char>(s[i - 1])) || s[i - 1] == '#' || s[i - 1] == '&')) {
            continue;
        }
        std::size_t j = i + 1;
        while (j < s.size() && is_word_byte(static_cast<unsigned char>(s[j]))) {
            ++j;
        }
        if (j > i + 1) {
            out.emplace_back(s.substr(i + 1, j - i - 1));
        }
        i = j - 1;
    }
    return out;
}

std::vector<std::string> extract_urls(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_space(static_cast<unsigned char>(s[i]))) {
            ++i;
        }
        const std::size_t start = i;
        while (i < s.size() && !is_space(static_cast<unsigned char>(s[i]))) {
            ++i;
        }
        const auto tok = s.substr(start, i - start);
        if (tok.starts_with("http://") || tok.starts_with("https://")) {
            out.emplace_back(tok);
        }
    }
    return out;
}

std::string_view trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && is_space(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && is_space(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return s.substr(b, e - b);
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            return out;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace stancekit::text
