#include "stancekit/corpus.hpp"

#include "stancekit/error.hpp"
#include "stancekit/text.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

namespace stancekit::corpus {

namespace {

using json = nlohmann::json;

std::string required_string(const json& obj, const char* field, std::size_t line) {
    const auto it = obj.find(field);
    if (it == obj.end() || it->is_null()) {
        throw SchemaError(line, field, "missing mandatory field");
    }
    if (!it->is_string()) {
        throw SchemaError(line, field, "expected a string");
    }
    return it->get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, const char* field, std::size_t line) {
    const auto it = obj.find(field);
    if (it == obj.end() || it->is_null()) {
        return std::nullopt;
    }
    if (!it->is_string()) {
        throw SchemaError(line, field, "expected a string or null");
    }
    return it->get<std::string>();
}

std::optional<std::vector<std::string>> optional_string_list(const json& obj, const char* field, std::size_t line) {
    const auto it = obj.find(field);
    if (it == obj.end() || it->is_null()) {
        return std::nullopt;
    }
    if (!it->is_array()) {
        throw SchemaError(line, field, "expected an array of strings");
    }
    std::vector<std::string> out;
    out.reserve(it->size());
    for (const auto& v : *it) {
        if (!v.is_string()) {
            throw SchemaError(line, field, "expected an array of strings");
        }
        out.push_back(v.get<std::string>());
    }
    return out;
}

} // namespace

Tweet parse_tweet_record(std::string_view line, std::size_t line_number) {
    json obj;
    try {
        obj = json::parse(line.begin(), line.end());
    } catch (const json::parse_error& e) {
        throw ParseError(line_number, std::string("malformed record: ") + e.what());
    }
    if (!obj.is_object()) {
        throw ParseError(line_number, "record is not a JSON object");
    }

    Tweet t;
    t.id = required_string(obj, "id", line_number);
    if (t.id.empty()) {
        throw SchemaError(line_number, "id", "must be non-empty");
    }
    t.user_id = required_string(obj, "user_id", line_number);
    if (t.user_id.empty()) {
        throw SchemaError(line_number, "user_id", "must be non-empty");
    }
    const auto created = required_string(obj, "created_at", line_number);
    try {
        t.timestamp_utc = parse_timestamp(created);
    } catch (const DataError& e) {
        throw SchemaError(line_number, "created_at", e.what());
    }
    t.text = required_string(obj, "text", line_number);
    t.lang = optional_string(obj, "lang", line_number);
    t.retweeted_account = optional_string(obj, "retweeted_user", line_number);
    if (t.retweeted_account && t.retweeted_account->empty()) {
        t.retweeted_account.reset();
    }
    t.user_location = optional_string(obj, "user_location", line_number);

    auto tags = optional_string_list(obj, "hashtags", line_number);
    if (!tags) {
        tags = text::extract_hashtags(t.text);
    }
    for (auto& tag : *tags) {
        if (!tag.empty() && tag.front() == '#') {
            tag.erase(0, 1);
        }
        if (tag.empty()) {
            continue;
        }
        t.hashtags.push_back(text::ascii_lower(tag));
        t.hashtag_surface.push_back(std::move(tag));
    }

    auto urls = optional_string_list(obj, "urls", line_number);
    t.urls = urls ? std::move(*urls) : text::extract_urls(t.text);
    return t;
}

std::string serialize_tweet_record(const Tweet& tweet) {
    nlohmann::ordered_json obj;
    obj["id"] = tweet.id;
    obj["user_id"] = tweet.user_id;
    obj["created_at"] = format_timestamp(tweet.timestamp_utc);
    obj["text"] = tweet.text;
    obj["lang"] = tweet.lang ? nlohmann::ordered_json(*tweet.lang) : nlohmann::ordered_json(nullptr);
    obj["retweeted_user"] =
        tweet.retweeted_account ? nlohmann::ordered_json(*tweet.retweeted_account) : nlohmann::ordered_json(nullptr);
    obj["user_location"] =
        tweet.user_location ? nlohmann::ordered_json(*tweet.user_location) : nlohmann::ordered_json(nullptr);
    obj["hashtags"] = tweet.hashtag_surface;
    obj["urls"] = tweet.urls;
    return obj.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

std::vector<Tweet> read_corpus(std::istream& in) {
    std::vector<Tweet> out;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (text::trim(line).empty()) {
            continue;
        }
        auto t = parse_tweet_record(line, line_number);
        if (!seen.insert(t.id).second) {
            throw DataError("line " + std::to_string(line_number) + ": duplicate tweet id '" + t.id + "'");
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<Tweet> read_corpus_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open corpus '" + path + "'");
    }
    return read_corpus(in);
}

void write_corpus(std::ostream& out, const std::vector<Tweet>& tweets) {
    for (const auto& t : tweets) {
        out << serialize_tweet_record(t) << '\n';
    }
}

void write_corpus_file(const std::string& path, const std::vector<Tweet>& tweets) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write corpus '" + path + "'");
    }
    write_corpus(out, tweets);
    if (!out) {
        throw IoError("write failed for '" + path + "'");
    }
}

} // namespace stancekit::corpus
