#include "epitag/events.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <istream>
#include <map>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "epitag/csv.hpp"
#include "epitag/errors.hpp"

namespace epitag {

namespace {

// Days since 1970-01-01 for a civil date (Howard Hinnant's algorithm).
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

bool is_leap(int y) { return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0); }

int days_in_month(int y, int m) {
    static const int lens[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lens[m - 1];
}

bool parse_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) return false;
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        char c = s[i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

} // namespace

std::string normalize_hashtag(std::string_view raw) {
    std::size_t i = 0;
    while (i < raw.size() && raw[i] == '#') ++i;
    std::string out;
    out.reserve(raw.size() - i);
    for (; i < raw.size(); ++i)
        out += static_cast<char>(std::tolower(static_cast<unsigned char>(raw[i])));
    return out;
}

bool parse_iso8601_ms(std::string_view text, std::int64_t& out_ms) {
    // Trim surrounding blanks.
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

    int year, month, day, hour, minute, second;
    if (!parse_int(text, 0, 4, year) || text.size() < 19) return false;
    if (text[4] != '-' || text[7] != '-') return false;
    if (!parse_int(text, 5, 2, month) || !parse_int(text, 8, 2, day)) return false;
    if (text[10] != 'T' && text[10] != 't' && text[10] != ' ') return false;
    if (text[13] != ':' || text[16] != ':') return false;
    if (!parse_int(text, 11, 2, hour) || !parse_int(text, 14, 2, minute) || !parse_int(text, 17, 2, second))
        return false;
    if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month)) return false;
    if (hour > 23 || minute > 59 || second > 59) return false;

    std::size_t pos = 19;
    std::int64_t frac_ms = 0;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) return false;
        // Truncate to millisecond resolution.
        for (std::size_t i = start; i < start + 3; ++i) {
            int digit = i < pos ? text[i] - '0' : 0;
            frac_ms = frac_ms * 10 + digit;
        }
    }

    std::int64_t offset_min = 0;
    if (pos == text.size()) {
        // No designator: treat as UTC.
    } else if (text[pos] == 'Z' || text[pos] == 'z') {
        if (pos + 1 != text.size()) return false;
    } else if (text[pos] == '+' || text[pos] == '-') {
        const int sign = text[pos] == '+' ? 1 : -1;
        ++pos;
        int oh = 0, om = 0;
        if (!parse_int(text, pos, 2, oh)) return false;
        pos += 2;
        if (pos < text.size() && text[pos] == ':') ++pos;
        if (pos < text.size()) {
            if (!parse_int(text, pos, 2, om)) return false;
            pos += 2;
        }
        if (pos != text.size() || oh > 23 || om > 59) return false;
        offset_min = sign * (oh * 60 + om);
    } else {
        return false;
    }

    const std::int64_t days = days_from_civil(year, month, day);
    out_ms = ((days * 24 + hour) * 60 + minute - offset_min) * 60000LL + second * 1000LL + frac_ms;
    return true;
}

std::string format_iso8601_ms(std::int64_t ms) {
    std::int64_t days = ms / 86400000LL;
    std::int64_t rem = ms % 86400000LL;
    if (rem < 0) {
        rem += 86400000LL;
        --days;
    }
    int y, m, d;
    civil_from_days(days, y, m, d);
    const int hour = static_cast<int>(rem / 3600000);
    const int minute = static_cast<int>(rem / 60000 % 60);
    const int second = static_cast<int>(rem / 1000 % 60);
    const int milli = static_cast<int>(rem % 1000);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", y, m, d, hour, minute, second, milli);
    return buf;
}

namespace {

bool record_from_fields(const std::string& ts, const std::string& tag, const std::string& loc, EventRecord& out) {
    std::int64_t ms;
    if (!parse_iso8601_ms(ts, ms)) return false;
    std::string norm = normalize_hashtag(tag);
    if (norm.empty()) return false;
    out.ts_ms = ms;
    out.hashtag = std::move(norm);
    out.location = loc;
    return true;
}

ParseResult parse_ndjson(std::istream& in) {
    ParseResult result;
    std::string line;
    bool saw_line = false;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        saw_line = true;
        nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
        if (!obj.is_object() || !obj.contains("ts") || !obj.contains("tag") ||
            !obj["ts"].is_string() || !obj["tag"].is_string()) {
            ++result.malformed;
            continue;
        }
        std::string loc;
        if (obj.contains("loc") && obj["loc"].is_string()) loc = obj["loc"].get<std::string>();
        EventRecord rec;
        if (!record_from_fields(obj["ts"].get<std::string>(), obj["tag"].get<std::string>(), loc, rec)) {
            ++result.malformed;
            continue;
        }
        result.records.push_back(std::move(rec));
    }
    if (!saw_line || result.records.empty()) {
        if (result.malformed == 0) throw EmptyInput("no event records in NDJSON input");
        throw EmptyInput("all " + std::to_string(result.malformed) + " NDJSON lines malformed");
    }
    return result;
}

ParseResult parse_csv_events(std::istream& in) {
    auto rows = read_csv(in);
    if (rows.empty()) throw EmptyInput("no event records in CSV input");

    const auto& header = rows.front();
    int ts_col = -1, tag_col = -1, loc_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "timestamp") ts_col = static_cast<int>(i);
        else if (header[i] == "hashtag") tag_col = static_cast<int>(i);
        else if (header[i] == "location") loc_col = static_cast<int>(i);
    }
    if (ts_col < 0 || tag_col < 0)
        throw FormatError("CSV header must contain 'timestamp' and 'hashtag' columns");

    ParseResult result;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() == 1 && row[0].empty()) continue; // trailing blank line
        const std::size_t need = static_cast<std::size_t>(std::max(ts_col, tag_col)) + 1;
        if (row.size() < need) {
            ++result.malformed;
            continue;
        }
        std::string loc;
        if (loc_col >= 0 && static_cast<std::size_t>(loc_col) < row.size()) loc = row[loc_col];
        EventRecord rec;
        if (!record_from_fields(row[ts_col], row[tag_col], loc, rec)) {
            ++result.malformed;
            continue;
        }
        result.records.push_back(std::move(rec));
    }
    if (result.records.empty()) {
        if (result.malformed == 0) throw EmptyInput("no event records in CSV input");
        throw EmptyInput("all " + std::to_string(result.malformed) + " CSV rows malformed");
    }
    return result;
}

} // namespace

ParseResult parse_events(std::istream& in, EventFormat format) {
    ParseResult result = format == EventFormat::Ndjson ? parse_ndjson(in) : parse_csv_events(in);
    if (result.malformed > 0)
        std::cerr << "skipped " << result.malformed << " malformed lines\n";
    return result;
}

std::vector<EventSeries> group_by_hashtag(const std::vector<EventRecord>& records) {
    std::map<std::pair<std::string, std::string>, std::vector<std::int64_t>> groups;
    for (const auto& rec : records)
        groups[{rec.hashtag, rec.location}].push_back(rec.ts_ms);

    std::vector<EventSeries> series;
    series.reserve(groups.size());
    for (auto& [key, stamps] : groups) {
        std::sort(stamps.begin(), stamps.end());
        EventSeries s;
        s.hashtag = key.first;
        s.location = key.second;
        s.times.reserve(stamps.size());
        const std::int64_t base = stamps.front();
        for (std::int64_t t : stamps)
            s.times.push_back(static_cast<double>(t - base) / 3600000.0);
        series.push_back(std::move(s));
    }
    return series;
}

std::size_t replay(std::vector<EventRecord> records, double speedup, const EventSink& sink) {
    std::stable_sort(records.begin(), records.end(),
                     [](const EventRecord& a, const EventRecord& b) { return a.ts_ms < b.ts_ms; });
    const bool immediate = std::isinf(speedup);
    std::int64_t prev = 0;
    bool first = true;
    for (const auto& rec : records) {
        if (!first && !immediate) {
            const double gap_ms = static_cast<double>(rec.ts_ms - prev) / speedup;
            if (gap_ms > 0)
                std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(gap_ms));
        }
        sink(rec);
        prev = rec.ts_ms;
        first = false;
    }
    return records.size();
}

void write_events_ndjson(std::ostream& out, const std::vector<EventRecord>& records) {
    for (const auto& rec : records) {
        nlohmann::json obj;
        obj["ts"] = format_iso8601_ms(rec.ts_ms);
        obj["tag"] = rec.hashtag;
        if (!rec.location.empty()) obj["loc"] = rec.location;
        out << obj.dump() << '\n';
    }
}

} // namespace epitag
