#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace epitag {

// One hashtag occurrence in a tweet. Timestamps are UTC milliseconds since
// the Unix epoch; sub-millisecond input is truncated.
struct EventRecord {
    std::int64_t ts_ms = 0;
    std::string hashtag;  // lowercased, leading '#' stripped, non-empty
    std::string location; // empty means unknown
};

// All events of one (hashtag, location), as hours since the first event.
struct EventSeries {
    std::string hashtag;
    std::string location;
    std::vector<double> times; // sorted, times[0] == 0, length >= 1
};

enum class EventFormat { Ndjson, Csv };

struct ParseResult {
    std::vector<EventRecord> records;
    std::size_t malformed = 0;
};

// Lowercases ASCII and strips leading '#'s. Empty result means invalid tag.
std::string normalize_hashtag(std::string_view raw);

// "YYYY-MM-DD[T ]HH:MM:SS[.frac][Z|+HH:MM|-HHMM|+HH]"; returns false on any
// malformed or out-of-range component.
bool parse_iso8601_ms(std::string_view text, std::int64_t& out_ms);

// Always "YYYY-MM-DDTHH:MM:SS.mmmZ" so output files are byte-stable.
std::string format_iso8601_ms(std::int64_t ms);

// NDJSON: one object per line, keys "ts","tag", optional "loc".
// CSV: header with "timestamp","hashtag", optional "location".
// Malformed lines are counted and reported to stderr, not fatal; throws
// EmptyInput when no line is valid and FormatError on a bad CSV header.
ParseResult parse_events(std::istream& in, EventFormat format);

// One series per distinct (hashtag, location), times rebased to hours since
// the series' first event. Output sorted by (hashtag, location).
std::vector<EventSeries> group_by_hashtag(const std::vector<EventRecord>& records);

using EventSink = std::function<void(const EventRecord&)>;

// Delivers records in timestamp order, sleeping real_gap/speedup between
// them; speedup = infinity delivers immediately. Returns delivered count.
std::size_t replay(std::vector<EventRecord> records, double speedup, const EventSink& sink);

// Writes records in the normalized NDJSON form, one per line.
void write_events_ndjson(std::ostream& out, const std::vector<EventRecord>& records);

} // namespace epitag
