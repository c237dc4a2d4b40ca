#pragma once

#include "tweetshot/ocr_text.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tweetshot {

enum class DateField : std::uint8_t {
    Year = 1 << 0,
    Month = 1 << 1,
    Day = 1 << 2,
    Hour = 1 << 3,
    Minute = 1 << 4,
    Second = 1 << 5,
    Meridiem = 1 << 6,
};

/// Small value set over DateField.
class FieldSet {
public:
    FieldSet() = default;

    void insert(DateField f) { bits_ |= static_cast<std::uint8_t>(f); }
    bool has(DateField f) const { return (bits_ & static_cast<std::uint8_t>(f)) != 0; }
    bool empty() const { return bits_ == 0; }
    FieldSet united(FieldSet other) const {
        FieldSet r;
        r.bits_ = static_cast<std::uint8_t>(bits_ | other.bits_);
        return r;
    }

    bool operator==(const FieldSet&) const = default;

private:
    std::uint8_t bits_ = 0;
};

struct CharSpan {
    std::size_t begin = 0;
    std::size_t end = 0; // exclusive

    bool operator==(const CharSpan&) const = default;
};

/// A located date/time substring. raw equals the line slice the span
/// denotes; date_part_raw is the date-only portion (empty for time-only
/// candidates).
struct DateCandidate {
    std::string raw;
    std::size_t line_index = 0;
    CharSpan span;
    FieldSet explicit_fields;
    std::string date_part_raw;
};

/// Plain calendar datetime. Canonical rendering is zero-padded
/// "YYYY-MM-DD HH:MM:SS".
struct DateTime {
    int year = 1970;
    int month = 1;
    int day = 1;
    int hour = 0;
    int minute = 0;
    int second = 0;

    static DateTime parse(const std::string& canonical); // throws Error{InvalidArgument}
    std::string to_string() const;
    bool is_valid() const;

    auto operator<=>(const DateTime&) const = default;
};

/// A candidate resolved against a reference datetime. filled_fields lists
/// the fields not explicit in the text (those are the only ones that may
/// change when the reference changes).
struct ResolvedTimestamp {
    DateTime value;
    DateCandidate resolved_from;
    FieldSet filled_fields;
};

struct Handle {
    std::string name; // 1..15 chars from [A-Za-z0-9_], never contains '@'
    std::size_t line_index = 0;
    bool truncated = false;
};

enum class ClaimFlag {
    RelativeTimestampOnly,
    TruncatedHandle,
    NoHandleFound,
    NoTimestampFound,
    EmptyBody,
};

const char* claim_flag_name(ClaimFlag flag);

/// Parsed output for one screenshot. A field is absent iff the matching
/// Not/Empty flag is set; TruncatedHandle accompanies a present-but-unusable
/// handle, RelativeTimestampOnly an absent timestamp.
struct ExtractedClaim {
    std::optional<Handle> handle;
    std::optional<ResolvedTimestamp> timestamp;
    std::optional<std::string> body;
    std::set<ClaimFlag> flags;
    OcrText source;
};

enum class Method { M1, M2 };

/// All date/time candidates in reading order, resolved against reference.
/// Grammar: month-name dates, day-first dates, numeric Y-M-D / M/D/Y dates,
/// bare 3-4 digit tokens as year-only candidates, and times of day; a time
/// and a date on the same line within 3 tokens merge into one candidate.
std::vector<ResolvedTimestamp> find_date_candidates_m1(const OcrText& text,
                                                       const DateTime& reference);

/// Keeps candidates whose date_part_raw is at least 6 characters long
/// (separators included) and contains at least 4 digits.
std::vector<ResolvedTimestamp> filter_dates_m2(const std::vector<ResolvedTimestamp>& candidates);

/// Selects one timestamp: full-date-with-time candidates first, then full
/// dates, then reading order. Throws Error{NoTimestampFound} or
/// Error{RelativeTimestampOnly} when only a relative age marker like "27m"
/// is present.
ResolvedTimestamp extract_timestamp(const OcrText& text, Method method, const DateTime& reference);

/// First whitespace token starting with '@' whose run of handle characters
/// is non-empty; bare '@' tokens (the OCR rendering of the verified check
/// mark) are skipped. Throws Error{NoHandleFound}.
Handle extract_handle(const OcrText& text);

/// Lines strictly between the handle line and the footer (timestamp line,
/// engagement counts, or client string), trimmed and joined with single
/// spaces. Throws Error{EmptyBody}.
std::string extract_body(const OcrText& text, const Handle& handle,
                         const std::optional<DateCandidate>& timestamp_candidate);

/// Runs all three extractors; per-field failures become flags and never
/// abort the claim.
ExtractedClaim extract_claim(const OcrText& text, Method method, const DateTime& reference);

} // namespace tweetshot
