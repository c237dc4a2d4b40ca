#include "tweetshot/extraction.hpp"

#include "tweetshot/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <optional>
#include <regex>
#include <string>
#include <vector>

namespace tweetshot {

namespace {

bool is_ascii_alnum(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

struct Token {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::string_view view(const std::string& line) const {
        return std::string_view(line).substr(begin, end - begin);
    }
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        const std::size_t begin = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        tokens.push_back({begin, i});
    }
    return tokens;
}

// Span of the token after stripping non-alphanumeric edge characters
// (OCR glyph noise like the © before retweet counts).
std::optional<Token> strip_token_edges(const std::string& line, const Token& token) {
    std::size_t begin = token.begin;
    std::size_t end = token.end;
    while (begin < end && !is_ascii_alnum(line[begin])) ++begin;
    while (end > begin && !is_ascii_alnum(line[end - 1])) --end;
    if (begin >= end) return std::nullopt;
    return Token{begin, end};
}

bool all_digits(std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
}

int days_in_month(int year, int month) {
    static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2) {
        const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
        return leap ? 29 : 28;
    }
    return kDays[static_cast<std::size_t>(month - 1)];
}

std::optional<int> month_from_name(std::string name) {
    for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    static const std::array<const char*, 12> kPrefixes = {"jan", "feb", "mar", "apr", "may", "jun",
                                                          "jul", "aug", "sep", "oct", "nov", "dec"};
    for (std::size_t i = 0; i < kPrefixes.size(); ++i) {
        if (name.rfind(kPrefixes[i], 0) == 0) return static_cast<int>(i + 1);
    }
    return std::nullopt;
}

// A candidate before resolution: the located span plus whichever field
// values the text spelled out.
struct ParsedCandidate {
    DateCandidate candidate;
    std::optional<int> year;
    std::optional<int> month;
    std::optional<int> day;
    std::optional<int> hour; // meridiem already applied
    std::optional<int> minute;
    std::optional<int> second;
};

bool spans_overlap(const CharSpan& a, const CharSpan& b) {
    return a.begin < b.end && b.begin < a.end;
}

bool overlaps_any(const CharSpan& span, const std::vector<ParsedCandidate>& taken) {
    return std::any_of(taken.begin(), taken.end(), [&](const ParsedCandidate& pc) {
        return spans_overlap(span, pc.candidate.span);
    });
}

const std::string kMonthPattern =
    "(jan(?:uary)?|feb(?:ruary)?|mar(?:ch)?|apr(?:il)?|may|jun(?:e)?|jul(?:y)?|"
    "aug(?:ust)?|sep(?:t(?:ember)?)?|oct(?:ober)?|nov(?:ember)?|dec(?:ember)?)";

const std::regex& month_day_year_re() {
    static const std::regex re("\\b" + kMonthPattern +
                                   "\\.?\\s+(\\d{1,2})(?:st|nd|rd|th)?(?:\\s*,\\s*|\\s+)(\\d{4})(?!\\d)",
                               std::regex::ECMAScript | std::regex::icase);
    return re;
}

const std::regex& day_month_year_re() {
    static const std::regex re("\\b(\\d{1,2})(?:st|nd|rd|th)?\\s+" + kMonthPattern +
                                   "\\.?(?:\\s*,\\s*|\\s+)(\\d{4})(?!\\d)",
                               std::regex::ECMAScript | std::regex::icase);
    return re;
}

const std::regex& numeric_date_re() {
    static const std::regex re("(\\d{1,4})([-/.])(\\d{1,2})\\2(\\d{1,4})(?!\\d)",
                               std::regex::ECMAScript);
    return re;
}

const std::regex& time_re() {
    static const std::regex re(
        "(\\d{1,2}):(\\d{2})(?::(\\d{2}))?(\\s*[AaPp]\\.?\\s?[Mm]\\.?(?![A-Za-z]))?",
        std::regex::ECMAScript);
    return re;
}

bool digit_at(const std::string& line, std::size_t pos) {
    return pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos])) != 0;
}

DateCandidate make_candidate(const std::string& line, std::size_t line_index, std::size_t begin,
                             std::size_t length, FieldSet fields, std::string date_part) {
    DateCandidate c;
    c.raw = line.substr(begin, length);
    c.line_index = line_index;
    c.span = {begin, begin + length};
    c.explicit_fields = fields;
    c.date_part_raw = std::move(date_part);
    return c;
}

// Clauses (a), (b), (c): dates with explicit year, month, and day.
void scan_full_dates(const std::string& line, std::size_t line_index,
                     std::vector<ParsedCandidate>& out) {
    const auto add = [&](const std::smatch& m, int year, int month, int day) {
        if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month)) return;
        const auto begin = static_cast<std::size_t>(m.position(0));
        const CharSpan span{begin, begin + m[0].length()};
        if (overlaps_any(span, out)) return;
        FieldSet fields;
        fields.insert(DateField::Year);
        fields.insert(DateField::Month);
        fields.insert(DateField::Day);
        ParsedCandidate pc;
        pc.candidate = make_candidate(line, line_index, begin,
                                      static_cast<std::size_t>(m[0].length()), fields, m[0].str());
        pc.year = year;
        pc.month = month;
        pc.day = day;
        out.push_back(std::move(pc));
    };

    for (auto it = std::sregex_iterator(line.begin(), line.end(), month_day_year_re());
         it != std::sregex_iterator(); ++it) {
        const std::smatch& m = *it;
        if (auto month = month_from_name(m[1].str()))
            add(m, std::stoi(m[3].str()), *month, std::stoi(m[2].str()));
    }
    for (auto it = std::sregex_iterator(line.begin(), line.end(), day_month_year_re());
         it != std::sregex_iterator(); ++it) {
        const std::smatch& m = *it;
        if (auto month = month_from_name(m[2].str()))
            add(m, std::stoi(m[3].str()), *month, std::stoi(m[1].str()));
    }
    for (auto it = std::sregex_iterator(line.begin(), line.end(), numeric_date_re());
         it != std::sregex_iterator(); ++it) {
        const std::smatch& m = *it;
        const auto begin = static_cast<std::size_t>(m.position(0));
        if (begin > 0 && digit_at(line, begin - 1)) continue;
        const std::string first = m[1].str();
        const std::string mid = m[3].str();
        const std::string last = m[4].str();
        if (first.size() == 4) // Y-M-D
            add(m, std::stoi(first), std::stoi(mid), std::stoi(last));
        else if (last.size() == 4) // M/D/Y
            add(m, std::stoi(last), std::stoi(first), std::stoi(mid));
    }
}

// Clause (e): time of day, optional meridiem.
void scan_times(const std::string& line, std::size_t line_index,
                const std::vector<ParsedCandidate>& dates, std::vector<ParsedCandidate>& out) {
    for (auto it = std::sregex_iterator(line.begin(), line.end(), time_re());
         it != std::sregex_iterator(); ++it) {
        const std::smatch& m = *it;
        const auto begin = static_cast<std::size_t>(m.position(0));
        const CharSpan span{begin, begin + m[0].length()};
        if (begin > 0 && (digit_at(line, begin - 1) || line[begin - 1] == ':')) continue;
        if (digit_at(line, span.end)) continue;
        if (overlaps_any(span, dates) || overlaps_any(span, out)) continue;

        int hour = std::stoi(m[1].str());
        const int minute = std::stoi(m[2].str());
        std::optional<int> second;
        if (m[3].matched) second = std::stoi(m[3].str());
        const bool has_meridiem = m[4].matched;
        if (has_meridiem) {
            if (hour < 1 || hour > 12) continue;
            char mer = 0;
            for (char c : m[4].str()) {
                if (c == 'a' || c == 'A' || c == 'p' || c == 'P') {
                    mer = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
                    break;
                }
            }
            if (mer == 'p')
                hour = hour == 12 ? 12 : hour + 12;
            else
                hour = hour == 12 ? 0 : hour;
        } else if (hour > 23) {
            continue;
        }
        if (minute > 59 || (second && *second > 59)) continue;

        FieldSet fields;
        fields.insert(DateField::Hour);
        fields.insert(DateField::Minute);
        if (second) fields.insert(DateField::Second);
        if (has_meridiem) fields.insert(DateField::Meridiem);
        ParsedCandidate pc;
        pc.candidate = make_candidate(line, line_index, begin,
                                      static_cast<std::size_t>(m[0].length()), fields, "");
        pc.hour = hour;
        pc.minute = minute;
        pc.second = second;
        out.push_back(std::move(pc));
    }
}

// Clause (d): bare 3-4 digit tokens as year-only candidates — the
// documented false-positive class of generic date finding.
void scan_year_tokens(const std::string& line, std::size_t line_index,
                      const std::vector<ParsedCandidate>& dates,
                      const std::vector<ParsedCandidate>& times,
                      std::vector<ParsedCandidate>& out) {
    for (const Token& token : tokenize(line)) {
        const auto stripped = strip_token_edges(line, token);
        if (!stripped) continue;
        const auto text = stripped->view(line);
        if (text.size() < 3 || text.size() > 4 || !all_digits(text)) continue;
        const CharSpan span{stripped->begin, stripped->end};
        if (overlaps_any(span, dates) || overlaps_any(span, times) || overlaps_any(span, out))
            continue;
        FieldSet fields;
        fields.insert(DateField::Year);
        ParsedCandidate pc;
        pc.candidate = make_candidate(line, line_index, span.begin, span.end - span.begin, fields,
                                      std::string(text));
        pc.year = std::stoi(std::string(text));
        out.push_back(std::move(pc));
    }
}

// Number of whole tokens strictly between two spans on the same line.
std::size_t token_distance(const std::vector<Token>& tokens, const CharSpan& a, const CharSpan& b) {
    const CharSpan& left = a.begin <= b.begin ? a : b;
    const CharSpan& right = a.begin <= b.begin ? b : a;
    if (spans_overlap(left, right)) return 0;
    std::size_t count = 0;
    for (const Token& t : tokens) {
        if (t.begin >= left.end && t.end <= right.begin) ++count;
    }
    return count;
}

ParsedCandidate merge_candidates(const std::string& line, const ParsedCandidate& date,
                                 const ParsedCandidate& time) {
    ParsedCandidate merged = date;
    merged.hour = time.hour;
    merged.minute = time.minute;
    merged.second = time.second;
    const std::size_t begin = std::min(date.candidate.span.begin, time.candidate.span.begin);
    const std::size_t end = std::max(date.candidate.span.end, time.candidate.span.end);
    merged.candidate.raw = line.substr(begin, end - begin);
    merged.candidate.span = {begin, end};
    merged.candidate.explicit_fields =
        date.candidate.explicit_fields.united(time.candidate.explicit_fields);
    // date_part_raw stays the date portion only.
    return merged;
}

std::optional<ResolvedTimestamp> resolve(const ParsedCandidate& pc, const DateTime& reference) {
    ResolvedTimestamp resolved;
    resolved.resolved_from = pc.candidate;
    DateTime& value = resolved.value;
    FieldSet& filled = resolved.filled_fields;

    value.year = pc.year.value_or(reference.year);
    if (!pc.year) filled.insert(DateField::Year);
    value.month = pc.month.value_or(reference.month);
    if (!pc.month) filled.insert(DateField::Month);
    value.day = pc.day.value_or(reference.day);
    if (!pc.day) filled.insert(DateField::Day);

    if (pc.hour) {
        // An explicit clock time implies :00 for finer unstated fields
        // rather than inheriting them from the reference.
        value.hour = *pc.hour;
        value.minute = pc.minute.value_or(0);
        if (!pc.minute) filled.insert(DateField::Minute);
        value.second = pc.second.value_or(0);
        if (!pc.second) filled.insert(DateField::Second);
    } else {
        value.hour = reference.hour;
        value.minute = reference.minute;
        value.second = reference.second;
        filled.insert(DateField::Hour);
        filled.insert(DateField::Minute);
        filled.insert(DateField::Second);
    }

    if (!value.is_valid()) return std::nullopt;
    return resolved;
}

const std::regex& relative_age_re() {
    static const std::regex re("^\\d+[smhdw]$", std::regex::ECMAScript);
    return re;
}

bool has_relative_age_token(const OcrText& text) {
    for (const std::string& line : text.lines) {
        for (const Token& token : tokenize(line)) {
            const auto stripped = strip_token_edges(line, token);
            if (!stripped) continue;
            const std::string word(stripped->view(line));
            if (std::regex_match(word, relative_age_re())) return true;
        }
    }
    return false;
}

int selection_rank(const ResolvedTimestamp& ts) {
    const FieldSet& f = ts.resolved_from.explicit_fields;
    const bool full_date =
        f.has(DateField::Year) && f.has(DateField::Month) && f.has(DateField::Day);
    if (full_date && f.has(DateField::Hour)) return 0;
    if (full_date) return 1;
    return 2;
}

struct Selection {
    std::optional<ResolvedTimestamp> timestamp;
    ErrorCode failure = ErrorCode::NoTimestampFound;
};

Selection select_timestamp(const OcrText& text, Method method, const DateTime& reference) {
    const auto all = find_date_candidates_m1(text, reference);
    const auto survivors = method == Method::M2 ? filter_dates_m2(all) : all;
    Selection result;
    if (survivors.empty()) {
        result.failure = has_relative_age_token(text) ? ErrorCode::RelativeTimestampOnly
                                                      : ErrorCode::NoTimestampFound;
        return result;
    }
    const auto best = std::min_element(
        survivors.begin(), survivors.end(), [](const ResolvedTimestamp& a, const ResolvedTimestamp& b) {
            return std::tuple(selection_rank(a), a.resolved_from.line_index,
                              a.resolved_from.span.begin) <
                   std::tuple(selection_rank(b), b.resolved_from.line_index,
                              b.resolved_from.span.begin);
        });
    result.timestamp = *best;
    return result;
}

std::string trimmed(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

std::string lowercase(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

const std::regex& count_token_re() {
    static const std::regex re("^[0-9][0-9,.]*[KkMm]?$", std::regex::ECMAScript);
    return re;
}

bool is_engagement_line(const std::string& line) {
    static const std::array<const char*, 8> kKeywords = {"retweet", "retweets", "quote", "quotes",
                                                         "like", "likes", "view", "views"};
    const auto tokens = tokenize(line);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto count = strip_token_edges(line, tokens[i]);
        if (!count) continue;
        if (!std::regex_match(std::string(count->view(line)), count_token_re())) continue;
        for (std::size_t j = i + 1; j < tokens.size(); ++j) {
            const auto word = strip_token_edges(line, tokens[j]);
            if (!word) continue;
            const std::string lowered = lowercase(word->view(line));
            for (const char* keyword : kKeywords) {
                if (lowered == keyword) return true;
            }
        }
    }
    return false;
}

bool is_client_line(const std::string& line) {
    return line.find("Twitter for") != std::string::npos ||
           line.find("Twitter Web App") != std::string::npos;
}

} // namespace

DateTime DateTime::parse(const std::string& canonical) {
    static const std::regex re("^(\\d{4})-(\\d{2})-(\\d{2}) (\\d{2}):(\\d{2}):(\\d{2})$");
    std::smatch m;
    if (!std::regex_match(canonical, m, re))
        throw Error(ErrorCode::InvalidArgument,
                    "expected 'YYYY-MM-DD HH:MM:SS', got '" + canonical + "'");
    DateTime dt;
    dt.year = std::stoi(m[1].str());
    dt.month = std::stoi(m[2].str());
    dt.day = std::stoi(m[3].str());
    dt.hour = std::stoi(m[4].str());
    dt.minute = std::stoi(m[5].str());
    dt.second = std::stoi(m[6].str());
    if (!dt.is_valid())
        throw Error(ErrorCode::InvalidArgument, "not a valid calendar datetime: '" + canonical + "'");
    return dt;
}

std::string DateTime::to_string() const {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%04d-%02d-%02d %02d:%02d:%02d", year, month, day, hour,
                  minute, second);
    return buffer;
}

bool DateTime::is_valid() const {
    if (year < 1 || year > 9999 || month < 1 || month > 12) return false;
    if (day < 1 || day > days_in_month(year, month)) return false;
    if (hour < 0 || hour > 23 || minute < 0 || minute > 59 || second < 0 || second > 59)
        return false;
    return true;
}

const char* claim_flag_name(ClaimFlag flag) {
    switch (flag) {
    case ClaimFlag::RelativeTimestampOnly: return "relative_timestamp_only";
    case ClaimFlag::TruncatedHandle: return "truncated_handle";
    case ClaimFlag::NoHandleFound: return "no_handle_found";
    case ClaimFlag::NoTimestampFound: return "no_timestamp_found";
    case ClaimFlag::EmptyBody: return "empty_body";
    }
    return "unknown";
}

std::vector<ResolvedTimestamp> find_date_candidates_m1(const OcrText& text,
                                                       const DateTime& reference) {
    std::vector<ResolvedTimestamp> results;
    for (std::size_t line_index = 0; line_index < text.lines.size(); ++line_index) {
        const std::string& line = text.lines[line_index];
        std::vector<ParsedCandidate> dates;
        std::vector<ParsedCandidate> times;
        scan_full_dates(line, line_index, dates);
        scan_times(line, line_index, dates, times);
        scan_year_tokens(line, line_index, dates, times, dates);

        // Reading order within the line before pairing.
        std::sort(dates.begin(), dates.end(), [](const ParsedCandidate& a, const ParsedCandidate& b) {
            return a.candidate.span.begin < b.candidate.span.begin;
        });

        const auto tokens = tokenize(line);
        std::vector<bool> time_used(times.size(), false);
        std::vector<ParsedCandidate> merged;
        for (const ParsedCandidate& date : dates) {
            std::optional<std::size_t> best;
            std::size_t best_distance = 0;
            for (std::size_t t = 0; t < times.size(); ++t) {
                if (time_used[t]) continue;
                const std::size_t distance =
                    token_distance(tokens, date.candidate.span, times[t].candidate.span);
                if (distance > 3) continue;
                if (!best || distance < best_distance) {
                    best = t;
                    best_distance = distance;
                }
            }
            if (best) {
                time_used[*best] = true;
                merged.push_back(merge_candidates(line, date, times[*best]));
            } else {
                merged.push_back(date);
            }
        }
        for (std::size_t t = 0; t < times.size(); ++t) {
            if (!time_used[t]) merged.push_back(times[t]);
        }
        std::sort(merged.begin(), merged.end(),
                  [](const ParsedCandidate& a, const ParsedCandidate& b) {
                      return a.candidate.span.begin < b.candidate.span.begin;
                  });

        for (const ParsedCandidate& pc : merged) {
            if (auto resolved = resolve(pc, reference)) results.push_back(std::move(*resolved));
        }
    }
    return results;
}

std::vector<ResolvedTimestamp> filter_dates_m2(const std::vector<ResolvedTimestamp>& candidates) {
    std::vector<ResolvedTimestamp> kept;
    for (const ResolvedTimestamp& c : candidates) {
        const std::string& date_part = c.resolved_from.date_part_raw;
        const auto digits = static_cast<std::size_t>(
            std::count_if(date_part.begin(), date_part.end(),
                          [](unsigned char ch) { return std::isdigit(ch) != 0; }));
        if (date_part.size() >= 6 && digits >= 4) kept.push_back(c);
    }
    return kept;
}

ResolvedTimestamp extract_timestamp(const OcrText& text, Method method, const DateTime& reference) {
    Selection selection = select_timestamp(text, method, reference);
    if (!selection.timestamp) {
        if (selection.failure == ErrorCode::RelativeTimestampOnly)
            throw Error(ErrorCode::RelativeTimestampOnly,
                        "only a relative age marker (e.g. '27m') was found");
        throw Error(ErrorCode::NoTimestampFound, "no date or time candidates in text");
    }
    return *selection.timestamp;
}

Handle extract_handle(const OcrText& text) {
    static constexpr std::string_view kEllipsis = "\xE2\x80\xA6";
    for (std::size_t line_index = 0; line_index < text.lines.size(); ++line_index) {
        const std::string& line = text.lines[line_index];
        for (const Token& token : tokenize(line)) {
            const auto word = token.view(line);
            if (word.size() < 2 || word[0] != '@') continue;
            std::size_t run = 0;
            while (1 + run < word.size() &&
                   (is_ascii_alnum(word[1 + run]) || word[1 + run] == '_'))
                ++run;
            if (run == 0) continue; // bare '@' (checkmark artifact) or glyph noise
            Handle handle;
            handle.name = std::string(word.substr(1, std::min<std::size_t>(run, 15)));
            handle.line_index = line_index;
            const auto rest = word.substr(1 + run);
            handle.truncated = rest.substr(0, 3) == "..." || rest.substr(0, 3) == kEllipsis;
            return handle;
        }
    }
    throw Error(ErrorCode::NoHandleFound, "no token starting with '@' found");
}

std::string extract_body(const OcrText& text, const Handle& handle,
                         const std::optional<DateCandidate>& timestamp_candidate) {
    const std::size_t header_end = handle.line_index;
    std::size_t footer_start = text.lines.size();
    if (timestamp_candidate)
        footer_start = std::min(footer_start, timestamp_candidate->line_index);
    for (std::size_t i = 0; i < text.lines.size(); ++i) {
        if (is_engagement_line(text.lines[i])) {
            footer_start = std::min(footer_start, i);
            break;
        }
    }
    for (std::size_t i = 0; i < text.lines.size(); ++i) {
        if (is_client_line(text.lines[i])) {
            footer_start = std::min(footer_start, i);
            break;
        }
    }

    std::string body;
    for (std::size_t i = header_end + 1; i < footer_start && i < text.lines.size(); ++i) {
        const std::string part = trimmed(text.lines[i]);
        if (part.empty()) continue;
        if (!body.empty()) body.push_back(' ');
        body += part;
    }
    if (body.empty())
        throw Error(ErrorCode::EmptyBody, "no tweet text between header and footer");
    return body;
}

ExtractedClaim extract_claim(const OcrText& text, Method method, const DateTime& reference) {
    ExtractedClaim claim;
    claim.source = text;

    try {
        claim.handle = extract_handle(text);
        if (claim.handle->truncated) claim.flags.insert(ClaimFlag::TruncatedHandle);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoHandleFound) throw;
        claim.flags.insert(ClaimFlag::NoHandleFound);
    }

    const Selection selection = select_timestamp(text, method, reference);
    if (selection.timestamp) {
        claim.timestamp = selection.timestamp;
    } else if (selection.failure == ErrorCode::RelativeTimestampOnly) {
        claim.flags.insert(ClaimFlag::RelativeTimestampOnly);
    } else {
        claim.flags.insert(ClaimFlag::NoTimestampFound);
    }

    if (claim.handle) {
        std::optional<DateCandidate> candidate;
        if (claim.timestamp) candidate = claim.timestamp->resolved_from;
        try {
            claim.body = extract_body(text, *claim.handle, candidate);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::EmptyBody) throw;
            claim.flags.insert(ClaimFlag::EmptyBody);
        }
    } else {
        claim.flags.insert(ClaimFlag::EmptyBody);
    }
    return claim;
}

} // namespace tweetshot
