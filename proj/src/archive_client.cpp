#include "tweetshot/archive_client.hpp"

#include "tweetshot/errors.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <map>
#include <regex>
#include <thread>

namespace tweetshot {

namespace {

std::string format_day(int yyyymmdd) {
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "%08d", yyyymmdd);
    return buffer;
}

int to_yyyymmdd(std::chrono::sys_days day) {
    const std::chrono::year_month_day ymd{day};
    return int(ymd.year()) * 10000 + int(unsigned(ymd.month())) * 100 + int(unsigned(ymd.day()));
}

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
    });
}

bool valid_capture_ts(const std::string& ts) {
    if (ts.size() != 14 || !all_digits(ts)) return false;
    DateTime dt;
    dt.year = std::stoi(ts.substr(0, 4));
    dt.month = std::stoi(ts.substr(4, 2));
    dt.day = std::stoi(ts.substr(6, 2));
    dt.hour = std::stoi(ts.substr(8, 2));
    dt.minute = std::stoi(ts.substr(10, 2));
    dt.second = std::stoi(ts.substr(12, 2));
    return dt.is_valid();
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

const std::regex& status_original_re() {
    static const std::regex re(R"(^https?://(www\.)?twitter\.com/[A-Za-z0-9_]+/status/[0-9]+$)");
    return re;
}

} // namespace

RateLimiter::RateLimiter(int max_concurrent, std::chrono::milliseconds min_interval)
    : max_concurrent_(std::max(1, max_concurrent)), min_interval_(min_interval) {}

void RateLimiter::acquire() {
    std::unique_lock lock(mutex_);
    for (;;) {
        cv_.wait(lock, [&] { return in_flight_ < max_concurrent_; });
        const auto earliest = last_start_ + min_interval_;
        const auto now = std::chrono::steady_clock::now();
        if (now >= earliest) break;
        cv_.wait_until(lock, earliest);
    }
    ++in_flight_;
    last_start_ = std::chrono::steady_clock::now();
}

void RateLimiter::release() {
    std::lock_guard lock(mutex_);
    --in_flight_;
    cv_.notify_all();
}

RateLimiter& RateLimiter::global() {
    static RateLimiter limiter(2, std::chrono::milliseconds(500));
    return limiter;
}

RateLimiter& RateLimiter::unlimited() {
    static RateLimiter limiter(1 << 20, std::chrono::milliseconds(0));
    return limiter;
}

std::pair<int, int> derive_time_range(const DateTime& ts, int window_days) {
    if (window_days < 1)
        throw Error(ErrorCode::InvalidArgument, "window_days must be >= 1");
    if (!ts.is_valid())
        throw Error(ErrorCode::InvalidArgument, "invalid timestamp: " + ts.to_string());
    using namespace std::chrono;
    const sys_days base{year_month_day{year{ts.year}, month{static_cast<unsigned>(ts.month)},
                                       day{static_cast<unsigned>(ts.day)}}};
    return {to_yyyymmdd(base - days{window_days - 1}), to_yyyymmdd(base + days{window_days})};
}

std::string build_query_url(const CdxQuery& query, const std::string& endpoint) {
    if (query.handle.truncated)
        throw Error(ErrorCode::TruncatedHandleRejected,
                    "truncated handle '@" + query.handle.name +
                        "...' cannot be used for an archive query");
    if (query.from_day > query.to_day)
        throw Error(ErrorCode::InvalidArgument, "query range is inverted");
    return endpoint + "?url=https://twitter.com/" + query.handle.name +
           "/status&from=" + format_day(query.from_day) + "&to=" + format_day(query.to_day) +
           "&matchType=prefix";
}

std::string fetch_with_policy(Transport& transport, const std::string& url,
                              const FetchPolicy& policy, RateLimiter* limiter) {
    RateLimiter& limits = limiter ? *limiter : RateLimiter::global();
    auto backoff = policy.initial_backoff;
    int retries = 0;
    bool retried_rate_limit = false;
    std::string last_failure;

    for (;;) {
        std::optional<HttpResponse> response;
        limits.acquire();
        try {
            response = transport.get(url);
        } catch (const Error& e) {
            limits.release();
            if (e.code() != ErrorCode::NetworkError) throw;
            last_failure = e.what();
        } catch (...) {
            limits.release();
            throw;
        }
        if (response) limits.release();

        if (response) {
            if (response->status == 200) return response->body;
            if (response->status == 429) {
                if (!retried_rate_limit) {
                    retried_rate_limit = true;
                    std::this_thread::sleep_for(backoff);
                    backoff *= 2;
                    continue;
                }
                throw Error(ErrorCode::RateLimited, "rate limited (HTTP 429) by " + url, 429);
            }
            if (response->status < 500)
                throw Error(ErrorCode::HttpError,
                            "HTTP " + std::to_string(response->status) + " for " + url,
                            response->status);
            last_failure = "HTTP " + std::to_string(response->status);
        }

        if (retries >= policy.max_retries)
            throw Error(ErrorCode::NetworkError, "GET " + url + " failed after " +
                                                     std::to_string(retries) +
                                                     " retries: " + last_failure);
        ++retries;
        std::this_thread::sleep_for(backoff);
        backoff *= 2;
    }
}

CdxParseResult parse_cdx_response(const std::string& body) {
    CdxParseResult result;
    std::size_t line_no = 0;
    for (std::string line : split_on(body, '\n')) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        const auto fields = split_on(line, ' ');
        if (fields.size() != 7) {
            result.warnings.push_back("line " + std::to_string(line_no) + ": expected 7 fields, got " +
                                      std::to_string(fields.size()));
            continue;
        }
        if (!valid_capture_ts(fields[1])) {
            result.warnings.push_back("line " + std::to_string(line_no) +
                                      ": bad capture timestamp '" + fields[1] + "'");
            continue;
        }
        if (fields[2].rfind("http://", 0) != 0 && fields[2].rfind("https://", 0) != 0) {
            result.warnings.push_back("line " + std::to_string(line_no) + ": original is not a URL: '" +
                                      fields[2] + "'");
            continue;
        }
        if (!all_digits(fields[6])) {
            result.warnings.push_back("line " + std::to_string(line_no) + ": bad length '" +
                                      fields[6] + "'");
            continue;
        }
        CdxRecord record;
        record.urlkey = fields[0];
        record.capture_ts = fields[1];
        record.original = fields[2];
        record.mimetype = fields[3];
        record.statuscode = fields[4];
        record.digest = fields[5];
        record.length = std::stol(fields[6]);
        result.records.push_back(std::move(record));
    }
    return result;
}

std::vector<ArchivedSnapshot> dedupe_snapshots(const std::vector<CdxRecord>& records) {
    std::map<std::string, std::string> earliest; // original -> earliest capture_ts
    for (const CdxRecord& record : records) {
        auto [it, inserted] = earliest.try_emplace(record.original, record.capture_ts);
        if (!inserted && record.capture_ts < it->second) it->second = record.capture_ts;
    }

    std::vector<ArchivedSnapshot> snapshots;
    snapshots.reserve(earliest.size());
    for (const auto& [original, capture_ts] : earliest) {
        ArchivedSnapshot snapshot;
        snapshot.original = original;
        snapshot.capture_ts = capture_ts;
        snapshot.replay_url = std::string(kReplayPrefix) + capture_ts + "/" + original;
        const auto pos = original.rfind("/status/");
        if (pos != std::string::npos) {
            const std::string suffix = original.substr(pos + 8);
            if (all_digits(suffix)) snapshot.tweet_id = suffix;
        }
        snapshots.push_back(std::move(snapshot));
    }
    return snapshots;
}

std::vector<ArchivedSnapshot> search_archives(const ExtractedClaim& claim, Transport& transport,
                                              const SearchOptions& options) {
    if (!claim.handle)
        throw Error(ErrorCode::MissingField, "claim is missing field: handle");
    if (claim.handle->truncated)
        throw Error(ErrorCode::TruncatedHandleRejected,
                    "truncated handle '@" + claim.handle->name +
                        "...' cannot be used for an archive query");
    if (!claim.timestamp)
        throw Error(ErrorCode::MissingField, "claim is missing field: timestamp");

    const auto [from_day, to_day] = derive_time_range(claim.timestamp->value, options.window_days);
    const CdxQuery query{*claim.handle, from_day, to_day};
    const std::string url = build_query_url(query, options.endpoint);
    const std::string body = fetch_with_policy(transport, url, options.policy, options.limiter);

    auto parsed = parse_cdx_response(body);
    // Prefix matching can also return /status subresources; keep only exact
    // tweet URLs.
    std::vector<CdxRecord> tweets;
    tweets.reserve(parsed.records.size());
    for (auto& record : parsed.records) {
        if (std::regex_match(record.original, status_original_re()))
            tweets.push_back(std::move(record));
    }
    return dedupe_snapshots(tweets);
}

} // namespace tweetshot
