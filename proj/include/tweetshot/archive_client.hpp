#pragma once

#include "tweetshot/extraction.hpp"
#include "tweetshot/transport.hpp"

#include <chrono>
#include <condition_variable>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tweetshot {

inline constexpr const char* kDefaultCdxEndpoint = "http://web.archive.org/cdx/search/cdx";
inline constexpr const char* kReplayPrefix = "https://web.archive.org/web/";

struct CdxQuery {
    Handle handle;
    int from_day = 0; // YYYYMMDD
    int to_day = 0;   // YYYYMMDD, >= from_day; match type is always "prefix"
};

/// One parsed line of the CDX default 7-field format.
struct CdxRecord {
    std::string urlkey;
    std::string capture_ts; // exactly 14 digits, valid UTC datetime
    std::string original;   // http:// or https:// URL
    std::string mimetype;
    std::string statuscode;
    std::string digest;
    long length = 0;
};

struct ArchivedSnapshot {
    std::string original;
    std::string capture_ts;
    std::string replay_url; // kReplayPrefix + capture_ts + "/" + original
    std::optional<std::string> tweet_id;

    bool operator==(const ArchivedSnapshot&) const = default;
};

struct CdxParseResult {
    std::vector<CdxRecord> records;
    std::vector<std::string> warnings;
};

/// Retry/backoff knobs for fetches. Defaults follow the client contract:
/// up to 3 retries at 1 s, 2 s, 4 s on 5xx/transport failures; a single
/// retry on 429 before giving up.
struct FetchPolicy {
    int max_retries = 3;
    std::chrono::milliseconds initial_backoff{1000};
};

/// Politeness limiter shared by all fetches against a given service:
/// bounded concurrency plus a minimum spacing between request starts.
class RateLimiter {
public:
    RateLimiter(int max_concurrent, std::chrono::milliseconds min_interval);

    void acquire();
    void release();

    /// Process-global limiter for live archive traffic: 2 concurrent,
    /// 500 ms between request starts.
    static RateLimiter& global();
    /// Pass-through limiter for offline fixture transports.
    static RateLimiter& unlimited();

private:
    std::mutex mutex_;
    std::condition_variable cv_;
    int in_flight_ = 0;
    int max_concurrent_;
    std::chrono::milliseconds min_interval_;
    std::chrono::steady_clock::time_point last_start_;
};

/// (from, to) as YYYYMMDD: the calendar day of ts through the following day,
/// widened symmetrically by window_days > 1.
std::pair<int, int> derive_time_range(const DateTime& ts, int window_days = 1);

/// Exact query URL, parameter order fixed: url, from, to, matchType.
/// Throws Error{TruncatedHandleRejected} for truncated handles.
std::string build_query_url(const CdxQuery& query,
                            const std::string& endpoint = kDefaultCdxEndpoint);

/// GET with retries, backoff, and politeness limiting; returns the body on
/// 200. Throws Error{HttpError, RateLimited, NetworkError}.
std::string fetch_with_policy(Transport& transport, const std::string& url,
                              const FetchPolicy& policy = {},
                              RateLimiter* limiter = nullptr);

inline std::string fetch_cdx(Transport& transport, const std::string& url,
                             const FetchPolicy& policy = {}, RateLimiter* limiter = nullptr) {
    return fetch_with_policy(transport, url, policy, limiter);
}

/// Splits each non-empty line on single spaces into exactly 7 fields;
/// malformed lines become warnings, never errors. An empty body is a valid
/// empty result.
CdxParseResult parse_cdx_response(const std::string& body);

/// One snapshot per distinct original keeping the earliest capture, sorted
/// by original URL ascending.
std::vector<ArchivedSnapshot> dedupe_snapshots(const std::vector<CdxRecord>& records);

struct SearchOptions {
    std::string endpoint = kDefaultCdxEndpoint;
    int window_days = 1;
    FetchPolicy policy;
    RateLimiter* limiter = nullptr; // nullptr -> RateLimiter::global()
};

/// derive_time_range -> build_query_url -> fetch -> parse -> dedupe.
/// Only originals of the exact form https://twitter.com/<user>/status/<digits>
/// are kept (CDX prefix matching may also return subresources).
/// Throws Error{MissingField} when the claim lacks a usable handle or
/// timestamp, Error{TruncatedHandleRejected} for truncated handles, plus
/// anything fetch_with_policy throws.
std::vector<ArchivedSnapshot> search_archives(const ExtractedClaim& claim, Transport& transport,
                                              const SearchOptions& options = {});

} // namespace tweetshot
