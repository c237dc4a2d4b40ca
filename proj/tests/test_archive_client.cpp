#include "tweetshot/archive_client.hpp"

#include "tweetshot/errors.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <random>
#include <thread>

using namespace tweetshot;
using namespace tweetshot::test;

namespace {

// Independent next-day oracle: explicit month lengths, no <chrono>.
struct Ymd {
    int y, m, d;
};

int oracle_month_len(int y, int m) {
    static const int lens[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && ((y % 4 == 0 && y % 100 != 0) || y % 400 == 0)) return 29;
    return lens[m - 1];
}

Ymd oracle_next_day(Ymd date) {
    ++date.d;
    if (date.d > oracle_month_len(date.y, date.m)) {
        date.d = 1;
        ++date.m;
        if (date.m > 12) {
            date.m = 1;
            ++date.y;
        }
    }
    return date;
}

int oracle_to_int(const Ymd& date) { return date.y * 10000 + date.m * 100 + date.d; }

ExtractedClaim hanauer_claim() {
    ExtractedClaim claim;
    claim.handle = Handle{"NickHanauer", 1, false};
    ResolvedTimestamp ts;
    ts.value = DateTime::parse("2022-05-25 16:38:00");
    claim.timestamp = ts;
    claim.body = "We need an economy that works for everyone, not just the wealthy few.";
    return claim;
}

const char* kHanauerQueryUrl =
    "http://web.archive.org/cdx/search/cdx?url=https://twitter.com/NickHanauer/"
    "status&from=20220525&to=20220526&matchType=prefix";

const char* kHanauerReplayUrl =
    "https://web.archive.org/web/20220525164026/https://twitter.com/NickHanauer/status/"
    "1529220873697124353";

} // namespace

TEST_CASE("derive_time_range spans the tweet day and the following day") {
    CHECK(derive_time_range(DateTime::parse("2022-05-25 16:40:26")) ==
          std::pair<int, int>{20220525, 20220526});
    CHECK(derive_time_range(DateTime::parse("2022-12-31 23:59:00")) ==
          std::pair<int, int>{20221231, 20230101});
    CHECK(derive_time_range(DateTime::parse("2020-02-28 00:00:00")) ==
          std::pair<int, int>{20200228, 20200229});
}

TEST_CASE("derive_time_range matches the independent calendar oracle") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> year(1970, 2400);
    std::uniform_int_distribution<int> month(1, 12);
    for (int i = 0; i < 500; ++i) {
        Ymd date{year(rng), month(rng), 0};
        std::uniform_int_distribution<int> day(1, oracle_month_len(date.y, date.m));
        date.d = day(rng);
        DateTime ts{date.y, date.m, date.d, 12, 0, 0};
        const auto [from, to] = derive_time_range(ts);
        CHECK(from == oracle_to_int(date));
        CHECK(to == oracle_to_int(oracle_next_day(date)));
    }
}

TEST_CASE("derive_time_range widens symmetrically") {
    const DateTime ts = DateTime::parse("2022-05-25 12:00:00");
    CHECK(derive_time_range(ts, 2) == std::pair<int, int>{20220524, 20220527});
    CHECK(derive_time_range(ts, 3) == std::pair<int, int>{20220523, 20220528});
    CHECK_THROWS_AS(derive_time_range(ts, 0), Error);
}

TEST_CASE("build_query_url emits a byte-exact reproducible query") {
    const CdxQuery query{Handle{"NickHanauer", 0, false}, 20220525, 20220526};
    CHECK(build_query_url(query) == kHanauerQueryUrl);
    CHECK(build_query_url(query) == build_query_url(query)); // reproducible

    const CdxQuery nasa{Handle{"NASA", 0, false}, 20220601, 20220602};
    CHECK(build_query_url(nasa) == "http://web.archive.org/cdx/search/cdx?url=https://"
                                   "twitter.com/NASA/status&from=20220601&to=20220602"
                                   "&matchType=prefix");

    const CdxQuery truncated{Handle{"DrSJaish", 0, true}, 20220525, 20220526};
    try {
        build_query_url(truncated);
        FAIL("expected TruncatedHandleRejected");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TruncatedHandleRejected);
    }
}

TEST_CASE("fetch_with_policy passes a recorded fixture body through verbatim") {
    FixtureTransport transport(fixture_path("wayback"));
    const std::string body = fetch_with_policy(transport, kHanauerQueryUrl, fast_policy(),
                                               &fast_limiter());
    CHECK(body == read_file(fixture_path("wayback/cdx_hanauer.body")));
}

TEST_CASE("fetch_with_policy retries 5xx and returns the eventual body") {
    ScriptedTransport transport({{503, "x"}, {503, "x"}, {503, "x"}, {200, "payload"}});
    const std::string body =
        fetch_with_policy(transport, "http://example.test/cdx", fast_policy(), &fast_limiter());
    CHECK(body == "payload");
    CHECK(transport.requests.size() == 4); // initial attempt + 3 retries
}

TEST_CASE("fetch_with_policy gives up after exhausting retries") {
    ScriptedTransport transport({{503, ""}, {503, ""}, {503, ""}, {503, ""}, {503, ""}});
    try {
        fetch_with_policy(transport, "http://example.test/cdx", fast_policy(), &fast_limiter());
        FAIL("expected NetworkError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NetworkError);
    }
    CHECK(transport.requests.size() == 4);
}

TEST_CASE("fetch_with_policy maps 4xx to HttpError immediately") {
    ScriptedTransport transport({{404, "missing"}});
    try {
        fetch_with_policy(transport, "http://example.test/cdx", fast_policy(), &fast_limiter());
        FAIL("expected HttpError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::HttpError);
        CHECK(e.detail() == 404);
    }
    CHECK(transport.requests.size() == 1);
}

TEST_CASE("fetch_with_policy retries 429 once") {
    ScriptedTransport recovers({{429, ""}, {200, "ok"}});
    CHECK(fetch_with_policy(recovers, "http://example.test", fast_policy(), &fast_limiter()) ==
          "ok");

    ScriptedTransport stuck({{429, ""}, {429, ""}});
    try {
        fetch_with_policy(stuck, "http://example.test", fast_policy(), &fast_limiter());
        FAIL("expected RateLimited");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RateLimited);
    }
    CHECK(stuck.requests.size() == 2);
}

TEST_CASE("fetch_with_policy retries transport-level failures") {
    DeadTransport transport;
    try {
        fetch_with_policy(transport, "http://example.test", fast_policy(), &fast_limiter());
        FAIL("expected NetworkError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NetworkError);
    }
    CHECK(transport.requests.size() == 4);
}

TEST_CASE("rate limiter spaces out request starts") {
    RateLimiter limiter(4, std::chrono::milliseconds(60));
    ScriptedTransport transport({{200, "a"}, {200, "b"}, {200, "c"}});
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < 3; ++i)
        fetch_with_policy(transport, "http://example.test", fast_policy(), &limiter);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    CHECK(elapsed >= std::chrono::milliseconds(120));
}

TEST_CASE("rate limiter caps concurrent requests") {
    class SlowCountingTransport : public Transport {
    public:
        HttpResponse get(const std::string&) override {
            const int now = ++in_flight;
            int seen = max_in_flight.load();
            while (now > seen && !max_in_flight.compare_exchange_weak(seen, now)) {
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(25));
            --in_flight;
            return {200, "ok"};
        }
        std::atomic<int> in_flight{0};
        std::atomic<int> max_in_flight{0};
    };

    SlowCountingTransport transport;
    RateLimiter limiter(2, std::chrono::milliseconds(0));
    std::vector<std::thread> threads;
    for (int i = 0; i < 6; ++i)
        threads.emplace_back([&] {
            fetch_with_policy(transport, "http://example.test", fast_policy(), &limiter);
        });
    for (auto& t : threads) t.join();
    CHECK(transport.max_in_flight.load() <= 2);
}

TEST_CASE("parse_cdx_response parses the recorded CDX fixture") {
    const auto result = parse_cdx_response(read_file(fixture_path("wayback/cdx_hanauer.body")));
    REQUIRE(result.records.size() == 6);
    CHECK(result.warnings.empty());
    const auto& red_line = result.records.back();
    CHECK(red_line.capture_ts == "20220525164026");
    CHECK(red_line.original == "https://twitter.com/NickHanauer/status/1529220873697124353");
    CHECK(red_line.mimetype == "text/html");
    CHECK(red_line.statuscode == "200");
    CHECK(red_line.length == 126733);
}

TEST_CASE("parse_cdx_response tolerates malformed lines as warnings") {
    CHECK(parse_cdx_response("").records.empty());
    CHECK(parse_cdx_response("").warnings.empty());

    const auto five_fields = parse_cdx_response("a 20220525164026 https://x.test text/html 200\n");
    CHECK(five_fields.records.empty());
    REQUIRE(five_fields.warnings.size() == 1);
    CHECK(five_fields.warnings[0].find("expected 7 fields") != std::string::npos);

    const auto bad_ts =
        parse_cdx_response("k 2022052599 https://x.test text/html 200 DIGEST 10\n");
    CHECK(bad_ts.records.empty());
    REQUIRE(bad_ts.warnings.size() == 1);

    const auto bad_url = parse_cdx_response("k 20220525164026 nota-url text/html 200 DIGEST 10\n");
    CHECK(bad_url.records.empty());
    CHECK(bad_url.warnings.size() == 1);

    const auto mixed = parse_cdx_response(
        "k 20220525164026 https://x.test text/html 200 DIGEST 10\nbroken line\n");
    CHECK(mixed.records.size() == 1);
    CHECK(mixed.warnings.size() == 1);
}

TEST_CASE("dedupe_snapshots keeps one earliest snapshot per original") {
    const auto parsed = parse_cdx_response(read_file(fixture_path("wayback/cdx_hanauer.body")));
    const auto snapshots = dedupe_snapshots(parsed.records);
    REQUIRE(snapshots.size() == 4);
    CHECK(snapshots[0].original == "https://twitter.com/NickHanauer/status/1305869227409027072");
    CHECK(snapshots[0].capture_ts == "20220525153810"); // earliest of the three captures
    CHECK(snapshots[3].replay_url == kHanauerReplayUrl);
    REQUIRE(snapshots[3].tweet_id.has_value());
    CHECK(*snapshots[3].tweet_id == "1529220873697124353");

    CHECK(dedupe_snapshots({}).empty());
}

TEST_CASE("dedupe_snapshots matches a brute-force oracle on random input") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> id_pick(0, 5);
    std::uniform_int_distribution<int> count(0, 25);
    std::uniform_int_distribution<long long> ts_pick(20200101000000LL, 20221231235959LL);

    for (int round = 0; round < 60; ++round) {
        std::vector<CdxRecord> records;
        const int n = count(rng);
        for (int i = 0; i < n; ++i) {
            CdxRecord record;
            record.original = "https://twitter.com/user/status/" + std::to_string(id_pick(rng));
            record.capture_ts = std::to_string(ts_pick(rng));
            records.push_back(std::move(record));
        }
        const auto snapshots = dedupe_snapshots(records);

        // Brute force: min capture per original, unique originals.
        std::map<std::string, std::string> oracle;
        for (const auto& record : records) {
            auto it = oracle.find(record.original);
            if (it == oracle.end() || record.capture_ts < it->second)
                oracle[record.original] = record.capture_ts;
        }
        REQUIRE(snapshots.size() == oracle.size());
        CHECK(snapshots.size() <= records.size());
        for (std::size_t i = 0; i < snapshots.size(); ++i) {
            CHECK(oracle.at(snapshots[i].original) == snapshots[i].capture_ts);
            if (i > 0) CHECK(snapshots[i - 1].original < snapshots[i].original);

            // Replay URL decomposes back into capture_ts and original.
            const std::string& replay = snapshots[i].replay_url;
            REQUIRE(replay.rfind(kReplayPrefix, 0) == 0);
            const std::string rest = replay.substr(std::string(kReplayPrefix).size());
            const auto slash = rest.find('/');
            CHECK(rest.substr(0, slash) == snapshots[i].capture_ts);
            CHECK(rest.substr(slash + 1) == snapshots[i].original);
        }
    }
}

TEST_CASE("search_archives reproduces the recorded walkthrough offline") {
    FixtureTransport transport(fixture_path("wayback"));
    SearchOptions options;
    options.limiter = &fast_limiter();
    const auto snapshots = search_archives(hanauer_claim(), transport, options);
    REQUIRE(snapshots.size() == 4);
    const bool has_red_line = std::any_of(snapshots.begin(), snapshots.end(),
                                          [&](const ArchivedSnapshot& s) {
                                              return s.replay_url == kHanauerReplayUrl;
                                          });
    CHECK(has_red_line);
}

TEST_CASE("search_archives rejects unusable claims") {
    FixtureTransport transport(fixture_path("wayback"));
    SearchOptions options;
    options.limiter = &fast_limiter();

    ExtractedClaim no_timestamp = hanauer_claim();
    no_timestamp.timestamp.reset();
    no_timestamp.flags.insert(ClaimFlag::RelativeTimestampOnly);
    try {
        search_archives(no_timestamp, transport, options);
        FAIL("expected MissingField");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingField);
        CHECK(std::string(e.what()).find("timestamp") != std::string::npos);
    }

    ExtractedClaim no_handle = hanauer_claim();
    no_handle.handle.reset();
    try {
        search_archives(no_handle, transport, options);
        FAIL("expected MissingField");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingField);
        CHECK(std::string(e.what()).find("handle") != std::string::npos);
    }

    ExtractedClaim truncated = hanauer_claim();
    truncated.handle->truncated = true;
    try {
        search_archives(truncated, transport, options);
        FAIL("expected TruncatedHandleRejected");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TruncatedHandleRejected);
    }
}

TEST_CASE("search_archives drops /status subresources") {
    const std::string body =
        "k 20220525153810 https://twitter.com/NickHanauer/status/123 text/html 200 D 10\n"
        "k 20220525153811 https://twitter.com/NickHanauer/status/123/photo/1 text/html 200 D 10\n"
        "k 20220525153812 https://twitter.com/NickHanauer/status/123?lang=en text/html 200 D 10\n";
    ScriptedTransport transport({{200, body}});
    SearchOptions options;
    options.limiter = &fast_limiter();
    const auto snapshots = search_archives(hanauer_claim(), transport, options);
    REQUIRE(snapshots.size() == 1);
    CHECK(snapshots[0].original == "https://twitter.com/NickHanauer/status/123");
}
