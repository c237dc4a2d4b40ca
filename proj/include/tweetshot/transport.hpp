#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace tweetshot {

struct HttpResponse {
    int status = 0;
    std::string body;
};

/// Injectable HTTP GET so the whole pipeline runs from recorded fixtures.
/// Implementations throw Error{NetworkError} for transport-level failures;
/// HTTP status codes are returned, not thrown.
class Transport {
public:
    virtual ~Transport() = default;
    virtual HttpResponse get(const std::string& url) = 0;
};

/// Live transport backed by cpp-httplib.
class HttpTransport : public Transport {
public:
    explicit HttpTransport(int timeout_seconds = 30) : timeout_seconds_(timeout_seconds) {}
    HttpResponse get(const std::string& url) override;

private:
    int timeout_seconds_;
};

/// Replays recorded responses from a directory of <name>.url / <name>.body
/// pairs (optional <name>.status, default 200). Requests whose exact URL was
/// not recorded get a 404.
class FixtureTransport : public Transport {
public:
    explicit FixtureTransport(const std::filesystem::path& dir);
    HttpResponse get(const std::string& url) override;

private:
    std::map<std::string, HttpResponse> responses_;
};

} // namespace tweetshot
