#pragma once

#include "tweetshot/archive_client.hpp"
#include "tweetshot/errors.hpp"
#include "tweetshot/ocr_text.hpp"
#include "tweetshot/transport.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

#ifndef TWEETSHOT_FIXTURE_DIR
#define TWEETSHOT_FIXTURE_DIR "fixtures"
#endif

namespace tweetshot::test {

inline std::string fixture_path(const std::string& relative) {
    return std::string(TWEETSHOT_FIXTURE_DIR) + "/" + relative;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    std::string content((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    return content;
}

/// Unique scratch directory, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
        path_ = std::filesystem::temp_directory_path() /
                ("tweetshot_test_" + std::to_string(stamp) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

    std::filesystem::path write(const std::string& name, const std::string& content,
                                bool executable = false) const {
        const auto file_path = path_ / name;
        {
            std::ofstream file(file_path, std::ios::binary);
            file << content;
        }
        if (executable)
            std::filesystem::permissions(file_path, std::filesystem::perms::owner_all |
                                                        std::filesystem::perms::group_read |
                                                        std::filesystem::perms::others_read);
        return file_path;
    }

private:
    std::filesystem::path path_;
};

inline OcrText make_text(std::vector<std::string> lines) {
    OcrText text;
    text.lines = std::move(lines);
    return text;
}

/// Replays a fixed response sequence regardless of URL; records every request.
class ScriptedTransport : public Transport {
public:
    explicit ScriptedTransport(std::vector<HttpResponse> script) : script_(std::move(script)) {}

    HttpResponse get(const std::string& url) override {
        requests.push_back(url);
        if (next_ >= script_.size())
            throw Error(ErrorCode::NetworkError, "scripted transport exhausted for " + url);
        return script_[next_++];
    }

    std::vector<std::string> requests;

private:
    std::vector<HttpResponse> script_;
    std::size_t next_ = 0;
};

/// Routes by exact URL; unknown URLs get a 404.
class MapTransport : public Transport {
public:
    HttpResponse get(const std::string& url) override {
        requests.push_back(url);
        const auto it = routes.find(url);
        if (it == routes.end()) return {404, ""};
        return it->second;
    }

    std::map<std::string, HttpResponse> routes;
    std::vector<std::string> requests;
};

/// Always throws a transport-level failure.
class DeadTransport : public Transport {
public:
    HttpResponse get(const std::string& url) override {
        requests.push_back(url);
        throw Error(ErrorCode::NetworkError, "connection refused");
    }

    std::vector<std::string> requests;
};

inline FetchPolicy fast_policy() {
    FetchPolicy policy;
    policy.initial_backoff = std::chrono::milliseconds(1);
    return policy;
}

inline RateLimiter& fast_limiter() {
    static RateLimiter limiter(8, std::chrono::milliseconds(0));
    return limiter;
}

} // namespace tweetshot::test
