#include "tweetshot/transport.hpp"

#include "tweetshot/errors.hpp"

#include <httplib.h>

#include <fstream>
#include <sstream>

namespace tweetshot {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorCode::IoError, "cannot open fixture file: " + path.string());
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

std::string first_line(const std::string& text) {
    const auto pos = text.find_first_of("\r\n");
    return pos == std::string::npos ? text : text.substr(0, pos);
}

// scheme://host[:port] and the request target, for httplib.
std::pair<std::string, std::string> split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw Error(ErrorCode::NetworkError, "malformed URL (no scheme): " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

} // namespace

HttpResponse HttpTransport::get(const std::string& url) {
    const auto [base, target] = split_url(url);
    httplib::Client client(base);
    client.set_connection_timeout(timeout_seconds_, 0);
    client.set_read_timeout(timeout_seconds_, 0);
    client.set_follow_location(true);

    auto result = client.Get(target);
    if (!result)
        throw Error(ErrorCode::NetworkError,
                    "GET " + url + " failed: " + httplib::to_string(result.error()));
    return {result->status, result->body};
}

FixtureTransport::FixtureTransport(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec) || ec)
        throw Error(ErrorCode::IoError, "fixture directory not found: " + dir.string());
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".url") continue;
        const std::string url = first_line(read_file(entry.path()));
        HttpResponse response{200, {}};
        auto body_path = entry.path();
        body_path.replace_extension(".body");
        if (std::filesystem::exists(body_path)) response.body = read_file(body_path);
        auto status_path = entry.path();
        status_path.replace_extension(".status");
        if (std::filesystem::exists(status_path))
            response.status = std::stoi(first_line(read_file(status_path)));
        responses_[url] = std::move(response);
    }
}

HttpResponse FixtureTransport::get(const std::string& url) {
    const auto it = responses_.find(url);
    if (it == responses_.end()) return {404, "no fixture recorded for " + url};
    return it->second;
}

} // namespace tweetshot
