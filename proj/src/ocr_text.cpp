#include "tweetshot/ocr_text.hpp"

#include "tweetshot/errors.hpp"

#include <algorithm>
#include <array>
#include <cerrno>
#include <condition_variable>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>
#include <utility>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

namespace tweetshot {

namespace {

constexpr const char* kReplacementChar = "\xEF\xBF\xBD"; // U+FFFD

// Bounded slots for concurrently running engine processes.
class JobSlots {
public:
    void set_limit(int limit) {
        std::lock_guard lock(mutex_);
        limit_ = std::max(1, limit);
        cv_.notify_all();
    }

    void acquire() {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [&] { return active_ < limit_; });
        ++active_;
    }

    void release() {
        std::lock_guard lock(mutex_);
        --active_;
        cv_.notify_one();
    }

private:
    std::mutex mutex_;
    std::condition_variable cv_;
    int limit_ = 4;
    int active_ = 0;
};

JobSlots& job_slots() {
    static JobSlots slots;
    return slots;
}

// Decodes one UTF-8 sequence at `pos`; returns the code point and advances
// pos, or returns nullopt (pos untouched) for an invalid sequence.
std::optional<char32_t> decode_utf8(const std::string& s, std::size_t& pos) {
    const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
    const unsigned char b0 = byte(pos);
    std::size_t len = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
        pos += 1;
        return b0;
    } else if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        return std::nullopt;
    }
    if (pos + len > s.size()) return std::nullopt;
    for (std::size_t i = 1; i < len; ++i) {
        const unsigned char b = byte(pos + i);
        if ((b & 0xC0) != 0x80) return std::nullopt;
        cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong encodings, surrogates, and out-of-range values.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000))
        return std::nullopt;
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return std::nullopt;
    pos += len;
    return cp;
}

void encode_utf8(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Canonical composition for the combining marks OCR output actually
// produces over Latin text: grave, acute, circumflex, tilde, diaeresis,
// ring above, cedilla.
std::optional<char32_t> compose_pair(char32_t base, char32_t mark) {
    struct Entry {
        char32_t base;
        char32_t mark;
        char32_t composed;
    };
    static constexpr Entry kTable[] = {
        {U'A', 0x300, 0xC0}, {U'A', 0x301, 0xC1}, {U'A', 0x302, 0xC2}, {U'A', 0x303, 0xC3},
        {U'A', 0x308, 0xC4}, {U'A', 0x30A, 0xC5}, {U'C', 0x327, 0xC7}, {U'E', 0x300, 0xC8},
        {U'E', 0x301, 0xC9}, {U'E', 0x302, 0xCA}, {U'E', 0x308, 0xCB}, {U'I', 0x300, 0xCC},
        {U'I', 0x301, 0xCD}, {U'I', 0x302, 0xCE}, {U'I', 0x308, 0xCF}, {U'N', 0x303, 0xD1},
        {U'O', 0x300, 0xD2}, {U'O', 0x301, 0xD3}, {U'O', 0x302, 0xD4}, {U'O', 0x303, 0xD5},
        {U'O', 0x308, 0xD6}, {U'U', 0x300, 0xD9}, {U'U', 0x301, 0xDA}, {U'U', 0x302, 0xDB},
        {U'U', 0x308, 0xDC}, {U'Y', 0x301, 0xDD}, {U'Y', 0x308, 0x178}, {U'a', 0x300, 0xE0},
        {U'a', 0x301, 0xE1}, {U'a', 0x302, 0xE2}, {U'a', 0x303, 0xE3}, {U'a', 0x308, 0xE4},
        {U'a', 0x30A, 0xE5}, {U'c', 0x327, 0xE7}, {U'e', 0x300, 0xE8}, {U'e', 0x301, 0xE9},
        {U'e', 0x302, 0xEA}, {U'e', 0x308, 0xEB}, {U'i', 0x300, 0xEC}, {U'i', 0x301, 0xED},
        {U'i', 0x302, 0xEE}, {U'i', 0x308, 0xEF}, {U'n', 0x303, 0xF1}, {U'o', 0x300, 0xF2},
        {U'o', 0x301, 0xF3}, {U'o', 0x302, 0xF4}, {U'o', 0x303, 0xF5}, {U'o', 0x308, 0xF6},
        {U'u', 0x300, 0xF9}, {U'u', 0x301, 0xFA}, {U'u', 0x302, 0xFB}, {U'u', 0x308, 0xFC},
        {U'y', 0x301, 0xFD}, {U'y', 0x308, 0xFF},
    };
    for (const auto& e : kTable) {
        if (e.base == base && e.mark == mark) return e.composed;
    }
    return std::nullopt;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '\n') {
            std::string line = text.substr(start, i - start);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            lines.push_back(std::move(line));
            start = i + 1;
        }
    }
    // A trailing newline does not start a new (empty) final line.
    if (!text.empty() && text.back() == '\n') lines.pop_back();
    if (text.empty()) lines.clear();
    return lines;
}

void rstrip(std::string& s) {
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\f' || s.back() == '\v'))
        s.pop_back();
}

std::vector<std::string> split_command_template(const std::string& engine_cmd,
                                                const std::string& input_path) {
    std::vector<std::string> argv;
    std::istringstream stream(engine_cmd);
    std::string token;
    bool saw_placeholder = false;
    while (stream >> token) {
        std::size_t pos;
        while ((pos = token.find("{input}")) != std::string::npos) {
            token.replace(pos, 7, input_path);
            saw_placeholder = true;
        }
        argv.push_back(token);
    }
    if (argv.empty() || !saw_placeholder)
        throw Error(ErrorCode::InvalidArgument,
                    "engine command template must contain an {input} placeholder: '" + engine_cmd +
                        "'");
    return argv;
}

struct EngineOutput {
    std::string out;
    std::string err;
    int exit_code = 0;
};

EngineOutput run_engine_process(const std::vector<std::string>& argv,
                                std::chrono::milliseconds timeout) {
    int out_pipe[2], err_pipe[2], exec_pipe[2];
    if (pipe(out_pipe) != 0 || pipe(err_pipe) != 0 || pipe(exec_pipe) != 0)
        throw Error(ErrorCode::EngineFailed, std::string("pipe: ") + std::strerror(errno));
    fcntl(exec_pipe[1], F_SETFD, FD_CLOEXEC);

    const pid_t pid = fork();
    if (pid < 0) throw Error(ErrorCode::EngineFailed, std::string("fork: ") + std::strerror(errno));

    if (pid == 0) {
        dup2(out_pipe[1], STDOUT_FILENO);
        dup2(err_pipe[1], STDERR_FILENO);
        close(out_pipe[0]);
        close(out_pipe[1]);
        close(err_pipe[0]);
        close(err_pipe[1]);
        close(exec_pipe[0]);
        std::vector<char*> raw;
        raw.reserve(argv.size() + 1);
        for (const auto& a : argv) raw.push_back(const_cast<char*>(a.c_str()));
        raw.push_back(nullptr);
        execvp(raw[0], raw.data());
        const int err = errno; // exec failed: report errno through the CLOEXEC pipe
        (void)!write(exec_pipe[1], &err, sizeof(err));
        _exit(127);
    }

    close(out_pipe[1]);
    close(err_pipe[1]);
    close(exec_pipe[1]);

    int exec_errno = 0;
    if (read(exec_pipe[0], &exec_errno, sizeof(exec_errno)) == sizeof(exec_errno)) {
        close(exec_pipe[0]);
        close(out_pipe[0]);
        close(err_pipe[0]);
        waitpid(pid, nullptr, 0);
        if (exec_errno == ENOENT || exec_errno == EACCES)
            throw Error(ErrorCode::EngineNotFound,
                        "engine not executable: " + argv[0] + " (" + std::strerror(exec_errno) + ")");
        throw Error(ErrorCode::EngineFailed,
                    "engine exec failed: " + argv[0] + " (" + std::strerror(exec_errno) + ")");
    }
    close(exec_pipe[0]);

    EngineOutput result;
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    std::array<pollfd, 2> fds{{{out_pipe[0], POLLIN, 0}, {err_pipe[0], POLLIN, 0}}};
    std::array<std::string*, 2> sinks{&result.out, &result.err};
    std::array<bool, 2> open{true, true};
    bool timed_out = false;

    while (open[0] || open[1]) {
        const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
            deadline - std::chrono::steady_clock::now());
        if (remaining.count() <= 0) {
            timed_out = true;
            break;
        }
        for (std::size_t i = 0; i < 2; ++i) fds[i].events = open[i] ? POLLIN : 0;
        const int rc = poll(fds.data(), fds.size(), static_cast<int>(remaining.count()));
        if (rc < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (rc == 0) {
            timed_out = true;
            break;
        }
        for (std::size_t i = 0; i < 2; ++i) {
            if (!open[i] || !(fds[i].revents & (POLLIN | POLLHUP))) continue;
            char buf[4096];
            const ssize_t n = read(fds[i].fd, buf, sizeof(buf));
            if (n > 0)
                sinks[i]->append(buf, static_cast<std::size_t>(n));
            else
                open[i] = false;
        }
    }
    close(out_pipe[0]);
    close(err_pipe[0]);

    if (timed_out) {
        kill(pid, SIGKILL);
        waitpid(pid, nullptr, 0);
        throw Error(ErrorCode::EngineFailed,
                    "engine timed out after " + std::to_string(timeout.count()) + " ms: " + argv[0]);
    }

    int status = 0;
    waitpid(pid, &status, 0);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
    return result;
}

bool all_whitespace(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

} // namespace

std::string OcrText::joined() const {
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i) out.push_back('\n');
        out += lines[i];
    }
    return out;
}

std::string default_engine_cmd() {
    if (const char* env = std::getenv("TWEETSHOT_OCR_CMD"); env && *env) return env;
    return "tesseract {input} stdout";
}

void set_max_engine_jobs(int jobs) { job_slots().set_limit(jobs); }

std::optional<std::size_t> find_invalid_utf8(const std::string& utf8) {
    std::size_t pos = 0;
    while (pos < utf8.size()) {
        if (!decode_utf8(utf8, pos)) return pos;
    }
    return std::nullopt;
}

std::size_t sanitize_utf8(std::string& utf8) {
    std::string out;
    out.reserve(utf8.size());
    std::size_t replaced = 0;
    std::size_t pos = 0;
    while (pos < utf8.size()) {
        const std::size_t before = pos;
        if (decode_utf8(utf8, pos)) {
            out.append(utf8, before, pos - before);
        } else {
            out += kReplacementChar;
            ++replaced;
            ++pos;
            // Swallow the rest of the broken sequence in one replacement.
            while (pos < utf8.size() && (static_cast<unsigned char>(utf8[pos]) & 0xC0) == 0x80)
                ++pos;
        }
    }
    utf8 = std::move(out);
    return replaced;
}

std::string normalize_composed(const std::string& utf8) {
    std::vector<char32_t> points;
    points.reserve(utf8.size());
    std::size_t pos = 0;
    while (pos < utf8.size()) {
        auto cp = decode_utf8(utf8, pos);
        if (!cp) { // callers sanitize first; defend anyway
            points.push_back(0xFFFD);
            ++pos;
            continue;
        }
        if (!points.empty()) {
            if (auto composed = compose_pair(points.back(), *cp)) {
                points.back() = *composed;
                continue;
            }
        }
        points.push_back(*cp);
    }
    std::string out;
    out.reserve(utf8.size());
    for (char32_t cp : points) encode_utf8(cp, out);
    return out;
}

OcrText load_ocr_text(const std::filesystem::path& text_path) {
    std::ifstream file(text_path, std::ios::binary);
    if (!file)
        throw Error(ErrorCode::IoError, "cannot open OCR text file: " + text_path.string());
    std::ostringstream buffer;
    buffer << file.rdbuf();
    std::string content = buffer.str();

    if (auto offset = find_invalid_utf8(content))
        throw Error(ErrorCode::EncodingError, "invalid UTF-8 in " + text_path.string() +
                                                  " at byte offset " + std::to_string(*offset));
    content = normalize_composed(content);

    OcrText text;
    text.source = OcrSource::TextFile;
    if (!content.empty()) text.lines = split_lines(content);
    return text;
}

OcrText run_ocr(const std::filesystem::path& image_path, const std::string& engine_cmd,
                const OcrRunOptions& options) {
    std::error_code ec;
    if (!std::filesystem::exists(image_path, ec) || ec)
        throw Error(ErrorCode::IoError, "image file not found: " + image_path.string());

    const auto argv = split_command_template(engine_cmd, image_path.string());

    job_slots().acquire();
    EngineOutput output;
    try {
        output = run_engine_process(argv, options.timeout);
    } catch (...) {
        job_slots().release();
        throw;
    }
    job_slots().release();

    if (output.exit_code != 0)
        throw Error(ErrorCode::EngineFailed, "engine exited with status " +
                                                 std::to_string(output.exit_code) + ": " +
                                                 output.err);
    if (output.out.empty() || all_whitespace(output.out))
        throw Error(ErrorCode::EmptyOutput,
                    "engine produced no text for " + image_path.string());

    OcrText text;
    text.source = OcrSource::EngineRun;
    text.image_ref = image_path.string();
    text.replaced_sequences = sanitize_utf8(output.out);
    output.out = normalize_composed(output.out);
    text.lines = split_lines(output.out);
    for (auto& line : text.lines) rstrip(line);
    return text;
}

} // namespace tweetshot
