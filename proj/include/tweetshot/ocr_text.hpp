#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tweetshot {

enum class OcrSource { EngineRun, TextFile };

/// Line-structured text recovered from a screenshot. Immutable by
/// convention once built; lines keep their original top-to-bottom order and
/// never contain embedded line breaks. Blank lines are kept — the body
/// extractor relies on vertical structure.
struct OcrText {
    std::vector<std::string> lines;
    OcrSource source = OcrSource::TextFile;
    std::optional<std::string> image_ref;
    std::size_t replaced_sequences = 0; // invalid UTF-8 runs replaced with U+FFFD

    std::string joined() const;
};

struct OcrRunOptions {
    std::chrono::milliseconds timeout{30000};
};

/// Default engine command template: TWEETSHOT_OCR_CMD if set, otherwise a
/// Tesseract-compatible CLI writing UTF-8 to stdout.
std::string default_engine_cmd();

/// Cap on concurrently running engine processes (default 4).
void set_max_engine_jobs(int jobs);

/// Runs the external OCR engine on an image. engine_cmd must contain an
/// {input} placeholder; it is split on whitespace before substitution so
/// paths with spaces stay a single argument.
/// Throws Error{EngineNotFound, EngineFailed, EmptyOutput, InvalidArgument}.
OcrText run_ocr(const std::filesystem::path& image_path, const std::string& engine_cmd,
                const OcrRunOptions& options = {});

/// Loads pre-extracted OCR text from a UTF-8 file. Line content is preserved
/// byte-for-byte apart from line terminators (LF and CRLF both accepted).
/// Throws Error{IoError, EncodingError (with byte offset)}.
OcrText load_ocr_text(const std::filesystem::path& text_path);

/// Composes common Latin base+combining-mark pairs into their precomposed
/// code points so downstream token rules see consistent text.
std::string normalize_composed(const std::string& utf8);

/// Replaces invalid UTF-8 sequences with U+FFFD; returns the replacement count.
std::size_t sanitize_utf8(std::string& utf8);

/// Byte offset of the first invalid UTF-8 sequence, if any.
std::optional<std::size_t> find_invalid_utf8(const std::string& utf8);

} // namespace tweetshot
