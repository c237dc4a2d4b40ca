#pragma once

#include "tweetshot/extraction.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tweetshot {

struct GoldLabel {
    std::string item_id;
    std::filesystem::path ocr_text_path;
    std::optional<std::string> gold_handle;
    std::optional<std::string> gold_timestamp; // canonical "YYYY-MM-DD HH:MM:SS"
    std::optional<std::string> gold_body;
    std::optional<std::string> notes;
};

struct ConfusionCounts {
    long tp = 0;
    long fp = 0;
    long fn = 0;
    long tn = 0;

    long total() const { return tp + fp + fn + tn; }
    bool operator==(const ConfusionCounts&) const = default;
};

enum class EvalField { Timestamp, Handle, Body };

const char* eval_field_name(EvalField field);

enum class Outcome { TP, FP, FN, TN };

/// Per-field metrics. precision/recall/f1 are null (not zero) when their
/// denominators vanish.
struct MetricsReport {
    EvalField field = EvalField::Timestamp;
    std::string method;
    ConfusionCounts counts;
    double accuracy = 0.0;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
};

/// Loads and validates a JSON manifest. Relative ocr_text_path entries
/// resolve against the manifest's directory. Duplicate item_id or a missing
/// text file is fatal. Throws Error{SchemaError, IoError}.
std::vector<GoldLabel> load_manifest(const std::filesystem::path& manifest_path);

/// TP iff both present and equal; FP iff predicted present and wrong or
/// unexpected; FN iff predicted absent but gold present; TN iff both absent.
Outcome score_item(const std::optional<std::string>& predicted,
                   const std::optional<std::string>& gold,
                   const std::function<bool(const std::string&, const std::string&)>& equal);

/// Field equivalences: timestamps on canonical rendering, handles
/// case-insensitively, bodies after normalize_text.
bool timestamp_equal(const std::string& a, const std::string& b);
bool handle_equal(const std::string& a, const std::string& b);
bool body_equal(const std::string& a, const std::string& b);

MetricsReport make_report(EvalField field, std::string method, const ConfusionCounts& counts);

/// Runs the field's extractor on every item with the fixed reference and
/// aggregates outcomes in manifest order. Throws Error{InvalidArgument} on
/// an empty manifest; IO failures carry the item_id.
MetricsReport evaluate(const std::vector<GoldLabel>& manifest, EvalField field, Method method,
                       const DateTime& reference);

} // namespace tweetshot
