#include "tweetshot/eval.hpp"

#include "tweetshot/errors.hpp"
#include "tweetshot/verifier.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <set>

namespace tweetshot {

namespace {

using json = nlohmann::json;

std::optional<std::string> optional_string(const json& object, const std::string& key,
                                           const std::string& item_id) {
    const auto it = object.find(key);
    if (it == object.end() || it->is_null()) return std::nullopt;
    if (!it->is_string())
        throw Error(ErrorCode::SchemaError,
                    "item '" + item_id + "': field '" + key + "' must be a string");
    return it->get<std::string>();
}

std::optional<std::string> predict(const OcrText& text, EvalField field, Method method,
                                   const DateTime& reference) {
    switch (field) {
    case EvalField::Timestamp:
        try {
            return extract_timestamp(text, method, reference).value.to_string();
        } catch (const Error& e) {
            if (e.code() == ErrorCode::NoTimestampFound ||
                e.code() == ErrorCode::RelativeTimestampOnly)
                return std::nullopt;
            throw;
        }
    case EvalField::Handle:
        try {
            return extract_handle(text).name;
        } catch (const Error& e) {
            if (e.code() == ErrorCode::NoHandleFound) return std::nullopt;
            throw;
        }
    case EvalField::Body:
        return extract_claim(text, method, reference).body;
    }
    return std::nullopt;
}

const std::optional<std::string>& gold_for(const GoldLabel& label, EvalField field) {
    switch (field) {
    case EvalField::Timestamp: return label.gold_timestamp;
    case EvalField::Handle: return label.gold_handle;
    case EvalField::Body: return label.gold_body;
    }
    return label.gold_timestamp;
}

std::function<bool(const std::string&, const std::string&)> equal_for(EvalField field) {
    switch (field) {
    case EvalField::Timestamp: return timestamp_equal;
    case EvalField::Handle: return handle_equal;
    case EvalField::Body: return body_equal;
    }
    return timestamp_equal;
}

} // namespace

const char* eval_field_name(EvalField field) {
    switch (field) {
    case EvalField::Timestamp: return "timestamp";
    case EvalField::Handle: return "handle";
    case EvalField::Body: return "body";
    }
    return "unknown";
}

std::vector<GoldLabel> load_manifest(const std::filesystem::path& manifest_path) {
    std::ifstream file(manifest_path);
    if (!file)
        throw Error(ErrorCode::IoError, "cannot open manifest: " + manifest_path.string());

    json doc;
    try {
        doc = json::parse(file);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::SchemaError,
                    "manifest " + manifest_path.string() + " is not valid JSON: " + e.what());
    }
    if (!doc.is_array())
        throw Error(ErrorCode::SchemaError, "manifest must be a JSON array of label objects");

    const auto base_dir = manifest_path.parent_path();
    std::vector<GoldLabel> labels;
    std::set<std::string> seen_ids;
    for (const auto& entry : doc) {
        if (!entry.is_object())
            throw Error(ErrorCode::SchemaError, "manifest entries must be JSON objects");
        if (!entry.contains("item_id") || !entry["item_id"].is_string())
            throw Error(ErrorCode::SchemaError, "manifest entry without a string item_id");
        GoldLabel label;
        label.item_id = entry["item_id"].get<std::string>();
        if (!seen_ids.insert(label.item_id).second)
            throw Error(ErrorCode::SchemaError, "duplicate item_id '" + label.item_id + "'");
        if (!entry.contains("ocr_text_path") || !entry["ocr_text_path"].is_string())
            throw Error(ErrorCode::SchemaError,
                        "item '" + label.item_id + "': missing string ocr_text_path");
        std::filesystem::path text_path = entry["ocr_text_path"].get<std::string>();
        if (text_path.is_relative()) text_path = base_dir / text_path;
        if (!std::filesystem::exists(text_path))
            throw Error(ErrorCode::SchemaError, "item '" + label.item_id +
                                                    "': ocr_text_path does not exist: " +
                                                    text_path.string());
        label.ocr_text_path = std::move(text_path);
        label.gold_handle = optional_string(entry, "gold_handle", label.item_id);
        label.gold_timestamp = optional_string(entry, "gold_timestamp", label.item_id);
        label.gold_body = optional_string(entry, "gold_body", label.item_id);
        label.notes = optional_string(entry, "notes", label.item_id);
        if (label.gold_timestamp) {
            try {
                DateTime::parse(*label.gold_timestamp);
            } catch (const Error& e) {
                throw Error(ErrorCode::SchemaError,
                            "item '" + label.item_id + "': bad gold_timestamp: " + e.what());
            }
        }
        labels.push_back(std::move(label));
    }
    return labels;
}

Outcome score_item(const std::optional<std::string>& predicted,
                   const std::optional<std::string>& gold,
                   const std::function<bool(const std::string&, const std::string&)>& equal) {
    if (predicted && gold) return equal(*predicted, *gold) ? Outcome::TP : Outcome::FP;
    if (predicted) return Outcome::FP;
    if (gold) return Outcome::FN;
    return Outcome::TN;
}

bool timestamp_equal(const std::string& a, const std::string& b) { return a == b; }

bool handle_equal(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    }
    return true;
}

bool body_equal(const std::string& a, const std::string& b) {
    return normalize_text(a) == normalize_text(b);
}

MetricsReport make_report(EvalField field, std::string method, const ConfusionCounts& counts) {
    MetricsReport report;
    report.field = field;
    report.method = std::move(method);
    report.counts = counts;
    const double total = static_cast<double>(counts.total());
    report.accuracy = total > 0 ? static_cast<double>(counts.tp + counts.tn) / total : 0.0;
    if (counts.tp + counts.fp > 0)
        report.precision = static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fp);
    if (counts.tp + counts.fn > 0)
        report.recall = static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fn);
    if (report.precision && report.recall && (*report.precision + *report.recall) > 0)
        report.f1 = 2.0 * *report.precision * *report.recall /
                    (*report.precision + *report.recall);
    return report;
}

MetricsReport evaluate(const std::vector<GoldLabel>& manifest, EvalField field, Method method,
                       const DateTime& reference) {
    if (manifest.empty())
        throw Error(ErrorCode::InvalidArgument, "manifest empty");

    ConfusionCounts counts;
    for (const GoldLabel& label : manifest) {
        std::optional<std::string> predicted;
        try {
            const OcrText text = load_ocr_text(label.ocr_text_path);
            predicted = predict(text, field, method, reference);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::IoError || e.code() == ErrorCode::EncodingError)
                throw Error(e.code(), "item '" + label.item_id + "': " + e.what());
            throw;
        }
        switch (score_item(predicted, gold_for(label, field), equal_for(field))) {
        case Outcome::TP: ++counts.tp; break;
        case Outcome::FP: ++counts.fp; break;
        case Outcome::FN: ++counts.fn; break;
        case Outcome::TN: ++counts.tn; break;
        }
    }
    const char* method_name = field == EvalField::Timestamp
                                  ? (method == Method::M1 ? "m1" : "m2")
                                  : "rule";
    return make_report(field, method_name, counts);
}

} // namespace tweetshot
