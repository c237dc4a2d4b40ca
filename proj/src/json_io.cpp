#include "tweetshot/json_io.hpp"

#include "tweetshot/errors.hpp"

#include <cstdio>
#include <sstream>

namespace tweetshot {

namespace {

const char* source_kind_name(OcrSource source) {
    return source == OcrSource::EngineRun ? "engine_run" : "text_file";
}

std::string format_percent(const std::optional<double>& value) {
    if (!value) return "n/a";
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.1f%%", *value * 100.0);
    return buffer;
}

} // namespace

ordered_json claim_to_json(const ExtractedClaim& claim) {
    ordered_json j;
    if (claim.handle) {
        j["handle"] = ordered_json{{"name", claim.handle->name},
                                   {"truncated", claim.handle->truncated}};
    } else {
        j["handle"] = nullptr;
    }
    j["timestamp"] = claim.timestamp ? ordered_json(claim.timestamp->value.to_string())
                                     : ordered_json(nullptr);
    j["body"] = claim.body ? ordered_json(*claim.body) : ordered_json(nullptr);
    ordered_json flags = ordered_json::array();
    for (const ClaimFlag flag : claim.flags) flags.push_back(claim_flag_name(flag));
    j["flags"] = std::move(flags);
    j["source"] = ordered_json{
        {"kind", source_kind_name(claim.source.source)},
        {"image_ref",
         claim.source.image_ref ? ordered_json(*claim.source.image_ref) : ordered_json(nullptr)}};
    return j;
}

ExtractedClaim claim_from_json(const ordered_json& j) {
    if (!j.is_object())
        throw Error(ErrorCode::SchemaError, "claim JSON must be an object");
    ExtractedClaim claim;
    if (j.contains("handle") && !j["handle"].is_null()) {
        const auto& h = j["handle"];
        if (!h.is_object() || !h.contains("name") || !h["name"].is_string())
            throw Error(ErrorCode::SchemaError, "claim handle must be {name, truncated}");
        claim.handle = Handle{h["name"].get<std::string>(), 0, h.value("truncated", false)};
    }
    if (j.contains("timestamp") && !j["timestamp"].is_null()) {
        if (!j["timestamp"].is_string())
            throw Error(ErrorCode::SchemaError, "claim timestamp must be a string");
        const std::string canonical = j["timestamp"].get<std::string>();
        ResolvedTimestamp ts;
        ts.value = DateTime::parse(canonical);
        ts.resolved_from.raw = canonical;
        ts.resolved_from.date_part_raw = canonical.substr(0, 10);
        ts.resolved_from.span = {0, canonical.size()};
        for (const DateField f : {DateField::Year, DateField::Month, DateField::Day,
                                  DateField::Hour, DateField::Minute, DateField::Second})
            ts.resolved_from.explicit_fields.insert(f);
        claim.timestamp = std::move(ts);
    }
    if (j.contains("body") && !j["body"].is_null()) {
        if (!j["body"].is_string())
            throw Error(ErrorCode::SchemaError, "claim body must be a string");
        claim.body = j["body"].get<std::string>();
    }
    if (j.contains("flags")) {
        if (!j["flags"].is_array())
            throw Error(ErrorCode::SchemaError, "claim flags must be an array");
        for (const auto& flag : j["flags"]) {
            const std::string name = flag.get<std::string>();
            bool known = false;
            for (const ClaimFlag f :
                 {ClaimFlag::RelativeTimestampOnly, ClaimFlag::TruncatedHandle,
                  ClaimFlag::NoHandleFound, ClaimFlag::NoTimestampFound, ClaimFlag::EmptyBody}) {
                if (name == claim_flag_name(f)) {
                    claim.flags.insert(f);
                    known = true;
                    break;
                }
            }
            if (!known)
                throw Error(ErrorCode::SchemaError, "unknown claim flag '" + name + "'");
        }
    }
    if (j.contains("source") && j["source"].is_object()) {
        const auto& s = j["source"];
        if (s.value("kind", "text_file") == std::string("engine_run"))
            claim.source.source = OcrSource::EngineRun;
        if (s.contains("image_ref") && s["image_ref"].is_string())
            claim.source.image_ref = s["image_ref"].get<std::string>();
    }
    return claim;
}

ordered_json snapshot_to_json(const ArchivedSnapshot& snapshot) {
    ordered_json j;
    j["original"] = snapshot.original;
    j["capture_ts"] = snapshot.capture_ts;
    j["replay_url"] = snapshot.replay_url;
    j["tweet_id"] = snapshot.tweet_id ? ordered_json(*snapshot.tweet_id) : ordered_json(nullptr);
    return j;
}

ordered_json snapshots_to_json(const std::vector<ArchivedSnapshot>& snapshots) {
    ordered_json array = ordered_json::array();
    for (const auto& snapshot : snapshots) array.push_back(snapshot_to_json(snapshot));
    return array;
}

ordered_json verdict_to_json(const Verdict& verdict) {
    ordered_json j;
    j["status"] = verdict_status_name(verdict.status);
    j["score"] = verdict.score;
    j["score_model"] = kScoreModel;
    j["matched_snapshot"] = verdict.matched_snapshot ? snapshot_to_json(*verdict.matched_snapshot)
                                                     : ordered_json(nullptr);
    ordered_json notes = ordered_json::array();
    for (const auto& note : verdict.notes) notes.push_back(note);
    j["notes"] = std::move(notes);
    return j;
}

ordered_json report_to_json(const MetricsReport& report) {
    ordered_json j;
    j["field"] = eval_field_name(report.field);
    j["method"] = report.method;
    j["counts"] = ordered_json{{"tp", report.counts.tp},
                               {"fp", report.counts.fp},
                               {"fn", report.counts.fn},
                               {"tn", report.counts.tn}};
    j["accuracy"] = report.accuracy;
    j["precision"] = report.precision ? ordered_json(*report.precision) : ordered_json(nullptr);
    j["recall"] = report.recall ? ordered_json(*report.recall) : ordered_json(nullptr);
    j["f1"] = report.f1 ? ordered_json(*report.f1) : ordered_json(nullptr);
    return j;
}

ordered_json reports_to_json(const std::vector<MetricsReport>& reports) {
    ordered_json array = ordered_json::array();
    for (const auto& report : reports) array.push_back(report_to_json(report));
    return array;
}

std::string reports_to_table(const std::vector<MetricsReport>& reports) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof(line), "%-10s %-7s %9s %10s %8s %9s\n", "Field", "Method",
                  "Accuracy", "Precision", "Recall", "F1 Score");
    out << line;
    for (const auto& report : reports) {
        std::snprintf(line, sizeof(line), "%-10s %-7s %9s %10s %8s %9s\n",
                      eval_field_name(report.field), report.method.c_str(),
                      format_percent(report.accuracy).c_str(),
                      format_percent(report.precision).c_str(),
                      format_percent(report.recall).c_str(), format_percent(report.f1).c_str());
        out << line;
    }
    return out.str();
}

ordered_json error_to_json(const Error& error, const std::string& stage) {
    ordered_json j;
    j["error"] = ordered_json{{"code", error_code_name(error.code())},
                              {"message", error.what()},
                              {"stage", stage}};
    return j;
}

} // namespace tweetshot
