#pragma once

#include "tweetshot/archive_client.hpp"
#include "tweetshot/errors.hpp"
#include "tweetshot/eval.hpp"
#include "tweetshot/extraction.hpp"
#include "tweetshot/verifier.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace tweetshot {

// All serializers emit nlohmann::ordered_json with a fixed key order so CLI
// output is byte-stable and golden-file diffable.
using ordered_json = nlohmann::ordered_json;

ordered_json claim_to_json(const ExtractedClaim& claim);
ExtractedClaim claim_from_json(const ordered_json& j); // throws Error{SchemaError}

ordered_json snapshot_to_json(const ArchivedSnapshot& snapshot);
ordered_json snapshots_to_json(const std::vector<ArchivedSnapshot>& snapshots);

ordered_json verdict_to_json(const Verdict& verdict);

ordered_json report_to_json(const MetricsReport& report);
ordered_json reports_to_json(const std::vector<MetricsReport>& reports);

/// Aligned plain-text table with Accuracy / Precision / Recall / F1 Score
/// columns, one row per report.
std::string reports_to_table(const std::vector<MetricsReport>& reports);

ordered_json error_to_json(const Error& error, const std::string& stage);

} // namespace tweetshot
