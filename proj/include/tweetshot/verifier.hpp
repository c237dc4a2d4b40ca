#pragma once

#include "tweetshot/archive_client.hpp"
#include "tweetshot/extraction.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tweetshot {

enum class VerdictStatus { ConfirmedReal, CandidateFound, NoArchiveEvidence, Inconclusive };

const char* verdict_status_name(VerdictStatus status);

/// Fixed placeholder score mapping; never a calibrated probability, which is
/// why serialized verdicts carry kScoreModel.
double verdict_score(VerdictStatus status);

inline constexpr const char* kScoreModel = "heuristic-v1";

struct Verdict {
    VerdictStatus status = VerdictStatus::Inconclusive;
    std::optional<ArchivedSnapshot> matched_snapshot; // present iff ConfirmedReal
    double score = 0.0;
    std::vector<std::string> notes;
};

/// Casefolds, collapses whitespace runs, trims, and removes the characters
/// . , ! ? ' " and their curly/ellipsis variants. Idempotent.
std::string normalize_text(std::string_view text);

/// Markup tags -> spaces; script/style contents dropped; a handful of
/// common entities decoded.
std::string strip_markup(const std::string& html);

/// True iff the normalized claim body is a substring of the normalized
/// visible text of the replay page. Requires claim.body present and
/// non-empty. Network failures propagate for the caller to degrade.
bool match_snapshot(const ExtractedClaim& claim, const ArchivedSnapshot& snapshot,
                    Transport& transport, const FetchPolicy& policy = {},
                    RateLimiter* limiter = nullptr);

struct VerifyOptions {
    bool fetch_pages = false;
    FetchPolicy policy;
    RateLimiter* limiter = nullptr;
};

/// Deterministic verdict; fetch errors degrade to Inconclusive with notes,
/// never to an exception.
Verdict verify(const ExtractedClaim& claim, const std::vector<ArchivedSnapshot>& snapshots,
               Transport& transport, const VerifyOptions& options = {});

} // namespace tweetshot
