#include "tweetshot/verifier.hpp"

#include "tweetshot/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <utility>

namespace tweetshot {

namespace {

// Case-insensitive search for a needle in ASCII markup.
std::size_t ifind(const std::string& haystack, const std::string& needle, std::size_t from) {
    const auto it = std::search(haystack.begin() + static_cast<std::ptrdiff_t>(from),
                                haystack.end(), needle.begin(), needle.end(),
                                [](unsigned char a, unsigned char b) {
                                    return std::tolower(a) == std::tolower(b);
                                });
    return it == haystack.end() ? std::string::npos
                                : static_cast<std::size_t>(it - haystack.begin());
}

void drop_element(std::string& html, const std::string& open_tag, const std::string& close_tag) {
    std::size_t pos = 0;
    while ((pos = ifind(html, open_tag, pos)) != std::string::npos) {
        const auto end = ifind(html, close_tag, pos);
        if (end == std::string::npos) {
            html.erase(pos);
            return;
        }
        html.erase(pos, end + close_tag.size() - pos);
    }
}

std::string decode_entities(const std::string& text) {
    static const std::array<std::pair<const char*, const char*>, 7> kEntities = {{
        {"&amp;", "&"},
        {"&lt;", "<"},
        {"&gt;", ">"},
        {"&quot;", "\""},
        {"&#39;", "'"},
        {"&apos;", "'"},
        {"&nbsp;", " "},
    }};
    std::string out = text;
    for (const auto& [entity, replacement] : kEntities) {
        std::size_t pos = 0;
        while ((pos = out.find(entity, pos)) != std::string::npos) {
            out.replace(pos, std::string(entity).size(), replacement);
            pos += std::string(replacement).size();
        }
    }
    return out;
}

} // namespace

const char* verdict_status_name(VerdictStatus status) {
    switch (status) {
    case VerdictStatus::ConfirmedReal: return "confirmed_real";
    case VerdictStatus::CandidateFound: return "candidate_found";
    case VerdictStatus::NoArchiveEvidence: return "no_archive_evidence";
    case VerdictStatus::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

double verdict_score(VerdictStatus status) {
    switch (status) {
    case VerdictStatus::ConfirmedReal: return 1.0;
    case VerdictStatus::CandidateFound: return 0.5;
    case VerdictStatus::NoArchiveEvidence: return 0.1;
    case VerdictStatus::Inconclusive: return 0.0;
    }
    return 0.0;
}

std::string normalize_text(std::string_view text) {
    static const std::array<std::string_view, 4> kWidePunct = {
        "\xE2\x80\x99", // ’
        "\xE2\x80\x9C", // “
        "\xE2\x80\x9D", // ”
        "\xE2\x80\xA6", // …
    };
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    std::size_t i = 0;
    while (i < text.size()) {
        bool dropped = false;
        for (const auto& punct : kWidePunct) {
            if (text.substr(i, punct.size()) == punct) {
                i += punct.size();
                dropped = true;
                break;
            }
        }
        if (dropped) continue;
        const char c = text[i++];
        switch (c) {
        case '.':
        case ',':
        case '!':
        case '?':
        case '\'':
        case '"':
            continue;
        default:
            break;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = true;
            continue;
        }
        if (pending_space && !out.empty()) out.push_back(' ');
        pending_space = false;
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

std::string strip_markup(const std::string& html) {
    std::string work = html;
    drop_element(work, "<script", "</script>");
    drop_element(work, "<style", "</style>");

    std::string text;
    text.reserve(work.size());
    bool in_tag = false;
    for (const char c : work) {
        if (c == '<') {
            in_tag = true;
            text.push_back(' '); // keep adjacent element text separated
        } else if (c == '>') {
            in_tag = false;
        } else if (!in_tag) {
            text.push_back(c);
        }
    }
    return decode_entities(text);
}

bool match_snapshot(const ExtractedClaim& claim, const ArchivedSnapshot& snapshot,
                    Transport& transport, const FetchPolicy& policy, RateLimiter* limiter) {
    if (!claim.body || claim.body->empty())
        throw Error(ErrorCode::MissingField, "claim is missing field: body");
    const std::string page = fetch_with_policy(transport, snapshot.replay_url, policy, limiter);
    const std::string page_text = normalize_text(strip_markup(page));
    const std::string needle = normalize_text(*claim.body);
    return !needle.empty() && page_text.find(needle) != std::string::npos;
}

Verdict verify(const ExtractedClaim& claim, const std::vector<ArchivedSnapshot>& snapshots,
               Transport& transport, const VerifyOptions& options) {
    Verdict verdict;
    if (snapshots.empty()) {
        verdict.status = VerdictStatus::NoArchiveEvidence;
        verdict.score = verdict_score(verdict.status);
        verdict.notes.push_back("no archived snapshots found in the query window");
        return verdict;
    }
    if (!options.fetch_pages) {
        verdict.status = VerdictStatus::CandidateFound;
        verdict.score = verdict_score(verdict.status);
        verdict.notes.push_back("candidate snapshot: " + snapshots.front().replay_url);
        verdict.notes.push_back(std::to_string(snapshots.size()) +
                                " snapshot(s) found; pages not fetched");
        return verdict;
    }
    if (!claim.body || claim.body->empty()) {
        verdict.status = VerdictStatus::CandidateFound;
        verdict.score = verdict_score(verdict.status);
        verdict.notes.push_back("candidate snapshot: " + snapshots.front().replay_url);
        verdict.notes.push_back("claim body unavailable; page text cannot be matched");
        return verdict;
    }

    bool any_fetch_succeeded = false;
    for (const ArchivedSnapshot& snapshot : snapshots) {
        try {
            if (match_snapshot(claim, snapshot, transport, options.policy, options.limiter)) {
                verdict.status = VerdictStatus::ConfirmedReal;
                verdict.score = verdict_score(verdict.status);
                verdict.matched_snapshot = snapshot;
                verdict.notes.push_back("claim text found in " + snapshot.replay_url);
                return verdict;
            }
            any_fetch_succeeded = true;
            verdict.notes.push_back("no text match in " + snapshot.replay_url);
        } catch (const Error& e) {
            verdict.notes.push_back("fetch failed for " + snapshot.replay_url + ": " + e.what());
        }
    }
    verdict.status =
        any_fetch_succeeded ? VerdictStatus::CandidateFound : VerdictStatus::Inconclusive;
    verdict.score = verdict_score(verdict.status);
    return verdict;
}

} // namespace tweetshot
