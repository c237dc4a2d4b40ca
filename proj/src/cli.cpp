#include "tweetshot/cli.hpp"

#include "tweetshot/archive_client.hpp"
#include "tweetshot/errors.hpp"
#include "tweetshot/eval.hpp"
#include "tweetshot/extraction.hpp"
#include "tweetshot/json_io.hpp"
#include "tweetshot/ocr_text.hpp"
#include "tweetshot/transport.hpp"
#include "tweetshot/verifier.hpp"

#include <CLI11.hpp>

#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace tweetshot {

namespace {

struct CliOptions {
    std::string input;
    std::string method = "m2";
    std::string reference;
    std::string cdx_endpoint = kDefaultCdxEndpoint;
    int window_days = 1;
    bool fetch_pages = false;
    std::string fixtures_dir;
    int jobs = 4;
    std::string format = "json";
    std::string engine_cmd;
};

Method parse_method(const std::string& name) {
    return name == "m1" ? Method::M1 : Method::M2;
}

DateTime reference_or_now(const std::string& reference) {
    if (!reference.empty()) return DateTime::parse(reference);
    // Interactive default: current local date at midnight.
    const std::time_t now = std::time(nullptr);
    std::tm local{};
    localtime_r(&now, &local);
    DateTime dt;
    dt.year = local.tm_year + 1900;
    dt.month = local.tm_mon + 1;
    dt.day = local.tm_mday;
    return dt;
}

bool has_extension(const std::string& path, const char* ext) {
    return std::filesystem::path(path).extension() == ext;
}

OcrText load_input_text(const CliOptions& options) {
    if (has_extension(options.input, ".txt")) return load_ocr_text(options.input);
    const std::string cmd = options.engine_cmd.empty() ? default_engine_cmd() : options.engine_cmd;
    return run_ocr(options.input, cmd);
}

struct Pipeline {
    std::unique_ptr<Transport> transport;
    RateLimiter* limiter = nullptr; // nullptr -> global
};

Pipeline make_pipeline(const CliOptions& options) {
    Pipeline p;
    if (!options.fixtures_dir.empty()) {
        p.transport = std::make_unique<FixtureTransport>(options.fixtures_dir);
        p.limiter = &RateLimiter::unlimited(); // local files need no politeness
    } else {
        p.transport = std::make_unique<HttpTransport>();
    }
    return p;
}

void print_json(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

int cmd_extract(const CliOptions& options, std::ostream& out) {
    set_max_engine_jobs(options.jobs);
    const OcrText text = load_input_text(options);
    const ExtractedClaim claim =
        extract_claim(text, parse_method(options.method), reference_or_now(options.reference));
    if (options.format == "text") {
        out << "handle:    " << (claim.handle ? "@" + claim.handle->name : "(none)")
            << (claim.handle && claim.handle->truncated ? " (truncated)" : "") << "\n";
        out << "timestamp: " << (claim.timestamp ? claim.timestamp->value.to_string() : "(none)")
            << "\n";
        out << "body:      " << (claim.body ? *claim.body : "(none)") << "\n";
        out << "flags:    ";
        for (const ClaimFlag flag : claim.flags) out << " " << claim_flag_name(flag);
        out << "\n";
    } else {
        print_json(out, claim_to_json(claim));
    }
    return claim.flags.empty() ? 0 : 2;
}

ExtractedClaim claim_for_search(const CliOptions& options) {
    if (has_extension(options.input, ".json")) {
        std::ifstream file(options.input);
        if (!file) throw Error(ErrorCode::IoError, "cannot open claim file: " + options.input);
        ordered_json j;
        try {
            j = ordered_json::parse(file);
        } catch (const ordered_json::parse_error& e) {
            throw Error(ErrorCode::SchemaError,
                        "claim file is not valid JSON: " + std::string(e.what()));
        }
        return claim_from_json(j);
    }
    const OcrText text = load_input_text(options);
    return extract_claim(text, parse_method(options.method), reference_or_now(options.reference));
}

int cmd_search(const CliOptions& options, std::ostream& out) {
    const ExtractedClaim claim = claim_for_search(options);
    Pipeline pipeline = make_pipeline(options);
    SearchOptions search_options;
    search_options.endpoint = options.cdx_endpoint;
    search_options.window_days = options.window_days;
    search_options.limiter = pipeline.limiter;
    const auto snapshots = search_archives(claim, *pipeline.transport, search_options);
    if (options.format == "text") {
        for (const auto& snapshot : snapshots) out << snapshot.replay_url << "\n";
    } else {
        print_json(out, snapshots_to_json(snapshots));
    }
    return 0;
}

int cmd_verify(const CliOptions& options, std::ostream& out) {
    set_max_engine_jobs(options.jobs);
    const OcrText text = load_input_text(options);
    const ExtractedClaim claim =
        extract_claim(text, parse_method(options.method), reference_or_now(options.reference));
    Pipeline pipeline = make_pipeline(options);

    Verdict verdict;
    const char* unusable = nullptr;
    if (!claim.handle)
        unusable = "no handle extracted";
    else if (claim.handle->truncated)
        unusable = "handle is truncated";
    else if (!claim.timestamp)
        unusable = "no usable timestamp extracted";

    if (unusable) {
        verdict.status = VerdictStatus::Inconclusive;
        verdict.score = verdict_score(verdict.status);
        verdict.notes.push_back(std::string("cannot search archives: ") + unusable);
    } else {
        SearchOptions search_options;
        search_options.endpoint = options.cdx_endpoint;
        search_options.window_days = options.window_days;
        search_options.limiter = pipeline.limiter;
        const auto snapshots = search_archives(claim, *pipeline.transport, search_options);
        VerifyOptions verify_options;
        verify_options.fetch_pages = options.fetch_pages;
        verify_options.limiter = pipeline.limiter;
        verdict = verify(claim, snapshots, *pipeline.transport, verify_options);
    }

    if (options.format == "text") {
        out << "status: " << verdict_status_name(verdict.status) << " (score " << verdict.score
            << ", " << kScoreModel << ")\n";
        for (const auto& note : verdict.notes) out << "  - " << note << "\n";
    } else {
        print_json(out, verdict_to_json(verdict));
    }
    return 0;
}

int cmd_eval(const CliOptions& options, std::ostream& out) {
    const auto manifest = load_manifest(options.input);
    if (manifest.empty()) throw Error(ErrorCode::InvalidArgument, "manifest empty");
    const DateTime reference = DateTime::parse(options.reference);
    const std::vector<MetricsReport> reports = {
        evaluate(manifest, EvalField::Timestamp, Method::M1, reference),
        evaluate(manifest, EvalField::Timestamp, Method::M2, reference),
        evaluate(manifest, EvalField::Handle, Method::M2, reference),
    };
    if (options.format == "text")
        out << reports_to_table(reports);
    else
        print_json(out, reports_to_json(reports));
    return 0;
}

void add_common_flags(CLI::App* cmd, CliOptions& options, bool with_method = true) {
    if (with_method)
        cmd->add_option("--method", options.method, "Timestamp extraction method")
            ->check(CLI::IsMember({"m1", "m2"}))
            ->capture_default_str();
    cmd->add_option("--reference", options.reference,
                    "Reference datetime 'YYYY-MM-DD HH:MM:SS' for unspecified date fields "
                    "(default: today at midnight)");
    cmd->add_option("--format", options.format, "Output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
}

void add_network_flags(CLI::App* cmd, CliOptions& options) {
    cmd->add_option("--cdx-endpoint", options.cdx_endpoint, "CDX API endpoint")
        ->capture_default_str();
    cmd->add_option("--window-days", options.window_days,
                    "Widen the capture window symmetrically to this many days")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--fixtures", options.fixtures_dir,
                    "Directory of recorded <name>.url/<name>.body responses; replaces live HTTP");
}

void add_ocr_flags(CLI::App* cmd, CliOptions& options) {
    cmd->add_option("--engine-cmd", options.engine_cmd,
                    "OCR engine command template with {input} placeholder "
                    "(default: TWEETSHOT_OCR_CMD or 'tesseract {input} stdout')");
    cmd->add_option("--jobs", options.jobs, "Max concurrent OCR engine processes")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"tweetshot - extract tweet text, timestamp, and handle from a tweet screenshot,\n"
                 "backtrack to archived copies via the Wayback Machine CDX API, and evaluate\n"
                 "extraction quality against a labeled corpus"};
    app.require_subcommand(1);
    CliOptions options;

    CLI::App* extract = app.add_subcommand(
        "extract", "Extract handle, timestamp, and body from a screenshot image or OCR .txt file");
    extract->add_option("input", options.input, "Image file, or .txt file with OCR output")
        ->required();
    add_common_flags(extract, options);
    add_ocr_flags(extract, options);

    CLI::App* search = app.add_subcommand(
        "search", "Query the CDX API for archived tweet snapshots matching a claim");
    search->add_option("input", options.input, "Claim .json, OCR .txt, or image file")->required();
    add_common_flags(search, options);
    add_network_flags(search, options);
    add_ocr_flags(search, options);

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Run extract -> search -> verdict end to end");
    verify_cmd->add_option("input", options.input, "Image file, or .txt file with OCR output")
        ->required();
    verify_cmd->add_flag("--fetch-pages", options.fetch_pages,
                         "Fetch replay pages and test whether the claimed text appears");
    add_common_flags(verify_cmd, options);
    add_network_flags(verify_cmd, options);
    add_ocr_flags(verify_cmd, options);

    CLI::App* eval_cmd = app.add_subcommand(
        "eval", "Score timestamp (both methods) and handle extraction against a labeled manifest");
    eval_cmd->add_option("manifest", options.input, "JSON manifest of gold labels")->required();
    add_common_flags(eval_cmd, options, /*with_method=*/false);
    eval_cmd->get_option("--reference")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 1;
    }

    const std::string stage = app.get_subcommands().front()->get_name();
    try {
        if (app.got_subcommand(extract)) return cmd_extract(options, out);
        if (app.got_subcommand(search)) return cmd_search(options, out);
        if (app.got_subcommand(verify_cmd)) return cmd_verify(options, out);
        if (app.got_subcommand(eval_cmd)) return cmd_eval(options, out);
    } catch (const Error& e) {
        print_json(out, error_to_json(e, stage));
        err << "error [" << error_code_name(e.code()) << "] in " << stage << ": " << e.what()
            << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error in " << stage << ": " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace tweetshot
