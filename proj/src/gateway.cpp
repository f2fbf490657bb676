#include "vp/gateway.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "vp/errors.hpp"
#include "vp/parser.hpp"

namespace vp {

namespace {

std::string iso_utc(std::time_t t) {
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Fixed clock for deterministic providers: epoch plus the session id.
std::string session_stamp(int session_id) { return iso_utc(static_cast<std::time_t>(session_id)); }

std::string now_stamp() { return iso_utc(std::time(nullptr)); }

std::string item_line(const QuestionnaireItem& item, GenderVersion gender) {
    return std::to_string(item.index) + ". " + item.text(gender);
}

std::string trim_copy(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string complete_with_retry(ResponseProvider& provider, const ChatRequest& request,
                                int max_retries, double backoff_seconds) {
    std::string last_error;
    const int attempts = std::max(1, max_retries);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        try {
            return provider.complete(request);
        } catch (const Timeout& e) {
            last_error = e.what();
        } catch (const TransportError& e) {
            last_error = e.what();
        }
        if (attempt + 1 < attempts && backoff_seconds > 0.0) {
            const double delay = backoff_seconds * std::pow(2.0, attempt);
            std::this_thread::sleep_for(std::chrono::duration<double>(delay));
        }
    }
    throw RetryExhausted("after " + std::to_string(attempts) + " attempts: " + last_error);
}

}  // namespace

std::string_view to_string(ProviderKind k) {
    switch (k) {
        case ProviderKind::live: return "live";
        case ProviderKind::synthetic: return "synthetic";
        case ProviderKind::replay: return "replay";
    }
    return "synthetic";
}

std::string_view to_string(SessionMode m) { return m == SessionMode::batch ? "batch" : "serial"; }

ProviderKind provider_kind_from_string(std::string_view s) {
    if (s == "live") return ProviderKind::live;
    if (s == "synthetic") return ProviderKind::synthetic;
    if (s == "replay") return ProviderKind::replay;
    throw ConfigError("unknown provider kind '" + std::string(s) + "'");
}

SessionMode session_mode_from_string(std::string_view s) {
    if (s == "batch") return SessionMode::batch;
    if (s == "serial") return SessionMode::serial;
    throw ConfigError("unknown session mode '" + std::string(s) + "'");
}

int synthetic_respond(ValueId item_value, double theta, const SyntheticParams& params, double noise) {
    const double raw = params.baseline + params.amplitude * std::cos(circle_angle(item_value) - theta) + noise;
    // Round half away from zero, then clamp to the scale.
    const double rounded = std::round(raw);
    const double clamped = std::min(static_cast<double>(Questionnaire::kScaleMax),
                                    std::max(static_cast<double>(Questionnaire::kScaleMin), rounded));
    return static_cast<int>(clamped);
}

// --- SyntheticProvider -------------------------------------------------------

SyntheticProvider::SyntheticProvider(SyntheticParams params, std::uint64_t seed)
    : params_(params), seed_(seed) {}

SyntheticProvider::SessionState& SyntheticProvider::session_state(const ChatRequest& request) {
    auto it = sessions_.find(request.session_id);
    if (it == sessions_.end()) {
        SessionState state{Rng::child(seed_, static_cast<std::uint64_t>(request.session_id)), 0.0};
        state.theta = request.anchor_value ? circle_angle(*request.anchor_value)
                                           : state.rng.uniform(0.0, 2.0 * M_PI);
        it = sessions_.emplace(request.session_id, std::move(state)).first;
    }
    return it->second;
}

std::string SyntheticProvider::complete(const ChatRequest& request) {
    std::lock_guard<std::mutex> lock(mutex_);

    if (request.items.empty()) {
        // Persona elicitation; a fixed stub keeps the pipeline reproducible.
        return "A thoughtful 34-year-old librarian who enjoys quiet hikes and volunteers at the "
               "local shelter. They value dependable friendships and learning something new every "
               "day.";
    }

    SessionState& state = session_state(request);
    std::string out;
    for (const auto& [index, value] : request.items) {
        const double noise = params_.noise_sigma > 0.0 ? state.rng.normal(0.0, params_.noise_sigma) : 0.0;
        const int score = synthetic_respond(value, state.theta, params_, noise);
        if (request.items.size() == 1) {
            out = std::to_string(score);
        } else {
            out += std::to_string(index) + ". " + std::to_string(score) + "\n";
        }
    }
    return out;
}

// --- ReplayProvider ----------------------------------------------------------

ReplayProvider::ReplayProvider(std::vector<SessionTranscript> transcripts) {
    for (auto& t : transcripts) {
        by_session_.emplace(t.session_id, std::move(t));
    }
}

ReplayProvider ReplayProvider::from_store(const std::string& path) {
    return ReplayProvider(load_transcripts(path));
}

std::string ReplayProvider::complete(const ChatRequest& request) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = by_session_.find(request.session_id);
    if (it == by_session_.end()) {
        throw TransportError("no recorded session " + std::to_string(request.session_id));
    }
    std::size_t& pos = cursor_[request.session_id];
    if (pos >= it->second.exchanges.size()) {
        throw ModeMismatch("session " + std::to_string(request.session_id) + " has only " +
                           std::to_string(it->second.exchanges.size()) + " recorded exchanges");
    }
    return it->second.exchanges[pos++].completion;
}

std::optional<SessionTranscript> ReplayProvider::replay(int session_id, SessionMode mode) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = by_session_.find(session_id);
    if (it == by_session_.end()) {
        throw TransportError("no recorded session " + std::to_string(session_id));
    }
    const SessionTranscript& t = it->second;
    const std::size_t expected = mode == SessionMode::batch ? 1 : Questionnaire::kItemCount;
    if (t.mode != mode || t.exchanges.size() != expected) {
        throw ModeMismatch("session " + std::to_string(session_id) + " recorded as " +
                           std::string(to_string(t.mode)) + " with " +
                           std::to_string(t.exchanges.size()) + " exchanges, requested " +
                           std::string(to_string(mode)));
    }
    return t;
}

// --- LiveProvider ------------------------------------------------------------

LiveProvider::LiveProvider(const ProviderConfig& config) : config_(config) {
    if (config_.endpoint_url.empty()) throw ConfigError("live provider needs endpoint_url");
    const auto scheme_end = config_.endpoint_url.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigError("endpoint_url must include a scheme: " + config_.endpoint_url);
    }
    const auto path_start = config_.endpoint_url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        host_base_ = config_.endpoint_url;
        path_ = "/";
    } else {
        host_base_ = config_.endpoint_url.substr(0, path_start);
        path_ = config_.endpoint_url.substr(path_start);
    }
    if (!config_.credential_env.empty()) {
        const char* cred = std::getenv(config_.credential_env.c_str());
        if (cred == nullptr || *cred == '\0') {
            throw ConfigError("credential environment variable " + config_.credential_env +
                              " is not set");
        }
        credential_ = cred;
    }
}

std::string LiveProvider::complete(const ChatRequest& request) {
    httplib::Client client(host_base_);
    client.set_connection_timeout(std::chrono::duration<double>(config_.timeout_seconds));
    client.set_read_timeout(std::chrono::duration<double>(config_.timeout_seconds));

    nlohmann::json body;
    body["model"] = config_.model_name;
    body["temperature"] = request.temperature;
    body["messages"] = nlohmann::json::array();
    for (const auto& m : request.messages) {
        body["messages"].push_back({{"role", m.role}, {"content", m.content}});
    }

    httplib::Headers headers;
    if (!credential_.empty()) headers.emplace("Authorization", "Bearer " + credential_);

    const auto res = client.Post(path_, headers, body.dump(), "application/json");
    if (!res) {
        const auto err = res.error();
        if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read ||
            err == httplib::Error::Write) {
            throw Timeout(httplib::to_string(err));
        }
        throw TransportError(httplib::to_string(err));
    }
    if (res->status == 413) {
        throw ContextOverflow("HTTP 413: " + res->body.substr(0, 200));
    }
    if (res->status != 200) {
        throw TransportError("HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
    }

    try {
        const auto doc = nlohmann::json::parse(res->body);
        return doc.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw TransportError(std::string("malformed completion payload: ") + e.what());
    }
}

std::string LiveProvider::scrub(std::string text) const {
    if (credential_.empty()) return text;
    std::size_t pos = 0;
    while ((pos = text.find(credential_, pos)) != std::string::npos) {
        text.replace(pos, credential_.size(), "[REDACTED]");
        pos += 10;
    }
    return text;
}

std::unique_ptr<ResponseProvider> make_provider(const ProviderConfig& config) {
    if (config.temperature != 0.0 && config.temperature != 0.7) {
        std::fprintf(stderr, "warning: temperature %.3f is outside the standard {0.0, 0.7} pair\n",
                     config.temperature);
    }
    switch (config.kind) {
        case ProviderKind::synthetic:
            return std::make_unique<SyntheticProvider>(config.synthetic, config.seed);
        case ProviderKind::replay:
            return std::make_unique<ReplayProvider>(load_transcripts(config.replay_store_path));
        case ProviderKind::live:
            return std::make_unique<LiveProvider>(config);
    }
    throw ConfigError("unreachable provider kind");
}

// --- administration ----------------------------------------------------------

SessionTranscript administer_batch(ResponseProvider& provider, const std::string& prompt,
                                   const Questionnaire& questionnaire, GenderVersion gender,
                                   const AdminContext& ctx) {
    if (auto recorded = provider.replay(ctx.session_id, SessionMode::batch)) return *recorded;

    ChatRequest request;
    request.temperature = ctx.temperature;
    request.session_id = ctx.session_id;
    request.anchor_value = ctx.anchor_value;

    std::string full = prompt + "\n\n";
    for (const auto& item : questionnaire.items()) {
        full += item_line(item, gender) + "\n";
        request.items.emplace_back(item.index, item.value);
    }
    request.messages.push_back({"user", full});

    SessionTranscript t;
    t.session_id = ctx.session_id;
    t.strategy_descriptor = ctx.strategy_descriptor;
    t.gender_version = gender;
    t.mode = SessionMode::batch;
    t.temperature = ctx.temperature;
    t.model_name = ctx.model_name;
    t.started_at = provider.deterministic_clock() ? session_stamp(ctx.session_id) : now_stamp();

    const std::string completion = provider.scrub(
        complete_with_retry(provider, request, ctx.max_retries, ctx.retry_backoff_seconds));
    t.exchanges.push_back({provider.scrub(full), completion});
    t.finished_at = provider.deterministic_clock() ? t.started_at : now_stamp();

    try {
        const ScoreVector v = parse_scores(completion);
        t.parsed_scores = std::vector<int>(v.scores.begin(), v.scores.end());
    } catch (const ParseError&) {
        // Left unparsed; dataset assembly reports the exclusion.
    }
    return t;
}

SessionTranscript administer_serial(ResponseProvider& provider, const std::string& prompt,
                                    const Questionnaire& questionnaire, GenderVersion gender,
                                    const AdminContext& ctx) {
    if (auto recorded = provider.replay(ctx.session_id, SessionMode::serial)) return *recorded;

    SessionTranscript t;
    t.session_id = ctx.session_id;
    t.strategy_descriptor = ctx.strategy_descriptor;
    t.gender_version = gender;
    t.mode = SessionMode::serial;
    t.temperature = ctx.temperature;
    t.model_name = ctx.model_name;
    t.started_at = provider.deterministic_clock() ? session_stamp(ctx.session_id) : now_stamp();

    std::vector<ChatMessage> conversation;
    std::vector<int> scores;
    bool all_parsed = true;
    for (const auto& item : questionnaire.items()) {
        const std::string turn = item.index == 1 ? prompt + "\n\n" + item_line(item, gender)
                                                 : item_line(item, gender);
        conversation.push_back({"user", turn});

        ChatRequest request;
        request.messages = conversation;  // full context resent each turn
        request.temperature = ctx.temperature;
        request.session_id = ctx.session_id;
        request.anchor_value = ctx.anchor_value;
        request.items.emplace_back(item.index, item.value);

        const std::string completion = provider.scrub(
            complete_with_retry(provider, request, ctx.max_retries, ctx.retry_backoff_seconds));
        conversation.push_back({"assistant", completion});
        t.exchanges.push_back({provider.scrub(turn), completion});

        if (all_parsed) {
            try {
                scores.push_back(parse_single_score(completion, item.index));
            } catch (const ParseError&) {
                all_parsed = false;
            }
        }
    }
    t.finished_at = provider.deterministic_clock() ? t.started_at : now_stamp();
    if (all_parsed) t.parsed_scores = std::move(scores);
    return t;
}

std::vector<std::string> generate_personas(int n, ResponseProvider& provider, std::uint64_t seed) {
    (void)seed;  // persona sampling randomness lives provider-side
    std::vector<std::string> personas;
    personas.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        ChatRequest request;
        request.messages.push_back({"user", persona_generation_prompt()});
        request.temperature = 0.7;  // fixed for persona elicitation
        request.session_id = i;
        const std::string text = trim_copy(provider.complete(request));
        if (text.empty()) throw EmptyCompletion("persona " + std::to_string(i) + " came back blank");
        personas.push_back(text);
    }
    return personas;
}

// --- transcript store ----------------------------------------------------------

std::string transcript_to_json_line(const SessionTranscript& t) {
    nlohmann::json j;
    j["session_id"] = t.session_id;
    j["strategy"] = nlohmann::json::parse(t.strategy_descriptor.empty() ? std::string("{\"kind\":\"basic\"}")
                                                                        : t.strategy_descriptor);
    j["gender_version"] = std::string(to_string(t.gender_version));
    j["mode"] = std::string(to_string(t.mode));
    j["temperature"] = t.temperature;
    j["model"] = t.model_name;
    j["started_at"] = t.started_at;
    j["finished_at"] = t.finished_at;
    j["exchanges"] = nlohmann::json::array();
    for (const auto& e : t.exchanges) {
        j["exchanges"].push_back({{"prompt", e.prompt}, {"completion", e.completion}});
    }
    if (t.parsed_scores) {
        j["parsed_scores"] = *t.parsed_scores;
    } else {
        j["parsed_scores"] = nullptr;
    }
    return j.dump();
}

SessionTranscript transcript_from_json_line(const std::string& line, std::size_t line_number) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw CorruptRecord(line_number, e.what());
    }
    try {
        SessionTranscript t;
        t.session_id = j.at("session_id").get<int>();
        t.strategy_descriptor = j.at("strategy").dump();
        t.gender_version = gender_version_from_string(j.at("gender_version").get<std::string>());
        t.mode = session_mode_from_string(j.at("mode").get<std::string>());
        t.temperature = j.at("temperature").get<double>();
        t.model_name = j.value("model", std::string());
        t.started_at = j.value("started_at", std::string());
        t.finished_at = j.value("finished_at", std::string());
        for (const auto& e : j.at("exchanges")) {
            t.exchanges.push_back({e.at("prompt").get<std::string>(), e.at("completion").get<std::string>()});
        }
        if (j.contains("parsed_scores") && !j["parsed_scores"].is_null()) {
            t.parsed_scores = j["parsed_scores"].get<std::vector<int>>();
        }
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw CorruptRecord(line_number, e.what());
    } catch (const Error& e) {
        throw CorruptRecord(line_number, e.what());
    }
}

void append_transcript(const std::string& path, const SessionTranscript& transcript) {
    std::ofstream out(path, std::ios::app | std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for append");
    out << transcript_to_json_line(transcript) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

void write_transcripts(const std::string& path, const std::vector<SessionTranscript>& transcripts) {
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for write");
    for (const auto& t : transcripts) out << transcript_to_json_line(t) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

std::vector<SessionTranscript> load_transcripts(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<SessionTranscript> out;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (trim_copy(line).empty()) continue;
        out.push_back(transcript_from_json_line(line, line_number));
    }
    return out;
}

}  // namespace vp
