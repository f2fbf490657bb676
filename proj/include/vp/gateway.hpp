#pragma once
// Administers a rendered prompt plus the questionnaire to a response provider:
// a live chat-completion endpoint, the synthetic circumplex oracle, or a
// recorded replay store. Batch mode sends all 57 items at once; serial mode
// walks them one conversational turn at a time.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "vp/prompts.hpp"
#include "vp/questionnaire.hpp"
#include "vp/rng.hpp"
#include "vp/values.hpp"

namespace vp {

enum class ProviderKind { live, synthetic, replay };
enum class SessionMode { batch, serial };

std::string_view to_string(ProviderKind k);
std::string_view to_string(SessionMode m);
ProviderKind provider_kind_from_string(std::string_view s);
SessionMode session_mode_from_string(std::string_view s);

struct SyntheticParams {
    double amplitude = 1.5;    // score units
    double baseline = 3.5;     // score units
    double noise_sigma = 0.0;  // score units
};

struct ProviderConfig {
    ProviderKind kind = ProviderKind::synthetic;
    std::string endpoint_url;  // live only
    std::string model_name = "synthetic-circumplex";
    double temperature = 0.0;
    std::string credential_env = "VALUE_PROBE_API_KEY";
    double timeout_seconds = 120.0;
    int max_retries = 3;
    double retry_backoff_seconds = 1.0;
    SyntheticParams synthetic;
    std::uint64_t seed = 0;          // synthetic persona streams
    std::string replay_store_path;   // replay only
};

struct Exchange {
    std::string prompt;
    std::string completion;

    bool operator==(const Exchange&) const = default;
};

struct SessionTranscript {
    int session_id = 0;
    std::string strategy_descriptor;  // JSON, see strategy_descriptor()
    GenderVersion gender_version = GenderVersion::male;
    SessionMode mode = SessionMode::batch;
    double temperature = 0.0;
    std::string model_name;
    std::string started_at;   // ISO-8601 UTC
    std::string finished_at;
    std::vector<Exchange> exchanges;  // 1 for batch, 57 for serial
    std::optional<std::vector<int>> parsed_scores;

    bool operator==(const SessionTranscript&) const = default;
};

struct ChatMessage {
    std::string role;  // "user" | "assistant" | "system"
    std::string content;
};

// Structured view of one turn. The oracle reads items/anchor; live providers
// only see messages.
struct ChatRequest {
    std::vector<ChatMessage> messages;
    double temperature = 0.0;
    int session_id = 0;
    std::vector<std::pair<int, ValueId>> items;  // (item index, value) asked this turn
    std::optional<ValueId> anchor_value;
};

class ResponseProvider {
public:
    virtual ~ResponseProvider() = default;
    virtual ProviderKind kind() const = 0;
    virtual std::string complete(const ChatRequest& request) = 0;

    // Replay providers return whole recorded sessions; others return nothing.
    virtual std::optional<SessionTranscript> replay(int /*session_id*/, SessionMode /*mode*/) {
        return std::nullopt;
    }

    // Removes secrets from text before it is persisted or logged.
    virtual std::string scrub(std::string text) const { return text; }

    // Providers with fixed output stamp fixed clocks so reruns are identical.
    virtual bool deterministic_clock() const { return false; }
};

// Persona responders on the value circle: score = clamp(round(c + A*cos(angle
// - theta) + noise), 1, 6), rounding half away from zero. Value-anchored
// sessions put theta at the anchor's angle; other sessions draw theta
// uniformly from the session stream.
class SyntheticProvider : public ResponseProvider {
public:
    SyntheticProvider(SyntheticParams params, std::uint64_t seed);

    ProviderKind kind() const override { return ProviderKind::synthetic; }
    std::string complete(const ChatRequest& request) override;
    bool deterministic_clock() const override { return true; }

private:
    struct SessionState {
        Rng rng;
        double theta = 0.0;
    };
    SessionState& session_state(const ChatRequest& request);

    SyntheticParams params_;
    std::uint64_t seed_;
    std::mutex mutex_;
    std::map<int, SessionState> sessions_;
};

class ReplayProvider : public ResponseProvider {
public:
    explicit ReplayProvider(std::vector<SessionTranscript> transcripts);
    static ReplayProvider from_store(const std::string& path);

    ProviderKind kind() const override { return ProviderKind::replay; }
    std::string complete(const ChatRequest& request) override;
    std::optional<SessionTranscript> replay(int session_id, SessionMode mode) override;
    bool deterministic_clock() const override { return true; }

private:
    std::map<int, SessionTranscript> by_session_;
    std::map<int, std::size_t> cursor_;
    std::mutex mutex_;
};

// Chat-completion HTTP client. Credential comes from the environment variable
// named in the config and never enters transcripts.
class LiveProvider : public ResponseProvider {
public:
    explicit LiveProvider(const ProviderConfig& config);

    ProviderKind kind() const override { return ProviderKind::live; }
    std::string complete(const ChatRequest& request) override;
    std::string scrub(std::string text) const override;

private:
    ProviderConfig config_;
    std::string credential_;
    std::string host_base_;  // scheme://host[:port]
    std::string path_;
};

std::unique_ptr<ResponseProvider> make_provider(const ProviderConfig& config);

// The per-item synthetic scoring rule, exposed for direct testing.
int synthetic_respond(ValueId item_value, double theta, const SyntheticParams& params, double noise);

struct AdminContext {
    int session_id = 0;
    double temperature = 0.0;
    std::string strategy_descriptor;
    std::optional<ValueId> anchor_value;
    std::string model_name;
    int max_retries = 3;
    double retry_backoff_seconds = 1.0;
};

SessionTranscript administer_batch(ResponseProvider& provider, const std::string& prompt,
                                   const Questionnaire& questionnaire, GenderVersion gender,
                                   const AdminContext& ctx);

SessionTranscript administer_serial(ResponseProvider& provider, const std::string& prompt,
                                    const Questionnaire& questionnaire, GenderVersion gender,
                                    const AdminContext& ctx);

// Persona elicitation at temperature 0.7; results are persisted by callers so
// runs can be reproduced.
std::vector<std::string> generate_personas(int n, ResponseProvider& provider, std::uint64_t seed);

// JSONL transcript store. Loading preserves record order; a bad line reports
// its 1-based number.
void append_transcript(const std::string& path, const SessionTranscript& transcript);
void write_transcripts(const std::string& path, const std::vector<SessionTranscript>& transcripts);
std::vector<SessionTranscript> load_transcripts(const std::string& path);

std::string transcript_to_json_line(const SessionTranscript& t);
SessionTranscript transcript_from_json_line(const std::string& line, std::size_t line_number);

}  // namespace vp
