#pragma once
// The five prompting strategies and run-set planning: anchor assignment,
// demographic sampling, name combinations, and the male/female gender split.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vp/questionnaire.hpp"
#include "vp/rng.hpp"
#include "vp/values.hpp"

namespace vp {

enum class StrategyKind { basic, value_anchor, demographic, generated_persona, names };

std::string_view to_string(StrategyKind k);
StrategyKind strategy_kind_from_string(std::string_view s);

struct AnchorItem {
    std::optional<ValueId> value;  // empty only for the opt-in animal-welfare entry
    std::string phrase;
};

// The 19 anchor phrases matching the questionnaire values. The source list has
// a 20th entry (animal welfare) with no matching value; include_animal_welfare
// appends it, tagged with UNN's nearest neighbour semantics left to callers.
const std::vector<AnchorItem>& default_anchor_set();
AnchorItem animal_welfare_anchor();

struct DemographicProfile {
    int age = 0;  // 18..75
    std::string gender;
    std::string occupation;
    std::string hobby;
};

struct BasicStrategy {};

struct ValueAnchorStrategy {
    AnchorItem anchor;
};

struct DemographicStrategy {
    DemographicProfile profile;
};

struct GeneratedPersonaStrategy {
    std::string persona;
};

struct NamesStrategy {
    std::string title;
    std::string surname;
    std::string ethnicity_tag;
};

using PromptStrategy = std::variant<BasicStrategy, ValueAnchorStrategy, DemographicStrategy,
                                    GeneratedPersonaStrategy, NamesStrategy>;

StrategyKind kind_of(const PromptStrategy& s);

// Renders the strategy's instruction text verbatim, slots substituted.
// Throws UnfilledPlaceholder when a slot is empty or out of range.
std::string render_prompt(const PromptStrategy& strategy);

// The instruction used to elicit persona descriptions (temperature 0.7).
std::string persona_generation_prompt();

// Compact JSON round-trip of a strategy instance, used in transcript records.
std::string strategy_descriptor(const PromptStrategy& strategy);
PromptStrategy strategy_from_descriptor(const std::string& descriptor);

struct SessionSpec {
    int session_id = 0;
    PromptStrategy strategy;
    GenderVersion gender_version = GenderVersion::male;
    double temperature = 0.0;
};

struct RunPlan {
    std::vector<SessionSpec> sessions;
};

struct NameEntry {
    std::string title;
    std::string surname;
    std::string ethnicity;
};

// Editable pools backing the Demographic and Names strategies.
struct PlanInputs {
    std::vector<std::string> occupations;
    std::vector<std::string> hobbies;
    std::vector<NameEntry> names;
    std::vector<std::string> personas;  // pre-generated, required for generated_persona
    bool include_animal_welfare = false;
};

PlanInputs load_plan_inputs(const std::string& occupations_path, const std::string& hobbies_path,
                            const std::string& names_path);

// One draw per field: age uniform 18..75, gender uniform over four options,
// occupation/hobby uniform over their lists.
DemographicProfile sample_demographic_profile(Rng& rng, const std::vector<std::string>& occupations,
                                              const std::vector<std::string>& hobbies);

// Builds n session specs. Anchors are assigned round-robin in circle order;
// gender versions alternate male/female; names draw unique title+surname
// combinations balanced across ethnicity tags. Deterministic given seed.
RunPlan plan_run_set(StrategyKind kind, int n, std::uint64_t seed, double temperature,
                     const PlanInputs& inputs);

}  // namespace vp
