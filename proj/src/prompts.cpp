#include "vp/prompts.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "vp/errors.hpp"

namespace vp {

namespace {

// Instruction wording is frozen; the two families differ ("answer ... from"
// vs "rate ... using a scale from") and must not be normalized.
constexpr std::string_view kAnswerInstruction =
    "For each of the following descriptions, please answer how much the person described is "
    "like you from 1 (Not like me at all) to 6 (Very much like me), without elaborating on "
    "your reasoning.";

constexpr std::string_view kRateInstruction =
    "For each of the following descriptions, please rate how much the person described is "
    "like you, using a scale from 1 (Not like me at all) to 6 (Very much like me), without "
    "elaborating on your reasoning.";

const std::array<std::string_view, 4> kGenderOptions = {"male", "female", "non-binary", "other"};

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileUnreadable(path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

}  // namespace

std::string_view to_string(StrategyKind k) {
    switch (k) {
        case StrategyKind::basic: return "basic";
        case StrategyKind::value_anchor: return "value_anchor";
        case StrategyKind::demographic: return "demographic";
        case StrategyKind::generated_persona: return "generated_persona";
        case StrategyKind::names: return "names";
    }
    return "basic";
}

StrategyKind strategy_kind_from_string(std::string_view s) {
    if (s == "basic") return StrategyKind::basic;
    if (s == "value_anchor") return StrategyKind::value_anchor;
    if (s == "demographic") return StrategyKind::demographic;
    if (s == "generated_persona") return StrategyKind::generated_persona;
    if (s == "names") return StrategyKind::names;
    throw ConfigError("unknown strategy kind '" + std::string(s) + "'");
}

const std::vector<AnchorItem>& default_anchor_set() {
    // Best-Worst Refined Values phrases, one per questionnaire value,
    // listed in circle order for round-robin assignment.
    static const std::vector<AnchorItem> anchors = {
        {ValueId::SDT, "developing your own original ideas and opinions"},
        {ValueId::SDA, "being free to act independently"},
        {ValueId::ST, "having an exciting life; having all sorts of new experiences"},
        {ValueId::HE, "taking advantage of every opportunity to enjoy life's pleasures"},
        {ValueId::AC, "being ambitious and successful"},
        {ValueId::POD, "having the power that money and possessions can bring"},
        {ValueId::POR, "having the authority to get others to do what you want"},
        {ValueId::FAC, "protecting your public image and avoiding being shamed"},
        {ValueId::SEP, "living and acting in ways that ensure that you are personally safe and secure"},
        {ValueId::SES, "living in a safe and stable society"},
        {ValueId::TR, "following cultural family or religious practices"},
        {ValueId::COR, "obeying all rules and laws"},
        {ValueId::COI, "making sure you never upset or annoy others"},
        {ValueId::HUM, "being humble and avoiding public recognition"},
        {ValueId::BED, "being a completely dependable and trustworthy friend and family member"},
        {ValueId::BEC, "helping and caring for the wellbeing of those who are close"},
        {ValueId::UNC, "caring and seeking justice for everyone especially the weak and vulnerable in society"},
        {ValueId::UNN, "protecting the natural environment from destruction or pollution"},
        {ValueId::UNT, "being open-minded and accepting of people and ideas, even when you disagree with them"},
    };
    return anchors;
}

AnchorItem animal_welfare_anchor() {
    // 20th source-list entry; no matching questionnaire value, opt-in only.
    return AnchorItem{std::nullopt, "caring for the welfare of animals"};
}

StrategyKind kind_of(const PromptStrategy& s) {
    return std::visit(
        [](const auto& v) -> StrategyKind {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BasicStrategy>) return StrategyKind::basic;
            if constexpr (std::is_same_v<T, ValueAnchorStrategy>) return StrategyKind::value_anchor;
            if constexpr (std::is_same_v<T, DemographicStrategy>) return StrategyKind::demographic;
            if constexpr (std::is_same_v<T, GeneratedPersonaStrategy>)
                return StrategyKind::generated_persona;
            if constexpr (std::is_same_v<T, NamesStrategy>) return StrategyKind::names;
        },
        s);
}

std::string render_prompt(const PromptStrategy& strategy) {
    struct Renderer {
        std::string operator()(const BasicStrategy&) const { return std::string(kAnswerInstruction); }

        std::string operator()(const ValueAnchorStrategy& s) const {
            if (s.anchor.phrase.empty()) throw UnfilledPlaceholder("value");
            return std::string(kAnswerInstruction) + " Answer as a person that is " + s.anchor.phrase;
        }

        std::string operator()(const DemographicStrategy& s) const {
            const auto& p = s.profile;
            if (p.age < 18 || p.age > 75) {
                throw UnfilledPlaceholder("age " + std::to_string(p.age) + " outside 18..75");
            }
            if (p.gender.empty()) throw UnfilledPlaceholder("gender");
            if (p.occupation.empty()) throw UnfilledPlaceholder("occupation");
            if (p.hobby.empty()) throw UnfilledPlaceholder("hobby");
            return std::string(kRateInstruction) + " Answer as a " + std::to_string(p.age) +
                   "-year-old who identifies as " + p.gender + ", working in the field of " +
                   p.occupation + ", and enjoys " + p.hobby + ".";
        }

        std::string operator()(const GeneratedPersonaStrategy& s) const {
            if (s.persona.empty()) throw UnfilledPlaceholder("persona");
            return std::string(kRateInstruction) + " Answer as: " + s.persona + ".";
        }

        std::string operator()(const NamesStrategy& s) const {
            if (s.title.empty()) throw UnfilledPlaceholder("title");
            if (s.surname.empty()) throw UnfilledPlaceholder("surname");
            return std::string(kRateInstruction) + " Answer as " + s.title + " " + s.surname;
        }
    };
    return std::visit(Renderer{}, strategy);
}

std::string persona_generation_prompt() { return "Create a persona (2-3 sentences long):"; }

std::string strategy_descriptor(const PromptStrategy& strategy) {
    nlohmann::json j;
    j["kind"] = std::string(to_string(kind_of(strategy)));
    std::visit(
        [&j](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ValueAnchorStrategy>) {
                if (s.anchor.value) j["anchor_value"] = std::string(acronym(*s.anchor.value));
                j["anchor_phrase"] = s.anchor.phrase;
            } else if constexpr (std::is_same_v<T, DemographicStrategy>) {
                j["age"] = s.profile.age;
                j["gender"] = s.profile.gender;
                j["occupation"] = s.profile.occupation;
                j["hobby"] = s.profile.hobby;
            } else if constexpr (std::is_same_v<T, GeneratedPersonaStrategy>) {
                j["persona"] = s.persona;
            } else if constexpr (std::is_same_v<T, NamesStrategy>) {
                j["title"] = s.title;
                j["surname"] = s.surname;
                j["ethnicity"] = s.ethnicity_tag;
            }
        },
        strategy);
    return j.dump();
}

PromptStrategy strategy_from_descriptor(const std::string& descriptor) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(descriptor);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaViolation(std::string("bad strategy descriptor: ") + e.what());
    }
    const StrategyKind kind = strategy_kind_from_string(j.value("kind", std::string("basic")));
    switch (kind) {
        case StrategyKind::basic:
            return BasicStrategy{};
        case StrategyKind::value_anchor: {
            AnchorItem anchor;
            if (j.contains("anchor_value")) {
                anchor.value = value_from_acronym(j["anchor_value"].get<std::string>());
                if (!anchor.value) {
                    throw SchemaViolation("unknown anchor value '" +
                                          j["anchor_value"].get<std::string>() + "'");
                }
            }
            anchor.phrase = j.value("anchor_phrase", std::string());
            return ValueAnchorStrategy{std::move(anchor)};
        }
        case StrategyKind::demographic: {
            DemographicProfile p;
            p.age = j.value("age", 0);
            p.gender = j.value("gender", std::string());
            p.occupation = j.value("occupation", std::string());
            p.hobby = j.value("hobby", std::string());
            return DemographicStrategy{std::move(p)};
        }
        case StrategyKind::generated_persona:
            return GeneratedPersonaStrategy{j.value("persona", std::string())};
        case StrategyKind::names:
            return NamesStrategy{j.value("title", std::string()), j.value("surname", std::string()),
                                 j.value("ethnicity", std::string())};
    }
    throw SchemaViolation("unreachable strategy kind");
}

PlanInputs load_plan_inputs(const std::string& occupations_path, const std::string& hobbies_path,
                            const std::string& names_path) {
    PlanInputs inputs;
    inputs.occupations = read_lines(occupations_path);
    inputs.hobbies = read_lines(hobbies_path);

    const auto lines = read_lines(names_path);
    bool first = true;
    std::size_t lineno = 0;
    for (const auto& line : lines) {
        ++lineno;
        if (first) {  // header row
            first = false;
            continue;
        }
        std::stringstream ss(line);
        NameEntry entry;
        if (!std::getline(ss, entry.title, ',') || !std::getline(ss, entry.surname, ',') ||
            !std::getline(ss, entry.ethnicity)) {
            throw SchemaViolation(names_path + " line " + std::to_string(lineno) +
                                  ": expected title,surname,ethnicity");
        }
        inputs.names.push_back(std::move(entry));
    }
    return inputs;
}

DemographicProfile sample_demographic_profile(Rng& rng, const std::vector<std::string>& occupations,
                                              const std::vector<std::string>& hobbies) {
    if (occupations.empty()) throw EmptyList("occupations");
    if (hobbies.empty()) throw EmptyList("hobbies");
    DemographicProfile p;
    p.age = static_cast<int>(rng.uniform_int(18, 75));
    p.gender = std::string(kGenderOptions[static_cast<std::size_t>(rng.uniform_int(0, 3))]);
    p.occupation = occupations[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(occupations.size()) - 1))];
    p.hobby = hobbies[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(hobbies.size()) - 1))];
    return p;
}

namespace {

// Unique title+surname combinations balanced across ethnicity tags: each tag's
// pool is shuffled once, sessions then draw tags round-robin.
std::vector<NamesStrategy> plan_names(int n, std::uint64_t seed, const std::vector<NameEntry>& pool) {
    if (pool.empty()) throw EmptyList("names");

    std::vector<std::string> tags;
    std::map<std::string, std::vector<const NameEntry*>> by_tag;
    for (const auto& e : pool) {
        if (!by_tag.count(e.ethnicity)) tags.push_back(e.ethnicity);
        by_tag[e.ethnicity].push_back(&e);
    }
    std::sort(tags.begin(), tags.end());

    std::uint64_t key = 0;
    for (auto& tag : tags) {
        Rng rng = Rng::child(seed, 0x4e414d45ULL + key++);
        rng.shuffle(by_tag[tag]);
    }

    std::set<std::pair<std::string, std::string>> seen;
    std::map<std::string, std::size_t> cursor;
    std::vector<NamesStrategy> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const std::string& tag = tags[static_cast<std::size_t>(i) % tags.size()];
        auto& entries = by_tag[tag];
        auto& pos = cursor[tag];
        while (pos < entries.size() && seen.count({entries[pos]->title, entries[pos]->surname})) {
            ++pos;
        }
        if (pos >= entries.size()) {
            throw ConfigError("names list exhausted for ethnicity '" + tag + "' (need more rows)");
        }
        const NameEntry& e = *entries[pos++];
        seen.insert({e.title, e.surname});
        out.push_back(NamesStrategy{e.title, e.surname, e.ethnicity});
    }
    return out;
}

}  // namespace

RunPlan plan_run_set(StrategyKind kind, int n, std::uint64_t seed, double temperature,
                     const PlanInputs& inputs) {
    if (n < 0) throw ConfigError("session count must be >= 0");

    std::vector<AnchorItem> anchors;
    if (kind == StrategyKind::value_anchor) {
        anchors = default_anchor_set();
        if (inputs.include_animal_welfare) anchors.push_back(animal_welfare_anchor());
    }
    std::vector<NamesStrategy> names;
    if (kind == StrategyKind::names) names = plan_names(n, seed, inputs.names);
    if (kind == StrategyKind::generated_persona &&
        inputs.personas.size() < static_cast<std::size_t>(n)) {
        throw ConfigError("generated_persona plan needs " + std::to_string(n) + " personas, have " +
                          std::to_string(inputs.personas.size()));
    }

    RunPlan plan;
    plan.sessions.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        SessionSpec spec;
        spec.session_id = i;
        spec.gender_version = (i % 2 == 0) ? GenderVersion::male : GenderVersion::female;
        spec.temperature = temperature;
        switch (kind) {
            case StrategyKind::basic:
                spec.strategy = BasicStrategy{};
                break;
            case StrategyKind::value_anchor:
                spec.strategy = ValueAnchorStrategy{anchors[static_cast<std::size_t>(i) % anchors.size()]};
                break;
            case StrategyKind::demographic: {
                Rng rng = Rng::child(seed, 0xd390ULL + static_cast<std::uint64_t>(i));
                spec.strategy =
                    DemographicStrategy{sample_demographic_profile(rng, inputs.occupations, inputs.hobbies)};
                break;
            }
            case StrategyKind::generated_persona:
                spec.strategy = GeneratedPersonaStrategy{inputs.personas[static_cast<std::size_t>(i)]};
                break;
            case StrategyKind::names:
                spec.strategy = names[static_cast<std::size_t>(i)];
                break;
        }
        plan.sessions.push_back(std::move(spec));
    }
    return plan;
}

}  // namespace vp
