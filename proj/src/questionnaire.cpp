#include "vp/questionnaire.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "vp/errors.hpp"

namespace vp {

std::string_view to_string(GenderVersion g) {
    return g == GenderVersion::male ? "male" : "female";
}

GenderVersion gender_version_from_string(std::string_view s) {
    if (s == "male") return GenderVersion::male;
    if (s == "female") return GenderVersion::female;
    throw SchemaViolation("unknown gender version '" + std::string(s) + "'");
}

Questionnaire::Questionnaire(std::vector<QuestionnaireItem> items, std::string instructions)
    : items_(std::move(items)), instructions_(std::move(instructions)) {
    if (items_.size() != kItemCount) {
        throw SchemaViolation("item count " + std::to_string(items_.size()) + " != 57");
    }
    std::sort(items_.begin(), items_.end(),
              [](const QuestionnaireItem& a, const QuestionnaireItem& b) { return a.index < b.index; });

    std::set<int> seen;
    for (const auto& it : items_) {
        if (it.index < 1 || it.index > kItemCount) {
            throw SchemaViolation("item index " + std::to_string(it.index) + " outside 1..57");
        }
        if (!seen.insert(it.index).second) {
            throw SchemaViolation("duplicate item index " + std::to_string(it.index));
        }
        if (it.variant < 1 || it.variant > kVariantsPerValue) {
            throw SchemaViolation("item " + std::to_string(it.index) + " variant " +
                                  std::to_string(it.variant) + " outside 1..3");
        }
        if (it.text_male.empty() || it.text_female.empty()) {
            throw SchemaViolation("item " + std::to_string(it.index) + " missing gender variant");
        }
    }

    // Each value owns exactly three items, one per variant.
    std::map<ValueId, std::set<int>> variants_by_value;
    for (const auto& it : items_) {
        if (!variants_by_value[it.value].insert(it.variant).second) {
            throw SchemaViolation(std::string("value ") + std::string(acronym(it.value)) +
                                  " repeats variant " + std::to_string(it.variant));
        }
    }
    std::ostringstream bad;
    for (ValueId v : all_values()) {
        const std::size_t n = variants_by_value.count(v) ? variants_by_value.at(v).size() : 0;
        if (n != kVariantsPerValue) {
            if (bad.tellp() > 0) bad << ", ";
            bad << acronym(v) << " has " << n << " items";
        }
    }
    if (bad.tellp() > 0) {
        throw SchemaViolation(bad.str());
    }
}

const QuestionnaireItem& Questionnaire::item(int index) const {
    if (index < 1 || index > kItemCount) {
        throw std::out_of_range("item index " + std::to_string(index));
    }
    return items_[static_cast<std::size_t>(index - 1)];
}

std::array<int, Questionnaire::kVariantsPerValue> Questionnaire::items_of(ValueId v) const {
    std::array<int, kVariantsPerValue> out{};
    for (const auto& it : items_) {
        if (it.value == v) out[static_cast<std::size_t>(it.variant - 1)] = it.index;
    }
    return out;
}

Questionnaire parse_questionnaire(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaViolation(std::string("invalid JSON: ") + e.what());
    }

    if (!doc.contains("items") || !doc["items"].is_array()) {
        throw SchemaViolation("missing items array");
    }
    if (doc.contains("scale")) {
        const auto& scale = doc["scale"];
        const int lo = scale.value("min", 0);
        const int hi = scale.value("max", 0);
        if (lo != Questionnaire::kScaleMin || hi != Questionnaire::kScaleMax) {
            throw SchemaViolation("scale must be 1..6, got " + std::to_string(lo) + ".." +
                                  std::to_string(hi));
        }
    }

    std::vector<QuestionnaireItem> items;
    for (const auto& j : doc["items"]) {
        QuestionnaireItem it;
        try {
            it.index = j.at("index").get<int>();
            const std::string code = j.at("value").get<std::string>();
            const auto v = value_from_acronym(code);
            if (!v) throw SchemaViolation("unknown value code '" + code + "'");
            it.value = *v;
            it.variant = j.at("variant").get<int>();
            it.text_male = j.value("text_male", std::string());
            it.text_female = j.value("text_female", std::string());
        } catch (const nlohmann::json::exception& e) {
            throw SchemaViolation(std::string("bad item record: ") + e.what());
        }
        items.push_back(std::move(it));
    }
    return Questionnaire(std::move(items), doc.value("instructions", std::string()));
}

Questionnaire load_questionnaire(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileUnreadable(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw FileUnreadable(path);
    return parse_questionnaire(buf.str());
}

}  // namespace vp
