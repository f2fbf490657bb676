#pragma once
// 57-item portrait questionnaire schema: 19 values x 3 variants, each item
// carrying male and female phrasings on a 1..6 scale.

#include <array>
#include <string>
#include <vector>

#include "vp/values.hpp"

namespace vp {

enum class GenderVersion { male, female };

std::string_view to_string(GenderVersion g);
GenderVersion gender_version_from_string(std::string_view s);

struct QuestionnaireItem {
    int index = 0;  // 1..57
    ValueId value = ValueId::SDT;
    int variant = 0;  // 1..3
    std::string text_male;
    std::string text_female;

    const std::string& text(GenderVersion g) const {
        return g == GenderVersion::male ? text_male : text_female;
    }
};

class Questionnaire {
public:
    static constexpr int kItemCount = 57;
    static constexpr int kVariantsPerValue = 3;
    static constexpr int kScaleMin = 1;
    static constexpr int kScaleMax = 6;

    // Validates every schema invariant; throws SchemaViolation otherwise.
    explicit Questionnaire(std::vector<QuestionnaireItem> items, std::string instructions = {});

    const std::string& instructions() const { return instructions_; }
    const std::vector<QuestionnaireItem>& items() const { return items_; }  // sorted by index
    const QuestionnaireItem& item(int index) const;                         // 1-based

    ValueId value_of(int index) const { return item(index).value; }
    int variant_of(int index) const { return item(index).variant; }

    // The three item indexes measuring one value, ordered by variant.
    std::array<int, kVariantsPerValue> items_of(ValueId v) const;

private:
    std::vector<QuestionnaireItem> items_;
    std::string instructions_;
};

// Parses the JSON questionnaire schema:
//   {"scale":{"min":1,"max":6},"items":[{"index":1,"value":"SDT","variant":1,
//    "text_male":"...","text_female":"..."}, ...]}
// Throws FileUnreadable or SchemaViolation.
Questionnaire load_questionnaire(const std::string& path);

// Parse from an already-read JSON string (same schema and validation).
Questionnaire parse_questionnaire(const std::string& json_text);

}  // namespace vp
