#pragma once
// Error taxonomy shared across the pipeline. Every failure mode carries a
// stable kind string so exclusion reports and exit codes can name it.

#include <stdexcept>
#include <string>

namespace vp {

class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& detail)
        : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}

    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

// --- files and configuration ---------------------------------------------

struct FileUnreadable : Error {
    explicit FileUnreadable(const std::string& path) : Error("FileUnreadable", path) {}
};

struct SchemaViolation : Error {
    explicit SchemaViolation(const std::string& detail) : Error("SchemaViolation", detail) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& detail) : Error("ConfigError", detail) {}
};

struct IoError : Error {
    explicit IoError(const std::string& detail) : Error("IoError", detail) {}
};

struct CorruptRecord : Error {
    CorruptRecord(std::size_t line, const std::string& detail)
        : Error("CorruptRecord", "line " + std::to_string(line) + ": " + detail), line(line) {}
    std::size_t line;
};

// --- prompt engine --------------------------------------------------------

struct UnfilledPlaceholder : Error {
    explicit UnfilledPlaceholder(const std::string& slot) : Error("UnfilledPlaceholder", slot) {}
};

struct EmptyList : Error {
    explicit EmptyList(const std::string& which) : Error("EmptyList", which) {}
};

// --- gateway ---------------------------------------------------------------

struct ProviderError : Error {
    using Error::Error;
};

struct TransportError : ProviderError {
    explicit TransportError(const std::string& detail) : ProviderError("TransportError", detail) {}

protected:
    TransportError(std::string kind, const std::string& detail)
        : ProviderError(std::move(kind), detail) {}
};

struct Timeout : ProviderError {
    explicit Timeout(const std::string& detail) : ProviderError("Timeout", detail) {}
};

// A transport failure that persisted through every retry.
struct RetryExhausted : TransportError {
    explicit RetryExhausted(const std::string& detail) : TransportError("RetryExhausted", detail) {}
};

struct ContextOverflow : ProviderError {
    explicit ContextOverflow(const std::string& detail) : ProviderError("ContextOverflow", detail) {}
};

struct ModeMismatch : ProviderError {
    explicit ModeMismatch(const std::string& detail) : ProviderError("ModeMismatch", detail) {}
};

struct EmptyCompletion : ProviderError {
    explicit EmptyCompletion(const std::string& detail) : ProviderError("EmptyCompletion", detail) {}
};

// --- parser -----------------------------------------------------------------

struct ParseError : Error {
    using Error::Error;
};

struct CountMismatch : ParseError {
    explicit CountMismatch(std::size_t found)
        : ParseError("CountMismatch", "found " + std::to_string(found) + " scores"), found(found) {}
    std::size_t found;
};

struct OutOfRange : ParseError {
    OutOfRange(int item_index, long long score)
        : ParseError("OutOfRange",
                     "item " + std::to_string(item_index) + " score " + std::to_string(score)),
          item_index(item_index), score(score) {}
    int item_index;
    long long score;
};

struct NonNumeric : ParseError {
    explicit NonNumeric(int item_index)
        : ParseError("NonNumeric", "item " + std::to_string(item_index)), item_index(item_index) {}
    int item_index;
};

struct RefusalDetected : ParseError {
    RefusalDetected() : ParseError("RefusalDetected", "completion contains no digits") {}
};

struct AmbiguousScore : ParseError {
    explicit AmbiguousScore(const std::string& detail) : ParseError("AmbiguousScore", detail) {}
};

struct EmptyDataset : Error {
    explicit EmptyDataset(const std::string& detail) : Error("EmptyDataset", detail) {}
};

// --- analysis ----------------------------------------------------------------

struct AnalysisError : Error {
    using Error::Error;
};

struct DegenerateInput : AnalysisError {
    explicit DegenerateInput(const std::string& detail) : AnalysisError("DegenerateInput", detail) {}
};

struct ZeroVariance : AnalysisError {
    explicit ZeroVariance(const std::string& detail) : AnalysisError("ZeroVariance", detail) {}
};

struct TooFewSessions : AnalysisError {
    explicit TooFewSessions(std::size_t n)
        : AnalysisError("TooFewSessions", "have " + std::to_string(n) + ", need >= 3") {}
};

struct DegenerateDissimilarity : AnalysisError {
    explicit DegenerateDissimilarity(const std::string& detail)
        : AnalysisError("DegenerateDissimilarity", detail) {}
};

struct DegenerateConfiguration : AnalysisError {
    explicit DegenerateConfiguration(const std::string& detail)
        : AnalysisError("DegenerateConfiguration", detail) {}
};

struct NoAnchoredSessions : AnalysisError {
    NoAnchoredSessions() : AnalysisError("NoAnchoredSessions", "dataset has no anchored sessions") {}
};

struct AllZeroDifferences : AnalysisError {
    AllZeroDifferences() : AnalysisError("AllZeroDifferences", "all paired differences are zero") {}
};

struct MissingInput : Error {
    explicit MissingInput(const std::string& path) : Error("MissingInput", path) {}
};

struct MalformedReport : Error {
    explicit MalformedReport(const std::string& detail) : Error("MalformedReport", detail) {}
};

}  // namespace vp
