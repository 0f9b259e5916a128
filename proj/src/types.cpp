#include "semmut/types.hpp"

#include <algorithm>

namespace semmut {

std::string_view to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::UnknownPut: return "UnknownPut";
        case ErrorKind::DomainViolation: return "DomainViolation";
        case ErrorKind::NonFiniteOutput: return "NonFiniteOutput";
        case ErrorKind::NotTrajectoryCapable: return "NotTrajectoryCapable";
        case ErrorKind::UnknownOperator: return "UnknownOperator";
        case ErrorKind::NotDeterministicClass: return "NotDeterministicClass";
        case ErrorKind::UnknownMetaPattern: return "UnknownMetaPattern";
        case ErrorKind::EmptySample: return "EmptySample";
        case ErrorKind::NonPositiveError: return "NonPositiveError";
        case ErrorKind::IrregularRefinement: return "IrregularRefinement";
        case ErrorKind::EmptySequence: return "EmptySequence";
        case ErrorKind::AllEquivalent: return "AllEquivalent";
        case ErrorKind::ConfigInvalid: return "ConfigInvalid";
        case ErrorKind::ConfigIncomplete: return "ConfigIncomplete";
        case ErrorKind::NoKills: return "NoKills";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::ZeroMean: return "ZeroMean";
        case ErrorKind::UnreachableTarget: return "UnreachableTarget";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::MismatchDetected: return "MismatchDetected";
        case ErrorKind::TrivialisationViolated: return "TrivialisationViolated";
        case ErrorKind::MissingInput: return "MissingInput";
        case ErrorKind::DegenerateSample: return "DegenerateSample";
        case ErrorKind::DegenerateMatrix: return "DegenerateMatrix";
        case ErrorKind::IncompleteInput: return "IncompleteInput";
        case ErrorKind::MissingEvidence: return "MissingEvidence";
        case ErrorKind::ResultsMissing: return "ResultsMissing";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

namespace {
constexpr std::array<std::string_view, 12> kPutNames{"A1", "A2", "A3", "B1", "B2", "B3",
                                                     "C1", "C2", "C3", "D1", "D2", "D3"};
constexpr std::array<std::string_view, 6> kMpNames{"MP1", "MP2", "MP3", "MP4", "MP5", "MP_eq"};
constexpr std::array<std::string_view, 5> kOpNames{"CE", "OS", "HP", "TF", "SI"};
}  // namespace

std::size_t index_of(PutId id) {
    auto i = static_cast<std::size_t>(id);
    if (i >= kPutNames.size()) fail(ErrorKind::UnknownPut, "put index " + std::to_string(i));
    return i;
}

PutClass class_of(PutId id) { return static_cast<PutClass>(index_of(id) / 3); }

std::string_view to_string(PutId id) { return kPutNames[index_of(id)]; }

std::string_view to_string(PutClass c) {
    static constexpr std::array<std::string_view, 4> names{"A", "B", "C", "D"};
    return names.at(static_cast<std::size_t>(c));
}

std::optional<PutId> parse_put(std::string_view s) {
    auto it = std::find(kPutNames.begin(), kPutNames.end(), s);
    if (it == kPutNames.end()) return std::nullopt;
    return static_cast<PutId>(it - kPutNames.begin());
}

std::string_view to_string(MetaPattern mp) { return kMpNames.at(static_cast<std::size_t>(mp)); }

std::optional<MetaPattern> parse_pattern(std::string_view s) {
    auto it = std::find(kMpNames.begin(), kMpNames.end(), s);
    if (it == kMpNames.end()) return std::nullopt;
    return static_cast<MetaPattern>(it - kMpNames.begin());
}

std::size_t index_of(MetaPattern mp) {
    auto i = static_cast<std::size_t>(mp);
    if (i >= 5) fail(ErrorKind::UnknownMetaPattern, "not a campaign pattern");
    return i;
}

std::string_view to_string(OperatorClass op) { return kOpNames.at(index_of(op)); }

std::optional<OperatorClass> parse_operator(std::string_view s) {
    auto it = std::find(kOpNames.begin(), kOpNames.end(), s);
    if (it == kOpNames.end()) return std::nullopt;
    return static_cast<OperatorClass>(it - kOpNames.begin());
}

std::size_t index_of(OperatorClass op) {
    auto i = static_cast<std::size_t>(op);
    if (i >= kOpNames.size()) fail(ErrorKind::UnknownOperator, "operator index " + std::to_string(i));
    return i;
}

MetaPattern aligned_pattern(OperatorClass op) { return kCampaignPatterns[index_of(op)]; }

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
    Interval r{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
    if (r.lo > r.hi) return std::nullopt;
    return r;
}

}  // namespace semmut
