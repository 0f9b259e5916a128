#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace semmut {

enum class ErrorKind {
    UnknownPut,
    DomainViolation,
    NonFiniteOutput,
    NotTrajectoryCapable,
    UnknownOperator,
    NotDeterministicClass,
    UnknownMetaPattern,
    EmptySample,
    NonPositiveError,
    IrregularRefinement,
    EmptySequence,
    AllEquivalent,
    ConfigInvalid,
    ConfigIncomplete,
    NoKills,
    LengthMismatch,
    ZeroMean,
    UnreachableTarget,
    InvalidArgument,
    MismatchDetected,
    TrivialisationViolated,
    MissingInput,
    DegenerateSample,
    DegenerateMatrix,
    IncompleteInput,
    MissingEvidence,
    ResultsMissing,
};

std::string_view to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

enum class PutId : std::uint8_t { A1, A2, A3, B1, B2, B3, C1, C2, C3, D1, D2, D3 };
enum class PutClass : std::uint8_t { A, B, C, D };

inline constexpr std::array<PutId, 12> kAllPuts{PutId::A1, PutId::A2, PutId::A3, PutId::B1,
                                               PutId::B2, PutId::B3, PutId::C1, PutId::C2,
                                               PutId::C3, PutId::D1, PutId::D2, PutId::D3};

// Throws UnknownPut for values outside the enumeration.
PutClass class_of(PutId id);
std::string_view to_string(PutId id);
std::string_view to_string(PutClass c);
std::optional<PutId> parse_put(std::string_view s);
std::size_t index_of(PutId id);

// MP1..MP5 carry the campaign; Eq only exists for the degenerate limit.
enum class MetaPattern : std::uint8_t { MP1, MP2, MP3, MP4, MP5, Eq };

inline constexpr std::array<MetaPattern, 5> kCampaignPatterns{
    MetaPattern::MP1, MetaPattern::MP2, MetaPattern::MP3, MetaPattern::MP4, MetaPattern::MP5};

std::string_view to_string(MetaPattern mp);
std::optional<MetaPattern> parse_pattern(std::string_view s);
std::size_t index_of(MetaPattern mp);

enum class OperatorClass : std::uint8_t { CE, OS, HP, TF, SI };

inline constexpr std::array<OperatorClass, 5> kAllOperators{
    OperatorClass::CE, OperatorClass::OS, OperatorClass::HP, OperatorClass::TF, OperatorClass::SI};

std::string_view to_string(OperatorClass op);
std::optional<OperatorClass> parse_operator(std::string_view s);
std::size_t index_of(OperatorClass op);
MetaPattern aligned_pattern(OperatorClass op);

struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    double width() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
    double at(double t) const { return lo + t * (hi - lo); }
};

std::optional<Interval> intersect(const Interval& a, const Interval& b);

// fidelity selects the refinement level (0 = baseline), variant selects an
// auxiliary observable of the same computation.
struct Query {
    double x = 0.0;
    std::uint64_t seed = 0;
    int fidelity = 0;
    int variant = 0;
};

}  // namespace semmut
