#include "semmut/mr_catalog.hpp"

#include <algorithm>
#include <array>
#include <mutex>

#include "semmut/avp.hpp"
#include "semmut/kernel_catalog.hpp"
#include "semmut/rng.hpp"

namespace semmut {

std::string_view to_string(CellDensity d) {
    switch (d) {
        case CellDensity::substantial: return "substantial";
        case CellDensity::moderate: return "moderate";
        case CellDensity::vacant: return "vacant";
    }
    return "?";
}

std::string_view to_string(VerificationMethod m) {
    switch (m) {
        case VerificationMethod::tolerance_equality: return "tolerance_equality";
        case VerificationMethod::wilcoxon: return "wilcoxon_signed_rank";
        case VerificationMethod::convergence_order: return "convergence_order";
        case VerificationMethod::dtw: return "dtw";
        case VerificationMethod::exact_equality: return "exact_equality";
    }
    return "?";
}

namespace {

constexpr auto S = CellDensity::substantial;
constexpr auto M = CellDensity::moderate;
constexpr auto V = CellDensity::vacant;

// Rows A1..D3, columns MP1..MP5.
constexpr std::array<std::array<CellDensity, 5>, 12> kDensity{{
    {S, M, S, S, V},  // A1
    {S, V, M, M, S},  // A2
    {S, M, S, S, V},  // A3
    {S, M, V, V, M},  // B1
    {M, S, S, S, M},  // B2
    {S, V, S, M, V},  // B3
    {M, S, S, M, S},  // C1
    {S, M, S, M, S},  // C2
    {M, S, S, S, S},  // C3
    {S, S, M, M, S},  // D1
    {M, S, M, V, S},  // D2
    {S, S, M, V, S},  // D3
}};

std::size_t column(MetaPattern mp) {
    if (mp == MetaPattern::Eq) fail(ErrorKind::UnknownMetaPattern, "MP_eq has no density cell");
    return static_cast<std::size_t>(mp) - static_cast<std::size_t>(MetaPattern::MP1);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
    return h;
}

std::uint64_t point_seed(const MrContext& ctx, std::size_t i, bool shared) {
    return shared ? ctx.kernel_seed : derive_seed({ctx.kernel_seed, i});
}

}  // namespace

CellDensity density(PutId put, MetaPattern mp) { return kDensity[index_of(put)][column(mp)]; }

MetaPattern primary_mp(PutId put) {
    switch (put) {
        case PutId::B2: return MetaPattern::MP2;
        default: break;
    }
    switch (class_of(put)) {
        case PutClass::A:
        case PutClass::B: return MetaPattern::MP1;
        case PutClass::C: return MetaPattern::MP5;
        case PutClass::D: return MetaPattern::MP2;
    }
    return MetaPattern::MP1;
}

VerificationMethod MrInstance::method() const {
    switch (mp) {
        case MetaPattern::MP1: return VerificationMethod::tolerance_equality;
        case MetaPattern::MP2:
        case MetaPattern::MP5: return VerificationMethod::wilcoxon;
        case MetaPattern::MP3: return VerificationMethod::convergence_order;
        case MetaPattern::MP4: return VerificationMethod::dtw;
        case MetaPattern::Eq: return VerificationMethod::exact_equality;
    }
    return VerificationMethod::tolerance_equality;
}

std::vector<double> mr_inputs(const std::string& id, const Interval& region, const MrContext& ctx, int n) {
    Interval r = region;
    if (ctx.region) {
        r.lo = std::max(r.lo, ctx.region->lo);
        r.hi = std::min(r.hi, ctx.region->hi);
        if (r.lo > r.hi) return {};
    }
    CounterRng rng(derive_seed({ctx.sample_seed, fnv1a(id)}));
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (auto& x : xs) x = r.at(rng.uniform());
    return xs;
}

Transform identity_transform() {
    return [](double x) { return x; };
}

Transform shift_transform(double delta) {
    return [delta](double x) { return x + delta; };
}

MrInstance equality_mr(std::string id, PutId put, std::string description, Interval region, Transform t,
                       int points, PairFn fn, double eps, bool shared_seed) {
    MrInstance mr;
    mr.id = std::move(id);
    mr.put = put;
    mr.mp = MetaPattern::MP1;
    mr.description = std::move(description);
    mr.region = region;
    mr.transform = t;
    mr.tolerance = eps;
    mr.observe = [id = mr.id, region, t, points, fn, shared_seed](const Program& p,
                                                                  const MrContext& ctx) -> Observation {
        EqualityObservation o;
        auto xs = mr_inputs(id, region, ctx, points);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            auto [l, r] = fn(p, xs[i], t(xs[i]), point_seed(ctx, i, shared_seed));
            o.lhs.push_back(l);
            o.rhs.push_back(r);
        }
        return o;
    };
    return mr;
}

MrInstance ordering_mr(std::string id, PutId put, MetaPattern mp, std::string description, Interval region,
                       Transform t, ViolationFn fn, double alpha, bool shared_seed) {
    MrInstance mr;
    mr.id = std::move(id);
    mr.put = put;
    mr.mp = mp;
    mr.description = std::move(description);
    mr.region = region;
    mr.transform = t;
    mr.tolerance = alpha;
    mr.observe = [id = mr.id, region, t, fn, shared_seed](const Program& p, const MrContext& ctx) -> Observation {
        OrderingObservation o;
        auto xs = mr_inputs(id, region, ctx, kOrderingPairs);
        for (std::size_t i = 0; i < xs.size(); ++i)
            o.violations.push_back(fn(p, xs[i], t(xs[i]), point_seed(ctx, i, shared_seed)));
        return o;
    };
    return mr;
}

MrInstance convergence_mr(std::string id, PutId put, std::string description, Interval region, Transform t,
                          int points, double expected_order, double order_tolerance, ErrorSeriesFn fn,
                          bool shared_seed) {
    MrInstance mr;
    mr.id = std::move(id);
    mr.put = put;
    mr.mp = MetaPattern::MP3;
    mr.description = std::move(description);
    mr.region = region;
    mr.transform = t;
    mr.tolerance = order_tolerance;
    mr.expected_order = expected_order;
    mr.observe = [id = mr.id, region, t, points, fn, shared_seed](const Program& p,
                                                                  const MrContext& ctx) -> Observation {
        ConvergenceObservation o;
        auto xs = mr_inputs(id, region, ctx, points);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            auto series = fn(p, xs[i], t(xs[i]), point_seed(ctx, i, shared_seed));
            if (o.errors.empty()) {
                o.errors = std::move(series);
                continue;
            }
            for (std::size_t k = 0; k < series.size() && k < o.errors.size(); ++k) o.errors[k].second += series[k].second;
        }
        return o;
    };
    return mr;
}

MrInstance trajectory_mr(std::string id, PutId put, std::string description, Interval region, Transform t,
                         TrajectoryPairFn fn) {
    MrInstance mr;
    mr.id = std::move(id);
    mr.put = put;
    mr.mp = MetaPattern::MP4;
    mr.description = std::move(description);
    mr.region = region;
    mr.transform = t;
    mr.observe = [id = mr.id, region, t, fn](const Program& p, const MrContext& ctx) -> Observation {
        TrajectoryObservation o;
        auto xs = mr_inputs(id, region, ctx, 1);
        if (xs.empty()) return o;
        auto [a, b] = fn(p, xs[0], t(xs[0]), point_seed(ctx, 0, false));
        o.a = std::move(a);
        o.b = std::move(b);
        return o;
    };
    return mr;
}

namespace {

constexpr int kCalibrationContexts = 8;
constexpr double kDtwFactor = 3.0;
constexpr double kDtwFloor = 1e-6;

// eps_DTW = 3 x the largest DTW the unmutated kernel produces over a fixed
// set of calibration contexts.
void calibrate_dtw(MrInstance& mr) {
    const Program& original = original_program(mr.put);
    double worst = 0.0;
    for (int i = 0; i < kCalibrationContexts; ++i) {
        std::uint64_t s = derive_seed({0xca11b7a7eULL, static_cast<std::uint64_t>(i)});
        auto o = std::get<TrajectoryObservation>(mr.observe(original, MrContext{s, s, std::nullopt}));
        if (!o.a.empty()) worst = std::max(worst, dtw_distance(o.a, o.b));
    }
    mr.tolerance = std::max(kDtwFactor * worst, kDtwFloor);
}

}  // namespace

const std::vector<MrInstance>& mrs_for(PutId put, MetaPattern mp) {
    static std::array<std::once_flag, 60> once;
    static std::array<std::vector<MrInstance>, 60> table;
    const std::size_t cell = index_of(put) * 5 + column(mp);
    std::call_once(once[cell], [&] {
        std::vector<MrInstance> mrs;
        switch (class_of(put)) {
            case PutClass::A: mrs = class_a_relations(put, mp); break;
            case PutClass::B: mrs = class_b_relations(put, mp); break;
            case PutClass::C: mrs = class_c_relations(put, mp); break;
            case PutClass::D: mrs = class_d_relations(put, mp); break;
        }
        for (auto& mr : mrs)
            if (mr.mp == MetaPattern::MP4) calibrate_dtw(mr);
        table[cell] = std::move(mrs);
    });
    return table[cell];
}

MrInstance equality_pattern_mr(const Program& reference, std::size_t k_eq) {
    MrInstance mr;
    mr.id = std::string(to_string(reference.put())) + "-EQ";
    mr.put = reference.put();
    mr.mp = MetaPattern::Eq;
    mr.description = "identity transform; outputs bitwise equal to the reference on the shared input stream";
    mr.region = reference.domain();
    mr.transform = identity_transform();
    mr.exact = true;
    mr.observe = [reference, k_eq](const Program& p, const MrContext& ctx) -> Observation {
        EqualityObservation o;
        o.lhs.reserve(k_eq);
        o.rhs.reserve(k_eq);
        for (std::size_t i = 0; i < k_eq; ++i) {
            SamplePoint s = stream_point(reference.domain(), ctx.sample_seed, i);
            o.lhs.push_back(p(s.x, s.seed));
            o.rhs.push_back(reference(s.x, s.seed));
        }
        return o;
    };
    return mr;
}

}  // namespace semmut
