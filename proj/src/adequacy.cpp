#include "semmut/adequacy.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "parallel.hpp"
#include "semmut/kernel_catalog.hpp"
#include "semmut/rng.hpp"

namespace semmut {

namespace {

constexpr std::array<std::string_view, 3> kModeNames{"E1_and_E2", "E1_only", "E2_only"};
constexpr std::array<std::string_view, 3> kStateNames{"equivalent", "killed", "survived"};
constexpr std::array<std::string_view, 5> kCauseNames{"C1", "C2", "C3", "C4", "C5"};

template <class E, std::size_t N>
std::optional<E> parse_name(const std::array<std::string_view, N>& names, std::string_view s) {
    auto it = std::find(names.begin(), names.end(), s);
    if (it == names.end()) return std::nullopt;
    return static_cast<E>(it - names.begin());
}

bool outputs_agree(double a, double b, double eps) {
    if (!std::isfinite(a) || !std::isfinite(b)) return false;
    return eps == 0.0 ? a == b : std::abs(a - b) <= eps;
}

bool passes(const Program& p, const MrInstance& mr, const MrContext& ctx) { return avp_verify(p, mr, ctx).passed(); }

}  // namespace

std::string_view to_string(EquivalenceMode m) { return kModeNames.at(static_cast<std::size_t>(m)); }

std::optional<EquivalenceMode> parse_equivalence_mode(std::string_view s) {
    if (s == "e1e2") return EquivalenceMode::E1_and_E2;
    if (s == "e1") return EquivalenceMode::E1_only;
    if (s == "e2") return EquivalenceMode::E2_only;
    return parse_name<EquivalenceMode>(kModeNames, s);
}

std::string_view to_string(MutantState s) { return kStateNames.at(static_cast<std::size_t>(s)); }

std::optional<MutantState> parse_mutant_state(std::string_view s) { return parse_name<MutantState>(kStateNames, s); }

std::string_view to_string(RootCause c) { return kCauseNames.at(static_cast<std::size_t>(c)); }

std::optional<RootCause> parse_root_cause(std::string_view s) { return parse_name<RootCause>(kCauseNames, s); }

void EquivalenceConfig::validate() const {
    if (k_eq < 1) fail(ErrorKind::ConfigInvalid, "k_eq must be >= 1");
    if (!(eps_eq >= 0.0) || !std::isfinite(eps_eq)) fail(ErrorKind::ConfigInvalid, "eps_eq must be finite and >= 0");
}

void EngineConfig::validate() const {
    equivalence.validate();
    if (replicates < 1) fail(ErrorKind::ConfigInvalid, "replicates must be >= 1");
    if (workers < 1) fail(ErrorKind::ConfigInvalid, "workers must be >= 1");
}

bool e2_output_equivalence(const Program& original, const Program& mutant, const EquivalenceConfig& cfg,
                           std::uint64_t seed) {
    for (std::size_t i = 0; i < cfg.k_eq; ++i) {
        SamplePoint s = stream_point(original.domain(), seed, i);
        double a = original(s.x, s.seed);
        double b;
        try {
            b = mutant(s.x, s.seed);
        } catch (const std::exception&) {
            return false;
        }
        if (!outputs_agree(a, b, cfg.eps_eq)) return false;
    }
    return true;
}

bool e1_avp_coherence(const Program& original, const Program& mutant, std::span<const MrInstance> mrs,
                      const MrContext& ctx) {
    for (const auto& mr : mrs)
        if (passes(original, mr, ctx) != passes(mutant, mr, ctx)) return false;
    return true;
}

bool e1_avp_coherence(const Program& original, const Program& mutant, std::span<const MrInstance> mrs,
                      std::uint64_t seed) {
    return e1_avp_coherence(original, mutant, mrs, MrContext{seed, seed, std::nullopt});
}

bool killed_determination(const Program& original, const Program& mutant, std::span<const MrInstance> mrs,
                          const MrContext& ctx) {
    for (const auto& mr : mrs)
        if (passes(original, mr, ctx) && !passes(mutant, mr, ctx)) return true;
    return false;
}

bool killed_determination(const Program& original, const Program& mutant, std::span<const MrInstance> mrs,
                          std::uint64_t seed) {
    return killed_determination(original, mutant, mrs, MrContext{seed, seed, std::nullopt});
}

MutantState classify_mutant(const Program& original, const Program& mutant, std::span<const MrInstance> mrs,
                            const EquivalenceConfig& cfg, std::uint64_t seed) {
    bool equivalent = false;
    switch (cfg.mode) {
        case EquivalenceMode::E1_and_E2:
            equivalent = e2_output_equivalence(original, mutant, cfg, seed) &&
                         e1_avp_coherence(original, mutant, mrs, seed);
            break;
        case EquivalenceMode::E1_only: equivalent = e1_avp_coherence(original, mutant, mrs, seed); break;
        case EquivalenceMode::E2_only: equivalent = e2_output_equivalence(original, mutant, cfg, seed); break;
    }
    if (equivalent) return MutantState::equivalent;
    return killed_determination(original, mutant, mrs, seed) ? MutantState::killed : MutantState::survived;
}

double compute_sms(int inst, int equiv, int killed) {
    if (inst < 0 || equiv < 0 || killed < 0 || inst < equiv + killed)
        fail(ErrorKind::InvalidArgument, "compute_sms needs inst >= equiv + killed >= 0");
    if (inst == equiv) fail(ErrorKind::AllEquivalent, "every instantiated mutant is equivalent");
    return static_cast<double>(killed) / static_cast<double>(inst - equiv);
}

double false_equiv_bound(std::size_t k_eq, double p) {
    if (k_eq < 1 || !(p >= 0.0 && p <= 1.0)) fail(ErrorKind::InvalidArgument, "need k_eq >= 1 and p in [0, 1]");
    return std::exp(static_cast<double>(k_eq) * std::log1p(-p));
}

CellSeeds cell_seeds(PutId put, MetaPattern mp, int replicates, std::uint64_t seed) {
    const std::uint64_t i = index_of(put), k = index_of(mp);
    CellSeeds s;
    s.e2 = derive_seed({seed, i, 0xe2});
    s.sample = derive_seed({seed, i, k, 0x5a});
    for (int r = 0; r < replicates; ++r) s.kernel.push_back(derive_seed({seed, i, k, 0x4b, static_cast<std::uint64_t>(r)}));
    return s;
}

namespace {

struct Judge {
    const Program& original;
    std::span<const MrInstance> mrs;
    const EquivalenceConfig& cfg;
    const CellSeeds& seeds;
    std::size_t evaluated;  // replicates actually run
    std::vector<std::vector<char>> original_pass;  // [replicate][mr]
    bool any_pass = false;
    bool any_fail = false;

    MrContext context(std::size_t r) const { return MrContext{seeds.sample, seeds.kernel[r], std::nullopt}; }

    void prepare() {
        original_pass.assign(evaluated, std::vector<char>(mrs.size(), 0));
        for (std::size_t r = 0; r < evaluated; ++r)
            for (std::size_t m = 0; m < mrs.size(); ++m) {
                bool ok = passes(original, mrs[m], context(r));
                original_pass[r][m] = ok;
                (ok ? any_pass : any_fail) = true;
            }
    }

    bool coherent(const Program& mutant) {
        for (std::size_t m = 0; m < mrs.size(); ++m) {
            bool ok = passes(mutant, mrs[m], context(0));
            (ok ? any_pass : any_fail) = true;
            if (ok != static_cast<bool>(original_pass[0][m])) return false;
        }
        return true;
    }

    // Kill check for one replicate. With `all` every MR is evaluated and the
    // methods of the killing ones collected; otherwise stops at the first.
    bool kills(const Program& mutant, std::size_t r, bool all, std::vector<VerificationMethod>* methods) {
        bool killed = false;
        for (std::size_t m = 0; m < mrs.size(); ++m) {
            if (!original_pass[r][m]) continue;
            bool ok = passes(mutant, mrs[m], context(r));
            (ok ? any_pass : any_fail) = true;
            if (ok) continue;
            killed = true;
            if (methods) methods->push_back(mrs[m].method());
            if (!all) break;
        }
        return killed;
    }

    MutantOutcome judge(const MutantRecord& mutant, std::optional<bool> e2_hint) {
        MutantOutcome out;
        out.id = mutant.id;
        out.op = mutant.op;
        out.artefact_flag = mutant.artefact_flag;
        out.changed_parameters = mutant.changed_parameters;

        auto e2 = [&] {
            if (!out.e2) out.e2 = e2_hint ? *e2_hint : e2_output_equivalence(original, mutant.program, cfg, seeds.e2);
            return *out.e2;
        };
        auto e1 = [&] {
            if (!out.e1) out.e1 = coherent(mutant.program);
            return *out.e1;
        };
        bool equivalent = false;
        switch (cfg.mode) {
            case EquivalenceMode::E1_and_E2: equivalent = e2() && e1(); break;
            case EquivalenceMode::E1_only: equivalent = e1(); break;
            case EquivalenceMode::E2_only: equivalent = e2(); break;
        }
        if (equivalent) {
            out.state = MutantState::equivalent;
            return out;
        }

        int killed_reps = 0;
        std::optional<std::size_t> first_kill;
        for (std::size_t r = 0; r < evaluated; ++r) {
            bool first = !first_kill;
            if (kills(mutant.program, r, first, first ? &out.kill_methods : nullptr)) {
                ++killed_reps;
                if (first) first_kill = r;
            }
        }
        const std::size_t n = seeds.kernel.size();
        if (evaluated < n) killed_reps *= static_cast<int>(n);  // collapsed replicates are identical
        out.fail_ratio = static_cast<double>(killed_reps) / static_cast<double>(n);
        if (!first_kill) {
            out.state = MutantState::survived;
            return out;
        }
        out.state = MutantState::killed;
        std::sort(out.kill_methods.begin(), out.kill_methods.end());
        out.kill_methods.erase(std::unique(out.kill_methods.begin(), out.kill_methods.end()), out.kill_methods.end());

        // In-band reruns feed the OOD triage, which only applies to the
        // surrogate and learning classes.
        PutClass cls = class_of(original.put());
        if (cls == PutClass::C || cls == PutClass::D) {
            const Interval d = original.domain();
            for (double band : kOodBands) {
                MrContext ctx = context(*first_kill);
                ctx.region = Interval{d.lo + band * d.width(), d.hi - band * d.width()};
                out.in_band_killed.emplace_back(band, killed_determination(original, mutant.program, mrs, ctx));
            }
        }
        return out;
    }
};

}  // namespace

std::vector<MutantOutcome> evaluate_mutants(const Program& original, std::span<const MutantRecord> mutants,
                                            std::span<const MrInstance> mrs, const EquivalenceConfig& cfg,
                                            const CellSeeds& seeds, bool collapse_replicates, bool* observed_pass,
                                            bool* observed_fail) {
    return evaluate_mutants(original, mutants, mrs, cfg, seeds, collapse_replicates, {}, observed_pass,
                            observed_fail);
}

std::vector<MutantOutcome> evaluate_mutants(const Program& original, std::span<const MutantRecord> mutants,
                                            std::span<const MrInstance> mrs, const EquivalenceConfig& cfg,
                                            const CellSeeds& seeds, bool collapse_replicates,
                                            std::span<const std::optional<bool>> e2_hints, bool* observed_pass,
                                            bool* observed_fail) {
    cfg.validate();
    if (seeds.kernel.empty()) fail(ErrorKind::ConfigInvalid, "at least one replicate is required");
    Judge judge{original, mrs, cfg, seeds, collapse_replicates ? 1 : seeds.kernel.size(), {}, false, false};
    judge.prepare();
    std::vector<MutantOutcome> out;
    out.reserve(mutants.size());
    for (std::size_t i = 0; i < mutants.size(); ++i)
        out.push_back(judge.judge(mutants[i], i < e2_hints.size() ? e2_hints[i] : std::nullopt));
    if (observed_pass) *observed_pass = judge.any_pass;
    if (observed_fail) *observed_fail = judge.any_fail;
    return out;
}

void summarize(CellResult& c) {
    c.inst_count = static_cast<int>(c.per_mutant.size());
    c.equiv_count = c.killed_count = c.survive_count = 0;
    for (const auto& m : c.per_mutant) {
        switch (m.state) {
            case MutantState::equivalent: ++c.equiv_count; break;
            case MutantState::killed: ++c.killed_count; break;
            case MutantState::survived: ++c.survive_count; break;
        }
    }
    c.sms = c.inst_count > c.equiv_count ? std::optional(compute_sms(c.inst_count, c.equiv_count, c.killed_count))
                                         : std::nullopt;
    auto ratio = [](int a, int b) { return b > 0 ? static_cast<double>(a) / b : 0.0; };
    c.inst_rate = ratio(c.inst_count, c.pool_size);
    c.equiv_rate = ratio(c.equiv_count, c.inst_count);
    c.survive_rate = ratio(c.survive_count, c.inst_count);
}

namespace {

bool seed_free(PutId put) { return !descriptor(put).stochastic; }

}  // namespace

CellResult run_cell(PutId put, MetaPattern mp, OperatorClass op, const EngineConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    auto mutants = catalog(put, op);
    CellResult cell;
    cell.put = put;
    cell.mp = mp;
    cell.op = op;
    cell.aligned = mp == primary_mp(put);
    cell.pool_size = static_cast<int>(authored_count(put, op));
    cell.per_mutant = evaluate_mutants(original_program(put), mutants, mrs_for(put, mp), cfg.equivalence,
                                       cell_seeds(put, mp, cfg.replicates, seed), seed_free(put), &cell.observed_pass,
                                       &cell.observed_fail);
    summarize(cell);
    return cell;
}

CampaignResult run_campaign(const EngineConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    CampaignResult result;
    result.seed = seed;
    result.config = cfg;

    std::array<std::vector<MutantRecord>, 12> pools;
    for (PutId p : kAllPuts) pools[index_of(p)] = pool(p);
    // Force the lazily built MR tables before the workers start.
    for (PutId p : kAllPuts)
        for (MetaPattern mp : kCampaignPatterns) mrs_for(p, mp);

    // E2 does not depend on the pattern: decide it once per mutant.
    std::array<std::vector<std::optional<bool>>, 12> e2;
    std::vector<std::pair<std::size_t, std::size_t>> jobs;
    for (std::size_t i = 0; i < 12; ++i) {
        e2[i].resize(pools[i].size());
        for (std::size_t m = 0; m < pools[i].size(); ++m) jobs.emplace_back(i, m);
    }
    if (cfg.equivalence.mode != EquivalenceMode::E1_only) {
        detail::parallel_for(jobs.size(), cfg.workers, [&](std::size_t j) {
            auto [i, m] = jobs[j];
            PutId put = kAllPuts[i];
            e2[i][m] = e2_output_equivalence(original_program(put), pools[i][m].program, cfg.equivalence,
                                             cell_seeds(put, MetaPattern::MP1, 1, seed).e2);
        });
    }

    result.cells.resize(60);
    detail::parallel_for(60, cfg.workers, [&](std::size_t c) {
        std::size_t i = c / 5;
        PutId put = kAllPuts[i];
        MetaPattern mp = kCampaignPatterns[c % 5];
        CellResult& cell = result.cells[c];
        cell.put = put;
        cell.mp = mp;
        cell.aligned = mp == primary_mp(put);
        cell.pool_size = static_cast<int>(authored(put).size());
        cell.per_mutant = evaluate_mutants(original_program(put), pools[i], mrs_for(put, mp), cfg.equivalence,
                                           cell_seeds(put, mp, cfg.replicates, seed), seed_free(put), e2[i],
                                           &cell.observed_pass, &cell.observed_fail);
        summarize(cell);
    });

    for (const CellResult& pooled : result.cells) {
        for (OperatorClass op : kAllOperators) {
            CellResult cell;
            cell.put = pooled.put;
            cell.mp = pooled.mp;
            cell.op = op;
            cell.aligned = pooled.aligned;
            cell.pool_size = static_cast<int>(authored_count(pooled.put, op));
            cell.observed_pass = pooled.observed_pass;
            cell.observed_fail = pooled.observed_fail;
            for (const auto& m : pooled.per_mutant)
                if (m.op == op) cell.per_mutant.push_back(m);
            summarize(cell);
            result.tensor.push_back(std::move(cell));
        }
    }
    return result;
}

double pattern_coverage(std::span<const CellResult> put_results) {
    std::array<std::array<bool, 2>, 5> seen{};
    for (const auto& c : put_results) {
        if (c.mp == MetaPattern::Eq) continue;
        auto k = index_of(c.mp);
        seen[k][0] = seen[k][0] || c.observed_pass;
        seen[k][1] = seen[k][1] || c.observed_fail;
    }
    int n = 0;
    for (const auto& s : seen) n += s[0] + s[1];
    return n / 10.0;
}

}  // namespace semmut
