// One line per acceptance criterion. Criteria 2, 3, 8 and 9 drive the CLI
// on the default campaign twice (1 and 2 workers); the rest run in-process.
#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "semmut/avp.hpp"
#include "semmut/bundle.hpp"
#include "semmut/degeneration.hpp"
#include "semmut/lrca.hpp"
#include "semmut/rng.hpp"
#include "semmut/stats.hpp"

using namespace semmut;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool ok = true;
    std::string note;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            note = what;
        }
    }
};

int failures = 0;

void report(int n, const std::string& title, const Outcome& o, const std::string& extra = "") {
    std::printf("criterion %d: %s: %s", n, o.ok ? "PASS" : "FAIL", title.c_str());
    if (!o.ok) std::printf(" [%s]", o.note.c_str());
    else if (!extra.empty()) std::printf(" [%s]", extra.c_str());
    std::printf("\n");
    std::fflush(stdout);
    failures += !o.ok;
}

Outcome guarded(const std::function<void(Outcome&)>& body) {
    Outcome o;
    try {
        body(o);
    } catch (const std::exception& e) {
        o.ok = false;
        o.note = std::string("exception: ") + e.what();
    }
    return o;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Brute-force references.

double delta_pairs(const std::vector<double>& a, const std::vector<double>& b) {
    long long s = 0;
    for (double x : a)
        for (double y : b) s += (x > y) - (x < y);
    return static_cast<double>(s) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

double dtw_paths(const std::vector<double>& a, const std::vector<double>& b, std::size_t i, std::size_t j) {
    double c = std::abs(a[i] - b[j]);
    if (i + 1 == a.size() && j + 1 == b.size()) return c;
    double best = INFINITY;
    if (i + 1 < a.size()) best = std::min(best, dtw_paths(a, b, i + 1, j));
    if (j + 1 < b.size()) best = std::min(best, dtw_paths(a, b, i, j + 1));
    if (i + 1 < a.size() && j + 1 < b.size()) best = std::min(best, dtw_paths(a, b, i + 1, j + 1));
    return c + best;
}

double wilcoxon_enumerated(const std::vector<double>& d, Alternative alt) {
    std::vector<double> mag;
    std::vector<double> nz;
    for (double x : d)
        if (x != 0.0) {
            nz.push_back(x);
            mag.push_back(std::abs(x));
        }
    auto ranks = midranks(mag);
    double w_obs = 0;
    for (std::size_t i = 0; i < nz.size(); ++i)
        if (nz[i] > 0) w_obs += ranks[i];
    const std::size_t n = nz.size();
    double up = 0, lo = 0;
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        double w = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) w += ranks[i];
        up += w >= w_obs - 1e-9;
        lo += w <= w_obs + 1e-9;
    }
    const double all = std::ldexp(1.0, static_cast<int>(n));
    up /= all;
    lo /= all;
    if (alt == Alternative::greater) return up;
    if (alt == Alternative::less) return lo;
    return std::min(1.0, 2 * std::min(up, lo));
}

// Criteria.

void degeneration(Outcome& o, std::string& extra) {
    DegenerateLimitConfig cfg;
    std::ostringstream s;
    for (PutId p : {PutId::A1, PutId::A2, PutId::A3}) {
        auto t = std::chrono::steady_clock::now();
        auto r = check_degeneration(p, cfg, 42);
        double secs = seconds_since(t);
        std::string name(to_string(p));
        o.require(r.equal, name + " SMS differs from MS");
        o.require(r.equiv_sms == r.equiv_ms && r.killed_sms == r.killed_ms, name + " counts differ");
        o.require(r.sms.has_value() && r.ms.has_value() && *r.sms == *r.ms, name + " scores differ");
        o.require(r.label_histogram[0] == r.killed_sms, name + " has a non-C1 kill");
        o.require(r.suspect_share.value_or(0.0) == 0.0, name + " suspect_share > 0");
        o.require(secs < 60.0, name + " took " + std::to_string(secs) + " s");
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s%s %d/%d/%d %.1fs", s.tellp() ? ", " : "", name.c_str(), r.mutants,
                      r.equiv_sms, r.killed_sms, secs);
        s << buf;
    }
    extra = "mutants/equiv/killed " + s.str();
}

void partition(Outcome& o, const json& campaign) {
    o.require(campaign.at("cells").size() == 60, "expected 60 pooled cells");
    o.require(campaign.at("tensor").size() == 300, "expected 300 tensor cells");
    const json& cfg = campaign.at("config");
    o.require(cfg.at("k_eq") == 1000 && cfg.at("replicates") == 20, "campaign is not the default configuration");
    for (const char* part : {"cells", "tensor"})
        for (const auto& c : campaign.at(part)) {
            int inst = c.at("inst_count"), eq = c.at("equiv_count"), k = c.at("killed_count"),
                sv = c.at("survive_count");
            o.require(eq + k + sv == inst, "partition broken in " + c.at("put").get<std::string>());
            auto sms = number_from(c.at("sms"));
            if (sms) o.require(*sms >= 0.0 && *sms <= 1.0, "SMS outside [0, 1]");
            else o.require(inst == eq, "undefined SMS on a cell with non-equivalent mutants");
        }
}

void h1(Outcome& o, const json& campaign, const json& stats, std::string& extra) {
    // Non-equivalent mutants per (PUT, operator): the smallest count over
    // the five patterns, so the bound holds whichever MR set judges them.
    std::map<std::string, std::map<std::string, int>> nonequiv;
    for (const auto& c : campaign.at("tensor")) {
        int n = c.at("inst_count").get<int>() - c.at("equiv_count").get<int>();
        auto& slot = nonequiv[c.at("put")].try_emplace(c.at("operator"), n).first->second;
        slot = std::min(slot, n);
    }
    int puts = 0;
    for (const auto& [put, ops] : nonequiv) {
        int good = 0;
        for (const auto& [op, n] : ops) good += n >= 5;
        puts += good >= 4;
    }
    o.require(nonequiv.size() == 12, "tensor does not cover 12 PUTs");
    o.require(puts >= 9, "only " + std::to_string(puts) + " PUTs meet the operator bound");
    const json& v = stats.at("hypotheses").at("H1");
    o.require(v.at("verdict") == "met", "stats report H1 verdict is not met");
    o.require(v.at("puts_meeting") == puts, "stats report disagrees with the tensor count");
    extra = std::to_string(puts) + "/12 PUTs";
}

void oracles(Outcome& o) {
    CounterRng rng(2718);
    for (int t = 0; t < 300; ++t) {
        std::vector<double> a(1 + rng.below(20)), b(1 + rng.below(20));
        for (double& x : a) x = static_cast<double>(rng.below(6)) / 5;
        for (double& x : b) x = static_cast<double>(rng.below(6)) / 5;
        o.require(cliffs_delta(a, b) == delta_pairs(a, b), "cliffs_delta differs from pair enumeration");
    }
    for (int t = 0; t < 300; ++t) {
        std::vector<double> a(1 + rng.below(6)), b(1 + rng.below(6));
        for (double& x : a) x = static_cast<double>(rng.below(9)) / 4;
        for (double& x : b) x = static_cast<double>(rng.below(9)) / 4;
        o.require(dtw_distance(a, b) == dtw_paths(a, b, 0, 0), "DTW differs from exhaustive alignment");
    }
    for (int t = 0; t < 300; ++t) {
        std::vector<double> d(1 + rng.below(10));
        for (double& x : d) x = (rng.uniform() < 0.5 ? -1.0 : 1.0) * static_cast<double>(1 + rng.below(5));
        for (Alternative alt : {Alternative::greater, Alternative::less, Alternative::two_sided}) {
            double got = signed_rank_test(d, alt).p_value, want = wilcoxon_enumerated(d, alt);
            o.require(std::abs(got - want) <= 1e-12, "Wilcoxon p differs from 2^n enumeration");
        }
    }
    for (int t = 0; t < 200; ++t) {
        std::size_t n = 2 + rng.below(15), k = 2 + rng.below(6);
        std::vector<std::vector<double>> rows(n, std::vector<double>(k));
        for (auto& row : rows)
            for (double& x : row) x = static_cast<double>(rng.below(5));
        auto f = friedman(rows);
        o.require(std::abs(f.chi2 - f.kendalls_w * static_cast<double>(n * (k - 1))) <= 1e-12,
                  "chi2 != W n (k - 1)");
    }
    for (int p = 1; p <= 4; ++p) {
        std::vector<std::pair<double, double>> e;
        for (double h : {0.2, 0.1, 0.05, 0.025}) e.emplace_back(h, std::pow(h, p));
        o.require(std::abs(convergence_order(e).observed_order - p) <= 1e-12, "convergence order not exact");
    }
}

void rank_invariance(Outcome& o) {
    CounterRng rng(1618);
    std::vector<double> a(12), b(48);
    for (double& x : a) x = rng.uniform() < 0.3 ? 0.0 : rng.uniform();
    for (double& x : b) x = rng.uniform() < 0.8 ? 0.0 : rng.uniform();
    for (int t = 0; t < 100; ++t) {
        // Strictly increasing: positive-slope linear part plus a monotone
        // saturating or cubic term.
        double s = rng.uniform(0.05, 10), c = rng.uniform(-5, 5), q = rng.uniform(0, 3), r = rng.uniform(0.1, 8);
        int shape = static_cast<int>(rng.below(3));
        auto map = [=](double x) {
            double g = shape == 0 ? std::tanh(r * x) : shape == 1 ? x * x * x : std::log1p(r * x);
            return s * x + q * g + c;
        };
        std::vector<double> ma, mb;
        for (double x : a) ma.push_back(map(x));
        for (double x : b) mb.push_back(map(x));
        o.require(cliffs_delta(ma, mb) == cliffs_delta(a, b), "delta changed under a monotone map");
        o.require(rank_invariance_check(a, b, map), "rank_invariance_check rejected a monotone map");
    }
}

void power(Outcome& o, std::string& extra) {
    // 12 aligned, 48 cross, 45 zeros between them.
    std::vector<double> aligned(12, 0.0), cross(48, 0.0);
    for (int i = 0; i < 6; ++i) aligned[6 + i] = 0.4 + 0.1 * i;
    for (int i = 0; i < 9; ++i) cross[39 + i] = 0.05 + 0.02 * i;
    auto zeros = std::count(aligned.begin(), aligned.end(), 0.0) + std::count(cross.begin(), cross.end(), 0.0);
    o.require(zeros == 45, "fixture shape");

    auto plug = power_plugin(aligned, cross, kRomanoThresholds, 2000, 42);
    for (std::size_t i = 1; i < plug.powers.size(); ++i)
        o.require(plug.powers[i].second <= plug.powers[i - 1].second, "plug-in power increases with threshold");

    auto st = power_stipulated(aligned, cross, 0.4746, 1000, 42);
    o.require(std::abs(*st.realized_expected_delta - 0.4746) <= 0.005, "calibrated E[delta] misses 0.4746");
    o.require(*st.point_power < *st.ci_power, "point power is not below CI-positive power");
    char buf[128];
    std::snprintf(buf, sizeof buf, "w=%.4f E=%.4f point=%.3f ci=%.3f", *st.mixture_weight, *st.realized_expected_delta,
                  *st.point_power, *st.ci_power);
    extra = buf;
}

void anchors(Outcome& o) {
    std::vector<double> p{0.029};
    o.require(std::abs(bonferroni(p, 4)[0] - 0.116) <= 1e-12, "bonferroni(0.029, 4)");
    o.require(romano_classify(0.474) == EffectClass::large, "romano(0.474)");
    std::vector<CellResult> cells(5);
    for (std::size_t k = 0; k < 5; ++k) {
        cells[k].mp = kCampaignPatterns[k];
        cells[k].observed_pass = true;
    }
    o.require(pattern_coverage(cells) == 0.5, "pattern coverage 0.5");
    std::vector<std::vector<double>> rows(12, {0.1, 0.2, 0.3, 0.4, 0.5});
    auto f = friedman(rows);
    o.require(std::abs(f.chi2 - 48.0) <= 1e-12 && std::abs(f.kendalls_w - 1.0) <= 1e-12, "concordant Friedman");
}

bool same_counts(const CellResult& a, const CellResult& b) {
    auto bits = [](const std::optional<double>& v) { return v ? std::bit_cast<std::uint64_t>(*v) : ~0ULL; };
    return a.inst_count == b.inst_count && a.equiv_count == b.equiv_count && a.killed_count == b.killed_count &&
           a.survive_count == b.survive_count && bits(a.sms) == bits(b.sms);
}

void neutrality(Outcome& o, const json& campaign, const json& stats) {
    const CampaignResult loaded = campaign_from_json(campaign);
    CampaignResult bare = loaded;
    for (auto* part : {&bare.cells, &bare.tensor})
        for (auto& c : *part) {
            c.c1_share.reset();
            c.suspect_share.reset();
            for (auto& m : c.per_mutant) {
                m.root_cause.reset();
                m.co_occurring.clear();
            }
        }
    CampaignConfig cfg = config_of(campaign);
    auto baselines = assumption_baselines(cfg.seed, cfg.lrca.replicates);
    for (double band : kOodBands)
        for (double mult : kToleranceMultipliers) {
            LrcaConfig l = cfg.lrca;
            l.ood_band = band;
            l.tolerance_multiplier = mult;
            CampaignResult copy = bare;
            annotate(copy, baselines, l);
            for (std::size_t i = 0; i < copy.cells.size(); ++i)
                o.require(same_counts(copy.cells[i], loaded.cells[i]), "annotation changed a pooled cell");
            for (std::size_t i = 0; i < copy.tensor.size(); ++i)
                o.require(same_counts(copy.tensor[i], loaded.tensor[i]), "annotation changed a tensor cell");
            auto sweep = h4_cutoff_sweep(copy.cells, default_h4_cutoffs());
            for (std::size_t i = 1; i < sweep.size(); ++i)
                o.require(sweep[i].ratio >= sweep[i - 1].ratio, "H4 sweep decreases");
        }
    const json& reported = stats.at("h4_sweep");
    for (std::size_t i = 1; i < reported.size(); ++i)
        o.require(reported[i].at("ratio").get<double>() >= reported[i - 1].at("ratio").get<double>(),
                  "reported H4 sweep decreases");
}

void determinism(Outcome& o, const fs::path& first, const fs::path& second, std::string& extra) {
    std::set<std::string> a, b;
    for (const auto& e : fs::directory_iterator(first)) a.insert(e.path().filename().string());
    for (const auto& e : fs::directory_iterator(second)) b.insert(e.path().filename().string());
    o.require(a == b, "the two runs wrote different file sets");
    o.require(a.count("run_metadata.json") == 1, "run metadata missing");
    int compared = 0;
    for (const auto& name : a) {
        if (name == "run_metadata.json") continue;
        o.require(slurp(first / name) == slurp(second / name), name + " differs between runs");
        ++compared;
    }
    o.require(compared >= 5, "too few result files");
    extra = std::to_string(compared) + " files byte-identical, workers 1 vs 2";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    std::string cli, work = "acceptance_work";
    app.add_option("--cli", cli, "Path to the semmut executable")->required();
    app.add_option("--work", work, "Scratch directory");
    CLI11_PARSE(app, argc, argv);

    const fs::path root(work);
    fs::create_directories(root);

    std::string extra;
    report(1, "SMS = MS and all kills C1 in the degenerate limit (A1-A3)", guarded([&](Outcome& o) { degeneration(o, extra); }), extra);

    // Same --out for both runs: the output directory is part of the echoed config.
    const fs::path out = root / "run", first = root / "run_workers1", second = root / "run_workers2";
    auto run = [&](int workers, const fs::path& keep, double& secs) {
        fs::remove_all(out);
        fs::remove_all(keep);
        std::string cmd = "\"" + cli + "\" run --seed 42 --workers " + std::to_string(workers) + " --out \"" +
                          out.string() + "\" > \"" + (root / ("cli_workers" + std::to_string(workers) + ".log")).string() +
                          "\" 2>&1";
        auto t = std::chrono::steady_clock::now();
        int rc = std::system(cmd.c_str());
        secs = seconds_since(t);
        if (rc != 0) return false;
        fs::rename(out, keep);
        return true;
    };
    double t1 = 0, t2 = 0;
    bool ok1 = run(1, first, t1);
    bool ok2 = ok1 && run(2, second, t2);

    json campaign, stats;
    bool loaded = false;
    if (ok1) {
        try {
            campaign = read_json(first / "campaign_results.json");
            stats = read_json(first / "stats_report.json");
            loaded = true;
        } catch (const std::exception&) {
        }
    }
    auto with_campaign = [&](const std::function<void(Outcome&)>& body) {
        return guarded([&](Outcome& o) {
            o.require(ok1, "semmut run failed");
            o.require(loaded, "result files unreadable");
            if (o.ok) body(o);
        });
    };

    char timing[64];
    std::snprintf(timing, sizeof timing, "default campaign %.0f s", t1);
    report(2, "partition invariant and SMS range over the default campaign",
           with_campaign([&](Outcome& o) { partition(o, campaign); }), timing);
    extra.clear();
    report(3, ">= 4 operators with >= 5 non-equivalent mutants on >= 9 PUTs",
           with_campaign([&](Outcome& o) { h1(o, campaign, stats, extra); }), extra);
    report(4, "oracle equivalences (delta, DTW, Wilcoxon, Friedman, convergence order)", guarded(oracles));
    report(5, "delta invariant under 100 strictly increasing maps", guarded(rank_invariance));
    extra.clear();
    report(6, "power monotone; stipulated E[delta] within 0.005 of 0.4746; point < CI power",
           guarded([&](Outcome& o) { power(o, extra); }), extra);
    report(7, "formula anchors", guarded(anchors));
    report(8, "LRCA leaves counts and SMS bit-identical; H4 sweep nondecreasing",
           with_campaign([&](Outcome& o) { neutrality(o, campaign, stats); }));
    extra.clear();
    report(9, "byte-identical results across runs and worker counts", guarded([&](Outcome& o) {
               o.require(ok1 && ok2, "semmut run failed");
               if (o.ok) determinism(o, first, second, extra);
           }),
           extra);

    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
