#include "semmut/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "semmut/kernel_catalog.hpp"
#include "semmut/mr_catalog.hpp"
#include "semmut/mutation_catalog.hpp"

namespace semmut {

namespace fs = std::filesystem;

namespace {

constexpr std::array<PutClass, 4> kClasses{PutClass::A, PutClass::B, PutClass::C, PutClass::D};
constexpr double kFdrAlpha = 0.05;
constexpr int kPermutations = 10000;

[[noreturn]] void bad_config(const std::string& what) { fail(ErrorKind::ConfigInvalid, what); }

template <class T>
T config_value(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        bad_config(std::string("config key '") + key + "' has the wrong type");
    }
}

std::string text(std::string_view s) { return std::string(s); }

template <class E, class Parse>
E parse_or(const json& j, Parse parse, const char* what) {
    if (!j.is_string()) fail(ErrorKind::InvalidArgument, std::string("expected a string for ") + what);
    auto v = parse(j.get<std::string>());
    if (!v) fail(ErrorKind::InvalidArgument, "unknown " + std::string(what) + " '" + j.get<std::string>() + "'");
    return *v;
}

std::optional<VerificationMethod> parse_method(std::string_view s) {
    for (auto m : {VerificationMethod::tolerance_equality, VerificationMethod::wilcoxon,
                   VerificationMethod::convergence_order, VerificationMethod::dtw, VerificationMethod::exact_equality})
        if (to_string(m) == s) return m;
    return std::nullopt;
}

json tristate(const std::optional<bool>& b) { return b ? json(*b) : json("not_evaluated"); }

std::optional<bool> tristate_from(const json& j) {
    if (j.is_boolean()) return j.get<bool>();
    return std::nullopt;
}

json header(const CampaignConfig& cfg) {
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["seed"] = cfg.seed;
    j["config"] = to_json(cfg);
    return j;
}

std::vector<double> defined_sms(const std::vector<CellResult>& cells, std::optional<bool> aligned = std::nullopt,
                                std::optional<PutClass> cls = std::nullopt) {
    std::vector<double> out;
    for (const auto& c : cells) {
        if (!c.sms) continue;
        if (aligned && c.aligned != *aligned) continue;
        if (cls && class_of(c.put) != *cls) continue;
        out.push_back(*c.sms);
    }
    return out;
}

std::string fmt(double v, const char* spec = "%.3f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string fmt(const std::optional<double>& v, const char* spec = "%.3f") {
    return v ? fmt(*v, spec) : std::string("undefined");
}

}  // namespace

void CampaignConfig::validate() const {
    if (k_eq < 1) bad_config("k_eq must be >= 1");
    if (replicates < 1) bad_config("replicates must be >= 1");
    if (!(eps_eq > 0.0) || !std::isfinite(eps_eq)) bad_config("eps_eq must be positive");
    if (bootstrap_iterations < 100) bad_config("bootstrap_iterations must be >= 100");
    if (output_directory.empty()) bad_config("output_directory is empty");
    lrca.validate();
}

EngineConfig CampaignConfig::engine(int workers) const {
    EngineConfig e;
    e.equivalence = EquivalenceConfig{k_eq, eps_eq, equivalence_mode};
    e.replicates = replicates;
    e.workers = workers;
    return e;
}

json to_json(const CampaignConfig& c) {
    json j;
    j["seed"] = c.seed;
    j["k_eq"] = c.k_eq;
    j["replicates"] = c.replicates;
    j["eps_eq"] = c.eps_eq;
    j["equivalence_mode"] = text(to_string(c.equivalence_mode));
    j["bootstrap_iterations"] = c.bootstrap_iterations;
    j["lrca"] = {{"fail_ratio_cutoff", c.lrca.fail_ratio_cutoff},
                 {"ood_band", c.lrca.ood_band},
                 {"tolerance_multiplier", c.lrca.tolerance_multiplier},
                 {"replicates", c.lrca.replicates}};
    j["output_directory"] = c.output_directory;
    return j;
}

CampaignConfig campaign_config_from_json(const json& j) {
    if (!j.is_object()) bad_config("config must be an object");
    static const std::vector<std::string> keys{"seed",          "k_eq", "replicates", "eps_eq", "equivalence_mode",
                                               "bootstrap_iterations", "lrca", "output_directory"};
    static const std::vector<std::string> lrca_keys{"fail_ratio_cutoff", "ood_band", "tolerance_multiplier",
                                                    "replicates"};
    for (const auto& [k, v] : j.items())
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) bad_config("unknown config key '" + k + "'");
    CampaignConfig c;
    auto integer = [&](const json& o, const char* key) -> long long {
        const json& v = o.at(key);
        if (!v.is_number_integer()) bad_config(std::string("config key '") + key + "' must be an integer");
        return v.get<long long>();
    };
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) bad_config("config key 'seed' must be a nonnegative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("k_eq")) {
        long long k = integer(j, "k_eq");
        if (k < 1) bad_config("k_eq must be >= 1");
        c.k_eq = static_cast<std::size_t>(k);
    }
    if (j.contains("replicates")) c.replicates = static_cast<int>(integer(j, "replicates"));
    if (j.contains("eps_eq")) c.eps_eq = config_value<double>(j, "eps_eq");
    if (j.contains("equivalence_mode")) {
        auto m = parse_equivalence_mode(config_value<std::string>(j, "equivalence_mode"));
        if (!m) bad_config("unknown equivalence_mode");
        c.equivalence_mode = *m;
    }
    if (j.contains("bootstrap_iterations")) c.bootstrap_iterations = static_cast<int>(integer(j, "bootstrap_iterations"));
    if (j.contains("output_directory")) c.output_directory = config_value<std::string>(j, "output_directory");
    if (j.contains("lrca")) {
        const json& l = j["lrca"];
        if (!l.is_object()) bad_config("lrca must be an object");
        for (const auto& [k, v] : l.items())
            if (std::find(lrca_keys.begin(), lrca_keys.end(), k) == lrca_keys.end())
                bad_config("unknown lrca key '" + k + "'");
        if (l.contains("fail_ratio_cutoff")) c.lrca.fail_ratio_cutoff = config_value<double>(l, "fail_ratio_cutoff");
        if (l.contains("ood_band")) c.lrca.ood_band = config_value<double>(l, "ood_band");
        if (l.contains("tolerance_multiplier"))
            c.lrca.tolerance_multiplier = config_value<double>(l, "tolerance_multiplier");
        if (l.contains("replicates")) c.lrca.replicates = static_cast<int>(integer(l, "replicates"));
    }
    c.validate();
    return c;
}

CampaignConfig load_config(const fs::path& path) {
    if (!fs::exists(path)) fail(ErrorKind::MissingInput, "config file " + path.string() + " not found");
    std::ifstream in(path);
    json j;
    try {
        j = json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        bad_config("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    return campaign_config_from_json(j);
}

json number(double v) {
    if (std::isnan(v)) return "undefined";
    if (std::isinf(v)) return v > 0 ? "infinite" : "-infinite";
    return v;
}

json number(const std::optional<double>& v) { return v ? number(*v) : json("undefined"); }

std::optional<double> number_from(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j == "infinite") return std::numeric_limits<double>::infinity();
    if (j == "-infinite") return -std::numeric_limits<double>::infinity();
    return std::nullopt;
}

json to_json(const CellResult& c) {
    json j;
    j["put"] = text(to_string(c.put));
    j["mp"] = text(to_string(c.mp));
    j["operator"] = c.op ? text(to_string(*c.op)) : "pooled";
    j["aligned"] = c.aligned;
    j["pool_size"] = c.pool_size;
    j["inst_count"] = c.inst_count;
    j["equiv_count"] = c.equiv_count;
    j["killed_count"] = c.killed_count;
    j["survive_count"] = c.survive_count;
    j["sms"] = number(c.sms);
    j["inst_rate"] = number(c.inst_rate);
    j["equiv_rate"] = number(c.equiv_rate);
    j["survive_rate"] = number(c.survive_rate);
    j["c1_share"] = number(c.c1_share);
    j["suspect_share"] = number(c.suspect_share);
    j["observed_pass"] = c.observed_pass;
    j["observed_fail"] = c.observed_fail;
    json per = json::array();
    for (const auto& m : c.per_mutant) {
        json e;
        e["mutant_id"] = m.id;
        e["operator"] = text(to_string(m.op));
        e["state"] = text(to_string(m.state));
        e["fail_ratio"] = number(m.fail_ratio);
        e["root_cause"] = m.root_cause ? text(to_string(*m.root_cause)) : "none";
        json co = json::array();
        for (auto r : m.co_occurring) co.push_back(text(to_string(r)));
        e["co_occurring"] = co;
        e["e2"] = tristate(m.e2);
        e["e1"] = tristate(m.e1);
        json methods = json::array();
        for (auto v : m.kill_methods) methods.push_back(text(to_string(v)));
        e["kill_methods"] = methods;
        json bands = json::array();
        for (auto [band, killed] : m.in_band_killed) bands.push_back({{"ood_band", band}, {"killed", killed}});
        e["in_band_killed"] = bands;
        e["artefact_flag"] = m.artefact_flag;
        e["changed_parameters"] = m.changed_parameters;
        per.push_back(e);
    }
    j["per_mutant"] = per;
    return j;
}

CellResult cell_from_json(const json& j) {
    CellResult c;
    c.put = parse_or<PutId>(j.at("put"), parse_put, "PUT");
    c.mp = parse_or<MetaPattern>(j.at("mp"), parse_pattern, "pattern");
    if (j.at("operator") != "pooled") c.op = parse_or<OperatorClass>(j.at("operator"), parse_operator, "operator");
    c.aligned = j.at("aligned").get<bool>();
    c.pool_size = j.at("pool_size").get<int>();
    c.inst_count = j.at("inst_count").get<int>();
    c.equiv_count = j.at("equiv_count").get<int>();
    c.killed_count = j.at("killed_count").get<int>();
    c.survive_count = j.at("survive_count").get<int>();
    c.sms = number_from(j.at("sms"));
    c.inst_rate = number_from(j.at("inst_rate")).value_or(0.0);
    c.equiv_rate = number_from(j.at("equiv_rate")).value_or(0.0);
    c.survive_rate = number_from(j.at("survive_rate")).value_or(0.0);
    c.c1_share = number_from(j.at("c1_share"));
    c.suspect_share = number_from(j.at("suspect_share"));
    c.observed_pass = j.at("observed_pass").get<bool>();
    c.observed_fail = j.at("observed_fail").get<bool>();
    for (const auto& e : j.at("per_mutant")) {
        MutantOutcome m;
        m.id = e.at("mutant_id").get<std::string>();
        m.op = parse_or<OperatorClass>(e.at("operator"), parse_operator, "operator");
        m.state = parse_or<MutantState>(e.at("state"), parse_mutant_state, "state");
        m.fail_ratio = number_from(e.at("fail_ratio")).value_or(0.0);
        if (e.at("root_cause") != "none") m.root_cause = parse_or<RootCause>(e.at("root_cause"), parse_root_cause, "root cause");
        for (const auto& r : e.at("co_occurring")) m.co_occurring.push_back(parse_or<RootCause>(r, parse_root_cause, "root cause"));
        m.e2 = tristate_from(e.at("e2"));
        m.e1 = tristate_from(e.at("e1"));
        for (const auto& v : e.at("kill_methods")) m.kill_methods.push_back(parse_or<VerificationMethod>(v, parse_method, "method"));
        for (const auto& b : e.at("in_band_killed"))
            m.in_band_killed.emplace_back(b.at("ood_band").get<double>(), b.at("killed").get<bool>());
        m.artefact_flag = e.at("artefact_flag").get<bool>();
        m.changed_parameters = e.at("changed_parameters").get<int>();
        c.per_mutant.push_back(std::move(m));
    }
    return c;
}

json campaign_json(const CampaignResult& r, const CampaignConfig& cfg) {
    json j = header(cfg);
    auto all = defined_sms(r.cells);
    int aligned = static_cast<int>(std::count_if(r.cells.begin(), r.cells.end(), [](const auto& c) { return c.aligned; }));
    json summary;
    summary["cells"] = r.cells.size();
    summary["tensor_entries"] = r.tensor.size();
    summary["aligned_cells"] = aligned;
    summary["cross_cells"] = static_cast<int>(r.cells.size()) - aligned;
    summary["defined_cells"] = all.size();
    summary["mean_sms"] = all.empty() ? json("undefined") : number(mean(all));
    summary["median_sms"] = all.empty() ? json("undefined") : number(median(all));
    summary["sd_sms"] = all.empty() ? json("undefined") : number(population_sd(all));
    summary["zero_cells"] = std::count(all.begin(), all.end(), 0.0);
    j["summary"] = summary;
    json cells = json::array(), tensor = json::array();
    for (const auto& c : r.cells) cells.push_back(to_json(c));
    for (const auto& c : r.tensor) tensor.push_back(to_json(c));
    j["cells"] = cells;
    j["tensor"] = tensor;
    return j;
}

CampaignConfig config_of(const json& file) {
    if (!file.is_object() || !file.contains("config"))
        fail(ErrorKind::ResultsMissing, "result file carries no config echo");
    return campaign_config_from_json(file.at("config"));
}

CampaignResult campaign_from_json(const json& j) {
    if (!j.is_object() || !j.contains("cells") || !j.contains("tensor"))
        fail(ErrorKind::ResultsMissing, "not a campaign result file");
    CampaignConfig cfg = config_of(j);
    CampaignResult r;
    r.seed = cfg.seed;
    r.config = cfg.engine(1);
    for (const auto& c : j.at("cells")) r.cells.push_back(cell_from_json(c));
    for (const auto& c : j.at("tensor")) r.tensor.push_back(cell_from_json(c));
    return r;
}

StatsReport build_stats_report(const CampaignResult& r, const CampaignConfig& cfg) {
    StatsReport s;
    s.cells = static_cast<int>(r.cells.size());
    auto all = defined_sms(r.cells);
    s.defined_cells = static_cast<int>(all.size());
    if (all.empty()) fail(ErrorKind::IncompleteInput, "no cell has a defined SMS");
    s.zero_cells = static_cast<int>(std::count(all.begin(), all.end(), 0.0));
    s.mean_sms = mean(all);
    s.median_sms = median(all);
    s.sd_sms = population_sd(all);

    s.aligned_sms = defined_sms(r.cells, true);
    s.cross_sms = defined_sms(r.cells, false);
    if (s.aligned_sms.empty() || s.cross_sms.empty())
        fail(ErrorKind::IncompleteInput, "aligned or cross slice has no defined SMS");
    s.delta = cliffs_delta(s.aligned_sms, s.cross_sms);
    s.bootstrap_iterations = std::max(kHeadlineBootstrap, cfg.bootstrap_iterations);
    s.delta_ci = bootstrap_ci(s.aligned_sms, s.cross_sms, s.bootstrap_iterations, cfg.seed);
    s.effect = romano_classify(s.delta);
    s.odds = odds_ratios(s.aligned_sms, s.cross_sms);

    std::vector<double> class_deltas;
    for (PutClass cls : kClasses) {
        ClassSlice slice;
        slice.cls = cls;
        auto a = defined_sms(r.cells, true, cls), x = defined_sms(r.cells, false, cls);
        if (!a.empty()) slice.aligned_mean = mean(a);
        if (!x.empty()) slice.cross_mean = mean(x);
        if (slice.aligned_mean && slice.cross_mean) {
            slice.delta = *slice.aligned_mean - *slice.cross_mean;
            class_deltas.push_back(*slice.delta);
        }
        s.classes.push_back(slice);
    }
    if (class_deltas.empty()) fail(ErrorKind::IncompleteInput, "no class has both slices defined");
    s.sign = sign_test(class_deltas);
    try {
        s.cv = coefficient_of_variation(class_deltas);
    } catch (const Error&) {
        s.cv.reset();
    }

    // PUT x MP matrix, complete rows only.
    auto rows_for = [&](std::optional<PutClass> cls) {
        std::vector<std::vector<double>> rows;
        for (PutId p : kAllPuts) {
            if (cls && class_of(p) != *cls) continue;
            std::vector<double> row;
            for (const auto& c : r.cells)
                if (c.put == p && c.sms) row.push_back(*c.sms);
            if (row.size() == kCampaignPatterns.size()) rows.push_back(row);
        }
        return rows;
    };
    auto try_friedman = [](const std::vector<std::vector<double>>& rows) -> std::optional<FriedmanResult> {
        if (rows.size() < 2) return std::nullopt;
        return friedman(rows);
    };
    s.friedman = try_friedman(rows_for(std::nullopt));
    std::vector<double> class_p;
    for (PutClass cls : kClasses) {
        s.class_friedman.push_back(try_friedman(rows_for(cls)));
        class_p.push_back(s.class_friedman.back() ? s.class_friedman.back()->p_value
                                                  : std::numeric_limits<double>::quiet_NaN());
    }
    s.class_friedman_bonferroni = bonferroni(class_p, static_cast<int>(kClasses.size()));

    for (PutId p : kAllPuts) {
        std::vector<CellResult> mine;
        for (const auto& c : r.cells)
            if (c.put == p) mine.push_back(c);
        s.pattern_coverage.push_back(pattern_coverage(mine));
    }
    std::vector<double> put_means;
    for (PutId p : kAllPuts) {
        std::vector<double> v;
        for (const auto& c : r.cells)
            if (c.put == p && c.sms) v.push_back(*c.sms);
        put_means.push_back(v.empty() ? 0.0 : mean(v));
    }
    s.coverage_correlation = spearman_kendall(s.pattern_coverage, put_means, cfg.seed, kPermutations);

    auto add_p = [&](std::string label, double p) {
        if (!std::isfinite(p)) return;
        s.fdr_labels.push_back(std::move(label));
        s.fdr_pvalues.push_back(p);
    };
    if (s.friedman) add_p("friedman_put_x_mp", s.friedman->p_value);
    add_p("sign_test_class_deltas", s.sign.p_value);
    add_p("spearman_coverage_vs_sms", s.coverage_correlation->p_rho);
    add_p("kendall_coverage_vs_sms", s.coverage_correlation->p_tau);
    for (std::size_t i = 0; i < kClasses.size(); ++i)
        add_p("friedman_class_" + text(to_string(kClasses[i])), class_p[i]);
    s.fdr_rejected = bh_fdr(s.fdr_pvalues, kFdrAlpha);

    HypothesisInputs& in = s.hypothesis_inputs;
    // Non-equivalent under every pattern, per (PUT, operator).
    for (PutId p : kAllPuts) {
        std::vector<int> row;
        for (OperatorClass op : kAllOperators) {
            std::optional<int> n;
            for (const auto& c : r.tensor)
                if (c.put == p && c.op == op) n = std::min(n.value_or(c.inst_count), c.inst_count - c.equiv_count);
            row.push_back(n.value_or(0));
        }
        in.nonequivalent.push_back(row);
    }
    in.aligned_sms = s.aligned_sms;
    in.cross_sms = s.cross_sms;
    in.class_deltas = class_deltas;
    for (const auto& c : r.cells)
        if (c.suspect_share) in.suspect_shares.push_back(*c.suspect_share);
    s.verdicts = evaluate_hypotheses(in);
    s.h4_sweep = h4_cutoff_sweep(r.cells, default_h4_cutoffs());
    return s;
}

namespace {

json friedman_json(const std::optional<FriedmanResult>& f) {
    if (!f) return "undefined";
    json means = json::array();
    for (double m : f->rank_means) means.push_back(number(m));
    return {{"chi2", number(f->chi2)},
            {"p_value", number(f->p_value)},
            {"kendalls_w", number(f->kendalls_w)},
            {"rank_means", means}};
}

json sweep_json(const std::vector<CutoffRow>& rows) {
    json out = json::array();
    for (const auto& r : rows) out.push_back({{"cutoff", r.cutoff}, {"count", r.count}, {"ratio", number(r.ratio)}});
    return out;
}

}  // namespace

json stats_json(const StatsReport& s, const CampaignConfig& cfg) {
    json j = header(cfg);
    j["cells"] = s.cells;
    j["rq1"] = {{"defined_cells", s.defined_cells}, {"mean_sms", number(s.mean_sms)}, {"median_sms", number(s.median_sms)},
                {"sd_sms", number(s.sd_sms)},       {"zero_cells", s.zero_cells}};
    json aligned = json::array(), cross = json::array();
    for (double v : s.aligned_sms) aligned.push_back(number(v));
    for (double v : s.cross_sms) cross.push_back(number(v));
    j["slices"] = {{"n_aligned", s.aligned_sms.size()}, {"n_cross", s.cross_sms.size()},
                   {"aligned_sms", aligned},            {"cross_sms", cross}};
    j["effect_size"] = {{"delta", number(s.delta)},
                        {"ci_low", number(s.delta_ci.low)},
                        {"ci_high", number(s.delta_ci.high)},
                        {"bootstrap_iterations", s.bootstrap_iterations},
                        {"classification", text(to_string(s.effect))},
                        {"threshold_convention", "|delta| >= 0.147 small, >= 0.330 medium, >= 0.474 large"}};
    j["odds_ratios"] = {{"nonzero_odds_ratio", number(s.odds.nonzero_odds_ratio)},
                        {"median_ratio", number(s.odds.median_ratio)}};
    json classes = json::array();
    for (const auto& c : s.classes)
        classes.push_back({{"class", text(to_string(c.cls))},
                           {"aligned_mean", number(c.aligned_mean)},
                           {"cross_mean", number(c.cross_mean)},
                           {"delta", number(c.delta)}});
    j["class_slices"] = classes;
    j["sign_test"] = {{"positives", s.sign.positives}, {"total", s.sign.total}, {"p_value", number(s.sign.p_value)}};
    j["cv_class_delta"] = number(s.cv);
    j["friedman"] = friedman_json(s.friedman);
    json cf = json::array();
    for (std::size_t i = 0; i < s.class_friedman.size(); ++i)
        cf.push_back({{"class", text(to_string(kClasses[i]))},
                      {"result", friedman_json(s.class_friedman[i])},
                      {"p_bonferroni", number(s.class_friedman_bonferroni[i])}});
    j["class_friedman"] = cf;
    if (s.coverage_correlation) {
        const auto& c = *s.coverage_correlation;
        j["coverage_vs_sms"] = {{"n", kAllPuts.size()},      {"rho", number(c.rho)},   {"p_rho", number(c.p_rho)},
                                {"tau", number(c.tau)},      {"p_tau", number(c.p_tau)}};
    }
    json fdr = json::array();
    for (std::size_t i = 0; i < s.fdr_labels.size(); ++i)
        fdr.push_back({{"test", s.fdr_labels[i]}, {"p_value", number(s.fdr_pvalues[i])}, {"rejected", static_cast<bool>(s.fdr_rejected[i])}});
    j["bh_fdr"] = {{"alpha", kFdrAlpha}, {"tests", fdr}};
    const auto& v = s.verdicts;
    json nonequiv = json::array();
    for (std::size_t i = 0; i < kAllPuts.size(); ++i) {
        json row;
        row["put"] = text(to_string(kAllPuts[i]));
        for (std::size_t k = 0; k < kAllOperators.size(); ++k)
            row[text(to_string(kAllOperators[k]))] = s.hypothesis_inputs.nonequivalent[i][k];
        nonequiv.push_back(row);
    }
    j["hypotheses"] = {
        {"H1", {{"verdict", text(to_string(v.h1))}, {"puts_meeting", v.h1_puts_meeting}, {"nonequivalent", nonequiv}}},
        {"H2", {{"verdict", text(to_string(v.h2))}, {"odds_ratio", number(v.h2_odds_ratio)}, {"delta", number(v.h2_delta)}}},
        {"H3", {{"verdict", text(to_string(v.h3))}, {"positives", v.h3_positives}, {"total", v.h3_total}, {"cv", number(v.h3_cv)}}},
        {"H4", {{"verdict", text(to_string(v.h4))}, {"mean_suspect_share", number(v.h4_mean_suspect_share)}}},
    };
    json pc = json::array();
    for (std::size_t i = 0; i < s.pattern_coverage.size(); ++i)
        pc.push_back({{"put", text(to_string(kAllPuts[i]))}, {"pattern_coverage", number(s.pattern_coverage[i])}});
    j["pattern_coverage"] = pc;
    j["h4_sweep"] = sweep_json(s.h4_sweep);
    return j;
}

json lrca_json(const CampaignResult& r, std::span<const AssumptionBaseline> baselines,
               const CalibrationReport& calibration, const CampaignConfig& cfg) {
    json j = header(cfg);
    const LrcaConfig& l = cfg.lrca;
    j["lrca_config"] = to_json(cfg)["lrca"];
    json base = json::array();
    for (const auto& b : baselines)
        base.push_back({{"put", text(to_string(b.put))},
                        {"lag1_autocorrelation", number(b.lag1_autocorrelation)},
                        {"trajectory_drift", number(b.trajectory_drift)},
                        {"trajectory_spread", number(b.trajectory_spread)},
                        {"iid_violated", iid_violated(b)},
                        {"stationarity_violated", stationarity_violated(b, l.tolerance_multiplier)}});
    j["baselines"] = base;

    json cells = json::array(), labels = json::array();
    std::map<std::string, int> co;
    std::array<int, 5> hist{};
    for (const auto& c : r.cells) {
        cells.push_back({{"put", text(to_string(c.put))},
                         {"mp", text(to_string(c.mp))},
                         {"aligned", c.aligned},
                         {"killed_count", c.killed_count},
                         {"c1_share", number(c.c1_share)},
                         {"suspect_share", number(c.suspect_share)}});
        const AssumptionBaseline* b = nullptr;
        for (const auto& x : baselines)
            if (x.put == c.put) b = &x;
        for (const auto& m : c.per_mutant) {
            if (m.state != MutantState::killed) continue;
            LrcaAnnotation a = diagnose(m.id, evidence_of(m, c.put, b), l);
            json set = json::array();
            std::string key;
            for (auto rc : a.co_occurring) {
                set.push_back(text(to_string(rc)));
                key += (key.empty() ? "" : "+") + text(to_string(rc));
            }
            ++co[key];
            ++hist[static_cast<std::size_t>(a.root_cause)];
            labels.push_back({{"put", text(to_string(c.put))},
                              {"mp", text(to_string(c.mp))},
                              {"mutant_id", m.id},
                              {"fail_ratio", number(m.fail_ratio)},
                              {"root_cause", text(to_string(a.root_cause))},
                              {"co_occurring", set},
                              {"evidence", a.evidence}});
        }
    }
    j["cells"] = cells;
    j["labels"] = labels;
    json histogram;
    for (std::size_t i = 0; i < hist.size(); ++i) histogram[text(to_string(static_cast<RootCause>(i)))] = hist[i];
    j["label_histogram"] = histogram;
    json cooc = json::array();
    for (const auto& [k, n] : co) cooc.push_back({{"set", k}, {"count", n}});
    j["co_occurrence"] = cooc;

    json grid = json::array();
    for (const auto& e : calibration.entries)
        grid.push_back({{"ood_band", e.ood_band},
                        {"tolerance_multiplier", e.tolerance_multiplier},
                        {"mean_c1_share", number(e.mean_c1_share)},
                        {"cells_low_suspect", e.cells_low_suspect},
                        {"cells_with_shares", e.cells_with_shares},
                        {"best", e.best}});
    const auto& best = calibration.entries.at(calibration.best_index);
    j["calibration"] = {{"grid", grid},
                        {"best", {{"ood_band", best.ood_band}, {"tolerance_multiplier", best.tolerance_multiplier}}},
                        {"reference", {{"ood_band", calibration.reference_ood_band},
                                       {"tolerance_multiplier", calibration.reference_tolerance_multiplier}}}};
    j["h4_sweep"] = sweep_json(h4_cutoff_sweep(r.cells, default_h4_cutoffs()));
    return j;
}

json power_json(const PowerReport& p, const CampaignConfig& cfg) {
    json j = header(cfg);
    json rows = json::array();
    for (auto [t, pw] : p.powers) rows.push_back({{"threshold", t}, {"power", number(pw)}});
    j["power"] = {{"mode", text(to_string(p.mode))},
                  {"n_sim", p.n_sim},
                  {"seed", p.seed},
                  {"thresholds", rows},
                  {"target", number(p.target)},
                  {"mixture_weight", number(p.mixture_weight)},
                  {"realized_expected_delta", number(p.realized_expected_delta)},
                  {"point_power", number(p.point_power)},
                  {"ci_power", number(p.ci_power)}};
    return j;
}

json degeneration_json(std::span<const DegenerationReport> reports, const DegenerateLimitConfig& cfg,
                       std::uint64_t seed) {
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["seed"] = seed;
    j["config"] = {{"eps_eq", cfg.eps_eq},           {"k_eq", cfg.k_eq},
                   {"eps_avp", cfg.eps_avp},         {"mp_set", "MP_eq"},
                   {"operator_source", "syntactic"}, {"put_subset", "deterministic A-class"}};
    json puts = json::array();
    bool all = true;
    for (const auto& r : reports) {
        json hist;
        for (std::size_t i = 0; i < r.label_histogram.size(); ++i)
            hist[text(to_string(static_cast<RootCause>(i)))] = r.label_histogram[i];
        puts.push_back({{"put", text(to_string(r.put))},
                        {"mutants", r.mutants},
                        {"equiv_sms", r.equiv_sms},
                        {"killed_sms", r.killed_sms},
                        {"equiv_ms", r.equiv_ms},
                        {"killed_ms", r.killed_ms},
                        {"sms", number(r.sms)},
                        {"ms", number(r.ms)},
                        {"equal", r.equal},
                        {"label_histogram", hist},
                        {"suspect_share", number(r.suspect_share)}});
        all = all && r.equal;
    }
    j["puts"] = puts;
    j["all_equal"] = all;
    return j;
}

json mutant_manifest() {
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    json list = json::array();
    auto entry = [](const MutantRecord& m, const PrescreenVerdict* v) {
        json e{{"mutant_id", m.id},
               {"put", text(to_string(m.put))},
               {"operator", text(to_string(m.op))},
               {"kind", text(to_string(m.kind))},
               {"semanticity", {{"a", m.flags.crosses_boundary_a}, {"b", m.flags.domain_knowledge_b}, {"c", m.flags.changes_class_c}}},
               {"artefact_flag", m.artefact_flag},
               {"changed_parameters", m.changed_parameters},
               {"description", m.description}};
        if (!m.rule.empty()) e["rule"] = m.rule;
        if (v) e["prescreen"] = {{"accepted", v->accepted}, {"reason", v->reason}};
        return e;
    };
    for (PutId p : kAllPuts) {
        auto probes = default_probes(p);
        for (const auto& m : authored(p)) {
            PrescreenVerdict v = l0_prescreen(m, probes);
            list.push_back(entry(m, &v));
        }
        if (class_of(p) == PutClass::A)
            for (const auto& m : syntactic_mutants(p)) list.push_back(entry(m, nullptr));
    }
    j["mutants"] = list;
    return j;
}

json mr_manifest() {
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    json cells = json::array();
    for (PutId p : kAllPuts)
        for (MetaPattern mp : kCampaignPatterns) {
            json mrs = json::array();
            for (const auto& mr : mrs_for(p, mp))
                mrs.push_back({{"id", mr.id},
                               {"description", mr.description},
                               {"method", text(to_string(mr.method()))},
                               {"tolerance", number(mr.tolerance)},
                               {"expected_order", number(mr.expected_order)},
                               {"region", {mr.region.lo, mr.region.hi}}});
            cells.push_back({{"put", text(to_string(p))},
                             {"mp", text(to_string(mp))},
                             {"density", text(to_string(density(p, mp)))},
                             {"primary", mp == primary_mp(p)},
                             {"relations", mrs}});
        }
    j["cells"] = cells;
    return j;
}

void write_text_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) fail(ErrorKind::InvalidArgument, "write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

void write_json_atomic(const fs::path& path, const json& j) { write_text_atomic(path, j.dump(2) + "\n"); }

json read_json(const fs::path& path) {
    if (!fs::exists(path)) fail(ErrorKind::ResultsMissing, path.string() + " not found");
    std::ifstream in(path);
    try {
        return json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ResultsMissing, path.string() + " is not readable JSON: " + e.what());
    }
}

std::string heatmap_csv(const CampaignResult& r) {
    std::ostringstream out;
    out << "put";
    for (MetaPattern mp : kCampaignPatterns) out << ',' << to_string(mp);
    out << '\n';
    for (PutId p : kAllPuts) {
        out << to_string(p);
        for (MetaPattern mp : kCampaignPatterns)
            for (const auto& c : r.cells)
                if (c.put == p && c.mp == mp) out << ',' << (c.sms ? fmt(*c.sms, "%.4f") : std::string("undefined"));
        out << '\n';
    }
    return out.str();
}

std::string render_report(const CampaignResult& r, const json& stats) {
    std::ostringstream out;
    out << "SMS heatmap (rows PUT, columns MP; * marks the primary pattern)\n";
    out << "      ";
    for (MetaPattern mp : kCampaignPatterns) out << "     " << to_string(mp) << "  ";
    out << '\n';
    for (PutId p : kAllPuts) {
        out << "  " << to_string(p) << "  ";
        for (MetaPattern mp : kCampaignPatterns)
            for (const auto& c : r.cells)
                if (c.put == p && c.mp == mp) {
                    std::string v = c.sms ? fmt(*c.sms) : std::string("undef");
                    out << std::string(8 - v.size(), ' ') << v << (c.aligned ? '*' : ' ') << ' ';
                }
        out << '\n';
    }

    out << "\nClass marginals (mean SMS)\n  class  aligned    cross    delta\n";
    for (const auto& c : stats.at("class_slices")) {
        auto show = [&](const char* k) {
            std::string v = fmt(number_from(c.at(k)));
            return std::string(9 - std::min<std::size_t>(v.size(), 9), ' ') + v;
        };
        out << "  " << c.at("class").get<std::string>() << "    " << show("aligned_mean") << show("cross_mean")
            << show("delta") << '\n';
    }

    const json& rq1 = stats.at("rq1");
    const json& es = stats.at("effect_size");
    out << "\nSummary: mean SMS " << fmt(number_from(rq1.at("mean_sms"))) << ", median "
        << fmt(number_from(rq1.at("median_sms"))) << ", zero cells " << rq1.at("zero_cells").get<int>() << " / "
        << rq1.at("defined_cells").get<int>() << '\n';
    out << "Cliff's delta (aligned vs cross) " << fmt(number_from(es.at("delta"))) << " ["
        << fmt(number_from(es.at("ci_low"))) << ", " << fmt(number_from(es.at("ci_high"))) << "], "
        << es.at("classification").get<std::string>() << '\n';

    out << "\nHypotheses\n";
    const json& h = stats.at("hypotheses");
    out << "  H1 " << h["H1"]["verdict"].get<std::string>() << " (" << h["H1"]["puts_meeting"].get<int>()
        << " of 12 PUTs with >= 4 operators at >= 5 non-equivalent mutants)\n";
    out << "  H2 " << h["H2"]["verdict"].get<std::string>() << " (odds ratio "
        << fmt(number_from(h["H2"]["odds_ratio"])) << ", delta " << fmt(number_from(h["H2"]["delta"])) << ")\n";
    out << "  H3 " << h["H3"]["verdict"].get<std::string>() << " (" << h["H3"]["positives"].get<int>() << "/"
        << h["H3"]["total"].get<int>() << " positive class deltas, CV " << fmt(number_from(h["H3"]["cv"])) << ")\n";
    out << "  H4 " << h["H4"]["verdict"].get<std::string>() << " (mean suspect_share "
        << fmt(number_from(h["H4"]["mean_suspect_share"])) << ")\n";

    out << "\nPattern coverage\n";
    for (const auto& pc : stats.at("pattern_coverage"))
        out << "  " << pc.at("put").get<std::string>() << "  " << fmt(number_from(pc.at("pattern_coverage")), "%.1f")
            << '\n';
    return out.str();
}

}  // namespace semmut
