#include "draft.hpp"
#include "semmut/kernels/class_b.hpp"

namespace semmut::mutants {

using namespace kernels;
using enum OperatorClass;

namespace {

std::vector<MutantRecord> beta_binomial() {
    using D = Draft<BetaBinomialParams>;
    std::vector<D> d{
        {CE, "posterior mean left unnormalised", [](auto& p) { p.unnormalised = true; }},
        {CE, "posterior normaliser drifts: b * (1 + 1e-3)", [](auto& p) { p.normaliser_drift = 1e-3; }},
        {CE, "0.5 pseudo-success added to the data", [](auto& p) { p.success_pseudo = 0.5; }},
        {CE, "alpha + 0.01", [](auto& p) { p.alpha_offset = 0.01; }},
        {CE, "one phantom trial added", [](auto& p) { p.extra_trials = 1; }},
        {OS, "alpha read as 1 / x", [](auto& p) { p.reciprocal_alpha = true; }},
        {OS, "prior parameters swapped", [](auto& p) { p.swap_prior = true; }},
        {OS, "prior ignored for alpha > 5", [](auto& p) { p.ignore_prior_above_5 = true; }},
        {OS, "alpha read as 10.5 - x", [](auto& p) { p.reflect_alpha = true; }},
        {OS, "alpha capped at 3", [](auto& p) { p.alpha_cap = 3.0; }},
        {HP, "prior beta 3 -> 3.5", [](auto& p) { p.beta = 3.5; }},
        {HP, "prior scaled by 1.5", [](auto& p) { p.prior_scale = 1.5; }},
        {HP, "data weight 0.9", [](auto& p) { p.data_weight = 0.9; }},
        {HP, "posterior mean by 6-node midpoint quadrature", [](auto& p) { p.estimator = PosteriorEstimator::quadrature; }},
        {HP, "posterior mean by 256 Monte Carlo draws",
         [](auto& p) { p.estimator = PosteriorEstimator::monte_carlo; }},
        {TF, "posterior mean -> posterior mode", [](auto& p) { p.estimator = PosteriorEstimator::mode; }},
        {TF, "posterior mean -> median approximation",
         [](auto& p) { p.estimator = PosteriorEstimator::median_approx; }},
        {TF, "posterior mean -> maximum likelihood", [](auto& p) { p.estimator = PosteriorEstimator::mle; }},
        {TF, "posterior mean -> posterior odds", [](auto& p) { p.estimator = PosteriorEstimator::odds; }},
        {TF, "posterior mean -> geometric mean", [](auto& p) { p.estimator = PosteriorEstimator::geometric; }},
        {SI, "data counted twice", [](auto& p) { p.double_count = true; }},
        {SI, "successes capped at 10", [](auto& p) { p.success_cap = 10; }},
        {SI, "failures counted as successes", [](auto& p) { p.failures_as_successes = true; }},
        {SI, "data weight 0.5", [](auto& p) { p.data_weight = 0.5; }},
        {SI, "two phantom trials added", [](auto& p) { p.extra_trials = 2; }},
    };
    return author(PutId::B1, BetaBinomialParams{}, make_beta_binomial, d);
}

std::vector<MutantRecord> metropolis() {
    using D = Draft<MetropolisParams>;
    std::vector<D> d{
        {CE, "target mean shifted by 0.01", [](auto& p) { p.target_shift = 0.01; }},
        {CE, "proposal drift 0.01", [](auto& p) { p.proposal_drift = 0.01; }},
        {CE, "target mean scaled by 1.01", [](auto& p) { p.target_scale = 1.01; }},
        {CE, "start offset -3 -> -2.9", [](auto& p) { p.start_offset = -2.9; }},
        {CE, "running mean divided by n + 1", [](auto& p) { p.divide_by_n_plus_one = true; }},
        {OS, "acceptance min(1, r) -> min(0.95, r)", [](auto& p) { p.acceptance_cap = 0.95; }},
        {OS, "acceptance test inverted", [](auto& p) { p.inverted_acceptance = true; }},
        {OS, "every proposal accepted", [](auto& p) { p.always_move = true; }},
        {OS, "first acceptance discarded", [](auto& p) { p.skip_first_acceptance = true; }},
        {OS, "acceptance min(1, r) -> min(0.8, r)", [](auto& p) { p.acceptance_cap = 0.8; }},
        {OS, "over-injected: capped acceptance, drift, shifted start, longer burn-in",
         [](auto& p) {
             p.acceptance_cap = 0.9;
             p.proposal_drift = 0.02;
             p.start_offset = -2.0;
             p.burn_in = 300;
         },
         4, true},
        {HP, "proposal step 1 -> 0.5", [](auto& p) { p.step = 0.5; }},
        {HP, "proposal step 1 -> 2.5", [](auto& p) { p.step = 2.5; }},
        {HP, "burn-in 200 -> 0", [](auto& p) { p.burn_in = 0; }},
        {HP, "chain length 1000 -> 500", [](auto& p) { p.base_length = 500; }},
        {HP, "burn-in 200 -> 50", [](auto& p) { p.burn_in = 50; }},
        {HP, "over-injected: step, burn-in, length and start all changed",
         [](auto& p) {
             p.step = 1.7;
             p.burn_in = 20;
             p.base_length = 700;
             p.start_offset = -1.0;
         },
         4, true},
        {TF, "random walk -> independence proposal", [](auto& p) { p.proposal = Proposal::independence; }},
        {TF, "random walk -> Langevin proposal", [](auto& p) { p.proposal = Proposal::langevin; }},
        {TF, "Gaussian -> uniform proposal", [](auto& p) { p.proposal = Proposal::uniform; }},
        {TF, "Gaussian -> Laplace target", [](auto& p) { p.target = TargetDensity::laplace; }},
        {TF, "running mean -> exponential average (0.01)", [](auto& p) { p.forgetting = 0.01; }},
        {SI, "burn-in samples kept", [](auto& p) { p.include_burn_in = true; }},
        {SI, "random stream fixed regardless of seed", [](auto& p) { p.fixed_stream = true; }},
        {SI, "chain restarts every 100 steps", [](auto& p) { p.restart_every = 100; }},
        {SI, "target precision 1 -> 1.5", [](auto& p) { p.precision_scale = 1.5; }},
        {SI, "log target drops the factor 1/2", [](auto& p) { p.target = TargetDensity::squared_ratio; }},
    };
    return author(PutId::B2, MetropolisParams{}, make_metropolis, d);
}

std::vector<MutantRecord> importance() {
    using D = Draft<ImportanceParams>;
    std::vector<D> d{
        {CE, "weights divided by 1.001", [](auto& p) { p.normaliser_scale = 1.001; }},
        {CE, "weights + 1e-3", [](auto& p) { p.weight_offset = 1e-3; }},
        {CE, "samples shifted by 1e-3", [](auto& p) { p.sample_offset = 1e-3; }},
        {CE, "upper limit 1 -> 1.001", [](auto& p) { p.upper = 1.001; }},
        {CE, "proposal rate 1.5 -> 1.6", [](auto& p) { p.lambda = 1.6; }},
        {OS, "integrand exponent 2 -> 1", [](auto& p) { p.exponent = 1.0; }},
        {OS, "integrand exponent 2 -> 3", [](auto& p) { p.exponent = 3.0; }},
        {OS, "samples drawn uniformly, proposal weights kept", [](auto& p) { p.linear_draw = true; }},
        {OS, "exp replaced by a Pade approximant", [](auto& p) { p.pade_exp = true; }},
        {OS, "samples shifted by 0.05", [](auto& p) { p.sample_offset = 0.05; }},
        {HP, "base sample size 1000 -> 500", [](auto& p) { p.base_samples = 500; }},
        {HP, "base sample size 1000 -> 2000", [](auto& p) { p.base_samples = 2000; }},
        {HP, "proposal rate 1.5 -> 0.5", [](auto& p) { p.lambda = 0.5; }},
        {HP, "proposal rate 1.5 -> 3", [](auto& p) { p.lambda = 3.0; }},
        {HP, "base sample size 1000 -> 800", [](auto& p) { p.base_samples = 800; }},
        {TF, "importance -> plain Monte Carlo", [](auto& p) { p.estimator = IsEstimator::plain; }},
        {TF, "importance -> antithetic", [](auto& p) { p.estimator = IsEstimator::antithetic; }},
        {TF, "importance -> stratified", [](auto& p) { p.estimator = IsEstimator::stratified; }},
        {TF, "importance -> self-normalised", [](auto& p) { p.estimator = IsEstimator::self_normalised; }},
        {TF, "importance -> control variate", [](auto& p) { p.estimator = IsEstimator::control_variate; }},
        {SI, "refinement reuses the base samples", [](auto& p) { p.reuse_samples = true; }},
        {SI, "last sample dropped", [](auto& p) { p.drop_last = true; }},
        {SI, "random stream fixed regardless of seed", [](auto& p) { p.fixed_stream = true; }},
        {SI, "weights divided by 0.999", [](auto& p) { p.normaliser_scale = 0.999; }},
        {SI, "upper limit 1 -> 0.99", [](auto& p) { p.upper = 0.99; }},
    };
    return author(PutId::B3, ImportanceParams{}, make_importance, d);
}

}  // namespace

std::vector<MutantRecord> class_b_mutants(PutId put) {
    switch (put) {
        case PutId::B1: return beta_binomial();
        case PutId::B2: return metropolis();
        default: return importance();
    }
}

}  // namespace semmut::mutants
