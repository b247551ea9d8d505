#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "admmpd/admm.hpp"

namespace admmpd {

// Noise convention: the all-zero word is sent, y = 1 - n, gamma = 2 y / sigma^2.

struct InstantonRecord {
    std::vector<double> noise;
    double sq_norm = 0.0;
    std::vector<double> omega; ///< decoder output that certified the failure
    std::uint64_t trial_seed = 0;
    std::size_t iterations_used = 0;
    bool refined = false;
};

struct IsaPdParams {
    std::size_t max_iters = 30;
    double tol = 1e-2;          ///< stop once ||n^k - n^{k-1}||_2 <= tol
    double sigma = 0.5;         ///< sigma used to form the LLRs
    double bisect_tol = 1e-3;   ///< relative width of the final scale bracket
    double expand_factor = 1.3; ///< upward bracket growth from a = 1
    double max_scale = 50.0;    ///< hard cap on the ray search
};

struct IsaRParams {
    double cap_c = 20000.0;
    double eta = 1e-10;
    double step_h = 1.0 / 40000.0;
    double step_norm_cap = 1.0;
    std::size_t iters = 100;
    /// Coordinates the random direction may touch; empty means the support
    /// of the initializer (entries with magnitude above support_threshold).
    std::vector<std::size_t> support;
    double support_threshold = 1e-6;
};

struct NoiseEvaluation {
    bool fails = false;
    DecodeOutput output;
};

/// Decodes y = 1 - n; failure is anything other than a converged, integral,
/// all-zero output.
NoiseEvaluation evaluate_noise(std::span<const double> noise, const TannerGraph &g, const DecoderConfig &cfg,
                               double sigma);
bool decoding_fails(std::span<const double> noise, const TannerGraph &g, const DecoderConfig &cfg, double sigma);

/// Smallest-norm noise n with gamma(n)^T omega + sum_i g(omega_i) <= N g(0),
/// i.e. the noise that makes omega tie with the all-zero word:
///   n* = omega / ||omega||_2^2 * ( ||omega||_1 + sigma^2/2 * (sum_i g(omega_i) - N g(0)) ).
/// The correction term is non-negative: fractional coordinates cost more
/// under the penalty, so confusing 0 with omega takes more noise.
/// Throws std::invalid_argument for an all-zero omega.
std::vector<double> min_confusion_noise(std::span<const double> omega, double sigma, const PenaltySpec &penalty,
                                        std::size_t n_len);

/// Capped search objective: ||n||^2 if decoding fails, C (1 - ||n||^2) if it succeeds.
double capped_objective(double sq_norm, bool fails, double cap_c);

struct ScaleSearch {
    bool found = false;
    double scale = 0.0;      ///< smallest failing scale located (bracket top)
    double success_scale = 0.0; ///< bracket bottom, observed to decode correctly
    NoiseEvaluation at_scale;
    std::size_t decodes = 0;
};

/// Bracketed bisection along the ray a*w: tries a = 1, grows it by expand_factor
/// until decoding fails, then bisects between the last success and the failure.
ScaleSearch search_failing_scale(std::span<const double> w, const TannerGraph &g, const DecoderConfig &cfg,
                                 const IsaPdParams &params);

struct IsaPdResult {
    std::optional<InstantonRecord> record;
    std::vector<double> running_min; ///< best sq norm after each iteration
    std::vector<ScaleSearch> searches;
    bool tolerance_exit = false;
};

/// Iterative instanton search for the penalized decoder. Throws
/// std::invalid_argument if init_noise does not make the decoder fail.
IsaPdResult isa_pd(std::span<const double> init_noise, const TannerGraph &g, const DecoderConfig &cfg,
                   const IsaPdParams &params);

/// Random gradient-free refinement of an instanton (identity covariance,
/// support-restricted directions, capped step length). Returns the best
/// failing noise seen, never a succeeding one.
InstantonRecord isa_r(const InstantonRecord &init, const TannerGraph &g, const DecoderConfig &cfg, double sigma,
                      const IsaRParams &params, std::uint64_t seed);

struct CampaignParams {
    IsaPdParams isa_pd;
    IsaRParams isa_r;
    bool refine = true;
    std::size_t k_trials = 100;
    std::uint64_t seed = 1;
};

struct CampaignSummary {
    std::size_t trials = 0;
    std::size_t records = 0;
    double min_sq_norm = 0.0;
    double quantile_sq_norm = 0.0; ///< the ceil(K/100)-th smallest
    std::size_t quantile_rank = 0;
};

struct CampaignResult {
    std::vector<InstantonRecord> records; ///< sorted by sq_norm
    CampaignSummary summary;
};

/// Random initial noise: i.i.d. standard normal direction scaled up by
/// 1.3 from sigma until decoding fails.
std::vector<double> initial_failing_noise(const TannerGraph &g, const DecoderConfig &cfg, double sigma,
                                          std::uint64_t seed);

std::optional<InstantonRecord> run_instanton_trial(const TannerGraph &g, const DecoderConfig &cfg,
                                                   const CampaignParams &params, std::size_t trial);

/// Trial-parallel campaign (OpenMP); threads = 0 uses the runtime default.
CampaignResult instanton_campaign(const TannerGraph &g, const DecoderConfig &cfg, const CampaignParams &params,
                                  int threads = 0);
/// Single-threaded reference of instanton_campaign.
CampaignResult instanton_campaign_serial(const TannerGraph &g, const DecoderConfig &cfg,
                                         const CampaignParams &params);

/// Indices of the k largest |noise_i| (ties to the lower index), ascending.
std::vector<std::size_t> top_magnitude_support(std::span<const double> noise, std::size_t k);

/// (a, b) of the subgraph induced by `vars`: a = |vars|, b = checks with an
/// odd number of neighbours in `vars`.
std::pair<std::size_t, std::size_t> trapping_set_signature(const TannerGraph &g, std::span<const std::size_t> vars);

} // namespace admmpd
