#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "admmpd/channels.hpp"
#include "admmpd/code_graph.hpp"
#include "admmpd/parity_polytope.hpp"

namespace admmpd {

class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

enum class PenaltyKind { None, L1, L2 };

const char *to_string(PenaltyKind kind);

/// Symmetric penalty added per coordinate to the LP objective:
/// L1: g(x) = -alpha |x - 1/2|, L2: g(x) = -alpha (x - 1/2)^2.
struct PenaltySpec {
    PenaltyKind kind = PenaltyKind::None;
    double alpha = 0.0;

    static PenaltySpec none() { return {}; }
    static PenaltySpec l1(double alpha) { return {PenaltyKind::L1, alpha}; }
    static PenaltySpec l2(double alpha) { return {PenaltyKind::L2, alpha}; }

    double value(double x) const;
};

inline constexpr double kDefaultMu = 3.0;
inline constexpr double kDefaultEpsilon = 1e-5;
inline constexpr std::size_t kDefaultTMax = 1000;
inline constexpr double kDefaultRho = 1.9;
inline constexpr double kDefaultAlphaL1 = 0.6;
inline constexpr double kDefaultAlphaL2 = 0.8;
inline constexpr double kIntegralityTol = 1e-5;

struct DecoderConfig {
    double mu = kDefaultMu;
    double epsilon = kDefaultEpsilon;
    std::size_t t_max = kDefaultTMax;
    double rho = kDefaultRho;
    PenaltySpec penalty;
};

/// Range checks that do not need a graph.
void validate(const DecoderConfig &cfg);

/// Full check, including the L2 convexity bound
/// alpha < min_i |N_v(i)| * mu / 2 (the x-update divides by
/// |N_v(i)| - 2 alpha / mu, so equality is rejected too).
void validate(const DecoderConfig &cfg, const TannerGraph &g);

/// ADMM iterate. z and lambda are stored flat in the graph's check-major
/// edge order; replica(g, j) views the slice of check j.
struct AdmmState {
    std::vector<double> x;
    std::vector<double> z;
    std::vector<double> lambda;
    std::vector<double> t_scratch;

    /// x = 0, every z_j = 1/2, every lambda_j = 0.
    static AdmmState initial(const TannerGraph &g);
    /// x = w, z_j = P_j w, lambda_j = 0.
    static AdmmState at_word(const TannerGraph &g, std::span<const std::uint8_t> w);

    std::span<const double> replica(const TannerGraph &g, std::size_t j) const {
        return {z.data() + g.check_offset(j), g.check_degree(j)};
    }
    std::span<const double> dual(const TannerGraph &g, std::size_t j) const {
        return {lambda.data() + g.check_offset(j), g.check_degree(j)};
    }
};

struct DecodeOutput {
    std::vector<double> x_soft;
    BinaryWord x_hard;
    std::size_t iterations = 0;
    bool converged = false;
    bool integral = false;
    bool valid_codeword = false;

    bool is_all_zero() const;
    /// Decoding recovered the all-zero word: hard decision zero, integral and converged.
    bool recovered_zero() const { return converged && integral && is_all_zero(); }
};

struct Residuals {
    double primal = 0.0; ///< sum_j ||P_j x - z_j||^2
    double change = 0.0; ///< sum_j ||z_j - z_j^old||^2
};

/// One sweep of x_i updates. `gamma` is the gradient of the linear part of
/// the objective (the LLR vector for decoding).
void x_update(AdmmState &state, std::span<const double> gamma, const DecoderConfig &cfg, const TannerGraph &g);

/// Over-relaxed replica and dual update over all checks; returns the
/// residuals used by the stopping rule.
Residuals z_lambda_update(AdmmState &state, const DecoderConfig &cfg, const TannerGraph &g, ProjectionWorkspace &ws);

/// Called after every iteration k = 1, 2, ... with the updated state.
using IterationObserver = std::function<void(std::size_t k, const AdmmState &)>;

/// Runs ADMM (LP decoding or penalized decoding) until
/// sum_j ||P_j x - z_j||^2 < eps^2 sum_j d_j and sum_j ||z_j - z_j^old||^2 < eps^2 sum_j d_j,
/// or t_max iterations. `init` defaults to AdmmState::initial.
DecodeOutput decode(std::span<const double> gamma, const TannerGraph &g, const DecoderConfig &cfg,
                    const AdmmState *init = nullptr, const IterationObserver &observer = {});

/// Hard decision at 1/2; ties go to 0.
BinaryWord hard_decision(std::span<const double> x);
bool is_integral(std::span<const double> x, double tol = kIntegralityTol);

/// Penalty-free ADMM started at x = candidate, z_j = P_j candidate,
/// lambda = 0. True iff it converges to an integral output equal to
/// candidate. Throws std::invalid_argument if candidate is not a codeword.
bool weak_ml_test(std::span<const std::uint8_t> candidate, std::span<const double> gamma, const TannerGraph &g,
                  const DecoderConfig &cfg);

} // namespace admmpd
