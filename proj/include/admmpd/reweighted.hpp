#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "admmpd/admm.hpp"

namespace admmpd {

/// Reweighted LP decoding: round 0 is plain LP decoding; while the result
/// is fractional, round k re-solves the LP with
///   gamma_i^(k) = gamma_i - alpha * sgn(x_i^(k-1) - 1/2),
/// each round from the default ADMM initialization. alpha = +inf selects
/// the variant whose second-round objective is -sgn(x^(0) - 1/2) alone.
struct RlpdConfig {
    double alpha = kDefaultAlphaL1;
    std::size_t rounds = 2;
    DecoderConfig inner;

    static constexpr double kInfinity = std::numeric_limits<double>::infinity();
    bool infinite() const { return alpha == kInfinity; }
};

void validate(const RlpdConfig &cfg, const TannerGraph &g);

struct RlpdResult {
    DecodeOutput output;
    std::size_t rounds_used = 0;
    /// Soft output of every round that ran, round 0 first.
    std::vector<std::vector<double>> trace;
    /// Total ADMM iterations over all rounds.
    std::size_t total_iterations = 0;
};

/// sgn with sgn(0) = 0.
inline double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

/// Objective of the next round from the previous round's pseudocodeword.
std::vector<double> reweight(std::span<const double> gamma, std::span<const double> pseudocodeword, double alpha);

RlpdResult rlpd(std::span<const double> gamma, const TannerGraph &g, const RlpdConfig &cfg);

/// Two rounds with alpha = +inf.
RlpdResult rlpd_inf(std::span<const double> gamma, const TannerGraph &g, const DecoderConfig &inner);

/// Weighted l1 objective c1 ||(x - y)_T||_1 + c2 ||(x - y)_{T^c}||_1 with
/// c1 < 0 < c2. The set T is an input here; how to choose it is left to
/// the caller.
struct KdhvbParams {
    std::vector<std::size_t> t_set;
    double c1 = -1.0;
    double c2 = 1.0;
    BinaryWord y;
};

void validate(const KdhvbParams &params, const TannerGraph &g);

/// Gradient of the weighted l1 objective over [0,1]^N: +c_v where y_i = 0
/// and -c_v where y_i = 1, with v = 1 on T and v = 2 elsewhere.
std::vector<double> kdhvb_gradient(const KdhvbParams &params, std::size_t n);

/// x-update for the weighted l1 objective.
void kdhvb_x_update(AdmmState &state, const KdhvbParams &params, const DecoderConfig &cfg, const TannerGraph &g);

/// Full ADMM solve of the weighted l1 LP.
DecodeOutput decode_kdhvb(const KdhvbParams &params, const TannerGraph &g, const DecoderConfig &cfg);

} // namespace admmpd
