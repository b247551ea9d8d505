#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "admmpd/code_graph.hpp"

namespace admmpd {

// BPSK mapping throughout: bit 0 -> +1, bit 1 -> -1, so a positive LLR favors 0.

struct AwgnParams {
    double sigma = 1.0;
};

struct BscParams {
    double p = 0.1;
};

using LlrVector = std::vector<double>;

void validate(const AwgnParams &ch);
void validate(const BscParams &ch);

/// y_i = +1 + n_i, n_i ~ N(0, sigma^2), drawn from Rng(seed).
std::vector<double> awgn_transmit_zero(const TannerGraph &g, const AwgnParams &ch, std::uint64_t seed);

/// y_i = (1 - 2 c_i) + n_i for an arbitrary word c.
std::vector<double> awgn_transmit(std::span<const std::uint8_t> c, const AwgnParams &ch, std::uint64_t seed);

/// gamma_i = log(W(y_i|0) / W(y_i|1)) = 2 y_i / sigma^2.
LlrVector awgn_llr(std::span<const double> y, const AwgnParams &ch);

/// gamma_i = +log((1-p)/p) for y_i = 0 and the negation for y_i = 1.
LlrVector bsc_llr(std::span<const std::uint8_t> y, const BscParams &ch);

/// R_c(a)_i = a_i where c_i = 0 and 1 - a_i where c_i = 1.
std::vector<double> relative_vector(std::span<const std::uint8_t> c, std::span<const double> a);

/// Z_c(y): the received vector seen from the all-zero codeword, y_i -> -y_i where c_i = 1.
std::vector<double> symmetry_map_awgn(std::span<const std::uint8_t> c, std::span<const double> y);

} // namespace admmpd
