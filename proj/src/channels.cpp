#include "admmpd/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "admmpd/rng.hpp"

namespace admmpd {

void validate(const AwgnParams &ch) {
    if (!(ch.sigma > 0.0) || !std::isfinite(ch.sigma))
        throw std::invalid_argument("AWGN sigma must be finite and > 0, got " + std::to_string(ch.sigma));
}

void validate(const BscParams &ch) {
    if (!(ch.p > 0.0 && ch.p < 0.5))
        throw std::invalid_argument("BSC crossover must lie in (0, 0.5), got " + std::to_string(ch.p));
}

std::vector<double> awgn_transmit_zero(const TannerGraph &g, const AwgnParams &ch, std::uint64_t seed) {
    validate(ch);
    Rng rng(seed);
    std::vector<double> y(g.n());
    for (double &v : y) v = 1.0 + ch.sigma * rng.normal();
    return y;
}

std::vector<double> awgn_transmit(std::span<const std::uint8_t> c, const AwgnParams &ch, std::uint64_t seed) {
    validate(ch);
    Rng rng(seed);
    std::vector<double> y(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) y[i] = (c[i] ? -1.0 : 1.0) + ch.sigma * rng.normal();
    return y;
}

LlrVector awgn_llr(std::span<const double> y, const AwgnParams &ch) {
    validate(ch);
    const double scale = 2.0 / (ch.sigma * ch.sigma);
    LlrVector gamma(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) gamma[i] = scale * y[i];
    return gamma;
}

LlrVector bsc_llr(std::span<const std::uint8_t> y, const BscParams &ch) {
    validate(ch);
    const double l = std::log((1.0 - ch.p) / ch.p);
    LlrVector gamma(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) gamma[i] = y[i] ? -l : l;
    return gamma;
}

namespace {
void check_lengths(std::size_t a, std::size_t b) {
    if (a != b) throw DimensionError("length mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}
} // namespace

std::vector<double> relative_vector(std::span<const std::uint8_t> c, std::span<const double> a) {
    check_lengths(c.size(), a.size());
    std::vector<double> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c[i] ? 1.0 - a[i] : a[i];
    return r;
}

std::vector<double> symmetry_map_awgn(std::span<const std::uint8_t> c, std::span<const double> y) {
    check_lengths(c.size(), y.size());
    std::vector<double> r(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) r[i] = c[i] ? -y[i] : y[i];
    return r;
}

} // namespace admmpd
