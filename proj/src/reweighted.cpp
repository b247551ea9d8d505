#include "admmpd/reweighted.hpp"

#include <cmath>

namespace admmpd {

void validate(const RlpdConfig &cfg, const TannerGraph &g) {
    if (cfg.inner.penalty.kind != PenaltyKind::None)
        throw ConfigError("reweighted LP rounds must use penalty 'none'");
    if (cfg.rounds < 2) throw ConfigError("reweighted LP needs rounds >= 2");
    if (!(cfg.alpha >= 0.0)) throw ConfigError("reweighting alpha must be >= 0");
    validate(cfg.inner, g);
}

std::vector<double> reweight(std::span<const double> gamma, std::span<const double> pseudocodeword, double alpha) {
    if (gamma.size() != pseudocodeword.size()) throw DimensionError("reweight: length mismatch");
    std::vector<double> out(gamma.size());
    if (std::isinf(alpha)) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = -sgn(pseudocodeword[i] - 0.5);
    } else {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = gamma[i] - alpha * sgn(pseudocodeword[i] - 0.5);
    }
    return out;
}

RlpdResult rlpd(std::span<const double> gamma, const TannerGraph &g, const RlpdConfig &cfg) {
    validate(cfg, g);
    const std::size_t rounds = cfg.infinite() ? 2 : cfg.rounds;
    RlpdResult res;
    res.output = decode(gamma, g, cfg.inner);
    res.rounds_used = 1;
    res.total_iterations = res.output.iterations;
    res.trace.push_back(res.output.x_soft);
    for (std::size_t k = 1; k < rounds && !res.output.integral; ++k) {
        const std::vector<double> gamma_k = reweight(gamma, res.output.x_soft, cfg.alpha);
        res.output = decode(gamma_k, g, cfg.inner);
        res.rounds_used = k + 1;
        res.total_iterations += res.output.iterations;
        res.trace.push_back(res.output.x_soft);
    }
    return res;
}

RlpdResult rlpd_inf(std::span<const double> gamma, const TannerGraph &g, const DecoderConfig &inner) {
    RlpdConfig cfg;
    cfg.alpha = RlpdConfig::kInfinity;
    cfg.rounds = 2;
    cfg.inner = inner;
    return rlpd(gamma, g, cfg);
}

void validate(const KdhvbParams &params, const TannerGraph &g) {
    if (!(params.c1 < 0.0)) throw ConfigError("weighted l1 objective needs c1 < 0");
    if (!(params.c2 > 0.0)) throw ConfigError("weighted l1 objective needs c2 > 0");
    if (params.y.size() != g.n()) throw DimensionError("weighted l1 objective: y has the wrong length");
    for (std::size_t i : params.t_set)
        if (i >= g.n()) throw DimensionError("weighted l1 objective: index in T out of range");
}

std::vector<double> kdhvb_gradient(const KdhvbParams &params, std::size_t n) {
    std::vector<char> in_t(n, 0);
    for (std::size_t i : params.t_set) in_t[i] = 1;
    std::vector<double> grad(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double c = in_t[i] ? params.c1 : params.c2;
        grad[i] = params.y[i] ? -c : c;
    }
    return grad;
}

void kdhvb_x_update(AdmmState &state, const KdhvbParams &params, const DecoderConfig &cfg, const TannerGraph &g) {
    validate(params, g);
    DecoderConfig lp = cfg;
    lp.penalty = PenaltySpec::none();
    x_update(state, kdhvb_gradient(params, g.n()), lp, g);
}

DecodeOutput decode_kdhvb(const KdhvbParams &params, const TannerGraph &g, const DecoderConfig &cfg) {
    validate(params, g);
    DecoderConfig lp = cfg;
    lp.penalty = PenaltySpec::none();
    return decode(kdhvb_gradient(params, g.n()), g, lp);
}

} // namespace admmpd
