#include "admmpd/admm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace admmpd {

const char *to_string(PenaltyKind kind) {
    switch (kind) {
    case PenaltyKind::None: return "none";
    case PenaltyKind::L1: return "l1";
    case PenaltyKind::L2: return "l2";
    }
    return "unknown";
}

double PenaltySpec::value(double x) const {
    switch (kind) {
    case PenaltyKind::None: return 0.0;
    case PenaltyKind::L1: return -alpha * std::abs(x - 0.5);
    case PenaltyKind::L2: return -alpha * (x - 0.5) * (x - 0.5);
    }
    return 0.0;
}

void validate(const DecoderConfig &cfg) {
    auto fail = [](const std::string &msg) { throw ConfigError(msg); };
    if (!(cfg.mu > 0.0) || !std::isfinite(cfg.mu)) fail("mu must be > 0");
    if (!(cfg.epsilon > 0.0) || !std::isfinite(cfg.epsilon)) fail("epsilon must be > 0");
    if (cfg.t_max < 1) fail("t_max must be >= 1");
    if (!(cfg.rho > 0.0 && cfg.rho <= 2.0)) fail("rho must lie in (0, 2]");
    if (!(cfg.penalty.alpha >= 0.0) || !std::isfinite(cfg.penalty.alpha)) fail("penalty alpha must be >= 0");
    if (cfg.penalty.kind == PenaltyKind::None && cfg.penalty.alpha != 0.0)
        fail("penalty 'none' requires alpha = 0");
}

void validate(const DecoderConfig &cfg, const TannerGraph &g) {
    validate(cfg);
    if (cfg.penalty.kind == PenaltyKind::L2) {
        const double bound = static_cast<double>(g.min_var_degree()) * cfg.mu / 2.0;
        if (!(cfg.penalty.alpha < bound)) {
            std::ostringstream msg;
            msg << "L2 penalty alpha=" << cfg.penalty.alpha << " violates the convexity bound alpha < min_i |N_v(i)|*mu/2 = "
                << bound;
            throw ConfigError(msg.str());
        }
    }
}

AdmmState AdmmState::initial(const TannerGraph &g) {
    AdmmState s;
    s.x.assign(g.n(), 0.0);
    s.z.assign(g.num_edges(), 0.5);
    s.lambda.assign(g.num_edges(), 0.0);
    s.t_scratch.assign(g.n(), 0.0);
    return s;
}

AdmmState AdmmState::at_word(const TannerGraph &g, std::span<const std::uint8_t> w) {
    if (w.size() != g.n()) throw DimensionError("initial word has the wrong length");
    AdmmState s;
    s.x.resize(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) s.x[i] = w[i] ? 1.0 : 0.0;
    s.z.resize(g.num_edges());
    for (std::size_t e = 0; e < g.num_edges(); ++e) s.z[e] = s.x[g.edge_var(e)];
    s.lambda.assign(g.num_edges(), 0.0);
    s.t_scratch.assign(g.n(), 0.0);
    return s;
}

bool DecodeOutput::is_all_zero() const {
    return std::all_of(x_hard.begin(), x_hard.end(), [](std::uint8_t b) { return b == 0; });
}

namespace {

// The decoding loop runs on offsets from 1/2 (u = x - 1/2, zeta = z - 1/2).
// Every update is odd in these offsets, so the codeword symmetry maps one
// run onto the other by exact sign flips instead of 1 - x, which rounds.
struct Centered {
    std::vector<double> u;
    std::vector<double> zeta;
    std::vector<double> lambda;
    std::vector<double> tau; // t_i - |N_v(i)|/2
};

Centered centered_from(const AdmmState &s) {
    Centered c;
    c.u.resize(s.x.size());
    for (std::size_t i = 0; i < s.x.size(); ++i) c.u[i] = s.x[i] - 0.5;
    c.zeta.resize(s.z.size());
    for (std::size_t e = 0; e < s.z.size(); ++e) c.zeta[e] = s.z[e] - 0.5;
    c.lambda = s.lambda;
    c.tau.assign(s.x.size(), 0.0);
    return c;
}

void write_x(const Centered &c, const TannerGraph &g, AdmmState &s) {
    s.x.resize(c.u.size());
    s.t_scratch.resize(c.u.size());
    for (std::size_t i = 0; i < c.u.size(); ++i) {
        s.x[i] = 0.5 + c.u[i];
        s.t_scratch[i] = static_cast<double>(g.var_degree(i)) / 2.0 + c.tau[i];
    }
}

void write_state(const Centered &c, const TannerGraph &g, AdmmState &s) {
    write_x(c, g, s);
    s.z.resize(c.zeta.size());
    for (std::size_t e = 0; e < c.zeta.size(); ++e) s.z[e] = 0.5 + c.zeta[e];
    s.lambda = c.lambda;
}

void centered_x_update(Centered &c, std::span<const double> gamma, const DecoderConfig &cfg, const TannerGraph &g) {
    const double inv_mu = 1.0 / cfg.mu;
    const double shift = cfg.penalty.alpha * inv_mu;
    for (std::size_t i = 0; i < g.n(); ++i) {
        double tau = 0.0;
        for (int e : g.var_edges(i)) tau += c.zeta[e] - c.lambda[e] * inv_mu;
        tau -= gamma[i] * inv_mu;
        c.tau[i] = tau;

        const double deg = static_cast<double>(g.var_degree(i));
        double ui = 0.0;
        switch (cfg.penalty.kind) {
        case PenaltyKind::None: ui = tau / deg; break;
        case PenaltyKind::L1:
            // two stationary points; keep the one farther from 1/2
            ui = (tau >= 0.0) ? (tau + shift) / deg : (tau - shift) / deg;
            break;
        case PenaltyKind::L2: ui = tau / (deg - 2.0 * shift); break;
        }
        c.u[i] = std::clamp(ui, -0.5, 0.5);
    }
}

Residuals centered_z_lambda_update(Centered &c, const DecoderConfig &cfg, const TannerGraph &g,
                                   ProjectionWorkspace &ws) {
    Residuals r;
    const double inv_mu = 1.0 / cfg.mu;
    const double rho = cfg.rho;
    const double keep = 1.0 - rho;
    thread_local std::vector<double> v, z_new;
    v.resize(g.max_check_degree());
    z_new.resize(g.max_check_degree());
    for (std::size_t j = 0; j < g.m(); ++j) {
        const std::size_t off = g.check_offset(j);
        const std::size_t d = g.check_degree(j);
        for (std::size_t k = 0; k < d; ++k) {
            const std::size_t e = off + k;
            const double w = rho * c.u[g.edge_var(e)] + keep * c.zeta[e];
            v[k] = w + c.lambda[e] * inv_mu;
        }
        project_parity_polytope_centered(std::span<const double>(v.data(), d), std::span<double>(z_new.data(), d),
                                         ws);
        for (std::size_t k = 0; k < d; ++k) {
            const std::size_t e = off + k;
            const double ue = c.u[g.edge_var(e)];
            const double w = rho * ue + keep * c.zeta[e];
            c.lambda[e] += cfg.mu * (w - z_new[k]);
            const double dp = ue - z_new[k];
            const double dz = z_new[k] - c.zeta[e];
            r.primal += dp * dp;
            r.change += dz * dz;
            c.zeta[e] = z_new[k];
        }
    }
    return r;
}

} // namespace

void x_update(AdmmState &state, std::span<const double> gamma, const DecoderConfig &cfg, const TannerGraph &g) {
    Centered c = centered_from(state);
    centered_x_update(c, gamma, cfg, g);
    write_x(c, g, state);
}

Residuals z_lambda_update(AdmmState &state, const DecoderConfig &cfg, const TannerGraph &g, ProjectionWorkspace &ws) {
    Centered c = centered_from(state);
    const Residuals r = centered_z_lambda_update(c, cfg, g, ws);
    for (std::size_t e = 0; e < c.zeta.size(); ++e) state.z[e] = 0.5 + c.zeta[e];
    state.lambda = std::move(c.lambda);
    return r;
}

BinaryWord hard_decision(std::span<const double> x) {
    BinaryWord w(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) w[i] = x[i] > 0.5 ? 1 : 0;
    return w;
}

bool is_integral(std::span<const double> x, double tol) {
    return std::all_of(x.begin(), x.end(), [tol](double a) { return std::min(a, 1.0 - a) <= tol; });
}

DecodeOutput decode(std::span<const double> gamma, const TannerGraph &g, const DecoderConfig &cfg,
                    const AdmmState *init, const IterationObserver &observer) {
    if (gamma.size() != g.n())
        throw DimensionError("LLR length " + std::to_string(gamma.size()) + " != N = " + std::to_string(g.n()));
    validate(cfg, g);
    AdmmState state = init ? *init : AdmmState::initial(g);
    if (state.x.size() != g.n() || state.z.size() != g.num_edges() || state.lambda.size() != g.num_edges())
        throw DimensionError("initial ADMM state does not match the graph");

    const double threshold = cfg.epsilon * cfg.epsilon * static_cast<double>(g.num_edges());
    Centered c = centered_from(state);
    ProjectionWorkspace ws;
    DecodeOutput out;
    for (std::size_t k = 1; k <= cfg.t_max; ++k) {
        centered_x_update(c, gamma, cfg, g);
        const Residuals r = centered_z_lambda_update(c, cfg, g, ws);
        out.iterations = k;
        if (observer) {
            write_state(c, g, state);
            observer(k, state);
        }
        if (r.primal < threshold && r.change < threshold) {
            out.converged = true;
            break;
        }
    }
    out.x_soft.resize(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) out.x_soft[i] = 0.5 + c.u[i];
    out.x_hard = hard_decision(out.x_soft);
    out.integral = is_integral(out.x_soft);
    out.valid_codeword = syndrome_ok(g, out.x_hard);
    return out;
}

bool weak_ml_test(std::span<const std::uint8_t> candidate, std::span<const double> gamma, const TannerGraph &g,
                  const DecoderConfig &cfg) {
    if (!syndrome_ok(g, candidate)) throw std::invalid_argument("weak ML test candidate is not a codeword");
    DecoderConfig lp = cfg;
    lp.penalty = PenaltySpec::none();
    const AdmmState init = AdmmState::at_word(g, candidate);
    const DecodeOutput out = decode(gamma, g, lp, &init);
    return out.converged && out.integral && std::equal(out.x_hard.begin(), out.x_hard.end(), candidate.begin());
}

} // namespace admmpd
