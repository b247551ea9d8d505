#include "admmpd/instanton.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "admmpd/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace admmpd {

namespace {

double sq_norm(std::span<const double> v) {
    double s = 0.0;
    for (double a : v) s += a * a;
    return s;
}

std::vector<double> scaled(std::span<const double> v, double a) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = a * v[i];
    return out;
}

} // namespace

NoiseEvaluation evaluate_noise(std::span<const double> noise, const TannerGraph &g, const DecoderConfig &cfg,
                               double sigma) {
    if (noise.size() != g.n()) throw DimensionError("noise vector has the wrong length");
    std::vector<double> y(noise.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = 1.0 - noise[i];
    NoiseEvaluation ev;
    ev.output = decode(awgn_llr(y, AwgnParams{sigma}), g, cfg);
    ev.fails = !ev.output.recovered_zero();
    return ev;
}

bool decoding_fails(std::span<const double> noise, const TannerGraph &g, const DecoderConfig &cfg, double sigma) {
    return evaluate_noise(noise, g, cfg, sigma).fails;
}

std::vector<double> min_confusion_noise(std::span<const double> omega, double sigma, const PenaltySpec &penalty,
                                        std::size_t n_len) {
    const double l2 = sq_norm(omega);
    if (!(l2 > 0.0)) throw std::invalid_argument("min_confusion_noise: omega must be nonzero");
    double l1 = 0.0;
    double penalty_sum = 0.0;
    for (double w : omega) {
        l1 += std::abs(w);
        penalty_sum += penalty.value(w);
    }
    const double n_g0 = static_cast<double>(n_len) * penalty.value(0.0);
    const double scale = (l1 + 0.5 * sigma * sigma * (penalty_sum - n_g0)) / l2;
    return scaled(omega, scale);
}

double capped_objective(double sq, bool fails, double cap_c) { return fails ? sq : cap_c * (1.0 - sq); }

ScaleSearch search_failing_scale(std::span<const double> w, const TannerGraph &g, const DecoderConfig &cfg,
                                 const IsaPdParams &params) {
    ScaleSearch s;
    auto eval = [&](double a) {
        ++s.decodes;
        return evaluate_noise(scaled(w, a), g, cfg, params.sigma);
    };

    double lo = 0.0; // zero noise decodes correctly
    double hi = 1.0;
    NoiseEvaluation at_hi = eval(hi);
    if (!at_hi.fails) {
        lo = hi;
        while (true) {
            hi *= params.expand_factor;
            if (hi > params.max_scale) return s;
            at_hi = eval(hi);
            if (at_hi.fails) break;
            lo = hi;
        }
    }
    while (hi - lo > params.bisect_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        NoiseEvaluation at_mid = eval(mid);
        if (at_mid.fails) {
            hi = mid;
            at_hi = std::move(at_mid);
        } else {
            lo = mid;
        }
    }
    s.found = true;
    s.scale = hi;
    s.success_scale = lo;
    s.at_scale = std::move(at_hi);
    return s;
}

IsaPdResult isa_pd(std::span<const double> init_noise, const TannerGraph &g, const DecoderConfig &cfg,
                   const IsaPdParams &params) {
    NoiseEvaluation start = evaluate_noise(init_noise, g, cfg, params.sigma);
    if (!start.fails) throw std::invalid_argument("isa_pd: the initial noise must make the decoder fail");

    IsaPdResult res;
    std::vector<double> omega = std::move(start.output.x_soft);
    std::vector<double> previous(init_noise.begin(), init_noise.end());
    for (std::size_t k = 1; k <= params.max_iters; ++k) {
        if (!(sq_norm(omega) > 0.0)) break;
        const std::vector<double> w = min_confusion_noise(omega, params.sigma, cfg.penalty, g.n());
        ScaleSearch search = search_failing_scale(w, g, cfg, params);
        const bool found = search.found;
        std::vector<double> n_k;
        if (found) {
            n_k = scaled(w, search.scale);
            omega = search.at_scale.output.x_soft;
        }
        res.searches.push_back(std::move(search));
        if (!found) break;

        const double sq = sq_norm(n_k);
        if (!res.record || sq < res.record->sq_norm) {
            InstantonRecord rec;
            rec.noise = n_k;
            rec.sq_norm = sq;
            rec.omega = omega;
            rec.iterations_used = k;
            res.record = std::move(rec);
        }
        res.running_min.push_back(res.record->sq_norm);

        double step = 0.0;
        for (std::size_t i = 0; i < n_k.size(); ++i) step += (n_k[i] - previous[i]) * (n_k[i] - previous[i]);
        if (std::sqrt(step) <= params.tol) {
            res.tolerance_exit = true;
            break;
        }
        previous = std::move(n_k);
    }
    return res;
}

InstantonRecord isa_r(const InstantonRecord &init, const TannerGraph &g, const DecoderConfig &cfg, double sigma,
                      const IsaRParams &params, std::uint64_t seed) {
    std::vector<std::size_t> support = params.support;
    if (support.empty())
        for (std::size_t i = 0; i < init.noise.size(); ++i)
            if (std::abs(init.noise[i]) > params.support_threshold) support.push_back(i);

    InstantonRecord best = init;
    best.refined = true;
    if (support.empty()) return best;

    Rng rng(seed);
    std::vector<double> x = init.noise;
    double fx = capped_objective(sq_norm(x), true, params.cap_c);
    std::vector<double> u(x.size(), 0.0);
    std::vector<double> probe(x.size());

    auto consider = [&](const std::vector<double> &n, const NoiseEvaluation &ev, double sq) {
        if (ev.fails && sq < best.sq_norm) {
            best.noise = n;
            best.sq_norm = sq;
            best.omega = ev.output.x_soft;
        }
    };

    for (std::size_t it = 0; it < params.iters; ++it) {
        std::fill(u.begin(), u.end(), 0.0);
        for (std::size_t i : support) u[i] = rng.normal();
        for (std::size_t i = 0; i < x.size(); ++i) probe[i] = x[i] + params.eta * u[i];
        const NoiseEvaluation at_probe = evaluate_noise(probe, g, cfg, sigma);
        const double probe_sq = sq_norm(probe);
        consider(probe, at_probe, probe_sq);
        const double f_probe = capped_objective(probe_sq, at_probe.fails, params.cap_c);

        // step = h * (f(x + eta u) - f(x)) / eta * u, shrunk to the norm cap
        const double coeff = params.step_h * (f_probe - fx) / params.eta;
        double step_norm = std::abs(coeff) * std::sqrt(sq_norm(u));
        const double shrink = step_norm > params.step_norm_cap ? params.step_norm_cap / step_norm : 1.0;
        for (std::size_t i = 0; i < x.size(); ++i) x[i] -= shrink * coeff * u[i];

        const NoiseEvaluation at_x = evaluate_noise(x, g, cfg, sigma);
        const double sq = sq_norm(x);
        consider(x, at_x, sq);
        fx = capped_objective(sq, at_x.fails, params.cap_c);
    }
    return best;
}

std::vector<double> initial_failing_noise(const TannerGraph &g, const DecoderConfig &cfg, double sigma,
                                          std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> dir(g.n());
    for (double &v : dir) v = rng.normal();
    double a = sigma;
    for (int tries = 0; tries < 200; ++tries, a *= 1.3) {
        std::vector<double> n = scaled(dir, a);
        if (decoding_fails(n, g, cfg, sigma)) return n;
    }
    throw std::runtime_error("could not find an initial noise vector that makes the decoder fail");
}

std::optional<InstantonRecord> run_instanton_trial(const TannerGraph &g, const DecoderConfig &cfg,
                                                   const CampaignParams &params, std::size_t trial) {
    const std::uint64_t trial_seed = derive_seed(params.seed, trial);
    const std::vector<double> n0 = initial_failing_noise(g, cfg, params.isa_pd.sigma, trial_seed);
    IsaPdResult pd = isa_pd(n0, g, cfg, params.isa_pd);
    if (!pd.record) return std::nullopt;
    InstantonRecord rec = std::move(*pd.record);
    rec.trial_seed = trial_seed;
    if (params.refine) {
        rec = isa_r(rec, g, cfg, params.isa_pd.sigma, params.isa_r, splitmix64(trial_seed));
        rec.trial_seed = trial_seed;
    }
    return rec;
}

namespace {

CampaignResult finish_campaign(std::vector<std::optional<InstantonRecord>> slots, std::size_t k_trials) {
    CampaignResult res;
    for (auto &slot : slots)
        if (slot) res.records.push_back(std::move(*slot));
    std::sort(res.records.begin(), res.records.end(), [](const InstantonRecord &a, const InstantonRecord &b) {
        if (a.sq_norm != b.sq_norm) return a.sq_norm < b.sq_norm;
        return a.trial_seed < b.trial_seed;
    });
    res.summary.trials = k_trials;
    res.summary.records = res.records.size();
    if (!res.records.empty()) {
        const std::size_t rank = std::max<std::size_t>(1, (res.records.size() + 99) / 100);
        res.summary.min_sq_norm = res.records.front().sq_norm;
        res.summary.quantile_rank = rank;
        res.summary.quantile_sq_norm = res.records[rank - 1].sq_norm;
    }
    return res;
}

} // namespace

CampaignResult instanton_campaign(const TannerGraph &g, const DecoderConfig &cfg, const CampaignParams &params,
                                  int threads) {
    if (params.k_trials < 1) throw std::invalid_argument("instanton campaign needs k_trials >= 1");
    validate(cfg, g);
    std::vector<std::optional<InstantonRecord>> slots(params.k_trials);
    const long long count = static_cast<long long>(params.k_trials);
#ifdef _OPENMP
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
#endif
    for (long long t = 0; t < count; ++t) slots[t] = run_instanton_trial(g, cfg, params, static_cast<std::size_t>(t));
    (void)threads;
    return finish_campaign(std::move(slots), params.k_trials);
}

CampaignResult instanton_campaign_serial(const TannerGraph &g, const DecoderConfig &cfg,
                                         const CampaignParams &params) {
    if (params.k_trials < 1) throw std::invalid_argument("instanton campaign needs k_trials >= 1");
    validate(cfg, g);
    std::vector<std::optional<InstantonRecord>> slots(params.k_trials);
    for (std::size_t t = 0; t < params.k_trials; ++t) slots[t] = run_instanton_trial(g, cfg, params, t);
    return finish_campaign(std::move(slots), params.k_trials);
}

std::vector<std::size_t> top_magnitude_support(std::span<const double> noise, std::size_t k) {
    std::vector<std::size_t> idx(noise.size());
    std::iota(idx.begin(), idx.end(), 0);
    k = std::min(k, idx.size());
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(noise[a]) > std::abs(noise[b]); });
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

std::pair<std::size_t, std::size_t> trapping_set_signature(const TannerGraph &g, std::span<const std::size_t> vars) {
    std::vector<unsigned> hits(g.m(), 0);
    for (std::size_t i : vars)
        for (int j : g.var_neighbors(i)) ++hits[j];
    std::size_t odd = 0;
    for (unsigned h : hits) odd += h % 2;
    return {vars.size(), odd};
}

} // namespace admmpd
