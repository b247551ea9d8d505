#include "admmpd/wer.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "admmpd/rng.hpp"
#include "admmpd/version.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace admmpd {

const char *to_string(DecoderKind kind) {
    switch (kind) {
    case DecoderKind::LP: return "lp";
    case DecoderKind::PD_L1: return "pd-l1";
    case DecoderKind::PD_L2: return "pd-l2";
    case DecoderKind::RLPD: return "rlpd";
    case DecoderKind::RLPD_INF: return "rlpd-inf";
    }
    return "unknown";
}

DecoderKind parse_decoder_kind(const std::string &name) {
    for (DecoderKind k : {DecoderKind::LP, DecoderKind::PD_L1, DecoderKind::PD_L2, DecoderKind::RLPD,
                          DecoderKind::RLPD_INF})
        if (name == to_string(k)) return k;
    throw ConfigError("unknown decoder '" + name + "' (expected lp, pd-l1, pd-l2, rlpd or rlpd-inf)");
}

DecoderSetup DecoderSetup::with_defaults(DecoderKind kind) {
    DecoderSetup s;
    s.kind = kind;
    switch (kind) {
    case DecoderKind::PD_L1:
    case DecoderKind::RLPD: s.alpha = kDefaultAlphaL1; break;
    case DecoderKind::PD_L2: s.alpha = kDefaultAlphaL2; break;
    default: break;
    }
    return s;
}

PenaltySpec DecoderSetup::penalty() const {
    switch (kind) {
    case DecoderKind::PD_L1: return PenaltySpec::l1(alpha);
    case DecoderKind::PD_L2: return PenaltySpec::l2(alpha);
    default: return PenaltySpec::none();
    }
}

DecoderConfig DecoderSetup::admm_config() const {
    DecoderConfig cfg = base;
    cfg.penalty = penalty();
    return cfg;
}

double DecoderSetup::reported_alpha() const {
    switch (kind) {
    case DecoderKind::PD_L1:
    case DecoderKind::PD_L2:
    case DecoderKind::RLPD: return alpha;
    default: return 0.0;
    }
}

void validate(const DecoderSetup &setup, const TannerGraph &g) {
    validate(setup.admm_config(), g);
    if (setup.kind == DecoderKind::RLPD) {
        RlpdConfig r{setup.alpha, setup.rounds, setup.admm_config()};
        validate(r, g);
    }
}

DecodeOutput run_decoder(const DecoderSetup &setup, const TannerGraph &g, std::span<const double> gamma) {
    switch (setup.kind) {
    case DecoderKind::RLPD: return rlpd(gamma, g, RlpdConfig{setup.alpha, setup.rounds, setup.admm_config()}).output;
    case DecoderKind::RLPD_INF: return rlpd_inf(gamma, g, setup.admm_config()).output;
    default: return decode(gamma, g, setup.admm_config());
    }
}

TrialOutcome decode_trial(const DecoderSetup &setup, const TannerGraph &g, std::span<const double> gamma) {
    TrialOutcome t;
    if (setup.kind == DecoderKind::RLPD || setup.kind == DecoderKind::RLPD_INF) {
        const RlpdResult r = setup.kind == DecoderKind::RLPD
                                 ? rlpd(gamma, g, RlpdConfig{setup.alpha, setup.rounds, setup.admm_config()})
                                 : rlpd_inf(gamma, g, setup.admm_config());
        t.success = r.output.recovered_zero();
        t.iterations = r.total_iterations;
    } else {
        const DecodeOutput out = decode(gamma, g, setup.admm_config());
        t.success = out.recovered_zero();
        t.iterations = out.iterations;
    }
    return t;
}

double ebn0_to_sigma(double ebn0_db, double rate) {
    if (!(rate > 0.0 && rate < 1.0)) throw ConfigError("code rate must lie in (0, 1)");
    return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0)));
}

double code_rate(const TannerGraph &g) {
    return static_cast<double>(code_dimension(g)) / static_cast<double>(g.n());
}

WilsonInterval wilson_interval(std::size_t errors, std::size_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // clamp so that low <= p <= high survives rounding at p = 0 or 1
    return {std::min(std::max(0.0, center - half), p), std::max(std::min(1.0, center + half), p)};
}

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double a : v) s += a;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

namespace {

struct Tally {
    std::size_t trials = 0;
    std::size_t errors = 0;
    std::vector<double> iters_all;
    std::vector<double> iters_correct;

    // returns true once the stop rule is met
    bool add(const TrialOutcome &t, const StopRule &stop) {
        ++trials;
        iters_all.push_back(static_cast<double>(t.iterations));
        if (t.success)
            iters_correct.push_back(static_cast<double>(t.iterations));
        else
            ++errors;
        return errors >= stop.target_errors || trials >= stop.max_trials;
    }
};

TrialOutcome simulate_trial(const TannerGraph &g, const DecoderSetup &setup, const AwgnParams &ch, std::uint64_t seed,
                            std::size_t t) {
    const std::vector<double> y = awgn_transmit_zero(g, ch, derive_seed(seed, t));
    return decode_trial(setup, g, awgn_llr(y, ch));
}

WerPoint make_point(const DecoderSetup &setup, double ebn0_db, double sigma, std::uint64_t seed, const Tally &tally,
                    double seconds) {
    const DecoderConfig cfg = setup.admm_config();
    WerPoint p;
    p.decoder = to_string(setup.kind);
    p.penalty = to_string(cfg.penalty.kind);
    p.alpha = setup.reported_alpha();
    p.mu = cfg.mu;
    p.rho = cfg.rho;
    p.t_max = cfg.t_max;
    p.epsilon = cfg.epsilon;
    p.ebn0_db = ebn0_db;
    p.sigma = sigma;
    p.trials = tally.trials;
    p.word_errors = tally.errors;
    p.wer = tally.trials ? static_cast<double>(tally.errors) / static_cast<double>(tally.trials) : 0.0;
    const WilsonInterval ci = wilson_interval(tally.errors, tally.trials);
    p.ci_low = ci.low;
    p.ci_high = ci.high;
    p.mean_iterations_all =
        tally.iters_all.empty() ? 0.0 : pairwise_sum(tally.iters_all) / static_cast<double>(tally.iters_all.size());
    p.mean_iterations_correct = tally.iters_correct.empty() ? 0.0
                                                            : pairwise_sum(tally.iters_correct) /
                                                                  static_cast<double>(tally.iters_correct.size());
    p.wall_seconds = seconds;
    p.seed = seed;
    return p;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void check_stop(const StopRule &stop) {
    if (stop.target_errors < 1 || stop.max_trials < 1) throw ConfigError("stop rule values must be >= 1");
}

} // namespace

WerPoint run_wer_point(const TannerGraph &g, const DecoderSetup &setup, double ebn0_db, const StopRule &stop,
                       std::uint64_t seed, int threads) {
    validate(setup, g);
    check_stop(stop);
    const auto start = std::chrono::steady_clock::now();
    const AwgnParams ch{ebn0_to_sigma(ebn0_db, code_rate(g))};

    int nthreads = 1;
#ifdef _OPENMP
    nthreads = threads > 0 ? threads : omp_get_max_threads();
#endif
    (void)threads;
    const std::size_t batch = std::max<std::size_t>(64, 32 * static_cast<std::size_t>(nthreads));
    std::vector<TrialOutcome> outcomes(batch);
    Tally tally;
    bool done = false;
    for (std::size_t first = 0; !done && first < stop.max_trials; first += batch) {
        const long long count = static_cast<long long>(std::min(batch, stop.max_trials - first));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) num_threads(nthreads)
#endif
        for (long long k = 0; k < count; ++k)
            outcomes[k] = simulate_trial(g, setup, ch, seed, first + static_cast<std::size_t>(k));
        for (long long k = 0; k < count && !done; ++k) done = tally.add(outcomes[k], stop);
    }
    return make_point(setup, ebn0_db, ch.sigma, seed, tally, seconds_since(start));
}

WerPoint run_wer_point_serial(const TannerGraph &g, const DecoderSetup &setup, double ebn0_db, const StopRule &stop,
                              std::uint64_t seed) {
    validate(setup, g);
    check_stop(stop);
    const auto start = std::chrono::steady_clock::now();
    const AwgnParams ch{ebn0_to_sigma(ebn0_db, code_rate(g))};
    Tally tally;
    for (std::size_t t = 0; t < stop.max_trials; ++t)
        if (tally.add(simulate_trial(g, setup, ch, seed, t), stop)) break;
    return make_point(setup, ebn0_db, ch.sigma, seed, tally, seconds_since(start));
}

SweepAxis parse_sweep_axis(const std::string &name) {
    for (SweepAxis a : {SweepAxis::Alpha, SweepAxis::Mu, SweepAxis::TMax, SweepAxis::Rho, SweepAxis::EbN0})
        if (name == to_string(a)) return a;
    throw ConfigError("unknown sweep axis '" + name + "' (expected alpha, mu, rho, tmax or ebn0)");
}

const char *to_string(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::Alpha: return "alpha";
    case SweepAxis::Mu: return "mu";
    case SweepAxis::TMax: return "tmax";
    case SweepAxis::Rho: return "rho";
    case SweepAxis::EbN0: return "ebn0";
    }
    return "unknown";
}

std::uint64_t sweep_point_seed(std::uint64_t seed, std::size_t index) {
    return splitmix64(seed ^ splitmix64(0x5357454550ULL + index));
}

SweepResult run_sweep(const TannerGraph &g, const DecoderSetup &base, double ebn0_db, SweepAxis axis,
                      std::span<const double> values, const StopRule &stop, std::uint64_t seed, int threads) {
    SweepResult res;
    for (std::size_t k = 0; k < values.size(); ++k) {
        DecoderSetup setup = base;
        double point_ebn0 = ebn0_db;
        const double v = values[k];
        switch (axis) {
        case SweepAxis::Alpha: setup.alpha = v; break;
        case SweepAxis::Mu: setup.base.mu = v; break;
        case SweepAxis::Rho: setup.base.rho = v; break;
        case SweepAxis::EbN0: point_ebn0 = v; break;
        case SweepAxis::TMax:
            if (!(v >= 1.0) || v != std::floor(v)) {
                std::ostringstream msg;
                msg << "tmax=" << v << ": must be a positive integer";
                res.rejected.push_back(msg.str());
                continue;
            }
            setup.base.t_max = static_cast<std::size_t>(v);
            break;
        }
        try {
            validate(setup, g);
        } catch (const ConfigError &e) {
            std::ostringstream msg;
            msg << to_string(axis) << '=' << v << ": " << e.what();
            res.rejected.push_back(msg.str());
            continue;
        }
        res.points.push_back(run_wer_point(g, setup, point_ebn0, stop, sweep_point_seed(seed, k), threads));
    }
    return res;
}

const char *const kCsvHeader = "decoder,penalty,alpha,mu,rho,t_max,epsilon,ebn0_db,sigma,trials,word_errors,wer,"
                               "ci_low,ci_high,mean_iter_correct,mean_iter_all,wall_seconds,seed";

namespace {
std::string full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
} // namespace

void write_csv(std::ostream &out, std::span<const WerPoint> points) {
    out << kCsvHeader << '\n';
    for (const WerPoint &p : points) {
        out << p.decoder << ',' << p.penalty << ',' << full(p.alpha) << ',' << full(p.mu) << ',' << full(p.rho) << ','
            << p.t_max << ',' << full(p.epsilon) << ',' << full(p.ebn0_db) << ',' << full(p.sigma) << ',' << p.trials
            << ',' << p.word_errors << ',' << full(p.wer) << ',' << full(p.ci_low) << ',' << full(p.ci_high) << ','
            << full(p.mean_iterations_correct) << ',' << full(p.mean_iterations_all) << ',' << full(p.wall_seconds)
            << ',' << p.seed << '\n';
    }
}

std::string content_hash(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunMetadata make_metadata(std::string_view code_text) {
    RunMetadata meta;
    meta.code_hash = content_hash(code_text);
    meta.toolkit_version = kVersion;
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    meta.timestamp = buf;
    return meta;
}

std::string to_json(const RunMetadata &meta, std::span<const WerPoint> points) {
    nlohmann::ordered_json doc;
    doc["metadata"] = {{"code_hash", meta.code_hash},
                       {"toolkit_version", meta.toolkit_version},
                       {"timestamp", meta.timestamp}};
    doc["points"] = nlohmann::ordered_json::array();
    for (const WerPoint &p : points) {
        doc["points"].push_back({{"decoder", p.decoder},
                                 {"penalty", p.penalty},
                                 {"alpha", p.alpha},
                                 {"mu", p.mu},
                                 {"rho", p.rho},
                                 {"t_max", p.t_max},
                                 {"epsilon", p.epsilon},
                                 {"ebn0_db", p.ebn0_db},
                                 {"sigma", p.sigma},
                                 {"trials", p.trials},
                                 {"word_errors", p.word_errors},
                                 {"wer", p.wer},
                                 {"ci_low", p.ci_low},
                                 {"ci_high", p.ci_high},
                                 {"mean_iter_correct", p.mean_iterations_correct},
                                 {"mean_iter_all", p.mean_iterations_all},
                                 {"wall_seconds", p.wall_seconds},
                                 {"seed", p.seed}});
    }
    return doc.dump(2) + "\n";
}

} // namespace admmpd
