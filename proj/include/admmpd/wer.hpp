#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "admmpd/admm.hpp"
#include "admmpd/reweighted.hpp"

namespace admmpd {

enum class DecoderKind { LP, PD_L1, PD_L2, RLPD, RLPD_INF };

const char *to_string(DecoderKind kind);
/// Parses the CLI spelling: lp, pd-l1, pd-l2, rlpd, rlpd-inf.
DecoderKind parse_decoder_kind(const std::string &name);

/// A decoder choice with its parameters. `alpha` is the penalty coefficient
/// for PD_L1/PD_L2 and the reweighting coefficient for RLPD; it is ignored
/// for LP and RLPD_INF. `base.penalty` is overwritten from kind and alpha.
struct DecoderSetup {
    DecoderKind kind = DecoderKind::LP;
    DecoderConfig base;
    double alpha = 0.0;
    std::size_t rounds = 2;

    /// Setup with the recommended alpha for the kind (0.6 for l1 and rlpd, 0.8 for l2).
    static DecoderSetup with_defaults(DecoderKind kind);

    DecoderConfig admm_config() const;
    PenaltySpec penalty() const;
    /// Coefficient as reported in results (0 where it has no meaning).
    double reported_alpha() const;
};

void validate(const DecoderSetup &setup, const TannerGraph &g);

struct TrialOutcome {
    bool success = false;
    std::size_t iterations = 0;
};

/// Decodes one received LLR vector under the all-zero assumption.
TrialOutcome decode_trial(const DecoderSetup &setup, const TannerGraph &g, std::span<const double> gamma);
DecodeOutput run_decoder(const DecoderSetup &setup, const TannerGraph &g, std::span<const double> gamma);

/// sigma = sqrt(1 / (2 rate 10^(EbN0/10))) for unit-energy BPSK.
double ebn0_to_sigma(double ebn0_db, double rate);
/// k / N with k the GF(2) dimension of the code.
double code_rate(const TannerGraph &g);

struct WilsonInterval {
    double low = 0.0;
    double high = 0.0;
};
inline constexpr double kZ95 = 1.959963984540054;
WilsonInterval wilson_interval(std::size_t errors, std::size_t trials, double z = kZ95);

/// Pairwise (cascade) sum in index order.
double pairwise_sum(std::span<const double> v);

struct StopRule {
    std::size_t target_errors = 200;
    std::size_t max_trials = 1000000;
};

struct WerPoint {
    std::string decoder;
    std::string penalty;
    double alpha = 0.0;
    double mu = 0.0;
    double rho = 0.0;
    std::size_t t_max = 0;
    double epsilon = 0.0;
    double ebn0_db = 0.0;
    double sigma = 0.0;
    std::size_t trials = 0;
    std::size_t word_errors = 0;
    double wer = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double mean_iterations_correct = 0.0;
    double mean_iterations_all = 0.0;
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;
};

/// Monte-Carlo WER at one Eb/N0. Trial t sends the all-zero word with
/// noise seeded by derive_seed(seed, t). Trials run in parallel batches
/// (OpenMP) but are tallied in index order, so the point stops at exactly
/// the same trial as the serial reference for any thread count.
WerPoint run_wer_point(const TannerGraph &g, const DecoderSetup &setup, double ebn0_db, const StopRule &stop,
                       std::uint64_t seed, int threads = 0);
/// Straight-line single-threaded reference of run_wer_point.
WerPoint run_wer_point_serial(const TannerGraph &g, const DecoderSetup &setup, double ebn0_db, const StopRule &stop,
                              std::uint64_t seed);

enum class SweepAxis { Alpha, Mu, TMax, Rho, EbN0 };
SweepAxis parse_sweep_axis(const std::string &name);
const char *to_string(SweepAxis axis);

struct SweepResult {
    std::vector<WerPoint> points;
    std::vector<std::string> rejected; ///< one message per skipped value
};

/// Seed of sweep point `index`.
std::uint64_t sweep_point_seed(std::uint64_t seed, std::size_t index);

/// One WER point per value along `axis`; values that fail config
/// validation are reported in `rejected` and skipped.
SweepResult run_sweep(const TannerGraph &g, const DecoderSetup &base, double ebn0_db, SweepAxis axis,
                      std::span<const double> values, const StopRule &stop, std::uint64_t seed, int threads = 0);

extern const char *const kCsvHeader;
void write_csv(std::ostream &out, std::span<const WerPoint> points);

struct RunMetadata {
    std::string code_hash;
    std::string toolkit_version;
    std::string timestamp;
};

/// FNV-1a 64 of the code file contents, as 16 hex digits.
std::string content_hash(std::string_view text);
RunMetadata make_metadata(std::string_view code_text);
std::string to_json(const RunMetadata &meta, std::span<const WerPoint> points);

} // namespace admmpd
