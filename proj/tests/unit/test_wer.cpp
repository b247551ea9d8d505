#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "admmpd/rng.hpp"
#include "admmpd/wer.hpp"
#include "test_support.hpp"

using namespace admmpd;
using doctest::Approx;
using test_support::hamming;
using test_support::tanner155;

namespace {

// Straight-line re-implementation of the WER loop, sharing only the
// channel and decoder with the library.
std::pair<std::size_t, std::size_t> reference_count(const TannerGraph &g, const DecoderConfig &cfg, double sigma,
                                                    std::size_t trials, std::uint64_t seed) {
    std::size_t errors = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto y = awgn_transmit_zero(g, AwgnParams{sigma}, derive_seed(seed, t));
        const DecodeOutput out = decode(awgn_llr(y, AwgnParams{sigma}), g, cfg);
        bool zero = true;
        for (auto b : out.x_hard) zero = zero && b == 0;
        if (!(zero && out.integral && out.converged)) ++errors;
    }
    return {errors, trials};
}

} // namespace

TEST_CASE("ebn0 to sigma") {
    CHECK(ebn0_to_sigma(0.0, 0.5) == Approx(1.0).epsilon(1e-15));
    CHECK(ebn0_to_sigma(1.6, 0.5) == Approx(0.8318).epsilon(1e-4));
    CHECK(ebn0_to_sigma(3.0, 0.5) < ebn0_to_sigma(2.0, 0.5));
    CHECK_THROWS(ebn0_to_sigma(1.0, 0.0));
    CHECK_THROWS(ebn0_to_sigma(1.0, 1.0));
    CHECK(code_rate(tanner155()) == Approx(64.0 / 155.0));
    CHECK(code_rate(hamming()) == Approx(4.0 / 7.0));
}

TEST_CASE("wilson interval against high-precision values") {
    // (errors, trials) -> (low, high), computed at 50 significant digits
    struct Row {
        std::size_t e, n;
        double lo, hi;
    };
    const Row table[] = {
        {0, 10, 0.0, 0.27753279986288925},
        {1, 10, 0.017876213095072904, 0.4041500267952385},
        {5, 10, 0.23659309051256398, 0.76340690948743602},
        {200, 1000, 0.17637709044319847, 0.2259189646481346},
        {10, 10, 0.72246720013711075, 1.0},
        {37, 12345, 0.0021753177611074017, 0.0041282256992463222},
    };
    for (const Row &r : table) {
        const WilsonInterval ci = wilson_interval(r.e, r.n);
        CHECK(ci.low == Approx(r.lo).epsilon(1e-11));
        CHECK(ci.high == Approx(r.hi).epsilon(1e-11));
    }
}

TEST_CASE("pairwise sum") {
    std::vector<double> v(1000);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
    CHECK(pairwise_sum(v) == 499500.0);
    CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("noiseless channel never errs") {
    const StopRule stop{200, 50};
    const WerPoint p = run_wer_point(tanner155(), DecoderSetup::with_defaults(DecoderKind::LP), 40.0, stop, 1);
    CHECK(p.word_errors == 0);
    CHECK(p.trials == 50);
    CHECK(p.wer == 0.0);
}

TEST_CASE("hopeless channel stops after the first error") {
    const StopRule stop{1, 1000};
    DecoderSetup s = DecoderSetup::with_defaults(DecoderKind::LP);
    s.base.t_max = 50;
    const WerPoint p = run_wer_point(tanner155(), s, -30.0, stop, 1);
    CHECK(p.trials == 1);
    CHECK(p.word_errors == 1);
}

TEST_CASE("harness matches an independent re-implementation on Hamming") {
    const TannerGraph &g = hamming();
    const double ebn0 = 4.0;
    const std::size_t trials = 100000;
    const DecoderSetup setup = DecoderSetup::with_defaults(DecoderKind::LP);
    const WerPoint p = run_wer_point(g, setup, ebn0, StopRule{trials + 1, trials}, 2024);
    const auto [errors, n] = reference_count(g, setup.admm_config(), ebn0_to_sigma(ebn0, code_rate(g)), trials, 2024);
    CHECK(p.trials == n);
    CHECK(p.word_errors == errors);
    CHECK(p.ci_low <= p.wer);
    CHECK(p.wer <= p.ci_high);
}

TEST_CASE("parallel, serial and repeated runs agree") {
    const TannerGraph &g = tanner155();
    for (DecoderKind k : {DecoderKind::LP, DecoderKind::PD_L2, DecoderKind::RLPD}) {
        const DecoderSetup s = DecoderSetup::with_defaults(k);
        const StopRule stop{15, 400};
        const WerPoint a = run_wer_point(g, s, 2.0, stop, 9, 3);
        const WerPoint b = run_wer_point_serial(g, s, 2.0, stop, 9);
        const WerPoint c = run_wer_point(g, s, 2.0, stop, 9, 1);
        CHECK(a.trials == b.trials);
        CHECK(a.word_errors == b.word_errors);
        CHECK(a.mean_iterations_all == b.mean_iterations_all);
        CHECK(a.mean_iterations_correct == b.mean_iterations_correct);
        CHECK(c.trials == b.trials);
        CHECK(c.word_errors == b.word_errors);
    }
}

TEST_CASE("decoder setup") {
    CHECK(parse_decoder_kind("pd-l2") == DecoderKind::PD_L2);
    CHECK_THROWS_AS(parse_decoder_kind("bp"), ConfigError);
    const DecoderSetup l1 = DecoderSetup::with_defaults(DecoderKind::PD_L1);
    CHECK(l1.alpha == 0.6);
    CHECK(l1.admm_config().penalty.kind == PenaltyKind::L1);
    CHECK(DecoderSetup::with_defaults(DecoderKind::PD_L2).alpha == 0.8);
    CHECK(DecoderSetup::with_defaults(DecoderKind::RLPD).admm_config().penalty.kind == PenaltyKind::None);
    DecoderSetup bad = DecoderSetup::with_defaults(DecoderKind::PD_L2);
    bad.alpha = 5.0;
    CHECK_THROWS_AS(run_wer_point(tanner155(), bad, 2.0, StopRule{}, 1), ConfigError);
    CHECK_THROWS_AS(run_wer_point(tanner155(), DecoderSetup{}, 2.0, StopRule{0, 10}, 1), ConfigError);
}

TEST_CASE("sweep reports rejected points and continues") {
    const TannerGraph &g = tanner155();
    const std::vector<double> alphas{0.0, 1.0, 4.6, 2.0};
    const SweepResult r = run_sweep(g, DecoderSetup::with_defaults(DecoderKind::PD_L2), 2.5, SweepAxis::Alpha, alphas,
                                    StopRule{5, 60}, 3);
    CHECK(r.points.size() == 3);
    CHECK(r.rejected.size() == 1);
    CHECK(r.points[2].alpha == 2.0);

    // the alpha = 0 point is the LP point
    const WerPoint lp = run_wer_point(g, DecoderSetup::with_defaults(DecoderKind::LP), 2.5, StopRule{5, 60},
                                      sweep_point_seed(3, 0));
    CHECK(r.points[0].word_errors == lp.word_errors);
    CHECK(r.points[0].trials == lp.trials);
    CHECK(r.points[0].mean_iterations_all == lp.mean_iterations_all);

    const std::vector<double> tmax{10, 0, 2.5};
    const SweepResult rt = run_sweep(g, DecoderSetup{}, 2.5, SweepAxis::TMax, tmax, StopRule{5, 20}, 3);
    CHECK(rt.points.size() == 1);
    CHECK(rt.rejected.size() == 2);
    CHECK(parse_sweep_axis("rho") == SweepAxis::Rho);
    CHECK_THROWS(parse_sweep_axis("sigma"));
}

TEST_CASE("csv and json output") {
    const WerPoint p = run_wer_point(hamming(), DecoderSetup::with_defaults(DecoderKind::PD_L1), 3.0, StopRule{3, 50}, 4);
    std::ostringstream csv;
    const std::vector<WerPoint> pts{p};
    write_csv(csv, pts);
    const std::string text = csv.str();
    CHECK(text.substr(0, text.find('\n')) ==
          "decoder,penalty,alpha,mu,rho,t_max,epsilon,ebn0_db,sigma,trials,word_errors,wer,ci_low,ci_high,"
          "mean_iter_correct,mean_iter_all,wall_seconds,seed");
    CHECK(text.find("pd-l1,l1,0.59999999999999998,3,") != std::string::npos);

    const auto doc = nlohmann::json::parse(to_json(make_metadata("abc"), pts));
    CHECK(doc["metadata"]["code_hash"] == content_hash("abc"));
    CHECK(doc["points"].size() == 1);
    CHECK(doc["points"][0]["trials"] == p.trials);
    CHECK(content_hash("") == "cbf29ce484222325");
}
