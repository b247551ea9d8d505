#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "admmpd/instanton.hpp"
#include "admmpd/rng.hpp"
#include "admmpd/version.hpp"
#include "admmpd/wer.hpp"

using namespace admmpd;
using nlohmann::ordered_json;

namespace {

struct DecoderFlags {
    std::string code;
    std::string decoder = "lp";
    std::optional<double> alpha;
    double mu = kDefaultMu;
    double rho = kDefaultRho;
    std::size_t tmax = kDefaultTMax;
    double eps = kDefaultEpsilon;
    std::size_t rounds = 2;

    void attach(CLI::App *app) {
        app->add_option("--code", code, "parity-check matrix in alist format")->required()->check(CLI::ExistingFile);
        app->add_option("--decoder", decoder, "lp, pd-l1, pd-l2, rlpd or rlpd-inf");
        app->add_option("--alpha", alpha, "penalty or reweighting coefficient");
        app->add_option("--mu", mu, "augmented Lagrangian weight");
        app->add_option("--rho", rho, "over-relaxation parameter");
        app->add_option("--tmax", tmax, "maximum ADMM iterations");
        app->add_option("--eps", eps, "stopping tolerance");
        app->add_option("--rounds", rounds, "reweighting rounds (rlpd)");
    }

    DecoderSetup setup() const {
        DecoderSetup s = DecoderSetup::with_defaults(parse_decoder_kind(decoder));
        if (alpha) s.alpha = *alpha;
        s.base.mu = mu;
        s.base.rho = rho;
        s.base.t_max = tmax;
        s.base.epsilon = eps;
        s.rounds = rounds;
        return s;
    }
};

struct StopFlags {
    std::size_t target_errors = 200;
    std::size_t max_trials = 1000000;
    std::uint64_t seed = 1;
    int threads = 0;

    void attach(CLI::App *app) {
        app->add_option("--target-errors", target_errors, "stop after this many word errors");
        app->add_option("--max-trials", max_trials, "stop after this many words");
        app->add_option("--seed", seed, "base seed");
        add_threads(app, threads);
    }

    static void add_threads(CLI::App *app, int &threads) {
        app->add_option("--threads", threads, "worker threads (0 = runtime default)")
            ->envname("ADMMPD_THREADS")
            ->check(CLI::NonNegativeNumber);
    }
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> parse_list(const std::string &text) {
    std::vector<double> out;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
        if (used == 0 || used != tok.size()) throw std::invalid_argument("not a number: '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty value list");
    return out;
}

std::vector<double> read_llr_file(const std::string &path) {
    std::string text = read_file(path);
    for (char &c : text)
        if (c == ',') c = ' ';
    std::istringstream in(text);
    std::vector<double> out;
    double v;
    while (in >> v) out.push_back(v);
    if (!in.eof()) throw std::invalid_argument("'" + path + "' contains a non-numeric token");
    return out;
}

std::string human(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

void emit_points(const std::string &out_path, const std::string &json_path, const std::string &code_text,
                 const std::vector<WerPoint> &points) {
    std::ostringstream csv;
    write_csv(csv, points);
    if (out_path.empty())
        std::cout << csv.str();
    else
        write_text(out_path, csv.str());
    if (!json_path.empty()) write_text(json_path, to_json(make_metadata(code_text), points));
}

void report_point(const WerPoint &p) {
    std::cerr << p.decoder << " Eb/N0=" << human(p.ebn0_db) << " dB: " << p.word_errors << "/" << p.trials
              << " errors, WER=" << human(p.wer) << " [" << human(p.ci_low) << ", " << human(p.ci_high) << "]\n";
}

ordered_json record_json(const InstantonRecord &r) {
    return {{"sq_norm", r.sq_norm},         {"trial_seed", r.trial_seed}, {"iterations_used", r.iterations_used},
            {"refined", r.refined},         {"noise", r.noise},           {"omega", r.omega}};
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"ADMM LP / penalized decoding toolkit for binary LDPC codes"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    // decode
    DecoderFlags dec_flags;
    std::string llr_path;
    std::optional<double> dec_ebn0;
    std::uint64_t dec_seed = 1;
    auto *dec = app.add_subcommand("decode", "decode one received word, print the result as JSON");
    dec_flags.attach(dec);
    auto *llr_opt = dec->add_option("--llr", llr_path, "file of N LLR values")->check(CLI::ExistingFile);
    auto *ebn0_opt = dec->add_option("--ebn0", dec_ebn0, "simulate the all-zero word at this Eb/N0 (dB)");
    llr_opt->excludes(ebn0_opt);
    dec->add_option("--seed", dec_seed, "noise seed for --ebn0");

    // wer
    DecoderFlags wer_flags;
    StopFlags wer_stop;
    std::string wer_ebn0, wer_out, wer_json;
    auto *wer = app.add_subcommand("wer", "Monte-Carlo word error rate");
    wer_flags.attach(wer);
    wer_stop.attach(wer);
    wer->add_option("--ebn0", wer_ebn0, "comma-separated Eb/N0 values (dB)")->required();
    wer->add_option("--out", wer_out, "CSV output path (default stdout)");
    wer->add_option("--json", wer_json, "also write JSON with run metadata");

    // sweep
    DecoderFlags sw_flags;
    StopFlags sw_stop;
    std::string sw_axis, sw_values, sw_out, sw_json;
    double sw_ebn0 = 2.0;
    auto *sweep = app.add_subcommand("sweep", "WER along one parameter axis");
    sw_flags.attach(sweep);
    sw_stop.attach(sweep);
    sweep->add_option("--axis", sw_axis, "alpha, mu, rho, tmax or ebn0")->required();
    sweep->add_option("--values", sw_values, "comma-separated axis values")->required();
    sweep->add_option("--ebn0", sw_ebn0, "Eb/N0 (dB) for axes other than ebn0");
    sweep->add_option("--out", sw_out, "CSV output path (default stdout)");
    sweep->add_option("--json", sw_json, "also write JSON with run metadata");

    // instanton
    DecoderFlags in_flags;
    std::size_t in_trials = 100;
    double in_sigma = 0.5;
    std::uint64_t in_seed = 1;
    std::string in_out;
    bool in_refine = false;
    int in_threads = 0;
    std::size_t in_pd_iters = IsaPdParams{}.max_iters;
    std::size_t in_r_iters = IsaRParams{}.iters;
    std::size_t in_support = 5;
    auto *inst = app.add_subcommand("instanton", "instanton search campaign");
    in_flags.attach(inst);
    inst->add_option("--trials", in_trials, "number of random initial noise vectors")->check(CLI::PositiveNumber);
    inst->add_option("--sigma", in_sigma, "channel sigma used to form LLRs");
    inst->add_option("--seed", in_seed, "base seed");
    inst->add_option("--out", in_out, "JSON output path (default stdout)");
    inst->add_flag("--refine", in_refine, "run the gradient-free refinement after each search");
    inst->add_option("--search-iters", in_pd_iters, "maximum iterations of the confusion-noise search");
    inst->add_option("--refine-iters", in_r_iters, "iterations of the refinement");
    inst->add_option("--support-size", in_support, "size of the reported trapping-set support");
    StopFlags::add_threads(inst, in_threads);

    // project
    std::size_t pr_d = 0;
    std::string pr_vector;
    auto *proj = app.add_subcommand("project", "project a vector onto the parity polytope");
    proj->add_option("--d", pr_d, "dimension")->required();
    proj->add_option("--vector", pr_vector, "comma-separated coordinates")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*dec) {
            const std::string code_text = read_file(dec_flags.code);
            const TannerGraph g = parse_alist(code_text);
            const DecoderSetup setup = dec_flags.setup();
            validate(setup, g);
            std::vector<double> gamma;
            if (!llr_path.empty()) {
                gamma = read_llr_file(llr_path);
            } else if (dec_ebn0) {
                const AwgnParams ch{ebn0_to_sigma(*dec_ebn0, code_rate(g))};
                gamma = awgn_llr(awgn_transmit_zero(g, ch, dec_seed), ch);
            } else {
                throw std::invalid_argument("decode needs --llr or --ebn0");
            }
            if (gamma.size() != g.n())
                throw DimensionError("LLR count " + std::to_string(gamma.size()) + " != N = " + std::to_string(g.n()));
            const DecodeOutput out = run_decoder(setup, g, gamma);
            ordered_json j = {{"x_soft", out.x_soft},     {"x_hard", out.x_hard},
                              {"iterations", out.iterations}, {"converged", out.converged},
                              {"integral", out.integral}, {"valid_codeword", out.valid_codeword}};
            std::cout << j.dump() << "\n";
        } else if (*wer) {
            const std::string code_text = read_file(wer_flags.code);
            const TannerGraph g = parse_alist(code_text);
            const DecoderSetup setup = wer_flags.setup();
            validate(setup, g);
            const std::vector<double> points = parse_list(wer_ebn0);
            std::vector<WerPoint> results;
            for (std::size_t k = 0; k < points.size(); ++k) {
                results.push_back(run_wer_point(g, setup, points[k], StopRule{wer_stop.target_errors, wer_stop.max_trials},
                                                sweep_point_seed(wer_stop.seed, k), wer_stop.threads));
                report_point(results.back());
            }
            emit_points(wer_out, wer_json, code_text, results);
        } else if (*sweep) {
            const std::string code_text = read_file(sw_flags.code);
            const TannerGraph g = parse_alist(code_text);
            const SweepAxis axis = parse_sweep_axis(sw_axis);
            const std::vector<double> values = parse_list(sw_values);
            const DecoderSetup base = sw_flags.setup();
            const SweepResult r = run_sweep(g, base, sw_ebn0, axis, values,
                                            StopRule{sw_stop.target_errors, sw_stop.max_trials}, sw_stop.seed,
                                            sw_stop.threads);
            for (const std::string &msg : r.rejected) std::cerr << "rejected " << msg << "\n";
            for (const WerPoint &p : r.points) report_point(p);
            emit_points(sw_out, sw_json, code_text, r.points);
        } else if (*inst) {
            const std::string code_text = read_file(in_flags.code);
            const TannerGraph g = parse_alist(code_text);
            const DecoderSetup setup = in_flags.setup();
            if (setup.kind == DecoderKind::RLPD || setup.kind == DecoderKind::RLPD_INF)
                throw ConfigError("instanton search supports lp, pd-l1 and pd-l2");
            const DecoderConfig cfg = setup.admm_config();
            validate(cfg, g);
            if (!(in_sigma > 0.0)) throw ConfigError("sigma must be > 0");
            CampaignParams params;
            params.k_trials = in_trials;
            params.seed = in_seed;
            params.refine = in_refine;
            params.isa_pd.sigma = in_sigma;
            params.isa_pd.max_iters = in_pd_iters;
            params.isa_r.iters = in_r_iters;
            const CampaignResult res = instanton_campaign(g, cfg, params, in_threads);

            ordered_json doc;
            const RunMetadata meta = make_metadata(code_text);
            doc["metadata"] = {{"code_hash", meta.code_hash},
                               {"toolkit_version", meta.toolkit_version},
                               {"timestamp", meta.timestamp}};
            doc["config"] = {{"decoder", to_string(setup.kind)}, {"penalty", to_string(cfg.penalty.kind)},
                             {"alpha", setup.reported_alpha()},  {"mu", cfg.mu},
                             {"rho", cfg.rho},                   {"t_max", cfg.t_max},
                             {"epsilon", cfg.epsilon},           {"sigma", in_sigma},
                             {"trials", in_trials},              {"seed", in_seed},
                             {"refine", in_refine}};
            doc["summary"] = {{"records", res.summary.records},
                              {"min_sq_norm", res.summary.min_sq_norm},
                              {"quantile_rank", res.summary.quantile_rank},
                              {"quantile_sq_norm", res.summary.quantile_sq_norm}};
            if (!res.records.empty()) {
                const auto support = top_magnitude_support(res.records.front().noise, in_support);
                const auto [a, b] = trapping_set_signature(g, support);
                doc["summary"]["min_support"] = support;
                doc["summary"]["min_support_signature"] = {a, b};
            }
            doc["records"] = ordered_json::array();
            for (const InstantonRecord &r : res.records) doc["records"].push_back(record_json(r));
            const std::string text = doc.dump(2) + "\n";
            if (in_out.empty())
                std::cout << text;
            else
                write_text(in_out, text);
            std::cerr << res.summary.records << "/" << in_trials << " trials produced an instanton; min |n|^2 = "
                      << human(res.summary.min_sq_norm) << ", rank-" << res.summary.quantile_rank
                      << " |n|^2 = " << human(res.summary.quantile_sq_norm) << "\n";
        } else if (*proj) {
            const std::vector<double> v = parse_list(pr_vector);
            if (v.size() != pr_d)
                throw DimensionError("--vector has " + std::to_string(v.size()) + " entries, --d is " +
                                     std::to_string(pr_d));
            const std::vector<double> z = project_parity_polytope(v);
            for (std::size_t i = 0; i < z.size(); ++i) std::cout << (i ? "," : "") << human(z[i]);
            std::cout << "\n";
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
