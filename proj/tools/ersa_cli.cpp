#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ersa/critical.hpp"
#include "ersa/fourier.hpp"
#include "ersa/pivotal.hpp"
#include "ersa/torus.hpp"
#include "ersa/verify.hpp"

namespace {

std::string g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct Out {
    std::ofstream file;
    bool to_file = false;

    explicit Out(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw CLI::ValidationError("--out", "cannot open " + path);
            to_file = true;
        }
    }
    std::ostream& os() { return to_file ? static_cast<std::ostream&>(file) : std::cout; }
};

void emit_config(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& kv) {
    for (const auto& [k, v] : kv) os << "# " << k << "=" << v << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"enhanced RSA percolation laboratory"};
    app.require_subcommand(1);
    app.fallthrough();  // global --seed/--workers/--out after the subcommand

    uint64_t seed = 12345;
    int workers = 1;
    app.add_option("--seed", seed, "RNG seed")->envname("ERSA_SEED")->capture_default_str();
    app.add_option("--workers", workers, "worker threads")->capture_default_str();

    std::string out_path;
    app.add_option("--out", out_path, "output file (default stdout)");

    double lambda = 1.0, p = 0.5, delta = 0.0, rho = 1.0;
    int n = 8;
    long long trials = 10000;

    auto add_params = [&](CLI::App* sub, bool with_rho = true) {
        sub->add_option("--lambda", lambda, "even-site rate")->capture_default_str();
        sub->add_option("--p", p, "enhancement probability")->capture_default_str();
        sub->add_option("--delta", delta, "odd-site delay")->capture_default_str();
        sub->add_option("--n", n, "half-height scale")->capture_default_str();
        sub->add_option("--trials", trials, "Monte Carlo trials")->capture_default_str();
        if (with_rho) sub->add_option("--rho", rho, "aspect ratio")->capture_default_str();
    };

    auto* sh = app.add_subcommand("estimate-h", "crossing probability estimate");
    add_params(sh);
    int buffer = -1;
    sh->add_option("--buffer", buffer, "window buffer (-1 = default)")->capture_default_str();

    auto* sphi = app.add_subcommand("estimate-phi", "pivotal probability estimate");
    add_params(sphi);
    int site_x = 0, site_y = 0;
    bool site_diamond = false;
    sphi->add_option("--site-x", site_x, "site x")->required();
    sphi->add_option("--site-y", site_y, "site y")->required();
    sphi->add_flag("--diamond", site_diamond, "site is a diamond");
    sphi->add_option("--buffer", buffer, "window buffer (-1 = default)");

    auto* sr = app.add_subcommand("russo", "derivative-identity residuals");
    add_params(sr);
    double h_step = 0.05;
    sr->add_option("--step", h_step, "finite-difference step")->capture_default_str();

    auto* sd = app.add_subcommand("duality", "square duality residual");
    add_params(sd, false);
    sd->add_option("--buffer", buffer, "window buffer (-1 = default)");

    auto* sb = app.add_subcommand("bisect", "pseudo-critical rate at fixed p");
    add_params(sb, false);
    double target = 0.5, tol = 0.1, lambda_lo = 0.2, lambda_hi = 8.0;
    sb->add_option("--target", target, "crossing target")->capture_default_str();
    sb->add_option("--tol", tol, "bracket width")->capture_default_str();
    sb->add_option("--lambda-lo", lambda_lo, "bracket low")->capture_default_str();
    sb->add_option("--lambda-hi", lambda_hi, "bracket high")->capture_default_str();

    auto* st = app.add_subcommand("trace-surface", "lambda_c over a p grid");
    std::vector<double> grid{0.3, 0.5, 0.7};
    st->add_option("--grid", grid, "p values")->capture_default_str();
    st->add_option("--n", n, "half-height scale")->capture_default_str();
    st->add_option("--trials", trials, "trials per evaluation")->capture_default_str();
    st->add_option("--tol", tol, "bracket width")->capture_default_str();
    st->add_option("--lambda-lo", lambda_lo, "bracket low")->capture_default_str();
    st->add_option("--lambda-hi", lambda_hi, "bracket high")->capture_default_str();

    auto* sg = app.add_subcommand("torus-gap", "torus versus plane crossing gap");
    add_params(sg, false);
    int rect_w = 4, rect_h = 4;
    sg->add_option("--rect-w", rect_w, "rectangle width")->capture_default_str();
    sg->add_option("--rect-h", rect_h, "rectangle height")->capture_default_str();

    auto* sc = app.add_subcommand("crude-event", "discretized torus crude-event frequency");
    double lambda0 = 5.0, lambda1 = 1.0, p_tilde = 0.5, block = 0.0;
    long long samples = 100;
    sc->add_option("--n", n, "torus scale (side 20n)")->capture_default_str();
    sc->add_option("--lambda0", lambda0, "upper even rate")->capture_default_str();
    sc->add_option("--lambda1", lambda1, "lower odd rate")->capture_default_str();
    sc->add_option("--p-tilde", p_tilde, "diamond probability")->capture_default_str();
    sc->add_option("--block", block, "block length (0 = 1/sqrt(log n))")->capture_default_str();
    sc->add_option("--samples", samples, "field samples")->capture_default_str();

    auto* sf = app.add_subcommand("fourier", "truth-table influences and spectrum");
    std::string table_path;
    std::vector<double> pv_in;
    sf->add_option("--table", table_path, "table file: header 'k n', one 0/1 per line")
        ->required();
    sf->add_option("--pv", pv_in, "probability vector (default uniform)");

    auto* sv = app.add_subcommand("verify", "run a property suite");
    std::string suite = "all";
    bool fast = false;
    sv->add_option("--suite", suite, "suite name or 'all'")->capture_default_str();
    sv->add_flag("--fast", fast, "reduced trial budgets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Out out(out_path);
    std::ostream& os = out.os();
    ersa::Params params{lambda, p, delta};
    auto base_config = [&](std::vector<std::pair<std::string, std::string>> extra) {
        std::vector<std::pair<std::string, std::string>> kv{
            {"seed", std::to_string(seed)}, {"workers", std::to_string(workers)}};
        for (auto& e : extra) kv.push_back(std::move(e));
        return kv;
    };

    if (sh->parsed()) {
        emit_config(os, base_config({{"n", std::to_string(n)},
                                     {"rho", g12(rho)},
                                     {"lambda", g12(lambda)},
                                     {"p", g12(p)},
                                     {"delta", g12(delta)},
                                     {"trials", std::to_string(trials)},
                                     {"buffer", std::to_string(buffer)}}));
        ersa::Estimate e = ersa::estimate_h(n, rho, params, trials, seed, workers, buffer);
        os << "value,ci_lo,ci_hi,successes,trials,dense_failures\n";
        os << g12(e.value) << "," << g12(e.ci_lo) << "," << g12(e.ci_hi) << "," << e.successes
           << "," << e.trials << "," << e.dense_failures << "\n";
        return 0;
    }
    if (sphi->parsed()) {
        ersa::Site site = site_diamond ? ersa::diamond(site_x, site_y)
                                       : ersa::octagon(site_x, site_y);
        ersa::PivotalQuery q{site, ersa::classify(site),
                             {ersa::crossing_rect(n, rho), ersa::CrossingSpec::Horizontal, true}};
        emit_config(os, base_config({{"n", std::to_string(n)},
                                     {"rho", g12(rho)},
                                     {"lambda", g12(lambda)},
                                     {"p", g12(p)},
                                     {"delta", g12(delta)},
                                     {"site", std::to_string(site_x) + ":" +
                                                  std::to_string(site_y) +
                                                  (site_diamond ? ":diamond" : ":octagon")},
                                     {"trials", std::to_string(trials)}}));
        ersa::Estimate e = ersa::estimate_phi(q, params, trials, seed, workers, buffer);
        os << "value,ci_lo,ci_hi,successes,trials,dense_failures\n";
        os << g12(e.value) << "," << g12(e.ci_lo) << "," << g12(e.ci_hi) << "," << e.successes
           << "," << e.trials << "," << e.dense_failures << "\n";
        return 0;
    }
    if (sr->parsed()) {
        emit_config(os, base_config({{"n", std::to_string(n)},
                                     {"rho", g12(rho)},
                                     {"lambda", g12(lambda)},
                                     {"p", g12(p)},
                                     {"delta", g12(delta)},
                                     {"step", g12(h_step)},
                                     {"trials", std::to_string(trials)}}));
        ersa::RussoReport r =
            ersa::russo_residuals(n, rho, params, h_step, trials, seed, workers);
        os << "quantity,finite_difference,fd_sigma,pivotal_sum,residual\n";
        os << "p," << g12(r.fd_p) << "," << g12(r.fd_p_sigma) << ","
           << g12(r.sum_phi_diamond) << "," << g12(r.r_p) << "\n";
        os << "lambda," << g12(r.fd_lambda) << "," << g12(r.fd_lambda_sigma) << ","
           << g12(r.sum_phi_even_over_lambda) << "," << g12(r.r_lambda) << "\n";
        os << "delta," << g12(r.fd_delta) << "," << g12(r.fd_delta_sigma) << ","
           << g12(-r.sum_phi_odd_scaled) << "," << g12(r.r_delta) << "\n";
        if (!r.lambda_checked_at_delta0)
            os << "# note: lambda identity is only verified at delta=0\n";
        return 0;
    }
    if (sd->parsed()) {
        emit_config(os, base_config({{"n", std::to_string(n)},
                                     {"lambda", g12(lambda)},
                                     {"p", g12(p)},
                                     {"trials", std::to_string(trials)}}));
        ersa::DualityReport r = ersa::duality_residual(n, params, trials, seed, workers, buffer);
        os << "residual,sigma,h_primal,h_dual\n";
        os << g12(r.residual) << "," << g12(r.sigma) << "," << g12(r.side_a.value) << ","
           << g12(r.side_b.value) << "\n";
        return 0;
    }
    if (sb->parsed() || st->parsed()) {
        os << "p,n,lambda_lo,lambda_hi,h_at_mid,ci_lo,ci_hi,trials,seed\n";
        auto emit_row = [&](const ersa::BisectResult& r, bool ok) {
            os << g12(r.p) << "," << r.n << "," << g12(r.lambda_lo) << "," << g12(r.lambda_hi)
               << "," << (ok ? g12(r.h_at_mid.value) : "nan") << ","
               << (ok ? g12(r.h_at_mid.ci_lo) : "nan") << ","
               << (ok ? g12(r.h_at_mid.ci_hi) : "nan") << "," << r.trials_final << "," << seed
               << "\n";
        };
        if (sb->parsed()) {
            ersa::BisectResult r = ersa::bisect_lambda_c(p, n, trials, target, tol, seed,
                                                         lambda_lo, lambda_hi, delta, workers);
            emit_row(r, true);
        } else {
            auto rows = ersa::trace_surface(grid, n, trials, seed, lambda_lo, lambda_hi, tol,
                                            workers);
            for (const auto& row : rows) emit_row(row.result, row.ok);
        }
        return 0;
    }
    if (sg->parsed()) {
        int side = 2 * n;
        int x0 = (side - rect_w) / 2, y0 = (side - rect_h) / 2;
        ersa::Rect rect{x0, x0 + rect_w - 1, y0, y0 + rect_h - 1};
        emit_config(os, base_config({{"n", std::to_string(n)},
                                     {"rect", std::to_string(rect_w) + "x" +
                                                  std::to_string(rect_h)},
                                     {"lambda", g12(lambda)},
                                     {"p", g12(p)},
                                     {"trials", std::to_string(trials)}}));
        ersa::TorusGapReport r = ersa::torus_plane_gap(n, rect, params, trials, seed, workers);
        os << "gap,sigma,torus,plane\n";
        os << g12(r.gap) << "," << g12(r.sigma) << "," << g12(r.torus.value) << ","
           << g12(r.plane.value) << "\n";
        return 0;
    }
    if (sc->parsed()) {
        double d = block > 0 ? block : ersa::default_block_length(n);
        emit_config(os, base_config({{"n", std::to_string(n)},
                                     {"lambda0", g12(lambda0)},
                                     {"lambda1", g12(lambda1)},
                                     {"p_tilde", g12(p_tilde)},
                                     {"block", g12(d)},
                                     {"samples", std::to_string(samples)}}));
        long long crude = 0, undelayed = 0;
        for (long long s = 0; s < samples; ++s) {
            ersa::XField xf = ersa::sample_x_field(n, lambda0, p_tilde, lambda1, d, seed,
                                                   static_cast<uint64_t>(s));
            if (ersa::crude_event(xf)) ++crude;
            if (ersa::witness_f_event(xf)) ++undelayed;
        }
        os << "crude_frequency,undelayed_frequency,samples\n";
        os << g12(static_cast<double>(crude) / samples) << ","
           << g12(static_cast<double>(undelayed) / samples) << "," << samples << "\n";
        return 0;
    }
    if (sf->parsed()) {
        std::ifstream in(table_path);
        if (!in) {
            std::cerr << "cannot open " << table_path << "\n";
            return 2;
        }
        ersa::BooleanTable f;
        if (!(in >> f.k >> f.n)) {
            std::cerr << "bad header, expected 'k n'\n";
            return 2;
        }
        int v;
        while (in >> v) f.table.push_back(static_cast<uint8_t>(v));
        f.validate();
        ersa::ProbVector pv = pv_in;
        if (pv.empty()) pv.assign(f.k + 1, 1.0 / (f.k + 1));
        emit_config(os, base_config({{"k", std::to_string(f.k)},
                                     {"n", std::to_string(f.n)},
                                     {"table", table_path}}));
        os << "coordinate,influence\n";
        for (int j = 0; j < f.n; ++j)
            os << j << "," << g12(ersa::influence(f, pv, j)) << "\n";
        os << "# total_influence=" << g12(ersa::total_influence(f, pv)) << "\n";
        if (f.k == 1) {
            std::vector<double> h(f.table.begin(), f.table.end());
            ersa::SpectralVector s = ersa::wht(h);
            os << "subset_mask,coefficient\n";
            for (size_t mask = 0; mask < s.coeff.size(); ++mask)
                os << mask << "," << g12(s.coeff[mask]) << "\n";
        }
        return 0;
    }
    if (sv->parsed()) {
        emit_config(os, base_config({{"suite", suite}, {"fast", fast ? "1" : "0"}}));
        auto results = ersa::run_suite(suite, seed, fast);
        for (const auto& r : results)
            os << (r.passed ? "PASS" : "FAIL") << " " << r.name << ": " << r.detail << "\n";
        return ersa::all_passed(results) ? 0 : 1;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
