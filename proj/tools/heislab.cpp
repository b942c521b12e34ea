// Command-line front end: runs the verification suites and emits
// machine-readable reports (NDJSON or CSV).  Identical config + seed gives
// byte-identical output; wall time goes to stderr only.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "heis/basis.hpp"
#include "heis/calibration.hpp"
#include "heis/extremal.hpp"
#include "heis/key_identity.hpp"
#include "heis/quadrature.hpp"
#include "heis/rng.hpp"
#include "heis/special_fn.hpp"
#include "heis/zygmund.hpp"

using heis::cdouble;
using json = nlohmann::ordered_json;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;
constexpr int kSchemaVersion = 1;

// exit code taxonomy, stable for CI
enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kNonConvergence = 3 };

struct Options {
    std::string format = "json";
    std::string out;
    std::string config_path;
    int threads = 1;
    double tol = 1e-6;
    int grid = 512;
    std::uint64_t seed = 20240101;

    int lambda = 3;
    int ell = 0;
    int ell_max = 500;
    int trials = 10;
    long long n_max = 100;
    double mu_max = 30.0;
    int lambda_min = 128;
    int lambda_max = 16384;
    int restarts = 6;
    int max_iters = 2000;
    bool general_window = false;
    int basis_lambda_max = 3;
    int basis_ell_max = 3;
    int basis_omega_max = 2;
};

// Collects rows and writes them at the end in the selected format, so CSV can
// take the column union.  Field order is insertion order (ordered_json).
class Report {
public:
    Report(std::string command, json config) : command_(std::move(command)), config_(std::move(config)) {}

    void row(json r) { rows_.push_back(std::move(r)); }

    void write(std::ostream& os, const std::string& format, bool pass) const {
        json header;
        header["record"] = "header";
        header["schema_version"] = kSchemaVersion;
        header["command"] = command_;
        header["config"] = config_;
        json summary;
        summary["record"] = "summary";
        summary["pass"] = pass;

        if (format == "json") {
            os << header.dump() << "\n";
            for (const auto& r : rows_) {
                json out;
                out["record"] = "row";
                for (auto it = r.begin(); it != r.end(); ++it) out[it.key()] = it.value();
                os << out.dump() << "\n";
            }
            os << summary.dump() << "\n";
            return;
        }
        // headered CSV over the column union; header/summary become rows with
        // the config serialised into one field
        std::vector<std::string> cols{"record"};
        auto add_cols = [&cols](const json& r) {
            for (auto it = r.begin(); it != r.end(); ++it) {
                if (std::find(cols.begin(), cols.end(), it.key()) == cols.end())
                    cols.push_back(it.key());
            }
        };
        for (const auto& r : rows_) add_cols(r);
        if (std::find(cols.begin(), cols.end(), "config") == cols.end()) cols.push_back("config");
        if (std::find(cols.begin(), cols.end(), "pass") == cols.end()) cols.push_back("pass");

        auto cell = [](const json& v) -> std::string {
            std::string s = v.is_string() ? v.get<std::string>() : v.dump();
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string quoted = "\"";
            for (char c : s) {
                if (c == '"') quoted += '"';
                quoted += c;
            }
            quoted += '"';
            return quoted;
        };

        for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
        os << "\n";
        os << "header";
        for (std::size_t i = 1; i < cols.size(); ++i) {
            os << ",";
            if (cols[i] == "config") os << cell(json(config_.dump()));
            if (cols[i] == "schema_version") os << kSchemaVersion;
        }
        os << "\n";
        for (const auto& r : rows_) {
            os << "row";
            for (std::size_t i = 1; i < cols.size(); ++i) {
                os << ",";
                if (r.contains(cols[i])) os << cell(r.at(cols[i]));
            }
            os << "\n";
        }
        os << "summary";
        for (std::size_t i = 1; i < cols.size(); ++i) {
            os << ",";
            if (cols[i] == "pass") os << (pass ? "true" : "false");
        }
        os << "\n";
    }

private:
    std::string command_;
    json config_;
    std::vector<json> rows_;
};

int finish(const Report& report, const Options& opt, bool pass, bool converged = true) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!opt.out.empty()) {
        file.open(opt.out, std::ios::binary);
        if (!file) {
            std::cerr << "cannot open output file: " << opt.out << "\n";
            return kUsage;
        }
        os = &file;
    }
    report.write(*os, opt.format, pass);
    if (!converged) return kNonConvergence;
    return pass ? kPass : kFail;
}

json base_config(const Options& opt) {
    json c;
    c["tol"] = opt.tol;
    c["grid"] = opt.grid;
    c["seed"] = opt.seed;
    c["threads"] = opt.threads;
    c["format"] = opt.format;
    return c;
}

heis::CoeffVector random_coeffs(int lambda, heis::Rng& rng) {
    heis::CoeffVector v;
    v.lambda = lambda;
    v.gamma.resize(std::abs(lambda));
    for (auto& z : v.gamma) z = rng.cnormal();
    return v;
}

// ---------------------------------------------------------------- special-fn

int cmd_special_fn(const Options& opt) {
    json config = base_config(opt);
    config["ell_max"] = opt.ell_max;
    Report report("special-fn", config);
    bool pass = true;

    auto check = [&](const std::string& name, double value, double tol, bool ok) {
        json r;
        r["check"] = name;
        r["value"] = value;
        r["tol"] = tol;
        r["pass"] = ok;
        report.row(std::move(r));
        pass = pass && ok;
    };

    {
        double worst = 0.0;
        for (int ell : {0, 1, 5, 20, 50, 100, 200}) {
            for (int i = 0; i <= 160; ++i) {
                const double u = -20.0 + 0.25 * i;
                const double res = std::abs(-heis::hermite_fn_d2(ell, u) +
                                            u * u * heis::hermite_fn(ell, u) -
                                            (2.0 * ell + 1.0) * heis::hermite_fn(ell, u)) /
                                   (2.0 * ell + 1.0);
                worst = std::max(worst, res);
            }
        }
        check("hermite_oscillator_residual", worst, 1e-6, worst < 1e-6);
    }
    {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double v =
                std::exp(std::log(1e-3) + (std::log(1e4) - std::log(1e-3)) * (i + 0.5) / 200);
            const auto la = heis::laguerre_column(opt.ell_max, v);
            for (const double x : la) worst = std::max(worst, std::abs(x));
        }
        check("laguerre_sup_bound", worst, 1.0 + 1e-12, worst <= 1.0 + 1e-12);
    }
    {
        const double fitted = heis::laguerre_fitted_constant(opt.ell_max);
        json r;
        r["check"] = "laguerre_decay_constant";
        r["fitted"] = fitted;
        r["rigorous"] = heis::laguerre_tail_constant();
        r["tol"] = heis::laguerre_tail_constant();
        r["pass"] = fitted <= heis::laguerre_tail_constant();
        pass = pass && fitted <= heis::laguerre_tail_constant();
        report.row(std::move(r));
    }
    {
        const int n = 3000;
        double worst = 0.0;
        std::vector<std::vector<double>> cols(n + 1);
        for (int i = 0; i <= n; ++i) cols[i] = heis::hermite_column(15, -15.0 + 30.0 * i / n);
        for (int l1 = 0; l1 <= 15; ++l1) {
            for (int l2 = l1; l2 <= 15; ++l2) {
                double acc = 0.0;
                for (int i = 0; i <= n; ++i) {
                    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
                    acc += w * cols[i][l1] * cols[i][l2];
                }
                acc *= 30.0 / n;
                worst = std::max(worst, std::abs(acc - (l1 == l2 ? 1.0 : 0.0)));
            }
        }
        check("hermite_gram_identity", worst, 1e-8, worst < 1e-8);
    }
    {
        double worst = 0.0;
        heis::Rng rng(opt.seed);
        worst = std::max(worst, heis::hermite_laguerre_residual(0, 0.0, 0.0, 400));
        worst = std::max(worst, heis::hermite_laguerre_residual(3, 1.0, 0.5, 400));
        worst = std::max(worst, heis::hermite_laguerre_residual(1, 0.0, 2.0, 400));
        for (int t = 0; t < 10; ++t) {
            const int ell = static_cast<int>(rng.below(9));
            worst = std::max(worst, heis::hermite_laguerre_residual(ell, rng.uniform(-2, 2),
                                                                    rng.uniform(-2, 2), 400));
        }
        check("hermite_laguerre_connection", worst, 1e-8, worst < 1e-8);
    }
    return finish(report, opt, pass);
}

// -------------------------------------------------------------- key-identity

int cmd_key_identity(const Options& opt) {
    json config = base_config(opt);
    config["lambda"] = opt.lambda;
    config["ell"] = opt.ell;
    config["trials"] = opt.trials;
    config["general_window"] = opt.general_window;
    Report report("key-identity", config);
    bool pass = true;
    bool converged = true;

    std::unique_ptr<heis::LineWindow> window;
    std::unique_ptr<heis::LatticeWeight> weight;
    if (opt.general_window) {
        window = std::make_unique<heis::LineWindow>();
        const int lam = opt.lambda;
        const double inv = 1.0 / std::sqrt(2.0);
        window->eval = [lam, inv](double u) {
            return inv * (heis::hermite_rescaled(2, lam, u) + heis::hermite_rescaled(5, lam, u));
        };
        window->radius = heis::hermite_rescaled_radius(5, lam, 1e-14);
        weight = std::make_unique<heis::LatticeWeight>(heis::window_weight(lam, *window, 1024, 5));
    }

    heis::Rng rng = heis::Rng::derive(opt.seed, static_cast<std::uint64_t>(opt.lambda) * 64 + opt.ell);
    for (int t = 0; t < opt.trials; ++t) {
        const heis::CoeffVector gamma = random_coeffs(opt.lambda, rng);
        const heis::IdentityResult res =
            opt.general_window
                ? heis::identity_residual_window(gamma, *window, *weight, opt.tol, opt.grid, opt.threads)
                : heis::identity_residual(gamma, opt.ell, opt.tol, opt.grid, opt.threads);
        json r;
        r["trial"] = t;
        r["lambda"] = opt.lambda;
        r["ell"] = opt.ell;
        r["lhs4"] = res.lhs4;
        r["rhs"] = res.rhs;
        r["residual"] = res.residual;
        r["tol"] = opt.tol;
        r["resolved"] = res.resolved;
        r["pass"] = res.residual < opt.tol;
        pass = pass && res.residual < opt.tol;
        converged = converged && res.resolved;
        report.row(std::move(r));
    }
    return finish(report, opt, pass, converged);
}

// ------------------------------------------------------------------- zygmund

int cmd_zygmund(const Options& opt) {
    json config = base_config(opt);
    config["n_max"] = opt.n_max;
    config["trials"] = opt.trials;
    Report report("zygmund", config);

    const heis::ZygmundReport rep =
        heis::zygmund_certificate(opt.n_max, opt.trials, opt.seed, opt.threads);
    for (const auto& row : rep.rows) {
        json r;
        r["n"] = row.n;
        r["r2"] = row.r2;
        r["max_ratio4"] = row.max_ratio4;
        r["max_offdiag_ratio"] = row.max_offdiag_ratio;
        r["tol"] = 5.0;
        r["pass"] = row.max_ratio4 <= 5.0 && row.max_offdiag_ratio <= 4.0;
        report.row(std::move(r));
    }
    const long long pair_range = std::min<long long>(opt.n_max, 2500);
    const bool pairs_ok = heis::ordered_pairs_at_most_two(pair_range);
    {
        json r;
        r["check"] = "ordered_pairs_at_most_two";
        r["n_max"] = pair_range;
        r["tol"] = 2.0;
        r["pass"] = pairs_ok;
        report.row(std::move(r));
    }
    {
        json r;
        r["check"] = "max_ratio4";
        r["value"] = rep.max_ratio4;
        r["argmax_n"] = rep.argmax_n;
        r["tol"] = 5.0;
        r["pass"] = rep.bound_holds;
        report.row(std::move(r));
    }
    return finish(report, opt, rep.bound_holds && rep.offdiag_holds && pairs_ok);
}

// ------------------------------------------------------------------ spectrum

int cmd_spectrum(const Options& opt) {
    json config = base_config(opt);
    config["mu_max"] = opt.mu_max;
    Report report("spectrum", config);

    const auto lines = heis::enumerate_spectrum(opt.mu_max);
    bool pass = true;
    for (const auto& line : lines) {
        json r;
        r["mu"] = line.mu;
        r["kind"] = line.torus_points.empty() ? "sector" : "torus";
        if (line.torus_points.empty()) {
            r["m"] = line.m;
            std::string sectors;
            for (const auto& [lam, ell] : line.lambda_sectors) {
                if (!sectors.empty()) sectors += " ";
                sectors += "(" + std::to_string(lam) + "," + std::to_string(ell) + ")";
            }
            r["sectors"] = sectors;
        } else {
            r["n"] = line.n;
            std::string pts;
            for (const auto& w : line.torus_points) {
                if (!pts.empty()) pts += " ";
                pts += "(" + std::to_string(w[0]) + "," + std::to_string(w[1]) + ")";
            }
            r["points"] = pts;
        }
        r["multiplicity"] = line.multiplicity();
        const bool disjoint = line.lambda_sectors.empty() || line.torus_points.empty();
        r["tol"] = 0.0;  // membership is integer-exact
        r["pass"] = disjoint;
        pass = pass && disjoint;
        report.row(std::move(r));
    }
    return finish(report, opt, pass);
}

// ----------------------------------------------------------------- sharpness

int cmd_sharpness(const Options& opt) {
    json config = base_config(opt);
    config["lambda_min"] = opt.lambda_min;
    config["lambda_max"] = opt.lambda_max;
    Report report("sharpness", config);

    const heis::Calibration cal = heis::load_calibration(opt.config_path);
    std::vector<int> lambdas;
    for (int lam = opt.lambda_min; lam <= opt.lambda_max; lam *= 2) lambdas.push_back(lam);
    const heis::ScalingReport rep = heis::sharpness_scan(lambdas, opt.tol, opt.threads);

    bool pass = true;
    for (const auto& row : rep.rows) {
        json r;
        r["lambda"] = row.lambda;
        r["A"] = row.A;
        r["mu"] = row.mu;
        r["ratio"] = row.ratio;
        r["rhs_value"] = row.rhs_value;
        r["lemma_bound"] = row.lemma_bound;
        r["ceiling"] = heis::bernstein_ceiling(row.mu, cal);
        r["tail_bound"] = row.tail_bound;
        r["tol"] = opt.tol;
        const bool ok = row.rhs_value >= row.lemma_bound && row.ratio >= 1.0 &&
                        row.ratio <= heis::bernstein_ceiling(row.mu, cal);
        r["pass"] = ok;
        pass = pass && ok;
        report.row(std::move(r));
    }
    for (int lam : rep.skipped) {
        json r;
        r["lambda"] = lam;
        r["skipped"] = "8*floor(sqrt(lambda)) >= lambda";
        r["pass"] = true;
        report.row(std::move(r));
    }
    {
        json r;
        r["check"] = "fitted_slope";
        r["value"] = rep.fitted_slope;
        r["fit_rows"] = rep.fit_rows;
        r["window_lo"] = rep.slope_window.first;
        r["window_hi"] = rep.slope_window.second;
        r["tol"] = rep.slope_window.second;
        const bool ok = rep.fit_rows >= 2 && rep.fitted_slope >= rep.slope_window.first &&
                        rep.fitted_slope <= rep.slope_window.second;
        r["pass"] = ok;
        pass = pass && ok;
        report.row(std::move(r));
    }
    return finish(report, opt, pass);
}

// ----------------------------------------------------------------- extremize

int cmd_extremize(const Options& opt) {
    json config = base_config(opt);
    config["lambda"] = opt.lambda;
    config["ell"] = opt.ell;
    config["restarts"] = opt.restarts;
    config["max_iters"] = opt.max_iters;
    Report report("extremize", config);

    const heis::Calibration cal = heis::load_calibration(opt.config_path);
    const heis::ExtremizerResult res =
        heis::maximize_ratio(opt.lambda, opt.ell, opt.restarts, opt.max_iters, opt.seed);

    // best valid indicator window as the reference candidate
    int A = static_cast<int>(std::floor(std::sqrt(static_cast<double>(opt.lambda))));
    while (A > 0 && 8 * A >= opt.lambda) --A;
    double indicator_ratio = 0.0;
    {
        const heis::QuarticObjective obj(opt.lambda, opt.ell);
        std::vector<cdouble> ind(opt.lambda, cdouble(0.0, 0.0));
        for (int q = -A; q <= A; ++q) ind[((q % opt.lambda) + opt.lambda) % opt.lambda] = 1.0;
        double n2 = 0.0;
        for (const auto& z : ind) n2 += std::norm(z);
        for (auto& z : ind) z /= std::sqrt(n2);
        indicator_ratio = std::pow(obj.eval(ind), 0.25);
    }

    const double mu = std::sqrt(kTwoPi * opt.lambda * (2.0 * opt.ell + 1.0));
    const double ceiling = heis::bernstein_ceiling(mu, cal);
    json r;
    r["lambda"] = opt.lambda;
    r["ell"] = opt.ell;
    r["mu"] = mu;
    r["ratio"] = res.ratio;
    r["indicator_ratio"] = indicator_ratio;
    r["ceiling"] = ceiling;
    r["converged"] = res.converged;
    r["restarts_used"] = res.restarts_used;
    r["tol"] = 1e-8;
    const bool ok = res.ratio >= indicator_ratio - 1e-10 && res.ratio <= ceiling;
    r["pass"] = ok;
    report.row(std::move(r));
    return finish(report, opt, ok, res.converged);
}

// --------------------------------------------------------------------- basis

int cmd_basis(const Options& opt) {
    json config = base_config(opt);
    config["lambda_max"] = opt.basis_lambda_max;
    config["ell_max"] = opt.basis_ell_max;
    config["omega_max"] = opt.basis_omega_max;
    Report report("basis", config);
    bool pass = true;
    bool converged = true;

    std::vector<heis::BasisIndex> indices;
    for (int lam = -opt.basis_lambda_max; lam <= opt.basis_lambda_max; ++lam) {
        if (lam == 0) continue;
        for (int ell = 0; ell <= opt.basis_ell_max; ++ell)
            for (int q = 0; q < std::abs(lam); ++q)
                indices.push_back(heis::make_sector_index(lam, q, ell));
    }
    const int wmax = opt.basis_omega_max;
    for (int w1 = -wmax; w1 <= wmax; ++w1)
        for (int w2 = -wmax; w2 <= wmax; ++w2)
            if (w1 * w1 + w2 * w2 <= wmax * wmax) indices.push_back(heis::TorusIndex{{w1, w2}});

    {
        const heis::GramResult gram = heis::gram_matrix(indices, 64, opt.threads);
        double worst = 0.0;
        for (int i = 0; i < gram.n; ++i)
            for (int j = 0; j < gram.n; ++j)
                worst = std::max(worst, std::abs(gram.at(i, j) - (i == j ? cdouble(1.0, 0.0)
                                                                         : cdouble(0.0, 0.0))));
        json r;
        r["check"] = "gram_identity";
        r["indices"] = gram.n;
        r["value"] = worst;
        r["doubling_delta"] = gram.max_doubling_delta;
        r["resolved"] = gram.resolved;
        r["tol"] = 1e-8;
        r["pass"] = worst < 1e-8;
        pass = pass && worst < 1e-8;
        converged = converged && gram.resolved;
        report.row(std::move(r));
    }
    {
        heis::Rng rng = heis::Rng::derive(opt.seed, 17);
        double worst = 0.0;
        for (int t = 0; t < 200; ++t) {
            const int lam = (rng.below(2) ? 1 : -1) *
                            (1 + static_cast<int>(rng.below(opt.basis_lambda_max)));
            const auto idx = heis::make_sector_index(lam, static_cast<long long>(rng.below(8)),
                                                     static_cast<int>(rng.below(opt.basis_ell_max + 1)));
            const int shift = static_cast<int>(rng.below(9)) - 4;
            const heis::GroupElement p{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
            const auto [r1, r2] = heis::covariance_check(idx, shift, p, 1e-10);
            worst = std::max(worst, std::max(r1, r2));
        }
        json r;
        r["check"] = "covariance_residual";
        r["value"] = worst;
        r["tol"] = 1e-5;
        r["pass"] = worst < 1e-5;
        pass = pass && worst < 1e-5;
        report.row(std::move(r));
    }
    {
        heis::Rng rng = heis::Rng::derive(opt.seed, 23);
        double worst = 0.0;
        for (const auto& any : indices) {
            if (!std::holds_alternative<heis::SectorIndex>(any)) continue;
            const auto idx = std::get<heis::SectorIndex>(any);
            const double eig = heis::eigenvalue(idx);
            for (int t = 0; t < 100; ++t) {
                const heis::GroupElement p{rng.uniform(-2, 2), rng.uniform(-2, 2),
                                           rng.uniform(-2, 2)};
                const cdouble lhs = heis::apply_sublaplacian(idx, p, 1e-10);
                const cdouble rhs = eig * heis::eval_h(idx, p, 1e-10);
                worst = std::max(worst, std::abs(lhs - rhs) / eig);
            }
        }
        json r;
        r["check"] = "eigen_residual";
        r["value"] = worst;
        r["tol"] = 1e-6;
        r["pass"] = worst < 1e-6;
        pass = pass && worst < 1e-6;
        report.row(std::move(r));
    }
    return finish(report, opt, pass, converged);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification lab for the sub-Laplacian eigenbasis on the Heisenberg nilmanifold"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", opt.out, "output path (default stdout)");
    app.add_option("--config", opt.config_path, "calibration file override");
    app.add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--tol", opt.tol, "tolerance")->check(CLI::PositiveNumber);
    app.add_option("--grid", opt.grid, "quadrature grid (power of two)")
        ->check(CLI::PositiveNumber)
        ->check([](const std::string& s) -> std::string {
            const long v = std::strtol(s.c_str(), nullptr, 10);
            return (v > 0 && (v & (v - 1)) == 0) ? "" : "grid must be a power of two";
        });
    app.add_option("--seed", opt.seed, "random seed");

    auto* sp = app.add_subcommand("special-fn", "Hermite/Laguerre recurrences, bounds, connection");
    sp->add_option("--ell-max", opt.ell_max, "maximal Laguerre degree");

    auto* ki = app.add_subcommand("key-identity", "quadrature LHS vs lattice-sum RHS");
    ki->add_option("--lambda", opt.lambda, "sector frequency (nonzero)");
    ki->add_option("--ell", opt.ell, "Hermite degree")->check(CLI::NonNegativeNumber);
    ki->add_option("--trials", opt.trials, "random coefficient vectors")->check(CLI::PositiveNumber);
    ki->add_flag("--general-window", opt.general_window, "use the mixed Hermite window");

    auto* zy = app.add_subcommand("zygmund", "torus L4 bound certificate");
    zy->add_option("--n-max", opt.n_max, "largest circle")->check(CLI::PositiveNumber);
    zy->add_option("--trials", opt.trials, "random trials per circle")->check(CLI::PositiveNumber);

    auto* spec = app.add_subcommand("spectrum", "spectral lines with multiplicities");
    spec->add_option("--mu-max", opt.mu_max, "largest mu")->check(CLI::PositiveNumber);

    auto* sh = app.add_subcommand("sharpness", "indicator-window scaling scan");
    sh->add_option("--lambda-min", opt.lambda_min, "smallest lambda (power of two)");
    sh->add_option("--lambda-max", opt.lambda_max, "largest lambda");

    auto* ex = app.add_subcommand("extremize", "coefficient-vector ratio maximisation");
    ex->add_option("--lambda", opt.lambda, "sector frequency (positive)");
    ex->add_option("--ell", opt.ell, "Hermite degree")->check(CLI::NonNegativeNumber);
    ex->add_option("--restarts", opt.restarts, "restarts")->check(CLI::PositiveNumber);
    ex->add_option("--max-iters", opt.max_iters, "iteration cap")->check(CLI::PositiveNumber);

    auto* ba = app.add_subcommand("basis", "orthonormality, covariance, eigen-residuals");
    ba->add_option("--lambda-max", opt.basis_lambda_max, "|lambda| range")->check(CLI::PositiveNumber);
    ba->add_option("--ell-max", opt.basis_ell_max, "ell range")->check(CLI::NonNegativeNumber);
    ba->add_option("--omega-max", opt.basis_omega_max, "|omega| range")->check(CLI::NonNegativeNumber);

    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    const auto t0 = std::chrono::steady_clock::now();
    int rc = kUsage;
    try {
        if (sp->parsed()) rc = cmd_special_fn(opt);
        if (ki->parsed()) {
            if (opt.lambda == 0) {
                std::cerr << "key-identity: lambda must be nonzero\n";
                return kUsage;
            }
            rc = cmd_key_identity(opt);
        }
        if (zy->parsed()) rc = cmd_zygmund(opt);
        if (spec->parsed()) rc = cmd_spectrum(opt);
        if (sh->parsed()) rc = cmd_sharpness(opt);
        if (ex->parsed()) {
            if (opt.lambda <= 0) {
                std::cerr << "extremize: lambda must be positive\n";
                return kUsage;
            }
            rc = cmd_extremize(opt);
        }
        if (ba->parsed()) rc = cmd_basis(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNonConvergence;
    }
    const auto t1 = std::chrono::steady_clock::now();
    std::cerr << "wall-time: "
              << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() << " ms\n";
    return rc;
}
