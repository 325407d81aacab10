// Command-line front end: experiment orchestration and report emission.
#include <CLI11.hpp>

#include "grimglue/config.hpp"
#include "grimglue/conjugated.hpp"
#include "grimglue/fit.hpp"
#include "grimglue/geometry.hpp"
#include "grimglue/greens.hpp"
#include "grimglue/grim.hpp"
#include "grimglue/laurent.hpp"
#include "grimglue/mesh.hpp"
#include "grimglue/norms.hpp"
#include "grimglue/series_csv.hpp"
#include "grimglue/surgery.hpp"
#include "grimglue/verify.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>

namespace gg = grimglue;
namespace fs = std::filesystem;

namespace {

gg::json base_report(const gg::RunConfig& config, const std::string& command) {
    gg::json report;
    report["command"] = command;
    report["config"] = config.to_json();
    return report;
}

gg::json admissibility_block(const gg::RunConfig& config) {
    const gg::AdmissibilityReport adm = gg::admissible_params(
        config.epsilon, config.R, config.Delta, config.eta, config.Cbound, config.c);
    gg::json block;
    block["admissible"] = adm.admissible;
    block["upper_slack (1/Delta - eps R^{4+eta} - R^{eta-1})"] =
        gg::format_double(adm.upper_slack);
    block["lower_slack (eps R^{5-eta} - Delta)"] = gg::format_double(adm.lower_slack);
    block["c_slack (Cbound - |c|)"] = gg::format_double(adm.c_slack);
    return block;
}

int cmd_series(const gg::RunConfig& config) {
    const fs::path out(config.out_dir);
    const gg::LaurentSeries laurent = gg::laurent_recurrence(config.laurent_n);
    gg::write_text_file(out / "laurent.csv", gg::laurent_csv(laurent));
    const gg::BivariateSeries bivariate = gg::bivariate_recurrence(config.bivariate_k);
    gg::write_text_file(out / "bivariate.csv", gg::bivariate_csv(bivariate));
    gg::json report = base_report(config, "series");
    report["laurent_order"] = config.laurent_n;
    report["laurent_residual_order"] = gg::apply_G_laurent(laurent).order();
    report["bivariate_order"] = config.bivariate_k;
    report["files"] = {"laurent.csv", "bivariate.csv"};
    gg::write_json(out / "series_report.json", report);
    std::printf("series: wrote %s\n", (out / "series_report.json").c_str());
    return 0;
}

int cmd_profile(const gg::RunConfig& config) {
    const fs::path out(config.out_dir);
    const gg::RadialProfile profile = gg::paraboloid_profile(
        5e-3, 220.0, config.tol, {config.n_samples, gg::Spacing::logarithmic});
    gg::CsvWriter csv({"r", "v", "u", "fd_residual"});
    for (std::size_t i = 1; i + 1 < profile.size(); ++i) {
        const double r = profile.r()[i];
        const double v = profile.v()[i];
        const double dv_fd = (profile.v()[i + 1] - profile.v()[i - 1]) /
                             (profile.r()[i + 1] - profile.r()[i - 1]);
        const double residual = r * dv_fd + (v - r) * (1 + v * v);
        csv.add_row({gg::format_double(r), gg::format_double(v),
                     gg::format_double(profile.u()[i]), gg::format_double(residual)});
    }
    csv.write(out / "profile.csv");

    gg::json report = base_report(config, "profile");
    std::vector<double> radii(60);
    for (int i = 0; i < 60; ++i) radii[i] = 10.0 * std::pow(20.0, i / 59.0);
    for (int n = 0; n <= 2; ++n) {
        const auto dev = gg::large_scale_deviation(n, radii, config.tol);
        const gg::SlopeFit fit = gg::decay_exponent(radii, dev);
        gg::json row;
        row["slope"] = gg::format_double(fit.slope);
        row["width"] = gg::format_double(fit.width);
        row["expected"] = gg::format_double(-(2.0 * n + 1.0));
        row["grid"] = {{"r_lo", 10.0}, {"r_hi", 200.0}, {"points", 60}};
        report["rate_fits"]["n" + std::to_string(n)] = row;
    }
    gg::write_json(out / "rates.json", report);
    std::printf("profile: wrote %s and %s\n", (out / "profile.csv").c_str(),
                (out / "rates.json").c_str());
    return 0;
}

int cmd_glue(const gg::RunConfig& config) {
    const fs::path out(config.out_dir);
    gg::GluingConfig gc;
    gc.epsilon = config.epsilon;
    gc.R = config.R;
    gc.R0 = config.R0;
    gc.c0 = config.c;
    gc.tol = config.tol;
    gc.order = config.order;
    gc.n_samples = config.n_samples;
    const gg::GluedSurface glued = gg::build_glued(gc, gc.c0);

    gg::json report = base_report(config, "glue");
    report["admissibility"] = admissibility_block(config);
    auto fit_block = [](const gg::EndFit& fit) {
        gg::json j;
        j["constant"] = gg::format_double(fit.constant);
        j["log_coeff"] = gg::format_double(fit.log_coeff);
        j["quad_coeff"] = gg::format_double(fit.quad_coeff);
        return j;
    };
    report["core_fit"] = fit_block(glued.core_fit);
    report["end_fit"] = fit_block(glued.end_fit);

    gg::CsvWriter csv({"r", "H", "residual"});
    const gg::ProfileFn H = glued.joined();
    double sup_core = 0, sup_transition = 0, sup_outside = 0;
    for (int i = 0; i < 600; ++i) {
        const double r = gc.R0 * std::pow(8 * gc.R / gc.R0, i / 599.0);
        const double resid = glued.residual(r);
        csv.add_row({gg::format_double(r), gg::format_double(H.u(r)),
                     gg::format_double(resid)});
        if (r < gc.R) sup_core = std::max(sup_core, std::abs(resid));
        else if (r < 2 * gc.R) sup_transition = std::max(sup_transition, std::abs(resid));
        else sup_outside = std::max(sup_outside, std::abs(resid));
    }
    csv.write(out / "glue_residual.csv");
    report["residual_sup"]["core"] = gg::format_double(sup_core);
    report["residual_sup"]["transition"] = gg::format_double(sup_transition);
    report["residual_sup"]["outside"] = gg::format_double(sup_outside);

    // Weighted residual norm over B(4R).
    {
        std::vector<double> mesh(500), values(500);
        for (int i = 0; i < 500; ++i) {
            mesh[i] = gc.R0 * std::pow(4 * gc.R / gc.R0, (i + 0.5) / 500);
            values[i] = glued.residual(mesh[i]);
        }
        gg::ModalField field;
        field.r = mesh;
        field.modes[0] = values;
        gg::NormSpec spec{0, config.alpha, 2.0 + config.delta,
                          gg::NormSpec::Kind::cylindrical};
        report["weighted_residual_norm"] = gg::format_double(
            gg::cyl_weighted_norm(field, spec, gc.R0, 4 * gc.R));
    }

    const gg::TriangleMesh mesh = gg::mesh_height_field(
        [&H](double x, double y) { return H.u(std::hypot(x, y)); }, gc.R0, 4 * gc.R, 48, 64);
    mesh.write_obj(out / "glued.obj");
    gg::write_text_file(out / "residual_field.csv",
                        gg::scalar_field_csv(
                            [&glued](double x, double y) {
                                return glued.residual(std::hypot(x, y));
                            },
                            gc.R0, 4 * gc.R, 40, 48));
    report["files"] = {"glue_residual.csv", "residual_field.csv", "glued.obj"};
    gg::write_json(out / "glue_report.json", report);
    std::printf("glue: wrote %s\n", (out / "glue_report.json").c_str());
    return 0;
}

int cmd_jacobi(const gg::RunConfig& config) {
    const fs::path out(config.out_dir);
    const gg::RadialProfile prof =
        gg::paraboloid_profile(5e-3, 40.0, config.tol, {6001, gg::Spacing::logarithmic});
    const gg::ProfileFn fn = gg::as_fn(prof);
    const gg::RhoMap map(fn, 5e-3, 40.0);

    gg::CsvWriter csv({"rho", "r", "potential", "drift", "mu"});
    for (int i = 0; i < 400; ++i) {
        const double r = 5e-3 * std::pow(40.0 / 5e-3, (i + 0.5) / 400);
        const gg::ConjugatedCoeffs c = gg::conjugated_coeffs(fn, config.gamma, r);
        csv.add_row({gg::format_double(map.rho(r)), gg::format_double(r),
                     gg::format_double(c.potential), gg::format_double(c.drift),
                     gg::format_double(c.mu)});
    }
    csv.write(out / "potential.csv");

    gg::json report = base_report(config, "jacobi");
    gg::Rng rng(config.seed);
    for (int m = 0; m <= config.m_max; ++m) {
        const gg::ModeOperator op =
            gg::conjugated_mode_operator(fn, map, config.gamma, m, 160.0, config.n_nodes);
        const gg::ModeSolver solver(op);
        const auto g = gg::random_band_limited(op.x, 8, rng, op.x.front() + 5.0, 120.0);
        const auto back = op.apply(solver.solve(g));
        double err = 0.0, sup = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            err = std::max(err, std::abs(back[i] - g[i]));
            sup = std::max(sup, std::abs(g[i]));
        }
        gg::json row;
        row["roundtrip_rel"] = gg::format_double(err / sup);
        row["inverse_norm_estimate"] =
            gg::format_double(gg::inverse_norm_estimate(solver, 4, rng));
        report["modes"]["m" + std::to_string(m)] = row;
    }
    report["files"] = {"potential.csv"};
    gg::write_json(out / "jacobi_report.json", report);
    std::printf("jacobi: wrote %s\n", (out / "jacobi_report.json").c_str());
    return 0;
}

int cmd_greens(const gg::RunConfig& config) {
    const fs::path out(config.out_dir);
    gg::json report = base_report(config, "greens");
    report["admissibility"] = admissibility_block(config);
    gg::Rng rng(config.seed);

    gg::json sweep = gg::json::array();
    for (double scale : {0.8, 1.0, 1.2}) {
        gg::PingPongConfig pc;
        pc.gluing.epsilon = config.epsilon * std::pow(scale, -4.5);
        pc.gluing.R = config.R * scale;
        pc.gluing.R0 = config.R0;
        pc.gluing.c0 = config.c;
        pc.gluing.order = config.order;
        pc.gluing.n_samples = std::min(config.n_samples, 2001);
        pc.n_nodes = std::min(config.n_nodes, 1500);
        pc.m_max = std::min(config.m_max, 2);
        pc.symmetry_order = config.symmetry_order;
        const gg::PingPong pp(pc);
        const auto est = pp.measure_contraction(2, rng);
        gg::json row;
        row["R"] = gg::format_double(pc.gluing.R);
        row["epsilon"] = gg::format_double(pc.gluing.epsilon);
        row["norm_AB"] = gg::format_double(est.ab);
        row["norm_BA"] = gg::format_double(est.ba);
        sweep.push_back(row);
    }
    report["contraction_sweep"] = sweep;

    gg::PingPongConfig pc;
    pc.gluing.epsilon = config.epsilon;
    pc.gluing.R = config.R;
    pc.gluing.R0 = config.R0;
    pc.gluing.c0 = config.c;
    pc.gluing.order = config.order;
    pc.gluing.n_samples = config.n_samples;
    pc.n_nodes = config.n_nodes;
    pc.m_max = config.m_max;
    pc.symmetry_order = config.symmetry_order;
    pc.alpha = config.alpha;
    pc.gamma = config.gamma;
    pc.delta = config.delta;
    const gg::PingPong pp(pc);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const gg::ModalField f = pp.random_F_field(rng);
        const gg::RightInverse ri = pp.assemble_right_inverse(f);
        worst = std::max(worst, pp.identity_residual(f, ri));
    }
    report["identity_residual"] = gg::format_double(worst);

    const gg::RefineResult refine = pp.refine_soliton(4, 1e-12);
    gg::json history = gg::json::array();
    for (double h : refine.residual_history) history.push_back(gg::format_double(h));
    report["refine_history"] = history;
    report["refine_l"] = gg::format_double(refine.l);
    report["refine_v"] = gg::format_double(refine.v);

    gg::write_json(out / "greens_report.json", report);
    std::printf("greens: wrote %s\n", (out / "greens_report.json").c_str());
    return 0;
}

int cmd_verify(const gg::RunConfig& config) {
    const fs::path out(config.out_dir);
    gg::VerifyOptions options;
    options.seed = config.seed;
    const auto results = gg::run_acceptance(options);
    bool all = true;
    for (const auto& r : results) {
        std::printf("%s [%2d] %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str());
        all = all && r.passed;
    }
    gg::json report = base_report(config, "verify");
    report["acceptance"] = gg::acceptance_report(results, options);
    gg::write_json(out / "verify_report.json", report);
    std::printf("verify: wrote %s (%s)\n", (out / "verify_report.json").c_str(),
                all ? "all passed" : "FAILURES");
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for glued translating solitons"};
    app.require_subcommand(1);
    app.fallthrough();

    gg::RunConfig config;
    // Load --config before binding flags so command-line values win.
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            try {
                config = gg::load_config_file(argv[i + 1], config);
            } catch (const std::exception& e) {
                std::cerr << "config error: " << e.what() << "\n";
                return 2;
            }
        }
    }
    std::string config_path;
    app.add_option("--config", config_path, "flat key=value parameter file");
    app.add_option("--out", config.out_dir, "output directory");
    app.add_option("--seed", config.seed, "seed for randomized probes");
    app.add_option("--epsilon", config.epsilon, "soliton speed");
    app.add_option("--R", config.R, "gluing radius / scale parameter");
    app.add_option("--R0", config.R0, "inner core radius");
    app.add_option("--c", config.c, "logarithmic coefficient");
    app.add_option("--Delta", config.Delta, "largeness parameter");
    app.add_option("--eta", config.eta, "admissibility exponent offset");
    app.add_option("--Cbound", config.Cbound, "bound on |c|");
    app.add_option("--delta", config.delta, "cylindrical weight exponent");
    app.add_option("--gamma", config.gamma, "grim weight exponent");
    app.add_option("--alpha", config.alpha, "Hoelder exponent");
    app.add_option("--tol", config.tol, "solver tolerance");
    app.add_option("--n-samples", config.n_samples, "profile sample count");
    app.add_option("--n-nodes", config.n_nodes, "operator mesh size");
    app.add_option("--m-max", config.m_max, "Fourier mode cutoff");
    app.add_option("--symmetry-order", config.symmetry_order, "dihedral symmetry order g");
    app.add_option("--laurent-n", config.laurent_n, "large-scale truncation order");
    app.add_option("--bivariate-k", config.bivariate_k, "small-scale truncation order");
    app.add_option("--order", config.order, "construction order of Grim ends");

    auto* series = app.add_subcommand("series", "emit exact coefficient tables");
    auto* profile = app.add_subcommand("profile", "solve and fit radial profiles");
    auto* glue = app.add_subcommand("glue", "join a catenoid core to a Grim end");
    auto* jacobi = app.add_subcommand("jacobi", "conjugated-operator diagnostics");
    auto* greens = app.add_subcommand("greens", "ping-pong right-inverse diagnostics");
    auto* verify = app.add_subcommand("verify", "run the acceptance matrix");

    CLI11_PARSE(app, argc, argv);

    try {
        std::filesystem::create_directories(config.out_dir);
        if (series->parsed()) return cmd_series(config);
        if (profile->parsed()) return cmd_profile(config);
        if (glue->parsed()) return cmd_glue(config);
        if (jacobi->parsed()) return cmd_jacobi(config);
        if (greens->parsed()) return cmd_greens(config);
        if (verify->parsed()) return cmd_verify(config);
    } catch (const std::exception& e) {
        gg::json error;
        error["error"] = e.what();
        error["config"] = config.to_json();
        try {
            gg::write_json(fs::path(config.out_dir) / "error_report.json", error);
        } catch (...) {
        }
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
