// levylab: isotropic stable-process narrow-capture experiments on the torus,
// the sphere and the unit ball. Subcommands mirror the library modules;
// every flag has a config-file equivalent (INI/TOML via --config), flags
// override file values. Exit codes: 0 success, 2 validation error,
// 3 numerical-tolerance failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "levylab/ball_integral.hpp"
#include "levylab/constants.hpp"
#include "levylab/fit.hpp"
#include "levylab/levy_sim.hpp"
#include "levylab/manifold.hpp"
#include "levylab/records.hpp"
#include "levylab/sphere_spectral.hpp"
#include "levylab/spectral_torus.hpp"

namespace {

using nlohmann::json;
using namespace levylab;

constexpr const char* kVersion = "levylab 0.1.0";

struct GlobalOpts {
    std::uint64_t seed = 1;
    int threads = 0; // 0 = auto (LEVYLAB_THREADS or 1)
    std::string out;
    std::string format = "json";
};

int resolved_threads(const GlobalOpts& g) {
    if (g.threads > 0) return g.threads;
    if (const char* env = std::getenv("LEVYLAB_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) return t;
    }
    return 1;
}

std::vector<double> parse_csv_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    return out;
}

void emit(const GlobalOpts& g, const json& j, const std::string& csv) {
    const std::string text = g.format == "csv" ? csv : j.dump(2) + "\n";
    if (!g.out.empty())
        atomic_write(g.out, text);
    else
        std::cout << text;
}

ResultRecord make_record(const ExperimentSpec& spec, json outputs, double wall_s) {
    ResultRecord r;
    r.spec = spec;
    r.outputs = std::move(outputs);
    r.wall_time_s = wall_s;
    r.version = kVersion;
    r.timestamp = iso_timestamp_utc();
    return r;
}

// ---------------------------------------------------------------- constants

json run_constants(int dim, double alpha) {
    const Dimension n(dim);
    const StabilityIndex a(alpha);
    json j;
    j["C"] = levy_constant(n, a);
    j["c"] = capture_constant(n, a);
    j["c_alpha"] = ball_inverse_constant(n, a);
    j["W"] = weight_integral(n, a);
    j["identity_residual"] = identity_residual(n, a);
    return j;
}

std::string constants_csv(const json& j) {
    std::ostringstream os;
    os << "C,c,c_alpha,W,identity_residual\n";
    os.precision(17);
    os << j["C"].get<double>() << ',' << j["c"].get<double>() << ','
       << j["c_alpha"].get<double>() << ',' << j["W"].get<double>() << ','
       << j["identity_residual"].get<double>() << "\n";
    return os.str();
}

// ----------------------------------------------------------------- simulate

struct SimulateOpts {
    std::string manifold = "torus";
    int dim = 2;
    double alpha = 0.5;
    double delta = 1e-3;
    double eps = 0.1;
    std::string target;
    std::string start = "uniform";
    long samples = 10000;
    double tmax_mult = 50.0;
    bool gaussian_correction = false;
    std::string trajectories_out;
};

Manifold simulate_manifold(const SimulateOpts& o) {
    if (o.manifold == "torus") return Manifold(ManifoldKind::FlatTorus, o.dim);
    if (o.manifold == "sphere") return Manifold(ManifoldKind::RoundSphere, o.dim);
    if (o.manifold == "ball") return Manifold(ManifoldKind::Euclidean, o.dim);
    throw std::invalid_argument("simulate: unknown manifold '" + o.manifold + "'");
}

json run_simulate(const SimulateOpts& o, const GlobalOpts& g, double eps_override = -1.0) {
    SimulateOpts opt = o;
    if (eps_override > 0.0) opt.eps = eps_override;
    const Manifold m = simulate_manifold(opt);
    const Dimension n(opt.dim);
    const StabilityIndex a(opt.alpha);

    Point target;
    if (m.kind() == ManifoldKind::Euclidean) {
        target = Point{Vec::zeros(opt.dim)};
    } else if (!opt.target.empty()) {
        auto c = parse_csv_doubles(opt.target);
        Vec v = Vec::zeros(static_cast<int>(c.size()));
        for (std::size_t i = 0; i < c.size(); ++i) v[i] = c[i];
        target = m.make_point(v);
    } else if (m.kind() == ManifoldKind::FlatTorus) {
        Vec v = Vec::zeros(opt.dim);
        for (int i = 0; i < opt.dim; ++i) v[static_cast<std::size_t>(i)] = 0.5;
        target = m.make_point(v);
    } else {
        Vec v = Vec::zeros(opt.dim + 1);
        v[static_cast<std::size_t>(opt.dim)] = 1.0; // pole
        target = m.make_point(v);
    }

    // censoring horizon: tmax_mult x the predicted mean
    double predicted;
    if (m.kind() == ManifoldKind::Euclidean)
        predicted = getoor_ball_mean_exit(n, a, 0.0);
    else
        predicted = std::pow(opt.eps, 2.0 * opt.alpha - opt.dim) * m.volume() *
                    capture_constant(n, a);
    JumpProcessConfig cfg(opt.alpha, opt.delta, m, g.seed, opt.tmax_mult * predicted,
                          opt.gaussian_correction);

    StartSpec start;
    if (opt.start != "uniform") {
        auto c = parse_csv_doubles(opt.start);
        Vec v = Vec::zeros(static_cast<int>(c.size()));
        for (std::size_t i = 0; i < c.size(); ++i) v[i] = c[i];
        start.fixed = m.kind() == ManifoldKind::Euclidean ? Point{v} : m.make_point(v);
    } else if (m.kind() == ManifoldKind::Euclidean) {
        start.fixed = Point{Vec::zeros(opt.dim)}; // ball: default start at the center
    }

    std::vector<TrajectoryResult> traj;
    const CaptureEstimate est =
        estimate_capture(cfg, start, target, opt.eps, opt.samples, resolved_threads(g),
                         opt.trajectories_out.empty() ? nullptr : &traj);

    if (!opt.trajectories_out.empty()) {
        std::ostringstream os;
        os << "idx,tau,censored,n_jumps\n";
        os.precision(17);
        for (std::size_t i = 0; i < traj.size(); ++i)
            os << i << ',' << traj[i].tau << ',' << (traj[i].censored ? 1 : 0) << ','
               << traj[i].n_jumps << "\n";
        atomic_write(opt.trajectories_out, os.str());
    }

    json j;
    j["mean"] = est.mean;
    j["half_width_95"] = est.half_width_95;
    j["n_samples"] = est.n_samples;
    j["n_censored"] = est.n_censored;
    j["delta_used"] = est.delta_used;
    j["censored_bias_warning"] = est.n_censored > 0;
    j["predicted_leading"] = predicted;
    return j;
}

std::string simulate_csv(const json& j) {
    std::ostringstream os;
    os << "mean,half_width_95,n_samples,n_censored,delta_used\n";
    os.precision(17);
    os << j["mean"].get<double>() << ',' << j["half_width_95"].get<double>() << ','
       << j["n_samples"].get<long>() << ',' << j["n_censored"].get<long>() << ','
       << j["delta_used"].get<double>() << "\n";
    return os.str();
}

// -------------------------------------------------------------- solve-torus

struct SolveTorusOpts {
    int dim = 2;
    double alpha = 0.5;
    double eps = 0.1;
    int grid = 256;
    std::string p0 = "";
    std::string dump_field;
};

json run_solve_torus(const SolveTorusOpts& o, double eps_override = -1.0) {
    SolveTorusOpts opt = o;
    if (eps_override > 0.0) opt.eps = eps_override;
    const TorusGrid grid(opt.dim, opt.grid);
    Vec p0 = Vec::zeros(opt.dim);
    if (!opt.p0.empty()) {
        auto c = parse_csv_doubles(opt.p0);
        if (static_cast<int>(c.size()) != opt.dim)
            throw std::invalid_argument("solve-torus: p0 has wrong dimension");
        for (std::size_t i = 0; i < c.size(); ++i) p0[i] = c[i];
    } else {
        for (int i = 0; i < opt.dim; ++i) p0[static_cast<std::size_t>(i)] = 0.5;
    }
    const TorusTransform transform(grid);
    const CaptureSolution sol = solve_capture(transform, opt.alpha, opt.eps, p0);

    if (!opt.dump_field.empty()) {
        // binary dump: magic "LVYT", int32 n, int32 N, float64 alpha, float64 eps,
        // then row-major float64 field values
        std::ofstream out(opt.dump_field, std::ios::binary | std::ios::trunc);
        if (!out) throw std::invalid_argument("solve-torus: cannot open dump file");
        out.write("LVYT", 4);
        const std::int32_t n32 = grid.n, N32 = grid.N;
        out.write(reinterpret_cast<const char*>(&n32), 4);
        out.write(reinterpret_cast<const char*>(&N32), 4);
        out.write(reinterpret_cast<const char*>(&opt.alpha), 8);
        out.write(reinterpret_cast<const char*>(&opt.eps), 8);
        out.write(reinterpret_cast<const char*>(sol.u.v.data()),
                  static_cast<std::streamsize>(sol.u.v.size() * 8));
    }

    json j;
    j["mean_u"] = sol.mean_u;
    j["C_eps"] = sol.C_eps;
    j["residual"] = sol.residual;
    j["slope_data"] = nullptr; // filled by `sweep`
    j["interior_points"] = sol.interior.size();
    j["cg_iterations"] = sol.cg_iterations;
    return j;
}

// -------------------------------------------------------------- solve-sphere

struct SolveSphereOpts {
    double alpha = 0.2;
    double eps = 0.1;
    int degree = 400;
    std::string lambda_cache;
};

MultiplierTable load_or_compute_table(int L, double alpha, const std::string& cache) {
    if (!cache.empty()) {
        std::ifstream in(cache);
        if (in) {
            MultiplierTable t;
            t.alpha = alpha;
            std::string line;
            std::getline(in, line); // header
            while (std::getline(in, line)) {
                std::stringstream ss(line);
                std::string tok;
                std::getline(ss, tok, ','); // l
                std::getline(ss, tok, ',');
                t.lambdas.push_back(std::stod(tok));
                std::getline(ss, tok, ',');
                t.quad_error.push_back(std::stod(tok));
            }
            if (static_cast<int>(t.lambdas.size()) >= L + 1) return t;
        }
    }
    MultiplierTable t = sphere_multiplier_table(L, StabilityIndex(alpha));
    if (!cache.empty()) {
        std::ostringstream os;
        os << "l,lambda,quad_error,parity_gap\n";
        os.precision(17);
        for (std::size_t l = 0; l < t.lambdas.size(); ++l) {
            os << l << ',' << t.lambdas[l] << ',' << t.quad_error[l] << ',';
            if (l >= 1 && l + 1 < t.lambdas.size())
                os << parity_gap(t, static_cast<int>(l));
            else
                os << "nan";
            os << "\n";
        }
        atomic_write(cache, os.str());
    }
    return t;
}

json run_solve_sphere(const SolveSphereOpts& o, double eps_override = -1.0) {
    SolveSphereOpts opt = o;
    if (eps_override > 0.0) opt.eps = eps_override;
    const StabilityIndex a(opt.alpha);
    const MultiplierTable table = load_or_compute_table(opt.degree, opt.alpha, opt.lambda_cache);
    const ZonalSolution sol = solve_capture_zonal(a, opt.eps, opt.degree, table);
    json j;
    j["a0"] = sol.mean();
    j["u_pi_minus_a0"] = antipodal_deviation(sol);
    j["residual"] = std::max(sol.cap_residual, sol.pde_residual);
    j["cap_residual"] = sol.cap_residual;
    j["pde_residual"] = sol.pde_residual;
    j["under_resolved"] = sol.under_resolved;
    j["lambda_path"] = opt.lambda_cache.empty() ? json(nullptr) : json(opt.lambda_cache);
    return j;
}

// -------------------------------------------------------------- multipliers

json run_multipliers(double alpha, int lmax, const GlobalOpts& g) {
    const MultiplierTable t = sphere_multiplier_table(lmax, StabilityIndex(alpha));
    std::ostringstream os;
    os << "l,lambda,quad_error,parity_gap\n";
    os.precision(17);
    for (std::size_t l = 0; l < t.lambdas.size(); ++l) {
        os << l << ',' << t.lambdas[l] << ',' << t.quad_error[l] << ',';
        if (l >= 1 && l + 1 < t.lambdas.size())
            os << parity_gap(t, static_cast<int>(l));
        else
            os << "nan";
        os << "\n";
    }
    if (!g.out.empty())
        atomic_write(g.out, os.str());
    else
        std::cout << os.str();
    json j;
    j["lmax"] = lmax;
    j["alpha"] = alpha;
    j["written"] = g.out;
    return j;
}

// ---------------------------------------------------------------- ball-check

json run_ball_check(int dim, double alpha, const std::string& resolution) {
    const Dimension n(dim);
    const StabilityIndex a(alpha);
    const BallResolution res =
        resolution == "high" ? BallResolution::High : BallResolution::Standard;
    std::vector<double> radii;
    for (int i = 0; i < 50; ++i) radii.push_back(0.9 * i / 49.0);
    const double max_res = verify_inverse_formula(n, a, radii, res);
    const double center_res = verify_inverse_formula(n, a, {0.0}, res);
    json j;
    j["max_residual"] = max_res;
    j["center_residual"] = center_res;
    j["points"] = radii.size();
    return j;
}

// -------------------------------------------------------------------- sweep

struct SweepOpts {
    std::string kind = "solve-torus";
    std::string eps_list = "0.1,0.075,0.05";
};

json run_sweep(const SweepOpts& sw, const SimulateOpts& sim, const SolveTorusOpts& st,
               const SolveSphereOpts& ss, const GlobalOpts& g) {
    ExperimentSpec spec;
    spec.kind = "sweep";
    spec.seed = g.seed;
    spec.out_path = g.out;
    spec.sweep = parse_csv_doubles(sw.eps_list);
    spec.parameters["kind"] = sw.kind;
    if (sw.kind == "simulate") {
        spec.parameters["manifold"] = sim.manifold;
        spec.parameters["dim"] = sim.dim;
        spec.parameters["alpha"] = sim.alpha;
        spec.parameters["delta"] = sim.delta;
        spec.parameters["samples"] = sim.samples;
    } else if (sw.kind == "solve-torus") {
        spec.parameters["dim"] = st.dim;
        spec.parameters["alpha"] = st.alpha;
        spec.parameters["grid"] = st.grid;
    } else if (sw.kind == "solve-sphere") {
        spec.parameters["alpha"] = ss.alpha;
        spec.parameters["degree"] = ss.degree;
    }
    spec.validate();

    // sphere sweeps share one multiplier table across points
    MultiplierTable table;
    if (sw.kind == "solve-sphere")
        table = load_or_compute_table(ss.degree, ss.alpha, ss.lambda_cache);

    std::vector<json> outs(spec.sweep->size());
    auto run_point = [&](std::size_t i) {
        const double eps = (*spec.sweep)[i];
        if (sw.kind == "simulate")
            outs[i] = run_simulate(sim, g, eps);
        else if (sw.kind == "solve-torus")
            outs[i] = run_solve_torus(st, eps);
        else if (sw.kind == "solve-sphere") {
            const ZonalSolution sol =
                solve_capture_zonal(StabilityIndex(ss.alpha), eps, ss.degree, table);
            json j;
            j["a0"] = sol.mean();
            j["u_pi_minus_a0"] = antipodal_deviation(sol);
            j["residual"] = std::max(sol.cap_residual, sol.pde_residual);
            j["cap_residual"] = sol.cap_residual;
            j["pde_residual"] = sol.pde_residual;
            j["under_resolved"] = sol.under_resolved;
            j["lambda_path"] = ss.lambda_cache.empty() ? json(nullptr) : json(ss.lambda_cache);
            outs[i] = j;
        } else {
            throw std::invalid_argument("sweep: kind must be simulate|solve-torus|solve-sphere");
        }
    };

    const int nt = std::min<int>(resolved_threads(g), static_cast<int>(spec.sweep->size()));
    if (nt <= 1 || sw.kind == "simulate") {
        // simulate already parallelizes across trajectories
        for (std::size_t i = 0; i < spec.sweep->size(); ++i) run_point(i);
    } else {
        std::vector<std::thread> pool;
        std::size_t next = 0;
        std::mutex mu;
        for (int w = 0; w < nt; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i;
                    {
                        std::lock_guard<std::mutex> lock(mu);
                        if (next >= spec.sweep->size()) return;
                        i = next++;
                    }
                    run_point(i);
                }
            });
        for (auto& th : pool) th.join();
    }

    const char* metric = sw.kind == "simulate" ? "mean"
                         : sw.kind == "solve-torus" ? "mean_u"
                                                    : "a0";
    std::vector<std::pair<double, double>> pts;
    json points = json::array();
    for (std::size_t i = 0; i < outs.size(); ++i) {
        const double eps = (*spec.sweep)[i];
        pts.emplace_back(eps, outs[i][metric].get<double>());
        json p;
        p["eps"] = eps;
        p["outputs"] = outs[i];
        points.push_back(p);
    }
    json j;
    j["points"] = points;
    j["metric"] = metric;
    if (pts.size() >= 3) {
        const FitResult f = fit_scaling(pts);
        json fitj;
        fitj["slope"] = f.slope;
        fitj["intercept"] = f.intercept;
        fitj["r_squared"] = f.r_squared;
        j["fit"] = fitj;
    } else {
        j["fit"] = nullptr;
    }
    return j;
}

// ---------------------------------------------------------------------- fit

json run_fit(const std::string& input) {
    std::ifstream in(input);
    if (!in) throw std::invalid_argument("fit: cannot open " + input);
    std::vector<std::pair<double, double>> pts;
    if (input.size() > 5 && input.substr(input.size() - 5) == ".json") {
        json j;
        in >> j;
        if (j.contains("outputs")) j = j["outputs"]; // full ResultRecord
        const json& arr = j.contains("points") ? j["points"] : j;
        for (const auto& p : arr) {
            const json& o = p.contains("outputs") ? p["outputs"] : p;
            double v;
            if (o.contains("mean_u"))
                v = o["mean_u"].get<double>();
            else if (o.contains("mean"))
                v = o["mean"].get<double>();
            else if (o.contains("a0"))
                v = o["a0"].get<double>();
            else
                throw std::invalid_argument("fit: no known metric in record");
            pts.emplace_back(p.at("eps").get<double>(), v);
        }
    } else {
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || !(std::isdigit(line[0]) || line[0] == '.' || line[0] == '-'))
                continue; // header
            const auto vals = parse_csv_doubles(line);
            if (vals.size() >= 2) pts.emplace_back(vals[0], vals[1]);
        }
    }
    const FitResult f = fit_scaling(pts);
    json j;
    j["slope"] = f.slope;
    j["intercept"] = f.intercept;
    j["r_squared"] = f.r_squared;
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"levylab: stable-process narrow-capture experiments"};
    app.set_config("--config", "", "INI/TOML config file; flags override file values");

    GlobalOpts g;
    app.add_option("--seed", g.seed, "global RNG seed");
    app.add_option("--threads", g.threads, "worker threads (env LEVYLAB_THREADS)");
    app.add_option("--out", g.out, "output path (stdout if empty)");
    app.add_option("--format", g.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

    int c_dim = 2;
    double c_alpha = 0.5;
    auto* cmd_constants = app.add_subcommand("constants", "closed-form constants");
    cmd_constants->add_option("--dim", c_dim, "dimension n >= 2");
    cmd_constants->add_option("--alpha", c_alpha, "stability index in (0,1)");

    SimulateOpts sim;
    auto* cmd_sim = app.add_subcommand("simulate", "Monte Carlo capture/exit times");
    cmd_sim->add_option("--manifold", sim.manifold, "torus|sphere|ball");
    cmd_sim->add_option("--dim", sim.dim, "manifold dimension");
    cmd_sim->add_option("--alpha", sim.alpha, "stability index");
    cmd_sim->add_option("--delta", sim.delta, "small-jump cutoff");
    cmd_sim->add_option("--eps", sim.eps, "target ball radius");
    cmd_sim->add_option("--target", sim.target, "target point coords (default: torus center/pole)");
    cmd_sim->add_option("--start", sim.start, "uniform | comma-separated coords");
    cmd_sim->add_option("--samples", sim.samples, "trajectory count");
    cmd_sim->add_option("--tmax-mult", sim.tmax_mult, "censoring horizon / predicted mean");
    cmd_sim->add_flag("--gaussian-correction", sim.gaussian_correction,
                      "small-jump Gaussian correction");
    cmd_sim->add_option("--trajectories", sim.trajectories_out, "per-trajectory CSV path");

    SolveTorusOpts st;
    auto* cmd_st = app.add_subcommand("solve-torus", "spectral capture solve on T^n");
    cmd_st->add_option("--dim", st.dim, "2 or 3");
    cmd_st->add_option("--alpha", st.alpha, "stability index");
    cmd_st->add_option("--eps", st.eps, "ball radius");
    cmd_st->add_option("--grid", st.grid, "points per axis (power of two)");
    cmd_st->add_option("--p0", st.p0, "ball center (default 0.5 per axis)");
    cmd_st->add_option("--dump-field", st.dump_field, "binary field dump path");

    SolveSphereOpts ss;
    auto* cmd_ss = app.add_subcommand("solve-sphere", "zonal capture solve on S^2");
    cmd_ss->add_option("--alpha", ss.alpha, "stability index");
    cmd_ss->add_option("--eps", ss.eps, "cap radius");
    cmd_ss->add_option("--degree", ss.degree, "Legendre truncation L");
    cmd_ss->add_option("--lambda-cache", ss.lambda_cache, "multiplier CSV cache path");

    double m_alpha = 0.5;
    int m_lmax = 200;
    auto* cmd_mult = app.add_subcommand("multipliers", "sphere multiplier table CSV");
    cmd_mult->add_option("--alpha", m_alpha, "stability index");
    cmd_mult->add_option("--lmax", m_lmax, "max degree");

    int b_dim = 2;
    double b_alpha = 0.5;
    std::string b_res = "standard";
    auto* cmd_ball = app.add_subcommand("ball-check", "unit-ball inverse formula residuals");
    cmd_ball->add_option("--dim", b_dim, "2 or 3");
    cmd_ball->add_option("--alpha", b_alpha, "stability index");
    cmd_ball->add_option("--resolution", b_res, "standard|high")
        ->check(CLI::IsMember({"standard", "high"}));

    SweepOpts sw;
    auto* cmd_sweep = app.add_subcommand("sweep", "eps sweep of a subcommand + scaling fit");
    cmd_sweep->add_option("--kind", sw.kind, "simulate|solve-torus|solve-sphere");
    cmd_sweep->add_option("--eps-list", sw.eps_list, "strictly decreasing eps values");
    cmd_sweep->add_option("--manifold", sim.manifold, "simulate: torus|sphere|ball");
    cmd_sweep->add_option("--dim", sim.dim, "dimension (simulate/solve-torus)");
    cmd_sweep->add_option("--alpha", sim.alpha, "stability index (simulate)");
    cmd_sweep->add_option("--delta", sim.delta, "cutoff (simulate)");
    cmd_sweep->add_option("--samples", sim.samples, "trajectories (simulate)");
    cmd_sweep->add_option("--start", sim.start, "start spec (simulate)");
    cmd_sweep->add_option("--tmax-mult", sim.tmax_mult, "censoring multiplier (simulate)");
    cmd_sweep->add_option("--torus-alpha", st.alpha, "stability index (solve-torus)");
    cmd_sweep->add_option("--grid", st.grid, "grid size (solve-torus)");
    cmd_sweep->add_option("--torus-dim", st.dim, "dimension (solve-torus)");
    cmd_sweep->add_option("--p0", st.p0, "ball center (solve-torus)");
    cmd_sweep->add_option("--sphere-alpha", ss.alpha, "stability index (solve-sphere)");
    cmd_sweep->add_option("--degree", ss.degree, "Legendre degree (solve-sphere)");
    cmd_sweep->add_option("--lambda-cache", ss.lambda_cache, "multiplier cache (solve-sphere)");

    std::string fit_input;
    auto* cmd_fit = app.add_subcommand("fit", "log-log OLS of (eps, value)");
    cmd_fit->add_option("--input", fit_input, "sweep JSON or CSV with eps,value")->required();

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        json out;
        std::string csv;
        ExperimentSpec spec;
        spec.seed = g.seed;
        spec.out_path = g.out;

        if (*cmd_constants) {
            spec.kind = "constants";
            spec.parameters = {{"dim", c_dim}, {"alpha", c_alpha}};
            out = run_constants(c_dim, c_alpha);
            csv = constants_csv(out);
        } else if (*cmd_sim) {
            spec.kind = "simulate";
            spec.parameters = {{"manifold", sim.manifold}, {"dim", sim.dim},
                               {"alpha", sim.alpha},       {"delta", sim.delta},
                               {"eps", sim.eps},           {"samples", sim.samples}};
            out = run_simulate(sim, g);
            csv = simulate_csv(out);
        } else if (*cmd_st) {
            spec.kind = "solve-torus";
            spec.parameters = {{"dim", st.dim},
                               {"alpha", st.alpha},
                               {"eps", st.eps},
                               {"grid", st.grid}};
            out = run_solve_torus(st);
            csv = out.dump(2) + "\n";
        } else if (*cmd_ss) {
            spec.kind = "solve-sphere";
            spec.parameters = {{"alpha", ss.alpha}, {"eps", ss.eps}, {"degree", ss.degree}};
            out = run_solve_sphere(ss);
            csv = out.dump(2) + "\n";
        } else if (*cmd_mult) {
            spec.kind = "multipliers";
            spec.parameters = {{"alpha", m_alpha}, {"lmax", m_lmax}};
            out = run_multipliers(m_alpha, m_lmax, g);
            std::cerr << out.dump() << "\n";
            return 0;
        } else if (*cmd_ball) {
            spec.kind = "ball-check";
            spec.parameters = {{"dim", b_dim}, {"alpha", b_alpha}, {"resolution", b_res}};
            out = run_ball_check(b_dim, b_alpha, b_res);
            csv = out.dump(2) + "\n";
        } else if (*cmd_sweep) {
            out = run_sweep(sw, sim, st, ss, g);
            csv = out.dump(2) + "\n";
            spec.kind = "sweep";
        } else if (*cmd_fit) {
            spec.kind = "fit";
            out = run_fit(fit_input);
            csv = out.dump(2) + "\n";
        }

        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const ResultRecord rec = make_record(spec, out, wall);
        emit(g, rec.to_json(), csv);
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
