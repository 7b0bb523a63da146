#include "gbo/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gbo/errors.hpp"
#include "gbo/evolution.hpp"
#include "gbo/gauge.hpp"
#include "gbo/io.hpp"
#include "gbo/lab.hpp"
#include "gbo/littlewood_paley.hpp"
#include "gbo/multipliers.hpp"
#include "gbo/norms.hpp"
#include "gbo/parallel.hpp"

namespace gbo {
namespace {

const char* kUsage =
    "usage: gbo <subcommand> [flags]\n"
    "subcommands:\n"
    "  simulate           integrate the equation from a field snapshot\n"
    "  picard             fixed-point iteration on the integral formulation\n"
    "  verify             probe a linear space-time estimate on random data\n"
    "  norms              evaluate a norm of a field or trajectory file\n"
    "  gauge-check        residual of the gauge conjugation identity\n"
    "  paraproduct-check  paraproduct + remainder vs flux derivative\n"
    "  scaling-check      homogeneous-norm scaling ratios\n"
    "  lp-energies        per-block dyadic energies of a field\n"
    "  make-data          generate seeded packet or bump snapshots\n"
    "run 'gbo <subcommand> --help' for flags\n";

struct Common {
    std::string config_path;
    std::string format = "ndjson";
    std::string report_path;
    int workers = 0;
    CLI::Option* workers_opt = nullptr;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config_path,
                    "key=value configuration file");
    sub->add_option("--format", c.format, "report format (ndjson or csv)")
        ->check(CLI::IsMember({"ndjson", "csv"}));
    sub->add_option("--report", c.report_path,
                    "write the report here instead of stdout");
    c.workers_opt = sub->add_option("--workers", c.workers, "worker threads");
}

RunConfig load_config(const Common& c) {
    if (c.config_path.empty()) return RunConfig{};
    return parse_config(read_file_bytes(c.config_path));
}

int resolve_workers(const Common& c, const RunConfig& cfg) {
    if (c.workers_opt != nullptr && c.workers_opt->count() > 0) {
        if (c.workers < 1) throw DomainError("workers: must be >= 1");
        return c.workers;
    }
    if (cfg.workers > 0) return cfg.workers;
    return default_worker_count();
}

void emit_report(const Report& r, const Common& c) {
    const std::string text = c.format == "csv" ? emit_csv(r) : emit_ndjson(r);
    if (c.report_path.empty())
        std::fwrite(text.data(), 1, text.size(), stdout);
    else
        write_file_bytes(c.report_path, text);
}

std::string config_hash(const RunConfig& cfg) {
    return sha1_hex(config_to_json(cfg).dump());
}

long steps_for(double T, double dt) {
    if (!(dt > 0.0)) throw DomainError("dt: must be positive here");
    const double exact = T / dt;
    const long steps = std::lround(exact);
    if (steps < 1 || std::abs(exact - static_cast<double>(steps)) >
                         1e-9 * std::max(1.0, exact))
        throw DomainError("T must be a positive integer multiple of dt");
    return steps;
}

// ---- simulate ----

struct SimulateOpts {
    Common common;
    std::string u0_path;
    std::string traj_out;
    std::string form = "transport";
    int k = 4;
    double T = 1.0, dt = 1e-3, sign = 1.0;
    long stride = 10;
    CLI::Option *ok = nullptr, *oT = nullptr, *odt = nullptr,
                *ostride = nullptr;
};

int handle_simulate(const SimulateOpts& o) {
    RunConfig cfg = load_config(o.common);
    if (o.ok->count()) cfg.k = o.k;
    if (o.oT->count()) cfg.T = o.T;
    if (o.odt->count()) cfg.dt = o.dt;
    if (o.ostride->count()) cfg.stride = o.stride;

    const std::string bytes = read_file_bytes(o.u0_path);
    Field u0 = read_field(o.u0_path);

    SolverConfig run;
    run.k = cfg.k;
    run.sign = o.sign;
    run.dt = cfg.dt;
    run.steps = steps_for(cfg.T, cfg.dt);
    run.stride = cfg.stride;
    run.form = o.form == "flux" ? NonlinearForm::DividedFlux
                                : NonlinearForm::TransportPower;

    Report report;
    report.command = "simulate";
    report.config = config_to_json(cfg);
    report.input_hash = sha1_hex(bytes);
    report.columns = {"frame", "t", "mass", "l2"};

    try {
        SolveResult result = solve_gbo(u0, run);
        const Trajectory& traj = result.trajectory;
        if (!o.traj_out.empty()) write_trajectory(o.traj_out, traj);
        const double L = traj.grid().period();
        for (std::size_t m = 0; m < traj.node_count(); ++m) {
            const Field& f = traj.frame(m);
            report.records.push_back(
                {{"frame", m},
                 {"t", traj.time(m)},
                 {"mass", L * mean_value(f).real()},
                 {"l2", l2_norm(f)}});
        }
        report.summary = {{"steps", run.steps},
                          {"frames", traj.node_count()},
                          {"mass_initial", result.conservation.mass_initial},
                          {"l2_squared_initial",
                           result.conservation.l2_squared_initial},
                          {"mass_drift", result.conservation.mass_drift},
                          {"l2_drift", result.conservation.l2_drift},
                          {"warnings", result.warnings}};
        emit_report(report, o.common);
        return 0;
    } catch (const BlowUpError& e) {
        report.summary = {{"error", e.what()},
                          {"last_valid_time", e.last_valid_time()}};
        emit_report(report, o.common);
        return 2;
    }
}

// ---- picard ----

struct PicardOpts {
    Common common;
    std::string u0_path;
    double amp = 0.05;
    bool split = false;
    PicardConfig pc;
    CLI::Option *ok = nullptr, *oT = nullptr, *oeps = nullptr;
};

int handle_picard(const PicardOpts& o) {
    RunConfig cfg = load_config(o.common);
    if (o.ok->count()) cfg.k = o.pc.k;
    if (o.oT->count()) cfg.T = o.pc.T;
    if (o.oeps->count()) cfg.eps = o.pc.eps;

    PicardConfig pc = o.pc;
    pc.k = cfg.k;
    pc.T = cfg.T;
    pc.eps = cfg.eps;
    pc.J = cfg.J;
    pc.Jsim = cfg.Jsim;
    pc.split_mode = o.split;

    std::string hash;
    std::optional<Field> u0;
    if (!o.u0_path.empty()) {
        hash = sha1_hex(read_file_bytes(o.u0_path));
        u0 = read_field(o.u0_path);
    } else {
        hash = config_hash(cfg);
        SpectralGrid grid(static_cast<std::size_t>(cfg.n), cfg.period);
        u0 = standard_bump(grid, o.amp);
    }

    Report report;
    report.command = "picard";
    report.config = config_to_json(cfg);
    report.input_hash = hash;
    report.columns = {"iteration", "residual_y", "dist_u0", "x_sknorm",
                      "inside_ball"};

    PicardReport pr;
    std::string error;
    int code = 0;
    try {
        pr = picard_solve(*u0, pc);
    } catch (const NonContractionError& e) {
        pr = e.report();
        error = e.what();
        code = 2;
    }
    for (const auto& it : pr.iterates)
        report.records.push_back({{"iteration", it.iteration},
                                  {"residual_y", it.residual_y},
                                  {"dist_u0", it.dist_u0},
                                  {"x_sknorm", it.x_sknorm},
                                  {"inside_ball", it.inside_ball}});
    report.summary = {{"k", pr.k},
                      {"T", pr.T},
                      {"split_mode", pr.split_mode},
                      {"delta", pr.delta},
                      {"iterations", pr.iterates.size()},
                      {"converged", pr.converged},
                      {"final_residual", pr.final_residual},
                      {"contraction_factor", pr.contraction_factor},
                      {"gbo_sup_l2_diff", pr.gbo_sup_l2_diff}};
    if (!error.empty()) report.summary["error"] = error;
    emit_report(report, o.common);
    return code;
}

// ---- verify ----

struct VerifyOpts {
    Common common;
    std::string estimate;
    EstimateConfig ec;
    CLI::Option *ok = nullptr, *oT = nullptr, *oseed = nullptr,
                *on = nullptr, *opd = nullptr, *oeps = nullptr;
};

int handle_verify(const VerifyOpts& o) {
    RunConfig cfg = load_config(o.common);
    if (o.ok->count()) cfg.k = o.ec.k;
    if (o.oT->count()) cfg.T = o.ec.T;
    if (o.oseed->count()) cfg.seed = o.ec.seed;
    if (o.on->count()) cfg.n = o.ec.grid_size;
    if (o.opd->count()) cfg.period = o.ec.period;
    if (o.oeps->count()) cfg.eps = o.ec.eps;

    EstimateConfig ec = o.ec;
    ec.id = estimate_from_name(o.estimate);
    ec.k = cfg.k;
    ec.T = cfg.T;
    ec.seed = cfg.seed;
    ec.grid_size = cfg.n;
    ec.period = cfg.period;
    ec.eps = cfg.eps;
    ec.workers = resolve_workers(o.common, cfg);

    EstimateReport er = verify_linear_estimate(ec);

    Report report;
    report.command = "verify";
    report.config = config_to_json(cfg);
    report.input_hash = config_hash(cfg);
    report.columns = {"trial", "octave", "lambda", "ratio"};
    for (const auto& row : er.rows)
        report.records.push_back({{"trial", row.trial},
                                  {"octave", row.octave},
                                  {"lambda", row.lambda},
                                  {"ratio", row.ratio}});
    report.summary = {{"id", er.id},
                      {"seed", er.seed},
                      {"trials", er.trials},
                      {"octaves", er.octaves},
                      {"max_ratio", er.max_ratio},
                      {"median_ratio", er.median_ratio},
                      {"per_scale_max", er.per_scale_max},
                      {"scale_spread", er.scale_spread}};
    emit_report(report, o.common);
    return 0;
}

// ---- norms ----

struct NormsOpts {
    Common common;
    std::string traj_path, field_path, spec;
    NormSpec ns;
    CLI::Option *oeps = nullptr;
};

int handle_norms(const NormsOpts& o) {
    RunConfig cfg = load_config(o.common);
    if (o.oeps->count()) cfg.eps = o.ns.eps;

    NormSpec ns = o.ns;
    ns.kind = norm_kind_from_string(o.spec);
    ns.eps = cfg.eps;

    if (o.traj_path.empty() == o.field_path.empty())
        throw DomainError("pass exactly one of --traj or --field");

    std::string bytes;
    std::optional<Trajectory> u;
    if (!o.traj_path.empty()) {
        bytes = read_file_bytes(o.traj_path);
        u = read_trajectory(o.traj_path);
    } else {
        if (ns.kind != NormKind::SobolevHom &&
            ns.kind != NormKind::SobolevInhom)
            throw DomainError(
                "a time-dependent norm needs --traj; --field supports "
                "sobolev_hom and sobolev_inhom");
        bytes = read_file_bytes(o.field_path);
        Field f = read_field(o.field_path);
        u = constant_trajectory(f, 0.0, 1.0, 2);
    }

    const double value = evaluate_norm(ns, *u);

    nlohmann::json params{{"s", ns.s},     {"theta", ns.theta},
                          {"eps", ns.eps}, {"p", ns.p},
                          {"q", ns.q},     {"r", ns.r},
                          {"k", ns.k}};
    Report report;
    report.command = "norms";
    report.config = config_to_json(cfg);
    report.input_hash = sha1_hex(bytes);
    report.columns = {"spec", "value"};
    report.records.push_back({{"spec", o.spec}, {"value", value}});
    report.summary = {{"spec", o.spec}, {"value", value}, {"params", params}};
    emit_report(report, o.common);
    return 0;
}

// ---- gauge-check ----

struct GaugeOpts {
    Common common;
    std::string u0_path;
    int j = 0;
    int k = 4;
    int nodes = 65;
    double dt = 1e-4;
    std::uint64_t seed = 7;
    int jmax_scan = 6;
    CLI::Option *ok = nullptr, *oseed = nullptr;
};

int handle_gauge_check(const GaugeOpts& o) {
    RunConfig cfg = load_config(o.common);
    if (o.ok->count()) cfg.k = o.k;
    if (o.oseed->count()) cfg.seed = o.seed;

    const std::string bytes = read_file_bytes(o.u0_path);
    Field u0 = read_field(o.u0_path);
    const BlockRange range = BlockRange::for_grid(u0.grid(), cfg.J, cfg.Jsim);

    const Field b = gauge_coefficient(u0, o.j, cfg.k, range);

    // Window-localized complex test wave; the Schrodinger flow keeps it away
    // from the boundary over this short horizon.
    SamplerConfig sampler;
    Field psi = random_packets(u0.grid(), sampler, cfg.seed, 0);
    std::vector<Field> frames;
    frames.reserve(static_cast<std::size_t>(o.nodes));
    for (int m = 0; m < o.nodes; ++m)
        frames.push_back(free_propagate(static_cast<double>(m) * o.dt, psi,
                                        Dispersion::Schrodinger));
    Trajectory v(0.0, o.dt, std::move(frames));

    const double residual = conjugation_residual(v, b, std::nullopt);
    const std::vector<double> scan =
        gauge_smallness_scan(u0, o.j, cfg.k, o.jmax_scan);

    Report report;
    report.command = "gauge-check";
    report.config = config_to_json(cfg);
    report.input_hash = sha1_hex(bytes);
    report.columns = {"J", "smallness"};
    for (std::size_t i = 0; i < scan.size(); ++i)
        report.records.push_back(
            {{"J", i + 1}, {"smallness", scan[i]}});
    report.summary = {{"j", o.j},
                      {"k", cfg.k},
                      {"meanB", mean_value(b).real()},
                      {"residual", residual},
                      {"dt", o.dt},
                      {"nodes", o.nodes}};
    emit_report(report, o.common);
    return 0;
}

// ---- paraproduct-check ----

struct ParaOpts {
    Common common;
    int k = 4;
    int trials = 5;
    std::uint64_t seed = 7;
    int n = 256;
    CLI::Option *ok = nullptr, *oseed = nullptr, *on = nullptr;
};

int handle_paraproduct_check(const ParaOpts& o) {
    RunConfig cfg = load_config(o.common);
    if (o.ok->count()) cfg.k = o.k;
    if (o.oseed->count()) cfg.seed = o.seed;
    if (o.on->count()) cfg.n = o.n;

    SpectralGrid grid(static_cast<std::size_t>(cfg.n), cfg.period);
    const BlockRange range = BlockRange::for_grid(grid, cfg.J, cfg.Jsim);
    SamplerConfig sampler;

    Report report;
    report.command = "paraproduct-check";
    report.config = config_to_json(cfg);
    report.input_hash = config_hash(cfg);
    report.columns = {"trial", "residual"};

    const double tolerance = 1e-8;
    double worst = 0.0;
    for (int trial = 0; trial < o.trials; ++trial) {
        Field u = random_packets(grid, sampler, cfg.seed,
                                 static_cast<std::uint64_t>(trial));
        Field flux = derivative(dealiased_power(u, cfg.k + 1));
        Field lhs = paraproduct(u, u, cfg.k, range) -
                    nonlinear_remainder(u, cfg.k, range);
        const double rel =
            l2_distance(lhs, flux) / std::max(l2_norm(flux), 1e-300);
        worst = std::max(worst, rel);
        report.records.push_back({{"trial", trial}, {"residual", rel}});
    }
    const bool pass = worst <= tolerance;
    report.summary = {{"k", cfg.k},
                      {"trials", o.trials},
                      {"max_residual", worst},
                      {"tolerance", tolerance},
                      {"pass", pass}};
    emit_report(report, o.common);
    return pass ? 0 : 2;
}

// ---- scaling-check ----

struct ScalingOpts {
    Common common;
    int k = 4;
    std::vector<double> lambdas = {2.0};
    std::vector<double> exponents;
    bool solver = false;
    double amp = 1.0;
    CLI::Option *ok = nullptr;
};

int handle_scaling_check(const ScalingOpts& o) {
    RunConfig cfg = load_config(o.common);
    if (o.ok->count()) cfg.k = o.k;

    ScalingConfig sc;
    sc.k = cfg.k;
    sc.octaves.clear();
    for (double lambda : o.lambdas) {
        const double oct = std::log2(lambda);
        const int rounded = static_cast<int>(std::lround(oct));
        if (rounded < 1 || std::abs(oct - rounded) > 1e-12)
            throw DomainError("lambda: must be a power of two >= 2");
        sc.octaves.push_back(rounded);
    }
    sc.exponents = o.exponents.empty()
                       ? std::vector<double>{critical_index(cfg.k)}
                       : o.exponents;
    sc.check_solver = o.solver;

    SpectralGrid grid(static_cast<std::size_t>(cfg.n), cfg.period);
    Field base = standard_bump(grid, o.amp);
    ScalingReport sr = scaling_check(base, sc);

    Report report;
    report.command = "scaling-check";
    report.config = config_to_json(cfg);
    report.input_hash = config_hash(cfg);
    report.columns = {"octave", "lambda",         "s",
                      "measured_ratio", "expected_ratio", "rel_error",
                      "pass"};
    for (const auto& row : sr.rows)
        report.records.push_back({{"octave", row.octave},
                                  {"lambda", row.lambda},
                                  {"s", row.s},
                                  {"measured_ratio", row.measured_ratio},
                                  {"expected_ratio", row.expected_ratio},
                                  {"rel_error", row.rel_error},
                                  {"pass", row.pass}});
    report.summary = {{"k", sr.k},
                      {"norms_pass", sr.norms_pass},
                      {"solver_checked", sr.solver_checked},
                      {"solver_max_rel_error", sr.solver_max_rel_error},
                      {"solver_pass", sr.solver_pass}};
    emit_report(report, o.common);
    const bool ok = sr.norms_pass && (!sr.solver_checked || sr.solver_pass);
    return ok ? 0 : 2;
}

// ---- lp-energies ----

struct LpOpts {
    Common common;
    std::string field_path;
    double s = 0.0;
};

int handle_lp_energies(const LpOpts& o) {
    RunConfig cfg = load_config(o.common);
    const std::string bytes = read_file_bytes(o.field_path);
    Field f = read_field(o.field_path);
    const BlockRange range = BlockRange::for_grid(f.grid(), cfg.J, cfg.Jsim);

    Report report;
    report.command = "lp-energies";
    report.config = config_to_json(cfg);
    report.input_hash = sha1_hex(bytes);
    report.columns = {"j", "energy"};
    for (int j = range.jmin; j <= range.jmax; ++j)
        report.records.push_back(
            {{"j", j},
             {"energy",
              std::pow(2.0, o.s * j) * l2_norm(block(j, f))}});
    report.summary = {{"s", o.s}, {"jmin", range.jmin}, {"jmax", range.jmax}};
    emit_report(report, o.common);
    return 0;
}

// ---- make-data ----

struct MakeOpts {
    Common common;
    std::string kind = "packets";
    std::string out;
    std::uint64_t seed = 7;
    std::uint64_t trial = 0;
    double amp = 1.0;
    int n = 0;
    double period = 0.0;
    CLI::Option *oseed = nullptr, *on = nullptr, *opd = nullptr;
};

int handle_make_data(const MakeOpts& o) {
    RunConfig cfg = load_config(o.common);
    if (o.oseed->count()) cfg.seed = o.seed;
    if (o.on->count()) cfg.n = o.n;
    if (o.opd->count()) cfg.period = o.period;

    SpectralGrid grid(static_cast<std::size_t>(cfg.n), cfg.period);
    SamplerConfig sampler;
    sampler.amplitude = o.amp;
    Field f = o.kind == "bump" ? standard_bump(grid, o.amp)
                               : random_packets(grid, sampler, cfg.seed,
                                                o.trial);
    write_field(o.out, f);

    Report report;
    report.command = "make-data";
    report.config = config_to_json(cfg);
    report.input_hash = config_hash(cfg);
    report.summary = {{"kind", o.kind},
                      {"n", cfg.n},
                      {"period", cfg.period},
                      {"l2", l2_norm(f)},
                      {"linf", linf_norm(f)},
                      {"file_hash", sha1_hex(read_file_bytes(o.out))}};
    emit_report(report, o.common);
    return 0;
}

}  // namespace

int run_gbo_cli(std::vector<std::string> args) {
    static const std::set<std::string> known = {
        "simulate",      "picard",        "verify",
        "norms",         "gauge-check",   "paraproduct-check",
        "scaling-check", "lp-energies",   "make-data"};
    if (args.empty()) {
        std::fputs(kUsage, stderr);
        return 64;
    }
    if (args[0][0] != '-' && known.count(args[0]) == 0) {
        std::fprintf(stderr, "unknown subcommand '%s'\n", args[0].c_str());
        std::fputs(kUsage, stderr);
        return 64;
    }

    CLI::App app{"Pseudospectral laboratory for the generalized "
                 "Benjamin-Ono family"};
    app.require_subcommand(1);
    int rc = 0;

    SimulateOpts sim;
    {
        CLI::App* sub = app.add_subcommand(
            "simulate", "integrate the equation from a field snapshot");
        add_common(sub, sim.common);
        sub->add_option("--u0", sim.u0_path, "input field snapshot")
            ->required();
        sub->add_option("--out", sim.traj_out, "trajectory output path");
        sim.ok = sub->add_option("--k", sim.k, "nonlinearity degree");
        sim.oT = sub->add_option("--T", sim.T, "horizon");
        sim.odt = sub->add_option("--dt", sim.dt, "time step");
        sim.ostride = sub->add_option("--stride", sim.stride,
                                      "record every stride-th step");
        sub->add_option("--sign", sim.sign, "sign of the transport term");
        sub->add_option("--form", sim.form, "nonlinearity form")
            ->check(CLI::IsMember({"transport", "flux"}));
        sub->callback([&]() { rc = handle_simulate(sim); });
    }

    PicardOpts pic;
    {
        CLI::App* sub = app.add_subcommand(
            "picard", "fixed-point iteration on the integral formulation");
        add_common(sub, pic.common);
        sub->add_option("--u0", pic.u0_path,
                        "field snapshot (default: seeded bump)");
        sub->add_option("--amp", pic.amp, "bump amplitude when no --u0");
        pic.ok = sub->add_option("--k", pic.pc.k, "nonlinearity degree");
        pic.oT = sub->add_option("--T", pic.pc.T, "horizon");
        pic.oeps = sub->add_option("--eps", pic.pc.eps, "index parameter");
        sub->add_option("--nodes", pic.pc.time_nodes, "time intervals");
        sub->add_option("--tol", pic.pc.tol, "residual tolerance");
        sub->add_option("--max-iter", pic.pc.max_iter, "iteration cap");
        sub->add_option("--delta", pic.pc.delta,
                        "contraction ball radius (0 = measured)");
        sub->add_option("--sign", pic.pc.sign, "sign of the transport term");
        sub->add_option("--substeps", pic.pc.gbo_substeps,
                        "solver substeps per interval");
        sub->add_flag("--split", pic.split,
                      "iterate through the paradifferential equation");
        sub->callback([&]() { rc = handle_picard(pic); });
    }

    VerifyOpts ver;
    {
        CLI::App* sub = app.add_subcommand(
            "verify", "probe a linear space-time estimate on random data");
        add_common(sub, ver.common);
        sub->add_option("--estimate", ver.estimate,
                        "est0 est1 est2 low_freq_maximal block_maximal "
                        "admissible retarded retarded_admissible "
                        "besov_retarded l3_k3")
            ->required();
        sub->add_option("--alpha", ver.ec.triple.alpha, "derivative order");
        sub->add_option("--p", ver.ec.triple.p, "spatial exponent");
        sub->add_option("--q", ver.ec.triple.q, "temporal exponent");
        sub->add_option("--s", ver.ec.s, "Sobolev index (l3_k3)");
        sub->add_option("--trials", ver.ec.trials, "random trials");
        sub->add_option("--octaves", ver.ec.octaves, "rescaling octaves");
        sub->add_option("--nodes", ver.ec.time_nodes, "time nodes");
        ver.ok = sub->add_option("--k", ver.ec.k, "nonlinearity degree");
        ver.oT = sub->add_option("--T", ver.ec.T, "horizon");
        ver.oseed = sub->add_option("--seed", ver.ec.seed, "random seed");
        ver.on = sub->add_option("--n", ver.ec.grid_size, "grid size");
        ver.opd = sub->add_option("--period", ver.ec.period, "box period");
        ver.oeps = sub->add_option("--eps", ver.ec.eps, "index parameter");
        sub->callback([&]() { rc = handle_verify(ver); });
    }

    NormsOpts nrm;
    {
        CLI::App* sub = app.add_subcommand(
            "norms", "evaluate a norm of a field or trajectory file");
        add_common(sub, nrm.common);
        sub->add_option("--traj", nrm.traj_path, "trajectory file");
        sub->add_option("--field", nrm.field_path, "field snapshot");
        sub->add_option("--spec", nrm.spec,
                        "mixed_xt mixed_tx sobolev_hom sobolev_inhom besov "
                        "S_space N_space X_space Y_norm X_space_k3")
            ->required();
        sub->add_option("--s", nrm.ns.s, "regularity index");
        sub->add_option("--theta", nrm.ns.theta, "interpolation parameter");
        nrm.oeps = sub->add_option("--eps", nrm.ns.eps, "index parameter");
        sub->add_option("--p", nrm.ns.p, "spatial exponent");
        sub->add_option("--q", nrm.ns.q, "temporal exponent");
        sub->add_option("--r", nrm.ns.r, "block-sum exponent");
        sub->add_option("--k", nrm.ns.k, "nonlinearity degree");
        sub->callback([&]() { rc = handle_norms(nrm); });
    }

    GaugeOpts gau;
    {
        CLI::App* sub = app.add_subcommand(
            "gauge-check", "residual of the gauge conjugation identity");
        add_common(sub, gau.common);
        sub->add_option("--u0", gau.u0_path, "field snapshot")->required();
        sub->add_option("--j", gau.j, "dyadic block index")->required();
        gau.ok = sub->add_option("--k", gau.k, "nonlinearity degree");
        sub->add_option("--nodes", gau.nodes, "time nodes")
            ->check(CLI::Range(3, 100000));
        sub->add_option("--dt", gau.dt, "time step");
        gau.oseed = sub->add_option("--seed", gau.seed, "random seed");
        sub->add_option("--jmax-scan", gau.jmax_scan,
                        "scan depth of the smallness hook");
        sub->callback([&]() { rc = handle_gauge_check(gau); });
    }

    ParaOpts par;
    {
        CLI::App* sub = app.add_subcommand(
            "paraproduct-check",
            "paraproduct + remainder vs flux derivative");
        add_common(sub, par.common);
        par.ok = sub->add_option("--k", par.k, "nonlinearity degree");
        sub->add_option("--trials", par.trials, "random trials");
        par.oseed = sub->add_option("--seed", par.seed, "random seed");
        par.on = sub->add_option("--n", par.n, "grid size");
        sub->callback([&]() { rc = handle_paraproduct_check(par); });
    }

    ScalingOpts sca;
    {
        CLI::App* sub = app.add_subcommand(
            "scaling-check", "homogeneous-norm scaling ratios");
        add_common(sub, sca.common);
        sca.ok = sub->add_option("--k", sca.k, "nonlinearity degree");
        sub->add_option("--lambda", sca.lambdas,
                        "scale factors (powers of two)");
        sub->add_option("--s", sca.exponents, "Sobolev indices");
        sub->add_option("--amp", sca.amp, "bump amplitude");
        sub->add_flag("--solver", sca.solver,
                      "also check solver commutation with rescaling");
        sub->callback([&]() { rc = handle_scaling_check(sca); });
    }

    LpOpts lpe;
    {
        CLI::App* sub = app.add_subcommand(
            "lp-energies", "per-block dyadic energies of a field");
        lpe.common.format = "csv";
        add_common(sub, lpe.common);
        sub->add_option("--field", lpe.field_path, "field snapshot")
            ->required();
        sub->add_option("--s", lpe.s, "weight exponent");
        sub->callback([&]() { rc = handle_lp_energies(lpe); });
    }

    MakeOpts mk;
    {
        CLI::App* sub = app.add_subcommand(
            "make-data", "generate seeded packet or bump snapshots");
        add_common(sub, mk.common);
        sub->add_option("--kind", mk.kind, "packets or bump")
            ->check(CLI::IsMember({"packets", "bump"}));
        sub->add_option("--out", mk.out, "field output path")->required();
        mk.oseed = sub->add_option("--seed", mk.seed, "random seed");
        sub->add_option("--trial", mk.trial, "sampler stream index");
        sub->add_option("--amp", mk.amp, "target L2 norm");
        mk.on = sub->add_option("--n", mk.n, "grid size");
        mk.opd = sub->add_option("--period", mk.period, "box period");
        sub->callback([&]() { rc = handle_make_data(mk); });
    }

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("gbo");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const BlowUpError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const NonContractionError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return rc;
}

}  // namespace gbo
