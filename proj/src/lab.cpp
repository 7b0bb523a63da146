#include "gbo/lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gbo/fft.hpp"
#include "gbo/littlewood_paley.hpp"
#include "gbo/multipliers.hpp"
#include "gbo/parallel.hpp"

namespace gbo {

namespace {

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    std::size_t mid = v.size() / 2;
    if (v.size() % 2 == 1) return v[mid];
    return 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

double critical_index(int k) {
    if (k < 1) throw DomainError("critical_index requires k >= 1");
    return 0.5 - 1.0 / static_cast<double>(k);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream) {
    state_ = seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
    for (int i = 0; i < 4; ++i) next();  // decorrelate nearby seeds
}

// splitmix64: full 64-bit period increment walk with avalanche mixing.
// Chosen over std:: distributions, whose output is not pinned by the
// standard, so streams replay bit-identically everywhere.
std::uint64_t RandomStream::next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double RandomStream::uniform(double a, double b) {
    double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return a + (b - a) * u;
}

std::int64_t RandomStream::uniform_int(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw DomainError("uniform_int requires lo <= hi");
    std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(next());  // full span
    return lo + static_cast<std::int64_t>(next() % range);
}

namespace {

// Zero every mode outside |m| <= band_fraction * n along with the mean and
// the Nyquist slot, then return the (still real) samples.
Field band_limit(const Field& f, double band_fraction) {
    const SpectralGrid& grid = f.grid();
    SpectralField c = forward_transform(f);
    const long keep =
        static_cast<long>(band_fraction * static_cast<double>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        long m = grid.mode(i);
        if (m == 0 || std::labs(m) > keep || i == grid.nyquist_slot())
            c[i] = complexd(0.0, 0.0);
    }
    // The cut can land deep in a spectral tail, leaving coefficients below
    // the transform noise floor of the full-size input; projecting out the
    // non-Hermitian noise keeps the synthesis exactly real at any depth.
    return inverse_transform_real(hermitian_project(c));
}

}  // namespace

Field random_packets(const SpectralGrid& grid, const SamplerConfig& cfg,
                     std::uint64_t seed, std::uint64_t trial) {
    if (cfg.min_packets < 1 || cfg.max_packets < cfg.min_packets)
        throw DomainError("sampler requires 1 <= min_packets <= max_packets");
    if (!(cfg.amplitude > 0.0))
        throw DomainError("sampler amplitude must be positive");
    if (!(cfg.band_fraction > 0.0) || cfg.band_fraction > 0.5)
        throw DomainError("band_fraction must lie in (0, 1/2]");
    if (cfg.carrier_jmin > cfg.carrier_jmax)
        throw DomainError("carrier octaves must satisfy jmin <= jmax");

    RandomStream rng(seed, trial);
    const double L = grid.period();
    const double dx = grid.dx();
    const std::size_t n = grid.size();

    // Carriers are clamped into the retained band so no draw can place all
    // packets beyond the low-pass edge.
    const double unit = 2.0 * std::numbers::pi / L;
    const double edge = cfg.band_fraction * static_cast<double>(n) * unit;
    const double xi_lo = std::min(unit, 0.75 * edge);
    const double xi_hi = std::max(xi_lo, 0.75 * edge);

    double sig_hi = L / 32.0;
    double sig_lo = std::min(4.0 * dx, sig_hi);

    const int packets =
        static_cast<int>(rng.uniform_int(cfg.min_packets, cfg.max_packets));
    std::vector<double> vals(n, 0.0);
    for (int p = 0; p < packets; ++p) {
        const double center = L * rng.uniform(0.35, 0.65);
        const double sigma =
            sig_lo * std::pow(sig_hi / sig_lo, rng.uniform(0.0, 1.0));
        const int jc =
            static_cast<int>(rng.uniform_int(cfg.carrier_jmin, cfg.carrier_jmax));
        double xi = std::ldexp(1.0, jc) * (1.0 + rng.uniform(-0.25, 0.25));
        xi = std::clamp(xi, xi_lo, xi_hi);
        const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double amp = rng.uniform(0.5, 1.5);
        for (std::size_t i = 0; i < n; ++i) {
            const double y = grid.node(i) - center;
            vals[i] += amp * std::exp(-y * y / (2.0 * sigma * sigma)) *
                       std::cos(xi * y + phase);
        }
    }

    Field out = band_limit(Field::from_real(grid, vals), cfg.band_fraction);
    const double nrm = l2_norm(out);
    if (!(nrm > 1e-12))
        throw StructuralError("sampler produced an empty field; widen the band");
    return (cfg.amplitude / nrm) * out;
}

Field standard_bump(const SpectralGrid& grid, double amplitude) {
    if (!(amplitude > 0.0))
        throw DomainError("bump amplitude must be positive");
    const double L = grid.period();
    const double center = 0.5 * L;
    const double sigma = L / 40.0;
    const double xi0 = std::max(1.0, 4.0 * std::numbers::pi / L);
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double y = grid.node(i) - center;
        vals[i] = std::exp(-y * y / (2.0 * sigma * sigma)) * std::cos(xi0 * y);
    }
    Field out = band_limit(Field::from_real(grid, vals), 0.125);
    const double nrm = l2_norm(out);
    if (!(nrm > 1e-12))
        throw StructuralError("bump collapsed under the band limit");
    return (amplitude / nrm) * out;
}

Field rescale(const Field& base, int octave, int k) {
    if (k < 1) throw DomainError("rescale requires k >= 1");
    if (octave < 0) throw DomainError("rescale requires octave >= 0");
    const double lambda = std::ldexp(1.0, octave);
    SpectralGrid shrunk(base.grid().size(), base.grid().period() / lambda);
    const double factor = std::pow(lambda, 1.0 / static_cast<double>(k));
    std::vector<complexd> vals = base.values();
    for (auto& v : vals) v *= factor;
    return Field(shrunk, std::move(vals), base.tag());
}

ScalingReport scaling_check(const Field& base, const ScalingConfig& cfg) {
    if (cfg.k < 3) throw DomainError("scaling_check requires k >= 3");
    if (cfg.octaves.empty() || cfg.exponents.empty())
        throw DomainError("scaling_check needs octaves and exponents");
    if (!(cfg.tol > 0.0)) throw DomainError("tol must be positive");

    ScalingReport report;
    report.k = cfg.k;
    bool all_pass = true;
    for (int o : cfg.octaves) {
        if (o < 1) throw DomainError("octaves must be >= 1");
        const double lambda = std::ldexp(1.0, o);
        const Field scaled = rescale(base, o, cfg.k);
        for (double s : cfg.exponents) {
            ScalingRow row;
            row.octave = o;
            row.lambda = lambda;
            row.s = s;
            const double denom = sobolev_norm(base, s, true);
            row.measured_ratio = sobolev_norm(scaled, s, true) / denom;
            row.expected_ratio =
                std::pow(lambda, s + 1.0 / static_cast<double>(cfg.k) - 0.5);
            row.rel_error =
                std::abs(row.measured_ratio / row.expected_ratio - 1.0);
            row.pass = std::isfinite(row.rel_error) && row.rel_error <= cfg.tol;
            all_pass = all_pass && row.pass;
            report.rows.push_back(row);
        }
    }
    report.norms_pass = all_pass;

    if (cfg.check_solver) {
        const int o = cfg.octaves.front();
        const double lambda = std::ldexp(1.0, o);
        long steps = static_cast<long>(
            std::ceil(cfg.solver_T / cfg.solver_dt / 8.0) * 8.0);
        if (steps < 8) steps = 8;
        const double dt = cfg.solver_T / static_cast<double>(steps);

        SolverConfig run;
        run.k = cfg.k;
        run.dt = dt;
        run.steps = steps;
        run.stride = steps / 8;
        SolveResult coarse = solve_gbo(base, run);

        SolverConfig run2 = run;
        run2.dt = dt / (lambda * lambda);
        SolveResult fine = solve_gbo(rescale(base, o, cfg.k), run2);

        const double factor =
            std::pow(lambda, 1.0 / static_cast<double>(cfg.k));
        double worst = 0.0;
        for (std::size_t m = 0; m < coarse.trajectory.node_count(); ++m) {
            const Field want = factor * Field(fine.trajectory.grid(),
                                              coarse.trajectory.frame(m).values(),
                                              Parity::Real);
            const double scale = std::max(l2_norm(want), 1e-300);
            worst = std::max(
                worst, l2_distance(want, fine.trajectory.frame(m)) / scale);
        }
        report.solver_checked = true;
        report.solver_max_rel_error = worst;
        report.solver_pass = worst <= cfg.solver_tol;
    }
    return report;
}

std::string estimate_name(EstimateId id) {
    switch (id) {
        case EstimateId::Est0: return "est0";
        case EstimateId::Est1: return "est1";
        case EstimateId::Est2: return "est2";
        case EstimateId::LowFreqMaximal: return "low_freq_maximal";
        case EstimateId::BlockMaximal: return "block_maximal";
        case EstimateId::Admissible: return "admissible";
        case EstimateId::Retarded: return "retarded";
        case EstimateId::RetardedAdmissible: return "retarded_admissible";
        case EstimateId::BesovRetarded: return "besov_retarded";
        case EstimateId::L3K3: return "l3_k3";
    }
    throw DomainError("unknown estimate id");
}

EstimateId estimate_from_name(const std::string& name) {
    static const std::pair<const char*, EstimateId> table[] = {
        {"est0", EstimateId::Est0},
        {"est1", EstimateId::Est1},
        {"est2", EstimateId::Est2},
        {"low_freq_maximal", EstimateId::LowFreqMaximal},
        {"block_maximal", EstimateId::BlockMaximal},
        {"admissible", EstimateId::Admissible},
        {"retarded", EstimateId::Retarded},
        {"retarded_admissible", EstimateId::RetardedAdmissible},
        {"besov_retarded", EstimateId::BesovRetarded},
        {"l3_k3", EstimateId::L3K3},
    };
    for (const auto& [key, id] : table)
        if (name == key) return id;
    throw DomainError("unknown estimate name: " + name);
}

namespace {

bool needs_forcing_family(EstimateId id) {
    return id == EstimateId::Retarded ||
           id == EstimateId::RetardedAdmissible ||
           id == EstimateId::BesovRetarded;
}

// The forcing family V(t)psi1 + cos(omega * t/T) psi2 transforms covariantly
// under the rescaling (grid period / lambda, horizon / lambda^2), so the
// retarded estimates see the same family at every scale.
Trajectory forcing_family(const Field& psi1, const Field& psi2, double omega,
                          double dt, int nodes) {
    std::vector<Field> frames;
    frames.reserve(static_cast<std::size_t>(nodes));
    const double denom = static_cast<double>(nodes - 1);
    for (int m = 0; m < nodes; ++m) {
        const double t = static_cast<double>(m) * dt;
        const double weight = std::cos(omega * static_cast<double>(m) / denom);
        frames.push_back(free_propagate(t, psi1) + weight * psi2);
    }
    return Trajectory(0.0, dt, std::move(frames));
}

double one_estimate_ratio(const EstimateConfig& cfg, const Field& phi,
                          const std::optional<Field>& psi1,
                          const std::optional<Field>& psi2, double omega,
                          double horizon) {
    const int nodes = cfg.time_nodes;
    const double dt = horizon / static_cast<double>(nodes - 1);
    switch (cfg.id) {
        case EstimateId::Est0: {
            Trajectory u = free_trajectory(phi, 0.0, dt, nodes);
            return mixed_norm_tx(u, kInfinity, 2.0) / l2_norm(phi);
        }
        case EstimateId::Est1: {
            Trajectory u =
                free_trajectory(frac_derivative(phi, 0.5), 0.0, dt, nodes);
            return mixed_norm_xt(u, kInfinity, 2.0) / l2_norm(phi);
        }
        case EstimateId::Est2: {
            Trajectory u =
                free_trajectory(frac_derivative(phi, -0.25), 0.0, dt, nodes);
            return mixed_norm_xt(u, 4.0, kInfinity) / l2_norm(phi);
        }
        case EstimateId::LowFreqMaximal: {
            Trajectory u = free_trajectory(block_upto(0, phi), 0.0, dt, nodes);
            return mixed_norm_xt(u, 2.0, kInfinity) / l2_norm(phi);
        }
        case EstimateId::BlockMaximal: {
            BlockRange range = BlockRange::for_grid(phi.grid());
            const double total = l2_norm(phi);
            double best = 0.0;
            for (int j = std::max(0, range.jmin); j <= range.jmax; ++j) {
                Field pj = block(j, phi);
                const double nj = l2_norm(pj);
                if (nj < 1e-10 * total) continue;
                Trajectory u = free_trajectory(pj, 0.0, dt, nodes);
                const double r = std::pow(2.0, -0.5 * j) *
                                 mixed_norm_xt(u, 2.0, kInfinity) / nj;
                best = std::max(best, r);
            }
            return best;
        }
        case EstimateId::Admissible: {
            Trajectory u = free_trajectory(
                frac_derivative(phi, cfg.triple.alpha), 0.0, dt, nodes);
            return mixed_norm_xt(u, cfg.triple.p, cfg.triple.q) / l2_norm(phi);
        }
        case EstimateId::Retarded: {
            Trajectory f = forcing_family(*psi1, *psi2, omega, dt, nodes);
            Trajectory F = duhamel(f);
            std::vector<Field> dframes;
            dframes.reserve(F.node_count());
            for (std::size_t m = 0; m < F.node_count(); ++m)
                dframes.push_back(frac_derivative(F.frame(m), 0.5));
            Trajectory DF(0.0, dt, std::move(dframes));
            return mixed_norm_tx(DF, kInfinity, 2.0) /
                   mixed_norm_xt(f, 1.0, 2.0);
        }
        case EstimateId::RetardedAdmissible: {
            Trajectory f = forcing_family(*psi1, *psi2, omega, dt, nodes);
            Trajectory F = duhamel(f);
            std::vector<Field> dframes;
            dframes.reserve(F.node_count());
            for (std::size_t m = 0; m < F.node_count(); ++m)
                dframes.push_back(
                    frac_derivative(F.frame(m), cfg.triple.alpha + 0.5));
            Trajectory DF(0.0, dt, std::move(dframes));
            return mixed_norm_xt(DF, cfg.triple.p, cfg.triple.q) /
                   mixed_norm_xt(f, 1.0, 2.0);
        }
        case EstimateId::BesovRetarded: {
            Trajectory f = forcing_family(*psi1, *psi2, omega, dt, nodes);
            Trajectory F = duhamel(f);
            return mixed_norm_xt(F, static_cast<double>(cfg.k), kInfinity) /
                   n_space_norm(f, critical_index(cfg.k), 1.0);
        }
        case EstimateId::L3K3: {
            Trajectory u = free_trajectory(phi, 0.0, dt, nodes);
            return mixed_norm_xt(u, 3.0, kInfinity) /
                   sobolev_norm(phi, cfg.s, false);
        }
    }
    throw DomainError("unknown estimate id");
}

bool horizon_capped(EstimateId id) {
    return id == EstimateId::LowFreqMaximal ||
           id == EstimateId::BlockMaximal || id == EstimateId::L3K3;
}

}  // namespace

EstimateReport verify_linear_estimate(const EstimateConfig& cfg) {
    if (cfg.trials < 1) throw DomainError("trials must be >= 1");
    if (cfg.octaves < 0) throw DomainError("octaves must be >= 0");
    if (cfg.time_nodes < 3) throw DomainError("time_nodes must be >= 3");
    if (!(cfg.T > 0.0)) throw DomainError("T must be positive");
    if (cfg.id == EstimateId::Admissible ||
        cfg.id == EstimateId::RetardedAdmissible) {
        if (!is_admissible(cfg.triple))
            throw DomainError(
                "triple (alpha, p, q) must be (1/2, inf, 2) or satisfy "
                "4 <= p < inf, 2 < q <= inf, 2/p + 1/q <= 1/2 and "
                "alpha = 1/p + 2/q - 1/2");
    }
    if (cfg.id == EstimateId::BesovRetarded && cfg.k < 4)
        throw DomainError("besov_retarded requires k >= 4");
    if (cfg.id == EstimateId::L3K3 && !(cfg.s > 1.0 / 3.0))
        throw DomainError("l3_k3 requires s > 1/3");

    const SpectralGrid grid(static_cast<std::size_t>(cfg.grid_size),
                            cfg.period);
    const int scales = cfg.octaves + 1;
    const std::size_t trials = static_cast<std::size_t>(cfg.trials);

    // The per-block bound only covers unit-or-higher blocks, so steer the
    // carriers there; low carriers would leave every admissible block empty.
    SamplerConfig sampler = cfg.sampler;
    if (cfg.id == EstimateId::BlockMaximal) {
        sampler.carrier_jmin = std::max(0, sampler.carrier_jmin);
        sampler.carrier_jmax =
            std::max(sampler.carrier_jmax, sampler.carrier_jmin);
    }

    EstimateReport report;
    report.id = estimate_name(cfg.id);
    report.seed = cfg.seed;
    report.trials = cfg.trials;
    report.octaves = cfg.octaves;
    report.rows.assign(trials * static_cast<std::size_t>(scales), {});

    parallel_for(trials, cfg.workers, [&](std::size_t trial) {
        Field phi = random_packets(grid, sampler, cfg.seed, trial);
        std::optional<Field> psi1, psi2;
        double omega = 0.0;
        if (needs_forcing_family(cfg.id)) {
            psi1 = random_packets(grid, sampler,
                                  cfg.seed ^ 0xA5A5A5A5A5A5A5A5ULL, trial);
            psi2 = random_packets(grid, sampler,
                                  cfg.seed ^ 0x5A5A5A5A5A5A5A5AULL, trial);
            RandomStream extra(cfg.seed ^ 0xC3C3C3C3C3C3C3C3ULL, trial);
            omega = extra.uniform(0.0, 6.0);
        }
        for (int o = 0; o < scales; ++o) {
            const double lambda = std::ldexp(1.0, o);
            Field phi_s = rescale(phi, o, cfg.k);
            std::optional<Field> p1, p2;
            if (psi1) {
                p1 = rescale(*psi1, o, cfg.k);
                p2 = rescale(*psi2, o, cfg.k);
            }
            double horizon = cfg.T / (lambda * lambda);
            if (horizon_capped(cfg.id)) horizon = std::min(horizon, 1.0);
            EstimateRow row;
            row.trial = static_cast<int>(trial);
            row.octave = o;
            row.lambda = lambda;
            row.ratio = one_estimate_ratio(cfg, phi_s, p1, p2, omega, horizon);
            report.rows[trial * static_cast<std::size_t>(scales) +
                        static_cast<std::size_t>(o)] = row;
        }
    });

    std::vector<double> all;
    all.reserve(report.rows.size());
    report.per_scale_max.assign(static_cast<std::size_t>(scales), 0.0);
    for (const auto& row : report.rows) {
        all.push_back(row.ratio);
        auto& slot = report.per_scale_max[static_cast<std::size_t>(row.octave)];
        slot = std::max(slot, row.ratio);
    }
    report.max_ratio = *std::max_element(all.begin(), all.end());
    report.median_ratio = median_of(all);
    const auto [lo, hi] = std::minmax_element(report.per_scale_max.begin(),
                                              report.per_scale_max.end());
    report.scale_spread = *lo > 0.0 ? *hi / *lo : kInfinity;
    return report;
}

SmallnessReport smallness_probe(const Field& u0, int k,
                                const std::vector<double>& horizons,
                                int nodes_max) {
    if (k < 3) throw DomainError("smallness_probe requires k >= 3");
    if (horizons.empty()) throw DomainError("need at least one horizon");
    for (std::size_t i = 0; i + 1 < horizons.size(); ++i)
        if (!(horizons[i + 1] < horizons[i]))
            throw DomainError("horizons must be strictly decreasing");
    if (!(horizons.back() > 0.0))
        throw DomainError("horizons must be positive");
    if (nodes_max < 2) throw DomainError("nodes_max must be >= 2");

    const double T0 = horizons.front();
    const double dt = T0 / static_cast<double>(nodes_max);
    std::vector<Field> frames;
    frames.reserve(static_cast<std::size_t>(nodes_max) + 1);
    for (int m = 0; m <= nodes_max; ++m)
        frames.push_back(
            free_propagate(static_cast<double>(m) * dt, u0) - u0);
    Trajectory drift(0.0, dt, std::move(frames));

    SmallnessReport report;
    report.horizons = horizons;
    for (double T : horizons) {
        const double exact = T / dt;
        const long count = std::lround(exact);
        if (std::abs(exact - static_cast<double>(count)) > 1e-9 || count < 1)
            throw DomainError(
                "every horizon must be a multiple of horizons[0]/nodes_max");
        report.values.push_back(mixed_norm_xt(
            drift.prefix(static_cast<std::size_t>(count) + 1),
            static_cast<double>(k), kInfinity));
    }
    report.nonincreasing = true;
    for (std::size_t i = 0; i + 1 < report.values.size(); ++i)
        if (report.values[i + 1] > report.values[i] * (1.0 + 1e-12))
            report.nonincreasing = false;
    report.final_over_initial =
        report.values.front() > 0.0
            ? report.values.back() / report.values.front()
            : 0.0;
    return report;
}

NonContractionError::NonContractionError(const std::string& what,
                                         PicardReport report)
    : std::runtime_error(what), report_(std::move(report)) {}

namespace {

// Iterate differences are mean-free analytically, but their coefficients can
// shrink to the roundoff floor set by the full-size iterates; removing the
// sample mean keeps the homogeneous norms applicable all the way down.
Trajectory strip_sample_mean(const Trajectory& u) {
    std::vector<Field> frames;
    frames.reserve(u.node_count());
    for (std::size_t m = 0; m < u.node_count(); ++m) {
        const Field& f = u.frame(m);
        const complexd mu = mean_value(f);
        std::vector<complexd> v = f.values();
        if (f.is_real()) {
            for (auto& x : v) x = complexd(x.real() - mu.real(), 0.0);
        } else {
            for (auto& x : v) x -= mu;
        }
        frames.push_back(Field(f.grid(), std::move(v), f.tag()));
    }
    return Trajectory(u.t0(), u.dt(), std::move(frames));
}

bool finite_frames(const Trajectory& u) {
    for (const auto& f : u.frames())
        for (const auto& v : f.values())
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                return false;
    return true;
}

// One application of the plain integral map u -> uL - Duhamel(sign u^k u_x).
Trajectory plain_picard_map(const Trajectory& uL, const Trajectory& cur,
                            int k, double sign,
                            const MultiplierSymbol& ddx) {
    std::vector<Field> fframes;
    fframes.reserve(cur.node_count());
    for (std::size_t m = 0; m < cur.node_count(); ++m) {
        SpectralField c = forward_transform(cur.frame(m));
        SpectralField nl =
            dealiased_pow_times(c, k, apply_multiplier(ddx, c),
                                DealiasMode::Exact, true);
        // The transport nonlinearity is a perfect derivative, hence mean-free
        // and without an unpaired Nyquist mode; the product projection
        // restores both once iterates carry Nyquist content, and the free
        // group would then integrate the spurious mean out of the zero-mean
        // class the homogeneous norms require.
        nl.coeffs()[0] = 0.0;
        nl.coeffs()[c.grid().nyquist_slot()] = 0.0;
        for (auto& v : nl.coeffs()) v *= sign;
        fframes.push_back(inverse_transform_real(nl, 1e-9));
    }
    Trajectory f(0.0, cur.dt(), std::move(fframes));
    return uL - duhamel(f);
}

// Split map: the new iterate solves the paradifferential equation driven by
// the commutator forcing of the previous one.
Trajectory split_picard_map(const Field& u0, const Trajectory& uL,
                            const Trajectory& cur, const PicardConfig& cfg,
                            const BlockRange& range) {
    std::vector<Field> fframes;
    fframes.reserve(cur.node_count());
    for (std::size_t m = 0; m < cur.node_count(); ++m) {
        const Field& w = cur.frame(m);
        fframes.push_back(paraproduct(uL.frame(m), w, cfg.k, range) -
                          paraproduct(w, w, cfg.k, range) +
                          nonlinear_remainder(w, cfg.k, range));
    }
    Trajectory forcing(0.0, cur.dt(), std::move(fframes));

    SolverConfig run;
    run.k = cfg.k;
    run.dt = cur.dt() / static_cast<double>(cfg.gbo_substeps);
    run.steps = static_cast<long>(cur.node_count() - 1) * cfg.gbo_substeps;
    run.stride = cfg.gbo_substeps;
    return solve_linearized(u0, u0, forcing, run, range).trajectory;
}

double measured_ball_radius(const Field& u0) {
    EstimateConfig probe;
    probe.id = EstimateId::Est1;
    probe.trials = 5;
    probe.octaves = 0;
    probe.time_nodes = 64;
    probe.T = 1.0;
    probe.workers = 1;
    probe.grid_size = static_cast<int>(u0.grid().size());
    probe.period = u0.grid().period();
    EstimateReport r = verify_linear_estimate(probe);
    if (!(r.max_ratio > 0.0)) return 1.0;
    return 1.0 / (8.0 * r.max_ratio);
}

}  // namespace

PicardReport picard_solve(const Field& u0, const PicardConfig& cfg) {
    if (cfg.k < 3) throw DomainError("picard_solve requires k >= 3");
    if (!(cfg.T > 0.0)) throw DomainError("T must be positive");
    if (cfg.time_nodes < 2) throw DomainError("time_nodes must be >= 2");
    if (!(cfg.tol > 0.0)) throw DomainError("tol must be positive");
    if (cfg.max_iter < 1) throw DomainError("max_iter must be >= 1");
    if (!(cfg.eps > 0.0) || cfg.eps >= 1.0)
        throw DomainError("eps must lie in (0, 1)");
    if (cfg.sign != 1.0 && cfg.sign != -1.0)
        throw DomainError("sign must be +1 or -1");
    if (cfg.gbo_substeps < 1) throw DomainError("gbo_substeps must be >= 1");
    if (cfg.split_mode && cfg.sign != 1.0)
        throw DomainError("split mode supports sign = +1 only");
    if (!effectively_zero_mean(u0))
        throw DomainError("initial data must be mean-free");

    const SpectralGrid& grid = u0.grid();
    const int M = cfg.time_nodes;
    const double dt = cfg.T / static_cast<double>(M);
    const std::size_t nodes = static_cast<std::size_t>(M) + 1;
    const double sk = critical_index(cfg.k);

    PicardReport report;
    report.k = cfg.k;
    report.T = cfg.T;
    report.split_mode = cfg.split_mode;
    report.delta = cfg.delta > 0.0 ? cfg.delta : measured_ball_radius(u0);

    const Trajectory uL = free_trajectory(u0, 0.0, dt, nodes);
    const Trajectory anchor = constant_trajectory(u0, 0.0, dt, nodes);
    const MultiplierSymbol ddx = derivative_symbol(grid);
    const BlockRange range = BlockRange::for_grid(grid, cfg.J, cfg.Jsim);

    Trajectory cur = uL;
    double prev_res = kInfinity;
    int rises = 0;
    for (int iter = 1; iter <= cfg.max_iter; ++iter) {
        Trajectory next =
            cfg.split_mode
                ? split_picard_map(u0, uL, cur, cfg, range)
                : plain_picard_map(uL, cur, cfg.k, cfg.sign, ddx);

        PicardIterateStats stats;
        stats.iteration = iter;
        // Norms reject non-finite frames outright, so the escape-to-infinity
        // diagnosis must run before any of them are evaluated.
        if (!finite_frames(next)) {
            stats.residual_y = kInfinity;
            stats.dist_u0 = kInfinity;
            stats.x_sknorm = kInfinity;
            report.iterates.push_back(stats);
            report.final_residual = stats.residual_y;
            report.solution = std::move(next);
            throw NonContractionError(
                "iteration left the finite regime; data too large for the "
                "contraction ball", std::move(report));
        }
        stats.residual_y = y_norm(strip_sample_mean(next - cur), cfg.k,
                                  cfg.eps);
        stats.dist_u0 = mixed_norm_xt(next - anchor,
                                      static_cast<double>(cfg.k), kInfinity);
        stats.x_sknorm = x_norm(next, sk, cfg.eps);
        stats.inside_ball = stats.dist_u0 <= report.delta;
        report.iterates.push_back(stats);
        report.final_residual = stats.residual_y;

        cur = std::move(next);
        if (!std::isfinite(stats.residual_y)) {
            report.solution = std::move(cur);
            throw NonContractionError(
                "iteration left the finite regime; data too large for the "
                "contraction ball", std::move(report));
        }
        if (stats.residual_y > prev_res) {
            if (++rises >= 3) {
                report.solution = std::move(cur);
                throw NonContractionError(
                    "residuals grew three times in a row; no contraction at "
                    "this amplitude and horizon", std::move(report));
            }
        } else {
            rises = 0;
        }
        if (stats.residual_y <= cfg.tol) {
            report.converged = true;
            break;
        }
        prev_res = stats.residual_y;
    }

    std::vector<double> ratios;
    for (std::size_t i = 0; i + 1 < report.iterates.size(); ++i) {
        const double a = report.iterates[i].residual_y;
        const double b = report.iterates[i + 1].residual_y;
        if (a > 0.0 && std::isfinite(a) && std::isfinite(b))
            ratios.push_back(b / a);
    }
    report.contraction_factor = median_of(ratios);

    // Cross-validate against the direct solver. The split fixed point obeys
    // the flux-form equation, which matches the transport form after the
    // amplitude change u -> (k+1)^{1/k} u.
    SolverConfig run;
    run.k = cfg.k;
    run.sign = cfg.sign;
    run.dt = dt / static_cast<double>(cfg.gbo_substeps);
    run.steps = static_cast<long>(M) * cfg.gbo_substeps;
    run.stride = cfg.gbo_substeps;
    if (!cfg.split_mode) {
        SolveResult direct = solve_gbo(u0, run);
        report.gbo_sup_l2_diff = sup_l2_distance(cur, direct.trajectory);
    } else {
        const double factor =
            std::pow(static_cast<double>(cfg.k) + 1.0,
                     1.0 / static_cast<double>(cfg.k));
        SolveResult direct = solve_gbo(factor * u0, run);
        double worst = 0.0;
        for (std::size_t m = 0; m < nodes; ++m)
            worst = std::max(worst,
                             l2_distance(factor * cur.frame(m),
                                         direct.trajectory.frame(m)));
        report.gbo_sup_l2_diff = worst;
    }

    report.solution = std::move(cur);
    return report;
}

LipschitzReport lipschitz_probe(const Field& u01, const Field& u02,
                                const PicardConfig& cfg) {
    require_same_grid(u01.grid(), u02.grid(), "lipschitz probe");
    PicardReport r1 = picard_solve(u01, cfg);
    PicardReport r2 = picard_solve(u02, cfg);
    const Trajectory diff = *r1.solution - *r2.solution;

    LipschitzReport out;
    out.data_distance =
        sobolev_norm(u01 - u02, critical_index(cfg.k), true);
    if (out.data_distance == 0.0) return out;
    out.sup_l2_ratio =
        sup_l2_distance(*r1.solution, *r2.solution) / out.data_distance;
    out.x_sk_ratio =
        x_norm(diff, critical_index(cfg.k), cfg.eps) / out.data_distance;
    out.mixed_ratio = mixed_norm_xt(diff, static_cast<double>(cfg.k),
                                    kInfinity) / out.data_distance;
    return out;
}

}  // namespace gbo
