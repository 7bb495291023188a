#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "apfv/ap_scheme.hpp"
#include "apfv/chapman_enskog.hpp"
#include "apfv/harness.hpp"
#include "apfv/hll.hpp"
#include "apfv/models.hpp"
#include "apfv/parabolic.hpp"

namespace apfv {
namespace {

std::vector<std::string> state_columns(const Model& m)
{
    const std::string& name = m.name();
    if (name == "euler_friction") return {"rho", "mom"};
    if (name == "m1") return {"e", "f", "tau"};
    if (name == "euler_m1") return {"rho", "mom", "e", "f"};
    if (name == "shallow_water_friction") return {"h", "mom"};
    std::vector<std::string> cols;
    for (int c = 0; c < m.state_dim(); ++c) cols.push_back("U_" + std::to_string(c));
    return cols;
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(17) << v;
    return os.str();
}

/// Equilibrium profile u(x) from the ICSpec.
std::vector<Vec> initial_u(const RunConfig& cfg, int n)
{
    const ICSpec& ic = cfg.ic;
    if (ic.component < 0 || ic.component >= n)
        throw ConfigError("ic: component out of range");
    Vec base = Vec::Ones(n);
    if (!ic.base.empty()) {
        if (static_cast<int>(ic.base.size()) != n)
            throw ConfigError("ic: base needs one value per equilibrium component");
        for (int c = 0; c < n; ++c) base(c) = ic.base[static_cast<std::size_t>(c)];
    }
    const double L = cfg.x_max - cfg.x_min;
    const double dx = L / cfg.num_cells;

    std::vector<Vec> u(static_cast<std::size_t>(cfg.num_cells));
    for (int i = 0; i < cfg.num_cells; ++i) {
        const double x = cfg.x_min + (i + 0.5) * dx;
        Vec ui = base;
        if (ic.profile == "gaussian") {
            const double d = (x - ic.center) / ic.width;
            ui(ic.component) = ic.floor + ic.amplitude * std::exp(-0.5 * d * d);
        } else if (ic.profile == "sine_mode") {
            ui(ic.component) =
                ic.mean + ic.amplitude * std::sin(2.0 * M_PI * ic.k * (x - cfg.x_min) / L);
        } else {  // riemann
            const std::vector<double>& side = x < ic.jump ? ic.left : ic.right;
            if (static_cast<int>(side.size()) != n)
                throw ConfigError("ic: riemann left/right need one value per component");
            for (int c = 0; c < n; ++c) ui(c) = side[static_cast<std::size_t>(c)];
        }
        u[static_cast<std::size_t>(i)] = std::move(ui);
    }
    return u;
}

void write_snapshot(const std::string& path, const GridState& g, const Mat* Q,
                    const std::vector<std::string>& cols)
{
    std::ofstream out(path, std::ios::binary);  // binary: LF on every platform
    if (!out) throw ConfigError("run: cannot write '" + path + "'");
    out << "x";
    for (const auto& c : cols) out << "," << c;
    out << "\n";
    for (int i = 0; i < g.num_cells(); ++i) {
        const Vec& U = g.cells[static_cast<std::size_t>(i)];
        out << fmt(g.cell_center(i));
        for (int c = 0; c < U.size(); ++c) out << "," << fmt(U(c));
        if (Q) {
            const Vec u = (*Q) * U;
            for (int c = 0; c < u.size(); ++c) out << "," << fmt(u(c));
        }
        out << "\n";
    }
}

struct DiagTracker {
    const Model& m;
    bool state_scheme;  // cells hold U (vs u for parabolic)
    double dx;
    std::vector<DiagnosticsRow> rows;
    double prev_entropy = std::numeric_limits<double>::quiet_NaN();
    double max_increase = 0.0;

    void record(const GridState& g, double dt, int floor_events)
    {
        const int n = m.equil_dim();
        DiagnosticsRow row;
        row.time = g.time;
        row.dt = dt;
        row.floor_events = floor_events;
        row.mass = Vec::Zero(n);
        row.umin = Vec::Constant(n, std::numeric_limits<double>::infinity());
        row.umax = Vec::Constant(n, -std::numeric_limits<double>::infinity());
        double S = 0.0;
        const bool entropic = state_scheme && m.has_entropy();
        for (const Vec& U : g.cells) {
            const Vec u = state_scheme ? Vec(m.constraint() * U) : U;
            row.mass += u * dx;
            row.umin = row.umin.cwiseMin(u);
            row.umax = row.umax.cwiseMax(u);
            if (entropic) S += m.entropy(U) * dx;
        }
        row.entropy = entropic ? S : std::numeric_limits<double>::quiet_NaN();
        if (entropic && std::isfinite(prev_entropy)) {
            const double rel = (S - prev_entropy) / std::max(std::abs(prev_entropy), 1e-300);
            max_increase = std::max(max_increase, rel);
        }
        prev_entropy = row.entropy;
        rows.push_back(std::move(row));
    }
};

void write_diagnostics(const std::string& path, const std::vector<DiagnosticsRow>& rows,
                       int n)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("run: cannot write '" + path + "'");
    out << "t";
    for (int c = 1; c <= n; ++c) out << ",mass_" << c;
    out << ",entropy";
    for (int c = 1; c <= n; ++c) out << ",min_" << c;
    for (int c = 1; c <= n; ++c) out << ",max_" << c;
    out << ",dt,floor_events\n";
    for (const auto& r : rows) {
        out << fmt(r.time);
        for (int c = 0; c < n; ++c) out << "," << fmt(r.mass(c));
        out << "," << fmt(r.entropy);
        for (int c = 0; c < n; ++c) out << "," << fmt(r.umin(c));
        for (int c = 0; c < n; ++c) out << "," << fmt(r.umax(c));
        out << "," << fmt(r.dt) << "," << r.floor_events << "\n";
    }
}

} // namespace

RunReport run(const RunConfig& cfg)
{
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const auto m = make_model(cfg.model, cfg.model_params);
    const int n = m->equil_dim();
    const double dx = (cfg.x_max - cfg.x_min) / cfg.num_cells;
    const bool state_scheme = cfg.scheme != "parabolic";

    GridState g;
    g.x_min = cfg.x_min;
    g.dx = dx;
    g.boundary = cfg.boundary;
    const std::vector<Vec> u0 = initial_u(cfg, n);
    if (state_scheme) {
        g.cells.reserve(u0.size());
        for (std::size_t i = 0; i < u0.size(); ++i) {
            if (!m->equilibrium_admissible(u0[i]))
                throw ConfigError("run: initial u outside omega at cell " +
                                  std::to_string(i));
            Vec U = m->equilibrium(u0[i]);
            if (cfg.ic.offeq != 0.0) {
                if (cfg.ic.offeq_component < 0 || cfg.ic.offeq_component >= m->state_dim())
                    throw ConfigError("ic: offeq_component out of range");
                U(cfg.ic.offeq_component) += cfg.ic.offeq * U(0);
            }
            if (!m->admissible(U))
                throw ConfigError("run: initial state inadmissible at cell " +
                                  std::to_string(i));
            g.cells.push_back(std::move(U));
        }
    } else {
        for (std::size_t i = 0; i < u0.size(); ++i)
            if (!m->equilibrium_admissible(u0[i]))
                throw ConfigError("run: initial u outside omega at cell " +
                                  std::to_string(i));
        g.cells = u0;
    }

    RunReport report;
    DiagTracker diag{*m, state_scheme, dx};
    const bool write = !cfg.output_path.empty();
    std::vector<std::string> cols;
    const Mat* Qp = nullptr;
    if (state_scheme) {
        cols = state_columns(*m);
        Qp = &m->constraint();
    }
    for (int c = 0; c < n; ++c) cols.push_back("eq_" + std::to_string(c));
    if (write) std::filesystem::create_directories(cfg.output_path);
    auto snapshot = [&](const GridState& s) {
        if (!write) return;
        std::ostringstream name;
        name << cfg.output_path << "/snap_" << std::setw(4) << std::setfill('0')
             << report.snapshot_files.size() << ".csv";
        write_snapshot(name.str(), s, Qp, cols);
        report.snapshot_files.push_back(name.str());
    };

    diag.record(g, 0.0, 0);
    snapshot(g);

    long steps = 0;
    int floor_total = 0;
    if (cfg.scheme == "hll" || cfg.scheme == "ap") {
        const double b = wave_speed(*m, g);
        double dt0;
        if (cfg.scheme == "hll")
            dt0 = cfg.cfl * 0.5 * dx / b;
        else if (cfg.gamma_mode == "late_time")
            dt0 = cfg.cfl * 0.5 * cfg.eps * dx / b;  // fast-time CFL cfl/2
        else
            dt0 = cfg.cfl * 0.5 * dx / b;
        long total = cfg.end_time > 0.0
                         ? static_cast<long>(std::ceil(cfg.end_time / dt0 - 1e-12))
                         : 0;
        const double dt = total > 0 ? cfg.end_time / total : 0.0;
        report.dt = dt;
        APStepConfig ap;
        ap.mode = cfg.gamma_mode == "late_time" ? GammaMode::late_time : GammaMode::fixed;
        ap.eps = cfg.eps;
        ap.dt = dt;
        ap.b = b;
        ap.gamma = cfg.gamma;
        for (long s = 0; s < total; ++s) {
            if (cfg.scheme == "hll") {
                g = step_homogeneous(*m, g, dt, b);
            } else {
                APStepStats stats;
                g = ap_step(*m, g, ap, {}, &stats);
                floor_total += stats.floor_events;
            }
            ++steps;
            diag.record(g, dt, floor_total);
            if (cfg.output_every > 0 && steps % cfg.output_every == 0 && s + 1 < total)
                snapshot(g);
        }
    } else {  // parabolic
        double t = 0.0;
        while (t < cfg.end_time) {
            const auto faces = effective_face_matrices(*m, g.cells, dx, g.boundary);
            double dt = cfg.cfl * diffusion_stable_dt(faces, dx);
            dt = std::min(dt, cfg.end_time - t);
            g.cells = discrete_diffusion_limit(g.cells, dt, dx, faces, g.boundary);
            t += dt;
            g.time = t;
            ++steps;
            report.dt = dt;
            diag.record(g, dt, 0);
            if (cfg.output_every > 0 && steps % cfg.output_every == 0 && t < cfg.end_time)
                snapshot(g);
        }
    }

    snapshot(g);
    if (write) {
        report.diagnostics_file = cfg.output_path + "/diagnostics.csv";
        write_diagnostics(report.diagnostics_file, diag.rows, n);
    }

    report.final_state = g;
    report.final_u.reserve(g.cells.size());
    for (const Vec& U : g.cells)
        report.final_u.push_back(state_scheme ? Vec(m->constraint() * U) : U);
    report.steps = steps;
    report.diagnostics = std::move(diag.rows);
    report.max_entropy_increase = diag.max_increase;
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

int Table::column_index(const std::string& name) const
{
    const auto it = std::find(columns.begin(), columns.end(), name);
    return it == columns.end() ? -1 : static_cast<int>(it - columns.begin());
}

Table read_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("read_csv: cannot open '" + path + "'");
    Table t;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("read_csv: empty file '" + path + "'");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) t.columns.push_back(cell);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ls(line);
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != t.columns.size())
            throw ConfigError("read_csv: ragged row in '" + path + "'");
        t.rows.push_back(std::move(row));
    }
    return t;
}

Norm parse_norm(const std::string& name)
{
    if (name == "L1") return Norm::L1;
    if (name == "L2") return Norm::L2;
    if (name == "Linf") return Norm::Linf;
    throw ConfigError("norm must be L1, L2, or Linf, got '" + name + "'");
}

CompareResult compare(const Table& a, const Table& b, Norm norm)
{
    std::vector<std::pair<int, int>> eq;  // (col in a, col in b)
    for (std::size_t c = 0; c < a.columns.size(); ++c) {
        if (a.columns[c].rfind("eq_", 0) != 0) continue;
        const int cb = b.column_index(a.columns[c]);
        if (cb >= 0) eq.emplace_back(static_cast<int>(c), cb);
    }
    if (eq.empty()) throw GridMismatch("compare: no common eq_* columns");
    const int na = static_cast<int>(a.rows.size());
    const int nb = static_cast<int>(b.rows.size());
    if (na < 2 || nb < na || nb % na != 0)
        throw GridMismatch("compare: grid of b is not a refinement of a's");
    const int ratio = nb / na;
    const int xa = a.column_index("x");
    if (xa < 0) throw GridMismatch("compare: missing x column");
    const double dx = a.rows[1][static_cast<std::size_t>(xa)] -
                      a.rows[0][static_cast<std::size_t>(xa)];

    double acc = 0.0, ref = 0.0;
    for (int i = 0; i < na; ++i) {
        for (const auto& [ca, cb] : eq) {
            double vb = 0.0;
            for (int j = 0; j < ratio; ++j)
                vb += b.rows[static_cast<std::size_t>(i * ratio + j)]
                            [static_cast<std::size_t>(cb)];
            vb /= ratio;
            const double va = a.rows[static_cast<std::size_t>(i)]
                                    [static_cast<std::size_t>(ca)];
            const double d = std::abs(va - vb);
            switch (norm) {
            case Norm::L1:
                acc += d * dx;
                ref += std::abs(vb) * dx;
                break;
            case Norm::L2:
                acc += d * d * dx;
                ref += vb * vb * dx;
                break;
            case Norm::Linf:
                acc = std::max(acc, d);
                ref = std::max(ref, std::abs(vb));
                break;
            }
        }
    }
    CompareResult res;
    res.absolute = norm == Norm::L2 ? std::sqrt(acc) : acc;
    const double r = norm == Norm::L2 ? std::sqrt(ref) : ref;
    res.relative = r > 0.0 ? res.absolute / r : res.absolute;
    return res;
}

CorrectorReport corrector_report(const Model& m, int samples, std::uint64_t seed)
{
    // Closed-form correctors, written out independently of the constrained
    // solve so the subcommand is a genuine cross-check.
    auto analytic_u1 = [&](const Vec& u, const Vec& du) -> Vec {
        const std::string& name = m.name();
        if (name == "euler_friction") {
            const Mat M = m.effective_matrix(u, du);  // p'(rho)
            return (Vec(2) << 0.0, -M(0, 0) * du(0)).finished();
        }
        if (name == "m1") {
            const double tau = tau_from_u(u(0));
            const double t3 = std::pow(tau, 3);
            const double dtau = du(0) / (1.0 + 4.0 * t3);  // dx tau from dx u
            return (Vec(3) << 0.0, -(4.0 / 3.0) * t3 * dtau, 0.0).finished();
        }
        if (name == "euler_m1") {
            const Mat M = m.effective_matrix(u, du);
            const double beta_r = -M(1, 1) * du(1);  // -dx e / (3 sigma_a)
            const double beta_m = -(M(0, 0) * du(0) + M(0, 1) * du(1));
            return (Vec(4) << 0.0, beta_m, 0.0, beta_r).finished();
        }
        // shallow_water_friction: exact nonlinear momentum balance
        return m.corrector_nonlinear(u, du);
    };

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> grad(-1.0, 1.0);
    CorrectorReport rep;
    rep.model = m.name();
    rep.samples = samples;
    std::ostringstream table;
    table.imbue(std::locale::classic());
    table << "sample,rel_u1,rel_flux\n";
    for (int s = 0; s < samples; ++s) {
        const Vec u = m.sample_equilibrium(rng);
        Vec du(m.equil_dim());
        for (int c = 0; c < du.size(); ++c) du(c) = grad(rng);
        const CorrectorResult num = corrector(m, u, du);
        const Vec ana = analytic_u1(u, du);
        const Vec flux_ana = m.effective_matrix(u, du) * du;
        const double rel_u1 = (num.U1 - ana).lpNorm<Eigen::Infinity>() /
                              (1.0 + ana.lpNorm<Eigen::Infinity>());
        const double rel_flux =
            (num.effective_flux - flux_ana).lpNorm<Eigen::Infinity>() /
            (1.0 + flux_ana.lpNorm<Eigen::Infinity>());
        rep.max_rel_u1 = std::max(rep.max_rel_u1, rel_u1);
        rep.max_rel_flux = std::max(rep.max_rel_flux, rel_flux);
        if (s < 10)
            table << s << "," << std::setprecision(3) << rel_u1 << "," << rel_flux
                  << "\n";
    }
    rep.table = table.str();
    return rep;
}

std::vector<ConvergeRow> converge(const RunConfig& cfg, int levels)
{
    if (levels < 2) throw ConfigError("converge: need at least 2 levels");
    std::vector<Table> tables;
    std::vector<int> cells;
    for (int lev = 0; lev < levels; ++lev) {
        RunConfig c = cfg;
        c.num_cells = cfg.num_cells << lev;
        c.output_path.clear();
        const RunReport rep = run(c);
        Table t;
        t.columns.push_back("x");
        const int n = static_cast<int>(rep.final_u.front().size());
        for (int k = 0; k < n; ++k) t.columns.push_back("eq_" + std::to_string(k));
        for (int i = 0; i < rep.final_state.num_cells(); ++i) {
            std::vector<double> row;
            row.push_back(rep.final_state.cell_center(i));
            const Vec& u = rep.final_u[static_cast<std::size_t>(i)];
            for (int k = 0; k < n; ++k) row.push_back(u(k));
            t.rows.push_back(std::move(row));
        }
        tables.push_back(std::move(t));
        cells.push_back(c.num_cells);
    }
    std::vector<ConvergeRow> rows;
    for (int lev = 0; lev + 1 < levels; ++lev) {
        ConvergeRow r;
        r.num_cells = cells[static_cast<std::size_t>(lev)];
        r.error = compare(tables[static_cast<std::size_t>(lev)],
                          tables[static_cast<std::size_t>(lev + 1)], Norm::L1)
                      .absolute;
        r.rate = rows.empty() || r.error == 0.0
                     ? 0.0
                     : std::log2(rows.back().error / r.error);
        rows.push_back(r);
    }
    return rows;
}

} // namespace apfv
