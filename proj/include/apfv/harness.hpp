#ifndef APFV_HARNESS_HPP
#define APFV_HARNESS_HPP

#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "apfv/model.hpp"

namespace apfv {

/// Initial-condition profile for the equilibrium variables u(x); the state is
/// initialized on the equilibrium manifold, U0 = E(u0), with an optional
/// off-equilibrium perturbation U0[offeq_component] += offeq * U0[0].
struct ICSpec {
    std::string profile = "gaussian";  // gaussian | sine_mode | riemann
    int component = 0;                 // equilibrium component carrying the profile
    std::vector<double> base;          // values of the other components (size n)

    // gaussian: u_c(x) = floor + amplitude exp(-(x-center)^2 / (2 width^2))
    double center = 0.5;
    double width = 0.1;
    double amplitude = 0.5;
    double floor = 1.0;

    // sine_mode: u_c(x) = mean + amplitude sin(2 pi k (x - x_min) / L)
    int k = 1;
    double mean = 1.0;

    // riemann: u(x) = left for x < jump, right otherwise (n values each)
    std::vector<double> left, right;
    double jump = 0.5;

    double offeq = 0.0;
    int offeq_component = 1;
};

struct RunConfig {
    std::string model;
    std::map<std::string, double> model_params;

    std::string scheme = "ap";  // hll | ap | parabolic
    double eps = 1e-3;
    double cfl = 0.9;           // fraction of the scheme's stability bound
    std::string gamma_mode = "late_time";  // late_time | fixed
    double gamma = 0.0;         // relaxation rate in fixed mode
    double end_time = 0.0;      // slow time for ap/parabolic, fast time for hll

    double x_min = 0.0;
    double x_max = 1.0;
    int num_cells = 100;
    Boundary boundary = Boundary::periodic;

    ICSpec ic;

    int output_every = 0;       // snapshot cadence in steps; 0 = final only
    std::string output_path;    // directory; empty = no files written

    void validate() const;      // throws ConfigError on invariant violations
};

/// Parses the flat INI-style config (sections [model], [scheme], [grid],
/// [ic], [output]; key = value lines; '#' comments). Unknown sections or keys
/// throw ConfigError.
RunConfig parse_config(const std::string& path);
RunConfig parse_config(std::istream& in);

struct DiagnosticsRow {
    double time = 0.0;
    Vec mass;      // sum_i Q U_i dx, per equilibrium component
    double entropy = 0.0;  // sum_i Phi(U_i) dx (NaN if no entropy)
    Vec umin, umax;        // componentwise range of u = Q U
    double dt = 0.0;
    int floor_events = 0;
};

struct RunReport {
    GridState final_state;          // state variables (hll/ap) or u (parabolic)
    std::vector<Vec> final_u;       // equilibrium variables in both cases
    long steps = 0;
    double dt = 0.0;
    double wall_seconds = 0.0;
    std::vector<DiagnosticsRow> diagnostics;
    double max_entropy_increase = 0.0;  // max relative per-step increase
    std::vector<std::string> snapshot_files;
    std::string diagnostics_file;
};

/// Executes the configured scheme to end_time, recording diagnostics each
/// step and writing snapshot/diagnostics CSVs when output_path is set.
RunReport run(const RunConfig& cfg);

/// In-memory CSV table (numeric payload, named columns).
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    int column_index(const std::string& name) const;  // -1 if absent
};

Table read_csv(const std::string& path);

enum class Norm { L1, L2, Linf };
Norm parse_norm(const std::string& name);  // "L1" | "L2" | "Linf"

struct CompareResult {
    double absolute = 0.0;
    double relative = 0.0;  // absolute / norm of b
};

/// Discrete norm of the difference of the equilibrium variables (the eq_*
/// columns common to both snapshots). If b is finer, it is restricted onto
/// a's grid by cell-average coarsening; incompatible sizes throw GridMismatch.
CompareResult compare(const Table& a, const Table& b, Norm norm);

struct CorrectorReport {
    std::string model;
    int samples = 0;
    double max_rel_u1 = 0.0;    // numeric vs analytic corrector
    double max_rel_flux = 0.0;  // numeric vs M(u) du effective flux
    std::string table;          // printable rows
};

/// Tabulates numeric vs analytic U1 / effective flux over random (u, dx u).
CorrectorReport corrector_report(const Model& m, int samples,
                                 std::uint64_t seed = 7204u);

struct ConvergeRow {
    int num_cells = 0;
    double error = 0.0;  // L1 distance to the next-finer level, coarsened
    double rate = 0.0;   // log2 ratio vs previous row (0 for the first)
};

/// Runs cfg at num_cells * 2^i for i = 0..levels-1 and compares successive
/// levels in L1.
std::vector<ConvergeRow> converge(const RunConfig& cfg, int levels);

} // namespace apfv

#endif
