#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "symmix/engine.hpp"

namespace symmix {

// SYMMIX_THREADS env cap on parallel workers (falls back to the OpenMP
// default when unset or invalid).
int thread_cap();

enum class ScheduleFamilyKind { CONSTANT, LINEAR };

// Expand scalar family parameters into length-p angle vectors. CONSTANT
// repeats each scalar; LINEAR ramps alpha up from a/p to a and beta (and
// gamma, if given) down from b to b/p.
Schedule expand_family(ScheduleFamilyKind kind, int p, double a, double b,
                       std::optional<double> c = std::nullopt);

struct TrainSet {
    std::vector<PreparedRun> runs;
    bool has_gamma() const;
};
TrainSet make_train_set(const std::vector<SatInstance>& instances, AnsatzKind kind,
                        const AnsatzConfig& cfg = {});

double mean_success(const TrainSet& set, const Schedule& sched);

struct GridRange {
    double lo = 0.0;
    double hi = 0.2;
    int count = 10;
};

struct GridResult {
    Schedule schedule;
    ScheduleFamilyKind family = ScheduleFamilyKind::CONSTANT;
    double a = 0.0, b = 0.0;
    double objective = 0.0;
};
// Evaluate both families over the (a,b) grid; argmax, ties toward the
// earliest point (CONSTANT before LINEAR, then ascending a, then b).
GridResult grid_sweep(const TrainSet& set, int p, GridRange a_range = {0.0, 0.2, 10},
                      GridRange b_range = {0.0, 0.05, 10});

std::vector<double> schedule_to_theta(const Schedule& s);
Schedule theta_to_schedule(const std::vector<double>& theta, int p, bool with_gamma);

struct FdOptions {
    int steps = 2000;
    double epsilon = 1e-4;
    double rate = 0.05; // per-step rate decays as rate/sqrt(step+1)
    int batch = 8;
    uint64_t seed = 1; // batch-sampling stream
};

struct FdResult {
    std::vector<double> final_theta;
    std::vector<double> best_theta;   // best seen by full-set objective
    double best_objective = 0.0;
};

// objective(theta, indices) = mean objective over the listed training
// entries; called with every index for the full-set bookkeeping.
using BatchObjective =
    std::function<double(const std::vector<double>&, const std::vector<size_t>&)>;

FdResult fd_gradient_ascent(const BatchObjective& objective, size_t train_count,
                            std::vector<double> theta0, const FdOptions& opt);

struct TrainOptions {
    int p = 6;
    GridRange a_range{0.0, 0.2, 10};
    GridRange b_range{0.0, 0.05, 10};
    FdOptions fd;
    std::optional<Schedule> seed; // skips the grid sweep when present
};

struct TrainResult {
    Schedule schedule;
    std::optional<GridResult> grid;
    double objective = 0.0;
};
TrainResult train_ansatz(const TrainSet& set, const TrainOptions& opt);

struct BenchmarkRecord {
    int n = 0;
    uint64_t seed = 0;
    AnsatzKind kind = AnsatzKind::X;
    int p = 0;
    double success = 0.0;
};

struct SizeSummary {
    int n = 0;
    double median = 0.0, q1 = 0.0, q3 = 0.0;
};

struct BenchmarkResult {
    std::vector<BenchmarkRecord> records;
    std::vector<SizeSummary> summary;
};

// Per size: `count` satisfiable instances from derive_seed(seed0, n<<32 | i),
// reduced to their used variables, run under the given schedule.
BenchmarkResult benchmark(const std::vector<int>& sizes, int count, AnsatzKind kind,
                          const AnsatzConfig& cfg, const Schedule& sched, uint64_t seed0);

struct CurveFit {
    double A = 0.0;
    double B = 1.0;
    double mse = 0.0;
};
// Least-squares fit of f(n) = A * B^n in the original scale: log-linear seed
// plus damped Gauss-Newton.
CurveFit fit_exponential(const std::vector<std::pair<double, double>>& points);

struct ScheduleGradient {
    std::vector<double> dalpha, dbeta, dgamma;
};
// Exact gradient of the success probability via dense factor products.
// Small registers only (n <= 12).
ScheduleGradient analytic_gradient_dense(const SatInstance& inst, const AnsatzSpec& spec,
                                         const Schedule& sched);

} // namespace symmix
