#include "symmix/train.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "symmix/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace symmix {

int thread_cap() {
    const char* s = std::getenv("SYMMIX_THREADS");
    if (s && *s) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end != s && *end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace {

// Parallel map with deterministic output order; first exception wins.
template <class F>
std::vector<double> parallel_map(size_t count, const F& f) {
    std::vector<double> out(count, 0.0);
    std::exception_ptr err = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(thread_cap())
#endif
    for (long long i = 0; i < static_cast<long long>(count); i++) {
        try {
            out[static_cast<size_t>(i)] = f(static_cast<size_t>(i));
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return out;
}

double fixed_order_mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

} // namespace

Schedule expand_family(ScheduleFamilyKind kind, int p, double a, double b,
                       std::optional<double> c) {
    if (p < 1) throw std::invalid_argument("schedule length must be positive");
    Schedule s;
    s.alpha.resize(p);
    s.beta.resize(p);
    if (c) s.gamma.resize(p);
    for (int l = 0; l < p; l++) {
        if (kind == ScheduleFamilyKind::CONSTANT) {
            s.alpha[l] = a;
            s.beta[l] = b;
            if (c) s.gamma[l] = *c;
        } else {
            s.alpha[l] = a * static_cast<double>(l + 1) / p;
            s.beta[l] = b * static_cast<double>(p - l) / p;
            if (c) s.gamma[l] = *c * static_cast<double>(p - l) / p;
        }
    }
    return s;
}

bool TrainSet::has_gamma() const {
    for (const auto& r : runs)
        if (r.spec.symcov && !r.spec.symcov->layers.empty()) return true;
    return false;
}

TrainSet make_train_set(const std::vector<SatInstance>& instances, AnsatzKind kind,
                        const AnsatzConfig& cfg) {
    TrainSet set;
    set.runs.resize(instances.size());
    std::exception_ptr err = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(thread_cap())
#endif
    for (long long i = 0; i < static_cast<long long>(instances.size()); i++) {
        try {
            const SatInstance& inst = instances[static_cast<size_t>(i)];
            set.runs[static_cast<size_t>(i)] = prepare_run(inst, build_ansatz(inst, kind, cfg));
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return set;
}

double mean_success(const TrainSet& set, const Schedule& sched) {
    if (set.runs.empty()) throw std::invalid_argument("empty train set");
    auto vals = parallel_map(set.runs.size(),
                             [&](size_t i) { return run_prepared(set.runs[i], sched); });
    return fixed_order_mean(vals);
}

namespace {

double grid_point(const GridRange& r, int i) {
    if (r.count == 1) return r.lo;
    return r.lo + (r.hi - r.lo) * static_cast<double>(i) / (r.count - 1);
}

} // namespace

GridResult grid_sweep(const TrainSet& set, int p, GridRange a_range, GridRange b_range) {
    if (set.runs.empty()) throw std::invalid_argument("empty train set");
    if (a_range.count < 1 || b_range.count < 1) throw std::invalid_argument("empty grid range");
    if (a_range.hi < a_range.lo || b_range.hi < b_range.lo)
        throw std::invalid_argument("inverted grid range");
    bool wg = set.has_gamma();
    GridResult best;
    bool have = false;
    for (ScheduleFamilyKind fam : {ScheduleFamilyKind::CONSTANT, ScheduleFamilyKind::LINEAR}) {
        for (int ai = 0; ai < a_range.count; ai++) {
            for (int bi = 0; bi < b_range.count; bi++) {
                double a = grid_point(a_range, ai);
                double b = grid_point(b_range, bi);
                Schedule s = expand_family(fam, p, a, b,
                                           wg ? std::optional<double>(0.0) : std::nullopt);
                double obj = mean_success(set, s);
                if (!have || obj > best.objective) {
                    best = {s, fam, a, b, obj};
                    have = true;
                }
            }
        }
    }
    return best;
}

std::vector<double> schedule_to_theta(const Schedule& s) {
    std::vector<double> th;
    th.insert(th.end(), s.alpha.begin(), s.alpha.end());
    th.insert(th.end(), s.beta.begin(), s.beta.end());
    th.insert(th.end(), s.gamma.begin(), s.gamma.end());
    return th;
}

Schedule theta_to_schedule(const std::vector<double>& theta, int p, bool with_gamma) {
    size_t want = static_cast<size_t>(p) * (with_gamma ? 3 : 2);
    if (theta.size() != want) throw std::invalid_argument("parameter vector length mismatch");
    Schedule s;
    s.alpha.assign(theta.begin(), theta.begin() + p);
    s.beta.assign(theta.begin() + p, theta.begin() + 2 * p);
    if (with_gamma) s.gamma.assign(theta.begin() + 2 * p, theta.begin() + 3 * p);
    return s;
}

FdResult fd_gradient_ascent(const BatchObjective& objective, size_t train_count,
                            std::vector<double> theta0, const FdOptions& opt) {
    if (train_count == 0) throw std::invalid_argument("empty train set");
    if (opt.steps < 0 || opt.batch < 1 || opt.epsilon <= 0.0)
        throw std::invalid_argument("bad descent options");
    std::vector<size_t> all(train_count);
    std::iota(all.begin(), all.end(), 0);
    auto full = [&](const std::vector<double>& th) {
        double v = objective(th, all);
        if (!std::isfinite(v)) throw std::runtime_error("objective is not finite");
        return v;
    };

    FdResult res;
    res.best_theta = theta0;
    res.best_objective = full(theta0);

    Rng rng(opt.seed);
    std::vector<double> theta = std::move(theta0);
    const size_t dim = theta.size();
    std::vector<size_t> batch(opt.batch);
    std::vector<double> grad(dim);
    for (int step = 0; step < opt.steps; step++) {
        for (auto& b : batch) b = rng.uniform_below(train_count);
        for (size_t k = 0; k < dim; k++) {
            std::vector<double> tp = theta, tm = theta;
            tp[k] += opt.epsilon;
            tm[k] -= opt.epsilon;
            double op = objective(tp, batch);
            double om = objective(tm, batch);
            if (!std::isfinite(op) || !std::isfinite(om))
                throw std::runtime_error("objective is not finite");
            grad[k] = (op - om) / (2.0 * opt.epsilon);
        }
        double r = opt.rate / std::sqrt(static_cast<double>(step) + 1.0);
        for (size_t k = 0; k < dim; k++) theta[k] += r * grad[k];
        double v = full(theta);
        if (v > res.best_objective) {
            res.best_objective = v;
            res.best_theta = theta;
        }
    }
    res.final_theta = std::move(theta);
    return res;
}

TrainResult train_ansatz(const TrainSet& set, const TrainOptions& opt) {
    if (set.runs.empty()) throw std::invalid_argument("empty train set");
    bool wg = set.has_gamma();
    Schedule s0;
    std::optional<GridResult> grid;
    if (opt.seed) {
        s0 = *opt.seed;
        if (static_cast<int>(s0.alpha.size()) != opt.p)
            throw std::invalid_argument("seed schedule length mismatch");
        if (wg && s0.gamma.empty()) s0.gamma.assign(opt.p, 0.0);
    } else {
        grid = grid_sweep(set, opt.p, opt.a_range, opt.b_range);
        s0 = grid->schedule;
    }

    auto obj = [&](const std::vector<double>& th, const std::vector<size_t>& idx) {
        Schedule s = theta_to_schedule(th, opt.p, wg);
        auto vals =
            parallel_map(idx.size(), [&](size_t i) { return run_prepared(set.runs[idx[i]], s); });
        return fixed_order_mean(vals);
    };
    FdResult fd = fd_gradient_ascent(obj, set.runs.size(), schedule_to_theta(s0), opt.fd);

    TrainResult out;
    out.schedule = theta_to_schedule(fd.best_theta, opt.p, wg);
    out.grid = grid;
    out.objective = fd.best_objective;
    return out;
}

namespace {

double median_range(const std::vector<double>& sorted, size_t lo, size_t hi) {
    size_t k = hi - lo;
    size_t m = lo + k / 2;
    return (k % 2) ? sorted[m] : 0.5 * (sorted[m - 1] + sorted[m]);
}

} // namespace

BenchmarkResult benchmark(const std::vector<int>& sizes, int count, AnsatzKind kind,
                          const AnsatzConfig& cfg, const Schedule& sched, uint64_t seed0) {
    if (count < 1) throw std::invalid_argument("instance count must be positive");
    for (int n : sizes)
        if (n < 3 || n > kStateCap) throw std::invalid_argument("benchmark size out of range");

    struct Task {
        int n;
        uint64_t seed;
    };
    std::vector<Task> tasks;
    for (int n : sizes)
        for (int i = 0; i < count; i++)
            tasks.push_back(
                {n, derive_seed(seed0, (static_cast<uint64_t>(n) << 32) |
                                           static_cast<uint64_t>(i))});

    auto succ = parallel_map(tasks.size(), [&](size_t t) {
        SatisfiableDraw draw = generate_satisfiable(tasks[t].n, tasks[t].seed);
        ReduceResult red = reduce(draw.inst);
        AnsatzSpec spec = build_ansatz(red.inst, kind, cfg);
        PreparedRun ctx = prepare_run(red.inst, spec);
        return run_prepared(ctx, sched);
    });

    BenchmarkResult out;
    for (size_t t = 0; t < tasks.size(); t++)
        out.records.push_back({tasks[t].n, tasks[t].seed, kind, sched.rounds(), succ[t]});

    for (int n : sizes) {
        std::vector<double> v;
        for (const auto& r : out.records)
            if (r.n == n) v.push_back(r.success);
        std::sort(v.begin(), v.end());
        size_t k = v.size();
        SizeSummary s;
        s.n = n;
        s.median = median_range(v, 0, k);
        s.q1 = median_range(v, 0, k / 2);
        s.q3 = median_range(v, k - k / 2, k);
        out.summary.push_back(s);
    }
    return out;
}

CurveFit fit_exponential(const std::vector<std::pair<double, double>>& points) {
    const size_t m = points.size();
    if (m < 2) throw std::invalid_argument("curve fit needs at least two points");
    double n0 = points[0].first;
    bool distinct = false;
    for (const auto& [n, y] : points) {
        if (y <= 0.0 || !std::isfinite(y) || !std::isfinite(n))
            throw std::invalid_argument("curve fit needs positive finite ordinates");
        if (n != n0) distinct = true;
    }
    if (!distinct) throw std::invalid_argument("curve fit needs two distinct abscissae");

    // log-linear seed
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [n, y] : points) {
        double ly = std::log(y);
        sx += n;
        sy += ly;
        sxx += n * n;
        sxy += n * ly;
    }
    double dm = static_cast<double>(m);
    double denom = dm * sxx - sx * sx;
    double slope = (dm * sxy - sx * sy) / denom;
    double inter = (sy - slope * sx) / dm;
    double A = std::exp(inter);
    double B = std::exp(slope);

    auto sse_of = [&](double a, double b) {
        double s = 0;
        for (const auto& [n, y] : points) {
            double r = a * std::pow(b, n) - y;
            s += r * r;
        }
        return s;
    };

    // damped Gauss-Newton in the original scale
    double sse = sse_of(A, B);
    double lambda = 1e-3;
    for (int iter = 0; iter < 500; iter++) {
        double j11 = 0, j12 = 0, j22 = 0, g1 = 0, g2 = 0;
        for (const auto& [n, y] : points) {
            double bn = std::pow(B, n);
            double r = A * bn - y;
            double da = bn;
            double db = A * n * std::pow(B, n - 1);
            j11 += da * da;
            j12 += da * db;
            j22 += db * db;
            g1 += da * r;
            g2 += db * r;
        }
        double gnorm = 2.0 / dm * std::sqrt(g1 * g1 + g2 * g2);
        if (gnorm <= 1e-10) break;
        double a11 = j11 * (1 + lambda), a22 = j22 * (1 + lambda);
        double det = a11 * a22 - j12 * j12;
        if (det == 0.0 || !std::isfinite(det)) break;
        double dA = (-g1 * a22 + g2 * j12) / det;
        double dB = (-g2 * a11 + g1 * j12) / det;
        double At = A + dA, Bt = B + dB;
        if (Bt > 0.0 && std::isfinite(At) && std::isfinite(Bt)) {
            double st = sse_of(At, Bt);
            if (st < sse) {
                A = At;
                B = Bt;
                sse = st;
                lambda = std::max(lambda / 3.0, 1e-12);
                continue;
            }
        }
        lambda *= 10.0;
        if (lambda > 1e12) break;
    }

    CurveFit fit;
    fit.A = A;
    fit.B = B;
    fit.mse = sse / dm;
    return fit;
}

ScheduleGradient analytic_gradient_dense(const SatInstance& inst, const AnsatzSpec& spec,
                                         const Schedule& sched) {
    if (spec.n > kLowerCap) throw std::invalid_argument("dense gradient: n exceeds cap");
    if (inst.n != spec.n) throw std::invalid_argument("instance and ansatz sizes differ");
    const int p = sched.rounds();
    if (sched.beta.size() != sched.alpha.size())
        throw std::invalid_argument("schedule alpha/beta lengths differ");
    const bool wg = spec.symcov && !spec.symcov->layers.empty();
    if (wg && static_cast<int>(sched.gamma.size()) != p)
        throw std::invalid_argument("schedule gamma length differs");

    const int dim = 1 << spec.n;
    auto table = violation_table(inst, spec.phase_clauses);
    const std::complex<double> iu(0.0, 1.0);

    struct Factor {
        Mat U, dU;
        int param;
    };
    std::vector<Factor> fs;
    for (int l = 0; l < p; l++) {
        Factor ph;
        ph.U = Mat(dim);
        ph.dU = Mat(dim);
        ph.param = l;
        for (int x = 0; x < dim; x++) {
            double v = table[static_cast<size_t>(x)];
            std::complex<double> e = std::exp(iu * (sched.alpha[l] * v));
            ph.U.at(x, x) = e;
            ph.dU.at(x, x) = iu * v * e;
        }
        fs.push_back(std::move(ph));

        auto add_diffusors = [&](const MixerProgram& prog, double angle, int param) {
            std::complex<double> em = std::exp(-iu * angle);
            for (const auto& layer : prog.layers)
                for (const auto& d : layer) {
                    Factor f;
                    Mat P = diffusor_projector_matrix(d, spec.n);
                    f.U = mat_add(Mat::identity(dim), mat_scale(P, em - 1.0));
                    f.dU = mat_scale(P, -iu * em);
                    f.param = param;
                    fs.push_back(std::move(f));
                }
        };
        add_diffusors(spec.mixer, sched.beta[l], p + l);
        if (wg) add_diffusors(*spec.symcov, sched.gamma[l], 2 * p + l);
    }

    std::vector<std::vector<std::complex<double>>> S(fs.size() + 1);
    S[0] = prepare_initial(spec).amp;
    for (size_t j = 0; j < fs.size(); j++) S[j + 1] = mat_apply(fs[j].U, S[j]);

    const int nparams = p * (wg ? 3 : 2);
    std::vector<std::vector<std::complex<double>>> dpsi(
        nparams, std::vector<std::complex<double>>(dim, 0.0));
    for (size_t j = 0; j < fs.size(); j++) {
        auto v = mat_apply(fs[j].dU, S[j]);
        for (size_t t = j + 1; t < fs.size(); t++) v = mat_apply(fs[t].U, v);
        auto& acc = dpsi[fs[j].param];
        for (int x = 0; x < dim; x++) acc[x] += v[x];
    }

    auto sols = brute_solutions(inst);
    const auto& psiF = S.back();
    ScheduleGradient g;
    g.dalpha.assign(p, 0.0);
    g.dbeta.assign(p, 0.0);
    if (wg) g.dgamma.assign(p, 0.0);
    for (int q = 0; q < nparams; q++) {
        double acc = 0.0;
        for (uint64_t s : sols)
            acc += 2.0 * std::real(std::conj(psiF[s]) * dpsi[q][s]);
        if (q < p)
            g.dalpha[q] = acc;
        else if (q < 2 * p)
            g.dbeta[q - p] = acc;
        else
            g.dgamma[q - 2 * p] = acc;
    }
    return g;
}

} // namespace symmix
