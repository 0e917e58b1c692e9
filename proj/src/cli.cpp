#include "symmix/cli.hpp"

#include <chrono>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "symmix/io.hpp"
#include "symmix/rng.hpp"

namespace symmix {

namespace {

// Output plumbing shared by every subcommand: payload to --out (or stdout)
// plus a run manifest next to it (or on stderr).
struct Emitter {
    bool pretty = false;
    std::string subcommand;
    json config = json::object();
    std::map<std::string, std::string> digests;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    std::string load_text(const std::string& flag, const std::string& path) {
        std::string s = read_text_file(path);
        digests[flag] = digest_hex(s);
        return s;
    }
    json load(const std::string& flag, const std::string& path) {
        return json::parse(load_text(flag, path));
    }

    json manifest() {
        RunManifest m;
        m.subcommand = subcommand;
        m.config = config;
        m.input_digests = digests;
        m.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        return manifest_to_json(m);
    }

    void deliver(const std::string& content, const std::string& out_path) {
        std::string mtext = dump_json(manifest(), pretty);
        if (!out_path.empty()) {
            write_text_file(out_path, content);
            write_text_file(out_path + ".manifest.json", mtext);
        } else {
            std::cout << content;
            std::cerr << mtext;
        }
    }
    void deliver_json(const json& j, const std::string& out_path) {
        deliver(dump_json(j, pretty), out_path);
    }
};

std::optional<bool> parse_on_off(const std::string& s) {
    if (s.empty()) return std::nullopt;
    if (s == "on") return true;
    if (s == "off") return false;
    throw CLI::ValidationError("--partial-mixers", "expected on or off");
}

json summarize_grid(const GridResult& g) {
    return json{{"family", g.family == ScheduleFamilyKind::CONSTANT ? "constant" : "linear"},
                {"a", g.a},
                {"b", g.b},
                {"objective", g.objective}};
}

std::vector<SatInstance> instances_from_json(const json& j) {
    const json& arr = j.is_array() ? j : j.at("instances");
    std::vector<SatInstance> out;
    for (const auto& e : arr) out.push_back(instance_from_json(e));
    if (out.empty()) throw std::invalid_argument("no instances in file");
    return out;
}

// median (or mean) success per size for one ansatz kind, as fit input
std::vector<std::pair<double, double>> fit_points(const std::vector<BenchmarkRecord>& rs,
                                                  AnsatzKind kind, bool use_mean) {
    std::map<int, std::vector<double>> by_n;
    for (const auto& r : rs)
        if (r.kind == kind) by_n[r.n].push_back(r.success);
    std::vector<std::pair<double, double>> pts;
    for (auto& [n, v] : by_n) {
        double y;
        if (use_mean) {
            double s = 0;
            for (double x : v) s += x;
            y = s / static_cast<double>(v.size());
        } else {
            std::sort(v.begin(), v.end());
            size_t k = v.size();
            y = (k % 2) ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
        }
        if (y <= 0.0) throw std::invalid_argument("cannot fit: zero success probability");
        pts.push_back({static_cast<double>(n), 1.0 / y});
    }
    return pts;
}

} // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"toolkit for constraint-commuting operator search, generator "
                 "reduction, diffusor compilation and QAOA simulation"};
    app.require_subcommand(1);
    bool pretty = false;
    app.add_flag("--json-pretty", pretty, "indent JSON outputs");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random 1-in-3 SAT instance");
    int gen_n = 12;
    uint64_t gen_seed = 1;
    bool gen_sat = false;
    std::string gen_out;
    gen->add_option("-n,--vars", gen_n, "variable count")->required();
    gen->add_option("--seed", gen_seed, "PRNG seed");
    gen->add_flag("--satisfiable", gen_sat, "redraw until the instance has a solution");
    gen->add_option("--out", gen_out, "output file");

    // solve
    auto* solve = app.add_subcommand("solve", "enumerate solutions by brute force");
    std::string solve_in, solve_out;
    solve->add_option("--instance", solve_in, "instance JSON")->required();
    solve->add_option("--out", solve_out, "output file");

    // mds
    auto* mds = app.add_subcommand("mds", "maximum disjoint clause set");
    std::string mds_in, mds_out;
    mds->add_option("--instance", mds_in, "instance JSON")->required();
    mds->add_option("--out", mds_out, "output file");

    // ansatz
    auto* ansatz = app.add_subcommand("ansatz", "build a mixer ansatz for an instance");
    std::string ans_in, ans_out, ans_kind = "mds", ans_partial;
    int ans_locality = 4;
    bool ans_noreduce = false;
    ansatz->add_option("--instance", ans_in, "instance JSON")->required();
    ansatz->add_option("--kind", ans_kind, "x, mds or symcov")
        ->check(CLI::IsMember({"x", "mds", "symcov"}));
    ansatz->add_option("--locality", ans_locality, "symmetry-cover search locality");
    ansatz->add_option("--partial-mixers", ans_partial, "on or off")
        ->check(CLI::IsMember({"on", "off"}));
    ansatz->add_flag("--no-reduce", ans_noreduce, "keep unused variables");
    ansatz->add_option("--out", ans_out, "output file");

    // search
    auto* search = app.add_subcommand("search", "enumerate commuting terms for constraints");
    std::string search_in, search_out;
    int search_locality = 2;
    bool search_linear_only = false;
    search->add_option("--constraints", search_in, "constraints JSON")->required();
    search->add_option("--locality", search_locality, "max qubits per term");
    search->add_flag("--linear", search_linear_only, "use the linear decision procedure");
    search->add_option("--out", search_out, "output file");

    // reduce
    auto* reduce_cmd = app.add_subcommand("reduce", "group terms into commuting generator sets");
    std::string red_in, red_out;
    reduce_cmd->add_option("--in", red_in, "terms JSON")->required();
    reduce_cmd->add_option("--out", red_out, "output file");

    // compile
    auto* compile_cmd = app.add_subcommand("compile", "compile generator groups to diffusor layers");
    std::string comp_in, comp_out, comp_tag = "beta";
    compile_cmd->add_option("--in", comp_in, "groups JSON")->required();
    compile_cmd->add_option("--tag", comp_tag, "angle tag")->check(CLI::IsMember({"beta", "gamma"}));
    compile_cmd->add_option("--out", comp_out, "output file");

    // quadcheck
    auto* quad = app.add_subcommand("quadcheck", "quadratic sufficiency check for driver terms");
    std::string quad_constraint, quad_terms, quad_out;
    quad->add_option("--constraint", quad_constraint, "ising constraint JSON")->required();
    quad->add_option("--terms", quad_terms, "terms JSON")->required();
    quad->add_option("--out", quad_out, "output file");

    // run
    auto* run_cmd = app.add_subcommand("run", "simulate an ansatz under a schedule");
    std::string run_inst, run_ans, run_sched, run_out;
    bool run_dump = false;
    run_cmd->add_option("--instance", run_inst, "instance JSON")->required();
    run_cmd->add_option("--ansatz", run_ans, "ansatz JSON")->required();
    run_cmd->add_option("--schedule", run_sched, "schedule JSON")->required();
    run_cmd->add_flag("--dump-amplitudes", run_dump, "include final amplitudes (n <= 12)");
    run_cmd->add_option("--out", run_out, "output file");

    // train
    auto* train_cmd = app.add_subcommand("train", "fit a schedule on training instances");
    std::string tr_in, tr_out, tr_kind = "x", tr_partial, tr_seed_sched;
    int tr_p = 6, tr_steps = 2000, tr_batch = 8, tr_locality = 4;
    double tr_eps = 1e-4, tr_rate = 0.05;
    uint64_t tr_fd_seed = 1;
    train_cmd->add_option("--instances", tr_in, "JSON array of instances")->required();
    train_cmd->add_option("--kind", tr_kind, "x, mds or symcov")
        ->check(CLI::IsMember({"x", "mds", "symcov"}));
    train_cmd->add_option("-p,--rounds", tr_p, "QAOA rounds");
    train_cmd->add_option("--steps", tr_steps, "descent steps");
    train_cmd->add_option("--batch", tr_batch, "batch size");
    train_cmd->add_option("--epsilon", tr_eps, "finite-difference perturbation");
    train_cmd->add_option("--rate", tr_rate, "base learning rate");
    train_cmd->add_option("--fd-seed", tr_fd_seed, "batch-sampling seed");
    train_cmd->add_option("--seed-schedule", tr_seed_sched,
                          "start from this schedule and skip the grid sweep");
    train_cmd->add_option("--locality", tr_locality, "symmetry-cover search locality");
    train_cmd->add_option("--partial-mixers", tr_partial, "on or off")
        ->check(CLI::IsMember({"on", "off"}));
    train_cmd->add_option("--out", tr_out, "output file");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "run a benchmark sweep over sizes");
    std::string be_sched, be_out, be_kind = "x", be_partial;
    std::vector<int> be_sizes{12, 14, 16};
    int be_count = 50, be_locality = 4;
    uint64_t be_seed = 1;
    bool be_fit_mean = false;
    bench_cmd->add_option("--schedule", be_sched, "schedule JSON")->required();
    bench_cmd->add_option("--kind", be_kind, "x, mds or symcov")
        ->check(CLI::IsMember({"x", "mds", "symcov"}));
    bench_cmd->add_option("--sizes", be_sizes, "instance sizes")->delimiter(',');
    bench_cmd->add_option("--count", be_count, "instances per size");
    bench_cmd->add_option("--seed", be_seed, "master seed");
    bench_cmd->add_option("--locality", be_locality, "symmetry-cover search locality");
    bench_cmd->add_option("--partial-mixers", be_partial, "on or off")
        ->check(CLI::IsMember({"on", "off"}));
    bench_cmd->add_flag("--fit-mean", be_fit_mean, "fit mean instead of median success");
    bench_cmd->add_option("--out", be_out, "CSV output file");

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "fit A*B^n to inverse success from bench CSV");
    std::string fit_in, fit_out;
    bool fit_mean = false;
    fit_cmd->add_option("--in", fit_in, "bench CSV")->required();
    fit_cmd->add_flag("--mean", fit_mean, "aggregate by mean instead of median");
    fit_cmd->add_option("--out", fit_out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Emitter em;
    em.pretty = pretty;
    try {
        if (gen->parsed()) {
            em.subcommand = "gen";
            em.config = {{"n", gen_n}, {"seed", gen_seed}, {"satisfiable", gen_sat}};
            SatInstance inst;
            if (gen_sat) {
                SatisfiableDraw d = generate_satisfiable(gen_n, gen_seed);
                inst = d.inst;
                em.config["attempts"] = d.attempts;
            } else {
                inst = generate(gen_n, gen_seed);
            }
            em.deliver_json(instance_to_json(inst), gen_out);
        } else if (solve->parsed()) {
            em.subcommand = "solve";
            SatInstance inst = instance_from_json(em.load("instance", solve_in));
            em.config = {{"n", inst.n}};
            auto sols = brute_solutions(inst);
            json arr = json::array();
            for (uint64_t s : sols) arr.push_back(mask_to_hex(s));
            em.deliver_json(json{{"n", inst.n}, {"count", sols.size()}, {"solutions", arr}},
                            solve_out);
        } else if (mds->parsed()) {
            em.subcommand = "mds";
            SatInstance inst = instance_from_json(em.load("instance", mds_in));
            em.deliver_json(mds_to_json(find_mds(inst)), mds_out);
        } else if (ansatz->parsed()) {
            em.subcommand = "ansatz";
            SatInstance inst = instance_from_json(em.load("instance", ans_in));
            AnsatzConfig cfg;
            cfg.symcov_locality = ans_locality;
            cfg.partial_mixers = parse_on_off(ans_partial);
            em.config = {{"kind", ans_kind},
                         {"locality", ans_locality},
                         {"partial_mixers", ans_partial.empty() ? "default" : ans_partial},
                         {"reduce", !ans_noreduce}};
            json out;
            if (ans_noreduce) {
                out["instance"] = instance_to_json(inst);
                out["ansatz"] = ansatz_to_json(build_ansatz(inst, kind_from_string(ans_kind), cfg));
            } else {
                ReduceResult red = reduce(inst);
                out["instance"] = instance_to_json(red.inst);
                out["var_map"] = red.var_map;
                out["ansatz"] =
                    ansatz_to_json(build_ansatz(red.inst, kind_from_string(ans_kind), cfg));
            }
            em.deliver_json(out, ans_out);
        } else if (search->parsed()) {
            em.subcommand = "search";
            ConstraintsDoc doc = constraints_from_json(em.load("constraints", search_in));
            SearchConfig cfg;
            cfg.max_locality = search_locality;
            em.config = {{"locality", search_locality}, {"linear", search_linear_only}};
            std::vector<HermitianPair> found;
            if (search_linear_only) {
                if (!doc.all_linear())
                    throw std::invalid_argument(
                        "--linear requires every constraint in linear shorthand");
                found = search_linear(doc.linear, doc.n, cfg);
            } else {
                found = search_poly(doc.poly, doc.n, cfg);
            }
            em.deliver_json(pairs_to_json(found), search_out);
        } else if (reduce_cmd->parsed()) {
            em.subcommand = "reduce";
            auto pairs = pairs_from_json(em.load("in", red_in));
            em.deliver_json(groups_to_json(select_generators(pairs)), red_out);
        } else if (compile_cmd->parsed()) {
            em.subcommand = "compile";
            GeneratorCollection groups = groups_from_json(em.load("in", comp_in));
            AngleTag tag = comp_tag == "beta" ? AngleTag::beta : AngleTag::gamma;
            em.config = {{"tag", comp_tag}};
            em.deliver_json(program_to_json(compile_mixer(groups, tag)), comp_out);
        } else if (quad->parsed()) {
            em.subcommand = "quadcheck";
            IsingConstraint c = ising_from_json(em.load("constraint", quad_constraint));
            auto pairs = pairs_from_json(em.load("terms", quad_terms));
            std::string report;
            for (size_t i = 0; i < pairs.size(); i++) {
                const auto& p = pairs[i];
                if (p.term.x != 0 || p.term.y != 0)
                    throw std::invalid_argument(
                        "quadcheck needs plain ladder terms (no diagonal dressing)");
                ZPair z;
                z.alpha = p.alpha;
                z.term = ZTerm{0, p.term.v, p.term.w};
                QuadVerdict v = sufficient_quadratic_verdict(z, c);
                report += "term " + std::to_string(i) + ": ";
                switch (v) {
                    case QuadVerdict::ok: report += "pass\n"; break;
                    case QuadVerdict::linear_fails: report += "fail (linear condition)\n"; break;
                    case QuadVerdict::quadratic_fails:
                        report += "fail (quadratic condition)\n";
                        break;
                    case QuadVerdict::cross_fails:
                        report += "fail (cross-support condition)\n";
                        break;
                }
            }
            em.deliver(report, quad_out);
        } else if (run_cmd->parsed()) {
            em.subcommand = "run";
            SatInstance inst = instance_from_json(em.load("instance", run_inst));
            json aj = em.load("ansatz", run_ans);
            if (aj.contains("ansatz")) aj = aj.at("ansatz");
            AnsatzSpec spec = ansatz_from_json(aj);
            Schedule sched = schedule_from_json(em.load("schedule", run_sched));
            em.config = {{"rounds", sched.rounds()}, {"dump_amplitudes", run_dump}};
            if (run_dump && inst.n > 12)
                throw std::invalid_argument("amplitude dump is limited to n <= 12");
            RunResult r = run(inst, spec, sched);
            json out{{"success", r.success}, {"round_norms", r.round_norms}};
            if (run_dump) {
                json amps = json::array();
                for (const auto& a : r.psi.amp) amps.push_back(json::array({a.real(), a.imag()}));
                out["amplitudes"] = amps;
            }
            em.deliver_json(out, run_out);
        } else if (train_cmd->parsed()) {
            em.subcommand = "train";
            auto instances = instances_from_json(em.load("instances", tr_in));
            AnsatzConfig cfg;
            cfg.symcov_locality = tr_locality;
            cfg.partial_mixers = parse_on_off(tr_partial);
            TrainOptions opt;
            opt.p = tr_p;
            opt.fd = FdOptions{tr_steps, tr_eps, tr_rate, tr_batch, tr_fd_seed};
            if (!tr_seed_sched.empty())
                opt.seed = schedule_from_json(em.load("seed_schedule", tr_seed_sched));
            em.config = {{"kind", tr_kind}, {"p", tr_p},         {"steps", tr_steps},
                         {"batch", tr_batch}, {"epsilon", tr_eps}, {"rate", tr_rate},
                         {"fd_seed", tr_fd_seed}};
            TrainSet set = make_train_set(instances, kind_from_string(tr_kind), cfg);
            TrainResult res = train_ansatz(set, opt);
            json out{{"kind", tr_kind},
                     {"p", tr_p},
                     {"schedule", schedule_to_json(res.schedule)},
                     {"objective", res.objective}};
            if (res.grid) out["grid"] = summarize_grid(*res.grid);
            em.deliver_json(out, tr_out);
        } else if (bench_cmd->parsed()) {
            em.subcommand = "bench";
            Schedule sched = schedule_from_json(em.load("schedule", be_sched));
            AnsatzConfig cfg;
            cfg.symcov_locality = be_locality;
            cfg.partial_mixers = parse_on_off(be_partial);
            em.config = {{"kind", be_kind},   {"sizes", be_sizes}, {"count", be_count},
                         {"seed", be_seed},   {"p", sched.rounds()}};
            AnsatzKind kind = kind_from_string(be_kind);
            BenchmarkResult res = benchmark(be_sizes, be_count, kind, cfg, sched, be_seed);
            json sizes = json::array();
            for (const auto& s : res.summary)
                sizes.push_back(json{{"n", s.n}, {"median", s.median}, {"q1", s.q1}, {"q3", s.q3}});
            json summary{{"kind", be_kind}, {"p", sched.rounds()}, {"sizes", sizes}};
            std::map<int, int> distinct;
            for (int n : be_sizes) distinct[n]++;
            if (distinct.size() >= 2) {
                auto pts = fit_points(res.records, kind, be_fit_mean);
                summary["fit"] = fit_to_json(fit_exponential(pts));
                json pj = json::array();
                for (const auto& [n, y] : pts) pj.push_back(json::array({n, y}));
                summary["fit_points"] = pj;
            }
            std::string csv = records_to_csv(res.records);
            if (!be_out.empty()) {
                write_text_file(be_out + ".summary.json", dump_json(summary, pretty));
                em.deliver(csv, be_out);
            } else {
                em.deliver(csv + dump_json(summary, pretty), "");
            }
        } else if (fit_cmd->parsed()) {
            em.subcommand = "fit";
            auto records = records_from_csv(em.load_text("in", fit_in));
            em.config = {{"mean", fit_mean}};
            json out = json::object();
            for (AnsatzKind k : {AnsatzKind::X, AnsatzKind::MDS, AnsatzKind::MDS_SYMCOV}) {
                auto pts = fit_points(records, k, fit_mean);
                if (pts.size() < 2) continue;
                json fj = fit_to_json(fit_exponential(pts));
                json pj = json::array();
                for (const auto& [n, y] : pts) pj.push_back(json::array({n, y}));
                fj["points"] = pj;
                out[kind_to_string(k)] = fj;
            }
            if (out.empty())
                throw std::invalid_argument("CSV has no ansatz with two or more sizes");
            em.deliver_json(out, fit_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace symmix
