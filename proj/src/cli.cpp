#include "schurchan/cli.hpp"

#include <iomanip>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "schurchan/applications.hpp"
#include "schurchan/channels.hpp"
#include "schurchan/errors.hpp"
#include "schurchan/io.hpp"
#include "schurchan/streaming.hpp"
#include "schurchan/verify.hpp"

namespace schurchan {

namespace {

struct StreamFlags {
    std::string mode = "exact";
    int trajectories = 1000;
    std::uint64_t seed = 1;
    std::string sampler = "alg3";
};

void add_stream_flags(CLI::App* sub, StreamFlags& f) {
    sub->add_option("--mode", f.mode, "exact or sample")->check(CLI::IsMember({"exact", "sample"}));
    sub->add_option("--trajectories", f.trajectories, "Monte-Carlo trajectories in sample mode")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", f.seed, "rng seed");
    sub->add_option("--sampler", f.sampler, "GT path sampler")->check(CLI::IsMember({"alg1", "alg3"}));
}

StreamOptions stream_options(const StreamFlags& f) {
    StreamOptions o;
    o.mode = stream_mode_from_string(f.mode);
    o.trajectories = f.trajectories;
    o.seed = f.seed;
    o.sampler = sampler_mode_from_string(f.sampler);
    return o;
}

// Inline JSON if it looks like an array, a file path otherwise.
Json json_arg(const std::string& s) {
    if (!s.empty() && (s.front() == '[' || s.front() == '{')) {
        try {
            return Json::parse(s);
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError(std::string("inline JSON: ") + e.what());
        }
    }
    return read_json(s);
}

std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

void print_ledger(std::ostream& out, const ResourceLedger& l) {
    out << "simple_cg " << l.num_simple_cg << "\n"
        << "simple_dual_cg " << l.num_simple_dual_cg << "\n"
        << "inverse_cg " << l.num_inverse_cg << "\n"
        << "peak_live_dim " << l.peak_live_dim << "\n"
        << "classical_samples " << l.classical_samples << "\n"
        << "r " << l.r << "\nr_prime " << l.r_prime << "\n";
}

int cmd_classify(std::ostream& out, int m, int n, int d, bool json) {
    auto triples = enumerate_extremal_triples(m, n, d);
    if (json) {
        out << dump(Json(triples)) << "\n";
        return exit_ok;
    }
    out << triples.size() << " triples for m=" << m << " n=" << n << " d=" << d << "\n";
    for (auto& t : triples)
        out << "lambda=" << t.lambda << " mu=" << t.mu << " gamma=" << t.gamma << " multiplicity=" << t.multiplicity
            << "\n";
    return exit_ok;
}

struct SimulateArgs {
    std::string spec, state, out;
    bool stream = false;
    bool ledger = false;
    StreamFlags flags;
};

int cmd_simulate(std::ostream& out, const SimulateArgs& a) {
    ExtremalSpec spec = json_arg(a.spec).get<ExtremalSpec>();
    MatC rho = json_arg(a.state).get<MatrixFile>().matrix;
    Json rec;
    if (a.stream || a.flags.mode == "sample") {
        auto res = streamed_apply(spec, rho, stream_options(a.flags));
        rec["output"] = MatrixFile{res.output, {}};
        if (a.ledger) rec["ledger"] = res.ledger;
    } else {
        check_dense_limit(ipow(spec.d, spec.m) * ipow(spec.d, spec.n), "simulate");
        rec["output"] = MatrixFile{apply_channel(extremal_choi(spec), rho), {}};
    }
    if (!a.out.empty()) {
        write_json(a.out, rec["output"]);
        rec.erase("output");
        if (rec.empty()) return exit_ok;
    }
    out << dump(rec) << "\n";
    return exit_ok;
}

struct SampleArgs {
    std::vector<int> shape;
    std::string mode = "alg3";
    std::uint64_t count = 10000;
    std::uint64_t seed = 1;
    bool paths = false;
    bool json = false;
};

int cmd_sample(std::ostream& out, const SampleArgs& a) {
    Staircase lambda(a.shape);
    validate(lambda);
    if (!lambda.is_partition()) throw ValidationError("sample: shape must be a partition");
    if (a.count == 0) throw ValidationError("sample: count must be positive");
    const SamplerMode mode = sampler_mode_from_string(a.mode);
    std::mt19937_64 rng(a.seed);
    if (a.paths) {
        if (lambda.size() == 0) throw ValidationError("sample: shape has no boxes");
        std::map<std::vector<int>, std::uint64_t> freq;
        for (std::uint64_t i = 0; i < a.count; ++i) ++freq[sample_gt_path(lambda, rng, mode).rows()];
        const double want = 1.0 / double(dim_perm_irrep(lambda));
        double tv = 0;
        Json rows = Json::array();
        for (auto& [r, c] : freq) tv += std::abs(double(c) / double(a.count) - want);
        tv += want * double(dim_perm_irrep(lambda) - freq.size());
        tv /= 2;
        if (a.json) {
            for (auto& [r, c] : freq) rows.push_back(Json{{"rows", r}, {"count", c}});
            out << dump(Json{{"shape", lambda}, {"mode", a.mode}, {"seed", a.seed}, {"paths", rows}, {"tv", tv}})
                << "\n";
            return exit_ok;
        }
        out << "rows_added count frequency exact\n";
        for (auto& [r, c] : freq) {
            for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i] + 1;
            out << " " << c << " " << num(double(c) / double(a.count)) << " " << num(want) << "\n";
        }
        out << "tv " << num(tv) << "\n";
        return exit_ok;
    }
    auto h = sample_histogram(lambda, a.count, mode, rng);
    auto exact = exact_removal_distribution(lambda);
    const double tv = tv_distance(h, exact);
    if (a.json) {
        out << dump(Json{{"shape", lambda},
                         {"mode", a.mode},
                         {"seed", a.seed},
                         {"histogram", histogram_json(h)},
                         {"exact", distribution_json(exact)},
                         {"tv", tv}})
            << "\n";
        return exit_ok;
    }
    out << "shape count frequency exact\n";
    for (auto& [s, p] : exact) {
        auto it = h.find(s);
        std::uint64_t c = it == h.end() ? 0 : it->second;
        out << s << " " << c << " " << num(double(c) / double(a.count)) << " " << p << "\n";
    }
    out << "tv " << num(tv) << "\n";
    return exit_ok;
}

struct VerifyArgs {
    bool all = false;
    std::vector<std::string> suites;
    std::uint64_t seed = 1;
    int trials = 5;
    double tol = -1;
    std::string json;
};

int cmd_verify(std::ostream& out, const VerifyArgs& a) {
    SuiteOptions opt;
    opt.seed = a.seed;
    opt.trials = a.trials;
    if (a.tol >= 0) opt.tol = a.tol;
    std::vector<std::string> names = a.all ? suite_names() : a.suites;
    if (names.empty()) throw CLI::ValidationError("verify", "pass --all or at least one --suite");
    Json records = Json::array();
    std::size_t failed = 0;
    for (auto& n : names) {
        auto rep = run_suite(n, opt);
        out << format_report(rep);
        records.push_back(rep);
        if (!rep.passed()) ++failed;
    }
    out << (failed ? "FAILED " : "OK ") << names.size() - failed << "/" << names.size() << " suites passed\n";
    if (!a.json.empty()) write_json(a.json, records);
    return failed ? exit_failure : exit_ok;
}

struct EstimateArgs {
    int m = 0, n = 0, d = 0;
    int r = -1, r_prime = -1, k = 0, l = 0;
    std::string app;
    bool json = false;
};

int cmd_estimate(std::ostream& out, const EstimateArgs& a) {
    int r = a.r < 0 ? std::min(a.d, a.m) : a.r;
    int rp = a.r_prime < 0 ? std::min(a.d, a.n) : a.r_prime;
    int k = a.k, l = a.l;
    std::string label = "custom";
    if (a.app == "symmetrize") {
        if (a.n != a.m) throw ValidationError("estimate: symmetrization has n = m");
        k = l = 0;
        label = "symmetrization";
    } else if (a.app == "clone") {
        if (a.n <= a.m) throw ValidationError("estimate: cloning needs n > m");
        r = rp = 1;
        k = 0;
        l = a.n - a.m;
        label = "cloning";
    } else if (a.app == "purify") {
        if (a.n != 1) throw ValidationError("estimate: purity amplification has n = 1");
        k = 1;
        l = 0;
        label = "purity";
    }
    auto c = resource_estimate(a.m, a.n, a.d, r, rp, k, l);
    if (a.json)
        out << dump(Json{{"label", label}, {"report", c}}) << "\n";
    else
        out << format_report({{label, c}});
    return exit_ok;
}

struct AppArgs {
    std::string state, psi, reference, out;
    int m = 0, n = 0, d = 0;
    double alpha = -1;
    bool json = false;
    StreamFlags flags;
};

MatC power_of(const MatC& rho, int k) {
    MatC out = MatC::Identity(1, 1);
    for (int i = 0; i < k; ++i) out = kron(out, rho);
    return out;
}

int report_app(std::ostream& out, const AppArgs& a, const AppResult& r) {
    Json rec = app_result_json(r);
    if (!a.out.empty()) write_json(a.out, rec);
    if (a.json) {
        out << dump(rec) << "\n";
        return exit_ok;
    }
    out << "trace " << num(r.output.trace().real()) << "\n";
    if (r.fidelity) out << "fidelity " << num(*r.fidelity) << "\n";
    print_ledger(out, r.ledger);
    return exit_ok;
}

int cmd_symmetrize(std::ostream& out, const AppArgs& a) {
    if (a.state.empty()) throw ValidationError("symmetrize: --state is required");
    MatC rho = json_arg(a.state).get<MatrixFile>().matrix;
    return report_app(out, a, symmetrize(rho, a.m, a.d, stream_options(a.flags)));
}

int cmd_clone(std::ostream& out, const AppArgs& a) {
    if (!a.psi.empty() == !a.state.empty()) throw ValidationError("clone: pass exactly one of --psi, --state");
    if (!a.psi.empty())
        return report_app(out, a, clone(parse_complex_array(json_arg(a.psi)), a.m, a.n, a.d, stream_options(a.flags)));
    MatC rho = json_arg(a.state).get<MatrixFile>().matrix;
    return report_app(out, a, clone(rho, a.m, a.n, a.d, stream_options(a.flags)));
}

int cmd_purify(std::ostream& out, const AppArgs& a) {
    std::optional<VecC> ref;
    if (!a.reference.empty()) ref = parse_complex_array(json_arg(a.reference));
    MatC rho;
    if (!a.psi.empty()) {
        if (!a.state.empty()) throw ValidationError("purify: pass one of --psi, --state");
        if (a.alpha < 0 || a.alpha > 1) throw ValidationError("purify: --psi needs --alpha in [0,1]");
        VecC psi = parse_complex_array(json_arg(a.psi));
        if (!ref) ref = psi;
        rho = power_of(depolarized(psi, a.alpha), a.m);
    } else {
        if (a.state.empty()) throw ValidationError("purify: pass --state or --psi with --alpha");
        rho = json_arg(a.state).get<MatrixFile>().matrix;
    }
    return report_app(out, a, purity_amplify(rho, a.m, a.d, ref, stream_options(a.flags)));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Unitary-equivariant, permutation-invariant channels: construction, streaming and checks"};
    app.require_subcommand(1);

    int cm = 0, cn = 0, cd = 0;
    bool cjson = false;
    auto* classify = app.add_subcommand("classify", "List the extremal triples for (m, n, d)");
    classify->add_option("m", cm)->required()->check(CLI::NonNegativeNumber);
    classify->add_option("n", cn)->required()->check(CLI::NonNegativeNumber);
    classify->add_option("d", cd)->required()->check(CLI::PositiveNumber);
    classify->add_flag("--json", cjson, "print a JSON array");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Apply an extremal spec to a state");
    simulate->add_option("--spec", sim.spec, "spec file or inline JSON")->required();
    simulate->add_option("--state", sim.state, "matrix file or inline JSON")->required();
    simulate->add_flag("--stream", sim.stream, "use the streamed schedule instead of the dense Choi matrix");
    simulate->add_flag("--ledger", sim.ledger, "include the resource ledger (streamed runs)");
    simulate->add_option("--out", sim.out, "write the output matrix here");
    add_stream_flags(simulate, sim.flags);

    SampleArgs smp;
    auto* sample = app.add_subcommand("sample", "Sample box removals or GT paths");
    sample->add_option("--shape", smp.shape, "partition, e.g. 3,1")->required()->delimiter(',');
    sample->add_option("--mode", smp.mode, "alg1 or alg3")->check(CLI::IsMember({"alg1", "alg3"}));
    sample->add_option("--count", smp.count, "number of samples");
    sample->add_option("--seed", smp.seed, "rng seed");
    sample->add_flag("--paths", smp.paths, "sample whole GT paths instead of one removal");
    sample->add_flag("--json", smp.json, "print a JSON record");

    VerifyArgs ver;
    auto* verify = app.add_subcommand("verify", "Run invariant suites");
    verify->add_flag("--all", ver.all, "run every suite");
    verify->add_option("--suite", ver.suites, "suite name (repeatable)")->check(CLI::IsMember(suite_names()));
    verify->add_option("--seed", ver.seed, "suite seed");
    verify->add_option("--trials", ver.trials, "random instances per case")->check(CLI::PositiveNumber);
    verify->add_option("--tol", ver.tol, "override numerical-identity thresholds")->check(CLI::NonNegativeNumber);
    verify->add_option("--json", ver.json, "write the reports here");

    EstimateArgs est;
    auto* estimate = app.add_subcommand("estimate", "Resource counts of a streamed channel");
    estimate->add_option("m", est.m)->required()->check(CLI::NonNegativeNumber);
    estimate->add_option("n", est.n)->required()->check(CLI::NonNegativeNumber);
    estimate->add_option("d", est.d)->required()->check(CLI::PositiveNumber);
    estimate->add_option("--r", est.r, "input label length (default min(d,m))");
    estimate->add_option("--r-prime", est.r_prime, "output label length (default min(d,n))");
    estimate->add_option("--k", est.k, "resource path additions");
    estimate->add_option("--l", est.l, "resource path removals");
    estimate->add_option("--app", est.app, "preset")->check(CLI::IsMember({"symmetrize", "clone", "purify"}));
    estimate->add_flag("--json", est.json, "print a JSON record");

    AppArgs ap;
    auto* apps = app.add_subcommand("apps", "Worked applications");
    apps->require_subcommand(1);
    auto common = [&](CLI::App* s, bool needs_n) {
        s->add_option("--m", ap.m, "input copies")->required()->check(CLI::PositiveNumber);
        if (needs_n) s->add_option("--n", ap.n, "output copies")->required()->check(CLI::PositiveNumber);
        s->add_option("--d", ap.d, "local dimension")->required()->check(CLI::PositiveNumber);
        s->add_option("--state", ap.state, "input matrix file or inline JSON");
        s->add_option("--out", ap.out, "write the JSON record here");
        s->add_flag("--json", ap.json, "print the JSON record");
        add_stream_flags(s, ap.flags);
    };
    auto* sym = apps->add_subcommand("symmetrize", "Uniformly random site permutation");
    common(sym, false);
    auto* cl = apps->add_subcommand("clone", "Optimal symmetric cloning m -> n");
    common(cl, true);
    cl->add_option("--psi", ap.psi, "pure input state [[re,im],...] (file or inline)");
    auto* pur = apps->add_subcommand("purify", "Purity amplification m -> 1");
    common(pur, false);
    pur->add_option("--psi", ap.psi, "noiseless state; with --alpha builds the depolarized copies");
    pur->add_option("--alpha", ap.alpha, "depolarizing strength");
    pur->add_option("--reference", ap.reference, "state to report the fidelity against");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_usage;
    }

    try {
        if (*classify) return cmd_classify(out, cm, cn, cd, cjson);
        if (*simulate) return cmd_simulate(out, sim);
        if (*sample) return cmd_sample(out, smp);
        if (*verify) return cmd_verify(out, ver);
        if (*estimate) return cmd_estimate(out, est);
        if (*sym) return cmd_symmetrize(out, ap);
        if (*cl) return cmd_clone(out, ap);
        if (*pur) return cmd_purify(out, ap);
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_failure;
    }
    return exit_usage;
}

}  // namespace schurchan
