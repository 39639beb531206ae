#include "schurchan/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "schurchan/applications.hpp"
#include "schurchan/channels.hpp"
#include "schurchan/errors.hpp"
#include "schurchan/streaming.hpp"

namespace schurchan {

double twirl_residual(const MatC& x, int samples, std::mt19937_64& rng) {
    if (x.rows() != x.cols() || x.rows() == 0) throw ValidationError("twirl_residual: x must be square");
    if (samples < 1) throw ValidationError("twirl_residual: need at least one sample");
    const int d = static_cast<int>(x.rows());
    MatC acc = MatC::Zero(d, d);
    for (int s = 0; s < samples; ++s) {
        MatC u = haar_unitary(d, rng);
        acc += u * x * u.adjoint();
    }
    acc /= double(samples);
    MatC want = x.trace() / double(d) * MatC::Identity(d, d);
    return max_abs_diff(acc, want);
}

double tv_distance(const Histogram& empirical, const RemovalDistribution& exact) {
    std::uint64_t total = 0;
    for (auto& [s, c] : empirical) total += c;
    if (total == 0) throw ValidationError("tv_distance: empty histogram");
    for (auto& [s, c] : empirical) {
        auto it = exact.find(s);
        if (c > 0 && (it == exact.end() || it->second == 0))
            throw ValidationError("tv_distance: outcome " + s.str() + " is outside the exact support");
    }
    double tv = 0;
    for (auto& [s, p] : exact) {
        auto it = empirical.find(s);
        double f = it == empirical.end() ? 0.0 : double(it->second) / double(total);
        tv += std::abs(f - static_cast<double>(p));
    }
    return tv / 2;
}

Histogram sample_histogram(const Staircase& lambda, std::uint64_t count, SamplerMode mode, std::mt19937_64& rng) {
    Histogram h;
    for (std::uint64_t i = 0; i < count; ++i) ++h[sample_remove_box(lambda, rng, mode)];
    return h;
}

void VerificationReport::add(std::string id, double residual, double threshold) {
    cases.push_back({std::move(id), residual, threshold, residual <= threshold});
}

bool VerificationReport::passed() const { return failures() == 0; }

std::size_t VerificationReport::failures() const {
    return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](auto& c) { return !c.pass; }));
}

std::mt19937_64 case_rng(std::uint64_t seed, const std::string& suite, std::uint64_t index) {
    std::uint64_t h = std::hash<std::string>{}(suite);
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(h), std::uint32_t(h >> 32),
                      std::uint32_t(index), std::uint32_t(index >> 32)};
    return std::mt19937_64(seq);
}

namespace {

// Reference constructions below work on site indices directly and share no
// code with the Schur-basis machinery they check.

std::vector<std::vector<int>> all_perms(int k) {
    std::vector<int> s(k);
    std::iota(s.begin(), s.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(s);
    while (std::next_permutation(s.begin(), s.end()));
    return out;
}

// Index map of the site permutation sigma on (C^d)^{(x)k}.
std::vector<Index> permuted_indices(const std::vector<int>& sigma, int d) {
    const int k = static_cast<int>(sigma.size());
    const Index dim = ipow(d, k);
    std::vector<Index> out(dim);
    std::vector<int> digit(k), moved(k);
    for (Index i = 0; i < dim; ++i) {
        Index r = i;
        for (int s = k - 1; s >= 0; --s) {
            digit[s] = static_cast<int>(r % d);
            r /= d;
        }
        for (int s = 0; s < k; ++s) moved[sigma[s]] = digit[s];
        Index j = 0;
        for (int s = 0; s < k; ++s) j = j * d + moved[s];
        out[i] = j;
    }
    return out;
}

MatC perm_average(const MatC& rho, int m, int d) {
    MatC acc = MatC::Zero(rho.rows(), rho.cols());
    auto perms = all_perms(m);
    for (auto& s : perms) {
        auto p = permuted_indices(s, d);
        for (Index i = 0; i < rho.rows(); ++i)
            for (Index j = 0; j < rho.cols(); ++j) acc(p[i], p[j]) += rho(i, j);
    }
    return acc / double(perms.size());
}

MatC sym_projector_by_perms(int n, int d) {
    const Index dim = ipow(d, n);
    MatC acc = MatC::Zero(dim, dim);
    auto perms = all_perms(n);
    for (auto& s : perms) {
        auto p = permuted_indices(s, d);
        for (Index i = 0; i < dim; ++i) acc(p[i], i) += 1.0;
    }
    return acc / double(perms.size());
}

double binom(int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

MatC werner(const MatC& rho, int m, int n, int d) {
    const Index extra = ipow(d, n - m);
    MatC p = sym_projector_by_perms(n, d);
    return binom(m + d - 1, m) / binom(n + d - 1, n) * p * kron(rho, MatC::Identity(extra, extra)) * p;
}

MatC ginibre(Index rows, Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    MatC z(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) z(i, j) = cplx(g(rng), g(rng));
    return z;
}

MatC random_state(Index dim, std::mt19937_64& rng) {
    MatC z = ginibre(dim, dim, rng);
    MatC r = z * z.adjoint();
    return r / r.trace();
}

VecC random_unit(Index dim, std::mt19937_64& rng) {
    VecC v = ginibre(dim, 1, rng);
    return v / v.norm();
}

MatC power(const MatC& rho, int k) {
    MatC out = MatC::Identity(1, 1);
    for (int i = 0; i < k; ++i) out = kron(out, rho);
    return out;
}

std::string tag(std::initializer_list<std::pair<const char*, std::string>> parts) {
    std::string s;
    for (auto& [k, v] : parts) s += (s.empty() ? "" : " ") + std::string(k) + "=" + v;
    return s;
}

std::string str(int x) { return std::to_string(x); }

// Every spec over (m,n,d) built from the admissible triples with psi = e_0.
std::vector<ExtremalSpec> every_spec(int m, int n, int d) {
    auto triples = enumerate_extremal_triples(m, n, d);
    auto lambdas = partitions(m, d);
    std::vector<std::vector<const ExtremalTriple*>> options(lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        for (auto& t : triples)
            if (t.lambda == lambdas[i]) options[i].push_back(&t);
    std::vector<ExtremalSpec> out;
    std::vector<std::size_t> pick(lambdas.size(), 0);
    while (true) {
        ExtremalSpec s{m, n, d, {}};
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            auto* t = options[i][pick[i]];
            s.assignments.push_back(make_assignment(t->lambda, t->mu, t->gamma));
        }
        out.push_back(std::move(s));
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
    }
    return out;
}

const int kShapes[][3] = {{1, 1, 2}, {2, 1, 2}, {1, 2, 2}, {2, 2, 2}, {3, 1, 2}, {2, 1, 3}};

struct Ctx {
    VerificationReport& rep;
    const SuiteOptions& opt;
    std::uint64_t next = 0;
    std::mt19937_64 rng() { return case_rng(opt.seed, rep.suite, next++); }
    double tol(double t) const { return opt.tol ? *opt.tol : t; }
};

void suite_haar(Ctx& c) {
    for (int d = 1; d <= 4; ++d) {
        auto rng = c.rng();
        double unit = 0, det = 0;
        for (int t = 0; t < 20; ++t) {
            MatC u = haar_unitary(d, rng);
            unit = std::max(unit, max_abs_diff(MatC(u.adjoint() * u), MatC::Identity(d, d)));
            det = std::max(det, std::abs(u.determinant() - 1.0));
        }
        c.rep.add(tag({{"unitary", ""}, {"d", str(d)}}), unit, c.tol(1e-12));
        c.rep.add(tag({{"det", ""}, {"d", str(d)}}), det, c.tol(1e-12));
    }
    // Statistical: each entry of the twirl average has standard deviation
    // below 0.01 at 10^4 samples for unit-norm X, so 0.02 leaves slack.
    for (int d = 2; d <= 3; ++d) {
        auto rng = c.rng();
        MatC x = ginibre(d, d, rng);
        x /= x.norm();
        c.rep.add(tag({{"twirl", ""}, {"d", str(d)}}), twirl_residual(x, 10000, rng), 0.02);
    }
}

void suite_schur_weyl(Ctx& c) {
    for (int d = 1; d <= 3; ++d)
        for (int m = 0; m <= 6; ++m) {
            std::uint64_t s = 0;
            for (auto& l : partitions(m, d)) s += dim_perm_irrep(l) * dim_gl_irrep(l);
            auto want = static_cast<std::uint64_t>(ipow(d, m));
            c.rep.add(tag({{"dim_sum m", str(m)}, {"d", str(d)}}), s == want ? 0.0 : 1.0, 0.0);
        }
    for (int d = 1; d <= 3; ++d)
        for (int k = 0; k <= 4; ++k)
            for (int l = 0; k + l <= 4; ++l) {
                std::uint64_t bad = 0;
                for (int a = 0; a <= 2; ++a)
                    for (int b = 0; b <= 1; ++b)
                        for (auto& mu : enumerate_staircases(a, b, d))
                            for (auto& [lam, list] : enumerate_paths(mu, k, l)) {
                                std::uint64_t s = 0;
                                for (auto& g : enumerate_staircases(k, l, d))
                                    s += paths_to(g, k, l).size() * lr_coeff(mu, g, lam);
                                if (s != list.size()) ++bad;
                            }
                c.rep.add(tag({{"path_count k", str(k)}, {"l", str(l)}, {"d", str(d)}}), double(bad), 0.0);
            }
}

void suite_lr(Ctx& c) {
    for (int d = 1; d <= 3; ++d) {
        std::vector<Staircase> labels;
        for (int a = 0; a <= 4; ++a)
            for (int b = 0; a + b <= 4; ++b)
                for (auto& s : enumerate_staircases(a, b, d)) labels.push_back(s);
        std::uint64_t bad = 0, checked = 0;
        for (auto& l : labels)
            for (auto& u : labels)
                for (auto& v : labels) {
                    if (v.size() != l.size() + u.size()) continue;
                    auto c0 = lr_coeff(l, u, v);
                    auto c1 = lr_coeff(u, l, v);
                    auto c2 = lr_coeff(u, v.dual(), l.dual());
                    auto c3 = lr_coeff(l.dual(), u.dual(), v.dual());
                    ++checked;
                    if (c0 != c1 || c0 != c2 || c0 != c3) ++bad;
                }
        c.rep.add(tag({{"lr_equalities d", str(d)}, {"triples", std::to_string(checked)}}), double(bad), 0.0);
    }
}

void suite_sampling(Ctx& c) {
    for (int m = 1; m <= 8; ++m) {
        std::uint64_t bad = 0;
        for (auto& l : partitions(m, m)) {
            auto exact = exact_removal_distribution(l);
            if (next_step_distribution(l, SamplerMode::alg1) != exact) ++bad;
            if (next_step_distribution(l, SamplerMode::alg3) != exact) ++bad;
        }
        c.rep.add(tag({{"exact_law m", str(m)}}), double(bad), 0.0);
    }
    // Statistical: with at most 3 outcomes, E[TV] is about 0.003 at 10^5
    // draws and exceeding 0.01 has probability far below 10^-3.
    for (auto& l : {Staircase{3, 1}, Staircase{4, 2, 1}})
        for (auto mode : {SamplerMode::alg1, SamplerMode::alg3}) {
            auto rng = c.rng();
            auto h = sample_histogram(l, 100000, mode, rng);
            c.rep.add(tag({{"tv", l.str()}, {"mode", to_string(mode)}}), tv_distance(h, exact_removal_distribution(l)),
                      0.01);
        }
}

void suite_vectorization(Ctx& c) {
    auto rng = c.rng();
    std::uniform_int_distribution<int> dim(1, 4);
    double worst = 0;
    for (int t = 0; t < 50; ++t) {
        const int a = dim(rng), b = dim(rng);
        MatC m = ginibre(b, a, rng), x = ginibre(a, a, rng), y = ginibre(b, b, rng);
        VecC v = vec(m);
        MatC lhs = trace_second(MatC(v * v.adjoint() * kron(y, MatC(x.transpose()))), b, a);
        worst = std::max(worst, max_abs_diff(lhs, MatC(m * x * m.adjoint() * y)));
    }
    c.rep.add("trace_identity instances=50", worst, c.tol(1e-12));
}

void suite_classification(Ctx& c) {
    for (auto& s : kShapes) {
        double worst = 0;
        for (auto& spec : every_spec(s[0], s[1], s[2]))
            worst = std::max(worst, (factored_channel(spec).matrix - extremal_choi(spec).matrix).norm());
        c.rep.add(tag({{"factored m", str(s[0])}, {"n", str(s[1])}, {"d", str(s[2])}}), worst, c.tol(1e-8));
    }
}

void suite_symmetries(Ctx& c) {
    for (auto& s : kShapes) {
        double worst = 0;
        for (auto& spec : every_spec(s[0], s[1], s[2])) {
            auto rng = c.rng();
            auto r = check_symmetries(extremal_choi(spec), 20, 1e-8, rng());
            worst = std::max({worst, r.unitary_residual, r.permutation_residual});
        }
        c.rep.add(tag({{"extremal m", str(s[0])}, {"n", str(s[1])}, {"d", str(s[2])}}), worst, c.tol(1e-8));
    }
    for (int d = 2; d <= 3; ++d) {
        auto rng = c.rng();
        auto r = check_symmetries(extremal_choi(purity_spec(3, d)), 20, 1e-8, rng());
        c.rep.add(tag({{"purity m", "3"}, {"d", str(d)}}), std::max(r.unitary_residual, r.permutation_residual),
                  c.tol(1e-8));
        r = check_symmetries(extremal_choi(cloning_spec(1, 2, d)), 20, 1e-8, rng());
        c.rep.add(tag({{"cloning m", "1"}, {"n", "2"}, {"d", str(d)}}),
                  std::max(r.unitary_residual, r.permutation_residual), c.tol(1e-8));
    }
}

void suite_irrep_forms(Ctx& c) {
    for (int d = 1; d <= 3; ++d)
        for (int m = 0; m <= 3; ++m)
            for (int n = 0; n <= 3; ++n) {
                auto rng = c.rng();
                double worst = 0;
                std::size_t count = 0;
                for (auto& t : enumerate_extremal_triples(m, n, d))
                    for (int k = 0; k < c.opt.trials; ++k) {
                        VecC psi = random_unit(static_cast<Index>(t.multiplicity), rng);
                        MatC ref = irrep_channel(t.lambda, t.mu, t.gamma, psi, IrrepForm::choi).choi().matrix;
                        for (auto f : {IrrepForm::embed_trace, IrrepForm::sandwich}) {
                            MatC other = irrep_channel(t.lambda, t.mu, t.gamma, psi, f).choi().matrix;
                            worst = std::max(worst, (other - ref).norm());
                        }
                        ++count;
                    }
                if (count == 0) continue;
                c.rep.add(tag({{"forms m", str(m)}, {"n", str(n)}, {"d", str(d)}}), worst, c.tol(1e-8));
            }
}

void suite_symmetrization(Ctx& c) {
    for (int d = 2; d <= 3; ++d)
        for (int m = 1; m <= 5; ++m) {
            auto rng = c.rng();
            double worst = 0;
            const int states = ipow(d, m) > 100 ? 1 : c.opt.trials;
            Index peak = 0;
            for (int t = 0; t < states; ++t) {
                MatC rho = random_state(ipow(d, m), rng);
                auto r = symmetrize(rho, m, d);
                worst = std::max(worst, (r.output - perm_average(rho, m, d)).norm());
                peak = r.ledger.peak_live_dim;
            }
            c.rep.add(tag({{"streamed m", str(m)}, {"d", str(d)}}), worst, c.tol(1e-9));
            // strict inequality peak < d^m, i.e. peak - d^m <= -1
            if (d == 2 && m >= 4)
                c.rep.add(tag({{"peak_minus_dm m", str(m)}, {"d", str(d)}}), double(peak - ipow(d, m)), -1.0);
        }
}

void suite_cloning(Ctx& c) {
    const int pairs[][2] = {{1, 2}, {1, 3}, {2, 3}, {2, 4}};
    for (int d = 2; d <= 3; ++d)
        for (auto& p : pairs) {
            const int m = p[0], n = p[1];
            auto rng = c.rng();
            const double want = binom(m + d - 1, m) / binom(n + d - 1, n);
            double oracle = 0, fid = 0, mean = 0, var = 0;
            std::vector<double> fs;
            for (int t = 0; t < 50; ++t) {
                VecC psi = random_unit(d, rng);
                auto r = clone(psi, m, n, d);
                fs.push_back(*r.fidelity);
                fid = std::max(fid, std::abs(*r.fidelity - want));
                if (t < c.opt.trials)
                    oracle = std::max(oracle, (r.output - werner(power(MatC(psi * psi.adjoint()), m), m, n, d)).norm());
            }
            for (double f : fs) mean += f / double(fs.size());
            for (double f : fs) var += (f - mean) * (f - mean) / double(fs.size());
            auto id = tag({{"m", str(m)}, {"n", str(n)}, {"d", str(d)}});
            c.rep.add("werner " + id, oracle, c.tol(1e-8));
            c.rep.add("fidelity " + id, fid, c.tol(1e-10));
            c.rep.add("variance " + id, var, c.tol(1e-12));
        }
}

void suite_purity(Ctx& c) {
    const double alpha = 0.3;
    for (int d = 2; d <= 3; ++d)
        for (int m = 2; m <= (d == 2 ? 4 : 3); ++m) {
            auto spec = purity_spec(m, d);
            Channel ch;
            ch.in_dim = ipow(d, m);
            ch.out_dim = d;
            ch.map = [&](const MatC& x) { return streamed_apply(spec, x).output; };
            double diff = (ch.choi(m, 1, d).matrix - extremal_choi(spec).matrix).norm();
            c.rep.add(tag({{"choi m", str(m)}, {"d", str(d)}}), diff, c.tol(1e-8));
        }
    // Fidelity gain over one copy: m = 2 qubits ties exactly, from three
    // copies the gain is strict.
    const int d = 2;
    auto rng = c.rng();
    VecC psi = random_unit(d, rng);
    const double single = 1 - alpha + alpha / d;
    for (int m = 2; m <= 4; ++m) {
        auto r = purity_amplify(power(depolarized(psi, alpha), m), m, d, psi);
        c.rep.add(tag({{"single_minus_fidelity m", str(m)}, {"d", "2"}}), single - *r.fidelity,
                  m == 2 ? 1e-12 : -1e-6);
    }
}

void suite_monte_carlo(Ctx& c) {
    auto rng = c.rng();
    auto spec = symmetrization_spec(2, 2);
    MatC rho = random_state(4, rng);
    MatC exact = streamed_apply(spec, rho).output;
    std::vector<double> xs, ys;
    const int reps = 40;
    for (int n : {100, 1000, 10000}) {
        double err = 0;
        for (int s = 0; s < reps; ++s) {
            StreamOptions o;
            o.mode = StreamMode::sample;
            o.trajectories = n;
            o.seed = rng();
            err += (streamed_apply(spec, rho, o).output - exact).squaredNorm();
        }
        xs.push_back(std::log(double(n)));
        ys.push_back(0.5 * std::log(err / reps));
    }
    const double mx = (xs[0] + xs[1] + xs[2]) / 3, my = (ys[0] + ys[1] + ys[2]) / 3;
    double sxy = 0, sxx = 0;
    for (int i = 0; i < 3; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    c.rep.add("rms_slope_deviation reps=40", std::abs(sxy / sxx + 0.5), 0.1);
}

using SuiteFn = void (*)(Ctx&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> r = {
        {"haar", suite_haar},
        {"schur_weyl", suite_schur_weyl},
        {"lr_symmetries", suite_lr},
        {"sampling", suite_sampling},
        {"vectorization", suite_vectorization},
        {"classification", suite_classification},
        {"symmetries", suite_symmetries},
        {"irrep_forms", suite_irrep_forms},
        {"symmetrization", suite_symmetrization},
        {"cloning", suite_cloning},
        {"purity", suite_purity},
        {"monte_carlo", suite_monte_carlo},
    };
    return r;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (auto& [name, fn] : registry()) out.push_back(name);
    return out;
}

VerificationReport run_suite(const std::string& name, const SuiteOptions& options) {
    if (options.trials < 1) throw ValidationError("verify: trials must be positive");
    for (auto& [n, fn] : registry())
        if (n == name) {
            VerificationReport rep{name, {}, options.seed};
            Ctx c{rep, options};
            fn(c);
            return rep;
        }
    throw ValidationError("verify: unknown suite '" + name + "'");
}

std::vector<VerificationReport> run_all(const SuiteOptions& options) {
    std::vector<VerificationReport> out;
    for (auto& name : suite_names()) out.push_back(run_suite(name, options));
    return out;
}

std::string format_report(const VerificationReport& report) {
    std::ostringstream os;
    os << std::setprecision(3);
    for (auto& c : report.cases)
        os << (c.pass ? "PASS  " : "FAIL  ") << report.suite << "  " << c.id << "  residual=" << c.residual
           << "  threshold=" << c.threshold << "\n";
    os << report.suite << ": " << report.cases.size() - report.failures() << "/" << report.cases.size()
       << " passed (seed " << report.seed << ")\n";
    return os.str();
}

}  // namespace schurchan
