#include "schurchan/streaming.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

#include "schurchan/errors.hpp"
#include "schurchan/rep_kernel.hpp"

namespace schurchan {

namespace {

Index qdim(const Staircase& s) { return static_cast<Index>(dim_gl_irrep(s)); }

// Block B_{from -> to} of the simple CG transform on Q_from (x) site.
MatR cg_block(const Staircase& from, const Staircase& to, bool dual) {
    const auto& cg = simple_cg(from, dual);
    int blk = cg.find(to);
    if (blk < 0) throw ValidationError("no simple CG block " + from.str() + " -> " + to.str());
    return cg.block_rows(blk);
}

// Partial trace over the site of a rectangular (qa d) x (qb d) block.
MatC trace_site_rect(const MatC& x, Index qa, Index qb, int d) {
    MatC out = MatC::Zero(qa, qb);
    for (Index a = 0; a < qa; ++a)
        for (Index b = 0; b < qb; ++b)
            for (int s = 0; s < d; ++s) out(a, b) += x(a * d + s, b * d + s);
    return out;
}

MatC embed_levels(const PathState& state, const MatC& input, bool trace_sites, ResourceLedger* ledger) {
    validate(state);
    const Staircase& lambda = state.end();
    const int d = state.d, L = state.k + state.l;
    const Index ql = qdim(lambda);
    if (input.rows() != ql || input.cols() != ql)
        throw ValidationError("path_embedding: input is not an operator on Q_" + lambda.str());

    std::vector<const GtPath*> paths;
    VecC amp(static_cast<Index>(state.amplitudes.size()));
    for (auto& [p, a] : state.amplitudes) {
        amp(static_cast<Index>(paths.size())) = a;
        paths.push_back(&p);
    }
    // level j: distinct prefixes nu^0..nu^j, each path's prefix index
    std::vector<std::vector<std::vector<Staircase>>> prefixes(L + 1);
    for (int j = 0; j <= L; ++j)
        for (std::size_t i = 0; i < paths.size(); ++i) {
            std::vector<Staircase> pre(paths[i]->steps.begin(), paths[i]->steps.begin() + j + 1);
            auto& lv = prefixes[j];
            auto it = std::find(lv.begin(), lv.end(), pre);
            if (it == lv.end()) lv.push_back(std::move(pre));
        }

    MatC x = kron(MatC(amp * amp.adjoint()), input);
    Index emitted = 1;
    for (int j = L; j >= 1; --j) {
        const bool dual = j - 1 >= state.k;
        const auto& hi = prefixes[j];
        const auto& lo = prefixes[j - 1];
        std::vector<Index> q_hi, q_lo, off_hi(hi.size() + 1, 0), off_lo(lo.size() + 1, 0);
        for (auto& p : hi) q_hi.push_back(qdim(p.back()));
        for (auto& p : lo) q_lo.push_back(qdim(p.back()));
        for (std::size_t i = 0; i < hi.size(); ++i) off_hi[i + 1] = off_hi[i] + q_hi[i] * emitted;
        for (std::size_t i = 0; i < lo.size(); ++i) off_lo[i + 1] = off_lo[i] + q_lo[i] * d * emitted;
        MatR g = MatR::Zero(off_lo.back(), off_hi.back());
        for (std::size_t i = 0; i < hi.size(); ++i) {
            std::vector<Staircase> parent(hi[i].begin(), hi[i].end() - 1);
            auto pi = static_cast<std::size_t>(std::find(lo.begin(), lo.end(), parent) - lo.begin());
            MatR b = cg_block(parent.back(), hi[i].back(), dual);
            g.block(off_lo[pi], off_hi[i], q_lo[pi] * d * emitted, q_hi[i] * emitted) =
                kron(MatR(b.transpose()), MatR::Identity(emitted, emitted));
        }
        MatC gc = g.cast<cplx>();
        x = gc * x * gc.transpose();
        if (trace_sites) {
            std::vector<Index> off(lo.size() + 1, 0);
            for (std::size_t i = 0; i < lo.size(); ++i) off[i + 1] = off[i] + q_lo[i];
            MatC y(off.back(), off.back());
            for (std::size_t a = 0; a < lo.size(); ++a)
                for (std::size_t b = 0; b < lo.size(); ++b)
                    y.block(off[a], off[b], q_lo[a], q_lo[b]) =
                        trace_site_rect(x.block(off_lo[a], off_lo[b], q_lo[a] * d, q_lo[b] * d), q_lo[a], q_lo[b], d);
            x = std::move(y);
        } else {
            emitted *= d;
        }
        if (ledger) {
            ScheduleStep s;
            s.phase = Phase::embedding;
            s.inverse = true;
            s.dual = dual;
            s.site = j;
            s.path_dim = static_cast<Index>(std::max(hi.size(), lo.size()));
            s.q_max = *std::max_element(q_lo.begin(), q_lo.end());
            s.live_dim = s.path_dim * s.q_max * d;
            bool trivial = std::all_of(lo.begin(), lo.end(), [](auto& p) { return p.back().is_zero(); });
            if (!trivial) (dual ? ledger->num_simple_dual_cg : ledger->num_simple_cg)++;
            ledger->record(s);
        }
    }
    return x;
}

const IrrepRealization& box_realization(int d) { return canonical_realization(Staircase::box(d)); }

// Maps dual_of(canonical gamma) onto canonical gamma-bar.
MatR conjugate_alignment(const Staircase& gamma) {
    const auto& cbar = canonical_realization(gamma.dual());
    auto dual = dual_of(canonical_realization(gamma));
    return intertwiner(cbar, dual.generators).transpose();
}

PathState project_onto_paths(const Staircase& base, int k, int l, const Staircase& lambda, const MatC& target,
                             const char* what) {
    auto all = enumerate_paths(base, k, l);
    auto it = all.find(lambda);
    if (it == all.end())
        throw InternalError(std::string(what) + ": no path from " + base.str() + " to " + lambda.str());
    const Index ql = qdim(lambda);
    PathState st{base, {}, k, l, base.d()};
    MatC rebuilt = MatC::Zero(target.rows(), target.cols());
    for (auto& p : it->second) {
        MatR f = path_forward(p);
        cplx a = (f.cast<cplx>() * target).trace() / double(ql);
        if (std::abs(a) < 1e-13) continue;
        st.amplitudes[p] = a;
        rebuilt += a * f.transpose().cast<cplx>();
    }
    double res = (rebuilt - target).norm();
    if (res > 1e-8)
        throw InternalError(std::string(what) + ": embedding is not spanned by the paths, residual " +
                            std::to_string(res));
    return st;
}

}  // namespace

const Staircase& PathState::end() const {
    if (amplitudes.empty()) throw ValidationError("path state is empty");
    return amplitudes.begin()->first.end();
}

void validate(const PathState& state) {
    if (state.amplitudes.empty()) throw ValidationError("path state has no paths");
    validate(state.base);
    if (state.base.d() != state.d) throw ValidationError("path state: base has the wrong number of rows");
    double norm = 0;
    const Staircase& end = state.end();
    for (auto& [p, a] : state.amplitudes) {
        validate(p);
        if (p.k != state.k || p.l != state.l) throw ValidationError("path state: paths of different shape");
        if (p.start() != state.base) throw ValidationError("path state: path does not start at " + state.base.str());
        if (p.end() != end)
            throw ValidationError("path state: endpoints " + p.end().str() + " and " + end.str() + " differ");
        norm += std::norm(a);
    }
    if (std::abs(norm - 1.0) > 1e-9) throw ValidationError("path state: amplitudes are not normalized");
}

MatR path_forward(const GtPath& p) {
    validate(p);
    const int d = p.d();
    MatR r = MatR::Identity(qdim(p.start()), qdim(p.start()));
    for (int t = 0; t < p.length(); ++t)
        r = cg_block(p.steps[t], p.steps[t + 1], t >= p.k) * kron(r, MatR::Identity(d, d));
    return r;
}

std::string to_string(Phase phase) {
    switch (phase) {
        case Phase::uss: return "uss";
        case Phase::embedding: return "embedding";
        case Phase::emission: return "emission";
    }
    return "?";
}

void ResourceLedger::record(const ScheduleStep& s) {
    schedule.push_back(s);
    peak_live_dim = std::max(peak_live_dim, s.live_dim);
}

void validate_schedule(const ResourceLedger& ledger, int d) {
    Index peak = 0;
    for (auto& s : ledger.schedule) {
        if (s.site < 1) throw InternalError("schedule: step without a site");
        if (s.live_dim != s.path_dim * s.q_max * d)
            throw InternalError("schedule: step at site " + std::to_string(s.site) + " of phase " + to_string(s.phase) +
                                " touches more than one site");
        peak = std::max(peak, s.live_dim);
    }
    if (peak != ledger.peak_live_dim) throw InternalError("schedule: peak does not match the steps");
}

MatC path_embedding(const PathState& state, const MatC& input, ResourceLedger* ledger) {
    return embed_levels(state, input, false, ledger);
}

MatC path_embedding_traced(const PathState& state, const MatC& input, ResourceLedger* ledger) {
    return embed_levels(state, input, true, ledger);
}

PathState embedding_resource_state(const Assignment& a) {
    const Staircase gbar = a.gamma.dual();
    const int k = gbar.positive_boxes(), l = gbar.negative_boxes();
    MatC iota = irrep_embedding(a.lambda, a.mu, a.gamma, a.psi);  // Q_mu (x) conj Q_gamma
    auto sites = paths_to(gbar, k, l);
    if (sites.empty()) throw InternalError("embedding_resource_state: no site path to " + gbar.str());
    MatR r = path_isometry(sites.front());
    MatR to_sites = r.transpose() * conjugate_alignment(a.gamma);
    const Index qm = qdim(a.mu);
    MatC target = kron(MatR::Identity(qm, qm), to_sites).cast<cplx>() * iota;
    return project_onto_paths(a.mu, k, l, a.lambda, target, "embedding_resource_state");
}

PathState single_site_resource_state(const Assignment& a) {
    const int d = a.mu.d();
    if (a.mu != Staircase::box(d)) throw ValidationError("single_site_resource_state needs mu = box");
    const Staircase gbar = a.gamma.dual();
    MatC iota = irrep_embedding(a.lambda, a.mu, a.gamma, a.psi);  // C^d (x) conj Q_gamma
    const Index ql = qdim(a.lambda), qg = qdim(a.gamma);
    MatR s = conjugate_alignment(a.gamma);
    MatR e = box_realization(d).embedding;
    MatC target(qg * d, ql);
    for (Index x = 0; x < ql; ++x) {
        MatC mx = unvec(iota.col(x), d, qg);
        MatC nx = s.cast<cplx>() * mx.transpose() * e.transpose().cast<cplx>();
        target.col(x) = vec(nx);
    }
    return project_onto_paths(gbar, 1, 0, a.lambda, target, "single_site_resource_state");
}

std::string to_string(StreamMode mode) { return mode == StreamMode::exact ? "exact" : "sample"; }

StreamMode stream_mode_from_string(const std::string& s) {
    if (s == "exact") return StreamMode::exact;
    if (s == "sample") return StreamMode::sample;
    throw ValidationError("unknown stream mode '" + s + "'");
}

Index predicted_peak(int m, int d) {
    Index best = 0;
    for (int s = 0; s < m; ++s)
        for (auto& nu : partitions(s, d)) best = std::max(best, qdim(nu));
    return best * d;
}

namespace {

struct Middle {
    PathState state;
    bool single_site = false;
};

class Streamer {
public:
    Streamer(const ExtremalSpec& spec, const StreamOptions& opt) : spec_(spec), opt_(opt), d_(spec.d) {
        for (auto& a : spec.assignments) {
            auto given = opt.resource_states.find(a.lambda);
            Middle mid;
            mid.single_site = spec.n == 1 && given == opt.resource_states.end();
            if (given != opt.resource_states.end())
                mid.state = given->second;
            else
                mid.state = mid.single_site ? single_site_resource_state(a) : embedding_resource_state(a);
            validate(mid.state);
            if (mid.state.end() != a.lambda)
                throw ValidationError("resource state for " + a.lambda.str() + " ends at " + mid.state.end().str());
            if (!mid.single_site && mid.state.base != a.mu)
                throw ValidationError("resource state for " + a.lambda.str() + " starts at " + mid.state.base.str());
            middle_[a.lambda] = {a.mu, std::move(mid)};
        }
    }

    StreamResult run(const MatC& input) {
        const Index din = ipow(d_, spec_.m);
        if (input.rows() != din || input.cols() != din)
            throw ValidationError("streamed_apply: input must be " + std::to_string(din) + "x" + std::to_string(din));
        StreamResult res;
        uss_ledger(res.ledger);
        embedding_ledger(res.ledger);
        emission_ledger(res.ledger);
        if (opt_.mode == StreamMode::exact) {
            std::map<Staircase, MatC> on_mu;
            for (auto& [lambda, x] : uss_exact(input)) {
                MatC y = apply_middle(lambda, x);
                auto& mu = middle_.at(lambda).first;
                auto it = on_mu.find(mu);
                if (it == on_mu.end())
                    on_mu.emplace(mu, y);
                else
                    it->second += y;
            }
            res.output = emission_exact(on_mu);
        } else {
            if (opt_.trajectories < 1) throw ValidationError("streamed_apply: trajectories must be positive");
            std::mt19937_64 rng(opt_.seed);
            const Index dout = ipow(d_, spec_.n);
            res.output = MatC::Zero(dout, dout);
            for (int t = 0; t < opt_.trajectories; ++t) {
                auto [lambda, x] = uss_sample(input, rng);
                MatC y = apply_middle(lambda, x);
                res.output += emission_sample(middle_.at(lambda).first, y, rng, res.ledger);
            }
            res.output /= double(opt_.trajectories);
        }
        validate_schedule(res.ledger, d_);
        return res;
    }

private:
    // USS: one site at a time, labels measured and discarded.
    std::map<Staircase, MatC> uss_exact(const MatC& rho) const {
        std::map<Staircase, MatC> cur{{Staircase::empty(d_), rho}};
        for (int i = 1; i <= spec_.m; ++i) {
            const Index rest = ipow(d_, spec_.m - i);
            std::map<Staircase, MatC> next;
            for (auto& [nu, x] : cur) {
                const auto& cg = simple_cg(nu, false);
                for (std::size_t b = 0; b < cg.layout.size(); ++b) {
                    MatC w = kron(MatR(cg.block_rows(b)), MatR::Identity(rest, rest)).cast<cplx>();
                    MatC y = w * x * w.transpose();
                    auto it = next.find(cg.layout[b].label);
                    if (it == next.end())
                        next.emplace(cg.layout[b].label, std::move(y));
                    else
                        it->second += y;
                }
            }
            cur = std::move(next);
        }
        return cur;
    }

    std::pair<Staircase, MatC> uss_sample(const MatC& rho, std::mt19937_64& rng) const {
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        Staircase nu = Staircase::empty(d_);
        MatC x = rho;
        for (int i = 1; i <= spec_.m; ++i) {
            const Index rest = ipow(d_, spec_.m - i);
            const auto& cg = simple_cg(nu, false);
            std::vector<MatC> branch;
            std::vector<double> prob;
            for (std::size_t b = 0; b < cg.layout.size(); ++b) {
                MatC w = kron(MatR(cg.block_rows(b)), MatR::Identity(rest, rest)).cast<cplx>();
                branch.push_back(w * x * w.transpose());
                prob.push_back(std::max(0.0, branch.back().trace().real()));
            }
            double total = 0;
            for (double p : prob) total += p;
            double u = unif(rng) * total, acc = 0;
            std::size_t pick = 0;
            for (; pick + 1 < prob.size(); ++pick) {
                acc += prob[pick];
                if (u < acc) break;
            }
            while (prob[pick] == 0.0) pick = (pick + 1) % prob.size();
            nu = cg.layout[pick].label;
            x = branch[pick] / prob[pick];
        }
        return {nu, x};
    }

    MatC apply_middle(const Staircase& lambda, const MatC& x) const {
        const auto& mid = middle_.at(lambda).second;
        if (!mid.single_site) return path_embedding_traced(mid.state, x);
        MatC y = path_embedding(mid.state, x);
        MatC site = trace_first(y, qdim(mid.state.base), d_);
        const MatR& e = box_realization(d_).embedding;
        return e.transpose().cast<cplx>() * site * e.cast<cplx>();
    }

    // Inverse CG steps from the top label down to the empty one; the
    // uniform mixture over paths is kept exactly.
    MatC emission_exact(const std::map<Staircase, MatC>& on_mu) const {
        std::map<Staircase, MatC> cur;
        for (auto& [mu, y] : on_mu) cur.emplace(mu, y / double(dim_perm_irrep(mu)));
        Index emitted = 1;
        for (int j = spec_.n; j >= 1; --j) {
            std::map<Staircase, MatC> next;
            for (auto& [nu, x] : cur)
                for (auto& parent : remove_boxes(nu)) {
                    if (!parent.is_partition()) continue;
                    MatC w = kron(MatR(cg_block(parent, nu, false).transpose()), MatR::Identity(emitted, emitted))
                                 .cast<cplx>();
                    MatC y = w * x * w.transpose();
                    auto it = next.find(parent);
                    if (it == next.end())
                        next.emplace(parent, std::move(y));
                    else
                        it->second += y;
                }
            cur = std::move(next);
            emitted *= d_;
        }
        return cur.begin()->second;
    }

    MatC emission_sample(const Staircase& mu, const MatC& y, std::mt19937_64& rng, ResourceLedger& ledger) const {
        if (spec_.n == 0) return y;
        GtPath p = sample_gt_path(mu, rng, opt_.sampler);
        ++ledger.classical_samples;
        MatC x = y;
        Index emitted = 1;
        for (int j = spec_.n; j >= 1; --j) {
            MatC w = kron(MatR(cg_block(p.steps[j - 1], p.steps[j], false).transpose()), MatR::Identity(emitted, emitted))
                         .cast<cplx>();
            x = w * x * w.transpose();
            emitted *= d_;
        }
        return x;
    }

    // Register bookkeeping over every label the controlled steps can see.
    void uss_ledger(ResourceLedger& led) const {
        std::set<Staircase> labels{Staircase::empty(d_)};
        for (int i = 1; i <= spec_.m; ++i) {
            ScheduleStep s;
            s.phase = Phase::uss;
            s.site = i;
            for (auto& nu : labels) s.q_max = std::max(s.q_max, qdim(nu));
            s.live_dim = s.q_max * d_;
            led.record(s);
            if (i > 1) ++led.num_simple_cg;
            std::set<Staircase> next;
            for (auto& nu : labels)
                for (auto& b : simple_cg(nu, false).layout) next.insert(b.label);
            labels = std::move(next);
            for (auto& nu : labels) led.r = std::max(led.r, nu.length());
        }
    }

    void embedding_ledger(ResourceLedger& led) const {
        std::uint64_t simple = 0, dual = 0;
        for (auto& [lambda, entry] : middle_) {
            const auto& mid = entry.second;
            ResourceLedger local;
            MatC probe = MatC::Identity(qdim(lambda), qdim(lambda)) / double(qdim(lambda));
            if (mid.single_site)
                path_embedding(mid.state, probe, &local);
            else
                path_embedding_traced(mid.state, probe, &local);
            simple = std::max(simple, local.num_simple_cg);
            dual = std::max(dual, local.num_simple_dual_cg);
            for (auto& s : local.schedule) led.record(s);
        }
        led.num_simple_cg += simple;
        led.num_simple_dual_cg += dual;
    }

    void emission_ledger(ResourceLedger& led) const {
        std::set<Staircase> labels;
        for (auto& [lambda, entry] : middle_) labels.insert(entry.first);
        for (auto& mu : labels) led.r_prime = std::max(led.r_prime, mu.length());
        for (int j = spec_.n; j >= 1; --j) {
            std::set<Staircase> next;
            for (auto& nu : labels)
                for (auto& parent : remove_boxes(nu))
                    if (parent.is_partition()) next.insert(parent);
            labels = std::move(next);
            ScheduleStep s;
            s.phase = Phase::emission;
            s.inverse = true;
            s.site = j;
            for (auto& nu : labels) s.q_max = std::max(s.q_max, qdim(nu));
            s.live_dim = s.q_max * d_;
            led.record(s);
            if (j > 1) ++led.num_inverse_cg;
        }
    }

    const ExtremalSpec& spec_;
    const StreamOptions& opt_;
    int d_;
    std::map<Staircase, std::pair<Staircase, Middle>> middle_;
};

}  // namespace

StreamResult streamed_apply(const ExtremalSpec& spec, const MatC& input, const StreamOptions& options) {
    validate(spec);
    Streamer s(spec, options);
    return s.run(input);
}

CostReport resource_estimate(int m, int n, int d, int r, int r_prime, int k, int l) {
    if (m < 0 || n < 0 || d < 1 || k < 0 || l < 0 || r < 0 || r_prime < 0)
        throw ValidationError("resource_estimate: negative parameter");
    if (r > d || r_prime > d) throw ValidationError("resource_estimate: r and r' must not exceed d");
    auto bits = [](int boxes) {
        return static_cast<std::uint64_t>(std::ceil(std::log2(double(boxes) + 1.0)));
    };
    CostReport c;
    c.m = m;
    c.n = n;
    c.d = d;
    c.r = r;
    c.r_prime = r_prime;
    c.k = k;
    c.l = l;
    const std::uint64_t R = r, Rp = r_prime, Rt = std::max(r, r_prime), D = d;
    c.uss_cg = m;
    c.dual_cg = n;
    c.embedding_cg = static_cast<std::uint64_t>(k + l);
    c.uss_bits = R * bits(m);
    c.dual_bits = Rp * bits(n);
    c.path_bits = c.embedding_cg * Rt * bits(std::max(m + k, n + l));
    c.uss_gates = std::uint64_t(m) * R * R * R * D;
    c.dual_gates = std::uint64_t(n) * Rp * Rp * Rp * D;
    c.embedding_gates = c.embedding_cg * D * Rt * Rt * Rt;
    c.gate_factor = std::max({c.uss_gates, c.dual_gates, c.embedding_gates});
    c.memory_factor = Rt * D;
    std::ostringstream g, mem;
    g << "O(" << c.gate_factor << " " << c.log_factor << ")";
    mem << "O(" << c.memory_factor << " " << c.log_factor << ")";
    c.gate_expr = g.str();
    c.memory_expr = mem.str();
    return c;
}

std::string format_report(const std::vector<std::pair<std::string, CostReport>>& rows) {
    std::ostringstream os;
    os << std::left << std::setw(18) << "task" << std::setw(6) << "m" << std::setw(6) << "n" << std::setw(5) << "d"
       << std::setw(10) << "CG m/n/e" << std::setw(14) << "bits" << std::setw(12) << "memory" << std::setw(12)
       << "gates" << "\n";
    for (auto& [name, c] : rows) {
        std::ostringstream cg, bits;
        cg << c.uss_cg << "/" << c.dual_cg << "/" << c.embedding_cg;
        bits << c.uss_bits << "+" << c.dual_bits << "+" << c.path_bits;
        os << std::left << std::setw(18) << name << std::setw(6) << c.m << std::setw(6) << c.n << std::setw(5) << c.d
           << std::setw(10) << cg.str() << std::setw(14) << bits.str() << std::setw(12) << c.memory_factor
           << std::setw(12) << c.gate_factor << "\n";
    }
    if (!rows.empty())
        os << "factors multiply " << rows.front().second.log_factor << ", p ~ " << rows.front().second.p << "\n";
    return os.str();
}

}  // namespace schurchan
