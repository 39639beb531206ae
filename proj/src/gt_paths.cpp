#include "schurchan/gt_paths.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "schurchan/errors.hpp"

namespace schurchan {

std::vector<int> GtPath::rows() const {
    std::vector<int> r;
    for (std::size_t i = 0; i + 1 < steps.size(); ++i) r.push_back(changed_row(steps[i], steps[i + 1]));
    return r;
}

void validate(const GtPath& p) {
    if (p.steps.size() != static_cast<std::size_t>(p.k + p.l + 1)) throw ValidationError("GtPath: wrong number of steps");
    for (auto& s : p.steps) validate(s);
    for (int i = 0; i < p.k + p.l; ++i) {
        auto next = i < p.k ? add_boxes(p.steps[i]) : remove_boxes(p.steps[i]);
        if (std::find(next.begin(), next.end(), p.steps[i + 1]) == next.end())
            throw ValidationError("GtPath: illegal step " + p.steps[i].str() + " -> " + p.steps[i + 1].str());
    }
}

namespace {

void grow(GtPath& cur, int k, int l, std::map<Staircase, std::vector<GtPath>>& out) {
    int done = static_cast<int>(cur.steps.size()) - 1;
    if (done == k + l) {
        out[cur.steps.back()].push_back(cur);
        return;
    }
    auto next = done < k ? add_boxes(cur.steps.back()) : remove_boxes(cur.steps.back());
    for (auto& s : next) {
        cur.steps.push_back(s);
        grow(cur, k, l, out);
        cur.steps.pop_back();
    }
}

}  // namespace

std::map<Staircase, std::vector<GtPath>> enumerate_paths(const Staircase& mu, int k, int l) {
    validate(mu);
    if (k < 0 || l < 0) throw ValidationError("enumerate_paths: negative step count");
    std::map<Staircase, std::vector<GtPath>> out;
    GtPath cur;
    cur.k = k;
    cur.l = l;
    cur.steps.push_back(mu);
    grow(cur, k, l, out);
    return out;
}

std::vector<GtPath> paths_to(const Staircase& gamma, int m, int n) {
    auto all = enumerate_paths(Staircase::empty(gamma.d()), m, n);
    auto it = all.find(gamma);
    return it == all.end() ? std::vector<GtPath>{} : it->second;
}

RemovalDistribution exact_removal_distribution(const Staircase& lambda) {
    validate(lambda);
    if (!lambda.is_partition() || lambda.size() == 0)
        throw ValidationError("exact_removal_distribution needs a nonempty partition, got " + lambda.str());
    RemovalDistribution out;
    Rational total = dim_perm_irrep(lambda);
    for (auto& mu : remove_boxes(lambda))
        if (mu.is_partition()) out[mu] = Rational(dim_perm_irrep(mu)) / total;
    return out;
}

namespace {

void require_sampling_input(const Staircase& lambda) {
    validate(lambda);
    if (!lambda.is_partition() || lambda.size() == 0)
        throw ValidationError("box removal needs a nonempty partition, got " + lambda.str());
}

Staircase minus_row(const Staircase& lambda, int row0) {
    std::vector<int> e = lambda.entries();
    --e[row0];
    return Staircase(std::move(e));
}

// Squashed diagram: row blocks of equal length and column blocks of equal height.
struct Squashed {
    std::vector<int> start;  // first row (0-based) of each row block
    std::vector<Rational> v, w;
    int blocks = 0;

    explicit Squashed(const Staircase& lambda) {
        std::vector<int> len;
        for (int x : lambda.entries())
            if (x > 0) len.push_back(x);
        for (int i = 0; i < static_cast<int>(len.size()); ++i)
            if (i == 0 || len[i] != len[i - 1]) start.push_back(i);
        blocks = static_cast<int>(start.size());
        for (int k = 0; k < blocks; ++k) {
            int stop = k + 1 < blocks ? start[k + 1] : static_cast<int>(len.size());
            v.push_back(stop - start[k]);
        }
        // column block l (0-based) spans lengths between consecutive distinct row lengths
        for (int l = 0; l < blocks; ++l) {
            int hi = len[start[blocks - 1 - l]];
            int lo = l == 0 ? 0 : len[start[blocks - l]];
            w.push_back(hi - lo);
        }
    }
    int row_width(int k) const { return blocks - k; }  // column blocks in row block k
    int col_height(int l) const { return blocks - l; }
    bool corner(int k, int l) const { return l == row_width(k) - 1; }
    int removal_row(int k) const { return start[k] + static_cast<int>(numerator(v[k])) - 1; }
};

std::vector<std::pair<int, int>> cells_of(const Staircase& lambda) {
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < lambda.d(); ++i)
        for (int j = 0; j < lambda[i]; ++j) cells.push_back({i, j});
    return cells;
}

// Hook-walk moves from (i,j): cells to the right first, then cells below.
std::vector<std::pair<int, int>> hook_moves(const Staircase& lambda, int i, int j) {
    std::vector<std::pair<int, int>> mv;
    for (int jj = j + 1; jj < lambda[i]; ++jj) mv.push_back({i, jj});
    for (int ii = i + 1; ii < lambda.d() && lambda[ii] > j; ++ii) mv.push_back({ii, j});
    return mv;
}

RemovalDistribution alg1_distribution(const Staircase& lambda) {
    auto cells = cells_of(lambda);
    const int d = lambda.d();
    // p[i][j][s]: probability of ending in the corner of row s from cell (i,j)
    std::vector<std::vector<std::vector<Rational>>> p(d);
    for (int i = 0; i < d; ++i) p[i].assign(lambda[i], std::vector<Rational>(d, 0));
    for (auto it = cells.rbegin(); it != cells.rend(); ++it) {
        auto [i, j] = *it;
        auto mv = hook_moves(lambda, i, j);
        if (mv.empty()) {
            p[i][j][i] = 1;
            continue;
        }
        for (auto [a, b] : mv)
            for (int s = 0; s < d; ++s) p[i][j][s] += p[a][b][s];
        for (int s = 0; s < d; ++s) p[i][j][s] /= static_cast<int>(mv.size());
    }
    std::vector<Rational> tot(d, 0);
    for (auto [i, j] : cells)
        for (int s = 0; s < d; ++s) tot[s] += p[i][j][s];
    RemovalDistribution out;
    for (int s = 0; s < d; ++s)
        if (tot[s] != 0) out[minus_row(lambda, s)] = tot[s] / static_cast<int>(cells.size());
    return out;
}

RemovalDistribution alg3_distribution(const Staircase& lambda) {
    Squashed sq(lambda);
    const int r = sq.blocks;
    std::vector<std::vector<std::vector<Rational>>> q(r);
    for (int k = 0; k < r; ++k) q[k].assign(sq.row_width(k), std::vector<Rational>(r, 0));
    for (int k = r - 1; k >= 0; --k)
        for (int l = sq.row_width(k) - 1; l >= 0; --l) {
            if (sq.corner(k, l)) {
                q[k][l][k] = 1;
                continue;
            }
            Rational norm = 0;
            for (int l2 = l + 1; l2 < sq.row_width(k); ++l2) {
                norm += sq.w[l2];
                for (int s = 0; s < r; ++s) q[k][l][s] += sq.w[l2] * q[k][l2][s];
            }
            for (int k2 = k + 1; k2 < sq.col_height(l); ++k2) {
                norm += sq.v[k2];
                for (int s = 0; s < r; ++s) q[k][l][s] += sq.v[k2] * q[k2][l][s];
            }
            for (int s = 0; s < r; ++s) q[k][l][s] /= norm;
        }
    std::vector<Rational> tot(r, 0);
    Rational norm = 0;
    for (int k = 0; k < r; ++k)
        for (int l = 0; l < sq.row_width(k); ++l) {
            Rational wt = sq.v[k] * sq.w[l];
            norm += wt;
            for (int s = 0; s < r; ++s) tot[s] += wt * q[k][l][s];
        }
    RemovalDistribution out;
    for (int s = 0; s < r; ++s)
        if (tot[s] != 0) out[minus_row(lambda, sq.removal_row(s))] = tot[s] / norm;
    return out;
}

int pick_uniform(DrawSource& draws, int n) {
    int i = static_cast<int>(draws.next() * n);
    return std::clamp(i, 0, n - 1);
}

int pick_weighted(DrawSource& draws, const std::vector<double>& wts) {
    double total = std::accumulate(wts.begin(), wts.end(), 0.0);
    double u = draws.next() * total, acc = 0.0;
    for (std::size_t i = 0; i < wts.size(); ++i) {
        acc += wts[i];
        if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(wts.size()) - 1;
}

Staircase walk_alg1(const Staircase& lambda, DrawSource& draws, WalkTrace* trace) {
    auto cells = cells_of(lambda);
    auto [i, j] = cells[pick_uniform(draws, static_cast<int>(cells.size()))];
    if (trace) trace->push_back({i + 1, j + 1});
    while (true) {
        auto mv = hook_moves(lambda, i, j);
        if (mv.empty()) break;
        std::tie(i, j) = mv[pick_uniform(draws, static_cast<int>(mv.size()))];
        if (trace) trace->push_back({i + 1, j + 1});
    }
    return minus_row(lambda, i);
}

Staircase walk_alg3(const Staircase& lambda, DrawSource& draws, WalkTrace* trace) {
    Squashed sq(lambda);
    std::vector<std::pair<int, int>> blocks;
    std::vector<double> wts;
    for (int k = 0; k < sq.blocks; ++k)
        for (int l = 0; l < sq.row_width(k); ++l) {
            blocks.push_back({k, l});
            wts.push_back((sq.v[k] * sq.w[l]).convert_to<double>());
        }
    auto [k, l] = blocks[pick_weighted(draws, wts)];
    if (trace) trace->push_back({k + 1, l + 1});
    while (!sq.corner(k, l)) {
        blocks.clear();
        wts.clear();
        for (int l2 = l + 1; l2 < sq.row_width(k); ++l2) {
            blocks.push_back({k, l2});
            wts.push_back(sq.w[l2].convert_to<double>());
        }
        for (int k2 = k + 1; k2 < sq.col_height(l); ++k2) {
            blocks.push_back({k2, l});
            wts.push_back(sq.v[k2].convert_to<double>());
        }
        std::tie(k, l) = blocks[pick_weighted(draws, wts)];
        if (trace) trace->push_back({k + 1, l + 1});
    }
    return minus_row(lambda, sq.removal_row(k));
}

}  // namespace

RemovalDistribution next_step_distribution(const Staircase& lambda, SamplerMode mode) {
    require_sampling_input(lambda);
    return mode == SamplerMode::alg1 ? alg1_distribution(lambda) : alg3_distribution(lambda);
}

Staircase sample_remove_box(const Staircase& lambda, DrawSource& draws, SamplerMode mode, WalkTrace* trace) {
    require_sampling_input(lambda);
    return mode == SamplerMode::alg1 ? walk_alg1(lambda, draws, trace) : walk_alg3(lambda, draws, trace);
}

Staircase sample_remove_box(const Staircase& lambda, std::mt19937_64& rng, SamplerMode mode) {
    RngDraws draws(rng);
    return sample_remove_box(lambda, draws, mode);
}

GtPath sample_gt_path(const Staircase& lambda, std::mt19937_64& rng, SamplerMode mode) {
    validate(lambda);
    if (!lambda.is_partition()) throw ValidationError("sample_gt_path needs a partition, got " + lambda.str());
    GtPath p;
    p.k = lambda.size();
    p.steps.push_back(lambda);
    RngDraws draws(rng);
    while (p.steps.back().size() > 0) p.steps.push_back(sample_remove_box(p.steps.back(), draws, mode));
    std::reverse(p.steps.begin(), p.steps.end());
    return p;
}

std::string to_string(SamplerMode mode) { return mode == SamplerMode::alg1 ? "alg1" : "alg3"; }

SamplerMode sampler_mode_from_string(const std::string& s) {
    if (s == "alg1") return SamplerMode::alg1;
    if (s == "alg3") return SamplerMode::alg3;
    throw ValidationError("unknown sampler mode '" + s + "'");
}

}  // namespace schurchan
