#include "schurchan/combinatorics.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

#include "schurchan/errors.hpp"

namespace schurchan {

Staircase::Staircase(std::vector<int> entries) : e_(std::move(entries)) {}
Staircase::Staircase(std::initializer_list<int> entries) : e_(entries) {}

Staircase Staircase::empty(int d) { return Staircase(std::vector<int>(d, 0)); }

Staircase Staircase::box(int d) {
    std::vector<int> e(d, 0);
    e[0] = 1;
    return Staircase(std::move(e));
}

int Staircase::positive_boxes() const {
    int s = 0;
    for (int x : e_) s += std::max(x, 0);
    return s;
}

int Staircase::negative_boxes() const {
    int s = 0;
    for (int x : e_) s -= std::min(x, 0);
    return s;
}

int Staircase::size() const { return std::accumulate(e_.begin(), e_.end(), 0); }

int Staircase::length() const {
    return static_cast<int>(std::count_if(e_.begin(), e_.end(), [](int x) { return x != 0; }));
}

bool Staircase::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](int x) { return x == 0; });
}

Staircase Staircase::dual() const {
    std::vector<int> e(e_.rbegin(), e_.rend());
    for (int& x : e) x = -x;
    return Staircase(std::move(e));
}

Staircase Staircase::shifted(int k) const {
    std::vector<int> e = e_;
    for (int& x : e) x += k;
    return Staircase(std::move(e));
}

std::string Staircase::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < e_.size(); ++i) os << (i ? "," : "") << e_[i];
    os << ')';
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Staircase& s) { return os << s.str(); }

void validate(const Staircase& s) {
    if (s.d() < 1) throw ValidationError("staircase must have at least one row");
    for (int i = 0; i + 1 < s.d(); ++i)
        if (s[i] < s[i + 1]) throw ValidationError("staircase " + s.str() + " is not weakly decreasing");
}

void validate(const Staircase& s, int m, int n) {
    validate(s);
    if (s.positive_boxes() > m || s.negative_boxes() > n || s.size() != m - n)
        throw ValidationError(s.str() + " is not a (" + std::to_string(m) + "," + std::to_string(n) +
                              ")-staircase");
}

std::vector<Staircase> add_boxes(const Staircase& nu) {
    validate(nu);
    std::vector<Staircase> out;
    const auto& e = nu.entries();
    for (int i = 0; i < nu.d(); ++i) {
        if (i > 0 && e[i - 1] < e[i] + 1) continue;
        std::vector<int> f = e;
        ++f[i];
        out.emplace_back(std::move(f));
    }
    return out;
}

std::vector<Staircase> remove_boxes(const Staircase& nu) {
    validate(nu);
    std::vector<Staircase> out;
    const auto& e = nu.entries();
    for (int i = 0; i < nu.d(); ++i) {
        if (i + 1 < nu.d() && e[i] - 1 < e[i + 1]) continue;
        std::vector<int> f = e;
        --f[i];
        out.emplace_back(std::move(f));
    }
    return out;
}

int changed_row(const Staircase& from, const Staircase& to) {
    if (from.d() != to.d()) return -1;
    int row = -1;
    for (int i = 0; i < from.d(); ++i) {
        int diff = to[i] - from[i];
        if (diff == 0) continue;
        if (std::abs(diff) != 1 || row >= 0) return -1;
        row = i;
    }
    return row;
}

namespace {

std::uint64_t to_u64(const BigInt& x) {
    if (x < 0 || x > BigInt(std::numeric_limits<std::uint64_t>::max()))
        throw ResourceError("dimension does not fit into 64 bits");
    return x.convert_to<std::uint64_t>();
}

}  // namespace

std::uint64_t dim_perm_irrep(const Staircase& lambda) {
    validate(lambda);
    if (!lambda.is_partition()) throw ValidationError("dim_perm_irrep needs a partition, got " + lambda.str());
    const auto& e = lambda.entries();
    int m = lambda.size();
    BigInt num = 1;
    for (int k = 2; k <= m; ++k) num *= k;
    BigInt hooks = 1;
    for (int i = 0; i < lambda.d(); ++i) {
        for (int j = 0; j < e[i]; ++j) {
            int leg = 0;
            for (int r = i + 1; r < lambda.d() && e[r] > j; ++r) ++leg;
            hooks *= (e[i] - j - 1) + leg + 1;
        }
    }
    return to_u64(num / hooks);
}

std::uint64_t dim_gl_irrep(const Staircase& gamma) {
    validate(gamma);
    Rational p = 1;
    for (int i = 0; i < gamma.d(); ++i)
        for (int j = i + 1; j < gamma.d(); ++j)
            p *= Rational(gamma[i] - gamma[j] + j - i, j - i);
    if (denominator(p) != 1) throw InternalError("Weyl formula produced a non-integer");
    return to_u64(numerator(p));
}

std::uint64_t sym_dim(int k, int d) {
    if (k < 0 || d < 1) throw ValidationError("sym_dim needs k >= 0, d >= 1");
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= (d - 1 + i);
        r /= i;
    }
    return to_u64(r);
}

namespace {

// Counts LR tableaux of skew shape outer/inner with the given content.
class LrCounter {
public:
    LrCounter(std::vector<int> outer, std::vector<int> inner, std::vector<int> content)
        : outer_(std::move(outer)), inner_(std::move(inner)), content_(std::move(content)) {
        rows_ = static_cast<int>(outer_.size());
        for (int i = 0; i < rows_; ++i)
            for (int j = outer_[i] - 1; j >= inner_[i]; --j) cells_.push_back({i, j});
        fill_.assign(rows_, std::vector<int>(outer_.empty() ? 0 : outer_[0], 0));
        used_.assign(content_.size(), 0);
    }

    std::uint64_t count() { return rec(0); }

private:
    std::uint64_t rec(std::size_t idx) {
        if (idx == cells_.size()) return 1;
        auto [i, j] = cells_[idx];
        std::uint64_t total = 0;
        for (int v = 1; v <= static_cast<int>(content_.size()); ++v) {
            if (used_[v - 1] >= content_[v - 1]) continue;
            // lattice condition on the reading word
            if (v > 1 && used_[v - 1] + 1 > used_[v - 2]) continue;
            // rows weakly increase left to right; we fill right to left
            if (j + 1 < outer_[i] && fill_[i][j + 1] < v) continue;
            // columns strictly increase downwards
            if (i > 0 && j < outer_[i - 1] && j >= inner_[i - 1] && fill_[i - 1][j] >= v) continue;
            fill_[i][j] = v;
            ++used_[v - 1];
            total += rec(idx + 1);
            --used_[v - 1];
            fill_[i][j] = 0;
        }
        return total;
    }

    std::vector<int> outer_, inner_, content_;
    int rows_ = 0;
    std::vector<std::pair<int, int>> cells_;
    std::vector<std::vector<int>> fill_;
    std::vector<int> used_;
};

std::uint64_t lr_partitions(const std::vector<int>& lam, const std::vector<int>& mu, const std::vector<int>& nu) {
    int sl = std::accumulate(lam.begin(), lam.end(), 0);
    int sm = std::accumulate(mu.begin(), mu.end(), 0);
    int sn = std::accumulate(nu.begin(), nu.end(), 0);
    if (sl + sm != sn) return 0;
    for (std::size_t i = 0; i < nu.size(); ++i)
        if (lam[i] > nu[i]) return 0;
    std::vector<int> content;
    for (int x : mu)
        if (x > 0) content.push_back(x);
    return LrCounter(nu, lam, content).count();
}

}  // namespace

std::uint64_t lr_coeff(const Staircase& lambda, const Staircase& mu, const Staircase& gamma) {
    validate(lambda);
    validate(mu);
    validate(gamma);
    if (lambda.d() != mu.d() || mu.d() != gamma.d()) throw ValidationError("lr_coeff: inconsistent d");
    static std::mutex mtx;
    static std::map<std::tuple<Staircase, Staircase, Staircase>, std::uint64_t> cache;
    auto key = std::make_tuple(lambda, mu, gamma);
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    int d = lambda.d();
    int kl = -lambda[d - 1], km = -mu[d - 1];
    Staircase l = lambda.shifted(kl), u = mu.shifted(km), g = gamma.shifted(kl + km);
    std::uint64_t c = 0;
    if (g.is_partition()) c = lr_partitions(l.entries(), u.entries(), g.entries());
    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(key, c);
    return c;
}

namespace {

void gen_staircases(int d, int idx, int upper, int pos_left, int neg_left, int target, std::vector<int>& cur,
                    std::vector<Staircase>& out) {
    if (idx == d) {
        if (std::accumulate(cur.begin(), cur.end(), 0) == target) out.emplace_back(cur);
        return;
    }
    for (int v = std::min(upper, pos_left); v >= -neg_left; --v) {
        cur[idx] = v;
        gen_staircases(d, idx + 1, v, pos_left - std::max(v, 0), neg_left - std::max(-v, 0), target, cur, out);
    }
}

}  // namespace

std::vector<Staircase> enumerate_staircases(int m, int n, int d) {
    if (m < 0 || n < 0 || d < 1) throw ValidationError("enumerate_staircases needs m,n >= 0 and d >= 1");
    std::vector<Staircase> out;
    std::vector<int> cur(d, 0);
    gen_staircases(d, 0, m, m, n, m - n, cur, out);
    return out;
}

std::vector<Staircase> partitions(int m, int d) { return enumerate_staircases(m, 0, d); }

}  // namespace schurchan
