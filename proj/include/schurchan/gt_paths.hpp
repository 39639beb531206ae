#pragma once

#include <compare>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "schurchan/combinatorics.hpp"

namespace schurchan {

/// A sequence nu^0 -> ... -> nu^{k+l}: k single-box additions, then l removals.
struct GtPath {
    std::vector<Staircase> steps;
    int k = 0;
    int l = 0;

    int d() const { return steps.empty() ? 0 : steps.front().d(); }
    const Staircase& start() const { return steps.front(); }
    const Staircase& end() const { return steps.back(); }
    int length() const { return k + l; }
    /// Row index changed at each step.
    std::vector<int> rows() const;

    friend auto operator<=>(const GtPath&, const GtPath&) = default;
    friend bool operator==(const GtPath&, const GtPath&) = default;
};

/// Throws ValidationError unless consecutive steps are legal box moves.
void validate(const GtPath& p);

/// For each endpoint reachable from mu by k additions then l removals, the
/// paths ordered lexicographically by their row sequence. Keys ascend.
std::map<Staircase, std::vector<GtPath>> enumerate_paths(const Staircase& mu, int k, int l);
/// Paths from the empty staircase to gamma in (a,b) steps, a/b = positive/negative boxes.
std::vector<GtPath> paths_to(const Staircase& gamma, int m, int n);

using RemovalDistribution = std::map<Staircase, Rational>;

RemovalDistribution exact_removal_distribution(const Staircase& lambda);

enum class SamplerMode { alg1, alg3 };

/// Removal law induced by the hook walk (alg1) or the squashed walk (alg3),
/// solved exactly.
RemovalDistribution next_step_distribution(const Staircase& lambda, SamplerMode mode);

/// Uniform draws in [0,1).
class DrawSource {
public:
    virtual ~DrawSource() = default;
    virtual double next() = 0;
};

class RngDraws : public DrawSource {
public:
    explicit RngDraws(std::mt19937_64& rng) : rng_(rng) {}
    double next() override { return dist_(rng_); }

private:
    std::mt19937_64& rng_;
    std::uniform_real_distribution<double> dist_{0.0, 1.0};
};

/// Cells visited by a walk, 1-based (row, column). For alg3 these are squashed
/// block coordinates.
using WalkTrace = std::vector<std::pair<int, int>>;

Staircase sample_remove_box(const Staircase& lambda, DrawSource& draws, SamplerMode mode, WalkTrace* trace = nullptr);
Staircase sample_remove_box(const Staircase& lambda, std::mt19937_64& rng, SamplerMode mode);

/// Uniformly random path from the empty partition to lambda.
GtPath sample_gt_path(const Staircase& lambda, std::mt19937_64& rng, SamplerMode mode = SamplerMode::alg3);

std::string to_string(SamplerMode mode);
SamplerMode sampler_mode_from_string(const std::string& s);

}  // namespace schurchan
