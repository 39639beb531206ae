#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "schurchan/gt_paths.hpp"
#include "schurchan/linalg.hpp"

namespace schurchan {

/// Distance || avg_U U X U^dagger - tr(X)/d 1 ||_max over `samples` draws.
double twirl_residual(const MatC& x, int samples, std::mt19937_64& rng);

using Histogram = std::map<Staircase, std::uint64_t>;

/// 1/2 sum |p - q|. Throws ValidationError when a sampled outcome lies
/// outside the support of `exact` or the histogram is empty.
double tv_distance(const Histogram& empirical, const RemovalDistribution& exact);

/// Draws `count` box removals from lambda.
Histogram sample_histogram(const Staircase& lambda, std::uint64_t count, SamplerMode mode, std::mt19937_64& rng);

struct VerificationCase {
    std::string id;
    double residual = 0;
    double threshold = 0;
    bool pass = false;
    friend bool operator==(const VerificationCase&, const VerificationCase&) = default;
};

struct VerificationReport {
    std::string suite;
    std::vector<VerificationCase> cases;
    std::uint64_t seed = 0;

    /// pass = residual <= threshold.
    void add(std::string id, double residual, double threshold);
    bool passed() const;
    std::size_t failures() const;
    friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    int trials = 5;                 // random instances per deterministic case
    std::optional<double> tol;      // overrides the numerical-identity thresholds
};

/// Independent stream for case `index` of a suite.
std::mt19937_64 case_rng(std::uint64_t seed, const std::string& suite, std::uint64_t index);

std::vector<std::string> suite_names();
/// Throws ValidationError for an unknown name.
VerificationReport run_suite(const std::string& name, const SuiteOptions& options = {});
std::vector<VerificationReport> run_all(const SuiteOptions& options = {});

/// One line per case plus a summary line.
std::string format_report(const VerificationReport& report);

}  // namespace schurchan
