#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "schurchan/channels.hpp"
#include "schurchan/combinatorics.hpp"
#include "schurchan/gt_paths.hpp"
#include "schurchan/linalg.hpp"

namespace schurchan {

/// A superposition of paths base -> ... -> end in (k,l) steps.
struct PathState {
    Staircase base;
    std::map<GtPath, cplx> amplitudes;
    int k = 0, l = 0, d = 0;

    /// Common endpoint; throws on an empty state.
    const Staircase& end() const;
};

/// Throws ValidationError on mixed shapes, illegal paths or a norm off by 1e-9.
void validate(const PathState& state);

/// The forward isometry Q_base (x) sites -> Q_end of one path: iterated simple
/// (dual) CG blocks, the newest site last in the Kronecker order.
MatR path_forward(const GtPath& p);

enum class Phase { uss, embedding, emission };
std::string to_string(Phase phase);

/// One controlled simple CG step (or its inverse) touching one site.
struct ScheduleStep {
    Phase phase = Phase::uss;
    bool inverse = false;
    bool dual = false;
    int site = 0;           // 1-based within the phase
    Index path_dim = 1;     // coherent path register
    Index q_max = 1;        // largest Q register label on the small side
    Index live_dim = 0;     // path_dim * q_max * d

    friend bool operator==(const ScheduleStep&, const ScheduleStep&) = default;
};

struct ResourceLedger {
    std::uint64_t num_simple_cg = 0;
    std::uint64_t num_simple_dual_cg = 0;
    std::uint64_t num_inverse_cg = 0;
    Index peak_live_dim = 0;
    std::uint64_t classical_samples = 0;
    int r = 0, r_prime = 0;
    std::vector<ScheduleStep> schedule;

    void record(const ScheduleStep& s);
    friend bool operator==(const ResourceLedger&, const ResourceLedger&) = default;
};

/// Checks that every step touches one site and stays inside its register
/// capacity; throws InternalError otherwise.
void validate_schedule(const ResourceLedger& ledger, int d);

/// (I_mu^{k,l})^dagger (|p> (x) .): input on Q_end, output on Q_base (x) sites.
MatC path_embedding(const PathState& state, const MatC& input, ResourceLedger* ledger = nullptr);
/// As path_embedding with every site traced out right after it is emitted.
MatC path_embedding_traced(const PathState& state, const MatC& input, ResourceLedger* ledger = nullptr);

/// Path state for the embedding Q_lambda -> Q_mu (x) conj Q_gamma of the
/// irrep channel, base mu, obtained by projecting the embedding onto the path
/// isometries. Throws InternalError when the projection misses.
PathState embedding_resource_state(const Assignment& a);
/// n = 1: a single step from gamma-bar to lambda; the base register is traced.
PathState single_site_resource_state(const Assignment& a);

enum class StreamMode { exact, sample };
std::string to_string(StreamMode mode);
StreamMode stream_mode_from_string(const std::string& s);

struct StreamOptions {
    StreamMode mode = StreamMode::exact;
    int trajectories = 1000;
    std::uint64_t seed = 1;
    SamplerMode sampler = SamplerMode::alg3;
    /// Explicit resource states by lambda; the rest are synthesized.
    std::map<Staircase, PathState> resource_states;
};

struct StreamResult {
    MatC output;
    ResourceLedger ledger;
};

StreamResult streamed_apply(const ExtremalSpec& spec, const MatC& input, const StreamOptions& options = {});

/// d * max dim Q_nu over partitions nu with |nu| < m: the register a
/// streamed Schur sampling phase on m sites needs.
Index predicted_peak(int m, int d);

/// Count structure of one streamed channel; log^p factors stay symbolic.
struct CostReport {
    int m = 0, n = 0, d = 0, r = 0, r_prime = 0, k = 0, l = 0;
    std::uint64_t uss_cg = 0, dual_cg = 0, embedding_cg = 0;
    std::uint64_t uss_bits = 0, dual_bits = 0, path_bits = 0;
    std::uint64_t uss_gates = 0, dual_gates = 0, embedding_gates = 0;  // m r^3 d, n r'^3 d, (k+l) d rt^3
    std::uint64_t gate_factor = 0;    // largest of the three
    std::uint64_t memory_factor = 0;  // max(r, r') d
    std::string gate_expr, memory_expr;
    std::string log_factor = "log2^p(d,m,n,1/eps)";
    double p = 1.44;

    friend bool operator==(const CostReport&, const CostReport&) = default;
};

CostReport resource_estimate(int m, int n, int d, int r, int r_prime, int k, int l);
std::string format_report(const std::vector<std::pair<std::string, CostReport>>& rows);

}  // namespace schurchan
