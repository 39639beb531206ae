#pragma once

#include <optional>

#include "schurchan/channels.hpp"
#include "schurchan/streaming.hpp"

namespace schurchan {

struct AppResult {
    MatC output;
    ResourceLedger ledger;
    std::optional<double> fidelity;
};

/// lambda -> (lambda, empty, 1) for every lambda.
ExtremalSpec symmetrization_spec(int m, int d);
/// (m) -> ((n), (n-m), 1); other labels get the first admissible triple,
/// preferring mu = (n). They never see symmetric inputs.
ExtremalSpec cloning_spec(int m, int n, int d);
/// lambda -> (box, conj gamma_min(lambda), 1).
ExtremalSpec purity_spec(int m, int d);

/// Removes the box from the first row i with lambda_i > lambda_{i+1}
/// (the last row always qualifies).
Staircase gamma_min(const Staircase& lambda);

/// Projector onto the symmetric subspace of (C^d)^{(x)m}.
MatR symmetric_projector(int m, int d);

/// (1 - alpha) |psi><psi| + alpha 1/d.
MatC depolarized(const VecC& psi, double alpha);

AppResult symmetrize(const MatC& rho, int m, int d, const StreamOptions& options = {});
/// Fidelity tr[psi^{(x)n} Phi(psi^{(x)m})].
AppResult clone(const VecC& psi, int m, int n, int d, const StreamOptions& options = {});
/// rho must lie in the symmetric subspace (residual < 1e-8); no fidelity.
AppResult clone(const MatC& rho_sym, int m, int n, int d, const StreamOptions& options = {});
/// With a reference, fidelity is <psi|Phi(rho)|psi>.
AppResult purity_amplify(const MatC& rho, int m, int d, const std::optional<VecC>& reference = std::nullopt,
                         const StreamOptions& options = {});

}  // namespace schurchan
