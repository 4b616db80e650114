#pragma once

#include "ddcalc/abelian_group.hpp"

#include <vector>

namespace ddc {

/// Cochain complex C^0 -> C^1 -> ... -> C^top over `ring`, given by integer coboundaries.
/// coboundary[p] has rank(p + 1) rows and rank(p) columns.
struct CochainComplexPresentation {
    CoefficientRing ring = CoefficientRing::integers();
    std::vector<std::size_t> ranks;
    std::vector<SparseMatrix> coboundary;

    int top_degree() const { return static_cast<int>(ranks.size()) - 1; }
    std::size_t rank(int p) const { return p < 0 || p > top_degree() ? 0 : ranks[p]; }
    /// delta^p, or a zero matrix of the right shape outside the stored range.
    SparseMatrix delta(int p) const;
};

/// ker delta^n / im delta^(n-1) in invariant-factor form. Ambient = C^n; generators lift
/// to cocycles, and project() accepts exactly the cocycles.
FgAbGroup homology_at(const CochainComplexPresentation& cx, int n);

}  // namespace ddc
