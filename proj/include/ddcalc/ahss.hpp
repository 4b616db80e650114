#pragma once

#include "ddcalc/space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ddc {

enum class AhssStatus { Exact, UpToExtension, Approximate };
std::string to_string(AhssStatus s);

struct GradedPiece {
    int p = 0;
    FgAbGroup e2;
    FgAbGroup e4;  // ker d_3 / im d_3, ambient = coordinates of e2
};

struct AhssResult {
    int total_degree = 0;
    int dimension = 0;
    /// Lowest relative cell dimension whose E_2 group is nonzero; nullopt when none is.
    std::optional<int> lowest_cell;
    std::vector<GradedPiece> pieces;  // increasing p, every p = total_degree mod 2 in range
    AhssStatus status = AhssStatus::Exact;
    std::optional<FgAbGroup> assembled;  // iff status == Exact
    /// Up to extension: the direct sum and the per-prime cyclic stacking of the pieces.
    std::vector<FgAbGroup> candidates;

    /// Direct sum of the E_4 pieces (the group when Exact; a page value otherwise).
    FgAbGroup piece_sum() const;
    const GradedPiece* piece(int p) const;
};

struct KGroupReport {
    int i = 0;
    bool reduced = false;
    AhssResult result;
    std::optional<PrimeSet> primes;
    std::optional<AhssResult> localized;  // pieces over Z_P
};

/// K^d(X, A) from the E_2 page H^p(X, A; Z), p = d mod 2, with d_3 = Sq^3_Z only.
AhssResult relative_K(const AhssSource& source, int d);
AhssResult relative_K(const Space& x, const Subspace& a, int d);

/// Approximate when dim >= lowest cell + 5; otherwise Exact when every nonzero piece
/// below the top filtration is torsion-free.
AhssStatus classify_status(const std::vector<GradedPiece>& pieces, int dimension, std::optional<int> lowest_cell);

/// k^i(X) for i >= 0 via K^i(X, X_{i-2}); i = 0, 1 use A = empty (reduced: A = basepoint).
KGroupReport connective_k(const Space& x, int i, bool reduced = false);
KGroupReport k5(const Space& x);
KGroupReport k5_localized(const Space& x, const PrimeSet& primes);
/// Localizes every piece and reassembles; Approximate stays Approximate.
AhssResult localize_result(const AhssResult& r, const PrimeSet& primes);

struct CrosscheckReport {
    enum class Outcome { Match, Mismatch, Inconclusive } outcome = Outcome::Inconclusive;
    std::string k5_type;
    std::string kernel_type;
    std::string detail;
};
std::string to_string(CrosscheckReport::Outcome o);

/// k^5(X) against ker(k^3(X) -> H^3(X; Z)), the map being the projection onto the p = 3 piece.
CrosscheckReport k5_crosscheck(const Space& x);

}  // namespace ddc
