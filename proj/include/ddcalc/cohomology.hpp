#pragma once

#include "ddcalc/complex.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace ddc {

/// Cochain on the p-simplices of X, indexed like X.simplices(p).
struct Cochain {
    int degree = 0;
    SparseVector values;
};

/// Cohomology of a fixed pair (X, A), with cached groups and coboundaries.
class PairCohomology {
public:
    PairCohomology(ComplexPtr x, ComplexPtr a);
    /// Absolute cohomology of X.
    static std::shared_ptr<const PairCohomology> absolute(ComplexPtr x);

    const SimplicialComplex& space() const { return *x_; }
    const SimplicialComplex& subcomplex() const { return *a_; }
    ComplexPtr space_ptr() const { return x_; }
    ComplexPtr subcomplex_ptr() const { return a_; }
    const RelativeCells& cells() const { return cells_; }

    GroupPtr group(int n, const CoefficientRing& ring) const;
    const CochainComplexPresentation& cochains(const CoefficientRing& ring) const;

    /// Relative-cochain coordinates of a cochain vanishing on A (throws otherwise).
    Coords to_ambient(const Cochain& c) const;
    Cochain from_ambient(int n, const Coords& ambient) const;
    /// Integer coboundary on X (no reduction).
    Cochain coboundary(const Cochain& c) const;

private:
    ComplexPtr x_;
    ComplexPtr a_;
    RelativeCells cells_;
    CochainComplexPresentation absolute_;  // integer coboundaries of X
    mutable std::mutex mutex_;
    mutable std::map<std::string, std::shared_ptr<CochainComplexPresentation>> complexes_;
    mutable std::map<std::pair<int, std::string>, GroupPtr> groups_;
};

using PairPtr = std::shared_ptr<const PairCohomology>;

/// An element of H^n(X, A; R) with coordinates and an explicit cocycle.
class CohomClass {
public:
    CohomClass(PairPtr pair, CoefficientRing ring, int degree, Coords coords);
    /// The class of a cocycle; throws std::domain_error if it is not a cocycle.
    static CohomClass of_cocycle(PairPtr pair, CoefficientRing ring, const Cochain& cocycle);
    static CohomClass zero(PairPtr pair, CoefficientRing ring, int degree);
    static CohomClass basis(PairPtr pair, CoefficientRing ring, int degree, std::size_t j);

    const PairPtr& pair() const { return pair_; }
    const CoefficientRing& ring() const { return ring_; }
    int degree() const { return degree_; }
    const Coords& coords() const { return coords_; }
    const Cochain& representative() const { return rep_; }
    const FgAbGroup& group() const { return *group_; }
    bool is_zero() const { return group_->is_zero(coords_); }

    CohomClass operator+(const CohomClass& other) const;
    CohomClass scaled(const Integer& k) const;
    bool operator==(const CohomClass& other) const;

private:
    CohomClass(PairPtr pair, CoefficientRing ring, int degree, Coords coords, Cochain rep);

    PairPtr pair_;
    CoefficientRing ring_;
    int degree_;
    GroupPtr group_;
    Coords coords_;
    Cochain rep_;
};

FgAbGroup cohomology(const SimplicialComplex& x, const SimplicialComplex& a, int n, const CoefficientRing& ring);

/// Alexander-Whitney product of cochains: (a u b)(s) = a(front face) * b(back face).
Cochain cup_cochain(const SimplicialComplex& x, const Cochain& a, const Cochain& b, unsigned long modulus);
/// Steenrod's cup-i product mod 2 for the global vertex order.
Cochain cup_i(const SimplicialComplex& x, const Cochain& a, const Cochain& b, int i);

CohomClass cup(const CohomClass& x, const CohomClass& y);
/// Sq^k x = x cup_{n-k} x for deg x = n; zero when k > n.
CohomClass steenrod_square(const CohomClass& x, int k);
CohomClass sq1(const CohomClass& x);
CohomClass sq2(const CohomClass& x);
/// Integral Bockstein of a mod-2 class: lift, apply the coboundary, halve.
CohomClass bockstein(const CohomClass& x);
CohomClass reduce_mod2(const CohomClass& x);
/// The same integral cocycle read with Z_P coefficients.
CohomClass coefficient_map(const CohomClass& x, const PrimeSet& primes);
CohomClass beta_P(const CohomClass& x, const PrimeSet& primes);
/// beta o Sq^2 o rho, degree + 3.
CohomClass sq3_integral(const CohomClass& x);
/// Pullback along the inclusion (Y, B) -> (X, A), which requires Y in X and B in A.
CohomClass restrict_to(const CohomClass& x, const PairPtr& target);
/// Cochain-level Sq^3_Z on an integral cocycle (a cocycle of degree n + 3).
Cochain sq3_cochain(const PairCohomology& pair, const Cochain& cocycle);

}  // namespace ddc
