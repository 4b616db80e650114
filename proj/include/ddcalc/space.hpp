#pragma once

#include "ddcalc/cohomology.hpp"
#include "ddcalc/model.hpp"

#include <memory>
#include <optional>

namespace ddc {

/// The subspace A of a pair (X, A) used by the K-theory computations.
struct Subspace {
    enum class Kind { Empty, Basepoint, Skeleton };
    Kind kind = Kind::Empty;
    int level = -1;  // skeleton dimension for Kind::Skeleton

    static Subspace empty() { return {Kind::Empty, -1}; }
    static Subspace basepoint() { return {Kind::Basepoint, 0}; }
    /// X_k; negative k is the empty subspace.
    static Subspace skeleton(int k) { return k < 0 ? empty() : Subspace{Kind::Skeleton, k}; }
    std::string describe() const;
};

/// E_2 input of the Atiyah-Hirzebruch spectral sequence of a pair: H^p(X, A; Z) and d_3.
class AhssSource {
public:
    virtual ~AhssSource() = default;
    virtual int dimension() const = 0;
    /// Lowest dimension of a cell of X outside A; nullopt when there is none.
    virtual std::optional<int> lowest_cell() const = 0;
    virtual GroupPtr group(int p) const = 0;
    /// Matrix of d_3 = Sq^3_Z : H^p -> H^{p+3} in the chosen coordinates.
    virtual SparseMatrix d3(int p) const = 0;
    /// Degrees whose group may only serve as the source of d_3 (not as a graded piece).
    virtual std::optional<int> source_only_degree() const { return std::nullopt; }
};

/// A space X given either as a triangulation or as an algebraic model.
class Space {
public:
    static Space triangulated(ComplexPtr x);
    static Space model(std::shared_ptr<const AlgebraicModel> m);

    bool is_model() const { return model_ != nullptr; }
    const SimplicialComplex& complex() const { return *complex_; }
    const AlgebraicModel& algebraic_model() const { return *model_; }
    int dimension() const;
    std::string name() const;
    std::uint64_t fingerprint() const;

    GroupPtr integral(int p) const;
    GroupPtr mod2(int p) const;
    GroupPtr with_ring(int p, const CoefficientRing& ring) const;
    std::size_t h1_rank() const;

    /// Coordinates in H^3(X; ring) of beta(w_i u w_j) for the basis w_* of H^1(X; Z/2).
    /// `ring` is Z or Z_P.
    Coords twist(std::size_t i, std::size_t j, const CoefficientRing& ring) const;

    std::shared_ptr<const AhssSource> ahss_source(const Subspace& a) const;

    PairPtr absolute_pair() const { return pair_; }

private:
    ComplexPtr complex_;
    PairPtr pair_;
    std::shared_ptr<const AlgebraicModel> model_;
};

}  // namespace ddc
