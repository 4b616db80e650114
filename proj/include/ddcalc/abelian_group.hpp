#pragma once

#include "ddcalc/ring.hpp"
#include "ddcalc/sparse.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ddc {

using Coords = std::vector<Integer>;

/// How the chosen generators sit inside an ambient lattice Z^N (cochains, or the
/// coordinates of a parent group). Projection is rational: coordinate k of an ambient
/// vector z is (project.row(k) . z) / project_den[k], exact whenever z is a member.
/// Membership: every row r of `membership` satisfies (row . z) == 0 mod membership_mod[r]
/// (modulus 0 meaning exact equality).
struct BasisData {
    std::size_t ambient_dim = 0;
    SparseMatrix lift;  // ambient_dim x generators
    SparseMatrix project;  // generators x ambient_dim
    std::vector<Integer> project_den;
    SparseMatrix membership;  // * x ambient_dim
    std::vector<Integer> membership_mod;
};

/// A finitely generated module over Z, Z/2 or Z_P in invariant-factor form.
///
/// Coordinates list the free generators first, then the torsion generators in
/// divisibility-chain order. Over Z/2 every generator is counted as free (the group is
/// an F_2 vector space) and coordinates live mod 2. Over Z_P the torsion orders are
/// coprime to P; elements are carried with integral coordinates.
class FgAbGroup {
public:
    FgAbGroup() = default;
    FgAbGroup(CoefficientRing ring, std::size_t free_rank, std::vector<Integer> torsion, BasisData basis);

    /// The group with no generators embedded in Z^ambient_dim.
    static FgAbGroup trivial(CoefficientRing ring, std::size_t ambient_dim = 0);
    /// R^rank with the standard basis as both ambient and generators.
    static FgAbGroup free_module(CoefficientRing ring, std::size_t rank);
    /// Abstract group with identity basis data on its own coordinates.
    static FgAbGroup abstract(CoefficientRing ring, std::size_t free_rank, std::vector<Integer> torsion);

    const CoefficientRing& ring() const { return ring_; }
    std::size_t free_rank() const { return free_rank_; }
    const std::vector<Integer>& torsion() const { return torsion_; }
    std::size_t generator_count() const { return free_rank_ + torsion_.size(); }
    bool is_trivial() const { return generator_count() == 0; }
    bool is_finite() const { return free_rank_ == 0 || ring_.is_mod2(); }
    bool is_torsion_free() const { return torsion_.empty() && !ring_.is_mod2(); }
    /// Order of a finite group; nullopt when infinite.
    std::optional<Integer> order() const;

    /// 0 for a free coordinate over Z or Z_P, 2 over Z/2, d_j for a torsion coordinate.
    Integer coordinate_modulus(std::size_t j) const;
    Coords reduce(Coords coords) const;
    bool is_zero(const Coords& coords) const;
    Coords zero() const { return Coords(generator_count()); }
    Coords add(const Coords& x, const Coords& y) const;
    Coords negate(const Coords& x) const;
    Coords scale(const Coords& x, const Integer& k) const;
    Coords basis_vector(std::size_t j) const;

    const BasisData& basis() const { return basis_; }
    std::size_t ambient_dim() const { return basis_.ambient_dim; }
    /// Ambient representative of the element with these coordinates.
    Coords lift(const Coords& coords) const;
    /// Coordinates of an ambient member; throws std::domain_error for non-members.
    Coords project(const Coords& ambient) const;
    bool contains(const Coords& ambient) const;

    /// Canonical description, e.g. "Z^2 + Z/2 + Z/4", "Z_P^1 + Z/3 (P={2})", "0".
    std::string iso_type() const;
    /// Prime-power decomposition of the torsion part, sorted.
    std::vector<Integer> primary_decomposition() const;

    bool same_iso_type(const FgAbGroup& other) const
    {
        return ring_ == other.ring_ && free_rank_ == other.free_rank_ && torsion_ == other.torsion_;
    }

private:
    CoefficientRing ring_ = CoefficientRing::integers();
    std::size_t free_rank_ = 0;
    std::vector<Integer> torsion_;
    BasisData basis_;
};

using GroupPtr = std::shared_ptr<const FgAbGroup>;

/// Homomorphism in chosen coordinates: column j is the image of generator j.
class GroupHom {
public:
    GroupHom(GroupPtr source, GroupPtr target, SparseMatrix matrix);

    const FgAbGroup& source() const { return *source_; }
    const FgAbGroup& target() const { return *target_; }
    GroupPtr source_ptr() const { return source_; }
    GroupPtr target_ptr() const { return target_; }
    const SparseMatrix& matrix() const { return matrix_; }

    Coords apply(const Coords& x) const;
    bool is_zero() const;

private:
    GroupPtr source_;
    GroupPtr target_;
    SparseMatrix matrix_;
};

/// Builds a hom from the images of the source generators (in target coordinates).
/// Throws std::logic_error if a torsion generator of order d is sent to an element
/// not killed by d.
GroupHom hom_from_images(GroupPtr source, GroupPtr target, const std::vector<Coords>& images);

/// The map on quotients induced by an ambient-level map (target.ambient x source.ambient).
/// Throws std::logic_error if a lifted generator is not sent into the target lattice.
GroupHom induced_hom(GroupPtr source, GroupPtr target, const SparseMatrix& ambient_map);

GroupHom identity_hom(GroupPtr group);
GroupHom compose(const GroupHom& second, const GroupHom& first);

/// Kernel, embedded in source coordinates (ambient = source coordinates).
FgAbGroup kernel(const GroupHom& h);
/// Cokernel, presented over target coordinates (ambient = target coordinates).
FgAbGroup cokernel(const GroupHom& h);
/// ker(out) / im(in) for composable in: A -> G, out: G -> B with out o in = 0;
/// ambient = G coordinates.
FgAbGroup homology_of(const GroupHom& in, const GroupHom& out);

/// L / R for lattices given by generating columns in Z^N, with R inside L.
/// The result is reported over `ring` (Z/2: every order must be 2; Z_P: localized).
FgAbGroup lattice_subquotient(std::size_t ambient_dim, const SparseMatrix& l_columns,
                              const SparseMatrix& r_columns, const CoefficientRing& ring);

/// <g_1..g_n | rows of relations> over the given ring.
FgAbGroup group_from_presentation(std::size_t n_generators, const SparseMatrix& relations,
                                  const CoefficientRing& ring);

/// G (over Z) tensored with Z_P: free rank kept, torsion stripped of P-parts, factors
/// that become trivial dropped together with their generators.
FgAbGroup localize(const FgAbGroup& group, const PrimeSet& primes);
/// Image of Z-coordinates of `group` in the coordinates of localize(group, primes).
Coords localize_coordinates(const FgAbGroup& group, const PrimeSet& primes, const Coords& coords);

/// Block direct sum; ambient is the concatenation of the ambients.
FgAbGroup direct_sum(const std::vector<FgAbGroup>& groups);

/// "Z^2 + Z/2"-style name for free rank and torsion list.
std::string describe(std::size_t free_rank, const std::vector<Integer>& torsion,
                     const std::string& free_symbol = "Z", bool force_exponent = false);

}  // namespace ddc
