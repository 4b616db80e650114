#include "ddcalc/abelian_group.hpp"

#include "ddcalc/smith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ddc {

std::string describe(std::size_t free_rank, const std::vector<Integer>& torsion,
                     const std::string& free_symbol, bool force_exponent)
{
    std::vector<std::string> parts;
    if (free_rank == 1 && !force_exponent)
        parts.push_back(free_symbol);
    else if (free_rank > 0)
        parts.push_back(free_symbol + "^" + std::to_string(free_rank));
    for (const auto& d : torsion)
        parts.push_back("Z/" + d.get_str());
    if (parts.empty())
        return "0";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i)
        out += " + " + parts[i];
    return out;
}

// ---------------------------------------------------------------------------
// FgAbGroup

FgAbGroup::FgAbGroup(CoefficientRing ring, std::size_t free_rank, std::vector<Integer> torsion, BasisData basis)
    : ring_(std::move(ring)), free_rank_(free_rank), torsion_(std::move(torsion)), basis_(std::move(basis))
{
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
        if (torsion_[i] <= 1)
            throw std::invalid_argument("invariant factors must exceed 1");
        if (i > 0 && !mpz_divisible_p(torsion_[i].get_mpz_t(), torsion_[i - 1].get_mpz_t()))
            throw std::invalid_argument("invariant factors must form a divisibility chain");
        if (ring_.is_localized() && ring_.primes().strip(torsion_[i]) != torsion_[i])
            throw std::invalid_argument("torsion of a Z_P-module must be coprime to P");
    }
    if (ring_.is_mod2() && !torsion_.empty())
        throw std::invalid_argument("Z/2-modules carry no invariant factors");
    if (basis_.project_den.empty())
        basis_.project_den.assign(generator_count(), 1);
    if (basis_.lift.cols() != generator_count() || basis_.project.rows() != generator_count())
        throw std::invalid_argument("basis data does not match the generator count");
}

FgAbGroup FgAbGroup::trivial(CoefficientRing ring, std::size_t ambient_dim)
{
    BasisData b;
    b.ambient_dim = ambient_dim;
    b.lift = SparseMatrix(ambient_dim, 0);
    b.project = SparseMatrix(0, ambient_dim);
    b.membership = SparseMatrix::identity(ambient_dim);
    b.membership_mod.assign(ambient_dim, 0);
    return FgAbGroup(std::move(ring), 0, {}, std::move(b));
}

FgAbGroup FgAbGroup::free_module(CoefficientRing ring, std::size_t rank)
{
    BasisData b;
    b.ambient_dim = rank;
    b.lift = SparseMatrix::identity(rank);
    b.project = SparseMatrix::identity(rank);
    b.membership = SparseMatrix(0, rank);
    return FgAbGroup(std::move(ring), rank, {}, std::move(b));
}

FgAbGroup FgAbGroup::abstract(CoefficientRing ring, std::size_t free_rank, std::vector<Integer> torsion)
{
    const std::size_t n = free_rank + torsion.size();
    BasisData b;
    b.ambient_dim = n;
    b.lift = SparseMatrix::identity(n);
    b.project = SparseMatrix::identity(n);
    b.membership = SparseMatrix(0, n);
    return FgAbGroup(std::move(ring), free_rank, std::move(torsion), std::move(b));
}

std::optional<Integer> FgAbGroup::order() const
{
    if (ring_.is_mod2()) {
        Integer o = 1;
        mpz_mul_2exp(o.get_mpz_t(), o.get_mpz_t(), free_rank_);
        return o;
    }
    if (free_rank_ > 0)
        return std::nullopt;
    Integer o = 1;
    for (const auto& d : torsion_)
        o *= d;
    return o;
}

Integer FgAbGroup::coordinate_modulus(std::size_t j) const
{
    if (j < free_rank_)
        return ring_.is_mod2() ? Integer(2) : Integer(0);
    return torsion_.at(j - free_rank_);
}

Coords FgAbGroup::reduce(Coords coords) const
{
    if (coords.size() != generator_count())
        throw std::invalid_argument("coordinate vector has wrong length for " + iso_type());
    for (std::size_t j = 0; j < coords.size(); ++j)
        coords[j] = reduce_mod(coords[j], coordinate_modulus(j));
    return coords;
}

bool FgAbGroup::is_zero(const Coords& coords) const
{
    const Coords r = reduce(coords);
    return std::all_of(r.begin(), r.end(), [](const Integer& v) { return v == 0; });
}

Coords FgAbGroup::add(const Coords& x, const Coords& y) const
{
    if (x.size() != generator_count() || y.size() != generator_count())
        throw std::invalid_argument("coordinate vector has wrong length");
    Coords out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        out[j] = x[j] + y[j];
    return reduce(std::move(out));
}

Coords FgAbGroup::negate(const Coords& x) const
{
    Coords out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        out[j] = -x[j];
    return reduce(std::move(out));
}

Coords FgAbGroup::scale(const Coords& x, const Integer& k) const
{
    Coords out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        out[j] = k * x[j];
    return reduce(std::move(out));
}

Coords FgAbGroup::basis_vector(std::size_t j) const
{
    Coords e(generator_count());
    e.at(j) = 1;
    return e;
}

Coords FgAbGroup::lift(const Coords& coords) const
{
    Coords z = basis_.lift.apply(coords);
    if (ring_.is_mod2())
        for (auto& v : z)
            v = reduce_mod(v, 2);
    return z;
}

bool FgAbGroup::contains(const Coords& ambient) const
{
    if (ambient.size() != basis_.ambient_dim)
        return false;
    for (std::size_t r = 0; r < basis_.membership.rows(); ++r) {
        Integer v = basis_.membership.row(r).dot(ambient);
        const Integer& m = basis_.membership_mod[r];
        if (m == 0 ? v != 0 : !mpz_divisible_p(v.get_mpz_t(), m.get_mpz_t()))
            return false;
    }
    return true;
}

Coords FgAbGroup::project(const Coords& ambient) const
{
    if (!contains(ambient))
        throw std::domain_error("vector does not lie in the lattice presenting " + iso_type());
    Coords c(generator_count());
    for (std::size_t k = 0; k < c.size(); ++k) {
        Integer v = basis_.project.row(k).dot(ambient);
        const Integer& den = basis_.project_den[k];
        if (den != 1) {
            if (!mpz_divisible_p(v.get_mpz_t(), den.get_mpz_t()))
                throw std::logic_error("inexact projection onto " + iso_type());
            v /= den;
        }
        c[k] = std::move(v);
    }
    return reduce(std::move(c));
}

std::string FgAbGroup::iso_type() const
{
    switch (ring_.kind()) {
    case RingKind::Int:
        return describe(free_rank_, torsion_);
    case RingKind::Mod2:
        return describe(0, std::vector<Integer>(free_rank_, Integer(2)));
    case RingKind::Localized: {
        std::string body = describe(free_rank_, torsion_, "Z_P", true);
        return body == "0" ? body : body + " (P=" + ring_.primes().to_string() + ")";
    }
    }
    return "?";
}

std::vector<Integer> FgAbGroup::primary_decomposition() const
{
    std::vector<Integer> out;
    std::vector<Integer> factors = torsion_;
    if (ring_.is_mod2())
        factors.assign(free_rank_, Integer(2));
    for (Integer d : factors) {
        for (unsigned long p = 2; d > 1; ++p) {
            if (Integer(p) * Integer(p) > d) {
                out.push_back(d);
                break;
            }
            Integer pk = 1;
            while (mpz_divisible_ui_p(d.get_mpz_t(), p)) {
                d /= p;
                pk *= p;
            }
            if (pk > 1)
                out.push_back(pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Homomorphisms

GroupHom::GroupHom(GroupPtr source, GroupPtr target, SparseMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix))
{
    if (matrix_.rows() != target_->generator_count() || matrix_.cols() != source_->generator_count())
        throw std::invalid_argument("hom matrix does not match source/target generator counts");
}

Coords GroupHom::apply(const Coords& x) const
{
    return target_->reduce(matrix_.apply(source_->reduce(x)));
}

bool GroupHom::is_zero() const
{
    for (std::size_t j = 0; j < source_->generator_count(); ++j)
        if (!target_->is_zero(matrix_.apply(source_->basis_vector(j))))
            return false;
    return true;
}

GroupHom hom_from_images(GroupPtr source, GroupPtr target, const std::vector<Coords>& images)
{
    if (images.size() != source->generator_count())
        throw std::invalid_argument("one image per source generator required");
    std::vector<SparseVector> cols;
    for (std::size_t j = 0; j < images.size(); ++j) {
        Coords img = target->reduce(images[j]);
        const Integer m = source->coordinate_modulus(j);
        if (m != 0 && !target->is_zero(target->scale(img, m)))
            throw std::logic_error("hom does not respect torsion: generator of order " + m.get_str() +
                                   " sent to an element of larger order");
        cols.push_back(SparseVector::from_dense(img));
    }
    SparseMatrix matrix = SparseMatrix::from_columns(cols, target->generator_count());
    return GroupHom(std::move(source), std::move(target), std::move(matrix));
}

GroupHom induced_hom(GroupPtr source, GroupPtr target, const SparseMatrix& ambient_map)
{
    if (ambient_map.rows() != target->ambient_dim() || ambient_map.cols() != source->ambient_dim())
        throw std::invalid_argument("ambient map has wrong shape");
    std::vector<Coords> images;
    for (std::size_t j = 0; j < source->generator_count(); ++j) {
        Coords z = ambient_map.apply(source->lift(source->basis_vector(j)));
        if (!target->contains(z))
            throw std::logic_error("ambient map does not send cycles to cycles");
        images.push_back(target->project(z));
    }
    return hom_from_images(std::move(source), std::move(target), images);
}

GroupHom identity_hom(GroupPtr group)
{
    const std::size_t n = group->generator_count();
    return GroupHom(group, group, SparseMatrix::identity(n));
}

GroupHom compose(const GroupHom& second, const GroupHom& first)
{
    if (first.target().generator_count() != second.source().generator_count())
        throw std::invalid_argument("homs are not composable");
    std::vector<Coords> images;
    for (std::size_t j = 0; j < first.source().generator_count(); ++j)
        images.push_back(second.apply(first.apply(first.source().basis_vector(j))));
    return hom_from_images(first.source_ptr(), second.target_ptr(), images);
}

namespace {

// Columns generating {x in Z^a : H x == 0 modulo the target coordinate moduli}.
SparseMatrix preimage_lattice(const SparseMatrix& h, const FgAbGroup& target)
{
    const std::size_t a = h.cols();
    SparseMatrix m = h;
    std::vector<std::size_t> mod_rows;
    for (std::size_t j = 0; j < target.generator_count(); ++j)
        if (target.coordinate_modulus(j) != 0)
            mod_rows.push_back(j);
    m.set_cols(a + mod_rows.size());
    for (std::size_t k = 0; k < mod_rows.size(); ++k)
        m.row(mod_rows[k]).set(a + k, -target.coordinate_modulus(mod_rows[k]));
    SmithReduction red = smith_reduce(m.transpose(), 0, kTrackRows);
    std::vector<SparseVector> cols;
    for (std::size_t q : red.zero_rows) {
        SparseVector v;
        for (const auto& [i, x] : red.u.row(q).entries())
            if (i < a)
                v.push_back(i, x);
        cols.push_back(std::move(v));
    }
    return SparseMatrix::from_columns(cols, a);
}

SparseMatrix relation_columns(const FgAbGroup& g)
{
    std::vector<SparseVector> cols;
    for (std::size_t j = 0; j < g.generator_count(); ++j) {
        Integer m = g.coordinate_modulus(j);
        if (m != 0)
            cols.push_back(SparseVector::unit(j, m));
    }
    return SparseMatrix::from_columns(cols, g.generator_count());
}

SparseMatrix hcat(const SparseMatrix& a, const SparseMatrix& b)
{
    SparseMatrix out = a;
    out.set_cols(a.cols() + b.cols());
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (const auto& [c, v] : b.row(r).entries())
            out.row(r).push_back(a.cols() + c, v);
    return out;
}

SparseMatrix hom_matrix_raw(const GroupHom& h)
{
    return h.matrix();
}

// Converts a Z-lattice quotient whose every factor has order 2 into an F_2-vector space.
FgAbGroup as_mod2(const FgAbGroup& g)
{
    if (g.free_rank() != 0 || std::any_of(g.torsion().begin(), g.torsion().end(), [](const Integer& d) { return d != 2; }))
        throw std::logic_error("subquotient of Z/2-modules is not an elementary 2-group");
    return FgAbGroup(CoefficientRing::mod2(), g.torsion().size(), {}, g.basis());
}

}  // namespace

FgAbGroup lattice_subquotient(std::size_t ambient_dim, const SparseMatrix& l_columns,
                              const SparseMatrix& r_columns, const CoefficientRing& ring)
{
    if (l_columns.rows() != ambient_dim || r_columns.rows() != ambient_dim)
        throw std::invalid_argument("lattice generators have wrong ambient dimension");

    SmithReduction red1 = smith_reduce(l_columns, 0, kTrackRows);
    const std::size_t r1 = red1.rank();

    // R expressed in the basis b_k = d_k * (column p_k of U^{-1}) of L.
    SparseMatrix u_r = red1.u * r_columns;
    SparseMatrix rl(r1, r_columns.cols());
    for (std::size_t k = 0; k < r1; ++k) {
        SparseVector row = u_r.row(red1.pivots[k].row);
        const Integer& d = red1.pivots[k].value;
        for (const auto& [c, v] : row.entries())
            if (!mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t()))
                throw std::logic_error("relation lattice is not contained in the cycle lattice");
        if (d != 1) {
            SparseVector q;
            for (const auto& [c, v] : row.entries())
                q.push_back(c, v / d);
            row = std::move(q);
        }
        rl.set_row(k, std::move(row));
    }
    for (std::size_t q : red1.zero_rows)
        if (!u_r.row(q).empty())
            throw std::logic_error("relation lattice is not contained in the cycle lattice");

    SmithReduction red2 = smith_reduce(rl, 0, kTrackRows);

    std::vector<std::size_t> gens;  // rows of U2: free first, then torsion in chain order
    std::vector<Integer> torsion;
    for (std::size_t s : red2.zero_rows)
        gens.push_back(s);
    const std::size_t free_rank = gens.size();
    for (const auto& p : red2.pivots)
        if (p.value != 1) {
            gens.push_back(p.row);
            torsion.push_back(p.value);
        }

    // b_k as sparse ambient vectors
    std::vector<SparseVector> lbasis(r1);
    for (std::size_t k = 0; k < r1; ++k) {
        lbasis[k] = red1.u_inv_t.row(red1.pivots[k].row);
        lbasis[k].scale(red1.pivots[k].value);
    }

    BasisData b;
    b.ambient_dim = ambient_dim;
    std::vector<SparseVector> lift_cols;
    for (std::size_t s : gens) {
        SparseVector v;
        for (const auto& [k, x] : red2.u_inv_t.row(s).entries())
            v.add_multiple(lbasis[k], x);
        lift_cols.push_back(std::move(v));
    }
    b.lift = SparseMatrix::from_columns(lift_cols, ambient_dim);
    b.project = SparseMatrix(gens.size(), ambient_dim);
    for (std::size_t g = 0; g < gens.size(); ++g) {
        const SparseVector& coeffs = red2.u.row(gens[g]);
        Integer den = 1;
        for (const auto& [k, x] : coeffs.entries())
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), red1.pivots[k].value.get_mpz_t());
        SparseVector row;
        for (const auto& [k, x] : coeffs.entries())
            row.add_multiple(red1.u.row(red1.pivots[k].row), x * (den / red1.pivots[k].value));
        b.project.set_row(g, std::move(row));
        b.project_den.push_back(den);
    }
    b.membership = SparseMatrix(0, ambient_dim);
    for (const auto& p : red1.pivots)
        if (p.value != 1) {
            b.membership.append_row(red1.u.row(p.row));
            b.membership_mod.push_back(p.value);
        }
    for (std::size_t q : red1.zero_rows) {
        b.membership.append_row(red1.u.row(q));
        b.membership_mod.push_back(0);
    }

    FgAbGroup lattice_group(CoefficientRing::integers(), free_rank, std::move(torsion), std::move(b));
    if (ring.is_mod2())
        return as_mod2(lattice_group);
    if (ring.is_localized())
        return localize(lattice_group, ring.primes());
    return lattice_group;
}

FgAbGroup kernel(const GroupHom& h)
{
    const FgAbGroup& s = h.source();
    SparseMatrix l = preimage_lattice(hom_matrix_raw(h), h.target());
    return lattice_subquotient(s.generator_count(), l, relation_columns(s), s.ring());
}

FgAbGroup cokernel(const GroupHom& h)
{
    const FgAbGroup& t = h.target();
    SparseMatrix r = hcat(h.matrix(), relation_columns(t));
    return lattice_subquotient(t.generator_count(), SparseMatrix::identity(t.generator_count()), r, t.ring());
}

FgAbGroup homology_of(const GroupHom& in, const GroupHom& out)
{
    const FgAbGroup& g = in.target();
    if (out.source().generator_count() != g.generator_count())
        throw std::invalid_argument("homs are not composable");
    SparseMatrix l = preimage_lattice(out.matrix(), out.target());
    SparseMatrix r = hcat(in.matrix(), relation_columns(g));
    return lattice_subquotient(g.generator_count(), l, r, g.ring());
}

FgAbGroup group_from_presentation(std::size_t n_generators, const SparseMatrix& relations,
                                  const CoefficientRing& ring)
{
    if (relations.cols() != n_generators)
        throw std::invalid_argument("relation matrix must have one column per generator");
    SparseMatrix r = relations.transpose();
    if (ring.is_mod2()) {
        SparseMatrix twos(n_generators, n_generators);
        for (std::size_t i = 0; i < n_generators; ++i)
            twos.set(i, i, 2);
        r = hcat(r, twos);
    }
    return lattice_subquotient(n_generators, SparseMatrix::identity(n_generators), r, ring);
}

namespace {

std::vector<std::size_t> kept_generators(const FgAbGroup& g, const PrimeSet& primes, std::vector<Integer>& new_torsion)
{
    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < g.free_rank(); ++j)
        kept.push_back(j);
    for (std::size_t t = 0; t < g.torsion().size(); ++t) {
        Integer d = primes.strip(g.torsion()[t]);
        if (d != 1) {
            kept.push_back(g.free_rank() + t);
            new_torsion.push_back(d);
        }
    }
    return kept;
}

}  // namespace

FgAbGroup localize(const FgAbGroup& group, const PrimeSet& primes)
{
    if (!group.ring().is_int())
        throw std::invalid_argument("localize expects a group over Z");
    std::vector<Integer> torsion;
    std::vector<std::size_t> kept = kept_generators(group, primes, torsion);
    BasisData b = group.basis();
    b.lift = b.lift.select_columns(kept);
    b.project = b.project.select_rows(kept);
    std::vector<Integer> den;
    for (std::size_t k : kept)
        den.push_back(group.basis().project_den.at(k));
    b.project_den = std::move(den);
    return FgAbGroup(CoefficientRing::localized(primes), group.free_rank(), std::move(torsion), std::move(b));
}

Coords localize_coordinates(const FgAbGroup& group, const PrimeSet& primes, const Coords& coords)
{
    std::vector<Integer> torsion;
    std::vector<std::size_t> kept = kept_generators(group, primes, torsion);
    const Coords reduced = group.reduce(coords);
    Coords out;
    for (std::size_t idx = 0; idx < kept.size(); ++idx) {
        const std::size_t k = kept[idx];
        if (k < group.free_rank())
            out.push_back(reduced[k]);
        else
            out.push_back(reduce_mod(reduced[k], torsion[idx - group.free_rank()]));
    }
    return out;
}

FgAbGroup direct_sum(const std::vector<FgAbGroup>& groups)
{
    if (groups.empty())
        return FgAbGroup::trivial(CoefficientRing::integers());
    const CoefficientRing ring = groups.front().ring();
    std::size_t ambient = 0;
    std::vector<std::size_t> offsets;
    for (const auto& g : groups) {
        if (!(g.ring() == ring))
            throw std::invalid_argument("direct sum of modules over different rings");
        offsets.push_back(ambient);
        ambient += g.ambient_dim();
    }
    // generator order: all free generators, then all torsion generators sorted into a chain
    struct Gen {
        std::size_t group, index;
        Integer order;
    };
    std::vector<Gen> free_gens, tors_gens;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const auto& g = groups[gi];
        for (std::size_t j = 0; j < g.free_rank(); ++j)
            free_gens.push_back({gi, j, 0});
        for (std::size_t t = 0; t < g.torsion().size(); ++t)
            tors_gens.push_back({gi, g.free_rank() + t, g.torsion()[t]});
    }
    std::vector<Integer> orders;
    for (const auto& t : tors_gens)
        orders.push_back(t.order);
    std::vector<Integer> sorted = orders;
    std::sort(sorted.begin(), sorted.end());
    bool chain = true;
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (!mpz_divisible_p(sorted[i].get_mpz_t(), sorted[i - 1].get_mpz_t()))
            chain = false;

    if (!chain) {
        // Fall back to a presentation over the concatenated coordinates.
        std::size_t n = 0;
        for (const auto& g : groups)
            n += g.generator_count();
        std::vector<SparseVector> rel;
        std::size_t off = 0;
        for (const auto& g : groups) {
            for (std::size_t j = 0; j < g.generator_count(); ++j) {
                Integer m = g.coordinate_modulus(j);
                if (m != 0)
                    rel.push_back(SparseVector::unit(off + j, m));
            }
            off += g.generator_count();
        }
        SparseMatrix rels = SparseMatrix::from_columns(rel, n).transpose();
        FgAbGroup pres = group_from_presentation(n, rels, ring.is_mod2() ? CoefficientRing::integers() : ring);
        // compose with block basis data of the summands
        std::vector<SparseVector> lift_cols;
        for (std::size_t k = 0; k < pres.generator_count(); ++k) {
            Coords coord_vec = pres.lift(pres.basis_vector(k));
            SparseVector v;
            std::size_t o = 0;
            for (std::size_t gi = 0; gi < groups.size(); ++gi) {
                Coords part(coord_vec.begin() + o, coord_vec.begin() + o + groups[gi].generator_count());
                Coords amb = groups[gi].basis().lift.apply(part);
                for (std::size_t i = 0; i < amb.size(); ++i)
                    if (amb[i] != 0)
                        v.push_back(offsets[gi] + i, amb[i]);
                o += groups[gi].generator_count();
            }
            lift_cols.push_back(std::move(v));
        }
        BasisData b;
        b.ambient_dim = ambient;
        b.lift = SparseMatrix::from_columns(lift_cols, ambient);
        // projection: summand projections (rational rows) followed by the presentation projection
        b.project = SparseMatrix(pres.generator_count(), ambient);
        for (std::size_t k = 0; k < pres.generator_count(); ++k) {
            const SparseVector& prow = pres.basis().project.row(k);
            Integer den = pres.basis().project_den[k];
            Integer common = 1;
            std::size_t o = 0;
            std::vector<std::pair<std::size_t, std::size_t>> where;  // coordinate -> (group, local)
            for (std::size_t gi = 0; gi < groups.size(); ++gi)
                for (std::size_t j = 0; j < groups[gi].generator_count(); ++j)
                    where.emplace_back(gi, j);
            for (const auto& [c, v] : prow.entries()) {
                const auto [gi, j] = where[c];
                mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), groups[gi].basis().project_den[j].get_mpz_t());
            }
            SparseVector row;
            for (const auto& [c, v] : prow.entries()) {
                const auto [gi, j] = where[c];
                const auto& grow = groups[gi].basis().project.row(j);
                Integer f = v * (common / groups[gi].basis().project_den[j]);
                SparseVector shifted;
                for (const auto& [i, x] : grow.entries())
                    shifted.push_back(offsets[gi] + i, x);
                row.add_multiple(shifted, f);
            }
            (void)o;
            b.project.set_row(k, std::move(row));
            b.project_den.push_back(den * common);
        }
        b.membership = SparseMatrix(0, ambient);
        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
            const auto& gb = groups[gi].basis();
            for (std::size_t r = 0; r < gb.membership.rows(); ++r) {
                SparseVector shifted;
                for (const auto& [i, x] : gb.membership.row(r).entries())
                    shifted.push_back(offsets[gi] + i, x);
                b.membership.append_row(std::move(shifted));
                b.membership_mod.push_back(gb.membership_mod[r]);
            }
        }
        FgAbGroup out(pres.ring(), pres.free_rank(), pres.torsion(), std::move(b));
        return ring.is_mod2() ? as_mod2(out) : out;
    }

    std::vector<std::size_t> perm(tors_gens.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) { return orders[x] < orders[y]; });
    std::vector<Gen> order = free_gens;
    for (std::size_t p : perm)
        order.push_back(tors_gens[p]);

    BasisData b;
    b.ambient_dim = ambient;
    std::vector<SparseVector> lift_cols;
    b.project = SparseMatrix(order.size(), ambient);
    std::vector<Integer> torsion;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& g = groups[order[k].group];
        const std::size_t off = offsets[order[k].group];
        SparseVector col;
        const SparseVector src = g.basis().lift.column(order[k].index);
        for (const auto& [i, x] : src.entries())
            col.push_back(off + i, x);
        lift_cols.push_back(std::move(col));
        SparseVector row;
        for (const auto& [i, x] : g.basis().project.row(order[k].index).entries())
            row.push_back(off + i, x);
        b.project.set_row(k, std::move(row));
        b.project_den.push_back(g.basis().project_den[order[k].index]);
        if (k >= free_gens.size())
            torsion.push_back(order[k].order);
    }
    b.lift = SparseMatrix::from_columns(lift_cols, ambient);
    b.membership = SparseMatrix(0, ambient);
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const auto& gb = groups[gi].basis();
        for (std::size_t r = 0; r < gb.membership.rows(); ++r) {
            SparseVector shifted;
            for (const auto& [i, x] : gb.membership.row(r).entries())
                shifted.push_back(offsets[gi] + i, x);
            b.membership.append_row(std::move(shifted));
            b.membership_mod.push_back(gb.membership_mod[r]);
        }
    }
    return FgAbGroup(ring, free_gens.size(), std::move(torsion), std::move(b));
}

}  // namespace ddc
