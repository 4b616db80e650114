#include "ddcalc/homology.hpp"

#include "ddcalc/smith.hpp"

namespace ddc {

SparseMatrix CochainComplexPresentation::delta(int p) const
{
    if (p >= 0 && p < static_cast<int>(coboundary.size()))
        return coboundary[p];
    return SparseMatrix(rank(p + 1), rank(p));
}

FgAbGroup homology_at(const CochainComplexPresentation& cx, int n)
{
    const unsigned long modulus = cx.ring.modulus();
    const std::size_t dim = cx.rank(n);
    if (dim == 0)
        return cx.ring.is_localized() ? localize(FgAbGroup::trivial(CoefficientRing::integers()), cx.ring.primes())
                                      : FgAbGroup::trivial(cx.ring.is_mod2() ? cx.ring : CoefficientRing::integers());

    const SparseMatrix in = cx.delta(n - 1);
    const SparseMatrix out = cx.delta(n);

    // U * in * V = D; pivot columns of U^{-1} span the boundaries up to d_k.
    SmithReduction red1 = smith_reduce(in, modulus, kTrackRows);
    const auto& q_rows = red1.zero_rows;

    // Cocycles among the span of the zero-row columns of U^{-1}.
    SparseMatrix a_t = red1.u_inv_t.select_rows(q_rows) * out.transpose();
    a_t.reduce(modulus);
    SmithReduction red2 = smith_reduce(a_t, modulus, kTrackRows);

    BasisData b;
    b.ambient_dim = dim;
    std::vector<SparseVector> lift_cols;
    std::vector<SparseVector> proj_rows;

    for (std::size_t s : red2.zero_rows) {
        SparseVector z;
        for (const auto& [q, c] : red2.u.row(s).entries())
            z.add_multiple(red1.u_inv_t.row(q_rows[q]), c, modulus);
        lift_cols.push_back(std::move(z));
        SparseVector row;
        for (const auto& [q, c] : red2.u_inv_t.row(s).entries())
            row.add_multiple(red1.u.row(q_rows[q]), c, modulus);
        proj_rows.push_back(std::move(row));
    }
    const std::size_t free_rank = lift_cols.size();
    std::vector<Integer> torsion;
    if (modulus == 0)
        for (const auto& p : red1.pivots)
            if (p.value != 1) {
                lift_cols.push_back(red1.u_inv_t.row(p.row));
                proj_rows.push_back(red1.u.row(p.row));
                torsion.push_back(p.value);
            }

    b.lift = SparseMatrix::from_columns(lift_cols, dim);
    b.project = SparseMatrix(proj_rows.size(), dim);
    for (std::size_t k = 0; k < proj_rows.size(); ++k)
        b.project.set_row(k, std::move(proj_rows[k]));
    b.membership = out;
    b.membership_mod.assign(out.rows(), Integer(modulus));

    if (cx.ring.is_mod2())
        return FgAbGroup(cx.ring, free_rank, {}, std::move(b));
    FgAbGroup g(CoefficientRing::integers(), free_rank, std::move(torsion), std::move(b));
    return cx.ring.is_localized() ? localize(g, cx.ring.primes()) : g;
}

}  // namespace ddc
