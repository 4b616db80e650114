#include "ddcalc/smith.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace ddc {
namespace {

bool is_unit(const Integer& v) { return mpz_cmpabs_ui(v.get_mpz_t(), 1) == 0; }

Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

SparseVector lin2(const SparseVector& x, const Integer& a, const SparseVector& y, const Integer& b)
{
    SparseVector out = x;
    out.scale(a);
    out.add_multiple(y, b);
    return out;
}

class Eliminator {
public:
    Eliminator(const SparseMatrix& m, unsigned long modulus, unsigned track)
        : modulus_(modulus), work_(m.rows()), occ_(m.cols()),
          track_rows_(track & kTrackRows), track_cols_(track & kTrackColumns)
    {
        out_.rows = m.rows();
        out_.cols = m.cols();
        for (std::size_t r = 0; r < m.rows(); ++r) {
            work_[r] = m.row(r);
            work_[r].reduce(modulus_);
            for (const auto& e : work_[r].entries())
                occ_[e.first].insert(r);
        }
        if (track_rows_) {
            out_.u = SparseMatrix::identity(m.rows());
            out_.u_inv_t = SparseMatrix::identity(m.rows());
        }
        if (track_cols_)
            out_.v_t = SparseMatrix::identity(m.cols());
    }

    SmithReduction run()
    {
        eliminate();
        if (modulus_ == 0)
            fix_divisibility();
        std::vector<bool> row_used(out_.rows), col_used(out_.cols);
        for (const auto& p : out_.pivots) {
            row_used[p.row] = true;
            col_used[p.col] = true;
        }
        for (std::size_t r = 0; r < out_.rows; ++r)
            if (!row_used[r])
                out_.zero_rows.push_back(r);
        for (std::size_t c = 0; c < out_.cols; ++c)
            if (!col_used[c])
                out_.zero_cols.push_back(c);
        return std::move(out_);
    }

private:
    void replace_row(std::size_t k, SparseVector next)
    {
        const auto& old = work_[k].entries();
        const auto& nw = next.entries();
        auto a = old.begin();
        auto b = nw.begin();
        while (a != old.end() || b != nw.end()) {
            if (b == nw.end() || (a != old.end() && a->first < b->first)) {
                occ_[a->first].erase(k);
                ++a;
            } else if (a == old.end() || b->first < a->first) {
                occ_[b->first].insert(k);
                ++b;
            } else {
                ++a;
                ++b;
            }
        }
        work_[k] = std::move(next);
    }

    // row k += f * row i
    void row_op(std::size_t k, std::size_t i, const Integer& f)
    {
        SparseVector next = work_[k];
        next.add_multiple(work_[i], f, modulus_);
        replace_row(k, std::move(next));
        if (track_rows_) {
            out_.u.row(k).add_multiple(out_.u.row(i), f, modulus_);
            Integer neg = -f;
            out_.u_inv_t.row(i).add_multiple(out_.u_inv_t.row(k), neg, modulus_);
        }
    }

    // col l += f * col j, where column j is zero outside row i
    void col_op(std::size_t i, std::size_t l, std::size_t j, const Integer& f)
    {
        Integer v = work_[i].at(l) + f * work_[i].at(j);
        if (modulus_)
            v = reduce_mod(v, modulus_);
        work_[i].set(l, v);
        if (v == 0)
            occ_[l].erase(i);
        if (track_cols_)
            out_.v_t.row(l).add_multiple(out_.v_t.row(j), f, modulus_);
    }

    bool select_pivot(std::size_t& pi, std::size_t& pj)
    {
        bool found = false;
        std::tuple<int, Integer, std::size_t, std::size_t, std::size_t> best;
        for (std::size_t r = 0; r < work_.size(); ++r) {
            const auto& entries = work_[r].entries();
            if (entries.empty())
                continue;
            const std::size_t row_cost = entries.size() - 1;
            for (const auto& [c, v] : entries) {
                const bool unit = modulus_ != 0 || is_unit(v);
                std::tuple<int, Integer, std::size_t, std::size_t, std::size_t> key(
                    unit ? 0 : 1, unit ? Integer(0) : Integer(abs(v)), row_cost * (occ_[c].size() - 1), r, c);
                if (!found || key < best) {
                    best = std::move(key);
                    found = true;
                }
            }
        }
        if (found) {
            pi = std::get<3>(best);
            pj = std::get<4>(best);
        }
        return found;
    }

    void eliminate()
    {
        std::size_t i = 0, j = 0;
        while (select_pivot(i, j)) {
            const Integer a = work_[i].at(j);
            bool column_clean = true;
            std::vector<std::size_t> others(occ_[j].begin(), occ_[j].end());
            for (std::size_t k : others) {
                if (k == i)
                    continue;
                Integer q = modulus_ ? work_[k].at(j) : floor_div(work_[k].at(j), a);
                if (q != 0)
                    row_op(k, i, -q);
                if (work_[k].at(j) != 0)
                    column_clean = false;
            }
            if (!column_clean)
                continue;

            bool row_clean = true;
            const auto entries = work_[i].entries();
            for (const auto& [l, v] : entries) {
                if (l == j)
                    continue;
                Integer q = modulus_ ? v : floor_div(v, a);
                if (q != 0)
                    col_op(i, l, j, -q);
                if (work_[i].at(l) != 0)
                    row_clean = false;
            }
            if (!row_clean)
                continue;

            Integer value = a;
            if (value < 0) {
                value = -value;
                if (track_cols_)
                    out_.v_t.row(j).scale(-1);
            }
            out_.pivots.push_back(Pivot{i, j, value});
            replace_row(i, SparseVector());
        }
    }

    void fix_divisibility()
    {
        auto& piv = out_.pivots;
        std::stable_sort(piv.begin(), piv.end(), [](const Pivot& x, const Pivot& y) { return x.value < y.value; });
        for (std::size_t a = 0; a < piv.size(); ++a) {
            if (piv[a].value == 1)
                continue;
            for (std::size_t b = a + 1; b < piv.size(); ++b) {
                if (mpz_divisible_p(piv[b].value.get_mpz_t(), piv[a].value.get_mpz_t()))
                    continue;
                combine_pivots(piv[a], piv[b]);
            }
        }
    }

    // Replaces diag(x, y) by diag(gcd, lcm) through a 2x2 row and column transform.
    void combine_pivots(Pivot& pa, Pivot& pb)
    {
        const Integer x = pa.value, y = pb.value;
        Integer g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        const Integer xg = x / g, yg = y / g;
        if (track_rows_) {
            const SparseVector ua = out_.u.row(pa.row), ub = out_.u.row(pb.row);
            out_.u.set_row(pa.row, lin2(ua, s, ub, t));
            out_.u.set_row(pb.row, lin2(ua, -yg, ub, xg));
            const SparseVector ca = out_.u_inv_t.row(pa.row), cb = out_.u_inv_t.row(pb.row);
            out_.u_inv_t.set_row(pa.row, lin2(ca, xg, cb, yg));
            out_.u_inv_t.set_row(pb.row, lin2(ca, -t, cb, s));
        }
        if (track_cols_) {
            const SparseVector va = out_.v_t.row(pa.col), vb = out_.v_t.row(pb.col);
            out_.v_t.set_row(pa.col, lin2(va, 1, vb, 1));
            out_.v_t.set_row(pb.col, lin2(va, -t * yg, vb, s * xg));
        }
        pa.value = g;
        pb.value = x * yg;
    }

    unsigned long modulus_;
    std::vector<SparseVector> work_;
    std::vector<std::set<std::size_t>> occ_;
    bool track_rows_;
    bool track_cols_;
    SmithReduction out_;
};

}  // namespace

SmithReduction smith_reduce(const SparseMatrix& m, unsigned long modulus, unsigned track)
{
    if (modulus != 0 && modulus != 2)
        throw std::invalid_argument("smith_reduce supports modulus 0 or 2");
    return Eliminator(m, modulus, track).run();
}

SmithForm smith_normal_form(const SparseMatrix& m)
{
    SmithReduction red = smith_reduce(m, 0, kTrackBoth);
    std::vector<std::size_t> row_order, col_order;
    for (const auto& p : red.pivots) {
        row_order.push_back(p.row);
        col_order.push_back(p.col);
    }
    row_order.insert(row_order.end(), red.zero_rows.begin(), red.zero_rows.end());
    col_order.insert(col_order.end(), red.zero_cols.begin(), red.zero_cols.end());

    SmithForm f;
    f.u = red.u.select_rows(row_order);
    f.v = red.v_t.select_rows(col_order).transpose();
    f.d = SparseMatrix(m.rows(), m.cols());
    for (std::size_t k = 0; k < red.pivots.size(); ++k)
        f.d.set(k, k, red.pivots[k].value);
    return f;
}

Integer determinant(const SparseMatrix& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant of a non-square matrix");
    auto a = m.to_dense();
    const std::size_t n = a.size();
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != k) {
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * (n ? a[n - 1][n - 1] : Integer(1));
}

}  // namespace ddc
