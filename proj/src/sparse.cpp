#include "ddcalc/sparse.hpp"

#include <algorithm>
#include <stdexcept>

namespace ddc {

Integer reduce_mod(const Integer& x, const Integer& m)
{
    if (m == 0)
        return x;
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

SparseVector SparseVector::unit(std::size_t i, const Integer& value)
{
    SparseVector v;
    if (value != 0)
        v.entries_.emplace_back(i, value);
    return v;
}

SparseVector SparseVector::from_dense(const std::vector<Integer>& dense)
{
    SparseVector v;
    for (std::size_t i = 0; i < dense.size(); ++i)
        if (dense[i] != 0)
            v.entries_.emplace_back(i, dense[i]);
    return v;
}

Integer SparseVector::at(std::size_t i) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, std::size_t k) { return e.first < k; });
    if (it != entries_.end() && it->first == i)
        return it->second;
    return 0;
}

void SparseVector::set(std::size_t i, const Integer& value)
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, std::size_t k) { return e.first < k; });
    if (it != entries_.end() && it->first == i) {
        if (value == 0)
            entries_.erase(it);
        else
            it->second = value;
    } else if (value != 0) {
        entries_.insert(it, Entry(i, value));
    }
}

void SparseVector::add_multiple(const SparseVector& other, const Integer& factor, unsigned long modulus)
{
    if (factor == 0 || other.empty())
        return;
    std::vector<Entry> out;
    out.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    Integer tmp;
    while (a != entries_.end() || b != other.entries_.end()) {
        if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
            out.push_back(std::move(*a));
            ++a;
        } else if (a == entries_.end() || b->first < a->first) {
            tmp = factor * b->second;
            if (modulus)
                tmp = reduce_mod(tmp, modulus);
            if (tmp != 0)
                out.emplace_back(b->first, tmp);
            ++b;
        } else {
            tmp = a->second + factor * b->second;
            if (modulus)
                tmp = reduce_mod(tmp, modulus);
            if (tmp != 0)
                out.emplace_back(a->first, tmp);
            ++a;
            ++b;
        }
    }
    entries_ = std::move(out);
}

void SparseVector::combine(const Integer& a, const SparseVector& other, const Integer& b)
{
    scale(a);
    add_multiple(other, b);
}

void SparseVector::scale(const Integer& factor)
{
    if (factor == 0) {
        entries_.clear();
        return;
    }
    for (auto& e : entries_)
        e.second *= factor;
}

void SparseVector::reduce(unsigned long modulus)
{
    if (!modulus)
        return;
    std::vector<Entry> out;
    Integer m = modulus;
    for (auto& e : entries_) {
        Integer r = reduce_mod(e.second, m);
        if (r != 0)
            out.emplace_back(e.first, r);
    }
    entries_ = std::move(out);
}

std::vector<Integer> SparseVector::to_dense(std::size_t size) const
{
    std::vector<Integer> out(size);
    for (const auto& [i, v] : entries_) {
        if (i >= size)
            throw std::out_of_range("sparse vector index out of range");
        out[i] = v;
    }
    return out;
}

Integer SparseVector::dot(const std::vector<Integer>& dense) const
{
    Integer sum = 0;
    for (const auto& [i, v] : entries_)
        if (i < dense.size())
            sum += v * dense[i];
    return sum;
}

SparseMatrix SparseMatrix::identity(std::size_t n)
{
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.rows_[i] = SparseVector::unit(i);
    return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Integer>>& dense, std::size_t cols)
{
    SparseMatrix m(dense.size(), cols);
    for (std::size_t r = 0; r < dense.size(); ++r) {
        if (dense[r].size() != cols)
            throw std::invalid_argument("ragged dense matrix");
        m.rows_[r] = SparseVector::from_dense(dense[r]);
    }
    return m;
}

SparseMatrix SparseMatrix::from_columns(const std::vector<SparseVector>& columns, std::size_t rows)
{
    SparseMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (const auto& [r, v] : columns[c].entries()) {
            if (r >= rows)
                throw std::out_of_range("column entry out of range");
            m.rows_[r].push_back(c, v);
        }
    return m;
}

std::size_t SparseMatrix::nnz() const
{
    std::size_t n = 0;
    for (const auto& r : rows_)
        n += r.nnz();
    return n;
}

SparseMatrix SparseMatrix::transpose() const
{
    SparseMatrix t(cols_, rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [c, v] : rows_[r].entries())
            t.rows_[c].push_back(r, v);
    return t;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& rhs) const
{
    if (cols_ != rhs.rows())
        throw std::invalid_argument("matrix dimension mismatch in product");
    SparseMatrix out(rows_.size(), rhs.cols());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        SparseVector acc;
        for (const auto& [k, v] : rows_[r].entries())
            acc.add_multiple(rhs.rows_[k], v);
        out.rows_[r] = std::move(acc);
    }
    return out;
}

std::vector<Integer> SparseMatrix::apply(const std::vector<Integer>& x) const
{
    if (x.size() != cols_)
        throw std::invalid_argument("vector length mismatch in matrix apply");
    std::vector<Integer> y(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        y[r] = rows_[r].dot(x);
    return y;
}

SparseVector SparseMatrix::column(std::size_t c) const
{
    SparseVector v;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        Integer x = rows_[r].at(c);
        if (x != 0)
            v.push_back(r, x);
    }
    return v;
}

SparseMatrix SparseMatrix::select_rows(const std::vector<std::size_t>& which) const
{
    SparseMatrix m(which.size(), cols_);
    for (std::size_t i = 0; i < which.size(); ++i)
        m.rows_[i] = rows_.at(which[i]);
    return m;
}

SparseMatrix SparseMatrix::select_columns(const std::vector<std::size_t>& which) const
{
    std::vector<std::size_t> where(cols_, static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < which.size(); ++i)
        where.at(which[i]) = i;
    SparseMatrix m(rows_.size(), which.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        std::vector<SparseVector::Entry> picked;
        for (const auto& [c, v] : rows_[r].entries())
            if (where[c] != static_cast<std::size_t>(-1))
                picked.emplace_back(where[c], v);
        std::sort(picked.begin(), picked.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [c, v] : picked)
            m.rows_[r].push_back(c, std::move(v));
    }
    return m;
}

std::vector<std::vector<Integer>> SparseMatrix::to_dense() const
{
    std::vector<std::vector<Integer>> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_)
        out.push_back(r.to_dense(cols_));
    return out;
}

bool SparseMatrix::is_zero() const
{
    return std::all_of(rows_.begin(), rows_.end(), [](const SparseVector& r) { return r.empty(); });
}

void SparseMatrix::reduce(unsigned long modulus)
{
    for (auto& r : rows_)
        r.reduce(modulus);
}

}  // namespace ddc
