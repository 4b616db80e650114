#include "ddcalc/space.hpp"

#include <algorithm>
#include <sstream>

namespace ddc {

namespace {

const CoefficientRing kZ = CoefficientRing::integers();
const CoefficientRing kF2 = CoefficientRing::mod2();

class TriangulatedSource : public AhssSource {
public:
    explicit TriangulatedSource(PairPtr pair) : pair_(std::move(pair)) {}

    int dimension() const override { return pair_->space().dimension(); }

    std::optional<int> lowest_cell() const override
    {
        for (int p = 0; p <= dimension(); ++p)
            if (!pair_->cells().cells[p].empty())
                return p;
        return std::nullopt;
    }

    GroupPtr group(int p) const override { return pair_->group(p, kZ); }

    SparseMatrix d3(int p) const override
    {
        GroupPtr src = group(p), tgt = group(p + 3);
        std::vector<SparseVector> cols;
        for (std::size_t j = 0; j < src->generator_count(); ++j) {
            if (tgt->is_trivial()) {
                cols.emplace_back();
                continue;
            }
            Cochain z = pair_->from_ambient(p, src->lift(src->basis_vector(j)));
            Cochain s = sq3_cochain(*pair_, z);
            cols.push_back(SparseVector::from_dense(tgt->project(pair_->to_ambient(s))));
        }
        return SparseMatrix::from_columns(cols, tgt->generator_count());
    }

private:
    PairPtr pair_;
};

class ModelSource : public AhssSource {
public:
    ModelSource(std::shared_ptr<const AlgebraicModel> m, Subspace a) : m_(std::move(m)), a_(a) {}

    int dimension() const override { return m_->dim; }

    std::optional<int> lowest_cell() const override
    {
        const int floor = a_.kind == Subspace::Kind::Skeleton ? a_.level + 1 : 0;
        if (m_->cells.empty()) {
            const int c = a_.kind == Subspace::Kind::Basepoint ? 1 : floor;
            return c <= m_->dim ? std::optional<int>(c) : std::nullopt;
        }
        std::vector<int> cells = m_->cells;
        std::sort(cells.begin(), cells.end());
        if (a_.kind == Subspace::Kind::Basepoint && !cells.empty() && cells[0] == 0)
            cells.erase(cells.begin());
        for (int c : cells)
            if (c >= floor)
                return c;
        return std::nullopt;
    }

    GroupPtr group(int p) const override
    {
        if (p < 0 || p > m_->dim)
            return std::make_shared<FgAbGroup>(FgAbGroup::trivial(kZ));
        if (a_.kind == Subspace::Kind::Skeleton && p <= a_.level)
            return std::make_shared<FgAbGroup>(FgAbGroup::trivial(kZ));
        const FgAbGroup& h = m_->integral(p);
        if (a_.kind == Subspace::Kind::Basepoint && p == 0) {
            if (h.free_rank() == 0)
                throw std::invalid_argument("model has no H^0 class to remove for the basepoint");
            return std::make_shared<FgAbGroup>(FgAbGroup::abstract(kZ, h.free_rank() - 1, h.torsion()));
        }
        return std::make_shared<FgAbGroup>(h);
    }

    SparseMatrix d3(int p) const override
    {
        GroupPtr src = group(p), tgt = group(p + 3);
        if (src->is_trivial() || tgt->is_trivial())
            return SparseMatrix(tgt->generator_count(), src->generator_count());
        return m_->d3(p);
    }

    // H^{k+1}(X, X_k) is not determined by the cohomology of X; only its d_3 image is.
    std::optional<int> source_only_degree() const override
    {
        if (a_.kind == Subspace::Kind::Skeleton)
            return a_.level + 1;
        return std::nullopt;
    }

private:
    std::shared_ptr<const AlgebraicModel> m_;
    Subspace a_;
};

}  // namespace

std::string Subspace::describe() const
{
    switch (kind) {
    case Kind::Empty:
        return "empty";
    case Kind::Basepoint:
        return "basepoint";
    case Kind::Skeleton:
        return "skeleton " + std::to_string(level);
    }
    return "?";
}

Space Space::triangulated(ComplexPtr x)
{
    Space s;
    s.pair_ = PairCohomology::absolute(x);
    s.complex_ = std::move(x);
    return s;
}

Space Space::model(std::shared_ptr<const AlgebraicModel> m)
{
    Space s;
    s.model_ = std::move(m);
    return s;
}

int Space::dimension() const { return is_model() ? model_->dim : complex_->dimension(); }

std::string Space::name() const { return is_model() ? model_->name : complex_->name(); }

std::uint64_t Space::fingerprint() const
{
    if (!is_model())
        return complex_->fingerprint();
    // models are hashed by name and dimension; the CLI also hashes the file text
    std::uint64_t h = 1469598103934665603ull;
    for (char c : model_->name + "#" + std::to_string(model_->dim)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

GroupPtr Space::integral(int p) const { return with_ring(p, kZ); }
GroupPtr Space::mod2(int p) const { return with_ring(p, kF2); }

GroupPtr Space::with_ring(int p, const CoefficientRing& ring) const
{
    if (!is_model())
        return pair_->group(p, ring);
    switch (ring.kind()) {
    case RingKind::Int:
        return std::make_shared<FgAbGroup>(model_->integral(p));
    case RingKind::Mod2:
        return std::make_shared<FgAbGroup>(model_->mod2(p));
    case RingKind::Localized:
        return std::make_shared<FgAbGroup>(model_->localized(p, ring.primes()));
    }
    return nullptr;
}

std::size_t Space::h1_rank() const { return integral(1)->free_rank(); }

Coords Space::twist(std::size_t i, std::size_t j, const CoefficientRing& ring) const
{
    if (!is_model()) {
        CohomClass wi = CohomClass::basis(pair_, kF2, 1, i);
        CohomClass wj = CohomClass::basis(pair_, kF2, 1, j);
        CohomClass b = bockstein(cup(wi, wj));
        return ring.is_localized() ? coefficient_map(b, ring.primes()).coords() : b.coords();
    }
    Coords c2 = model_->cup(1, 1, true, i, j);
    Coords c3 = model_->integral(3).reduce(model_->beta(2).apply(c2));
    return ring.is_localized() ? localize_coordinates(model_->integral(3), ring.primes(), c3) : c3;
}

std::shared_ptr<const AhssSource> Space::ahss_source(const Subspace& a) const
{
    if (is_model())
        return std::make_shared<ModelSource>(model_, a);
    ComplexPtr sub;
    switch (a.kind) {
    case Subspace::Kind::Empty:
        sub = std::make_shared<SimplicialComplex>(SimplicialComplex::empty());
        break;
    case Subspace::Kind::Basepoint:
        sub = std::make_shared<SimplicialComplex>(vertex_subcomplex(*complex_, complex_->base_vertex()));
        break;
    case Subspace::Kind::Skeleton:
        sub = std::make_shared<SimplicialComplex>(skeleton(*complex_, a.level));
        break;
    }
    if (a.kind == Subspace::Kind::Empty)
        return std::make_shared<TriangulatedSource>(pair_);
    return std::make_shared<TriangulatedSource>(std::make_shared<PairCohomology>(complex_, sub));
}

}  // namespace ddc
