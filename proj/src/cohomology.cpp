#include "ddcalc/cohomology.hpp"

#include <stdexcept>

namespace ddc {

namespace {

const CoefficientRing kZ = CoefficientRing::integers();
const CoefficientRing kF2 = CoefficientRing::mod2();

Cochain zero_cochain(int degree) { return Cochain{degree, {}}; }

void require_same(const CohomClass& x, const CohomClass& y)
{
    if (x.pair() != y.pair() && !(x.pair()->space().fingerprint() == y.pair()->space().fingerprint() &&
                                  x.pair()->subcomplex().fingerprint() == y.pair()->subcomplex().fingerprint()))
        throw std::invalid_argument("classes live on different pairs");
    if (!(x.ring() == y.ring()))
        throw std::invalid_argument("classes have different coefficient rings");
}

void require_ring(const CohomClass& x, RingKind kind, const char* what)
{
    if (x.ring().kind() != kind)
        throw std::invalid_argument(std::string(what) + ": wrong coefficient ring " + x.ring().display());
}

Integer value_on(const SimplicialComplex& x, const Cochain& c, const Simplex& s)
{
    if (c.values.empty())
        return 0;
    auto idx = x.index_of(s);
    return idx ? c.values.at(*idx) : Integer(0);
}

}  // namespace

// ---------------------------------------------------------------------------
// PairCohomology

PairCohomology::PairCohomology(ComplexPtr x, ComplexPtr a)
    : x_(std::move(x)), a_(std::move(a)), cells_(relative_cells(*x_, *a_)),
      absolute_(relative_cochain_complex(*x_, SimplicialComplex::empty(), kZ))
{
}

std::shared_ptr<const PairCohomology> PairCohomology::absolute(ComplexPtr x)
{
    return std::make_shared<PairCohomology>(std::move(x), std::make_shared<SimplicialComplex>(SimplicialComplex::empty()));
}

const CochainComplexPresentation& PairCohomology::cochains(const CoefficientRing& ring) const
{
    std::lock_guard<std::mutex> lock(mutex_);
    auto& slot = complexes_[ring.display()];
    if (!slot)
        slot = std::make_shared<CochainComplexPresentation>(relative_cochain_complex(*x_, *a_, ring));
    return *slot;
}

GroupPtr PairCohomology::group(int n, const CoefficientRing& ring) const
{
    const auto key = std::make_pair(n, ring.display());
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = groups_.find(key);
        if (it != groups_.end())
            return it->second;
    }
    GroupPtr g = std::make_shared<FgAbGroup>(homology_at(cochains(ring), n));
    std::lock_guard<std::mutex> lock(mutex_);
    return groups_.emplace(key, g).first->second;
}

Coords PairCohomology::to_ambient(const Cochain& c) const
{
    const int n = c.degree;
    const bool in_range = n >= 0 && n <= x_->dimension();
    Coords out(in_range ? cells_.cells[n].size() : 0);
    for (const auto& [idx, v] : c.values.entries()) {
        if (!in_range)
            throw std::domain_error("cochain degree out of range");
        const std::size_t pos = cells_.position[n].at(idx);
        if (pos == RelativeCells::npos)
            throw std::domain_error("cochain does not vanish on the subcomplex");
        out[pos] = v;
    }
    return out;
}

Cochain PairCohomology::from_ambient(int n, const Coords& ambient) const
{
    Cochain c{n, {}};
    for (std::size_t k = 0; k < ambient.size(); ++k)
        if (ambient[k] != 0)
            c.values.push_back(cells_.cells[n][k], ambient[k]);
    return c;
}

Cochain PairCohomology::coboundary(const Cochain& c) const
{
    const int n = c.degree;
    if (n < 0 || n >= x_->dimension())
        return zero_cochain(n + 1);
    const Coords dense = c.values.to_dense(x_->count(n));
    return Cochain{n + 1, SparseVector::from_dense(absolute_.delta(n).apply(dense))};
}

FgAbGroup cohomology(const SimplicialComplex& x, const SimplicialComplex& a, int n, const CoefficientRing& ring)
{
    return homology_at(relative_cochain_complex(x, a, ring), n);
}

// ---------------------------------------------------------------------------
// CohomClass

CohomClass::CohomClass(PairPtr pair, CoefficientRing ring, int degree, Coords coords)
    : pair_(std::move(pair)), ring_(std::move(ring)), degree_(degree)
{
    group_ = pair_->group(degree_, ring_);
    coords_ = group_->reduce(std::move(coords));
    rep_ = pair_->from_ambient(degree_, group_->lift(coords_));
}

CohomClass::CohomClass(PairPtr pair, CoefficientRing ring, int degree, Coords coords, Cochain rep)
    : pair_(std::move(pair)), ring_(std::move(ring)), degree_(degree), coords_(std::move(coords)), rep_(std::move(rep))
{
    group_ = pair_->group(degree_, ring_);
}

CohomClass CohomClass::of_cocycle(PairPtr pair, CoefficientRing ring, const Cochain& cocycle)
{
    Cochain rep = cocycle;
    if (ring.is_mod2())
        rep.values.reduce(2);
    GroupPtr g = pair->group(rep.degree, ring);
    Coords coords = g->project(pair->to_ambient(rep));
    return CohomClass(std::move(pair), std::move(ring), rep.degree, std::move(coords), std::move(rep));
}

CohomClass CohomClass::zero(PairPtr pair, CoefficientRing ring, int degree)
{
    return of_cocycle(std::move(pair), std::move(ring), zero_cochain(degree));
}

CohomClass CohomClass::basis(PairPtr pair, CoefficientRing ring, int degree, std::size_t j)
{
    GroupPtr g = pair->group(degree, ring);
    return CohomClass(std::move(pair), std::move(ring), degree, g->basis_vector(j));
}

CohomClass CohomClass::operator+(const CohomClass& other) const
{
    require_same(*this, other);
    if (degree_ != other.degree_)
        throw std::invalid_argument("cannot add classes of different degrees");
    Cochain rep = rep_;
    rep.values.add_multiple(other.rep_.values, 1, ring_.modulus());
    return CohomClass(pair_, ring_, degree_, group_->add(coords_, other.coords_), std::move(rep));
}

CohomClass CohomClass::scaled(const Integer& k) const
{
    Cochain rep = rep_;
    rep.values.scale(k);
    rep.values.reduce(ring_.modulus());
    return CohomClass(pair_, ring_, degree_, group_->scale(coords_, k), std::move(rep));
}

bool CohomClass::operator==(const CohomClass& other) const
{
    return ring_ == other.ring_ && degree_ == other.degree_ &&
           pair_->space().fingerprint() == other.pair_->space().fingerprint() &&
           group_->is_zero(group_->add(coords_, group_->negate(other.coords_)));
}

// ---------------------------------------------------------------------------
// Cochain operations

Cochain cup_cochain(const SimplicialComplex& x, const Cochain& a, const Cochain& b, unsigned long modulus)
{
    const int p = a.degree, q = b.degree, n = p + q;
    Cochain out = zero_cochain(n);
    if (a.values.empty() || b.values.empty() || n > x.dimension())
        return out;
    const auto& top = x.simplices(n);
    for (std::size_t k = 0; k < top.size(); ++k) {
        const Simplex& s = top[k];
        Integer fa = value_on(x, a, Simplex(s.begin(), s.begin() + p + 1));
        if (fa == 0)
            continue;
        Integer fb = value_on(x, b, Simplex(s.begin() + p, s.end()));
        Integer v = fa * fb;
        if (modulus)
            v = reduce_mod(v, modulus);
        if (v != 0)
            out.values.push_back(k, v);
    }
    return out;
}

Cochain cup_i(const SimplicialComplex& x, const Cochain& a, const Cochain& b, int i)
{
    const int p = a.degree, q = b.degree, n = p + q - i;
    Cochain out = zero_cochain(n);
    if (i < 0 || n < 0 || n > x.dimension() || a.values.empty() || b.values.empty())
        return out;
    const auto& top = x.simplices(n);
    std::vector<int> u(i + 1);
    for (std::size_t k = 0; k < top.size(); ++k) {
        const Simplex& s = top[k];
        unsigned parity = 0;
        // 0 <= u_0 < ... < u_i <= n, as the first combination in lexicographic order
        for (int t = 0; t <= i; ++t)
            u[t] = t;
        while (true) {
            // a takes [0,u0] u [u1,u2] u ..., b takes [u0,u1] u [u2,u3] u ...
            Simplex fa, fb;
            int lo = 0;
            for (int t = 0; t <= i + 1; ++t) {
                const int hi = t <= i ? u[t] : n;
                Simplex& dst = t % 2 == 0 ? fa : fb;
                for (int v = lo; v <= hi; ++v)
                    dst.push_back(s[v]);
                lo = hi;
            }
            if (static_cast<int>(fa.size()) == p + 1 && static_cast<int>(fb.size()) == q + 1) {
                const Integer va = value_on(x, a, fa);
                if (va != 0 && value_on(x, b, fb) != 0 && mpz_odd_p(va.get_mpz_t()))
                    parity ^= mpz_odd_p(value_on(x, b, fb).get_mpz_t()) ? 1u : 0u;
            }
            int t = i;
            while (t >= 0 && u[t] == n - (i - t))
                --t;
            if (t < 0)
                break;
            ++u[t];
            for (int r = t + 1; r <= i; ++r)
                u[r] = u[r - 1] + 1;
        }
        if (parity)
            out.values.push_back(k, 1);
    }
    return out;
}

CohomClass cup(const CohomClass& x, const CohomClass& y)
{
    require_same(x, y);
    Cochain c = cup_cochain(x.pair()->space(), x.representative(), y.representative(), x.ring().modulus());
    return CohomClass::of_cocycle(x.pair(), x.ring(), c);
}

CohomClass steenrod_square(const CohomClass& x, int k)
{
    require_ring(x, RingKind::Mod2, "Steenrod square");
    const int n = x.degree();
    if (k < 0 || k > n)
        return CohomClass::zero(x.pair(), kF2, n + k);
    return CohomClass::of_cocycle(x.pair(), kF2, cup_i(x.pair()->space(), x.representative(), x.representative(), n - k));
}

CohomClass sq1(const CohomClass& x) { return steenrod_square(x, 1); }
CohomClass sq2(const CohomClass& x) { return steenrod_square(x, 2); }

namespace {

Cochain halved_coboundary(const PairCohomology& pair, Cochain lifted)
{
    Cochain d = pair.coboundary(lifted);
    SparseVector half;
    for (const auto& [k, v] : d.values.entries()) {
        if (!mpz_even_p(v.get_mpz_t()))
            throw std::logic_error("Bockstein: coboundary of a mod-2 cocycle lift is not even");
        half.push_back(k, v / 2);
    }
    d.values = std::move(half);
    return d;
}

}  // namespace

CohomClass bockstein(const CohomClass& x)
{
    require_ring(x, RingKind::Mod2, "bockstein");
    return CohomClass::of_cocycle(x.pair(), kZ, halved_coboundary(*x.pair(), x.representative()));
}

CohomClass reduce_mod2(const CohomClass& x)
{
    require_ring(x, RingKind::Int, "reduce_mod2");
    return CohomClass::of_cocycle(x.pair(), kF2, x.representative());
}

CohomClass coefficient_map(const CohomClass& x, const PrimeSet& primes)
{
    require_ring(x, RingKind::Int, "coefficient_map");
    return CohomClass::of_cocycle(x.pair(), CoefficientRing::localized(primes), x.representative());
}

CohomClass beta_P(const CohomClass& x, const PrimeSet& primes) { return coefficient_map(bockstein(x), primes); }

CohomClass sq3_integral(const CohomClass& x) { return bockstein(sq2(reduce_mod2(x))); }

Cochain sq3_cochain(const PairCohomology& pair, const Cochain& cocycle)
{
    Cochain r = cocycle;
    r.values.reduce(2);
    const int n = r.degree;
    if (n < 2)
        return zero_cochain(n + 3);
    Cochain s = cup_i(pair.space(), r, r, n - 2);
    return halved_coboundary(pair, std::move(s));
}

CohomClass restrict_to(const CohomClass& x, const PairPtr& target)
{
    const SimplicialComplex& from = x.pair()->space();
    const SimplicialComplex& to = target->space();
    if (!to.is_subcomplex_of(from) || !target->subcomplex().is_subcomplex_of(x.pair()->subcomplex()))
        throw std::invalid_argument("restriction needs Y in X and B in A");
    Cochain c = zero_cochain(x.degree());
    for (const auto& [idx, v] : x.representative().values.entries())
        if (auto j = to.index_of(from.simplex(x.degree(), idx)))
            c.values.push_back(*j, v);
    return CohomClass::of_cocycle(target, x.ring(), c);
}

}  // namespace ddc
