#include "doctest.h"

#include "ddcalc/cohomology.hpp"

#include <random>

using namespace ddc;

namespace {

const std::string kCorpus = DDC_CORPUS_DIR;
const CoefficientRing Z = CoefficientRing::integers();
const CoefficientRing F2 = CoefficientRing::mod2();

PairPtr space(const std::string& name)
{
    return PairCohomology::absolute(std::make_shared<SimplicialComplex>(load_complex_file(kCorpus + "/" + name + ".json")));
}

// A random class whose representative is perturbed by a random coboundary.
CohomClass random_class(std::mt19937& rng, const PairPtr& pair, const CoefficientRing& ring, int n)
{
    const FgAbGroup& g = *pair->group(n, ring);
    Coords c(g.generator_count());
    for (std::size_t j = 0; j < c.size(); ++j)
        c[j] = static_cast<long>(rng() % 7) - 3;
    CohomClass x(pair, ring, n, c);
    if (n == 0 || pair->space().count(n - 1) == 0)
        return x;
    Cochain noise{n - 1, {}};
    for (std::size_t k = 0; k < pair->space().count(n - 1); ++k)
        if (rng() % 3 == 0 && pair->cells().position[n - 1][k] != RelativeCells::npos)
            noise.values.push_back(k, static_cast<long>(rng() % 5) - 2);
    Cochain rep = x.representative();
    rep.values.add_multiple(pair->coboundary(noise).values, 1, ring.modulus());
    CohomClass y = CohomClass::of_cocycle(pair, ring, rep);
    REQUIRE(y == x);
    return y;
}

Cochain add_mod2(Cochain a, const Cochain& b)
{
    a.values.add_multiple(b.values, 1, 2);
    return a;
}

}  // namespace

TEST_CASE("cohomology groups")
{
    CHECK(space("rp2")->group(1, F2)->iso_type() == "Z/2");
    CHECK(space("s3")->group(3, Z)->iso_type() == "Z");
    CHECK(space("point")->group(2, Z)->is_trivial());
    CHECK(space("point")->group(0, Z)->iso_type() == "Z");
}

TEST_CASE("cup products")
{
    auto rp2 = space("rp2");
    CohomClass a = CohomClass::basis(rp2, F2, 1, 0);
    CHECK(cup(a, CohomClass::zero(rp2, F2, 1)).is_zero());
    CohomClass a2 = cup(a, a);
    CHECK(a2.degree() == 2);
    CHECK(!a2.is_zero());

    // torus: alpha u beta evaluates to +-1 on the oriented fundamental cycle
    auto t2 = space("t2");
    const auto& x = t2->space();
    CohomClass al = CohomClass::basis(t2, Z, 1, 0), be = CohomClass::basis(t2, Z, 1, 1);
    CohomClass ab = cup(al, be);
    CHECK(ab.group().iso_type() == "Z");
    CHECK(abs(ab.coords()[0]) == 1);
    // fundamental cycle: a cycle z in C_2 with integer coefficients spanning ker d_2
    auto cx = relative_cochain_complex(x, SimplicialComplex::empty(), Z);
    FgAbGroup top = homology_at(cx, 2);
    // pairing of cocycle with cycle: the cycle is the kernel of delta^1 transpose
    SparseMatrix d1t = cx.delta(1).transpose();
    FgAbGroup cycles = kernel(GroupHom(std::make_shared<FgAbGroup>(FgAbGroup::free_module(Z, x.count(2))),
                                       std::make_shared<FgAbGroup>(FgAbGroup::free_module(Z, x.count(1))), d1t));
    REQUIRE(cycles.generator_count() == 1);
    Coords fundamental = cycles.lift(cycles.basis_vector(0));
    CHECK(abs(ab.representative().values.dot(fundamental)) == 1);
    (void)top;
}

TEST_CASE("cup-i products")
{
    std::mt19937 rng(12);
    for (const char* name : {"rp2", "t2", "rp2xs1", "s1xs2"}) {
        auto pair = space(name);
        const auto& x = pair->space();
        // x cup_1 x = x for degree-1 classes (Sq^0)
        for (std::size_t j = 0; j < pair->group(1, F2)->generator_count(); ++j) {
            CohomClass w = random_class(rng, pair, F2, 1);
            CHECK(CohomClass::of_cocycle(pair, F2, cup_i(x, w.representative(), w.representative(), 1)) == w);
            CHECK(steenrod_square(w, 0) == w);
        }
        // cup_0 is the cup product
        CohomClass u = random_class(rng, pair, F2, 1), v = random_class(rng, pair, F2, 1);
        CHECK(cup_i(x, u.representative(), v.representative(), 0).values ==
              cup_cochain(x, u.representative(), v.representative(), 2).values);
        // coboundary identity
        for (int trial = 0; trial < 5; ++trial)
            for (int p = 1; p <= x.dimension(); ++p)
                for (int q = 1; p + q <= x.dimension() + 2; ++q)
                    for (int i = 1; i <= std::min(p, q); ++i) {
                        if (p + q - i > x.dimension())
                            continue;
                        CohomClass c1 = random_class(rng, pair, F2, p), c2 = random_class(rng, pair, F2, q);
                        Cochain lhs = pair->coboundary(cup_i(x, c1.representative(), c2.representative(), i));
                        lhs.values.reduce(2);
                        Cochain rhs = add_mod2(cup_i(x, c1.representative(), c2.representative(), i - 1),
                                               cup_i(x, c2.representative(), c1.representative(), i - 1));
                        CHECK(lhs.values == rhs.values);
                    }
    }
}

TEST_CASE("Steenrod squares")
{
    auto rp2 = space("rp2");
    CohomClass a = CohomClass::basis(rp2, F2, 1, 0);
    CHECK(sq2(a).is_zero());
    CHECK(sq1(a) == cup(a, a));
    CHECK(steenrod_square(cup(a, a), 2).is_zero());  // lands in degree 4

    auto t2 = space("t2");
    CohomClass x2 = CohomClass::basis(t2, F2, 2, 0);
    CHECK(sq2(x2) == cup(x2, x2));
}

TEST_CASE("Bockstein and reduction")
{
    auto rp2 = space("rp2");
    CohomClass a = CohomClass::basis(rp2, F2, 1, 0);
    CohomClass ba = bockstein(a);
    CHECK(ba.degree() == 2);
    CHECK(ba.group().iso_type() == "Z/2");
    CHECK(!ba.is_zero());
    CHECK(bockstein(CohomClass::zero(rp2, F2, 1)).is_zero());
    CHECK(!reduce_mod2(ba).is_zero());
    CHECK(reduce_mod2(ba.scaled(2)).is_zero());
    CHECK(beta_P(a, PrimeSet({2})).is_zero());
    CHECK(!beta_P(a, PrimeSet({3})).is_zero());
}

TEST_CASE("beta_P of a cross product")
{
    auto x = space("rp2xrp2");
    auto g1 = x->group(1, F2);
    REQUIRE(g1->generator_count() == 2);
    CohomClass a = CohomClass::basis(x, F2, 1, 0), b = CohomClass::basis(x, F2, 1, 1);
    CohomClass t = beta_P(cup(a, b), PrimeSet({3}));
    CHECK(t.group().iso_type() == "Z/2 (P={3})");
    CHECK(!t.is_zero());
    CHECK(beta_P(cup(a, b), PrimeSet({2})).is_zero());
}

TEST_CASE("cohomology operation identities on random classes")
{
    std::mt19937 rng(21);
    for (const char* name : {"rp2", "t2", "rp3", "rp2xs1", "t3", "s1xs2"}) {
        auto pair = space(name);
        const int dim = pair->space().dimension();
        for (int trial = 0; trial < 6; ++trial)
            for (int n = 0; n <= dim; ++n) {
                CohomClass xz = random_class(rng, pair, Z, n);
                CohomClass x2 = random_class(rng, pair, F2, n);
                CHECK(bockstein(reduce_mod2(xz)).is_zero());
                CHECK(reduce_mod2(bockstein(x2)) == sq1(x2));
                CHECK(sq3_integral(sq3_integral(xz)).is_zero());
                for (int m = 0; n + m <= dim; ++m) {
                    CohomClass y2 = random_class(rng, pair, F2, m);
                    CohomClass lhs = sq2(cup(x2, y2));
                    CohomClass rhs = cup(sq2(x2), y2) + cup(sq1(x2), sq1(y2)) + cup(x2, sq2(y2));
                    CHECK(lhs == rhs);
                    CHECK(cup(x2, y2) == cup(y2, x2));
                    CohomClass yz = random_class(rng, pair, Z, m);
                    const Integer sign = (n * m) % 2 ? -1 : 1;
                    CHECK(cup(xz, yz) == cup(yz, xz).scaled(sign));
                    for (int k = 0; n + m + k <= dim; ++k) {
                        CohomClass wz = random_class(rng, pair, Z, k);
                        CHECK(cup(cup(xz, yz), wz) == cup(xz, cup(yz, wz)));
                    }
                }
            }
    }
}

TEST_CASE("beta(w u w) vanishes on all of H^1(Z/2)")
{
    for (const char* name : {"rp2", "t2", "rp3", "rp2xs1", "t3", "rp2xrp2"}) {
        auto pair = space(name);
        const FgAbGroup& h1 = *pair->group(1, F2);
        REQUIRE(h1.generator_count() <= 4);
        for (unsigned mask = 0; mask < (1u << h1.generator_count()); ++mask) {
            Coords c(h1.generator_count());
            for (std::size_t j = 0; j < c.size(); ++j)
                c[j] = mask >> j & 1;
            CohomClass w(pair, F2, 1, c);
            CHECK(bockstein(cup(w, w)).is_zero());
        }
    }
}

TEST_CASE("naturality under restriction to a subcomplex")
{
    std::mt19937 rng(8);
    auto x = space("rp2xs1");
    // the slice RP^2 x {0} and the full 2-skeleton
    for (int level : {1, 2}) {
        auto sub = PairCohomology::absolute(std::make_shared<SimplicialComplex>(skeleton(x->space(), level)));
        for (int trial = 0; trial < 10; ++trial)
            for (int n = 0; n <= level; ++n) {
                CohomClass u = random_class(rng, x, F2, n);
                CohomClass uz = random_class(rng, x, Z, n);
                CHECK(restrict_to(sq2(u), sub) == sq2(restrict_to(u, sub)));
                CHECK(restrict_to(bockstein(u), sub) == bockstein(restrict_to(u, sub)));
                for (int m = 0; n + m <= level; ++m) {
                    CohomClass v = random_class(rng, x, F2, m);
                    CHECK(restrict_to(cup(u, v), sub) == cup(restrict_to(u, sub), restrict_to(v, sub)));
                }
                (void)uz;
            }
    }
}

TEST_CASE("relative classes")
{
    auto s3 = std::make_shared<SimplicialComplex>(load_complex_file(kCorpus + "/s3.json"));
    auto rel = std::make_shared<PairCohomology>(s3, std::make_shared<SimplicialComplex>(vertex_subcomplex(*s3, 0)));
    CHECK(rel->group(0, Z)->is_trivial());
    CHECK(rel->group(3, Z)->iso_type() == "Z");
    CohomClass g = CohomClass::basis(rel, Z, 3, 0);
    CHECK(sq3_integral(g).is_zero());
    Cochain bad{0, SparseVector::unit(0, 1)};
    CHECK_THROWS_AS(rel->to_ambient(bad), std::domain_error);
}
