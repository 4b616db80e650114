#include "selftest.hpp"

#include "ddcalc/report.hpp"

#include <algorithm>
#include <chrono>
#include <set>

namespace ddc {

namespace {

const CoefficientRing kZ = CoefficientRing::integers();
const CoefficientRing kF2 = CoefficientRing::mod2();

const std::set<std::string> kFullOnly = {"s5", "s6", "rp2xs1", "rp2xrp2"};

struct Suite {
    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::ostream* log = nullptr;

    void check(bool ok, const std::string& what)
    {
        ++checks;
        if (!ok) {
            ++failures;
            if (log)
                *log << "  FAIL " << name << ": " << what << "\n";
        }
    }
};

struct Entry {
    std::string stem;
    Space space;
};

std::vector<CohomClass> classes(const PairPtr& pair, const CoefficientRing& ring, int n, std::mt19937_64& rng)
{
    const FgAbGroup& g = *pair->group(n, ring);
    std::vector<CohomClass> out;
    for (std::size_t j = 0; j < g.generator_count(); ++j)
        out.push_back(CohomClass::basis(pair, ring, n, j));
    if (g.generator_count() > 1) {
        Coords c;
        for (std::size_t j = 0; j < g.generator_count(); ++j)
            c.emplace_back(std::uniform_int_distribution<long>(-3, 3)(rng));
        out.emplace_back(pair, ring, n, g.reduce(c));
    }
    return out;
}

void cohomology_suite(const std::vector<Entry>& corpus, Suite& s)
{
    std::mt19937_64 rng(1);
    for (const auto& e : corpus) {
        if (e.space.is_model())
            continue;
        const PairPtr pair = e.space.absolute_pair();
        const int dim = e.space.dimension();
        for (int n = 0; n <= dim; ++n) {
            for (const auto& x : classes(pair, kZ, n, rng)) {
                s.check(bockstein(reduce_mod2(x)).is_zero(), e.stem + ": beta rho != 0 in degree " + std::to_string(n));
                if (n + 6 <= dim)
                    s.check(sq3_integral(sq3_integral(x)).is_zero(), e.stem + ": Sq3 Sq3 != 0");
            }
            for (const auto& w : classes(pair, kF2, n, rng)) {
                if (n + 1 <= dim)
                    s.check(reduce_mod2(bockstein(w)) == sq1(w), e.stem + ": rho beta != Sq1 in degree " + std::to_string(n));
            }
        }
        if (dim >= 1) {
            const std::size_t r = pair->group(1, kF2)->generator_count();
            for (unsigned long mask = 0; mask < (1ul << std::min<std::size_t>(r, 4)); ++mask) {
                CohomClass w = CohomClass::zero(pair, kF2, 1);
                for (std::size_t k = 0; k < r && k < 4; ++k)
                    if ((mask >> k) & 1)
                        w = w + CohomClass::basis(pair, kF2, 1, k);
                if (dim >= 3)
                    s.check(bockstein(cup(w, w)).is_zero(), e.stem + ": beta(w u w) != 0");
            }
        }
        for (int p = 0; p <= dim; ++p)
            for (int q = 0; p + q + 2 <= dim; ++q)
                for (const auto& x : classes(pair, kF2, p, rng))
                    for (const auto& y : classes(pair, kF2, q, rng)) {
                        const CohomClass lhs = sq2(cup(x, y));
                        const CohomClass rhs = cup(sq2(x), y) + cup(sq1(x), sq1(y)) + cup(x, sq2(y));
                        s.check(lhs == rhs, e.stem + ": Cartan formula for Sq2");
                    }
    }
}

void ahss_suite(const std::vector<Entry>& corpus, Suite& s)
{
    for (const auto& e : corpus) {
        const int dim = e.space.dimension();
        if (!e.space.is_model() && e.stem.size() == 2 && e.stem[0] == 's' && std::isdigit(e.stem[1])) {
            const int n = e.stem[1] - '0';
            for (int i = 0; i <= 8; ++i) {
                const bool z = i <= n && (n - i) % 2 == 0;
                const KGroupReport k = connective_k(e.space, i, true);
                s.check(k.result.piece_sum().iso_type() == (z ? "Z" : "0"),
                        e.stem + ": sphere oracle at i = " + std::to_string(i));
            }
        }
        if (dim <= 6) {
            const KGroupReport k = k5(e.space);
            s.check(k.result.status == AhssStatus::Exact && k.result.assembled->iso_type() == e.space.integral(5)->iso_type(),
                    e.stem + ": k5 != H5");
        }
        if (!e.space.is_model()) {
            const KGroupReport un = connective_k(e.space, 1, false), red = connective_k(e.space, 1, true);
            s.check(un.result.piece_sum().iso_type() == red.result.piece_sum().iso_type(), e.stem + ": k1 != K1");
        }
        const CrosscheckReport cc = k5_crosscheck(e.space);
        s.check(cc.outcome != CrosscheckReport::Outcome::Mismatch, e.stem + ": k5 crosscheck mismatch");
    }
}

void classify_suite(const std::vector<Entry>& corpus, Suite& s)
{
    std::mt19937_64 rng(2);
    const std::vector<std::pair<const char*, Variant>> kinds = {
        {"C", Variant::Hat}, {"Z", Variant::Plain}, {"M{3}", Variant::Hat}, {"Oinf", Variant::Plain}, {"M{3}xOinf", Variant::Plain}};
    for (const auto& e : corpus) {
        for (const auto& [d, v] : kinds) {
            const auto g = classification_group(e.space, parse_algebra(d), v);
            if (!g->arithmetic_available())
                continue;
            const std::string tag = e.stem + " " + d + "/" + to_string(v);
            for (int k = 0; k < 30; ++k) {
                const BundleClass x = random_element(*g, rng), y = random_element(*g, rng), z = random_element(*g, rng);
                s.check(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)), tag + ": associativity");
                s.check(multiply(x, y) == multiply(y, x), tag + ": commutativity");
                s.check(multiply(x, inverse(x)) == g->identity(), tag + ": inverse");
                if (g->has("w"))
                    s.check(delta0_grading(multiply(x, y)) ==
                                g->component("w").group.add(delta0_grading(x), delta0_grading(y)),
                            tag + ": delta0 grading");
                if (g->has("u"))
                    s.check(delta0_dimension(multiply(x, y)) ==
                                g->component("u").group.add(delta0_dimension(x), delta0_dimension(y)),
                            tag + ": delta0 dimension");
            }
            if (v == Variant::Hat) {
                const auto plain = classification_group(e.space, parse_algebra(d), Variant::Plain);
                if (plain->order())
                    s.check(*g->order() == *plain->order() * *e.space.mod2(1)->order(), tag + ": |hat| != |plain| |H1|");
            }
        }
    }
}

}  // namespace

std::size_t run_selftest(const std::filesystem::path& dir, SelftestLevel level, std::ostream& out, bool verbose)
{
    std::vector<std::filesystem::path> files;
    if (std::filesystem::is_directory(dir))
        for (const auto& f : std::filesystem::directory_iterator(dir))
            if (f.path().extension() == ".json")
                files.push_back(f.path());
    if (files.empty())
        throw ParseError("no corpus files in " + dir.string());
    std::sort(files.begin(), files.end());

    std::vector<Entry> corpus;
    for (const auto& f : files) {
        const std::string stem = f.stem().string();
        if (level == SelftestLevel::Quick && kFullOnly.count(stem))
            continue;
        corpus.push_back({stem, load_space(f.string())});
    }

    std::size_t failures = 0;
    auto run = [&](const std::string& name, void (*body)(const std::vector<Entry>&, Suite&)) {
        Suite s{name, 0, 0, verbose ? &out : nullptr};
        const auto t0 = std::chrono::steady_clock::now();
        body(corpus, s);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out << (s.failures == 0 ? "PASS " : "FAIL ") << name << ": " << s.checks << " checks, " << s.failures
            << " failures (" << static_cast<long>(secs * 1000) << " ms)\n";
        failures += s.failures;
    };
    out << "corpus: " << corpus.size() << " spaces from " << dir.string() << "\n";
    run("cohom-ops", cohomology_suite);
    run("ahss-k", ahss_suite);
    run("classify", classify_suite);
    return failures;
}

}  // namespace ddc
