#include "ddcalc/classify.hpp"

#include <algorithm>
#include <cctype>

namespace ddc {

namespace {

const CoefficientRing kZ = CoefficientRing::integers();
const CoefficientRing kF2 = CoefficientRing::mod2();

FgAbGroup abstract_copy(const FgAbGroup& g) { return FgAbGroup::abstract(g.ring(), g.free_rank(), g.torsion()); }

const AhssResult& kappa_result(const KGroupReport& k) { return k.localized ? *k.localized : k.result; }

FgAbGroup kappa_group(const KGroupReport& k)
{
    const AhssResult& r = kappa_result(k);
    FgAbGroup g = r.assembled ? abstract_copy(*r.assembled) : r.piece_sum();
    // an empty page carries no ring; kappa lives over Z_P whenever P is given
    return k.primes && !g.ring().is_localized() ? localize(g, *k.primes) : g;
}

void require_same(const BundleClass& x, const BundleClass& y)
{
    if (!x.group || x.group != y.group)
        throw std::invalid_argument("elements belong to different classification groups");
}

void require_arithmetic(const ClassGroup& g)
{
    if (!g.arithmetic_available())
        throw std::logic_error("kappa is " + to_string(g.kappa_status()) + "; element arithmetic is disabled");
}

}  // namespace

CoefficientRing AlgebraSpec::ring() const { return is_uhf() ? CoefficientRing::localized(primes) : kZ; }

std::string AlgebraSpec::to_string() const
{
    switch (kind) {
    case Kind::C:
        return "C";
    case Kind::JiangSu:
        return "Z";
    case Kind::Uhf:
        return "M" + primes.to_string();
    case Kind::Oinf:
        return "Oinf";
    case Kind::UhfOinf:
        return "M" + primes.to_string() + "xOinf";
    }
    return "?";
}

AlgebraSpec parse_algebra(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (s == "O2" || s == "O_2")
        throw UnsupportedAlgebra("O2 lies outside the classification");
    if (s == "C")
        return {AlgebraSpec::Kind::C, {}};
    if (s == "Z")
        return {AlgebraSpec::Kind::JiangSu, {}};
    if (s == "Oinf")
        return {AlgebraSpec::Kind::Oinf, {}};
    if (s == "Q" || s == "QxOinf")
        throw UnsupportedAlgebra("infinite prime sets are not supported: (Z_P)^x_+ = sum over p in P of Z needs finite P");
    if (s.size() >= 3 && s[0] == 'M' && s[1] == '{') {
        const std::size_t close = s.find('}');
        if (close == std::string::npos)
            throw ParseError("unterminated prime set in '" + text + "'");
        const std::string inner = s.substr(2, close - 2);
        const std::string rest = s.substr(close + 1);
        if (inner == "inf" || inner == "all" || inner.find("...") != std::string::npos)
            throw UnsupportedAlgebra("infinite prime sets are not supported: (Z_P)^x_+ = sum over p in P of Z needs finite P");
        AlgebraSpec d;
        try {
            d.primes = parse_prime_set(inner);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
        if (rest.empty())
            d.kind = AlgebraSpec::Kind::Uhf;
        else if (rest == "xOinf")
            d.kind = AlgebraSpec::Kind::UhfOinf;
        else
            throw ParseError("unknown algebra '" + text + "'");
        return d;
    }
    throw ParseError("unknown algebra '" + text + "' (expected C, Z, M{p,...}, Oinf or M{p,...}xOinf)");
}

std::string to_string(Variant v)
{
    switch (v) {
    case Variant::Bar:
        return "bar";
    case Variant::Plain:
        return "plain";
    case Variant::Hat:
        return "hat";
    }
    return "?";
}

std::string AbstractGroup::iso_type() const
{
    std::vector<std::string> parts;
    if (z_rank > 0)
        parts.push_back(describe(z_rank, {}));
    if (zp_rank > 0)
        parts.push_back(describe(zp_rank, {}, "Z_P", true));
    if (!torsion.empty())
        parts.push_back(describe(0, torsion));
    if (parts.empty())
        return "0";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i)
        out += " + " + parts[i];
    if (zp_rank > 0 && primes)
        out += " (P=" + primes->to_string() + ")";
    return out;
}

bool BundleClass::operator==(const BundleClass& other) const { return group == other.group && parts == other.parts; }

// ---------------------------------------------------------------------------

ClassGroup::ClassGroup(Space space, AlgebraSpec algebra, Variant variant)
    : space_(std::move(space)), algebra_(std::move(algebra)), variant_(variant)
{
    if (variant_ == Variant::Hat && algebra_.is_purely_infinite())
        throw UnsupportedAlgebra("the graded group of a purely infinite algebra lies outside the classification");
    const CoefficientRing ring = algebra_.ring();
    const bool with_u = algebra_.is_uhf() && variant_ != Variant::Bar;
    const bool with_w = variant_ == Variant::Hat || (variant_ == Variant::Plain && algebra_.is_purely_infinite());
    const bool with_kappa = algebra_.kind != AlgebraSpec::Kind::C;

    if (with_u)
        components_.push_back({"u", units_H1(space_, algebra_.primes)});
    if (with_w)
        components_.push_back({"w", *space_.mod2(1)});
    components_.push_back({"tau", *space_.with_ring(3, ring)});
    if (with_kappa) {
        kappa_ = algebra_.is_uhf() ? k5_localized(space_, algebra_.primes) : k5(space_);
        components_.push_back({"kappa", kappa_group(*kappa_)});
    }
    if (with_w) {
        const std::size_t n = component("w").group.generator_count();
        twist_.assign(n, std::vector<Coords>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                twist_[i][j] = component("tau").group.reduce(space_.twist(i, j, ring));
    }
}

int ClassGroup::index_of(const std::string& name) const
{
    for (std::size_t k = 0; k < components_.size(); ++k)
        if (components_[k].name == name)
            return static_cast<int>(k);
    return -1;
}

const Component& ClassGroup::component(const std::string& name) const
{
    const int k = index_of(name);
    if (k < 0)
        throw std::invalid_argument("no '" + name + "' summand in this classification group");
    return components_[static_cast<std::size_t>(k)];
}

Coords ClassGroup::twist_of(const Coords& w, const Coords& w2) const
{
    const FgAbGroup& tau = component("tau").group;
    Coords out = tau.zero();
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] % 2 == 0)
            continue;
        for (std::size_t j = 0; j < w2.size(); ++j)
            if (w2[j] % 2 != 0)
                out = tau.add(out, twist_[i][j]);
    }
    return out;
}

AhssStatus ClassGroup::kappa_status() const { return kappa_ ? kappa_result(*kappa_).status : AhssStatus::Exact; }

std::optional<Integer> ClassGroup::order() const
{
    Integer n = 1;
    for (const auto& c : components_) {
        auto o = c.group.order();
        if (!o)
            return std::nullopt;
        n *= *o;
    }
    return n;
}

BundleClass ClassGroup::identity() const
{
    BundleClass x{shared_from_this(), {}};
    for (const auto& c : components_)
        x.parts.push_back(c.group.zero());
    return x;
}

BundleClass ClassGroup::element(std::vector<Coords> parts) const
{
    if (parts.size() != components_.size())
        throw std::invalid_argument("element needs one coordinate vector per summand");
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (parts[k].size() != components_[k].group.generator_count())
            throw std::invalid_argument("summand '" + components_[k].name + "' expects " +
                                        std::to_string(components_[k].group.generator_count()) + " coordinates");
        parts[k] = components_[k].group.reduce(std::move(parts[k]));
    }
    return BundleClass{shared_from_this(), std::move(parts)};
}

BundleClass ClassGroup::basis_element(const std::string& name, std::size_t j) const
{
    BundleClass x = identity();
    const auto k = static_cast<std::size_t>(index_of(name));
    x.parts.at(k) = component(name).group.basis_vector(j);
    return x;
}

ClassGroupPtr classification_group(const Space& x, const AlgebraSpec& d, Variant variant)
{
    return std::make_shared<ClassGroup>(x, d, variant);
}

BundleClass multiply(const BundleClass& x, const BundleClass& y)
{
    require_same(x, y);
    const ClassGroup& g = *x.group;
    require_arithmetic(g);
    BundleClass out{x.group, {}};
    for (std::size_t k = 0; k < g.components().size(); ++k)
        out.parts.push_back(g.components()[k].group.add(x.parts[k], y.parts[k]));
    if (g.twisted()) {
        const auto w = static_cast<std::size_t>(g.index_of("w"));
        const auto tau = static_cast<std::size_t>(g.index_of("tau"));
        out.parts[tau] = g.components()[tau].group.add(out.parts[tau], g.twist_of(x.parts[w], y.parts[w]));
    }
    return out;
}

BundleClass inverse(const BundleClass& x)
{
    if (!x.group)
        throw std::invalid_argument("element without a group");
    const ClassGroup& g = *x.group;
    require_arithmetic(g);
    BundleClass out{x.group, {}};
    for (std::size_t k = 0; k < g.components().size(); ++k)
        out.parts.push_back(g.components()[k].group.negate(x.parts[k]));
    if (g.twisted()) {
        const auto w = static_cast<std::size_t>(g.index_of("w"));
        const auto tau = static_cast<std::size_t>(g.index_of("tau"));
        const FgAbGroup& t = g.components()[tau].group;
        // w is its own inverse; tau' = -tau - c(w, w)
        out.parts[w] = x.parts[w];
        out.parts[tau] = t.add(out.parts[tau], t.negate(g.twist_of(x.parts[w], x.parts[w])));
    }
    return out;
}

std::vector<AbstractGroup> abstract_iso_type(const ClassGroup& g)
{
    if (g.partial())
        throw std::logic_error("kappa is approximate; the abstract group is not determined");
    const bool local = g.algebra().is_uhf();

    // Free summands split off; the finite part is presented over Z.
    auto base = [&](const std::vector<Integer>& kappa_torsion, std::size_t kappa_free) {
        AbstractGroup a;
        if (local)
            a.primes = g.algebra().primes;
        std::vector<std::pair<std::string, Integer>> gens;  // (summand, order); order 0 for w
        for (const auto& c : g.components()) {
            if (c.name == "kappa")
                continue;
            if (c.name == "u") {
                a.z_rank += c.group.free_rank();
                continue;
            }
            if (c.name == "w") {
                for (std::size_t j = 0; j < c.group.generator_count(); ++j)
                    gens.emplace_back("w", 0);
                continue;
            }
            (local ? a.zp_rank : a.z_rank) += c.group.free_rank();
            for (const auto& d : c.group.torsion())
                gens.emplace_back(c.name, d);
        }
        (local ? a.zp_rank : a.z_rank) += kappa_free;
        for (const auto& d : kappa_torsion)
            gens.emplace_back("kappa", d);

        SparseMatrix rel(0, gens.size());
        std::size_t tau_offset = 0;
        while (tau_offset < gens.size() && gens[tau_offset].first != "tau")
            ++tau_offset;
        for (std::size_t k = 0; k < gens.size(); ++k)
            if (gens[k].first != "w")
                rel.append_row(SparseVector::unit(k, gens[k].second));
        if (g.twisted()) {
            const FgAbGroup& tau = g.component("tau").group;
            for (std::size_t i = 0; i < g.w_rank(); ++i) {
                const Coords& c = g.twist(i, i);
                SparseVector row = SparseVector::unit(i, Integer(2));
                for (std::size_t j = 0; j < c.size(); ++j) {
                    if (c[j] == 0)
                        continue;
                    if (j < tau.free_rank())
                        throw std::logic_error("twist value has a free component");
                    row.add_multiple(SparseVector::unit(tau_offset + j - tau.free_rank(), -c[j]), 1);
                }
                rel.append_row(std::move(row));
            }
        }
        FgAbGroup finite = group_from_presentation(gens.size(), rel, kZ);
        if (finite.free_rank() != 0)
            throw std::logic_error("finite part of the presentation has free rank");
        a.torsion = finite.torsion();
        return a;
    };

    std::vector<AbstractGroup> out;
    if (!g.has("kappa") || g.kappa_status() == AhssStatus::Exact) {
        const FgAbGroup kappa = g.has("kappa") ? g.component("kappa").group : FgAbGroup::trivial(kZ);
        out.push_back(base(kappa.torsion(), kappa.free_rank()));
    } else {
        for (const auto& cand : kappa_result(*g.kappa_report()).candidates)
            out.push_back(base(cand.torsion(), cand.free_rank()));
    }
    return out;
}

Coords delta0_grading(const BundleClass& x)
{
    if (!x.group->has("w"))
        throw std::invalid_argument("delta0 grading needs a w summand (graded or purely infinite case)");
    return x.parts[static_cast<std::size_t>(x.group->index_of("w"))];
}

Coords delta0_dimension(const BundleClass& x)
{
    if (!x.group->has("u"))
        throw std::invalid_argument("delta0 dimension needs a u summand (UHF kinds, unreduced)");
    return x.parts[static_cast<std::size_t>(x.group->index_of("u"))];
}

FgAbGroup units_H1(const Space& x, const PrimeSet& primes)
{
    return FgAbGroup::free_module(kZ, x.h1_rank() * primes.size());
}

std::string coefficients(const AlgebraSpec& d, int i)
{
    if (i < 0)
        throw std::invalid_argument("coefficient degree must be nonnegative");
    if (i % 2 == 1)
        return "0";
    if (i > 0)
        return d.ring().display();
    // K_0(D)^x_+; for purely infinite D every unit counts, adding {+1, -1}.
    const std::size_t rank = d.is_uhf() ? d.primes.size() : 0;
    return describe(rank, d.is_purely_infinite() ? std::vector<Integer>{Integer(2)} : std::vector<Integer>{});
}

std::vector<BundleClass> enumerate(const ClassGroup& g, std::size_t limit)
{
    const auto order = g.order();
    if (!order || *order > limit)
        throw std::invalid_argument("group is infinite or larger than the enumeration limit");
    std::vector<Integer> moduli;
    for (const auto& c : g.components())
        for (std::size_t j = 0; j < c.group.generator_count(); ++j)
            moduli.push_back(c.group.coordinate_modulus(j));
    std::vector<BundleClass> out;
    std::vector<Integer> digits(moduli.size(), 0);
    while (true) {
        std::vector<Coords> parts;
        std::size_t k = 0;
        for (const auto& c : g.components()) {
            parts.emplace_back(digits.begin() + static_cast<long>(k),
                               digits.begin() + static_cast<long>(k + c.group.generator_count()));
            k += c.group.generator_count();
        }
        out.push_back(g.element(std::move(parts)));
        std::size_t pos = moduli.size();
        while (pos > 0) {
            --pos;
            if (++digits[pos] < moduli[pos])
                break;
            digits[pos] = 0;
            if (pos == 0) {
                pos = moduli.size() + 1;
                break;
            }
        }
        if (pos > moduli.size() || moduli.empty())
            break;
    }
    return out;
}

BundleClass random_element(const ClassGroup& g, std::mt19937_64& rng, long bound)
{
    std::vector<Coords> parts;
    for (const auto& c : g.components()) {
        Coords x;
        for (std::size_t j = 0; j < c.group.generator_count(); ++j) {
            const Integer m = c.group.coordinate_modulus(j);
            if (m == 0) {
                x.emplace_back(std::uniform_int_distribution<long>(-bound, bound)(rng));
            } else {
                x.emplace_back(std::uniform_int_distribution<unsigned long>(0, m.get_ui() - 1)(rng));
            }
        }
        parts.push_back(std::move(x));
    }
    return g.element(std::move(parts));
}

}  // namespace ddc
