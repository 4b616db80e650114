#include "ddcalc/ahss.hpp"

#include <algorithm>
#include <map>

namespace ddc {

namespace {

const CoefficientRing kZ = CoefficientRing::integers();

FgAbGroup abstract_copy(const FgAbGroup& g)
{
    return FgAbGroup::abstract(g.ring(), g.free_rank(), g.torsion());
}

// Per prime, the k-th largest prime-power factors of all pieces multiply into one cyclic factor.
FgAbGroup stacked_candidate(const std::vector<GradedPiece>& pieces, const CoefficientRing& ring)
{
    std::size_t free_rank = 0;
    std::map<unsigned long, std::vector<std::vector<unsigned long>>> exps;  // prime -> piece -> exponents
    for (const auto& piece : pieces) {
        free_rank += piece.e4.free_rank();
        std::map<unsigned long, std::vector<unsigned long>> mine;
        for (const Integer& q : piece.e4.primary_decomposition()) {
            Integer r = q;
            unsigned long p = 2;
            while (!mpz_divisible_ui_p(r.get_mpz_t(), p))
                ++p;
            unsigned long e = 0;
            while (r > 1) {
                r /= p;
                ++e;
            }
            mine[p].push_back(e);
        }
        for (auto& [p, v] : mine) {
            std::sort(v.rbegin(), v.rend());
            exps[p].push_back(v);
        }
    }
    std::vector<Integer> cyclic;
    for (const auto& [p, per_piece] : exps) {
        std::size_t width = 0;
        for (const auto& v : per_piece)
            width = std::max(width, v.size());
        for (std::size_t k = 0; k < width; ++k) {
            unsigned long e = 0;
            for (const auto& v : per_piece)
                if (k < v.size())
                    e += v[k];
            Integer q;
            mpz_ui_pow_ui(q.get_mpz_t(), p, e);
            cyclic.push_back(q);
        }
    }
    SparseMatrix rel(cyclic.size(), cyclic.size());
    for (std::size_t k = 0; k < cyclic.size(); ++k)
        rel.set(k, k, cyclic[k]);
    FgAbGroup torsion = group_from_presentation(cyclic.size(), rel, kZ);
    FgAbGroup out = FgAbGroup::abstract(kZ, free_rank, torsion.torsion());
    return ring.is_localized() ? localize(out, ring.primes()) : out;
}

void finish(AhssResult& r)
{
    r.status = classify_status(r.pieces, r.dimension, r.lowest_cell);
    r.assembled.reset();
    r.candidates.clear();
    if (r.status == AhssStatus::Exact) {
        r.assembled = r.piece_sum();
    } else if (r.status == AhssStatus::UpToExtension) {
        r.candidates.push_back(r.piece_sum());
        const CoefficientRing ring = r.pieces.empty() ? kZ : r.pieces.front().e4.ring();
        r.candidates.push_back(stacked_candidate(r.pieces, ring));
    }
}

}  // namespace

std::string to_string(AhssStatus s)
{
    switch (s) {
    case AhssStatus::Exact:
        return "exact";
    case AhssStatus::UpToExtension:
        return "up_to_extension";
    case AhssStatus::Approximate:
        return "approximate";
    }
    return "?";
}

std::string to_string(CrosscheckReport::Outcome o)
{
    switch (o) {
    case CrosscheckReport::Outcome::Match:
        return "match";
    case CrosscheckReport::Outcome::Mismatch:
        return "mismatch";
    case CrosscheckReport::Outcome::Inconclusive:
        return "inconclusive";
    }
    return "?";
}

FgAbGroup AhssResult::piece_sum() const
{
    std::vector<FgAbGroup> parts;
    for (const auto& piece : pieces)
        parts.push_back(abstract_copy(piece.e4));
    if (parts.empty())
        return FgAbGroup::trivial(kZ);
    return abstract_copy(direct_sum(parts));
}

const GradedPiece* AhssResult::piece(int p) const
{
    for (const auto& piece : pieces)
        if (piece.p == p)
            return &piece;
    return nullptr;
}

AhssStatus classify_status(const std::vector<GradedPiece>& pieces, int dimension, std::optional<int> lowest_cell)
{
    if (lowest_cell && dimension >= *lowest_cell + 5)
        return AhssStatus::Approximate;
    std::vector<const GradedPiece*> nonzero;
    for (const auto& piece : pieces)
        if (!piece.e4.is_trivial())
            nonzero.push_back(&piece);
    for (std::size_t k = 0; k + 1 < nonzero.size(); ++k)
        if (!nonzero[k]->e4.is_torsion_free())
            return AhssStatus::UpToExtension;
    return AhssStatus::Exact;
}

AhssResult relative_K(const AhssSource& source, int d)
{
    AhssResult r;
    r.total_degree = d;
    r.dimension = source.dimension();
    // Differentials only run between nonzero E_2 groups, so the range starts at the first one.
    if (auto c = source.lowest_cell())
        for (int p = *c; p <= r.dimension; ++p)
            if (source.source_only_degree() == p || !source.group(p)->is_trivial()) {
                r.lowest_cell = p;
                break;
            }
    if (r.lowest_cell) {
        const int first = *r.lowest_cell + ((*r.lowest_cell - d) % 2 != 0 ? 1 : 0);
        for (int p = first; p <= r.dimension; p += 2) {
            if (source.source_only_degree() == p)
                throw std::logic_error("degree " + std::to_string(p) + " can only be a d3 source for this input");
            GroupPtr e2 = source.group(p);
            GroupHom in(source.group(p - 3), e2, source.d3(p - 3));
            GroupHom out(e2, source.group(p + 3), source.d3(p));
            r.pieces.push_back(GradedPiece{p, *e2, homology_of(in, out)});
        }
    }
    finish(r);
    return r;
}

AhssResult relative_K(const Space& x, const Subspace& a, int d)
{
    return relative_K(*x.ahss_source(a), d);
}

AhssResult localize_result(const AhssResult& r, const PrimeSet& primes)
{
    AhssResult out = r;
    for (auto& piece : out.pieces) {
        piece.e2 = localize(piece.e2, primes);
        piece.e4 = localize(piece.e4, primes);
    }
    finish(out);
    return out;
}

KGroupReport connective_k(const Space& x, int i, bool reduced)
{
    if (i < 0)
        throw std::invalid_argument("connective K-theory is only computed in degrees i >= 0");
    KGroupReport rep;
    rep.i = i;
    rep.reduced = reduced;
    const Subspace a = i >= 2 ? Subspace::skeleton(i - 2) : (reduced ? Subspace::basepoint() : Subspace::empty());
    rep.result = relative_K(x, a, i);
    return rep;
}

KGroupReport k5(const Space& x) { return connective_k(x, 5); }

KGroupReport k5_localized(const Space& x, const PrimeSet& primes)
{
    KGroupReport rep = connective_k(x, 5);
    rep.primes = primes;
    rep.localized = localize_result(rep.result, primes);
    return rep;
}

CrosscheckReport k5_crosscheck(const Space& x)
{
    CrosscheckReport out;
    const KGroupReport k3 = connective_k(x, 3);
    const KGroupReport k5r = connective_k(x, 5);
    if (k3.result.status != AhssStatus::Exact || k5r.result.status != AhssStatus::Exact) {
        out.detail = "k3 " + to_string(k3.result.status) + ", k5 " + to_string(k5r.result.status);
        return out;
    }
    out.k5_type = k5r.result.assembled->iso_type();

    // k^3 in block coordinates (one block per piece); the edge map keeps the p = 3 block.
    std::size_t n = 0, p3_offset = 0, p3_count = 0;
    SparseMatrix rel(0, 0);
    std::vector<SparseVector> rows;
    for (const auto& piece : k3.result.pieces) {
        if (piece.p == 3) {
            p3_offset = n;
            p3_count = piece.e4.generator_count();
        }
        for (std::size_t j = 0; j < piece.e4.generator_count(); ++j)
            if (piece.e4.coordinate_modulus(j) != 0)
                rows.push_back(SparseVector::unit(n + j, piece.e4.coordinate_modulus(j)));
        n += piece.e4.generator_count();
    }
    rel = SparseMatrix(0, n);
    for (auto& r : rows)
        rel.append_row(std::move(r));
    auto total = std::make_shared<FgAbGroup>(group_from_presentation(n, rel, kZ));
    const GradedPiece* p3 = k3.result.piece(3);
    auto target = std::make_shared<FgAbGroup>(p3 ? abstract_copy(p3->e4) : FgAbGroup::trivial(kZ));
    std::vector<Coords> images;
    for (std::size_t j = 0; j < total->generator_count(); ++j) {
        const Coords block = total->lift(total->basis_vector(j));
        images.emplace_back(block.begin() + static_cast<long>(p3_offset),
                            block.begin() + static_cast<long>(p3_offset + p3_count));
    }
    GroupHom edge = hom_from_images(total, target, images);
    out.kernel_type = kernel(edge).iso_type();
    out.outcome = out.kernel_type == out.k5_type ? CrosscheckReport::Outcome::Match : CrosscheckReport::Outcome::Mismatch;
    return out;
}

}  // namespace ddc
