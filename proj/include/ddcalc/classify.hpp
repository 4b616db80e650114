#pragma once

#include "ddcalc/ahss.hpp"

#include <memory>
#include <random>
#include <string>
#include <vector>

namespace ddc {

/// Algebra outside the classification (O_2, infinite prime sets, graded purely infinite).
struct UnsupportedAlgebra : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AlgebraSpec {
    enum class Kind { C, JiangSu, Uhf, Oinf, UhfOinf } kind = Kind::C;
    PrimeSet primes;  // nonempty iff a UHF kind

    bool is_uhf() const { return kind == Kind::Uhf || kind == Kind::UhfOinf; }
    bool is_purely_infinite() const { return kind == Kind::Oinf || kind == Kind::UhfOinf; }
    /// Ring of the tau and kappa summands: Z, or Z_P for UHF kinds.
    CoefficientRing ring() const;
    /// "C", "Z", "M{2,3}", "Oinf", "M{2,3}xOinf"
    std::string to_string() const;
};

/// Throws ParseError on malformed text and UnsupportedAlgebra for O2 or infinite P.
AlgebraSpec parse_algebra(const std::string& text);

enum class Variant { Bar, Plain, Hat };
std::string to_string(Variant v);

struct Component {
    std::string name;  // "u", "w", "tau" or "kappa"
    FgAbGroup group;
};

/// Abstract isomorphism type: Z^z_rank + Z_P^zp_rank + torsion.
struct AbstractGroup {
    std::size_t z_rank = 0;
    std::size_t zp_rank = 0;
    std::optional<PrimeSet> primes;
    std::vector<Integer> torsion;

    std::string iso_type() const;
    bool operator==(const AbstractGroup&) const = default;
};

class ClassGroup;
using ClassGroupPtr = std::shared_ptr<const ClassGroup>;

struct BundleClass {
    ClassGroupPtr group;
    std::vector<Coords> parts;  // one per component, in component order

    bool operator==(const BundleClass& other) const;
};

class ClassGroup : public std::enable_shared_from_this<ClassGroup> {
public:
    ClassGroup(Space space, AlgebraSpec algebra, Variant variant);

    const Space& space() const { return space_; }
    const AlgebraSpec& algebra() const { return algebra_; }
    Variant variant() const { return variant_; }
    const std::vector<Component>& components() const { return components_; }
    /// Index of the named component, or -1.
    int index_of(const std::string& name) const;
    bool has(const std::string& name) const { return index_of(name) >= 0; }
    const Component& component(const std::string& name) const;

    /// w and tau multiply through the twisted law.
    bool twisted() const { return has("w"); }
    /// c(w_i, w_j) in tau coordinates, for the H^1(X; Z/2) basis.
    const Coords& twist(std::size_t i, std::size_t j) const { return twist_[i][j]; }
    std::size_t w_rank() const { return twist_.size(); }
    /// Bilinear extension of the basis table.
    Coords twist_of(const Coords& w, const Coords& w2) const;

    std::optional<KGroupReport> kappa_report() const { return kappa_; }
    AhssStatus kappa_status() const;
    /// kappa is only a page value: the whole group is a flagged partial result.
    bool partial() const { return kappa_status() == AhssStatus::Approximate; }
    /// Element arithmetic needs kappa determined.
    bool arithmetic_available() const { return kappa_status() == AhssStatus::Exact; }

    /// Order when finite.
    std::optional<Integer> order() const;

    BundleClass identity() const;
    /// Reduces every part; throws std::invalid_argument on wrong shapes.
    BundleClass element(std::vector<Coords> parts) const;
    BundleClass basis_element(const std::string& name, std::size_t j) const;

private:
    Space space_;
    AlgebraSpec algebra_;
    Variant variant_;
    std::vector<Component> components_;
    std::vector<std::vector<Coords>> twist_;
    std::optional<KGroupReport> kappa_;
};

ClassGroupPtr classification_group(const Space& x, const AlgebraSpec& d, Variant variant);

BundleClass multiply(const BundleClass& x, const BundleClass& y);
BundleClass inverse(const BundleClass& x);

/// Presentation with 2 g_w = c(w, w) and the torsion orders; extension candidates when
/// kappa is only known up to extension.
std::vector<AbstractGroup> abstract_iso_type(const ClassGroup& g);

Coords delta0_grading(const BundleClass& x);
Coords delta0_dimension(const BundleClass& x);

/// Free of rank rank(H^1(X; Z)) * |P|.
FgAbGroup units_H1(const Space& x, const PrimeSet& primes);

/// pi_i of Aut(D (x) K), e.g. "Z[1/2]".
std::string coefficients(const AlgebraSpec& d, int i);

/// Every element, in lexicographic coordinate order; throws if infinite or above limit.
std::vector<BundleClass> enumerate(const ClassGroup& g, std::size_t limit);
/// Free coordinates drawn from [-bound, bound].
BundleClass random_element(const ClassGroup& g, std::mt19937_64& rng, long bound = 5);

}  // namespace ddc
