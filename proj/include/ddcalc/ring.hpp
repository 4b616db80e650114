#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddc {

using Integer = mpz_class;

/// A finite, sorted, duplicate-free set of primes.
class PrimeSet {
public:
    PrimeSet() = default;
    /// Sorts and validates; throws std::invalid_argument on non-primes or an empty set.
    explicit PrimeSet(std::vector<unsigned long> primes);

    const std::vector<unsigned long>& primes() const { return primes_; }
    bool empty() const { return primes_.empty(); }
    std::size_t size() const { return primes_.size(); }
    bool contains(unsigned long p) const;

    /// Largest divisor of |n| coprime to every prime in the set.
    Integer strip(const Integer& n) const;

    /// "{2,3}"
    std::string to_string() const;

    bool operator==(const PrimeSet&) const = default;

private:
    std::vector<unsigned long> primes_;
};

bool is_prime(unsigned long n);

enum class RingKind { Int, Mod2, Localized };

/// Coefficient ring of a cochain complex: Z, Z/2 or Z_P = Z[1/p : p in P].
class CoefficientRing {
public:
    static CoefficientRing integers() { return CoefficientRing(RingKind::Int, {}); }
    static CoefficientRing mod2() { return CoefficientRing(RingKind::Mod2, {}); }
    static CoefficientRing localized(PrimeSet primes);

    RingKind kind() const { return kind_; }
    const PrimeSet& primes() const { return primes_; }
    bool is_int() const { return kind_ == RingKind::Int; }
    bool is_mod2() const { return kind_ == RingKind::Mod2; }
    bool is_localized() const { return kind_ == RingKind::Localized; }

    /// Characteristic used by the elimination engine: 0 for Z and Z_P, 2 for Z/2.
    unsigned long modulus() const { return kind_ == RingKind::Mod2 ? 2 : 0; }

    /// "Z", "Z/2" or "Z_P".
    std::string tag() const;
    /// "Z", "Z/2", "Z[1/2]", "Z[1/2,1/3]".
    std::string display() const;

    bool operator==(const CoefficientRing&) const = default;

private:
    CoefficientRing(RingKind kind, PrimeSet primes) : kind_(kind), primes_(std::move(primes)) {}

    RingKind kind_ = RingKind::Int;
    PrimeSet primes_;
};

/// Parses "{2,3}" or "2,3" into a prime set.
PrimeSet parse_prime_set(const std::string& text);

}  // namespace ddc
