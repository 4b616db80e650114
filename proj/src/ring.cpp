#include "ddcalc/ring.hpp"

#include <algorithm>
#include <sstream>

namespace ddc {

bool is_prime(unsigned long n)
{
    if (n < 2)
        return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

PrimeSet::PrimeSet(std::vector<unsigned long> primes) : primes_(std::move(primes))
{
    if (primes_.empty())
        throw std::invalid_argument("prime set must be nonempty");
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
    for (auto p : primes_)
        if (!is_prime(p))
            throw std::invalid_argument("not a prime: " + std::to_string(p));
}

bool PrimeSet::contains(unsigned long p) const
{
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

Integer PrimeSet::strip(const Integer& n) const
{
    Integer r = abs(n);
    if (r == 0)
        return r;
    for (auto p : primes_)
        while (mpz_divisible_ui_p(r.get_mpz_t(), p))
            mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), p);
    return r;
}

std::string PrimeSet::to_string() const
{
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < primes_.size(); ++i)
        out << (i ? "," : "") << primes_[i];
    out << '}';
    return out.str();
}

CoefficientRing CoefficientRing::localized(PrimeSet primes)
{
    if (primes.empty())
        throw std::invalid_argument("localized ring needs a nonempty prime set");
    return CoefficientRing(RingKind::Localized, std::move(primes));
}

std::string CoefficientRing::tag() const
{
    switch (kind_) {
    case RingKind::Int: return "Z";
    case RingKind::Mod2: return "Z/2";
    case RingKind::Localized: return "Z_P";
    }
    return "?";
}

std::string CoefficientRing::display() const
{
    if (kind_ != RingKind::Localized)
        return tag();
    std::string out = "Z[";
    for (std::size_t i = 0; i < primes_.size(); ++i)
        out += (i ? ",1/" : "1/") + std::to_string(primes_.primes()[i]);
    return out + "]";
}

PrimeSet parse_prime_set(const std::string& text)
{
    std::vector<unsigned long> primes;
    std::string token;
    auto flush = [&] {
        if (token.empty())
            return;
        std::size_t used = 0;
        unsigned long p = std::stoul(token, &used);
        if (used != token.size())
            throw std::invalid_argument("bad prime '" + token + "'");
        primes.push_back(p);
        token.clear();
    };
    for (char c : text) {
        if (c == '{' || c == '}' || c == ' ')
            continue;
        if (c == ',') {
            flush();
            continue;
        }
        if (c < '0' || c > '9')
            throw std::invalid_argument("bad prime set '" + text + "'");
        token.push_back(c);
    }
    flush();
    return PrimeSet(std::move(primes));
}

}  // namespace ddc
