#ifndef ETAQ_CHARACTERS_HPP
#define ETAQ_CHARACTERS_HPP

#include <string>
#include <vector>

#include "etaq/errors.hpp"

namespace etaq {

// Real Dirichlet character mod m: completely multiplicative, values in
// {-1, 0, +1}, zero exactly on residues sharing a factor with m.
class QuadraticCharacter {
public:
    QuadraticCharacter() : m_(1), vals_{1} {} // constant 1

    // values[r] = chi(r) for r in 0..m-1; validated on construction
    QuadraticCharacter(long long modulus, std::vector<int> values);

    static QuadraticCharacter principal(long long modulus);
    // r -> (r | p) for an odd prime p
    static QuadraticCharacter legendre(long long p);

    long long modulus() const { return m_; }
    const std::vector<int>& values() const { return vals_; }
    int operator()(long long n) const; // chi(n mod m), any sign of n
    bool is_principal() const;

    std::string str() const;
    bool operator==(const QuadraticCharacter& o) const {
        return m_ == o.m_ && vals_ == o.vals_;
    }

private:
    long long m_;
    std::vector<int> vals_;
};

// Every real character mod m, principal first, then in decreasing
// lexicographic order of the value table.  Small moduli only (the scans cap
// twist moduli at 24); guards against combinatorial blowup.
std::vector<QuadraticCharacter> quadratic_characters(long long modulus);

} // namespace etaq

#endif
