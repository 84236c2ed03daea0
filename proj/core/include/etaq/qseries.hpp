#ifndef ETAQ_QSERIES_HPP
#define ETAQ_QSERIES_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "etaq/errors.hpp"
#include "etaq/rational.hpp"

namespace etaq {

// Truncated formal series in q^(1/M) with exact rational coefficients.
//
// A term (e, c) means c * q^(e/M); the series is known exactly below the
// truncation index T and is s(q) + O(q^(T/M)).  Invariants: stored
// coefficients are nonzero, indices are strictly increasing and < T.
// Truncation bookkeeping is pessimistic: an operation never claims more
// precision than the operands support.
class FracSeries {
public:
    using Term = std::pair<long long, Rat>; // (grid index, coefficient)

    FracSeries() : ram_(1), trunc_(0) {}

    static FracSeries zero(long long ram, long long trunc_index);
    static FracSeries one(long long ram, long long trunc_index);
    // c * q^exponent, exact up to O(q^trunc_exponent)
    static FracSeries monomial(const Rat& c, const Rat& exponent, const Rat& trunc_exponent);
    // terms need not be sorted; zeros are dropped; indices must be < trunc
    static FracSeries from_terms(long long ram, std::vector<Term> terms, long long trunc_index);

    long long ramification() const { return ram_; }
    long long trunc_index() const { return trunc_; }
    Rat trunc_exponent() const { return rat(trunc_, ram_); }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); } // no known nonzero term
    std::optional<long long> leading_index() const;
    std::optional<Rat> leading_exponent() const;
    const Rat& leading_coefficient() const; // throws ZeroSeries

    // exact coefficient of q^exponent; 0 off-grid; throws BeyondTruncation
    // at or beyond the truncation exponent
    Rat coefficient(const Rat& exponent) const;
    Rat coefficient(long long num, long long den) const { return coefficient(rat(num, den)); }

    FracSeries rescaled(long long new_ram) const; // pre: ram | new_ram
    FracSeries shifted(const Rat& dexp) const;    // multiply by q^dexp (exact)
    FracSeries substituted(long long scale) const; // q -> q^scale, scale >= 1
    FracSeries truncated(const Rat& exp_bound) const; // pre: bound <= trunc exponent
    // reduce M by the gcd of the stored indices (truncation may round down
    // by less than one coarse step)
    FracSeries canonicalized() const;

    FracSeries operator-() const;
    FracSeries scaled(const Rat& c) const;

    friend FracSeries operator+(const FracSeries&, const FracSeries&);
    friend FracSeries operator-(const FracSeries&, const FracSeries&);
    friend FracSeries operator*(const FracSeries&, const FracSeries&);

    FracSeries inverse() const;          // throws ZeroSeries
    FracSeries pow(long long k) const;   // integer power, negative allowed
    FracSeries nth_root(unsigned long n) const; // throws ZeroSeries / NotAnNthPower

    // "c0*q^(e0) + ... + O(q^(T/M))" with reduced fractional exponents
    std::string str() const;

    bool operator==(const FracSeries& o) const {
        return ram_ == o.ram_ && trunc_ == o.trunc_ && terms_ == o.terms_;
    }

private:
    long long ram_;
    long long trunc_;
    std::vector<Term> terms_;

    void normalize(); // sort, merge, drop zeros and out-of-range indices
};

// Equality of the known parts on a common grid, up to the smaller truncation.
bool same_series(const FracSeries& a, const FracSeries& b);

// Euler's product (q;q)_inf = prod_{n>=1} (1 - q^n) to O(q^order), via the
// pentagonal number expansion: sum_k (-1)^k q^(k(3k-1)/2).
FracSeries euler_function(long long order);

} // namespace etaq

#endif
