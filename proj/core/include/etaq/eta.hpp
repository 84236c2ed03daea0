#ifndef ETAQ_ETA_HPP
#define ETAQ_ETA_HPP

#include <array>
#include <string>
#include <vector>

#include "etaq/qseries.hpp"

namespace etaq {

// One factor eta(q^delta)^exponent; exponents are rational so roots of
// quotients are first-class (a cube root divides every exponent by 3).
struct EtaTerm {
    long long delta;
    Rat exponent;

    bool operator==(const EtaTerm& o) const {
        return delta == o.delta && exponent == o.exponent;
    }
};

// Formal product prod_delta eta(q^delta)^(r_delta).  Purely symbolic until
// expand() is called; arithmetic on quotients is exponent arithmetic.
class EtaQuotient {
public:
    EtaQuotient() = default; // empty product == 1
    explicit EtaQuotient(std::vector<EtaTerm> terms);
    static EtaQuotient from_integer_exponents(
        const std::vector<std::pair<long long, long long>>& delta_exp);

    const std::vector<EtaTerm>& terms() const { return terms_; }
    bool trivial() const { return terms_.empty(); }

    Rat weight() const;           // (1/2) sum r_delta
    Rat leading_exponent() const; // sum r_delta * delta / 24
    bool integral_exponents() const;
    // smallest d >= 1 with d * r_delta integral for all delta
    long long exponent_denominator() const;

    EtaQuotient inverse() const;
    EtaQuotient scaled(const Rat& k) const; // raise the whole quotient to the k-th power

    // q-expansion, exact to O(q^order)
    FracSeries expand(long long order) const;

    std::string str() const;
    bool operator==(const EtaQuotient& o) const { return terms_ == o.terms_; }

private:
    std::vector<EtaTerm> terms_; // sorted by delta, exponents nonzero
};

EtaQuotient combine(const EtaQuotient& a, const EtaQuotient& b);

// Search-space element: the root-th root of an integer-exponent quotient on
// the given bases, e.g. [m,n,r,s] over (1,2,4,8) with root 3.
struct TupleSpec {
    std::array<long long, 4> bases{1, 2, 3, 6};
    std::array<long long, 4> exponents{0, 0, 0, 0};
    long long root = 3;

    long long exponent_sum() const {
        return exponents[0] + exponents[1] + exponents[2] + exponents[3];
    }
    EtaQuotient quotient() const; // exponents divided by root
    std::string str() const;      // "[m,n,r,s]@(a,b,c,d)"

    bool operator==(const TupleSpec& o) const {
        return bases == o.bases && exponents == o.exponents && root == o.root;
    }
    bool operator<(const TupleSpec& o) const {
        if (bases != o.bases) return bases < o.bases;
        if (exponents != o.exponents) return exponents < o.exponents;
        return root < o.root;
    }
};

// Vanishing order at the cusps of denominator d | N, in the normalization
// where the orders weighted by phi(gcd(d, N/d)) sum to weight * index / 12.
struct CuspOrder {
    long long denominator;
    Rat order;
    long long count; // phi(gcd(d, N/d)), number of such cusps
};

// Requires integral exponents and every delta | level.
std::vector<CuspOrder> cusp_orders(const EtaQuotient& eq, long long level);
bool is_holomorphic_at_cusps(const EtaQuotient& eq, long long level); // all orders >= 0
bool is_cuspidal(const EtaQuotient& eq, long long level);             // all orders > 0

// [SL2(Z) : Gamma0(N)] = N prod_{p | N} (1 + 1/p)
long long gamma0_index(long long level);
long long euler_phi(long long n);
std::vector<long long> divisors(long long n);

} // namespace etaq

#endif
