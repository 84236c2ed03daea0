#ifndef ETAQ_RATIONAL_HPP
#define ETAQ_RATIONAL_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace etaq {

// All coefficient arithmetic is exact; floating point never appears.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long long num, long long den = 1) {
    Int n(static_cast<long>(num)), d(static_cast<long>(den));
    Rat r(n, d);
    r.canonicalize();
    return r;
}

// p-adic valuation of a rational, +infinity for zero.
struct Valuation {
    long long v = 0;
    bool infinite = false;

    static Valuation infinity() { return Valuation{0, true}; }
    bool at_least(long long bound) const { return infinite || v >= bound; }
    bool operator==(const Valuation& o) const {
        return infinite == o.infinite && (infinite || v == o.v);
    }
};

long long vp_int(const Int& x, long long p); // pre: x != 0, p >= 2
Valuation vp(const Rat& x, long long p);

// Exact rational n-th root, if one exists (negative base needs odd n).
std::optional<Rat> nth_root_exact(const Rat& c, unsigned long n);

// Reduce x mod m when the denominator of x is invertible mod m; result in [0, m).
std::optional<unsigned long long> mod_reduce(const Rat& x, unsigned long long m);

// Signed representative of r mod m in (-m/2, m/2]; how residues are displayed.
long long signed_residue(unsigned long long r, unsigned long long m);

unsigned long long mulmod_u64(unsigned long long a, unsigned long long b, unsigned long long m);
std::optional<unsigned long long> inv_mod(unsigned long long a, unsigned long long m);

std::string rat_str(const Rat& x);

} // namespace etaq

#endif
