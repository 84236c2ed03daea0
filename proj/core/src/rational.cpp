#include "etaq/rational.hpp"

#include <cassert>
#include <sstream>

namespace etaq {

long long vp_int(const Int& x, long long p) {
    assert(sgn(x) != 0 && p >= 2);
    Int q, r, cur(x);
    Int pz(static_cast<long>(p));
    long long v = 0;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), cur.get_mpz_t(), pz.get_mpz_t());
        if (sgn(r) != 0) return v;
        cur = q;
        ++v;
    }
}

Valuation vp(const Rat& x, long long p) {
    if (sgn(x) == 0) return Valuation::infinity();
    long long v = vp_int(x.get_num(), p) - vp_int(x.get_den(), p);
    return Valuation{v, false};
}

std::optional<Rat> nth_root_exact(const Rat& c, unsigned long n) {
    if (n == 0) return std::nullopt;
    if (n == 1) return c;
    if (sgn(c) == 0) return Rat(0);
    if (sgn(c) < 0 && n % 2 == 0) return std::nullopt;
    Int num = abs(Int(c.get_num()));
    Int den(c.get_den()); // canonical: den > 0
    Int rn, rd;
    int exact_n = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n);
    int exact_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n);
    if (!exact_n || !exact_d) return std::nullopt;
    if (sgn(c) < 0) rn = -rn;
    Rat r(rn, rd);
    r.canonicalize();
    return r;
}

std::optional<unsigned long long> mod_reduce(const Rat& x, unsigned long long m) {
    if (m == 0) return std::nullopt;
    unsigned long long dm = mpz_fdiv_ui(x.get_den().get_mpz_t(), m);
    auto dinv = inv_mod(dm % m, m);
    if (!dinv) return std::nullopt;
    unsigned long long nm = mpz_fdiv_ui(x.get_num().get_mpz_t(), m);
    return mulmod_u64(nm, *dinv, m);
}

long long signed_residue(unsigned long long r, unsigned long long m) {
    r %= m;
    if (r > m / 2) return static_cast<long long>(r) - static_cast<long long>(m);
    return static_cast<long long>(r);
}

unsigned long long mulmod_u64(unsigned long long a, unsigned long long b, unsigned long long m) {
    return static_cast<unsigned long long>((static_cast<__uint128_t>(a) * b) % m);
}

std::optional<unsigned long long> inv_mod(unsigned long long a, unsigned long long m) {
    // extended Euclid over signed 128-bit, m < 2^63
    __int128 t = 0, newt = 1;
    __int128 r = static_cast<__int128>(m), newr = static_cast<__int128>(a % m);
    while (newr != 0) {
        __int128 q = r / newr;
        __int128 tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) return std::nullopt;
    if (t < 0) t += m;
    return static_cast<unsigned long long>(t);
}

std::string rat_str(const Rat& x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

} // namespace etaq
