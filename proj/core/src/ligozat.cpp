#include "etaq/ligozat.hpp"

#include <cstdlib>
#include <numeric>

#include <gmpxx.h>

namespace etaq {

int kronecker(long long a, long long n) {
    mpz_class az(static_cast<long>(a)), nz(static_cast<long>(n));
    return mpz_kronecker(az.get_mpz_t(), nz.get_mpz_t());
}

std::string verdict_str(LigozatVerdict v) {
    switch (v) {
        case LigozatVerdict::ModularFunctionGamma0N:
            return "modular-for-Gamma0(N)";
        case LigozatVerdict::ModularFunctionGamma0NCapGamma6:
            return "modular-for-Gamma0(N)-meet-Gamma(6)";
        case LigozatVerdict::Fails:
            return "fails";
    }
    return "fails";
}

namespace {

long long squarefree_part(long long n) {
    // n != 0; keeps the sign
    long long sign = n < 0 ? -1 : 1;
    n = std::llabs(n);
    long long sf = 1;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e % 2) sf *= p;
    }
    return sign * sf * n;
}

} // namespace

LigozatReport check_ligozat(const EtaQuotient& eq, long long level, long long modulus) {
    if (level < 1) throw Error("check_ligozat: level must be positive");
    if (modulus != 24 && modulus != 8)
        throw Error("check_ligozat: modulus must be 24 or 8");
    if (!eq.integral_exponents())
        throw NonIntegralExponents("check_ligozat: exponents must be integers");

    LigozatReport r;
    r.level = level;
    r.modulus = modulus;
    r.all_even_exponents = true;
    long long sf = 1;
    for (auto& t : eq.terms()) {
        if (level % t.delta != 0)
            throw ScaleNotDividingLevel("check_ligozat: eta scale " + std::to_string(t.delta) +
                                        " does not divide level " + std::to_string(level));
        long long e = t.exponent.get_num().get_si();
        r.sum_r_delta += e * t.delta;
        r.sum_r_codelta += e * (level / t.delta);
        r.sum_r += e;
        if (e % 2 != 0) {
            r.all_even_exponents = false;
            sf *= squarefree_part(level / t.delta);
            sf = squarefree_part(sf);
        }
    }
    r.character_squarefree = sf;

    auto ok = [](long long v, long long m) { return v % m == 0; };
    r.cond_delta = ok(r.sum_r_delta, modulus);
    r.cond_codelta = ok(r.sum_r_codelta, modulus);
    r.cond_sum_zero = (r.sum_r == 0);

    if (r.cond_delta && r.cond_codelta && r.cond_sum_zero) {
        if (modulus == 24)
            r.verdict = LigozatVerdict::ModularFunctionGamma0N;
        else
            r.verdict = LigozatVerdict::ModularFunctionGamma0NCapGamma6;
    } else if (modulus == 24 && r.cond_sum_zero && ok(r.sum_r_delta, 8) &&
               ok(r.sum_r_codelta, 8)) {
        // the relaxed variant still applies
        r.verdict = LigozatVerdict::ModularFunctionGamma0NCapGamma6;
    } else {
        r.verdict = LigozatVerdict::Fails;
    }
    return r;
}

int character_eval(const LigozatReport& report, long long a) {
    int v = kronecker(report.character_squarefree, a);
    if (v == 0)
        throw NotCoprime("character_eval: " + std::to_string(a) + " shares a factor with " +
                         std::to_string(report.character_squarefree));
    return v;
}

} // namespace etaq
