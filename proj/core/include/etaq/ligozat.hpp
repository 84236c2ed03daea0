#ifndef ETAQ_LIGOZAT_HPP
#define ETAQ_LIGOZAT_HPP

#include <string>

#include "etaq/eta.hpp"

namespace etaq {

// Kronecker symbol (a|n), full extension: multiplicative in n, (a|2) the
// mod-8 symbol, (a|-1) the sign of a, (a|0) nonzero only for a = +-1.
int kronecker(long long a, long long n);

enum class LigozatVerdict {
    ModularFunctionGamma0N,          // all congruence conditions hold mod 24
    ModularFunctionGamma0NCapGamma6, // they hold mod 8 (but not mod 24)
    Fails,
};

std::string verdict_str(LigozatVerdict v);

// Congruence test for an integer-exponent quotient at a level: (1) sum of
// r_delta * delta, (2) sum of r_delta * (N/delta), both 0 mod the modulus,
// and (3) sum of r_delta = 0.  The multiplier character is (s|.) with s the
// square class of prod (N/delta)^(r_delta).
struct LigozatReport {
    long long level = 0;
    long long modulus = 24; // 24, or 8 for the relaxed variant
    long long sum_r_delta = 0;        // sum r_delta * delta
    long long sum_r_codelta = 0;      // sum r_delta * (N/delta)
    long long sum_r = 0;              // sum r_delta
    bool cond_delta = false;          // (1) at the modulus
    bool cond_codelta = false;        // (2) at the modulus
    bool cond_sum_zero = false;       // (3)
    LigozatVerdict verdict = LigozatVerdict::Fails;
    long long character_squarefree = 1; // squarefree s; 1 means trivial character
    bool all_even_exponents = false;    // informational
};

// Requires integral exponents and every delta | level.
LigozatReport check_ligozat(const EtaQuotient& eq, long long level, long long modulus = 24);

// chi(a) = (s|a) for a coprime to s; throws NotCoprime otherwise.
int character_eval(const LigozatReport& report, long long a);

} // namespace etaq

#endif
