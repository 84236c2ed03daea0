#ifndef ETAQ_ASD_HPP
#define ETAQ_ASD_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "etaq/errors.hpp"
#include "etaq/qseries.hpp"
#include "etaq/rational.hpp"

namespace etaq {

// Dense table of expansion coefficients a_1..a_{max_n} of a series
// sum_{n>=1} a_n q^{n/mu}.  Absent trailing indices are out of range, never
// implicitly zero; interior gaps on the grid are genuine zeros.
class CoefficientTable {
public:
    CoefficientTable() = default;
    CoefficientTable(std::string form_id, long long ramification, std::vector<Rat> coeffs);

    // Reads grid coefficients off a (canonicalized) series.  Requires a
    // positive leading exponent so indexing can start at n = 1.
    static CoefficientTable from_series(const FracSeries& f, std::string form_id = "");

    const std::string& form_id() const { return id_; }
    long long ramification() const { return mu_; }
    long long max_n() const { return static_cast<long long>(coeffs_.size()); }

    // a_n for 1 <= n <= max_n; anything past max_n is unknown, not zero.
    const Rat& a(long long n) const;

    CoefficientTable scaled(const Rat& c, std::string form_id = "") const;

    // ca*A + cb*B; both tables must share a ramification.
    static CoefficientTable linear_combination(const Rat& ca, const CoefficientTable& A,
                                               const Rat& cb, const CoefficientTable& B,
                                               std::string form_id = "");

private:
    std::string id_;
    long long mu_ = 1;
    std::vector<Rat> coeffs_; // coeffs_[i] = a_{i+1}
};

// One violated instance of the three-term congruence.
struct AsdFailure {
    long long n = 0;          // index at which the congruence fails
    Rat numerator;            // a_{np} - c_p a_n + chi(p) p^{k-1} a_{n/p}
    long long required_vp = 0;
    Valuation actual_vp;
};

struct AsdResult {
    bool ok = false;
    long long checked = 0; // congruences verified (== n_max on success)
    std::optional<AsdFailure> failure;
    std::string str() const;
};

// Three-term congruence check at a single prime: for every n <= n_max,
//   vp(a_{np} - c_p a_n + chi(p) p^{k-1} a_{n/p}) >= (k-1) vp(np),
// with a_{n/p} = 0 when p does not divide n.  c_p and chi(p) are looked up in
// the per-prime maps.  bad_modulus, when nonzero, names the modulus whose
// prime divisors are excluded from checking; passing p | bad_modulus throws.
AsdResult asd_check(const CoefficientTable& h,
                    const std::map<long long, Int>& cp,
                    const std::map<long long, Int>& chi,
                    int weight, long long p, long long n_max,
                    long long bad_modulus = 0);

// Constant-ratio scan a_{np}/a_n mod p^2 over n <= n_max coprime to p.
// Only indices with unit a_n (vp = 0) are used; others count as skipped.
struct Case1Result {
    std::optional<std::uint64_t> constant; // residue mod p^2, set when all ratios agree
    long long witnesses = 0;
    long long skipped = 0;
};

Case1Result case1_scan(const CoefficientTable& a, long long p, long long n_max,
                       long long witness_min = 2);

// Cross-ratio scan: a_{np}/b_n and b_{np}/a_n each constant mod p^2.
struct Case2Result {
    bool matched = false;
    bool degenerate = false; // a zero column; alpha_sq is then undefined
    std::optional<std::uint64_t> ratio_ab; // constant value of a_{np}/b_n
    std::optional<std::uint64_t> ratio_ba; // constant value of b_{np}/a_n
    std::optional<std::uint64_t> alpha_sq; // ratio_ab / ratio_ba, when invertible
    std::optional<std::uint64_t> cp_sq;    // ratio_ab * ratio_ba
    long long witnesses_ab = 0;
    long long witnesses_ba = 0;
    long long skipped = 0;
};

Case2Result case2_scan(const CoefficientTable& a, const CoefficientTable& b,
                       long long p, long long n_max, long long witness_min = 2);

enum class AsdCase { CaseOne, CaseTwo, NoMatch };
std::string asd_case_str(AsdCase c);

// Per-prime verdict for an ordered pair of tables.
struct PrimeReport {
    long long p = 0;
    AsdCase kind = AsdCase::NoMatch;
    std::optional<std::uint64_t> c;        // CaseOne constant of the first form
    std::optional<std::uint64_t> c_b;      // CaseOne constant of the second (may differ)
    std::optional<std::uint64_t> ratio_ab; // CaseTwo column constants
    std::optional<std::uint64_t> ratio_ba;
    std::optional<std::uint64_t> alpha_sq;
    std::optional<std::uint64_t> cp_sq;
    bool degenerate = false;
    long long witnesses = 0;
    long long skipped = 0;
    std::string str() const;
};

// Classifies one prime for the pair (a, b): nonzero single-form constants on
// both forms win as CaseOne — the forms may carry different constants, each
// pairing with its own family member.  Vanishing single constants are instead
// reported through the cross scan (alpha undefined), matching the tabulated
// layout, which prints the shared zeros in the Case 2 column.
PrimeReport classify_prime(const CoefficientTable& a, const CoefficientTable& b,
                           long long p, long long n_max, long long witness_min = 2);

// Sign pattern u_p with c_p = u_p * a_p mod p^2 and u_p in {+1, -1},
// periodic in p modulo the smallest workable modulus <= max_modulus.
struct TwistPattern {
    long long modulus = 1;
    std::map<long long, int> class_sign; // residue mod modulus -> sign
    std::map<long long, int> prime_sign; // p -> u_p; 0 when both sides vanish
    std::string str() const;
};

std::optional<TwistPattern> twist_detect(const std::map<long long, Rat>& ap,
                                         const std::map<long long, Int>& cp,
                                         const std::vector<long long>& primes,
                                         long long max_modulus = 24);

} // namespace etaq

#endif
