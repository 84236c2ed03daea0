#ifndef ETAQ_SEARCH_HPP
#define ETAQ_SEARCH_HPP

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "etaq/asd.hpp"
#include "etaq/catalog.hpp"
#include "etaq/eta.hpp"

namespace etaq {

struct SearchConfig {
    std::array<long long, 4> bases{1, 2, 4, 8};
    long long bound = 23;       // each tuple entry in [-bound, bound]
    long long weight_sum = 18;  // entries sum to this (weight 3 under a cube root)
    long long prime_max = 47;
    long long n_bound = 500; // scan indices with np <= n_bound
    long long witness_min = 2;

    // denominator-growth prefilter (drops candidates that look congruence)
    bool use_denominator_filter = true;
    long long filter_order = 60;
    long long filter_threshold = 3;

    // residue prescan at small primes before committing to full expansions
    bool use_prescan = true;
    long long prescan_terms = 40;

    int jobs = 1;
};

// All tuples over cfg.bases with entries in [-bound, bound] summing to
// weight_sum, in lexicographic order, duplicate-free.
std::vector<TupleSpec> enumerate_tuples(const SearchConfig& cfg);

// Evidence attached to a denominator-filter decision.
struct FilterDecision {
    bool keep = false;
    long long max_depth = 0;   // deepest p-power seen in any denominator
    long long last_growth = 0; // grid index where the running max last grew
    long long window = 0;      // grid terms inspected
    std::string str() const;
};

// Tabulates d(n) = max(0, -v_p(a_n)) over the expansion of t to O(q^order).
// keep iff the depth exceeds `threshold` and is still growing in the second
// half of the window; bounded denominators (the congruence signature) fail
// both tests.  Heuristic: it encodes an open conjecture and every driver
// accepts a flag to bypass it.
FilterDecision denominator_filter(const TupleSpec& t, long long order, long long p = 3,
                                  long long threshold = 3);

// The three scan outcomes a surviving prime can have, as pattern symbols:
// a single constant, a cross constant, or identically-zero cross columns.
enum class ScanClass { One, Two, TwoZero };
ScanClass scan_class(const PrimeReport& r);
std::string scan_class_str(ScanClass c);

struct CasePattern {
    long long modulus = 1;
    std::map<long long, ScanClass> classes; // residue -> kind for scanned classes
    std::string str() const;
};

// Smallest modulus <= max_modulus on whose residue classes the scan outcome
// is constant; nullopt when no such modulus exists.
std::optional<CasePattern> infer_pattern(const std::vector<PrimeReport>& reports,
                                         long long max_modulus = 24);

struct NewformMatch {
    std::string source;      // catalog eta-product
    QuadraticCharacter chi;  // twist that matched
    QuadraticCharacter nebentypus;
    std::string str() const;
};

// First (source, quadratic character mod <= max_modulus) whose twisted
// coefficients reproduce every scanned constant: the single constant at
// class-one primes, the cross constant at class-two primes (alpha normalized
// to +1 when the columns agree; only the square is pinned otherwise), and
// zero at degenerate ones.
std::optional<NewformMatch> match_newform(const std::vector<PrimeReport>& reports,
                                          const std::vector<NewformSource>& sources,
                                          long long max_modulus = 24);

struct CandidatePair {
    TupleSpec h1, h2; // h1 <= h2; equal for a self-pair
    std::vector<PrimeReport> per_prime;
    std::optional<CasePattern> pattern;
    std::optional<NewformMatch> matched;
    std::string str() const;
};

// Authoritative per-pair scan: classify every prime in (4, prime_max] with
// p coprime to 6; matched iff no prime is left unclassified.
struct PairScanOutcome {
    std::vector<PrimeReport> per_prime;
    bool all_matched = false;
};
PairScanOutcome scan_tables(const CoefficientTable& a, const CoefficientTable& b,
                            const SearchConfig& cfg);

// Full pipeline over explicit candidates: expansion (memoized, shared),
// optional residue prescan, authoritative scans, pattern inference and
// newform matching.  Output sorted by (h1, h2); independent of candidate
// order and of the parallel schedule.
//
// A pair is reported only when every prime classifies AND some prime carries
// a nonzero constant.  Pairs whose supports never interact satisfy the
// congruences for any c_p (every row is 0 = 0) and say nothing about a basis;
// they are rejected arithmetically, as are candidates that cannot reach
// witness_min unit rows at some prime (no pair containing them can classify).
std::vector<CandidatePair> pair_scan(const std::vector<TupleSpec>& candidates,
                                     const SearchConfig& cfg);

struct SearchStats {
    long long enumerated = 0;
    long long nonpositive_lead = 0;
    long long filter_dropped = 0;
    long long candidates = 0;
    long long infeasible_dropped = 0; // too few unit rows to ever reach witness_min
    long long pairs_considered = 0;
    long long vacuous_rejected = 0; // supports never interact: all constants zero
    long long prescan_rejected = 0;
    long long fully_scanned = 0;
    long long pairs_found = 0;
    std::string str() const;
};

struct SearchResult {
    std::vector<CandidatePair> pairs;
    SearchStats stats;
};

// enumerate -> positive leading exponent -> denominator filter -> pair_scan
SearchResult run_search(const SearchConfig& cfg,
                        const std::function<void(const std::string&)>& progress = {});

} // namespace etaq

#endif
