#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "etaq/asd.hpp"
#include "etaq/catalog.hpp"
#include "etaq/search.hpp"

using namespace etaq;

namespace {

TupleSpec tuple48(std::array<long long, 4> exps) {
    TupleSpec t;
    t.bases = {1, 2, 4, 8};
    t.exponents = exps;
    t.root = 3;
    return t;
}

SearchConfig small_config() {
    SearchConfig cfg;
    cfg.prime_max = 17;
    cfg.n_bound = 120;
    cfg.prescan_terms = 40;
    return cfg;
}

PrimeReport one_report(long long p, std::uint64_t c) {
    PrimeReport r;
    r.p = p;
    r.kind = AsdCase::CaseOne;
    r.c = c;
    r.c_b = c;
    r.witnesses = 5;
    return r;
}

PrimeReport two_report(long long p, std::uint64_t ab, std::uint64_t ba) {
    PrimeReport r;
    r.p = p;
    r.kind = AsdCase::CaseTwo;
    r.ratio_ab = ab;
    r.ratio_ba = ba;
    const std::uint64_t m = static_cast<std::uint64_t>(p) * p;
    r.cp_sq = mulmod_u64(ab, ba, m);
    r.degenerate = (ab == 0 || ba == 0);
    r.witnesses = 5;
    return r;
}

std::uint64_t residue(long long v, long long p) {
    const long long m = p * p;
    return static_cast<std::uint64_t>(((v % m) + m) % m);
}

// The worked pair's scan outcomes at every prime in (4, 47], used as the
// pattern-inference and matching fixture: single constants on 1 mod 12,
// shared cross constants on 5 mod 12, zero columns elsewhere.
std::vector<PrimeReport> worked_reports() {
    std::vector<PrimeReport> rs;
    rs.push_back(two_report(5, residue(6, 5), residue(6, 5)));
    rs.push_back(two_report(7, 0, 0));
    rs.push_back(two_report(11, 0, 0));
    rs.push_back(one_report(13, residue(10, 13)));
    rs.push_back(two_report(17, residue(30, 17), residue(30, 17)));
    rs.push_back(two_report(19, 0, 0));
    rs.push_back(two_report(23, 0, 0));
    rs.push_back(two_report(29, residue(-42, 29), residue(-42, 29)));
    rs.push_back(two_report(31, 0, 0));
    rs.push_back(one_report(37, residue(-70, 37)));
    rs.push_back(two_report(41, residue(-18, 41), residue(-18, 41)));
    rs.push_back(two_report(43, 0, 0));
    rs.push_back(two_report(47, 0, 0));
    return rs;
}

std::string pair_digest(const CandidatePair& cp) {
    std::string s = cp.str();
    for (const PrimeReport& r : cp.per_prime) s += "|" + r.str();
    return s;
}

} // namespace

TEST_CASE("tuple enumeration: complete, ordered, duplicate-free") {
    SearchConfig cfg;
    cfg.bound = 6;
    std::vector<TupleSpec> got = enumerate_tuples(cfg);

    long long brute = 0;
    for (long long m = -6; m <= 6; ++m)
        for (long long n = -6; n <= 6; ++n)
            for (long long r = -6; r <= 6; ++r)
                for (long long s = -6; s <= 6; ++s)
                    if (m + n + r + s == 18) ++brute;
    CHECK(static_cast<long long>(got.size()) == brute);
    CHECK(std::is_sorted(got.begin(), got.end()));
    CHECK(std::adjacent_find(got.begin(), got.end()) == got.end());
    for (const TupleSpec& t : got) {
        CHECK(t.exponent_sum() == 18);
        CHECK(t.bases == std::array<long long, 4>{1, 2, 4, 8});
        for (long long e : t.exponents) CHECK(std::abs(e) <= 6);
    }

    cfg.bound = 1; // four entries in [-1,1] cannot sum to 18
    CHECK(enumerate_tuples(cfg).empty());

    auto contains = [](const std::vector<TupleSpec>& v, const TupleSpec& t) {
        return std::find(v.begin(), v.end(), t) != v.end();
    };
    cfg.bound = 22;
    std::vector<TupleSpec> b22 = enumerate_tuples(cfg);
    CHECK(contains(b22, tuple48({8, -12, 22, 0})));
    CHECK_FALSE(contains(b22, tuple48({8, -12, 23, -1})));
    cfg.bound = 14;
    CHECK(contains(enumerate_tuples(cfg), tuple48({-8, 12, 14, 0})));
    cfg.bound = 13;
    CHECK_FALSE(contains(enumerate_tuples(cfg), tuple48({-8, 12, 14, 0})));
}

TEST_CASE("denominator filter: growing 3-power depth vs integral expansions") {
    // integral exponents: a true congruence object, every coefficient integral
    FilterDecision integral = denominator_filter(tuple48({0, 0, 18, 0}), 60);
    CHECK_FALSE(integral.keep);
    CHECK(integral.max_depth == 0);

    // a perfect cube divided out: exponents (6,6,6)/3 are integral again
    FilterDecision cube = denominator_filter(tuple48({6, 6, 6, 0}), 60);
    CHECK_FALSE(cube.keep);
    CHECK(cube.max_depth == 0);

    // the worked pair: denominators 3, 9, 81, ... keep deepening
    FilterDecision h1 = denominator_filter(tuple48({-8, 12, 14, 0}), 60);
    CHECK(h1.keep);
    CHECK(h1.max_depth > 3);
    CHECK(2 * h1.last_growth >= h1.window);
    FilterDecision h2 = denominator_filter(tuple48({8, -12, 22, 0}), 60);
    CHECK(h2.keep);

    CHECK(h1.str().find("keep") == 0);
    CHECK(integral.str().find("drop") == 0);
}

TEST_CASE("pair scan rediscovers the worked pair from its two tuples") {
    SearchConfig cfg = small_config();
    TupleSpec h1 = tuple48({-8, 12, 14, 0});
    TupleSpec h2 = tuple48({8, -12, 22, 0});

    // order irrelevant; self-pairs are scanned too but fail at p=5
    std::vector<CandidatePair> found = pair_scan({h2, h1}, cfg);
    REQUIRE(found.size() == 1);
    const CandidatePair& cp = found[0];
    CHECK(cp.h1 == h1);
    CHECK(cp.h2 == h2);

    REQUIRE(cp.per_prime.size() == 5);
    auto kind_at = [&](long long p) {
        for (const PrimeReport& r : cp.per_prime)
            if (r.p == p) return r;
        throw std::runtime_error("missing prime");
    };
    PrimeReport r5 = kind_at(5);
    CHECK(r5.kind == AsdCase::CaseTwo);
    CHECK_FALSE(r5.degenerate);
    CHECK(*r5.ratio_ab == residue(6, 5));
    CHECK(*r5.ratio_ba == residue(6, 5));
    CHECK(kind_at(7).kind == AsdCase::CaseTwo);
    CHECK(kind_at(7).degenerate);
    CHECK(kind_at(11).degenerate);
    PrimeReport r13 = kind_at(13);
    CHECK(r13.kind == AsdCase::CaseOne);
    CHECK(*r13.c == residue(10, 13));
    PrimeReport r17 = kind_at(17);
    CHECK(r17.kind == AsdCase::CaseTwo);
    CHECK_FALSE(r17.degenerate);
    CHECK(*r17.ratio_ab == residue(30, 17));

    REQUIRE(cp.matched.has_value());
    CHECK(cp.matched->source == "eta(q^4)^6");
    CHECK(cp.matched->chi.modulus() == 3);
    CHECK(cp.matched->chi(2) == -1);
    CHECK(cp.matched->nebentypus.modulus() == 4);

    // soundness at a single-constant prime: both members individually satisfy
    // the three-term congruence with the matched coefficient and character
    CoefficientTable t1 = CoefficientTable::from_series(h1.quotient().expand(160), "h1");
    CoefficientTable t2 = CoefficientTable::from_series(h2.quotient().expand(160), "h2");
    std::map<long long, Int> cp13{{13, Int(10)}};
    std::map<long long, Int> chi13{{13, Int(cp.matched->nebentypus(13))}};
    CHECK(asd_check(t1, cp13, chi13, 3, 13, 12, 48).ok);
    CHECK(asd_check(t2, cp13, chi13, 3, 13, 12, 48).ok);
}

TEST_CASE("pair scan: eigenform self-pair is all single constants plus CM zeros") {
    SearchConfig cfg = small_config();
    cfg.prime_max = 13;
    cfg.n_bound = 200;
    TupleSpec g = tuple48({0, 0, 18, 0}); // eta(q^4)^6

    std::vector<CandidatePair> found = pair_scan({g}, cfg);
    REQUIRE(found.size() == 1);
    const CandidatePair& cp = found[0];
    CHECK(cp.h1 == g);
    CHECK(cp.h2 == g);
    REQUIRE(cp.per_prime.size() == 4);
    CHECK(cp.per_prime[0].p == 5);
    CHECK(cp.per_prime[0].kind == AsdCase::CaseOne);
    CHECK(*cp.per_prime[0].c == residue(-6, 5));
    CHECK(cp.per_prime[1].kind == AsdCase::CaseTwo); // a_7 = 0: zero columns
    CHECK(cp.per_prime[1].degenerate);
    CHECK(cp.per_prime[2].degenerate);
    CHECK(cp.per_prime[3].kind == AsdCase::CaseOne);
    CHECK(*cp.per_prime[3].c == residue(10, 13));

    // its own coefficients already explain the constants: no twist needed
    REQUIRE(cp.matched.has_value());
    CHECK(cp.matched->source == "eta(q^4)^6");
    CHECK(cp.matched->chi.is_principal());

    // pattern: single constants exactly on the residues 1 mod 4
    REQUIRE(cp.pattern.has_value());
    CHECK(cp.pattern->modulus == 4);
    CHECK(cp.pattern->classes.at(1) == ScanClass::One);
    CHECK(cp.pattern->classes.at(3) == ScanClass::TwoZero);
}

TEST_CASE("pair scan: a reference pair with two distinct class-one constants") {
    // each member satisfies its own single-form congruence at the 1 mod 3
    // primes, with different constants; such a pair survives the scan and the
    // prescan but cannot match any single catalog source
    const FigureRow& row = figures(4).rows[0];
    SearchConfig cfg = small_config();

    std::vector<CandidatePair> found = pair_scan({row.h1, row.h2}, cfg);
    REQUIRE(found.size() == 1);
    const CandidatePair& cp = found[0];
    REQUIRE(cp.per_prime.size() == 5);

    const PrimeReport& r7 = cp.per_prime[1];
    CHECK(r7.p == 7);
    CHECK(r7.kind == AsdCase::CaseOne);
    CHECK(*r7.c == residue(17, 7));
    CHECK(*r7.c_b == residue(-20, 7));
    const PrimeReport& r13 = cp.per_prime[3];
    CHECK(r13.kind == AsdCase::CaseOne);
    CHECK(*r13.c == residue(-72, 13));
    CHECK(*r13.c_b == residue(63, 13));

    // the cross primes carry two unequal nonzero constants of their own
    const PrimeReport& r5 = cp.per_prime[0];
    CHECK(r5.kind == AsdCase::CaseTwo);
    CHECK_FALSE(r5.degenerate);
    CHECK(*r5.ratio_ab == residue(6, 5));
    CHECK(*r5.ratio_ba == residue(-4, 5));

    REQUIRE(cp.pattern.has_value());
    CHECK(cp.pattern->modulus == 3);
    CHECK(cp.pattern->classes.at(1) == ScanClass::One);
    CHECK(cp.pattern->classes.at(2) == ScanClass::Two);
    CHECK_FALSE(cp.matched.has_value());
}

TEST_CASE("pair scan: staged pruning and parallel schedule change nothing") {
    std::vector<TupleSpec> mixed = {
        tuple48({8, -12, 22, 0}),  tuple48({-8, 12, 14, 0}), tuple48({0, 0, 18, 0}),
        tuple48({-4, 14, 2, 6}),   tuple48({2, 2, 2, 12}),   tuple48({1, 5, 7, 5}),
    };
    SearchConfig base = small_config();
    base.n_bound = 100;

    std::vector<std::string> digests;
    for (bool prescan : {true, false}) {
        for (int jobs : {1, 4}) {
            SearchConfig cfg = base;
            cfg.use_prescan = prescan;
            cfg.jobs = jobs;
            std::vector<TupleSpec> shuffled = mixed;
            std::mt19937 rng(prescan ? 7 : 11);
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            std::vector<CandidatePair> found = pair_scan(shuffled, cfg);
            std::string d;
            for (const CandidatePair& cp : found) d += pair_digest(cp) + "\n";
            digests.push_back(d);
        }
    }
    for (size_t i = 1; i < digests.size(); ++i) CHECK(digests[i] == digests[0]);
    CHECK(digests[0].find("[-8,12,14,0]") != std::string::npos);
}

TEST_CASE("random integral tables are rejected at the first scanned prime") {
    std::mt19937 rng(20260815);
    std::uniform_int_distribution<long long> coeff(1, 97);
    auto random_table = [&](std::string id) {
        std::vector<Rat> a;
        for (int n = 0; n < 240; ++n) a.push_back(rat(coeff(rng)));
        return CoefficientTable(std::move(id), 1, std::move(a));
    };
    CoefficientTable x = random_table("x");
    CoefficientTable y = random_table("y");
    SearchConfig cfg = small_config();
    cfg.n_bound = 240;

    PairScanOutcome out = scan_tables(x, y, cfg);
    CHECK_FALSE(out.all_matched);
    REQUIRE(out.per_prime.size() == 1); // stopped at the very first prime
    CHECK(out.per_prime[0].p == 5);
    CHECK(out.per_prime[0].kind == AsdCase::NoMatch);
}

TEST_CASE("pattern inference finds the smallest consistent modulus") {
    std::vector<PrimeReport> rs = worked_reports();
    std::optional<CasePattern> pat = infer_pattern(rs);
    REQUIRE(pat.has_value());
    CHECK(pat->modulus == 12);
    REQUIRE(pat->classes.size() == 4);
    CHECK(pat->classes.at(1) == ScanClass::One);
    CHECK(pat->classes.at(5) == ScanClass::Two);
    CHECK(pat->classes.at(7) == ScanClass::TwoZero);
    CHECK(pat->classes.at(11) == ScanClass::TwoZero);
    CHECK(pat->str().find("mod 12") != std::string::npos);

    // a cap below the true modulus reports no pattern instead of guessing
    CHECK_FALSE(infer_pattern(rs, 11).has_value());

    // an unclassified prime poisons the whole inference
    PrimeReport bad;
    bad.p = 53;
    bad.kind = AsdCase::NoMatch;
    rs.push_back(bad);
    CHECK_FALSE(infer_pattern(rs).has_value());

    // no reports: trivially periodic
    std::optional<CasePattern> empty = infer_pattern({});
    REQUIRE(empty.has_value());
    CHECK(empty->modulus == 1);
}

TEST_CASE("newform matching is sensitive to the sign of the cross constants") {
    // the worked constants: only the Legendre twist mod 3 reproduces them
    std::optional<NewformMatch> m = match_newform(worked_reports(), newform_sources());
    REQUIRE(m.has_value());
    CHECK(m->source == "eta(q^4)^6");
    CHECK(m->chi.modulus() == 3);
    CHECK_FALSE(m->chi.is_principal());
    CHECK(m->chi(2) == -1);
    CHECK(m->str().find("mod 3") != std::string::npos);

    // flipping the 5 mod 12 constants to the untwisted values makes the plain
    // eta-product match first; a square test alone could not tell these apart
    std::vector<PrimeReport> plain = worked_reports();
    for (PrimeReport& r : plain) {
        if (r.p % 12 == 5 && !r.degenerate) {
            const std::uint64_t mod = static_cast<std::uint64_t>(r.p) * r.p;
            std::uint64_t flipped = (mod - *r.ratio_ab) % mod;
            r.ratio_ab = r.ratio_ba = flipped;
            r.cp_sq = mulmod_u64(flipped, flipped, mod);
        }
    }
    std::optional<NewformMatch> m2 = match_newform(plain, newform_sources());
    REQUIRE(m2.has_value());
    CHECK(m2->source == "eta(q^4)^6");
    CHECK(m2->chi.is_principal());

    // zeroing one of the single constants breaks every candidate
    std::vector<PrimeReport> broken = worked_reports();
    broken[3] = one_report(13, 1);
    CHECK_FALSE(match_newform(broken, newform_sources()).has_value());

    // a pair whose members track different family members classifies at every
    // prime, yet no single source can carry both constants at once
    std::vector<PrimeReport> split = worked_reports();
    for (PrimeReport& r : split)
        if (r.kind == AsdCase::CaseOne)
            r.c_b = (*r.c + 2) % (static_cast<std::uint64_t>(r.p) * r.p);
    CHECK_FALSE(match_newform(split, newform_sources()).has_value());

    CHECK_FALSE(match_newform(worked_reports(), {}).has_value());
}

TEST_CASE("search pipeline: bounded run is deterministic and self-consistent") {
    SearchConfig cfg;
    cfg.bound = 10;
    cfg.prime_max = 13;
    cfg.n_bound = 150;
    cfg.filter_order = 40;
    cfg.jobs = 4;

    SearchResult r1 = run_search(cfg);
    cfg.jobs = 1;
    SearchResult r2 = run_search(cfg);

    CHECK(r1.stats.str() == r2.stats.str());
    REQUIRE(r1.pairs.size() == r2.pairs.size());
    for (size_t i = 0; i < r1.pairs.size(); ++i)
        CHECK(pair_digest(r1.pairs[i]) == pair_digest(r2.pairs[i]));

    // stats account for every enumerated tuple
    long long brute = 0;
    for (long long m = -10; m <= 10; ++m)
        for (long long n = -10; n <= 10; ++n)
            for (long long r = -10; r <= 10; ++r) {
                long long s = 18 - m - n - r;
                if (s >= -10 && s <= 10) ++brute;
            }
    CHECK(r1.stats.enumerated == brute);
    CHECK(r1.stats.enumerated ==
          r1.stats.nonpositive_lead + r1.stats.filter_dropped + r1.stats.candidates);
    CHECK(r1.stats.pairs_found == static_cast<long long>(r1.pairs.size()));
    CHECK(r1.stats.fully_scanned <= r1.stats.pairs_considered);

    // every reported pair is fully classified, carries a nonzero constant
    // somewhere, and its pattern reproduces the per-prime classes
    for (const CandidatePair& cp : r1.pairs) {
        CHECK(!(cp.h2 < cp.h1));
        bool nonzero = false;
        for (const PrimeReport& rep : cp.per_prime) {
            CHECK(rep.kind != AsdCase::NoMatch);
            if (rep.kind == AsdCase::CaseOne ||
                (rep.kind == AsdCase::CaseTwo && !rep.degenerate))
                nonzero = true;
        }
        CHECK(nonzero);
        REQUIRE(cp.pattern.has_value());
        for (const PrimeReport& rep : cp.per_prime)
            CHECK(cp.pattern->classes.at(rep.p % cp.pattern->modulus) == scan_class(rep));
    }
}
