#include "doctest.h"

#include <array>
#include <numeric>
#include <random>
#include <vector>

#include "etaq/asd.hpp"
#include "etaq/eta.hpp"
#include "etaq/ligozat.hpp"

using namespace etaq;

namespace {

CoefficientTable root_table(std::array<long long, 4> exps, long long order, std::string id) {
    TupleSpec t;
    t.bases = {1, 2, 4, 8};
    t.exponents = exps;
    t.root = 3;
    return CoefficientTable::from_series(t.quotient().expand(order), std::move(id));
}

CoefficientTable twisted(const CoefficientTable& t, long long bottom, std::string id) {
    std::vector<Rat> a;
    a.reserve(static_cast<std::size_t>(t.max_n()));
    for (long long n = 1; n <= t.max_n(); ++n) a.push_back(t.a(n) * kronecker(n, bottom));
    return CoefficientTable(std::move(id), t.ramification(), std::move(a));
}

// Worked pair: cube roots over bases (1,2,4,8), both with integer grid.
const CoefficientTable& H1() {
    static CoefficientTable t = root_table({-8, 12, 14, 0}, 601, "h1");
    return t;
}
const CoefficientTable& H2() {
    static CoefficientTable t = root_table({8, -12, 22, 0}, 601, "h2");
    return t;
}
// Weight-3 eigenform and its quadratic twist (the comparison newform).
const CoefficientTable& G() {
    static CoefficientTable t = CoefficientTable::from_series(
        EtaQuotient::from_integer_exponents({{4, 6}}).expand(601), "eta4^6");
    return t;
}
const CoefficientTable& F() {
    static CoefficientTable t = twisted(G(), 3, "f");
    return t;
}

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<long long> primes_in(long long lo, long long hi) {
    std::vector<long long> ps;
    for (long long p = lo; p <= hi; ++p)
        if (is_prime(p)) ps.push_back(p);
    return ps;
}

std::map<long long, Int> cp_from(const CoefficientTable& t, const std::vector<long long>& ps) {
    std::map<long long, Int> m;
    for (long long p : ps) m[p] = t.a(p).get_num();
    return m;
}

std::map<long long, Int> chi_minus4(const std::vector<long long>& ps) {
    std::map<long long, Int> m;
    for (long long p : ps) m[p] = kronecker(-1, p);
    return m;
}

} // namespace

TEST_CASE("p-adic valuations") {
    CHECK(vp(rat(18), 3) == Valuation{2, false});
    CHECK(vp(rat(5, 9), 3) == Valuation{-2, false});
    CHECK(vp(rat(0), 7).infinite);
    CHECK(vp(rat(7, 2), 7) == Valuation{1, false});
}

TEST_CASE("coefficient tables: construction and guards") {
    FracSeries s = FracSeries::from_terms(1, {{2, rat(1)}, {3, rat(5)}}, 5);
    CoefficientTable t = CoefficientTable::from_series(s, "s");
    CHECK(t.ramification() == 1);
    CHECK(t.max_n() == 4);
    CHECK(t.a(1) == 0);
    CHECK(t.a(2) == 1);
    CHECK(t.a(3) == 5);
    CHECK(t.a(4) == 0);
    CHECK_THROWS_AS(t.a(5), const InsufficientCoefficients&);
    CHECK_THROWS_AS(t.a(0), const InsufficientCoefficients&);

    // fractional grid survives as the table ramification
    FracSeries frac = FracSeries::from_terms(3, {{1, rat(2)}, {5, rat(-1)}}, 8);
    CoefficientTable tf = CoefficientTable::from_series(frac, "frac");
    CHECK(tf.ramification() == 3);
    CHECK(tf.max_n() == 7);
    CHECK(tf.a(5) == -1);

    CHECK_THROWS_AS(CoefficientTable::from_series(FracSeries::zero(1, 10)),
                    const ZeroSeries&);
    // a constant term means the expansion does not vanish at infinity
    CHECK_THROWS_AS(CoefficientTable::from_series(FracSeries::one(1, 10)), const Error&);

    CHECK_THROWS_AS(CoefficientTable::linear_combination(rat(1), t, rat(1), tf), const Error&);

    CoefficientTable sum =
        CoefficientTable::linear_combination(rat(2), t, rat(-1), t.scaled(rat(3)), "lc");
    CHECK(sum.a(2) == -1);
    CHECK(sum.a(3) == -5);
}

TEST_CASE("eigenform expansion: golden coefficients and Hecke recurrences") {
    const CoefficientTable& g = G();
    const CoefficientTable& f = F();

    // support of the base form is n = 1 mod 4
    for (long long n = 1; n <= g.max_n(); ++n)
        if (n % 4 != 1) CHECK(g.a(n) == 0);

    CHECK(g.a(1) == 1);
    CHECK(g.a(5) == -6);
    CHECK(g.a(9) == 9);
    CHECK(g.a(13) == 10);
    CHECK(g.a(17) == -30);
    CHECK(g.a(29) == 42);
    CHECK(g.a(37) == -70);

    CHECK(f.a(1) == 1);
    CHECK(f.a(5) == 6);
    CHECK(f.a(13) == 10);
    CHECK(f.a(25) == 11);
    CHECK(f.a(49) == 49);

    // multiplicativity over coprime indices
    for (long long m = 2; m * 2 <= f.max_n(); ++m)
        for (long long n = m + 1; m * n <= f.max_n(); ++n) {
            if (std::gcd(m, n) != 1) continue;
            CHECK(f.a(m * n) == f.a(m) * f.a(n));
        }

    // prime-power recurrence a_{p^{r+1}} = a_p a_{p^r} - chi(p) p^2 a_{p^{r-1}}
    for (long long p : primes_in(5, 23)) {
        Rat chi(kronecker(-1, p));
        Rat psq = rat(p * p);
        long long prev = 1, cur = p;
        while (cur * p <= f.max_n()) {
            CHECK(f.a(cur * p) == f.a(p) * f.a(cur) - chi * psq * f.a(prev));
            prev = cur;
            cur *= p;
        }
    }
}

TEST_CASE("asd_check: eigenform satisfies its own congruence exactly") {
    auto ps = primes_in(5, 13);
    auto cp = cp_from(F(), ps);
    auto chi = chi_minus4(ps);
    for (long long p : ps) {
        AsdResult r = asd_check(F(), cp, chi, 3, p, 40, 144);
        CHECK(r.ok);
        CHECK(r.checked == 40);
    }
    // the numerator vanishes identically, not just p-adically
    for (long long n = 1; n <= 40; ++n) {
        Rat anp = F().a(5 * n);
        Rat rec = rat(6) * F().a(n) - rat(25) * (n % 5 == 0 ? F().a(n / 5) : Rat(0));
        CHECK(anp == rec);
    }

    CHECK_THROWS_AS(asd_check(F(), cp, chi, 3, 3, 10, 144), const Error&);  // 3 | 144
    CHECK_THROWS_AS(asd_check(F(), cp, chi, 3, 11, 600, 0),
                    const InsufficientCoefficients&);
    std::map<long long, Int> empty;
    CHECK_THROWS_AS(asd_check(F(), empty, chi, 3, 5, 10, 0), const Error&);
}

TEST_CASE("asd_check: a perturbed coefficient is caught and reported") {
    std::vector<Rat> a;
    for (long long n = 1; n <= F().max_n(); ++n) a.push_back(F().a(n));
    a[7] += 1; // bump a_8
    CoefficientTable bad("f-perturbed", 1, a);

    auto ps = primes_in(5, 5);
    auto cp = cp_from(F(), ps);
    auto chi = chi_minus4(ps);
    AsdResult r = asd_check(bad, cp, chi, 3, 5, 40);
    CHECK_FALSE(r.ok);
    REQUIRE(r.failure.has_value());
    CHECK(r.failure->n == 8);
    CHECK(r.failure->required_vp == 2);
    CHECK_FALSE(r.failure->actual_vp.at_least(2));

    // monotone in the bound: failure at 40, but clean below the witness
    CHECK(asd_check(bad, cp, chi, 3, 5, 7).ok);
    AsdResult full = asd_check(F(), cp, chi, 3, 5, 100);
    CHECK(full.ok);
    for (long long nm : {1, 10, 50}) CHECK(asd_check(F(), cp, chi, 3, 5, nm).ok);
}

TEST_CASE("single-form ratio scan on an eigenform recovers a_p") {
    for (long long p : {5LL, 7LL, 13LL, 17LL}) {
        const std::uint64_t m = static_cast<std::uint64_t>(p * p);
        Case1Result r = case1_scan(F(), p, F().max_n() / p);
        REQUIRE(r.constant.has_value());
        CHECK(*r.constant == *mod_reduce(F().a(p), m));
    }
}

// The worked pair satisfies H2(q) = -H1(-q), so its single-form ratios
// a_{np}/a_n equal c_p at p = 1 mod 12, alternate c_p * (-1)^(n+1) at
// p = 5 mod 12, and vanish at p = 3 mod 4; the cross ratios do the opposite.
// (The published table prints these values with the two columns interchanged;
// the constants below agree with the comparison newform's coefficients.)
TEST_CASE("single-form ratio scan on the worked pair") {
    struct Row {
        long long p, n_max, constant;
    };
    // constant at p = 1 mod 12 (the eigen primes) and 0 at p = 3 mod 4
    for (const Row& row : {Row{13, 40, 10}, Row{37, 16, -70}, Row{7, 80, 0}, Row{11, 50, 0}}) {
        const std::uint64_t m = static_cast<std::uint64_t>(row.p * row.p);
        for (const CoefficientTable* t : {&H1(), &H2()}) {
            Case1Result r = case1_scan(*t, row.p, row.n_max);
            REQUIRE(r.constant.has_value());
            CHECK(signed_residue(*r.constant, m) == row.constant);
        }
    }
    // the parity alternation at p = 5 mod 12 refutes a single constant
    for (long long p : {5LL, 17LL, 29LL, 41LL}) {
        Case1Result r = case1_scan(H1(), p, 600 / p);
        CHECK_FALSE(r.constant.has_value());
        CHECK(r.witnesses >= 1); // progress before the first disagreement
    }

    // every admissible index is either a witness or audited as skipped
    Case1Result acc = case1_scan(H1(), 13, 40);
    CHECK(acc.witnesses + acc.skipped == 40 - 3);

    // scaling by a p-adic unit does not move the ratio
    Case1Result scaled = case1_scan(H1().scaled(rat(7, 4)), 13, 40);
    CHECK(scaled.constant == acc.constant);
    CHECK(scaled.witnesses == acc.witnesses);

    // an out-of-reach witness floor reports no constant
    CHECK_FALSE(case1_scan(H1(), 13, 40, 200).constant.has_value());

    // a non-eigen combination has no constant ratio
    CoefficientTable mix =
        CoefficientTable::linear_combination(rat(1), H1(), rat(1), G(), "h1+g");
    CHECK_FALSE(case1_scan(mix, 5, 60).constant.has_value());

    CHECK_THROWS_AS(case1_scan(H1(), 5, 200), const InsufficientCoefficients&);
}

TEST_CASE("cross-ratio scan on the worked pair") {
    SUBCASE("equal nonzero constants at p = 5 mod 12") {
        struct Row {
            long long p, n_max, constant;
        };
        for (const Row& row :
             {Row{5, 120, 6}, Row{17, 35, 30}, Row{29, 20, -42}, Row{41, 14, -18}}) {
            const std::uint64_t m = static_cast<std::uint64_t>(row.p * row.p);
            Case2Result r = case2_scan(H1(), H2(), row.p, row.n_max);
            REQUIRE(r.matched);
            CHECK_FALSE(r.degenerate);
            CHECK(signed_residue(*r.ratio_ab, m) == row.constant);
            CHECK(signed_residue(*r.ratio_ba, m) == row.constant);
            CHECK(*r.alpha_sq == 1);
            CHECK(*r.cp_sq == mulmod_u64(*r.ratio_ab, *r.ratio_ba, m));
        }
    }
    SUBCASE("p=7: zero columns, alpha undefined") {
        Case2Result r = case2_scan(H1(), H2(), 7, 80);
        REQUIRE(r.matched);
        CHECK(r.degenerate);
        CHECK(*r.ratio_ab == 0);
        CHECK(*r.ratio_ba == 0);
        CHECK(*r.cp_sq == 0);
        CHECK_FALSE(r.alpha_sq.has_value());
    }
    SUBCASE("the eigen primes have no constant cross ratio") {
        CHECK_FALSE(case2_scan(H1(), H2(), 13, 40).matched);
        CHECK_FALSE(case2_scan(H1(), H2(), 37, 16).matched);
    }
    SUBCASE("self-pair agrees with the single-form scan squared") {
        struct Probe {
            const CoefficientTable* t;
            long long p, n_max;
        };
        for (const Probe& pr : {Probe{&F(), 5, 60}, Probe{&H1(), 13, 40}}) {
            const std::uint64_t m = static_cast<std::uint64_t>(pr.p * pr.p);
            Case1Result one = case1_scan(*pr.t, pr.p, pr.n_max);
            Case2Result two = case2_scan(*pr.t, *pr.t, pr.p, pr.n_max);
            REQUIRE(one.constant.has_value());
            REQUIRE(two.matched);
            CHECK(*two.alpha_sq == 1);
            CHECK(*two.cp_sq == mulmod_u64(*one.constant, *one.constant, m));
        }
    }
    SUBCASE("scaling invariances") {
        Case2Result base = case2_scan(H1(), H2(), 5, 100);
        REQUIRE(base.matched);
        // one table scaled: constancy and c_p^2 survive
        Case2Result one = case2_scan(H1().scaled(rat(3, 2)), H2(), 5, 100);
        CHECK(one.matched);
        CHECK(one.cp_sq == base.cp_sq);
        // both tables scaled by the same unit: everything survives
        Case2Result both = case2_scan(H1().scaled(rat(3, 7)), H2().scaled(rat(3, 7)), 5, 100);
        CHECK(both.ratio_ab == base.ratio_ab);
        CHECK(both.ratio_ba == base.ratio_ba);
        CHECK(both.alpha_sq == base.alpha_sq);
        CHECK(both.cp_sq == base.cp_sq);
    }
    SUBCASE("guards") {
        FracSeries frac = FracSeries::from_terms(3, {{1, rat(1)}}, 100);
        CoefficientTable odd = CoefficientTable::from_series(frac, "frac");
        CHECK_THROWS_AS(case2_scan(H1(), odd, 5, 10), const Error&);
        CHECK_THROWS_AS(case2_scan(H1(), H2(), 5, 200), const InsufficientCoefficients&);
    }
}

TEST_CASE("per-prime classification of the worked pair") {
    // p = 1 mod 12: both forms share one nonzero single-form constant
    PrimeReport r13 = classify_prime(H1(), H2(), 13, 40);
    CHECK(r13.kind == AsdCase::CaseOne);
    CHECK(signed_residue(*r13.c, 169) == 10);
    CHECK(r13.witnesses >= 2);

    PrimeReport r37 = classify_prime(H1(), H2(), 37, 16);
    CHECK(r37.kind == AsdCase::CaseOne);
    CHECK(signed_residue(*r37.c, 1369) == -70);

    // p = 5 mod 12: only the cross ratios are constant
    PrimeReport r5 = classify_prime(H1(), H2(), 5, 100);
    CHECK(r5.kind == AsdCase::CaseTwo);
    CHECK_FALSE(r5.degenerate);
    CHECK(signed_residue(*r5.ratio_ab, 25) == 6);
    CHECK(signed_residue(*r5.ratio_ba, 25) == 6);
    CHECK(*r5.alpha_sq == 1);

    // p = 3 mod 4: everything vanishes; routed to the degenerate pair column
    PrimeReport r7 = classify_prime(H1(), H2(), 7, 80);
    CHECK(r7.kind == AsdCase::CaseTwo);
    CHECK(r7.degenerate);
    CHECK(*r7.ratio_ab == 0);

    // an eigenform with a_p = 0 lands in the degenerate pair column too
    PrimeReport rf = classify_prime(F(), F(), 7, 80);
    CHECK(rf.kind == AsdCase::CaseTwo);
    CHECK(rf.degenerate);

    // unrelated forms with distinct single-form constants match nothing
    PrimeReport rn = classify_prime(H1(), G(), 5, 24);
    CHECK(rn.kind == AsdCase::NoMatch);
}

TEST_CASE("the two forms may carry distinct single-form constants") {
    // an eigenform and its quadratic twist each satisfy their own one-form
    // congruence; at p = 2 mod 3 the twist flips the sign, so the pair is
    // class one with two different constants
    PrimeReport r5 = classify_prime(G(), F(), 5, 40);
    CHECK(r5.kind == AsdCase::CaseOne);
    REQUIRE(r5.c);
    REQUIRE(r5.c_b);
    CHECK(signed_residue(*r5.c, 25) == -6);
    CHECK(signed_residue(*r5.c_b, 25) == 6);
    CHECK(r5.str().find("c = -6 / 6 (mod 25)") != std::string::npos);

    // at p = 1 mod 3 the twist is invisible and the constants coincide
    PrimeReport r13 = classify_prime(G(), F(), 13, 40);
    CHECK(r13.kind == AsdCase::CaseOne);
    REQUIRE(r13.c_b);
    CHECK(*r13.c == *r13.c_b);
    CHECK(signed_residue(*r13.c, 169) == 10);
    CHECK(r13.str().find('/') == std::string::npos);
}

TEST_CASE("three-term congruence against the comparison newform") {
    auto ps = primes_in(5, 17);
    auto cp = cp_from(F(), ps);
    auto chi = chi_minus4(ps);

    // each form alone passes at p not congruent to 5 mod 12
    for (long long p : {7LL, 11LL, 13LL})
        for (const CoefficientTable* t : {&H1(), &H2()}) {
            AsdResult r = asd_check(*t, cp, chi, 3, p, 600 / p, 48);
            CHECK(r.ok);
        }

    // at p = 5 mod 12 each form fails alone; the first even index breaks it
    AsdResult alone = asd_check(H1(), cp, chi, 3, 5, 120, 48);
    CHECK_FALSE(alone.ok);
    CHECK(alone.failure->n == 2);

    // the sum of the pair passes at every prime class
    CoefficientTable sum =
        CoefficientTable::linear_combination(rat(1), H1(), rat(1), H2(), "h1+h2");
    CHECK(asd_check(sum, cp, chi, 3, 5, 120, 48).ok);
    CHECK(asd_check(sum, cp, chi, 3, 17, 35, 48).ok);

    // Scaling the second summand by p^2 + 1 preserves the sum only modulo
    // p^2, but rows with p | n demand valuation 2 vp(n) + 2 >= 4, and there
    // the combination genuinely diverges from the plain sum.  The first such
    // row, n = 2p, is a counterexample, not a scan artifact.
    CoefficientTable shifted =
        CoefficientTable::linear_combination(rat(1), H1(), rat(26), H2(), "h1+26h2");
    AsdResult sh = asd_check(shifted, cp, chi, 3, 5, 120, 48);
    CHECK_FALSE(sh.ok);
    CHECK(sh.failure->n == 10);
    CHECK(sh.failure->required_vp == 4);
    CHECK(sh.failure->actual_vp.v == 2);
    AsdResult sh17 = asd_check(
        CoefficientTable::linear_combination(rat(1), H1(), rat(290), H2(), "h1+290h2"),
        cp, chi, 3, 17, 35, 48);
    CHECK_FALSE(sh17.ok);
    CHECK(sh17.failure->n == 34);

    // the difference instead pairs with the mod-12 quadratic twist of the
    // newform: c_p picks up a sign of -1 exactly when p = 5 mod 12
    CoefficientTable diff =
        CoefficientTable::linear_combination(rat(1), H1(), rat(-1), H2(), "h1-h2");
    std::map<long long, Int> cpt;
    for (long long p : ps)
        cpt[p] = Int(kronecker(p, 3) * kronecker(-1, p)) * F().a(p).get_num();
    CHECK(asd_check(diff, cpt, chi, 3, 5, 120, 48).ok);
    CHECK(asd_check(diff, cpt, chi, 3, 13, 46, 48).ok);
    CHECK(asd_check(diff, cpt, chi, 3, 17, 35, 48).ok);
}

TEST_CASE("twist pattern detection") {
    auto ps = primes_in(5, 199);

    SUBCASE("identical data is the trivial pattern") {
        std::map<long long, Rat> ap;
        std::map<long long, Int> cp;
        for (long long p : ps) {
            ap[p] = F().a(p);
            cp[p] = F().a(p).get_num();
        }
        auto pat = twist_detect(ap, cp, ps);
        REQUIRE(pat.has_value());
        CHECK(pat->modulus == 1);
        for (const auto& [p, s] : pat->prime_sign) CHECK(s >= 0);
    }

    SUBCASE("the worked newform is a quadratic twist of the base form") {
        std::map<long long, Rat> ap;
        std::map<long long, Int> cp;
        for (long long p : ps) {
            ap[p] = G().a(p);
            cp[p] = F().a(p).get_num();
        }
        auto pat = twist_detect(ap, cp, ps);
        REQUIRE(pat.has_value());
        CHECK(pat->modulus == 3);
        CHECK(pat->class_sign.at(1) == 1);
        CHECK(pat->class_sign.at(2) == -1);
        for (long long p : ps) {
            if (p % 4 == 3)
                CHECK(pat->prime_sign.at(p) == 0); // both coefficients vanish
            else
                CHECK(pat->prime_sign.at(p) == kronecker(p, 3));
        }
    }

    SUBCASE("a single incompatible prime kills the pattern") {
        std::map<long long, Rat> ap;
        std::map<long long, Int> cp;
        for (long long p : ps) {
            ap[p] = G().a(p);
            cp[p] = F().a(p).get_num();
        }
        cp[13] = 11;
        CHECK_FALSE(twist_detect(ap, cp, ps).has_value());
    }

    SUBCASE("random signs admit no small modulus") {
        std::mt19937_64 rng(271828);
        auto many = primes_in(5, 293);
        std::map<long long, Rat> ap;
        std::map<long long, Int> cp;
        for (long long p : many) {
            ap[p] = rat(p + 1);
            cp[p] = Int(static_cast<long>((rng() % 2 == 0 ? 1 : -1) * (p + 1)));
        }
        CHECK_FALSE(twist_detect(ap, cp, many, 24).has_value());
    }

    SUBCASE("missing data is an error") {
        std::map<long long, Rat> ap;
        std::map<long long, Int> cp;
        CHECK_THROWS_AS(twist_detect(ap, cp, {5}), const Error&);
    }
}

TEST_CASE("report rendering") {
    AsdResult ok;
    ok.ok = true;
    ok.checked = 40;
    CHECK(ok.str() == "ok (40 congruences)");

    AsdResult bad;
    bad.ok = false;
    bad.failure = AsdFailure{8, rat(-6), 2, Valuation{0, false}};
    CHECK(bad.str() == "fail at n=8: vp(-6) = 0 < 2");

    PrimeReport one;
    one.p = 5;
    one.kind = AsdCase::CaseOne;
    one.c = 6;
    one.witnesses = 16;
    CHECK(one.str() == "p=5: case 1, c = 6 (mod 25) [witnesses=16, skipped=0]");

    PrimeReport two;
    two.p = 13;
    two.kind = AsdCase::CaseTwo;
    two.ratio_ab = 10;
    two.ratio_ba = 10;
    two.alpha_sq = 1;
    two.cp_sq = 100;
    two.witnesses = 20;
    two.skipped = 1;
    CHECK(two.str() ==
          "p=13: case 2, constants 10, 10 (mod 169), alpha^2 = 1, c_p^2 = -69 "
          "[witnesses=20, skipped=1]");

    PrimeReport degen;
    degen.p = 7;
    degen.kind = AsdCase::CaseTwo;
    degen.ratio_ab = 0;
    degen.ratio_ba = 0;
    degen.cp_sq = 0;
    degen.degenerate = true;
    degen.witnesses = 12;
    degen.skipped = 3;
    CHECK(degen.str() == "p=7: case 2, constants 0, 0 (mod 49), degenerate "
                         "[witnesses=12, skipped=3]");

    PrimeReport none;
    none.p = 11;
    none.kind = AsdCase::NoMatch;
    CHECK(none.str() == "p=11: no match");

    TwistPattern pat;
    pat.modulus = 3;
    pat.class_sign = {{1, 1}, {2, -1}};
    CHECK(pat.str() == "sign pattern mod 3: 1 -> +1 2 -> -1");
}
