#include "etaq/asd.hpp"

#include <algorithm>
#include <sstream>

namespace etaq {

CoefficientTable::CoefficientTable(std::string form_id, long long ramification,
                                   std::vector<Rat> coeffs)
    : id_(std::move(form_id)), mu_(ramification), coeffs_(std::move(coeffs)) {
    if (mu_ < 1) throw Error("ramification must be positive");
}

CoefficientTable CoefficientTable::from_series(const FracSeries& f, std::string form_id) {
    FracSeries c = f.canonicalized();
    if (c.is_zero()) throw ZeroSeries("cannot tabulate a series with no known terms");
    if (*c.leading_index() < 1)
        throw Error("series must vanish at infinity: leading exponent is not positive");
    long long count = std::max<long long>(c.trunc_index() - 1, 0);
    std::vector<Rat> a(static_cast<std::size_t>(count), Rat(0));
    for (const auto& [e, coef] : c.terms()) a[static_cast<std::size_t>(e - 1)] = coef;
    return CoefficientTable(std::move(form_id), c.ramification(), std::move(a));
}

const Rat& CoefficientTable::a(long long n) const {
    if (n < 1 || n > max_n())
        throw InsufficientCoefficients("index " + std::to_string(n) + " outside table 1.." +
                                       std::to_string(max_n()));
    return coeffs_[static_cast<std::size_t>(n - 1)];
}

CoefficientTable CoefficientTable::scaled(const Rat& c, std::string form_id) const {
    std::vector<Rat> a(coeffs_);
    for (Rat& x : a) x *= c;
    return CoefficientTable(form_id.empty() ? id_ : std::move(form_id), mu_, std::move(a));
}

CoefficientTable CoefficientTable::linear_combination(const Rat& ca, const CoefficientTable& A,
                                                      const Rat& cb, const CoefficientTable& B,
                                                      std::string form_id) {
    if (A.mu_ != B.mu_)
        throw Error("cannot combine tables with ramifications " + std::to_string(A.mu_) +
                    " and " + std::to_string(B.mu_));
    std::size_t count = std::min(A.coeffs_.size(), B.coeffs_.size());
    std::vector<Rat> a(count);
    for (std::size_t i = 0; i < count; ++i) a[i] = ca * A.coeffs_[i] + cb * B.coeffs_[i];
    return CoefficientTable(std::move(form_id), A.mu_, std::move(a));
}

std::string AsdResult::str() const {
    std::ostringstream os;
    if (ok) {
        os << "ok (" << checked << " congruences)";
    } else {
        os << "fail at n=" << failure->n << ": vp(" << rat_str(failure->numerator) << ") = ";
        if (failure->actual_vp.infinite)
            os << "inf";
        else
            os << failure->actual_vp.v;
        os << " < " << failure->required_vp;
    }
    return os.str();
}

AsdResult asd_check(const CoefficientTable& h, const std::map<long long, Int>& cp,
                    const std::map<long long, Int>& chi, int weight, long long p,
                    long long n_max, long long bad_modulus) {
    if (p < 2) throw Error("p must be a prime >= 2");
    if (bad_modulus != 0 && bad_modulus % p == 0)
        throw Error("p=" + std::to_string(p) + " divides the excluded modulus " +
                    std::to_string(bad_modulus));
    auto itc = cp.find(p);
    if (itc == cp.end()) throw Error("no c_p supplied for p=" + std::to_string(p));
    auto itx = chi.find(p);
    if (itx == chi.end()) throw Error("no chi(p) supplied for p=" + std::to_string(p));
    if (h.max_n() < n_max * p)
        throw InsufficientCoefficients("table " + h.form_id() + " ends at " +
                                       std::to_string(h.max_n()) + ", need " +
                                       std::to_string(n_max * p));

    Int pk(1);
    for (int i = 1; i < weight; ++i) pk *= static_cast<long>(p);
    Rat c(itc->second), xk(itx->second * pk);

    AsdResult res;
    res.ok = true;
    for (long long n = 1; n <= n_max; ++n) {
        Rat num = h.a(n * p) - c * h.a(n);
        long long vnp = 1;
        if (n % p == 0) {
            num += xk * h.a(n / p);
            for (long long r = n; r % p == 0; r /= p) ++vnp;
        }
        long long required = (weight - 1) * vnp;
        Valuation actual = vp(num, p);
        if (!actual.at_least(required)) {
            res.ok = false;
            res.failure = AsdFailure{n, num, required, actual};
            return res;
        }
        ++res.checked;
    }
    return res;
}

Case1Result case1_scan(const CoefficientTable& a, long long p, long long n_max,
                       long long witness_min) {
    if (p < 2) throw Error("p must be a prime >= 2");
    if (a.max_n() < n_max * p)
        throw InsufficientCoefficients("table " + a.form_id() + " ends at " +
                                       std::to_string(a.max_n()) + ", need " +
                                       std::to_string(n_max * p));
    const std::uint64_t m = static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(p);
    Case1Result r;
    std::optional<std::uint64_t> c;
    for (long long n = 1; n <= n_max; ++n) {
        if (n % p == 0) continue;
        const Rat& an = a.a(n);
        Valuation v = vp(an, p);
        if (v.infinite || v.v != 0) {
            ++r.skipped;
            continue;
        }
        auto top = mod_reduce(a.a(n * p), m);
        if (!top) {
            ++r.skipped;
            continue;
        }
        std::uint64_t bottom = *inv_mod(*mod_reduce(an, m), m);
        std::uint64_t ratio = mulmod_u64(*top, bottom, m);
        if (!c)
            c = ratio;
        else if (*c != ratio)
            return r; // ratio varies: no constant, counts show progress
        ++r.witnesses;
    }
    if (r.witnesses >= witness_min) r.constant = c;
    return r;
}

Case2Result case2_scan(const CoefficientTable& a, const CoefficientTable& b, long long p,
                       long long n_max, long long witness_min) {
    if (p < 2) throw Error("p must be a prime >= 2");
    if (a.ramification() != b.ramification())
        throw Error("cross-ratio scan needs a common ramification");
    for (const CoefficientTable* t : {&a, &b})
        if (t->max_n() < n_max * p)
            throw InsufficientCoefficients("table " + t->form_id() + " ends at " +
                                           std::to_string(t->max_n()) + ", need " +
                                           std::to_string(n_max * p));
    const std::uint64_t m = static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(p);
    Case2Result r;
    std::optional<std::uint64_t> cab, cba;
    auto column = [&](const CoefficientTable& top, const CoefficientTable& bottom, long long n,
                      std::optional<std::uint64_t>& constant, long long& witnesses) -> bool {
        const Rat& dn = bottom.a(n);
        Valuation v = vp(dn, p);
        if (v.infinite || v.v != 0) {
            ++r.skipped;
            return true;
        }
        auto tn = mod_reduce(top.a(n * p), m);
        if (!tn) {
            ++r.skipped;
            return true;
        }
        std::uint64_t ratio = mulmod_u64(*tn, *inv_mod(*mod_reduce(dn, m), m), m);
        if (!constant)
            constant = ratio;
        else if (*constant != ratio)
            return false;
        ++witnesses;
        return true;
    };
    for (long long n = 1; n <= n_max; ++n) {
        if (n % p == 0) continue;
        if (!column(a, b, n, cab, r.witnesses_ab)) return r;
        if (!column(b, a, n, cba, r.witnesses_ba)) return r;
    }
    r.ratio_ab = cab;
    r.ratio_ba = cba;
    r.matched = cab && cba && r.witnesses_ab >= witness_min && r.witnesses_ba >= witness_min;
    if (r.matched) {
        r.degenerate = (*cab == 0 || *cba == 0);
        r.cp_sq = mulmod_u64(*cab, *cba, m);
        if (auto inv = inv_mod(*cba, m)) r.alpha_sq = mulmod_u64(*cab, *inv, m);
    }
    return r;
}

std::string asd_case_str(AsdCase c) {
    switch (c) {
        case AsdCase::CaseOne: return "case 1";
        case AsdCase::CaseTwo: return "case 2";
        default: return "no match";
    }
}

std::string PrimeReport::str() const {
    const std::uint64_t m = static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(p);
    std::ostringstream os;
    os << "p=" << p << ": " << asd_case_str(kind);
    if (kind == AsdCase::CaseOne) {
        if (c_b && *c_b != *c)
            os << ", c = " << signed_residue(*c, m) << " / " << signed_residue(*c_b, m)
               << " (mod " << m << ")";
        else
            os << ", c = " << signed_residue(*c, m) << " (mod " << m << ")";
    } else if (kind == AsdCase::CaseTwo) {
        os << ", constants " << signed_residue(*ratio_ab, m) << ", "
           << signed_residue(*ratio_ba, m) << " (mod " << m << ")";
        if (degenerate) {
            os << ", degenerate";
        } else {
            if (alpha_sq) os << ", alpha^2 = " << signed_residue(*alpha_sq, m);
            os << ", c_p^2 = " << signed_residue(*cp_sq, m);
        }
    }
    if (kind != AsdCase::NoMatch)
        os << " [witnesses=" << witnesses << ", skipped=" << skipped << "]";
    return os.str();
}

PrimeReport classify_prime(const CoefficientTable& a, const CoefficientTable& b, long long p,
                           long long n_max, long long witness_min) {
    PrimeReport rep;
    rep.p = p;
    Case1Result ca = case1_scan(a, p, n_max, witness_min);
    Case1Result cb = (&a == &b) ? ca : case1_scan(b, p, n_max, witness_min);
    if (ca.constant && cb.constant && *ca.constant != 0 && *cb.constant != 0) {
        rep.kind = AsdCase::CaseOne;
        rep.c = ca.constant;
        rep.c_b = cb.constant;
        rep.witnesses = std::min(ca.witnesses, cb.witnesses);
        rep.skipped = ca.skipped + cb.skipped;
        return rep;
    }
    Case2Result c2 = case2_scan(a, b, p, n_max, witness_min);
    rep.skipped = c2.skipped;
    if (c2.matched) {
        rep.kind = AsdCase::CaseTwo;
        rep.ratio_ab = c2.ratio_ab;
        rep.ratio_ba = c2.ratio_ba;
        rep.alpha_sq = c2.alpha_sq;
        rep.cp_sq = c2.cp_sq;
        rep.degenerate = c2.degenerate;
        rep.witnesses = std::min(c2.witnesses_ab, c2.witnesses_ba);
    }
    return rep;
}

std::string TwistPattern::str() const {
    std::ostringstream os;
    os << "sign pattern mod " << modulus << ":";
    for (const auto& [r, s] : class_sign) os << " " << r << " -> " << (s > 0 ? "+1" : "-1");
    if (class_sign.empty()) os << " (unconstrained)";
    return os.str();
}

std::optional<TwistPattern> twist_detect(const std::map<long long, Rat>& ap,
                                         const std::map<long long, Int>& cp,
                                         const std::vector<long long>& primes,
                                         long long max_modulus) {
    TwistPattern pat;
    for (long long p : primes) {
        auto ia = ap.find(p);
        auto ic = cp.find(p);
        if (ia == ap.end() || ic == cp.end())
            throw Error("missing coefficient data at p=" + std::to_string(p));
        const std::uint64_t m = static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(p);
        auto A = mod_reduce(ia->second, m);
        if (!A) {
            pat.prime_sign[p] = 0; // not comparable at p: leaves the sign free
            continue;
        }
        Int cm = ic->second % static_cast<unsigned long>(m);
        if (cm < 0) cm += static_cast<unsigned long>(m);
        std::uint64_t C = cm.get_ui();
        std::uint64_t negA = (*A == 0) ? 0 : m - *A;
        bool plus = (C == *A), minus = (C == negA);
        if (plus && minus)
            pat.prime_sign[p] = 0;
        else if (plus)
            pat.prime_sign[p] = 1;
        else if (minus)
            pat.prime_sign[p] = -1;
        else
            return std::nullopt; // c_p is not +-a_p mod p^2
    }
    for (long long mod = 1; mod <= max_modulus; ++mod) {
        std::map<long long, int> cls;
        bool ok = true;
        for (const auto& [p, s] : pat.prime_sign) {
            if (s == 0) continue;
            auto [it, inserted] = cls.emplace(p % mod, s);
            if (!inserted && it->second != s) {
                ok = false;
                break;
            }
        }
        if (ok) {
            pat.modulus = mod;
            pat.class_sign = std::move(cls);
            return pat;
        }
    }
    return std::nullopt;
}

} // namespace etaq
