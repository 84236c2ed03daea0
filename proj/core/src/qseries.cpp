#include "etaq/qseries.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace etaq {

namespace {

long long lcm_ll(long long a, long long b) {
    return a / std::gcd(a, b) * b;
}

// exponent as exact pair (num, den) from a small Rat
long long rat_to_index(const Rat& x, long long ram, const char* what) {
    Rat scaled = x * rat(ram);
    if (scaled.get_den() != 1)
        throw Error(std::string(what) + ": exponent not on grid");
    if (!scaled.get_num().fits_slong_p())
        throw Error(std::string(what) + ": exponent out of range");
    return scaled.get_num().get_si();
}

} // namespace

void FracSeries::normalize() {
    assert(ram_ >= 1);
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (t.first >= trunc_) continue; // in the unknown region
        if (!out.empty() && out.back().first == t.first) {
            out.back().second += t.second;
            if (sgn(out.back().second) == 0) out.pop_back();
            continue;
        }
        if (sgn(t.second) != 0) out.push_back(std::move(t));
    }
    terms_ = std::move(out);
}

FracSeries FracSeries::zero(long long ram, long long trunc_index) {
    FracSeries s;
    s.ram_ = ram;
    s.trunc_ = trunc_index;
    return s;
}

FracSeries FracSeries::one(long long ram, long long trunc_index) {
    return from_terms(ram, {{0, Rat(1)}}, trunc_index);
}

FracSeries FracSeries::monomial(const Rat& c, const Rat& exponent, const Rat& trunc_exponent) {
    long long ram = lcm_ll(static_cast<long long>(exponent.get_den().get_si()),
                           static_cast<long long>(trunc_exponent.get_den().get_si()));
    long long e = rat_to_index(exponent, ram, "monomial");
    long long t = rat_to_index(trunc_exponent, ram, "monomial");
    return from_terms(ram, {{e, c}}, t);
}

FracSeries FracSeries::from_terms(long long ram, std::vector<Term> terms, long long trunc_index) {
    if (ram < 1) throw Error("from_terms: ramification must be >= 1");
    FracSeries s;
    s.ram_ = ram;
    s.trunc_ = trunc_index;
    s.terms_ = std::move(terms);
    s.normalize();
    return s;
}

std::optional<long long> FracSeries::leading_index() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.front().first;
}

std::optional<Rat> FracSeries::leading_exponent() const {
    if (terms_.empty()) return std::nullopt;
    return rat(terms_.front().first, ram_);
}

const Rat& FracSeries::leading_coefficient() const {
    if (terms_.empty()) throw ZeroSeries("leading_coefficient: no known nonzero term");
    return terms_.front().second;
}

Rat FracSeries::coefficient(const Rat& exponent) const {
    if (exponent >= trunc_exponent())
        throw BeyondTruncation("coefficient: exponent at or beyond O(q^(" +
                               rat_str(trunc_exponent()) + "))");
    Rat scaled = exponent * rat(ram_);
    if (scaled.get_den() != 1) return Rat(0); // off-grid below trunc
    long long e = scaled.get_num().get_si();
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, long long key) { return t.first < key; });
    if (it != terms_.end() && it->first == e) return it->second;
    return Rat(0);
}

FracSeries FracSeries::rescaled(long long new_ram) const {
    if (new_ram % ram_ != 0) throw Error("rescaled: grid must refine the current one");
    long long f = new_ram / ram_;
    FracSeries s;
    s.ram_ = new_ram;
    s.trunc_ = trunc_ * f;
    s.terms_.reserve(terms_.size());
    for (auto& t : terms_) s.terms_.emplace_back(t.first * f, t.second);
    return s;
}

FracSeries FracSeries::shifted(const Rat& dexp) const {
    long long new_ram = lcm_ll(ram_, static_cast<long long>(dexp.get_den().get_si()));
    FracSeries s = rescaled(new_ram);
    long long off = rat_to_index(dexp, new_ram, "shifted");
    s.trunc_ += off;
    for (auto& t : s.terms_) t.first += off;
    return s;
}

FracSeries FracSeries::substituted(long long scale) const {
    if (scale < 1) throw Error("substituted: scale must be >= 1");
    FracSeries s;
    s.ram_ = ram_;
    s.trunc_ = trunc_ * scale;
    s.terms_.reserve(terms_.size());
    for (auto& t : terms_) s.terms_.emplace_back(t.first * scale, t.second);
    return s;
}

FracSeries FracSeries::truncated(const Rat& exp_bound) const {
    Rat scaled = exp_bound * rat(ram_);
    long long t; // floor(exp_bound * ram)
    {
        Int fl;
        mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
        t = fl.get_si();
    }
    t = std::min(t, trunc_);
    FracSeries s;
    s.ram_ = ram_;
    s.trunc_ = t;
    for (auto& term : terms_) {
        if (term.first < t) s.terms_.push_back(term);
    }
    return s;
}

FracSeries FracSeries::canonicalized() const {
    long long g = ram_;
    for (auto& t : terms_) g = std::gcd(g, t.first < 0 ? -t.first : t.first);
    if (g <= 1) return *this;
    FracSeries s;
    s.ram_ = ram_ / g;
    // floor keeps the claimed precision sound; a term landing on the new
    // bound is dropped with it
    long long t2 = (trunc_ >= 0) ? trunc_ / g : -(((-trunc_) + g - 1) / g);
    s.trunc_ = t2;
    for (auto& t : terms_) {
        if (t.first / g < t2) s.terms_.emplace_back(t.first / g, t.second);
    }
    return s;
}

FracSeries FracSeries::operator-() const {
    FracSeries s(*this);
    for (auto& t : s.terms_) t.second = -t.second;
    return s;
}

FracSeries FracSeries::scaled(const Rat& c) const {
    if (sgn(c) == 0) return zero(ram_, trunc_);
    FracSeries s(*this);
    for (auto& t : s.terms_) t.second *= c;
    return s;
}

FracSeries operator+(const FracSeries& a, const FracSeries& b) {
    long long ram = lcm_ll(a.ram_, b.ram_);
    FracSeries x = a.rescaled(ram), y = b.rescaled(ram);
    FracSeries s;
    s.ram_ = ram;
    s.trunc_ = std::min(x.trunc_, y.trunc_);
    s.terms_.reserve(x.terms_.size() + y.terms_.size());
    for (auto& t : x.terms_) s.terms_.push_back(t);
    for (auto& t : y.terms_) s.terms_.push_back(t);
    s.normalize();
    return s;
}

FracSeries operator-(const FracSeries& a, const FracSeries& b) {
    return a + (-b);
}

FracSeries operator*(const FracSeries& a, const FracSeries& b) {
    long long ram = lcm_ll(a.ram_, b.ram_);
    FracSeries x = a.rescaled(ram), y = b.rescaled(ram);

    // Unknown terms of one factor meet known leading terms of the other:
    // exactness ends at min(Tx + ly, Ty + lx) (empty factor: its trunc).
    long long lx = x.terms_.empty() ? x.trunc_ : x.terms_.front().first;
    long long ly = y.terms_.empty() ? y.trunc_ : y.terms_.front().first;
    long long bound = std::min(x.trunc_ + ly, y.trunc_ + lx);

    FracSeries s;
    s.ram_ = ram;
    s.trunc_ = bound;
    if (x.terms_.empty() || y.terms_.empty()) return s;

    long long base = lx + ly;
    if (bound <= base) return s;
    std::vector<Rat> acc(static_cast<size_t>(bound - base));
    for (auto& [i, ci] : x.terms_) {
        for (auto& [j, cj] : y.terms_) {
            long long k = i + j;
            if (k >= bound) break; // y sorted ascending
            acc[static_cast<size_t>(k - base)] += ci * cj;
        }
    }
    for (size_t k = 0; k < acc.size(); ++k) {
        if (sgn(acc[k]) != 0)
            s.terms_.emplace_back(base + static_cast<long long>(k), std::move(acc[k]));
    }
    return s;
}

FracSeries FracSeries::inverse() const {
    if (terms_.empty()) throw ZeroSeries("inverse: series has no known nonzero term");
    long long l = terms_.front().first;
    const Rat& c = terms_.front().second;
    long long R = trunc_ - l; // relative precision, > 0
    // s = c q^(l/M) (1 + u); (1+u)^-1 by v_k = -sum u_j v_{k-j}
    std::vector<Term> u;
    u.reserve(terms_.size() - 1);
    for (size_t i = 1; i < terms_.size(); ++i)
        u.emplace_back(terms_[i].first - l, terms_[i].second / c);
    std::vector<Rat> v(static_cast<size_t>(R));
    v[0] = 1;
    for (long long k = 1; k < R; ++k) {
        Rat sum(0);
        for (auto& [j, uj] : u) {
            if (j > k) break;
            sum += uj * v[static_cast<size_t>(k - j)];
        }
        v[static_cast<size_t>(k)] = -sum;
    }
    FracSeries s;
    s.ram_ = ram_;
    s.trunc_ = trunc_ - 2 * l;
    Rat cinv = Rat(1) / c;
    for (long long k = 0; k < R; ++k) {
        if (sgn(v[static_cast<size_t>(k)]) != 0)
            s.terms_.emplace_back(k - l, v[static_cast<size_t>(k)] * cinv);
    }
    return s;
}

FracSeries FracSeries::pow(long long k) const {
    if (k < 0) return inverse().pow(-k);
    if (k == 0) {
        long long R = terms_.empty() ? trunc_ : trunc_ - terms_.front().first;
        return one(ram_, R);
    }
    FracSeries base(*this), acc;
    bool have = false;
    unsigned long long e = static_cast<unsigned long long>(k);
    while (e) {
        if (e & 1) {
            acc = have ? acc * base : base;
            have = true;
        }
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

FracSeries FracSeries::nth_root(unsigned long n) const {
    if (n == 0) throw Error("nth_root: n must be >= 1");
    if (n == 1) return *this;
    if (terms_.empty()) throw ZeroSeries("nth_root: series has no known nonzero term");
    long long l = terms_.front().first;
    const Rat& c = terms_.front().second;
    auto cr = nth_root_exact(c, n);
    if (!cr)
        throw NotAnNthPower("nth_root: leading coefficient " + rat_str(c) +
                            " is not an exact " + std::to_string(n) + "th power");
    long long R = trunc_ - l;
    std::vector<Term> u;
    u.reserve(terms_.size() - 1);
    for (size_t i = 1; i < terms_.size(); ++i)
        u.emplace_back(terms_[i].first - l, terms_[i].second / c);
    // f = (1+u)^(1/n): k f_k = sum_j (j/n - (k-j)) u_j f_{k-j}
    Rat alpha = rat(1, static_cast<long long>(n));
    std::vector<Rat> f(static_cast<size_t>(R));
    f[0] = 1;
    for (long long k = 1; k < R; ++k) {
        Rat sum(0);
        for (auto& [j, uj] : u) {
            if (j > k) break;
            Rat w = alpha * rat(j) - rat(k - j);
            sum += w * uj * f[static_cast<size_t>(k - j)];
        }
        f[static_cast<size_t>(k)] = sum / rat(k);
    }
    FracSeries s;
    long long nn = static_cast<long long>(n);
    if (l % nn == 0) {
        s.ram_ = ram_;
        s.trunc_ = l / nn + R;
        for (long long k = 0; k < R; ++k)
            if (sgn(f[static_cast<size_t>(k)]) != 0)
                s.terms_.emplace_back(l / nn + k, f[static_cast<size_t>(k)] * *cr);
    } else {
        s.ram_ = ram_ * nn;
        s.trunc_ = l + R * nn;
        for (long long k = 0; k < R; ++k)
            if (sgn(f[static_cast<size_t>(k)]) != 0)
                s.terms_.emplace_back(l + k * nn, f[static_cast<size_t>(k)] * *cr);
    }
    return s;
}

namespace {

std::string exp_str(long long e, long long ram) {
    long long g = std::gcd(e < 0 ? -e : e, ram);
    if (g == 0) g = 1;
    long long num = e / g, den = ram / g;
    if (den == 1) return std::to_string(num);
    return "(" + std::to_string(num) + "/" + std::to_string(den) + ")";
}

} // namespace

std::string FracSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : terms_) {
        Rat ac = abs(c);
        if (first) {
            if (sgn(c) < 0) os << "-";
            first = false;
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        bool unit = (ac == 1);
        if (e == 0) {
            os << rat_str(ac);
        } else {
            if (!unit) os << rat_str(ac) << "*";
            std::string ex = exp_str(e, ram_);
            if (ex == "1")
                os << "q";
            else
                os << "q^" << ex;
        }
    }
    if (!first) os << " + ";
    os << "O(q^" << exp_str(trunc_, ram_) << ")";
    return os.str();
}

bool same_series(const FracSeries& a, const FracSeries& b) {
    long long ram = a.ramification() / std::gcd(a.ramification(), b.ramification()) * b.ramification();
    FracSeries x = a.rescaled(ram), y = b.rescaled(ram);
    Rat bound = std::min(x.trunc_exponent(), y.trunc_exponent());
    return x.truncated(bound).terms() == y.truncated(bound).terms();
}

FracSeries euler_function(long long order) {
    std::vector<FracSeries::Term> terms;
    terms.emplace_back(0, Rat(1));
    for (long long k = 1;; ++k) {
        long long g1 = k * (3 * k - 1) / 2; // pentagonal numbers
        long long g2 = k * (3 * k + 1) / 2;
        if (g1 >= order && g2 >= order) break;
        Rat sign((k % 2 == 0) ? 1 : -1);
        if (g1 < order) terms.emplace_back(g1, sign);
        if (g2 < order) terms.emplace_back(g2, sign);
    }
    return FracSeries::from_terms(1, std::move(terms), order);
}

} // namespace etaq
