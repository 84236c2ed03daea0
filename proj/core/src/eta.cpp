#include "etaq/eta.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace etaq {

EtaQuotient::EtaQuotient(std::vector<EtaTerm> terms) : terms_(std::move(terms)) {
    for (auto& t : terms_) {
        if (t.delta < 1) throw Error("eta scale must be a positive integer");
    }
    std::sort(terms_.begin(), terms_.end(),
              [](const EtaTerm& a, const EtaTerm& b) { return a.delta < b.delta; });
    std::vector<EtaTerm> out;
    for (auto& t : terms_) {
        if (!out.empty() && out.back().delta == t.delta) {
            out.back().exponent += t.exponent;
            if (sgn(out.back().exponent) == 0) out.pop_back();
            continue;
        }
        if (sgn(t.exponent) != 0) out.push_back(t);
    }
    terms_ = std::move(out);
}

EtaQuotient EtaQuotient::from_integer_exponents(
    const std::vector<std::pair<long long, long long>>& delta_exp) {
    std::vector<EtaTerm> terms;
    terms.reserve(delta_exp.size());
    for (auto& [d, e] : delta_exp) terms.push_back(EtaTerm{d, rat(e)});
    return EtaQuotient(std::move(terms));
}

Rat EtaQuotient::weight() const {
    Rat w(0);
    for (auto& t : terms_) w += t.exponent;
    return w / 2;
}

Rat EtaQuotient::leading_exponent() const {
    Rat l(0);
    for (auto& t : terms_) l += t.exponent * rat(t.delta);
    return l / 24;
}

bool EtaQuotient::integral_exponents() const {
    for (auto& t : terms_)
        if (t.exponent.get_den() != 1) return false;
    return true;
}

long long EtaQuotient::exponent_denominator() const {
    long long d = 1;
    for (auto& t : terms_) d = std::lcm(d, static_cast<long long>(t.exponent.get_den().get_si()));
    return d;
}

EtaQuotient EtaQuotient::inverse() const {
    std::vector<EtaTerm> terms(terms_);
    for (auto& t : terms) t.exponent = -t.exponent;
    return EtaQuotient(std::move(terms));
}

EtaQuotient EtaQuotient::scaled(const Rat& k) const {
    if (sgn(k) == 0) return EtaQuotient();
    std::vector<EtaTerm> terms(terms_);
    for (auto& t : terms) t.exponent *= k;
    return EtaQuotient(std::move(terms));
}

EtaQuotient combine(const EtaQuotient& a, const EtaQuotient& b) {
    std::vector<EtaTerm> terms(a.terms());
    terms.insert(terms.end(), b.terms().begin(), b.terms().end());
    return EtaQuotient(std::move(terms));
}

FracSeries EtaQuotient::expand(long long order) const {
    // eta(q^d)^r = q^(rd/24) * P(q^d)^r with P the Euler product; the
    // prefactors collect into one exponent shift, the unit parts stay on the
    // integer grid even through roots.
    Rat L = leading_exponent();
    Rat window = rat(order) - L;
    if (sgn(window) <= 0) {
        long long den = static_cast<long long>(L.get_den().get_si());
        return FracSeries::zero(den, order * den);
    }
    Int wceil;
    mpz_cdiv_q(wceil.get_mpz_t(), window.get_num().get_mpz_t(), window.get_den().get_mpz_t());
    long long W = wceil.get_si();

    FracSeries unit = FracSeries::one(1, W);
    for (auto& t : terms_) {
        long long steps = (W + t.delta - 1) / t.delta;
        FracSeries p = euler_function(steps).substituted(t.delta).truncated(rat(W));
        long long num = t.exponent.get_num().get_si();
        unsigned long den = t.exponent.get_den().get_ui();
        FracSeries f = p.pow(num);
        if (den > 1) f = f.nth_root(den);
        unit = unit * f.truncated(rat(W));
    }
    return unit.shifted(L).truncated(rat(order));
}

std::string EtaQuotient::str() const {
    if (terms_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (auto& t : terms_) {
        if (!first) os << "*";
        first = false;
        os << "eta(q";
        if (t.delta != 1) os << "^" << t.delta;
        os << ")";
        if (t.exponent != 1) {
            os << "^";
            if (t.exponent.get_den() == 1 && sgn(t.exponent) > 0)
                os << t.exponent.get_num().get_str();
            else
                os << "(" << rat_str(t.exponent) << ")";
        }
    }
    return os.str();
}

EtaQuotient TupleSpec::quotient() const {
    std::vector<EtaTerm> terms;
    for (int i = 0; i < 4; ++i) {
        if (exponents[i] == 0) continue;
        terms.push_back(EtaTerm{bases[i], rat(exponents[i], root)});
    }
    return EtaQuotient(std::move(terms));
}

std::string TupleSpec::str() const {
    std::ostringstream os;
    os << "[" << exponents[0] << "," << exponents[1] << "," << exponents[2] << ","
       << exponents[3] << "]@(" << bases[0] << "," << bases[1] << "," << bases[2] << ","
       << bases[3] << ")";
    return os.str();
}

long long euler_phi(long long n) {
    long long result = n, m = n;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

std::vector<long long> divisors(long long n) {
    std::vector<long long> d;
    for (long long i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            d.push_back(i);
            if (i != n / i) d.push_back(n / i);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

long long gamma0_index(long long level) {
    long long idx = level, m = level;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            idx += idx / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) idx += idx / m;
    return idx;
}

std::vector<CuspOrder> cusp_orders(const EtaQuotient& eq, long long level) {
    if (level < 1) throw Error("cusp_orders: level must be positive");
    if (!eq.integral_exponents())
        throw NonIntegralExponents("cusp_orders: exponents must be integers");
    for (auto& t : eq.terms()) {
        if (level % t.delta != 0)
            throw ScaleNotDividingLevel("cusp_orders: eta scale " + std::to_string(t.delta) +
                                        " does not divide level " + std::to_string(level));
    }
    std::vector<CuspOrder> out;
    for (long long d : divisors(level)) {
        long long g = std::gcd(d, level / d);
        Rat sum(0);
        for (auto& t : eq.terms()) {
            long long gd = std::gcd(d, t.delta);
            sum += rat(gd * gd, t.delta) * t.exponent;
        }
        Rat order = rat(level, 24 * g * d) * sum;
        out.push_back(CuspOrder{d, order, euler_phi(g)});
    }
    return out;
}

bool is_holomorphic_at_cusps(const EtaQuotient& eq, long long level) {
    for (auto& c : cusp_orders(eq, level))
        if (sgn(c.order) < 0) return false;
    return true;
}

bool is_cuspidal(const EtaQuotient& eq, long long level) {
    for (auto& c : cusp_orders(eq, level))
        if (sgn(c.order) <= 0) return false;
    return true;
}

} // namespace etaq
