#include "etaq/characters.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "etaq/ligozat.hpp"

namespace etaq {

QuadraticCharacter::QuadraticCharacter(long long modulus, std::vector<int> values)
    : m_(modulus), vals_(std::move(values)) {
    if (m_ < 1) throw Error("character modulus must be positive");
    if (static_cast<long long>(vals_.size()) != m_)
        throw Error("character table size does not match the modulus");
    if (m_ == 1) {
        if (vals_[0] != 1) throw Error("the character mod 1 is constant 1");
        return;
    }
    for (long long r = 0; r < m_; ++r) {
        bool unit = std::gcd(r, m_) == 1;
        if (unit && vals_[r] != 1 && vals_[r] != -1)
            throw Error("character must be +-1 on units");
        if (!unit && vals_[r] != 0)
            throw Error("character must vanish off units");
    }
    if (vals_[1 % m_] != 1) throw Error("character must send 1 to 1");
    for (long long a = 0; a < m_; ++a)
        for (long long b = a; b < m_; ++b)
            if (vals_[a] * vals_[b] != vals_[(a * b) % m_])
                throw Error("character table is not multiplicative");
}

QuadraticCharacter QuadraticCharacter::principal(long long modulus) {
    if (modulus < 1) throw Error("character modulus must be positive");
    std::vector<int> v(modulus, 0);
    for (long long r = 0; r < modulus; ++r)
        if (std::gcd(r, modulus) == 1 || modulus == 1) v[r] = 1;
    return QuadraticCharacter(modulus, std::move(v));
}

QuadraticCharacter QuadraticCharacter::legendre(long long p) {
    if (p < 3 || p % 2 == 0) throw Error("legendre character needs an odd prime");
    std::vector<int> v(p, 0);
    for (long long r = 1; r < p; ++r) v[r] = kronecker(r, p);
    return QuadraticCharacter(p, std::move(v));
}

int QuadraticCharacter::operator()(long long n) const {
    long long r = n % m_;
    if (r < 0) r += m_;
    return vals_[r];
}

bool QuadraticCharacter::is_principal() const {
    for (long long r = 0; r < m_; ++r)
        if (std::gcd(r, m_) == 1 && vals_[r] != 1) return false;
    return true;
}

std::string QuadraticCharacter::str() const {
    std::ostringstream os;
    os << "chi mod " << m_ << ":";
    if (m_ == 1) return os.str() + " trivial";
    for (long long r = 1; r < m_; ++r)
        if (std::gcd(r, m_) == 1) os << " " << r << "->" << (vals_[r] > 0 ? "+1" : "-1");
    return os.str();
}

std::vector<QuadraticCharacter> quadratic_characters(long long modulus) {
    if (modulus < 1) throw Error("character modulus must be positive");
    if (modulus > 200) throw Error("character enumeration is limited to small moduli");
    if (modulus == 1) return {QuadraticCharacter()};

    std::vector<long long> units;
    for (long long r = 1; r < modulus; ++r)
        if (std::gcd(r, modulus) == 1) units.push_back(r);

    // greedy generating set: each generator strictly enlarges the span
    std::vector<long long> gens;
    std::vector<char> in_span(modulus, 0);
    in_span[1] = 1;
    auto close_with = [&](long long g) {
        std::vector<long long> frontier;
        for (long long r = 1; r < modulus; ++r)
            if (in_span[r]) frontier.push_back(r);
        while (!frontier.empty()) {
            std::vector<long long> next;
            for (long long r : frontier) {
                long long s = (r * g) % modulus;
                if (!in_span[s]) {
                    in_span[s] = 1;
                    next.push_back(s);
                }
            }
            frontier = std::move(next);
        }
    };
    for (long long u : units)
        if (!in_span[u]) {
            gens.push_back(u);
            close_with(u);
        }
    if (gens.size() > 12) throw Error("character enumeration is limited to small moduli");

    std::vector<QuadraticCharacter> out;
    for (unsigned long mask = 0; mask < (1ul << gens.size()); ++mask) {
        // propagate the sign assignment to the whole unit group; a residue
        // reached twice with different signs means the assignment is not a
        // homomorphism
        std::vector<int> val(modulus, 0);
        val[1] = 1;
        bool ok = true;
        std::vector<long long> frontier{1};
        while (ok && !frontier.empty()) {
            std::vector<long long> next;
            for (long long r : frontier)
                for (size_t i = 0; i < gens.size() && ok; ++i) {
                    long long s = (r * gens[i]) % modulus;
                    int v = val[r] * ((mask >> i) & 1 ? -1 : 1);
                    if (val[s] == 0) {
                        val[s] = v;
                        next.push_back(s);
                    } else if (val[s] != v) {
                        ok = false;
                    }
                }
            frontier = std::move(next);
        }
        if (ok) out.emplace_back(modulus, std::move(val));
    }
    std::sort(out.begin(), out.end(),
              [](const QuadraticCharacter& a, const QuadraticCharacter& b) {
                  return a.values() > b.values();
              });
    return out;
}

} // namespace etaq
