#pragma once

#include <asnp/errors.hpp>
#include <asnp/ff.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace asnp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Element of Z[zeta_p] in the basis 1, zeta, ..., zeta^{p-2}.
class CycInt {
public:
    CycInt() = default;
    explicit CycInt(u64 p) : p_(p), c_(p - 1) {}
    CycInt(u64 p, std::vector<BigInt> coords) : p_(p), c_(std::move(coords)) {
        if (c_.size() > p - 1) {
            // fold zeta^{p-1} = -(1 + ... + zeta^{p-2})
            std::vector<BigInt> full(p, 0);
            for (std::size_t i = 0; i < c_.size(); ++i) full[i % p] += c_[i];
            c_.assign(p - 1, 0);
            for (std::size_t i = 0; i + 1 < p; ++i) c_[i] = full[i] - full[p - 1];
        } else {
            c_.resize(p - 1, 0);
        }
    }
    static CycInt integer(u64 p, const BigInt& a) {
        CycInt r(p);
        r.c_[0] = a;
        return r;
    }
    // zeta^k
    static CycInt zeta_power(u64 p, u64 k) {
        std::vector<BigInt> v(p, 0);
        v[k % p] = 1;
        return CycInt(p, v);
    }

    u64 p() const { return p_; }
    const std::vector<BigInt>& coords() const { return c_; }
    bool is_zero() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }

    CycInt operator+(const CycInt& o) const {
        CycInt r(p_);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
        return r;
    }
    CycInt operator-(const CycInt& o) const {
        CycInt r(p_);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
        return r;
    }
    CycInt operator*(const CycInt& o) const {
        std::vector<BigInt> full(p_, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) {
                if (o.c_[j] == 0) continue;
                full[(i + j) % p_] += c_[i] * o.c_[j];
            }
        }
        return CycInt(p_, std::move(full));
    }
    bool operator==(const CycInt& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const CycInt& o) const { return !(*this == o); }

    // Exact division by an integer; every coordinate must be divisible.
    CycInt div_exact(const BigInt& k) const {
        CycInt r(p_);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] % k != 0) throw std::logic_error("non-exact division in Z[zeta_p]");
            r.c_[i] = c_[i] / k;
        }
        return r;
    }

    // Galois action zeta -> zeta^a, gcd(a, p) = 1.
    CycInt galois(u64 a) const {
        std::vector<BigInt> full(p_, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) full[(i * a) % p_] += c_[i];
        return CycInt(p_, std::move(full));
    }

private:
    u64 p_ = 0;
    std::vector<BigInt> c_;
};

inline CycInt cyc_from_exponent_counts(u64 p, const std::vector<BigInt>& counts) {
    if (counts.size() != p) throw DomainError("expected p exponent counts");
    return CycInt(p, counts);
}

inline CycInt cyc_from_exponent_counts(u64 p, const std::vector<u64>& counts) {
    std::vector<BigInt> v(counts.begin(), counts.end());
    return cyc_from_exponent_counts(p, v);
}

// nullopt encodes +infinity (the zero element).
using PiValuation = std::optional<u64>;

inline u64 p_adic_valuation(BigInt a, u64 p) {
    u64 k = 0;
    a = abs(a);
    while (a % p == 0) {
        a /= p;
        ++k;
    }
    return k;
}

// v_pi with v_pi(p) = p-1, via the expansion in lambda = zeta - 1.
inline PiValuation pi_valuation(const CycInt& x) {
    if (x.is_zero()) return std::nullopt;
    const u64 p = x.p();
    const auto& a = x.coords();
    const std::size_t n = a.size();
    // b_j = sum_i a_i * C(i, j)
    std::vector<BigInt> b(n, 0);
    std::vector<BigInt> binom(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        // row i of Pascal's triangle
        for (std::size_t j = i; j > 0; --j) binom[j] += binom[j - 1];
        binom[0] = 1;
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j <= i; ++j) b[j] += a[i] * binom[j];
    }
    u64 best = UINT64_MAX;
    for (std::size_t j = 0; j < n; ++j) {
        if (b[j] == 0) continue;
        best = std::min<u64>(best, j + (p - 1) * p_adic_valuation(b[j], p));
    }
    return best;
}

// Normalized v_q = v_pi / (m(p-1)); nullopt for +infinity.
inline std::optional<Rational> vq(const CycInt& x, unsigned m) {
    if (m == 0) throw DomainError("m must be >= 1");
    auto v = pi_valuation(x);
    if (!v) return std::nullopt;
    return Rational(BigInt(*v), BigInt(u64(m) * (x.p() - 1)));
}

inline std::string rational_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

inline std::string valuation_string(const std::optional<Rational>& v) {
    return v ? rational_string(*v) : std::string("inf");
}

} // namespace asnp
