#pragma once

#include <asnp/errors.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace asnp {

using u64 = std::uint64_t;

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 k = 2; k * k <= n; ++k)
        if (n % k == 0) return false;
    return true;
}

// p^e, or 0 when the result does not fit in 64 bits.
inline u64 ipow(u64 p, unsigned e) {
    u64 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > UINT64_MAX / p) return 0;
        r *= p;
    }
    return r;
}

inline std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 k = 2; k * k <= n; ++k) {
        if (n % k == 0) {
            out.push_back(k);
            while (n % k == 0) n /= k;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

namespace detail {

using Poly = std::vector<std::uint32_t>;  // little-endian, coefficients mod p

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline u64 inv_mod(u64 a, u64 p) {
    u64 r = 1, e = p - 2;
    a %= p;
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

inline Poly poly_mod(Poly a, const Poly& f, u64 p) {
    trim(a);
    Poly g = f;
    trim(g);
    const std::size_t df = g.size() - 1;
    const u64 lead_inv = inv_mod(g.back(), p);
    while (a.size() > df) {
        const std::size_t shift = a.size() - 1 - df;
        const u64 c = a.back() * lead_inv % p;
        for (std::size_t j = 0; j <= df; ++j)
            a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + (p - c) * g[j]) % p);
        trim(a);
    }
    return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + u64(a[i]) * b[j]) % p);
    }
    return poly_mod(std::move(prod), f, p);
}

inline Poly poly_powmod(Poly a, u64 e, const Poly& f, u64 p) {
    Poly r{1};
    a = poly_mod(std::move(a), f, p);
    while (e) {
        if (e & 1) r = poly_mulmod(r, a, f, p);
        e >>= 1;
        if (e) a = poly_mulmod(a, a, f, p);
    }
    return r;
}

inline Poly poly_gcd(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Rabin-style test: f of degree m is irreducible iff gcd(f, x^{p^j} - x) = 1 for j <= m/2.
inline bool poly_irreducible(const Poly& f, u64 p) {
    const std::size_t m = f.size() - 1;
    Poly xp{0, 1};
    for (std::size_t j = 1; j <= m / 2; ++j) {
        xp = poly_powmod(xp, p, f, p);
        Poly h = xp;
        h.resize(std::max<std::size_t>(h.size(), 2), 0);
        h[1] = static_cast<std::uint32_t>((h[1] + p - 1) % p);
        trim(h);
        if (h.empty()) return false;
        if (poly_gcd(f, h, p).size() > 1) return false;
    }
    return true;
}

} // namespace detail

struct FieldCtx {
    u64 p = 0;
    unsigned m = 0;
    std::vector<std::uint32_t> modulus;  // monic, size m+1
    u64 order() const { return ipow(p, m); }
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

inline FieldPtr make_field(u64 p, unsigned m) {
    if (m == 0) throw DomainError("extension degree m must be >= 1");
    if (p == 2 || !is_prime(p)) throw DomainError("p must be an odd prime, got " + std::to_string(p));

    static std::mutex mu;
    static std::map<std::pair<u64, unsigned>, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, m});
    if (it != cache.end()) return it->second;

    auto ctx = std::make_shared<FieldCtx>();
    ctx->p = p;
    ctx->m = m;
    if (m == 1) {
        ctx->modulus = {0, 1};
    } else {
        // tail[0] = a_{m-1} is the most significant position of the lex order
        std::vector<std::uint32_t> tail(m, 0);
        for (;;) {
            detail::Poly f(m + 1);
            for (unsigned j = 0; j < m; ++j) f[j] = tail[m - 1 - j];
            f[m] = 1;
            if (f[0] != 0 && detail::poly_irreducible(f, p)) {
                ctx->modulus = f;
                break;
            }
            int k = static_cast<int>(m) - 1;
            while (k >= 0 && tail[k] == p - 1) tail[k--] = 0;
            if (k < 0) throw std::logic_error("no irreducible polynomial found");
            ++tail[k];
        }
    }
    cache[{p, m}] = ctx;
    return ctx;
}

class FieldElement {
public:
    FieldElement() = default;
    explicit FieldElement(FieldPtr ctx) : ctx_(std::move(ctx)), c_(ctx_->m, 0) {}
    FieldElement(FieldPtr ctx, std::vector<std::uint32_t> coords) : ctx_(std::move(ctx)), c_(std::move(coords)) {
        if (c_.size() > ctx_->m) throw DomainError("too many coordinates for F_{p^m}");
        c_.resize(ctx_->m, 0);
        for (auto& v : c_) v %= static_cast<std::uint32_t>(ctx_->p);
    }
    static FieldElement scalar(FieldPtr ctx, long long a) {
        const long long p = static_cast<long long>(ctx->p);
        long long r = a % p;
        if (r < 0) r += p;
        return FieldElement(std::move(ctx), {static_cast<std::uint32_t>(r)});
    }
    static FieldElement from_index(FieldPtr ctx, u64 idx) {
        std::vector<std::uint32_t> c(ctx->m);
        for (auto& v : c) {
            v = static_cast<std::uint32_t>(idx % ctx->p);
            idx /= ctx->p;
        }
        return FieldElement(std::move(ctx), std::move(c));
    }

    const FieldPtr& ctx() const { return ctx_; }
    const std::vector<std::uint32_t>& coords() const { return c_; }
    u64 p() const { return ctx_->p; }

    u64 index() const {
        u64 r = 0;
        for (std::size_t j = c_.size(); j-- > 0;) r = r * ctx_->p + c_[j];
        return r;
    }

    bool is_zero() const {
        for (auto v : c_)
            if (v) return false;
        return true;
    }
    bool is_one() const {
        if (c_.empty() || c_[0] != 1) return false;
        for (std::size_t j = 1; j < c_.size(); ++j)
            if (c_[j]) return false;
        return true;
    }

    FieldElement operator+(const FieldElement& o) const {
        FieldElement r(ctx_);
        for (std::size_t j = 0; j < c_.size(); ++j) r.c_[j] = static_cast<std::uint32_t>((c_[j] + o.c_[j]) % ctx_->p);
        return r;
    }
    FieldElement operator-(const FieldElement& o) const {
        FieldElement r(ctx_);
        for (std::size_t j = 0; j < c_.size(); ++j)
            r.c_[j] = static_cast<std::uint32_t>((c_[j] + ctx_->p - o.c_[j]) % ctx_->p);
        return r;
    }
    FieldElement operator-() const { return FieldElement(ctx_) - *this; }
    FieldElement operator*(const FieldElement& o) const {
        auto prod = detail::poly_mulmod(c_, o.c_, ctx_->modulus, ctx_->p);
        prod.resize(ctx_->m, 0);
        FieldElement r(ctx_);
        r.c_ = std::move(prod);
        return r;
    }
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
    bool operator==(const FieldElement& o) const { return c_ == o.c_; }
    bool operator!=(const FieldElement& o) const { return c_ != o.c_; }

    FieldElement pow(u64 e) const {
        FieldElement r = scalar(ctx_, 1), b = *this;
        while (e) {
            if (e & 1) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }

    FieldElement inverse() const {
        if (is_zero()) throw DomainError("inverse of zero");
        return pow(ctx_->order() - 2);
    }

    // Scalar residue of an element known to lie in F_p.
    std::uint32_t prime_value() const {
        for (std::size_t j = 1; j < c_.size(); ++j)
            if (c_[j]) throw std::logic_error("element is not in the prime field");
        return c_.empty() ? 0 : c_[0];
    }

private:
    FieldPtr ctx_;
    std::vector<std::uint32_t> c_;
};

// x^(p^e); e may be negative (taken mod m).
inline FieldElement frobenius(const FieldElement& x, long long e) {
    const long long m = x.ctx()->m;
    long long k = ((e % m) + m) % m;
    FieldElement r = x;
    for (long long i = 0; i < k; ++i) r = r.pow(x.p());
    return r;
}

inline std::uint32_t trace_to_prime(const FieldElement& x) {
    FieldElement s(x.ctx()), y = x;
    for (unsigned j = 0; j < x.ctx()->m; ++j) {
        s += y;
        y = y.pow(x.p());
    }
    return s.prime_value();
}

inline std::uint32_t norm_to_prime(const FieldElement& x) {
    if (x.is_zero()) return 0;
    const u64 e = (x.ctx()->order() - 1) / (x.p() - 1);
    return x.pow(e).prime_value();
}

} // namespace asnp
