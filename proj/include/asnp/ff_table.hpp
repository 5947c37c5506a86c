#pragma once

#include <asnp/ff.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace asnp {

// Log/Zech tables for F_{p^n} in the same polynomial basis as make_field(p, n).
// Elements are addressed by discrete logarithm to a fixed primitive element g;
// the value zero() stands for the zero element.
class TabulatedField {
public:
    using u32 = std::uint32_t;

    TabulatedField(u64 p, unsigned n) : ctx_(make_field(p, n)), p_(p), n_(n), q_(ctx_->order()) {
        if (q_ == 0 || q_ > (u64(1) << 31)) throw BudgetError("field too large to tabulate");
        build();
    }

    u64 p() const { return p_; }
    unsigned n() const { return n_; }
    u64 order() const { return q_; }
    u32 zero() const { return static_cast<u32>(q_ - 1); }
    const FieldPtr& ctx() const { return ctx_; }

    u32 log_of_index(u64 idx) const { return log_[idx]; }
    u32 index_of_log(u32 k) const { return k == zero() ? 0 : exp_[k]; }
    u32 log_of(const FieldElement& x) const { return log_[x.index()]; }
    FieldElement element(u32 k) const { return FieldElement::from_index(ctx_, index_of_log(k)); }

    u32 mul(u32 a, u32 b) const {
        if (a == zero() || b == zero()) return zero();
        u64 s = u64(a) + b;
        return static_cast<u32>(s >= q_ - 1 ? s - (q_ - 1) : s);
    }
    u32 add(u32 a, u32 b) const {
        if (a == zero()) return b;
        if (b == zero()) return a;
        u32 d = b >= a ? b - a : static_cast<u32>(b + (q_ - 1) - a);
        u32 z = zech_[d];
        if (z == zero()) return zero();
        u64 s = u64(a) + z;
        return static_cast<u32>(s >= q_ - 1 ? s - (q_ - 1) : s);
    }
    std::uint16_t trace_of_log(u32 k) const { return k == zero() ? 0 : trace_[k]; }

    // Log of the image of the generator t of F_{p^m} (m | n): the first root of the
    // base modulus among powers of g^{(Q-1)/(p^m-1)}.
    u32 base_generator_log(const FieldCtx& base) const {
        if (n_ % base.m != 0 || base.p != p_) throw DomainError("base field does not embed");
        const u64 qm = base.order();
        const u64 step = (q_ - 1) / (qm - 1);
        for (u64 k = 0; k + 1 < qm; ++k) {
            const u32 e = static_cast<u32>(k * step);
            u32 acc = zero();
            for (unsigned j = 0; j <= base.m; ++j) {
                if (!base.modulus[j]) continue;
                u32 term = mul(log_[base.modulus[j]], static_cast<u32>((u64(e) * j) % (q_ - 1)));
                acc = add(acc, term);
            }
            if (acc == zero()) return e;
        }
        throw std::logic_error("base modulus has no root in the extension");
    }

    // Log of the image of x in F_{p^n}, given the log of the image of t.
    u32 embed(const FieldElement& x, u32 theta_log) const {
        u32 acc = zero();
        const auto& c = x.coords();
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (!c[j]) continue;
            acc = add(acc, mul(log_[c[j]], static_cast<u32>((u64(theta_log) * j) % (q_ - 1))));
        }
        return acc;
    }

private:
    void build() {
        const u64 qm1 = q_ - 1;
        const auto fac = prime_factors(qm1);
        FieldElement g;
        for (u64 idx = 2; idx < q_; ++idx) {
            FieldElement cand = FieldElement::from_index(ctx_, idx);
            bool prim = true;
            for (u64 l : fac)
                if (cand.pow(qm1 / l).is_one()) {
                    prim = false;
                    break;
                }
            if (prim) {
                g = cand;
                break;
            }
        }
        if (q_ == 2 || qm1 == 1) g = FieldElement::scalar(ctx_, 1);
        if (!g.ctx()) throw std::logic_error("no primitive element");

        // multiplication by g as an n x n matrix over F_p; column j = g * t^j
        std::vector<std::vector<u32>> mat(n_, std::vector<u32>(n_, 0));
        for (unsigned j = 0; j < n_; ++j) {
            std::vector<std::uint32_t> tj(n_, 0);
            tj[j] = 1;
            FieldElement col = g * FieldElement(ctx_, tj);
            for (unsigned i = 0; i < n_; ++i) mat[i][j] = col.coords()[i];
        }
        std::vector<u32> tr(n_);
        for (unsigned j = 0; j < n_; ++j) {
            std::vector<std::uint32_t> tj(n_, 0);
            tj[j] = 1;
            tr[j] = trace_to_prime(FieldElement(ctx_, tj));
        }

        exp_.assign(qm1, 0);
        log_.assign(q_, zero());
        trace_.assign(qm1, 0);
        std::vector<u32> cur(n_, 0), nxt(n_, 0);
        cur[0] = 1;
        for (u64 k = 0; k < qm1; ++k) {
            u64 idx = 0, t = 0;
            for (unsigned j = n_; j-- > 0;) {
                idx = idx * p_ + cur[j];
                t += u64(cur[j]) * tr[j];
            }
            exp_[k] = static_cast<u32>(idx);
            log_[idx] = static_cast<u32>(k);
            trace_[k] = static_cast<std::uint16_t>(t % p_);
            for (unsigned i = 0; i < n_; ++i) {
                u64 s = 0;
                for (unsigned j = 0; j < n_; ++j) s += u64(mat[i][j]) * cur[j];
                nxt[i] = static_cast<u32>(s % p_);
            }
            std::swap(cur, nxt);
        }
        zech_.assign(qm1, zero());
        for (u64 k = 0; k < qm1; ++k) {
            u64 idx = exp_[k];
            u64 one_plus = (idx % p_ == p_ - 1) ? idx - (p_ - 1) : idx + 1;
            zech_[k] = log_[one_plus];
        }
    }

    FieldPtr ctx_;
    u64 p_;
    unsigned n_;
    u64 q_;
    std::vector<u32> exp_, log_, zech_;
    std::vector<std::uint16_t> trace_;
};

using TablePtr = std::shared_ptr<const TabulatedField>;

inline TablePtr tabulated_field(u64 p, unsigned n) {
    static std::mutex mu;
    static std::map<std::pair<u64, unsigned>, TablePtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, n});
    if (it != cache.end()) return it->second;
    auto t = std::make_shared<const TabulatedField>(p, n);
    cache[{p, n}] = t;
    return t;
}

} // namespace asnp
