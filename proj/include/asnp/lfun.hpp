#pragma once

#include <asnp/cyclotomic.hpp>
#include <asnp/errors.hpp>
#include <asnp/ff.hpp>
#include <asnp/ff_table.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace asnp {

inline constexpr u64 kDefaultBudget = 5000000ULL;

// f = sum_{i >= 1} c_i x^i over F_{p^m}
class ASPolynomial {
public:
    ASPolynomial() = default;
    explicit ASPolynomial(FieldPtr ctx) : ctx_(std::move(ctx)) {}
    ASPolynomial(FieldPtr ctx, const std::map<unsigned, FieldElement>& coeffs) : ctx_(std::move(ctx)) {
        for (auto& [i, c] : coeffs) set(i, c);
    }

    const FieldPtr& ctx() const { return ctx_; }
    u64 p() const { return ctx_->p; }
    unsigned m() const { return ctx_->m; }

    void set(unsigned i, const FieldElement& c) {
        if (i == 0) throw DomainError("constant term is not part of an Artin-Schreier polynomial");
        if (c.ctx()->p != ctx_->p || c.ctx()->m != ctx_->m) throw DomainError("coefficient lives in another field");
        if (c.is_zero())
            c_.erase(i);
        else
            c_[i] = c;
    }
    FieldElement coeff(unsigned i) const {
        auto it = c_.find(i);
        return it == c_.end() ? FieldElement(ctx_) : it->second;
    }
    const std::map<unsigned, FieldElement>& coeffs() const { return c_; }
    unsigned degree() const { return c_.empty() ? 0 : c_.rbegin()->first; }
    bool is_zero() const { return c_.empty(); }
    bool is_reduced() const {
        for (auto& [i, c] : c_)
            if (i % ctx_->p == 0) return false;
        return true;
    }

    FieldElement operator()(const FieldElement& x) const {
        FieldElement acc(ctx_);
        for (unsigned i = degree(); i >= 1; --i) {
            acc = acc * x + coeff(i);
        }
        return acc * x;
    }

private:
    FieldPtr ctx_;
    std::map<unsigned, FieldElement> c_;
};

// Replace c x^{pj} by c^{1/p} x^j until no exponent is divisible by p.
inline ASPolynomial as_reduce(const ASPolynomial& f) {
    if (f.is_zero()) throw DomainError("f is constant");
    std::map<unsigned, FieldElement> c = f.coeffs();
    const u64 p = f.p();
    for (;;) {
        auto it = std::find_if(c.begin(), c.end(), [&](auto& kv) { return kv.first % p == 0; });
        if (it == c.end()) break;
        const unsigned j = static_cast<unsigned>(it->first / p);
        FieldElement root = frobenius(it->second, static_cast<long long>(f.m()) - 1);
        c.erase(it);
        auto jt = c.find(j);
        if (jt == c.end())
            c.emplace(j, root);
        else
            jt->second += root;
    }
    ASPolynomial r(f.ctx());
    for (auto& [i, v] : c) r.set(i, v);
    if (r.is_zero()) throw DomainError("Artin-Schreier reduction gives zero: the curve is rational");
    return r;
}

// n_a = #{x in F_{q^r} : Tr(f(x)) = a}
inline std::vector<u64> exp_sum_counts(const ASPolynomial& f, unsigned r, u64 budget = kDefaultBudget) {
    if (r == 0) throw DomainError("r must be >= 1");
    const u64 p = f.p();
    const unsigned n = f.m() * r;
    const u64 Q = ipow(p, n);
    if (Q == 0 || Q > budget)
        throw BudgetError("exponential sum over F_{" + std::to_string(p) + "^" + std::to_string(n) +
                          "} exceeds budget " + std::to_string(budget));
    const TablePtr T = tabulated_field(p, n);
    const std::uint32_t theta = f.m() > 1 ? T->base_generator_log(*f.ctx()) : 0;
    const std::uint64_t qm1 = Q - 1;
    std::vector<std::uint32_t> logs, exps, steps;
    for (auto& [i, c] : f.coeffs()) {
        logs.push_back(T->embed(c, theta));
        steps.push_back(static_cast<std::uint32_t>(i % qm1));
    }
    exps = logs;
    std::vector<u64> counts(p, 0);
    counts[0] = 1;  // x = 0
    const std::size_t t = logs.size();
    for (u64 k = 0; k < qm1; ++k) {
        std::uint32_t val = T->zero();
        for (std::size_t j = 0; j < t; ++j) {
            val = T->add(val, exps[j]);
            std::uint64_t e = std::uint64_t(exps[j]) + steps[j];
            exps[j] = static_cast<std::uint32_t>(e >= qm1 ? e - qm1 : e);
        }
        ++counts[T->trace_of_log(val)];
    }
    return counts;
}

inline CycInt exp_sum(const ASPolynomial& f, unsigned r, u64 budget = kDefaultBudget) {
    return cyc_from_exponent_counts(f.p(), exp_sum_counts(f, r, budget));
}

struct LPolynomial {
    u64 p = 0;
    unsigned m = 1;
    std::vector<CycInt> b;  // b_0 .. b_{d-1}

    std::size_t degree() const { return b.size() - 1; }
    std::optional<Rational> vq_at(std::size_t i) const { return vq(b[i], m); }
};

// i b_i = sum_{k=1}^{i} S_k b_{i-k}
inline LPolynomial l_polynomial(const ASPolynomial& f, u64 budget = kDefaultBudget) {
    if (!f.is_reduced()) throw DomainError("f must be Artin-Schreier reduced");
    const unsigned d = f.degree();
    if (d == 0) throw DomainError("f is constant");
    const u64 p = f.p();
    if (d > 1) {
        const u64 need = ipow(p, f.m() * (d - 1));
        if (need == 0 || need > budget)
            throw BudgetError("L-polynomial needs p^{m(d-1)} = " + (need ? std::to_string(need) : std::string("overflow")) +
                              " points, budget " + std::to_string(budget));
    }
    LPolynomial L;
    L.p = p;
    L.m = f.m();
    std::vector<CycInt> S(d);
    for (unsigned r = 1; r < d; ++r) S[r] = exp_sum(f, r, budget);
    L.b.push_back(CycInt::integer(p, 1));
    for (unsigned i = 1; i < d; ++i) {
        CycInt acc(p);
        for (unsigned k = 1; k <= i; ++k) acc = acc + S[k] * L.b[i - k];
        L.b.push_back(acc.div_exact(i));
    }
    if (L.b.back().is_zero()) throw std::logic_error("vanishing leading L-coefficient");
    return L;
}

struct NPVertex {
    long long x = 0;
    Rational y;
    bool operator==(const NPVertex& o) const { return x == o.x && y == o.y; }
};

struct NewtonPolygon {
    std::vector<NPVertex> vertices;

    long long length() const { return vertices.back().x - vertices.front().x; }
    // (segment length, slope) pairs
    std::vector<std::pair<long long, Rational>> segments() const {
        std::vector<std::pair<long long, Rational>> s;
        for (std::size_t i = 1; i < vertices.size(); ++i) {
            const long long dx = vertices[i].x - vertices[i - 1].x;
            s.emplace_back(dx, (vertices[i].y - vertices[i - 1].y) / Rational(dx));
        }
        return s;
    }
    std::optional<Rational> first_slope() const {
        if (vertices.size() < 2) return std::nullopt;
        return segments().front().second;
    }
    std::optional<NPVertex> first_vertex() const {
        if (vertices.size() < 2) return std::nullopt;
        return vertices[1];
    }
    // ordinate at abscissa x by linear interpolation
    Rational ordinate_at(long long x) const {
        if (x < vertices.front().x || x > vertices.back().x) throw DomainError("abscissa outside polygon");
        for (std::size_t i = 1; i < vertices.size(); ++i) {
            if (x <= vertices[i].x) {
                const auto& a = vertices[i - 1];
                const auto& b = vertices[i];
                return a.y + (b.y - a.y) * Rational(x - a.x, b.x - a.x);
            }
        }
        return vertices.back().y;
    }
};

// Lower convex hull; nullopt ordinates are skipped and collinear points dropped.
inline NewtonPolygon newton_polygon(std::vector<std::pair<long long, std::optional<Rational>>> pts) {
    std::vector<NPVertex> v;
    for (auto& [x, y] : pts)
        if (y) v.push_back({x, *y});
    if (v.empty()) throw DomainError("no finite points");
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    std::vector<NPVertex> hull;
    for (auto& pt : v) {
        if (!hull.empty() && hull.back().x == pt.x) continue;
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            // drop b when it is on or above the segment a -> pt
            if ((b.y - a.y) * Rational(pt.x - a.x) >= (pt.y - a.y) * Rational(b.x - a.x))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    return NewtonPolygon{hull};
}

inline NewtonPolygon np_of_l(const LPolynomial& L) {
    std::vector<std::pair<long long, std::optional<Rational>>> pts;
    for (std::size_t i = 0; i < L.b.size(); ++i) pts.emplace_back(static_cast<long long>(i), L.vq_at(i));
    return newton_polygon(pts);
}

inline NewtonPolygon np_of_curve(const NewtonPolygon& npf, u64 p) {
    NewtonPolygon r;
    for (auto& v : npf.vertices) r.vertices.push_back({v.x * static_cast<long long>(p - 1), v.y * Rational(p - 1)});
    return r;
}

inline u64 genus(u64 p, u64 d) {
    if (d == 0 || d % p == 0) throw DomainError("genus needs gcd(d, p) = 1");
    return (p - 1) * (d - 1) / 2;
}

inline bool is_supersingular(const NewtonPolygon& np) {
    if (np.vertices.empty() || np.vertices.front().x != 0 || np.vertices.front().y != 0)
        throw DomainError("polygon must start at (0,0)");
    const auto& end = np.vertices.back();
    if (end.x == 0) throw DomainError("genus zero: supersingularity is vacuous");
    if (end.y * 2 != Rational(end.x)) throw DomainError("polygon does not end at (2g, g)");
    return np.vertices.size() == 2;
}

} // namespace asnp
