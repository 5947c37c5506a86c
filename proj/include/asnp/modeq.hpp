#pragma once

#include <asnp/cyclotomic.hpp>
#include <asnp/errors.hpp>
#include <asnp/ff.hpp>

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace asnp {

using i128 = __int128;

struct ExponentSet {
    u64 p = 0;
    std::vector<u64> D;  // sorted, distinct, positive

    ExponentSet() = default;
    ExponentSet(u64 p_, std::vector<u64> d) : p(p_), D(std::move(d)) {
        std::sort(D.begin(), D.end());
        D.erase(std::unique(D.begin(), D.end()), D.end());
        if (D.empty() || D.front() == 0) throw DomainError("exponent set must be non-empty and positive");
        if (p == 2 || !is_prime(p)) throw DomainError("p must be an odd prime");
    }
    // {1 <= i <= d : gcd(i, p) = 1}
    static ExponentSet interval(u64 p, u64 d) {
        std::vector<u64> v;
        for (u64 i = 1; i <= d; ++i)
            if (i % p) v.push_back(i);
        return ExponentSet(p, std::move(v));
    }
    bool contains(u64 d) const { return std::binary_search(D.begin(), D.end(), d); }
    u64 max() const { return D.back(); }
};

inline u64 digit_sum(u64 n, u64 p) {
    u64 s = 0;
    while (n) {
        s += n % p;
        n /= p;
    }
    return s;
}

struct Solution {
    u64 p = 0;
    unsigned l = 0;
    std::map<u64, u64> u;  // d -> u_d, zero entries omitted

    u64 modulus() const { return ipow(p, l) - 1; }
    u64 digit(u64 d, unsigned r) const {
        auto it = u.find(d);
        if (it == u.end()) return 0;
        return (it->second / ipow(p, r)) % p;
    }
    u64 weight() const {
        u64 w = 0;
        for (auto& [d, v] : u) w += digit_sum(v, p);
        return w;
    }
    // w_r = sum over D of the r-th digits
    u64 weight_at(unsigned r) const {
        u64 w = 0;
        for (auto& [d, v] : u) w += (v / ipow(p, r)) % p;
        return w;
    }
    Rational density() const { return Rational(BigInt(weight()), BigInt((p - 1) * l)); }
    bool operator==(const Solution& o) const { return p == o.p && l == o.l && u == o.u; }
    bool operator<(const Solution& o) const {
        return std::tie(p, l, u) < std::tie(o.p, o.l, o.u);
    }
};

struct SupportMap {
    unsigned l = 0;
    std::vector<u64> values;
    std::vector<std::pair<unsigned, u64>> jumps;  // (position i, p*phi(i) - phi(i+1))
    bool irreducible = false;

    u64 total() const {
        u64 s = 0;
        for (auto v : values) s += v;
        return s;
    }
    u64 max_jump() const {
        u64 m = 0;
        for (auto& j : jumps) m = std::max(m, j.second);
        return m;
    }
};

inline bool verify_solution(const ExponentSet& E, const Solution& U) {
    if (U.p != E.p || U.l == 0) return false;
    const u64 N = U.modulus();
    if (N == UINT64_MAX) return false;
    i128 sum = 0;
    for (auto& [d, v] : U.u) {
        if (!E.contains(d) || v > N) return false;
        sum += i128(d) * v;
    }
    return sum > 0 && sum % N == 0;
}

inline u64 shift_value(u64 v, u64 p, u64 N) {
    if (v == N) return N;
    return static_cast<u64>((i128(v) * p) % N);
}

inline Solution shift(const Solution& U) {
    Solution r = U;
    const u64 N = U.modulus();
    for (auto& [d, v] : r.u) v = shift_value(v, U.p, N);
    return r;
}

inline SupportMap support_map(const ExponentSet& E, const Solution& U) {
    if (!verify_solution(E, U)) throw DomainError("not a solution of the modular equation");
    SupportMap s;
    s.l = U.l;
    const u64 N = U.modulus();
    Solution cur = U;
    for (unsigned k = 0; k < U.l; ++k) {
        i128 sum = 0;
        for (auto& [d, v] : cur.u) sum += i128(d) * v;
        s.values.push_back(static_cast<u64>(sum / N));
        cur = shift(cur);
    }
    for (unsigned i = 0; i < U.l; ++i) {
        const u64 a = s.values[i], b = s.values[(i + 1) % U.l];
        if (b < U.p * a) s.jumps.emplace_back(i, U.p * a - b);
    }
    std::set<u64> distinct(s.values.begin(), s.values.end());
    s.irreducible = distinct.size() == s.values.size();
    return s;
}

inline bool is_irreducible(const ExponentSet& E, const Solution& U) { return support_map(E, U).irreducible; }

// Representative of the shift class: the rotation whose u-vector over sorted keys is smallest.
inline Solution canonical(const Solution& U) {
    Solution best = U, cur = U;
    for (unsigned k = 1; k < U.l; ++k) {
        cur = shift(cur);
        if (cur.u < best.u) best = cur;
    }
    return best;
}

inline constexpr u64 kSearchBound = 100000000ULL;

inline u64 sigma_min_weight(const ExponentSet& E, unsigned l, u64 bound = kSearchBound) {
    if (l == 0) throw DomainError("length must be >= 1");
    const u64 pl = ipow(E.p, l);
    if (pl == 0 || pl - 1 > bound) throw BudgetError("p^l - 1 exceeds search bound " + std::to_string(bound));
    const u64 N = pl - 1;
    std::vector<u64> atoms;
    for (u64 d : E.D) {
        u64 pr = 1;
        for (unsigned r = 0; r < l; ++r) {
            atoms.push_back(static_cast<u64>((i128(d) * pr) % N));
            pr *= E.p;
        }
    }
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    if (!atoms.empty() && atoms.front() == 0) return 1;

    std::vector<bool> seen(N, false);
    std::vector<u64> frontier{0}, next;
    for (u64 depth = 0; !frontier.empty(); ++depth) {
        next.clear();
        for (u64 x : frontier) {
            for (u64 a : atoms) {
                u64 y = x + a;
                if (y >= N) y -= N;
                if (y == 0) return depth + 1;
                if (!seen[y]) {
                    seen[y] = true;
                    next.push_back(y);
                }
            }
        }
        std::swap(frontier, next);
    }
    throw std::logic_error("residue 0 unreachable");
}

// n with p^n - 1 <= d < p^{n+1} - 1
inline unsigned log_floor(u64 p, u64 d) {
    unsigned n = 0;
    u64 pw = p;
    while (pw - 1 <= d) {
        ++n;
        pw *= p;
    }
    return n;
}

inline Rational density_closed_form(u64 p, u64 d) {
    if (p == 2 || !is_prime(p)) throw DomainError("p must be an odd prime");
    if (d == 0) throw DomainError("d must be positive");
    if (d % p == 0) throw DomainError("gcd(d, p) != 1: apply Artin-Schreier reduction first");
    if (2 * d < p - 1) throw DomainError("d < (p-1)/2: no closed form, use the brute-force density");
    if (d <= p - 2) return Rational(2, p - 1);
    const unsigned n = log_floor(p, d);
    const u64 top = ipow(p, n + 1);
    if (d <= top - p - 1) return Rational(BigInt(1), BigInt(u64(n) * (p - 1)));
    return Rational(BigInt(2), BigInt(u64(2 * n + 1) * (p - 1)));
}

struct BruteDensity {
    Rational density;
    unsigned l = 0;
};

inline unsigned default_window(u64 p, u64 d) { return 2 * log_floor(p, d) + 3; }

inline BruteDensity density_bruteforce(const ExponentSet& E, unsigned lmax, u64 bound = kSearchBound) {
    if (lmax == 0) throw DomainError("lmax must be >= 1");
    BruteDensity best;
    for (unsigned l = 1; l <= lmax; ++l) {
        Rational r(BigInt(sigma_min_weight(E, l, bound)), BigInt(u64(l) * (E.p - 1)));
        if (best.l == 0 || r < best.density) {
            best.density = r;
            best.l = l;
        }
    }
    return best;
}

// First `count` terms of F_s = {p^k e : e in E_s}, E_s = {i <= s + ceil(s/(p-1)) - 1, gcd(i,p)=1}.
inline std::vector<u64> c_sequence(u64 p, u64 s, std::size_t count) {
    if (s == 0) throw DomainError("s must be >= 1");
    const u64 bound = s + (s + p - 2) / (p - 1) - 1;
    std::priority_queue<u64, std::vector<u64>, std::greater<u64>> heap;
    for (u64 i = 1; i <= bound; ++i)
        if (i % p) heap.push(i);
    std::vector<u64> out;
    while (out.size() < count) {
        u64 v = heap.top();
        heap.pop();
        out.push_back(v);
        if (v > UINT64_MAX / p) throw BudgetError("c_sequence overflow");
        heap.push(v * p);
    }
    return out;
}

inline u64 support_weight_lower_bound(u64 p, u64 l, u64 s) {
    if (s == 0 || s > l) throw DomainError("need 1 <= s <= l");
    const u64 q = (l - 1) / s, r = l - q * s;
    const u64 pq = ipow(p, static_cast<unsigned>(q));
    return s * (s + 1) / 2 * ((pq - 1) / (p - 1)) + r * (r + 1) / 2 * pq;
}

namespace detail {

class SolutionBuilder {
public:
    SolutionBuilder(u64 p, unsigned l) { s_.p = p; s_.l = l; }
    SolutionBuilder& add(u64 d, u64 amount) {
        s_.u[d] += amount;
        return *this;
    }
    const Solution& get() const { return s_; }

private:
    Solution s_;
};

// all orderings of k distinct elements drawn from pool
inline void arrangements(const std::vector<u64>& pool, std::size_t k, std::vector<u64>& cur,
                         std::vector<bool>& used, std::vector<std::vector<u64>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        cur.push_back(pool[i]);
        arrangements(pool, k, cur, used, out);
        cur.pop_back();
        used[i] = false;
    }
}

inline std::vector<std::vector<u64>> arrangements(const std::vector<u64>& pool, std::size_t k) {
    std::vector<std::vector<u64>> out;
    std::vector<u64> cur;
    std::vector<bool> used(pool.size(), false);
    if (k <= pool.size()) arrangements(pool, k, cur, used, out);
    return out;
}

inline std::vector<u64> range_u(u64 a, u64 b) {
    std::vector<u64> v;
    for (u64 i = a; i <= b; ++i) v.push_back(i);
    return v;
}

// Type (i) cycles shared by both n >= 1 families: sum_k p^{nk} (n_{k+1} p^n - n_k), n_0 = min, l = n w.
inline void cycle_family(u64 p, unsigned n, std::vector<Solution>& out) {
    const u64 pn = ipow(p, n);
    for (u64 n0 = 1; n0 <= p - 1; ++n0) {
        out.push_back(SolutionBuilder(p, n).add(n0 * (pn - 1), 1).get());
        for (unsigned w = 2; w <= p - 1; ++w) {
            for (auto& rest : arrangements(range_u(n0 + 1, p - 1), w - 1)) {
                std::vector<u64> seq{n0};
                seq.insert(seq.end(), rest.begin(), rest.end());
                SolutionBuilder b(p, n * w);
                for (unsigned k = 0; k < w; ++k) b.add(seq[(k + 1) % w] * pn - seq[k], ipow(p, n * k));
                out.push_back(b.get());
            }
        }
    }
}

inline std::vector<Solution> family_small(u64 p) {
    // D_max = p - 2
    std::vector<Solution> out;
    for (u64 i = 1; 2 * i <= p - 1; ++i) out.push_back(SolutionBuilder(p, 1).add(i, 1).add(p - 1 - i, 1).get());
    if (p >= 5) {
        const u64 dm = p - 2;
        for (u64 a = 1; a <= dm; ++a)
            for (u64 b = a; b <= dm; ++b) {
                if (a + b >= 2 * p - 1) continue;
                const u64 c = 2 * p - 1 - a - b;
                if (c < b || c > dm) continue;
                out.push_back(SolutionBuilder(p, 2).add(p - 2, p).add(a, 1).add(b, 1).add(c, 1).get());
            }
    }
    return out;
}

inline std::vector<Solution> family_two_jumps(u64 p, unsigned n) {
    // D_max = p^{n+1} - 2
    std::vector<Solution> out;
    const u64 pn = ipow(p, n);
    for (u64 i = 2; i <= p - 1; ++i)
        out.push_back(SolutionBuilder(p, 2 * n + 1).add(pn * p - i, pn).add(i * pn - 1, 1).get());
    return out;
}

inline std::vector<Solution> family_geometric(u64 p, unsigned n) {
    // D_max = p^{n+1} - p - 1, n >= 2
    std::vector<Solution> out;
    cycle_family(p, n, out);
    const u64 pn = ipow(p, n), pn1 = ipow(p, n - 1);
    for (unsigned w = 2; w <= p; ++w) {
        for (auto& mid : arrangements(range_u(2, p - 1), w - 2)) {
            for (u64 last = p + 1; last <= p * p - 1; ++last) {
                if (last % p == 0) continue;
                std::vector<u64> nk{1};
                nk.insert(nk.end(), mid.begin(), mid.end());
                nk.push_back(last);  // nk[w-1]
                SolutionBuilder b(p, n * w);
                for (unsigned k = 0; k + 3 <= w; ++k) b.add(nk[k + 1] * pn - nk[k], ipow(p, n * k));
                b.add(pn1 * nk[w - 1] - nk[w - 2], ipow(p, n * (w - 2)));
                b.add(pn * p - nk[w - 1], ipow(p, n * (w - 1) - 1));
                out.push_back(b.get());
            }
        }
    }
    return out;
}

inline std::vector<Solution> family_quadratic(u64 p) {
    // D_max = p^2 - p - 1
    std::vector<Solution> out;
    cycle_family(p, 1, out);
    const u64 dmax = p * p - p - 1;
    auto inD = [&](i128 x) { return x >= 1 && x <= i128(dmax) && x % p != 0; };
    // (ii): p^{l-2}(d + (p^2 - d - n_2)) + sum_{k=2}^{l-1} p^{l-1-k}(p n_k - n_{k+1})
    for (unsigned l = 2; l <= p; ++l) {
        for (auto& mid : arrangements(range_u(2, p - 1), l - 2)) {
            // chain[k] = n_k for k = 2..l, with n_l = 1
            std::vector<u64> chain(l + 1, 0);
            for (unsigned k = 2; k < l; ++k) chain[k] = mid[k - 2];
            chain[l] = 1;
            const u64 n2 = chain[2];
            for (u64 d1 = 1; d1 <= dmax; ++d1) {
                const i128 d2 = i128(p * p) - d1 - n2;
                if (!inD(d1) || !inD(d2) || d2 < i128(d1)) continue;
                SolutionBuilder b(p, l);
                b.add(d1, ipow(p, l - 2)).add(static_cast<u64>(d2), ipow(p, l - 2));
                for (unsigned k = 2; k < l; ++k) b.add(p * chain[k] - chain[k + 1], ipow(p, l - 1 - k));
                out.push_back(b.get());
            }
        }
    }
    // (iii): p^{l-2}(p^2 - n_2) + p^{l-3}(d1 + d2) + sum_{k=3}^{l-1} p^{l-1-k}(p n_k - n_{k+1})
    for (unsigned l = 3; l <= p + 1; ++l) {
        for (auto& mid : arrangements(range_u(2, p - 1), l - 3)) {
            std::vector<u64> chain(l + 1, 0);
            for (unsigned k = 3; k < l; ++k) chain[k] = mid[k - 3];
            chain[l] = 1;
            for (u64 n2 = p + 1; n2 <= 2 * p - 2; ++n2) {
                const u64 target = p * n2 - chain[3];
                for (u64 d1 = 1; d1 <= dmax; ++d1) {
                    const i128 d2 = i128(target) - d1;
                    if (!inD(d1) || !inD(d2) || d2 < i128(d1)) continue;
                    SolutionBuilder b(p, l);
                    b.add(p * p - n2, ipow(p, l - 2));
                    b.add(d1, ipow(p, l - 3)).add(static_cast<u64>(d2), ipow(p, l - 3));
                    for (unsigned k = 3; k < l; ++k) b.add(p * chain[k] - chain[k + 1], ipow(p, l - 1 - k));
                    out.push_back(b.get());
                }
            }
        }
    }
    return out;
}

} // namespace detail

// Minimal irreducible solutions of {1..d} up to shift, from the parametrized families.
inline std::vector<Solution> enumerate_minimal_closed(u64 p, u64 d) {
    const Rational delta = density_closed_form(p, d);
    std::vector<Solution> raw;
    if (d <= p - 2) {
        raw = detail::family_small(p);
    } else {
        const unsigned n = log_floor(p, d);
        const u64 top = ipow(p, n + 1);
        if (d <= top - p - 1)
            raw = n == 1 ? detail::family_quadratic(p) : detail::family_geometric(p, n);
        else
            raw = detail::family_two_jumps(p, n);
    }
    u64 dmax = d;
    for (auto& s : raw)
        for (auto& [k, v] : s.u) dmax = std::max(dmax, k);
    const ExponentSet E = ExponentSet::interval(p, d);
    const ExponentSet Emax = ExponentSet::interval(p, dmax);
    std::set<Solution> classes;
    for (const auto& s : raw) {
        if (!verify_solution(Emax, s) || !is_irreducible(Emax, s) || s.density() != delta)
            throw std::logic_error("closed-form family produced an invalid solution");
        bool fits = true;
        for (auto& [k, v] : s.u)
            if (!E.contains(k)) fits = false;
        if (fits) classes.insert(canonical(s));
    }
    return {classes.begin(), classes.end()};
}

// All solutions of length l and weight exactly w (optionally irreducible only).
inline std::vector<Solution> enumerate_minimal_brute(const ExponentSet& E, unsigned l, unsigned w,
                                                     bool irreducible_only = true, u64 bound = 50000000ULL) {
    std::vector<Solution> out;
    if (w == 0) return out;
    const u64 pl = ipow(E.p, l);
    if (l == 0 || pl == 0) throw BudgetError("length out of range");
    const u64 N = pl - 1;
    struct Atom {
        u64 d, pr, val;
    };
    std::vector<Atom> atoms;
    for (u64 d : E.D) {
        u64 pr = 1;
        for (unsigned r = 0; r < l; ++r) {
            atoms.push_back({d, pr, static_cast<u64>((i128(d) * pr) % N)});
            pr *= E.p;
        }
    }
    // multisets of size w from A atoms: C(A + w - 1, w)
    long double combos = 1;
    for (unsigned k = 0; k < w; ++k) combos = combos * (atoms.size() + k) / (k + 1);
    if (combos > static_cast<long double>(bound)) throw BudgetError("brute enumeration exceeds bound");

    std::vector<std::size_t> pick;
    std::vector<unsigned> mult(atoms.size(), 0);
    auto rec = [&](auto&& self, std::size_t start, u64 residue) -> void {
        if (pick.size() == w) {
            if (residue != 0) return;
            Solution s;
            s.p = E.p;
            s.l = l;
            for (auto i : pick) s.u[atoms[i].d] += atoms[i].pr;
            if (!irreducible_only || is_irreducible(E, s)) out.push_back(s);
            return;
        }
        for (std::size_t i = start; i < atoms.size(); ++i) {
            if (mult[i] + 1 > E.p - 1) continue;
            ++mult[i];
            pick.push_back(i);
            u64 nr = residue + atoms[i].val;
            if (nr >= N) nr -= N;
            self(self, i, nr);
            pick.pop_back();
            --mult[i];
        }
    };
    rec(rec, 0, 0);
    return out;
}

inline std::set<Solution> canonical_classes(const std::vector<Solution>& v) {
    std::set<Solution> s;
    for (auto& x : v) s.insert(canonical(x));
    return s;
}

} // namespace asnp
