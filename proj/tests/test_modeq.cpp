#include <asnp/modeq.hpp>

#include <gtest/gtest.h>

using namespace asnp;

namespace {

Solution sol(u64 p, unsigned l, std::map<u64, u64> u) {
    Solution s;
    s.p = p;
    s.l = l;
    s.u = std::move(u);
    return s;
}

// Independent minimal-weight oracle: iterative deepening over multisets of atoms d p^r,
// with the residue of the remaining budget pruned by nothing but the weight.
u64 sigma_by_multisets(const ExponentSet& E, unsigned l, u64 wmax) {
    const u64 N = ipow(E.p, l) - 1;
    std::vector<u64> atoms;
    for (u64 d : E.D)
        for (unsigned r = 0; r < l; ++r) atoms.push_back((d % N) * ipow(E.p, r) % N);
    for (u64 w = 1; w <= wmax; ++w) {
        bool hit = false;
        auto rec = [&](auto&& self, std::size_t start, u64 left, u64 res) -> void {
            if (hit) return;
            if (left == 0) {
                hit = res == 0;
                return;
            }
            for (std::size_t i = start; i < atoms.size() && !hit; ++i) self(self, i, left - 1, (res + atoms[i]) % N);
        };
        rec(rec, 0, w, 0);
        if (hit) return w;
    }
    return 0;
}

Rational ceil_rational(const Rational& r) {
    BigInt q = numerator(r) / denominator(r);
    if (Rational(q) < r) ++q;
    return Rational(q);
}

const std::vector<std::pair<u64, u64>> kFamilies = {
    {3, 2}, {3, 4}, {3, 5}, {3, 7}, {3, 8}, {3, 10}, {3, 16}, {3, 17}, {3, 19}, {3, 20}, {3, 23}, {3, 25}, {3, 26},
    {5, 2}, {5, 3}, {5, 4}, {5, 8}, {5, 12}, {5, 16}, {5, 19}, {5, 23}, {7, 5}, {7, 6}, {7, 41}, {7, 47}};

} // namespace

TEST(VerifySolution, Examples) {
    EXPECT_TRUE(verify_solution(ExponentSet::interval(3, 7), sol(3, 3, {{7, 3}, {5, 1}})));
    EXPECT_FALSE(verify_solution(ExponentSet::interval(3, 7), sol(3, 3, {})));
    EXPECT_TRUE(verify_solution(ExponentSet(3, {1}), sol(3, 1, {{1, 2}})));
    EXPECT_FALSE(verify_solution(ExponentSet::interval(3, 7), sol(3, 3, {{7, 3}, {4, 1}})));
    EXPECT_FALSE(verify_solution(ExponentSet::interval(3, 7), sol(3, 1, {{8, 1}})));
}

TEST(Shift, Examples) {
    EXPECT_EQ(shift(sol(3, 3, {{1, 3}})).u.at(1), 9u);
    EXPECT_EQ(shift(sol(3, 2, {{1, 8}})).u.at(1), 8u);
    Solution U = sol(3, 3, {{7, 3}, {5, 1}});
    Solution V = U;
    for (int k = 0; k < 3; ++k) V = shift(V);
    EXPECT_EQ(V, U);
}

TEST(SupportMap, Examples) {
    const auto E = ExponentSet::interval(3, 7);
    auto s = support_map(E, sol(3, 3, {{7, 3}, {5, 1}}));
    EXPECT_EQ(s.values, (std::vector<u64>{1, 3, 2}));
    std::multiset<u64> jumps;
    for (auto& j : s.jumps) jumps.insert(j.second);
    EXPECT_EQ(jumps, (std::multiset<u64>{5, 7}));
    EXPECT_TRUE(s.irreducible);

    auto t = support_map(ExponentSet(3, {1}), sol(3, 1, {{1, 2}}));
    EXPECT_EQ(t.values, (std::vector<u64>{1}));
    ASSERT_EQ(t.jumps.size(), 1u);
    EXPECT_EQ(t.jumps[0].second, 2u);
    EXPECT_THROW(support_map(E, sol(3, 3, {{7, 1}})), DomainError);
}

TEST(IsIrreducible, Examples) {
    const auto E = ExponentSet::interval(3, 7);
    EXPECT_TRUE(is_irreducible(E, sol(3, 3, {{7, 3}, {5, 1}})));
    EXPECT_TRUE(is_irreducible(ExponentSet(3, {1}), sol(3, 1, {{1, 2}})));
    // digits repeated over twice the length
    EXPECT_FALSE(is_irreducible(E, sol(3, 6, {{7, 3 + 3 * 27}, {5, 1 + 27}})));
}

TEST(SigmaMinWeight, Examples) {
    EXPECT_EQ(sigma_min_weight(ExponentSet(3, {1, 2}), 1), 1u);
    EXPECT_EQ(sigma_min_weight(ExponentSet::interval(3, 7), 3), 2u);
    for (u64 p : {3, 5, 7}) EXPECT_EQ(sigma_min_weight(ExponentSet(p, {1}), 1), p - 1);
    EXPECT_THROW(sigma_min_weight(ExponentSet(3, {1}), 20), BudgetError);
}

TEST(SigmaMinWeight, AgreesWithMultisetOracle) {
    for (u64 d : {1, 2, 4, 5, 7, 8, 10, 13, 14})
        for (unsigned l = 1; l <= 4; ++l) {
            const auto E = ExponentSet::interval(3, d);
            EXPECT_EQ(sigma_min_weight(E, l), sigma_by_multisets(E, l, 2 * l)) << d << " " << l;
        }
    for (u64 d : {2, 3, 4, 6})
        for (unsigned l = 1; l <= 3; ++l) {
            const auto E = ExponentSet::interval(5, d);
            EXPECT_EQ(sigma_min_weight(E, l), sigma_by_multisets(E, l, 4 * l)) << d << " " << l;
        }
}

TEST(DensityClosedForm, Examples) {
    EXPECT_EQ(density_closed_form(3, 7), Rational(1, 3));
    EXPECT_EQ(density_closed_form(5, 24), Rational(1, 8));
    EXPECT_EQ(density_closed_form(5, 2), Rational(1, 2));
    EXPECT_THROW(density_closed_form(3, 6), DomainError);
    EXPECT_THROW(density_closed_form(7, 2), DomainError);
}

TEST(DensityBruteforce, Examples) {
    auto a = density_bruteforce(ExponentSet::interval(3, 7), 5);
    EXPECT_EQ(a.density, Rational(1, 3));
    EXPECT_EQ(a.l, 3u);
    auto b = density_bruteforce(ExponentSet(3, {1, 2}), 3);
    EXPECT_EQ(b.density, Rational(1, 2));
    EXPECT_EQ(b.l, 1u);
    EXPECT_EQ(density_bruteforce(ExponentSet(5, {1, 2}), 3).density, density_closed_form(5, 2));
}

TEST(DensityBruteforce, MatchesClosedFormOnDefaultWindow) {
    for (u64 p : {3, 5, 7})
        for (u64 d = (p - 1) / 2; d <= 60; ++d) {
            if (d % p == 0 || d == 0) continue;
            const unsigned lw = default_window(p, d);
            if (ipow(p, lw) > 5000000) continue;
            EXPECT_EQ(density_bruteforce(ExponentSet::interval(p, d), lw).density, density_closed_form(p, d)) << p << " " << d;
        }
}

TEST(SigmaFormula, CeilingOfLengthTimesDensity) {
    for (u64 p : {3, 5})
        for (u64 d : {2, 4, 7, 8, 11, 19, 23}) {
            if (d % p == 0 || 2 * d < p - 1) continue;
            const Rational delta = density_closed_form(p, d);
            for (unsigned l = 1; ipow(p, l) <= 200000; ++l)
                EXPECT_EQ(Rational(sigma_min_weight(ExponentSet::interval(p, d), l)), ceil_rational(Rational(l * (p - 1)) * delta))
                    << p << " " << d << " " << l;
        }
}

TEST(CSequence, Examples) {
    EXPECT_EQ(c_sequence(3, 2, 6), (std::vector<u64>{1, 2, 3, 6, 9, 18}));
    EXPECT_EQ(c_sequence(5, 1, 4), (std::vector<u64>{1, 5, 25, 125}));
    for (u64 p : {3, 5, 7})
        for (u64 s = 1; s <= 6; ++s) {
            auto c = c_sequence(p, s, 4 * s);
            for (u64 i = 1; i <= s; ++i) EXPECT_EQ(c[i - 1], i);
            for (u64 n = 1; n <= 4 * s; ++n) {
                const u64 q = (n - 1) / s, r = n - q * s;
                EXPECT_GE(c[n - 1], ipow(p, static_cast<unsigned>(q)) * r);
            }
        }
}

TEST(SupportWeightLowerBound, Examples) {
    EXPECT_EQ(support_weight_lower_bound(3, 3, 2), 6u);
    EXPECT_EQ(support_weight_lower_bound(3, 1, 1), 1u);
    EXPECT_EQ(support_weight_lower_bound(3, 4, 2), 12u);
    for (u64 p : {3, 5})
        for (u64 s = 1; s <= 4; ++s)
            for (u64 l = s; l <= 9; ++l) {
                auto c = c_sequence(p, s, l);
                u64 sum = 0;
                for (auto v : c) sum += v;
                EXPECT_LE(support_weight_lower_bound(p, l, s), sum) << p << " " << l << " " << s;
                if (s <= 2 && p == 3) EXPECT_EQ(support_weight_lower_bound(p, l, s), sum) << l << " " << s;
            }
}

TEST(EnumerateMinimalClosed, ThreeSeven) {
    auto v = enumerate_minimal_closed(3, 7);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0], canonical(sol(3, 3, {{7, 3}, {5, 1}})));
}

TEST(EnumerateMinimalClosed, ThreeEight) {
    auto v = enumerate_minimal_closed(3, 8);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0], sol(3, 2, {{8, 1}}));
}

TEST(EnumerateMinimalClosed, FiveNineteenWeightOneClasses) {
    auto v = enumerate_minimal_closed(5, 19);
    std::set<Solution> got(v.begin(), v.end());
    for (u64 k : {4, 8, 12, 16}) EXPECT_TRUE(got.count(sol(5, 1, {{k, 1}}))) << k;
}

TEST(EnumerateMinimalClosed, RejectsBadDegree) { EXPECT_THROW(enumerate_minimal_closed(3, 9), DomainError); }

TEST(EnumerateMinimalBrute, Examples) {
    auto v = enumerate_minimal_brute(ExponentSet(3, {1, 2}), 1, 1);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0], sol(3, 1, {{2, 1}}));
    EXPECT_TRUE(enumerate_minimal_brute(ExponentSet::interval(3, 7), 3, 0).empty());
    auto c = canonical_classes(enumerate_minimal_brute(ExponentSet::interval(3, 7), 3, 2));
    auto closed = enumerate_minimal_closed(3, 7);
    EXPECT_EQ(c, std::set<Solution>(closed.begin(), closed.end()));
}

// Closed families against the brute-force census at every (l, w) they occupy.
TEST(EnumerateMinimalClosed, MatchesBruteCensus) {
    for (auto [p, d] : kFamilies) {
        auto closed = enumerate_minimal_closed(p, d);
        const auto E = ExponentSet::interval(p, d);
        std::set<std::pair<unsigned, u64>> shapes;
        for (auto& s : closed) shapes.insert({s.l, s.weight()});
        for (auto [l, w] : shapes) {
            std::vector<Solution> brute;
            try {
                brute = enumerate_minimal_brute(E, l, static_cast<unsigned>(w), true, 3000000);
            } catch (const BudgetError&) {
                continue;
            }
            std::set<Solution> want;
            for (auto& s : closed)
                if (s.l == l && s.weight() == w) want.insert(s);
            EXPECT_EQ(canonical_classes(brute), want) << "p=" << p << " d=" << d << " l=" << l << " w=" << w;
        }
    }
}

TEST(SolutionProperties, HoldOnEveryEnumeratedSolution) {
    for (auto [p, d] : kFamilies) {
        const auto E = ExponentSet::interval(p, d);
        for (const auto& U : enumerate_minimal_closed(p, d)) {
            const auto phi = support_map(E, U);
            const u64 N = U.modulus();
            // shift invariance
            Solution V = U;
            for (unsigned k = 0; k < U.l; ++k) {
                EXPECT_EQ(V.weight(), U.weight());
                EXPECT_EQ(is_irreducible(E, V), phi.irreducible);
                V = shift(V);
            }
            EXPECT_EQ(V, U);
            // digitwise relation sum_d d u_{d,r} = p phi(l-r-1) - phi(l-r)
            u64 wsum = 0;
            for (unsigned r = 0; r < U.l; ++r) {
                u64 lhs = 0;
                for (auto& [dd, v] : U.u) lhs += dd * U.digit(dd, r);
                const u64 a = phi.values[(U.l - r - 1) % U.l], b = phi.values[(U.l - r) % U.l];
                EXPECT_EQ(lhs + b, p * a);
                wsum += U.weight_at(r);
            }
            EXPECT_EQ(wsum, U.weight());
            // support values bounded by the largest jump
            for (auto v : phi.values) EXPECT_LE(v * (p - 1), phi.max_jump());
            // telescoping
            u64 ds = 0;
            for (auto& [dd, v] : U.u) ds += dd * digit_sum(v, p);
            EXPECT_EQ((p - 1) * phi.total(), ds);
            // reconstruction from jumps when there are exactly w of them
            if (phi.jumps.size() == U.weight()) {
                std::map<u64, u64> rebuilt;
                for (auto [i, j] : phi.jumps) {
                    EXPECT_TRUE(E.contains(j));
                    rebuilt[j] += ipow(p, (U.l - 1 - i) % U.l);
                }
                EXPECT_EQ(rebuilt, U.u);
            }
            // support weight bound
            const u64 s = std::min<u64>(phi.jumps.size(), U.weight());
            if (phi.irreducible && s >= 1 && s <= U.l) EXPECT_GE(phi.total(), support_weight_lower_bound(p, U.l, s));
            EXPECT_EQ(U.density(), density_closed_form(p, d));
            (void)N;
        }
    }
}
