// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.
#include <asnp/scan.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace asnp;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

bool run(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (secs > limit_s) {
        o.pass = false;
        o.detail += " (over time limit)";
    }
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " " << title << ": " << o.detail << " [" << secs
         << "s / " << limit_s << "s]";
    std::cout << line.str() << std::endl;
    return o.pass;
}

Rational ceil_rational(const Rational& r) {
    BigInt q = numerator(r) / denominator(r);
    if (Rational(q) < r) ++q;
    return Rational(q);
}

Outcome density_agreement() {
    int checked = 0, bad = 0;
    std::string first_bad;
    auto one = [&](u64 p, u64 d, unsigned lmax) {
        Rational closed;
        try {
            closed = density_closed_form(p, d);
        } catch (const DomainError&) {
            return;
        }
        auto b = density_bruteforce(ExponentSet::interval(p, d), lmax);
        ++checked;
        if (b.density != closed) {
            if (!bad++) first_bad = "p=" + std::to_string(p) + " d=" + std::to_string(d);
        }
    };
    for (u64 d = 1; d <= 26; ++d)
        if (d % 3) one(3, d, 7);
    for (u64 d : {2, 3, 4, 18, 19, 23, 24}) one(5, d, 4);
    return {bad == 0 && checked == 25, std::to_string(checked) + " degrees compared, " + std::to_string(bad) + " mismatches" +
                                           (bad ? " (first " + first_bad + ")" : "")};
}

Outcome sigma_formula() {
    int checked = 0, bad = 0;
    for (u64 d : {2, 5, 7, 8, 23}) {
        const Rational delta = density_closed_form(3, d);
        for (unsigned l = 1; l <= 6; ++l) {
            ++checked;
            if (Rational(sigma_min_weight(ExponentSet::interval(3, d), l)) != ceil_rational(Rational(2 * l) * delta)) ++bad;
        }
    }
    return {bad == 0, std::to_string(checked) + " (d, l) pairs, " + std::to_string(bad) + " mismatches"};
}

Outcome census() {
    std::ostringstream msg;
    bool ok = true;
    auto compare = [&](u64 p, u64 d, unsigned l, unsigned w) {
        auto brute = canonical_classes(enumerate_minimal_brute(ExponentSet::interval(p, d), l, w));
        std::set<Solution> closed;
        for (auto& s : enumerate_minimal_closed(p, d))
            if (s.l == l && s.weight() == w) closed.insert(s);
        const bool eq = brute == closed;
        ok = ok && eq;
        msg << "(" << p << "," << d << ",l=" << l << ",w=" << w << "): " << brute.size() << (eq ? "==" : "!=") << closed.size()
            << "; ";
    };
    compare(3, 7, 3, 2);
    compare(3, 8, 2, 1);
    compare(3, 23, 5, 2);
    // the n = 2 family of (3,23) lives at l = 2w
    for (unsigned w = 1; w <= 3; ++w) compare(3, 23, 2 * w, w);
    return {ok, msg.str()};
}

Outcome elliptic() {
    auto F = make_field(3, 1);
    auto f = parse_coeffs(F, "2:1");
    auto L = l_polynomial(f);
    auto npc = np_of_curve(np_of_l(L), 3);
    const bool lok = L.b.size() == 2 && L.b[0] == CycInt::integer(3, 1) && L.b[1] == CycInt(3, {1, 2});
    const bool npok = npc.vertices == std::vector<NPVertex>{{0, Rational(0)}, {2, Rational(1)}};
    const bool ss = is_supersingular(npc);
    return {lok && npok && ss, std::string("L=1+(1+2z)T ") + (lok ? "ok" : "wrong") + ", NP " + (npok ? "ok" : "wrong") +
                                   ", supersingular=" + (ss ? "true" : "false")};
}

Outcome supersingular_sweep() {
    auto s = scan_supersingular(3, 8, 1, nullptr, 4);
    const bool slopes = s.first_slopes.size() == 1 && s.first_slopes.count("1/4") && s.first_slopes.at("1/4") == s.rows;
    return {s.rows == 4374 && s.supersingular == 0 && slopes,
            std::to_string(s.rows) + " curves, " + std::to_string(s.supersingular) + " supersingular, first slope 1/4 on " +
                std::to_string(s.first_slopes.count("1/4") ? s.first_slopes.at("1/4") : 0)};
}

Outcome hasse_sweep() {
    auto F = make_field(3, 1);
    const u64 n = sweep_size(F, 7);
    struct Row {
        bool hasse = false, c5zero = false, ok = true;
    };
    u64 rows = 0, nonzero = 0, zero5 = 0, bad = 0;
    ordered_parallel<Row>(
        n, 4,
        [&](u64 k) {
            Row r;
            auto f = sweep_polynomial(F, 7, k);
            auto npc = np_of_curve(np_of_l(l_polynomial(as_reduce(f))), 3);
            const auto c7 = f.coeff(7), c5 = f.coeff(5);
            r.hasse = !(c7.pow(3) * c5).is_zero();
            r.c5zero = c5.is_zero();
            if (r.hasse) {
                auto v = npc.first_vertex();
                r.ok = v && v->x == 6 && v->y == Rational(2);
            }
            if (r.c5zero) r.ok = r.ok && npc.ordinate_at(6) > Rational(2);
            return r;
        },
        [&](u64, const Row& r) {
            ++rows;
            nonzero += r.hasse;
            zero5 += r.c5zero;
            bad += !r.ok;
        });
    return {rows == 1458 && bad == 0, std::to_string(rows) + " curves: " + std::to_string(nonzero) + " with c7^3 c5 != 0, " +
                                          std::to_string(zero5) + " with c5 = 0, " + std::to_string(bad) + " violations"};
}

Outcome tightness() {
    auto r = tightness_search(3, 3, {7, 5});
    return {r.found && r.value && *r.value == Rational(1, 3),
            r.found ? "witness " + coeffs_string(r.witness) + " after " + std::to_string(r.tried) + " tries, v_q(S_1)=" +
                          rational_string(*r.value)
                    : "no witness among " + std::to_string(r.tried)};
}

Outcome semilinear_suite() {
    std::mt19937_64 rng(20240601);
    u64 maps = 0, bad = 0;
    for (auto [p, m] : std::vector<std::pair<u64, unsigned>>{{3, 1}, {3, 2}, {5, 1}, {5, 2}}) {
        auto F = make_field(p, m);
        for (int k = 0; k < 1000; ++k) {
            const std::size_t N = 1 + rng() % 6;
            SemiLinearMap M{F, zero_matrix(F, N, N), {}};
            const unsigned density = 1 + rng() % 4;  // fill probability density/4
            for (std::size_t i = 0; i < N; ++i)
                for (std::size_t j = 0; j < N; ++j)
                    if (rng() % 4 < density) M.A[i][j] = FieldElement::from_index(F, rng() % F->order());
            ++maps;
            try {
                auto r = charpoly_first_slope(M);
                auto dec = ss_decompose(M);
                if (!r.degree_matches || !r.leading_matches || dec.ss_basis.size() + dec.nil_basis.size() != N) ++bad;
            } catch (const std::logic_error&) {
                ++bad;
            }
        }
    }
    return {bad == 0, std::to_string(maps) + " maps, " + std::to_string(bad) + " failures"};
}

Outcome global_bounds() {
    std::mt19937_64 rng(99991);
    u64 done = 0, bad = 0;
    std::map<std::string, u64> per;
    while (done < 500) {
        const u64 p = rng() % 2 ? 3 : 5;
        const unsigned m = 1 + rng() % 2;
        const unsigned d = 2 + rng() % 7;
        if (d % p == 0) continue;
        const u64 need = ipow(p, m * (d - 1));
        if (need == 0 || need > kDefaultBudget) continue;
        auto F = make_field(p, m);
        ASPolynomial f(F);
        for (unsigned i = 1; i < d; ++i) f.set(i, FieldElement::from_index(F, rng() % F->order()));
        f.set(d, FieldElement::from_index(F, 1 + rng() % (F->order() - 1)));
        auto g = as_reduce(f);
        auto np = np_of_l(l_polynomial(g));
        const Rational delta = density_closed_form(p, d);
        bool ok = np.vertices.back().x == static_cast<long long>(d - 1) && np.vertices.back().y == Rational(d - 1, 2);
        if (auto s = np.first_slope()) ok = ok && *s >= delta;
        std::multiset<Rational> slopes, mirrored;
        for (auto& [len, s] : np.segments())
            for (long long j = 0; j < len; ++j) {
                slopes.insert(s);
                mirrored.insert(1 - s);
            }
        ok = ok && slopes == mirrored;
        bad += !ok;
        ++done;
        ++per["p=" + std::to_string(p) + ",m=" + std::to_string(m)];
    }
    std::string mix;
    for (auto& [k, v] : per) mix += k + ":" + std::to_string(v) + " ";
    return {bad == 0, std::to_string(done) + " curves (" + mix + "), " + std::to_string(bad) + " failures"};
}

} // namespace

int main() {
    bool all = true;
    all &= run(1, "density oracle agreement", 300, density_agreement);
    all &= run(2, "minimal weight equals ceil(l(p-1)delta)", 120, sigma_formula);
    all &= run(3, "minimal-solution census", 600, census);
    all &= run(4, "elliptic sanity", 1, elliptic);
    all &= run(5, "no supersingular curve for p=3, d=8", 600, supersingular_sweep);
    all &= run(6, "first vertex and Hasse value for p=3, d=7", 600, hasse_sweep);
    all &= run(7, "tightness witness over F_27", 60, tightness);
    all &= run(8, "semi-linear property suite", 120, semilinear_suite);
    all &= run(9, "global lower bound and symmetry", 900, global_bounds);
    return all ? 0 : 1;
}
