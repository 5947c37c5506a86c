#pragma once

#include <asnp/serialize.hpp>

#include <atomic>
#include <fstream>
#include <map>
#include <ostream>
#include <thread>

namespace asnp {

// Polynomial number k of the full degree-d sweep over F_q: c_1 is the least significant base-q
// digit, c_d = 1 + (k / q^{d-1}) runs over the nonzero elements.
inline ASPolynomial sweep_polynomial(const FieldPtr& F, u64 d, u64 k) {
    const u64 q = F->order();
    ASPolynomial f(F);
    for (u64 i = 1; i < d; ++i) {
        f.set(static_cast<unsigned>(i), FieldElement::from_index(F, k % q));
        k /= q;
    }
    f.set(static_cast<unsigned>(d), FieldElement::from_index(F, 1 + k));
    return f;
}

inline u64 sweep_size(const FieldPtr& F, u64 d) {
    const u64 q = F->order();
    const u64 qd = ipow(q, static_cast<unsigned>(d - 1));
    if (qd == 0 || qd > UINT64_MAX / (q - 1)) return 0;
    return (q - 1) * qd;
}

// Runs work(k) for k in [0, count) on `workers` threads and hands results to emit in index order.
template <class Result, class Work, class Emit>
void ordered_parallel(u64 count, unsigned workers, Work work, Emit emit, u64 batch = 512) {
    workers = std::max(1u, workers);
    std::vector<Result> slots;
    for (u64 start = 0; start < count; start += batch) {
        const u64 len = std::min(batch, count - start);
        slots.assign(len, Result{});
        std::atomic<u64> next{0};
        std::exception_ptr err;
        std::mutex err_mu;
        auto run = [&] {
            for (;;) {
                const u64 j = next.fetch_add(1);
                if (j >= len) return;
                try {
                    slots[j] = work(start + j);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!err) err = std::current_exception();
                    next = len;
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
        run();
        for (auto& t : pool) t.join();
        if (err) std::rethrow_exception(err);
        for (u64 j = 0; j < len; ++j) emit(start + j, slots[j]);
    }
}

struct CurveRow {
    u64 index = 0;
    std::string coeffs;
    std::optional<Rational> first_slope;
    std::optional<NPVertex> first_vertex;
    bool supersingular = false;
};

struct SupersingularSummary {
    u64 rows = 0;
    u64 supersingular = 0;
    std::map<std::string, u64> first_slopes;  // slope string -> count
    std::map<std::string, u64> first_vertices;
};

inline CurveRow analyze_curve(const FieldPtr& F, u64 d, u64 k, u64 budget) {
    CurveRow row;
    row.index = k;
    const ASPolynomial f = sweep_polynomial(F, d, k);
    row.coeffs = coeffs_string(f);
    const ASPolynomial g = as_reduce(f);
    const NewtonPolygon np = np_of_curve(np_of_l(l_polynomial(g, budget)), F->p);
    row.first_slope = np.first_slope();
    row.first_vertex = np.first_vertex();
    row.supersingular = is_supersingular(np);
    return row;
}

inline void write_csv_header(std::ostream& os) {
    os << "index,coeffs,first_slope,first_vertex_x,first_vertex_y,supersingular\n";
}

inline void write_csv_row(std::ostream& os, const CurveRow& r) {
    os << r.index << ",\"" << r.coeffs << "\"," << (r.first_slope ? rational_string(*r.first_slope) : "") << ","
       << (r.first_vertex ? std::to_string(r.first_vertex->x) : "") << ","
       << (r.first_vertex ? rational_string(r.first_vertex->y) : "") << "," << (r.supersingular ? 1 : 0) << "\n";
}

// Checks the budget of a full sweep without doing any work.
inline void check_sweep_budget(u64 p, u64 d, unsigned m, u64 budget) {
    auto F = make_field(p, m);
    if (d < 2 || d % p == 0) throw DomainError("degree must be >= 2 and prime to p");
    const u64 per_curve = ipow(p, static_cast<unsigned>(m * (d - 1)));
    const u64 n = sweep_size(F, d);
    if (per_curve == 0 || per_curve > budget)
        throw BudgetError("each curve needs p^{m(d-1)} = " + (per_curve ? std::to_string(per_curve) : std::string("overflow")) +
                          " points; raise --budget to at least that");
    if (n == 0 || n > budget)
        throw BudgetError("sweep has " + (n ? std::to_string(n) : std::string("too many")) + " curves; raise --budget to at least that");
}

inline SupersingularSummary scan_supersingular(u64 p, u64 d, unsigned m, std::ostream* csv, unsigned workers,
                                               u64 budget = kDefaultBudget) {
    check_sweep_budget(p, d, m, budget);
    auto F = make_field(p, m);
    const u64 n = sweep_size(F, d);
    SupersingularSummary s;
    if (csv) write_csv_header(*csv);
    ordered_parallel<CurveRow>(
        n, workers, [&](u64 k) { return analyze_curve(F, d, k, budget); },
        [&](u64, const CurveRow& r) {
            ++s.rows;
            if (r.supersingular) ++s.supersingular;
            ++s.first_slopes[r.first_slope ? rational_string(*r.first_slope) : "none"];
            ++s.first_vertices[r.first_vertex ? "(" + std::to_string(r.first_vertex->x) + "," + rational_string(r.first_vertex->y) + ")"
                                              : "none"];
            if (csv) write_csv_row(*csv, r);
        });
    return s;
}

struct TightnessResult {
    bool found = false;
    u64 tried = 0;
    ASPolynomial witness;
    Rational target;
    std::optional<Rational> value;
};

// Searches f supported on `support` (largest exponent = degree, nonzero) with v_q(S_1(f)) = density(p, d).
inline TightnessResult tightness_search(u64 p, unsigned m, std::vector<u64> support, u64 budget = kDefaultBudget) {
    if (support.empty()) throw DomainError("support must be non-empty");
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    for (auto e : support)
        if (e == 0 || e % p == 0) throw DomainError("support exponents must be positive and prime to p");
    auto F = make_field(p, m);
    const u64 q = F->order();
    const u64 d = support.back();
    TightnessResult res;
    res.target = density_closed_form(p, d);
    const u64 total = (q - 1) * ipow(q, static_cast<unsigned>(support.size() - 1));
    if (q > budget || total == 0 || total > budget) throw BudgetError("tightness search exceeds budget");
    for (u64 k = 0; k < total; ++k) {
        ASPolynomial f(F);
        u64 r = k;
        for (std::size_t j = 0; j + 1 < support.size(); ++j) {
            f.set(static_cast<unsigned>(support[j]), FieldElement::from_index(F, r % q));
            r /= q;
        }
        f.set(static_cast<unsigned>(d), FieldElement::from_index(F, 1 + r));
        ++res.tried;
        auto v = vq(exp_sum(f, 1, budget), m);
        if (v && *v == res.target) {
            res.found = true;
            res.witness = f;
            res.value = v;
            return res;
        }
    }
    return res;
}

} // namespace asnp
