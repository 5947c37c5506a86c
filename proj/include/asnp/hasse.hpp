#pragma once

#include <asnp/errors.hpp>
#include <asnp/lfun.hpp>
#include <asnp/linalg.hpp>
#include <asnp/modeq.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace asnp {

// phi(v) = A * sigma(v); column j of A is the image of basis vector j.
struct SemiLinearMap {
    FieldPtr ctx;
    Mat A;
    std::vector<u64> labels;  // optional basis labels (minimal support integers)

    std::size_t dim() const { return A.size(); }
};

// Matrix of phi^k: A * A^sigma * ... * A^{sigma^{k-1}}.
inline Mat semilinear_power(const SemiLinearMap& M, unsigned k) {
    Mat C = identity_matrix(M.ctx, M.dim());
    for (unsigned j = 0; j < k; ++j) C = mat_mul(C, frobenius(M.A, j));
    return C;
}

// Matrix of the F_q-linear map phi^m.
inline Mat semilinear_composite(const SemiLinearMap& M) { return semilinear_power(M, M.ctx->m); }

struct SsDecomposition {
    std::vector<Vec> ss_basis;
    std::vector<Vec> nil_basis;
    Mat A_ss;  // phi restricted to V_ss, columns = images, in ss_basis
};

inline SsDecomposition ss_decompose(const SemiLinearMap& M) {
    const std::size_t N = M.dim();
    SsDecomposition out;
    const Mat P = semilinear_power(M, static_cast<unsigned>(N));
    // Im phi^N = column space of P; Ker phi^N = sigma^{-N}(ker P)
    out.ss_basis = column_space(P);
    for (auto& v : kernel(P)) out.nil_basis.push_back(frobenius(v, -static_cast<long long>(N)));
    if (out.ss_basis.size() + out.nil_basis.size() != N) throw std::logic_error("dimensions of V_ss and V_nil do not add up");
    if (N > 0) {
        std::vector<Vec> all = out.ss_basis;
        all.insert(all.end(), out.nil_basis.begin(), out.nil_basis.end());
        if (!all.empty() && rank(from_columns(all)) != N) throw std::logic_error("V_ss and V_nil intersect");
    }
    const std::size_t s = out.ss_basis.size();
    if (s > 0) {
        std::vector<Vec> cols;
        for (const auto& v : out.ss_basis) cols.push_back(solve_in_basis(out.ss_basis, mat_vec(M.A, frobenius(v, 1))));
        out.A_ss = from_columns(cols);
        if (det(out.A_ss).is_zero()) throw std::logic_error("phi is not invertible on V_ss");
    }
    return out;
}

struct FirstSlopeCharpoly {
    std::vector<std::uint32_t> coeffs;  // det(I - T B) over F_p, constant term first
    std::size_t dim_ss = 0;
    std::uint32_t expected_leading = 1;  // (-1)^{dim V_ss} Norm(det A_ss)
    bool degree_matches = false;
    bool leading_matches = false;
};

// det(I - T X) from the characteristic polynomial of X.
inline FPoly reversed_charpoly(const Mat& X) {
    FPoly chi = charpoly(X);
    return FPoly(chi.rbegin(), chi.rend());
}

inline FirstSlopeCharpoly charpoly_first_slope(const SemiLinearMap& M) {
    FirstSlopeCharpoly r;
    const u64 p = M.ctx->p;
    auto dec = ss_decompose(M);
    r.dim_ss = dec.ss_basis.size();
    if (M.dim() == 0) {
        r.coeffs = {1};
    } else {
        FPoly rev = reversed_charpoly(semilinear_composite(M));
        for (auto& c : rev) r.coeffs.push_back(c.prime_value());
        while (r.coeffs.size() > 1 && r.coeffs.back() == 0) r.coeffs.pop_back();
    }
    if (r.dim_ss > 0) {
        std::uint32_t nm = norm_to_prime(det(dec.A_ss));
        r.expected_leading = (r.dim_ss % 2) ? static_cast<std::uint32_t>((p - nm) % p) : nm;
    }
    r.degree_matches = r.coeffs.size() - 1 == r.dim_ss;
    r.leading_matches = r.coeffs.back() == r.expected_leading;
    return r;
}

// Dense coefficients of f^k.
inline std::vector<FieldElement> poly_power(const ASPolynomial& f, unsigned k) {
    const FieldPtr& F = f.ctx();
    std::vector<FieldElement> base(f.degree() + 1, FieldElement(F));
    for (auto& [i, c] : f.coeffs()) base[i] = c;
    std::vector<FieldElement> r{FieldElement::scalar(F, 1)};
    for (unsigned j = 0; j < k; ++j) {
        std::vector<FieldElement> nr(r.size() + base.size() - 1, FieldElement(F));
        for (std::size_t a = 0; a < r.size(); ++a) {
            if (r[a].is_zero()) continue;
            for (std::size_t b = 0; b < base.size(); ++b)
                if (!base[b].is_zero()) nr[a + b] += r[a] * base[b];
        }
        r = std::move(nr);
    }
    return r;
}

inline FieldElement poly_power_coeff(const ASPolynomial& f, unsigned k, u64 j) {
    if (k == 0) throw DomainError("power must be >= 1");
    auto v = poly_power(f, k);
    return j < v.size() ? v[j] : FieldElement(f.ctx());
}

enum class DegreeCase {
    Small,             // d < p-2
    PMinus2,           // d = p-2
    Blocks,            // p^n - 1 <= d <= p^{n+1} - p^2 - 1, n >= 2; also n = 1 up to (p-1)p/2
    BorderedBlocks,    // n = 1, (p-1)p/2 < d <= (p-1)^2
    ThetaBlocks,       // p^{n+1} - p^2 + 1 <= d <= p^{n+1} - p - 1, n >= 2
    ThetaQuadratic,    // p^2 - 2p + 2 <= d <= p^2 - p - 1
    TwoJumps,          // p^{n+1} - p + 1 <= d <= p^{n+1} - 2
};

inline std::string case_name(DegreeCase c) {
    switch (c) {
        case DegreeCase::Small: return "small";
        case DegreeCase::PMinus2: return "p-2";
        case DegreeCase::Blocks: return "blocks";
        case DegreeCase::BorderedBlocks: return "bordered";
        case DegreeCase::ThetaBlocks: return "theta-blocks";
        case DegreeCase::ThetaQuadratic: return "theta-quadratic";
        case DegreeCase::TwoJumps: return "two-jumps";
    }
    return "?";
}

struct DegreeRange {
    DegreeCase tag;
    u64 p, d;
    unsigned n = 0;  // p^n - 1 <= d < p^{n+1} - 1
    u64 i = 0;       // block count for Blocks / BorderedBlocks
    u64 t = 0;       // d = p^{n+1} - t for the theta and two-jump cases
};

inline DegreeRange classify_degree(u64 p, u64 d) {
    if (p == 2 || !is_prime(p)) throw DomainError("p must be an odd prime");
    if (d % p == 0) throw DomainError("gcd(d, p) != 1: apply Artin-Schreier reduction first");
    if (d < 2) throw DomainError("d must be >= 2 (d = 1 gives a rational curve)");
    DegreeRange r{DegreeCase::Small, p, d};
    if (d < p - 2) return r;
    if (d == p - 2) {
        r.tag = DegreeCase::PMinus2;
        return r;
    }
    r.n = log_floor(p, d);
    const u64 pn = ipow(p, r.n), top = pn * p;
    if (r.n == 1) {
        if (d <= (p - 1) * (p - 1)) {
            r.i = std::min<u64>(d / (p - 1), p - 1);
            r.tag = 2 * d > (p - 1) * p ? DegreeCase::BorderedBlocks : DegreeCase::Blocks;
        } else if (d <= p * p - p - 1) {
            r.tag = DegreeCase::ThetaQuadratic;
            r.t = p * p - d;
        } else {
            r.tag = DegreeCase::TwoJumps;
            r.t = top - d;
        }
        return r;
    }
    if (d <= top - p * p - 1) {
        r.tag = DegreeCase::Blocks;
        r.i = std::min<u64>(d / (pn - 1), p - 1);
    } else if (d <= top - p - 1) {
        r.tag = DegreeCase::ThetaBlocks;
        r.t = top - d;
    } else {
        r.tag = DegreeCase::TwoJumps;
        r.t = top - d;
    }
    return r;
}

inline std::vector<u64> minimal_support(u64 p, u64 d) {
    const DegreeRange R = classify_degree(p, d);
    std::vector<u64> s;
    const u64 pn = ipow(p, R.n);
    switch (R.tag) {
        case DegreeCase::Small: s = {1}; break;
        case DegreeCase::PMinus2: s = {1, 2}; break;
        case DegreeCase::Blocks:
            for (u64 k = 1; k <= R.i; ++k)
                for (unsigned j = 0; j < R.n; ++j) s.push_back(k * ipow(p, j));
            break;
        case DegreeCase::BorderedBlocks:
            for (u64 k = 1; k <= R.i; ++k) s.push_back(k);
            s.push_back(p);
            break;
        case DegreeCase::ThetaBlocks:
            for (u64 i = 1; i <= p - 1; ++i)
                for (unsigned k = 0; k < R.n; ++k) s.push_back(i * ipow(p, k));
            s.push_back(pn);
            for (u64 i = R.t; i <= p * p - 1; ++i)
                if (i % p)
                    for (unsigned k = 0; k + 1 < R.n; ++k) s.push_back(i * ipow(p, k));
            break;
        case DegreeCase::ThetaQuadratic:
            for (u64 i = 1; i <= p; ++i) s.push_back(i);
            for (u64 i = R.t; i <= 2 * p - 2; ++i) s.push_back(i);
            break;
        case DegreeCase::TwoJumps:
            for (unsigned k = 0; k <= R.n; ++k) s.push_back(ipow(p, k));
            for (u64 i = R.t; i <= p - 1; ++i)
                for (unsigned k = 0; k < R.n; ++k) s.push_back(i * ipow(p, k));
            break;
    }
    std::sort(s.begin(), s.end());
    return s;
}

namespace detail {

struct CoeffView {
    const ASPolynomial& f;
    FieldElement c(i128 i) const {
        if (i <= 0 || i > i128(f.degree())) return FieldElement(f.ctx());
        return f.coeff(static_cast<unsigned>(i));
    }
};

inline FieldElement at(const std::vector<FieldElement>& v, i128 j, const FieldPtr& F) {
    if (j < 0 || j >= i128(v.size())) return FieldElement(F);
    return v[static_cast<std::size_t>(j)];
}

// i x i matrix (c_{p^n a - b}) with entries above d set to zero; for d = i(p^n - 1) the column b = i is
// zero off the diagonal.
inline Mat block_coefficients(const ASPolynomial& f, const DegreeRange& R) {
    const u64 pn = ipow(R.p, R.n);
    CoeffView cv{f};
    Mat m = zero_matrix(f.ctx(), R.i, R.i);
    for (u64 a = 1; a <= R.i; ++a)
        for (u64 b = 1; b <= R.i; ++b) {
            if (R.d == R.i * (pn - 1) && b == R.i && a != R.i) continue;
            m[a - 1][b - 1] = cv.c(i128(pn) * a - b);
        }
    return m;
}

inline std::vector<FieldElement> theta_vector(const ASPolynomial& f, const DegreeRange& R) {
    const u64 p = R.p;
    const FieldPtr& F = f.ctx();
    CoeffView cv{f};
    std::vector<FieldElement> th(p - 1, FieldElement(F));
    if (R.tag == DegreeCase::ThetaBlocks) {
        const u64 pn1 = ipow(p, R.n - 1), top = pn1 * p * p;
        for (u64 j = 1; j <= p - 1; ++j)
            for (u64 i = R.t; i <= p * p - 1; ++i) {
                if (i % p == 0) continue;
                th[j - 1] += frobenius(cv.c(i128(top) - i), R.n - 1) * cv.c(i128(pn1) * i - j);
            }
    } else {
        const auto f2 = poly_power(f, 2);
        const FieldElement half = FieldElement::scalar(F, 2).inverse();
        for (u64 j = 1; j <= p - 1; ++j) {
            for (u64 i = R.t; i <= 2 * p - 2; ++i)
                th[j - 1] += frobenius(cv.c(i128(p * p) - i), 1) * at(f2, i128(p) * i - j, F);
            th[j - 1] *= half;
        }
    }
    return th;
}

inline FieldElement factorial_inverse(const FieldPtr& F, u64 w) {
    FieldElement f = FieldElement::scalar(F, 1);
    for (u64 k = 2; k <= w; ++k) f *= FieldElement::scalar(F, static_cast<long long>(k));
    return f.inverse();
}

} // namespace detail

struct VertexPrediction {
    DegreeRange range;
    long long x = 0, y = 0;  // predicted first vertex of NP_q(C_f)
    std::vector<u64> support;
    std::function<FieldElement(const ASPolynomial&)> hasse;
};

inline VertexPrediction predicted_first_vertex(u64 p, u64 d) {
    VertexPrediction v;
    v.range = classify_degree(p, d);
    v.support = minimal_support(p, d);
    const DegreeRange R = v.range;
    const long long P1 = static_cast<long long>(p - 1);
    switch (R.tag) {
        case DegreeCase::Small: {
            const u64 w = (p - 1 + d - 1) / d;
            v.x = P1;
            v.y = static_cast<long long>(w);
            v.hasse = [w, p](const ASPolynomial& f) { return poly_power_coeff(f, static_cast<unsigned>(w), p - 1); };
            break;
        }
        case DegreeCase::PMinus2:
            v.x = 2 * P1;
            v.y = 4;
            v.hasse = [p](const ASPolynomial& f) {
                return f.coeff(static_cast<unsigned>(p - 2)) * poly_power_coeff(f, 3, 2 * p - 1);
            };
            break;
        case DegreeCase::Blocks:
            v.x = P1 * R.n * static_cast<long long>(R.i);
            v.y = static_cast<long long>(R.i);
            v.hasse = [R](const ASPolynomial& f) { return det(detail::block_coefficients(f, R)); };
            break;
        case DegreeCase::BorderedBlocks:
            v.x = P1 * static_cast<long long>(R.i + 1);
            v.y = static_cast<long long>(R.i + 1);
            v.hasse = nullptr;  // set below: determinant of the bordered matrix
            break;
        case DegreeCase::ThetaBlocks:
        case DegreeCase::ThetaQuadratic: {
            if (R.tag == DegreeCase::ThetaBlocks) {
                v.x = static_cast<long long>(R.n) * P1 * static_cast<long long>(p);
                v.y = static_cast<long long>(p);
            } else {
                v.x = static_cast<long long>(p + 1) * P1;
                v.y = static_cast<long long>(p + 1);
            }
            v.hasse = [R](const ASPolynomial& f) {
                const u64 p = R.p;
                const u64 pn = ipow(p, R.n);
                detail::CoeffView cv{f};
                Mat m = zero_matrix(f.ctx(), p - 1, p - 1);
                for (u64 a = 2; a <= p - 1; ++a)
                    for (u64 b = 1; b <= p - 1; ++b) m[a - 2][b - 1] = cv.c(i128(pn) * a - b);
                auto th = detail::theta_vector(f, R);
                for (u64 b = 1; b <= p - 1; ++b) m[p - 2][b - 1] = th[b - 1];
                return det(m);
            };
            break;
        }
        case DegreeCase::TwoJumps:
            v.x = static_cast<long long>(2 * R.n + 1) * P1;
            v.y = 2;
            v.hasse = [R](const ASPolynomial& f) {
                const u64 p = R.p, pn = ipow(p, R.n);
                detail::CoeffView cv{f};
                FieldElement s(f.ctx());
                for (u64 i = R.t; i <= p - 1; ++i)
                    s += frobenius(cv.c(i128(pn) * p - i), R.n) * cv.c(i128(pn) * i - 1);
                return s;
            };
            break;
    }
    return v;
}

// Mod-p matrix of the first-slope congruence in the minimal-support basis.
inline SemiLinearMap mbar_matrix(const ASPolynomial& f) {
    if (!f.is_reduced()) throw DomainError("f must be Artin-Schreier reduced");
    const u64 p = f.p(), d = f.degree();
    const DegreeRange R = classify_degree(p, d);
    const FieldPtr& F = f.ctx();
    SemiLinearMap M;
    M.ctx = F;
    M.labels = minimal_support(p, d);
    std::map<u64, std::size_t> idx;
    for (std::size_t k = 0; k < M.labels.size(); ++k) idx[M.labels[k]] = k;
    M.A = zero_matrix(F, M.labels.size(), M.labels.size());
    // phi(e(src)) gains coef * e(dst)
    auto act = [&](u64 src, u64 dst, const FieldElement& coef) {
        auto s = idx.find(src), t = idx.find(dst);
        if (s == idx.end() || t == idx.end()) throw std::logic_error("label outside the minimal support");
        M.A[t->second][s->second] += coef;
    };
    const FieldElement one = FieldElement::scalar(F, 1);
    const FieldElement half = FieldElement::scalar(F, 2).inverse();
    detail::CoeffView cv{f};
    const u64 pn = ipow(p, R.n);

    switch (R.tag) {
        case DegreeCase::Small: {
            const u64 w = (p - 1 + d - 1) / d;
            act(1, 1, poly_power_coeff(f, static_cast<unsigned>(w), p - 1) * detail::factorial_inverse(F, w));
            break;
        }
        case DegreeCase::PMinus2:
            act(1, 1, poly_power_coeff(f, 2, p - 1) * half);
            act(1, 2, cv.c(i128(p) - 2));
            act(2, 1, poly_power_coeff(f, 3, 2 * p - 1) * detail::factorial_inverse(F, 3));
            break;
        case DegreeCase::Blocks: {
            Mat m = detail::block_coefficients(f, R);
            const u64 pn1 = ipow(p, R.n - 1);
            for (u64 k = 1; k <= R.i; ++k)
                for (unsigned j = 0; j + 1 < R.n; ++j) act(k * ipow(p, j), k * ipow(p, j + 1), one);
            for (u64 a = 1; a <= R.i; ++a)
                for (u64 b = 1; b <= R.i; ++b) act(a * pn1, b, m[a - 1][b - 1]);
            break;
        }
        case DegreeCase::BorderedBlocks: {
            const auto f2 = poly_power(f, 2);
            for (u64 a = 1; a <= R.i; ++a)
                for (u64 b = 1; b <= R.i; ++b) act(a, b, cv.c(i128(p) * a - b));
            act(1, p, one);
            for (u64 b = 1; b <= R.i; ++b) act(p, b, detail::at(f2, i128(p * p) - b, F) * half);
            break;
        }
        case DegreeCase::ThetaBlocks: {
            const u64 pn1 = ipow(p, R.n - 1);
            for (u64 i = 1; i <= p - 1; ++i)
                for (unsigned k = 0; k + 1 < R.n; ++k) act(i * ipow(p, k), i * ipow(p, k + 1), one);
            for (u64 i = R.t; i <= p * p - 1; ++i) {
                if (i % p == 0) continue;
                for (unsigned k = 0; k + 2 < R.n; ++k) act(i * ipow(p, k), i * ipow(p, k + 1), one);
                for (u64 j = 1; j <= p - 1; ++j) act(i * ipow(p, R.n - 2), j, cv.c(i128(pn1) * i - j));
                act(pn, i, cv.c(i128(pn) * p - i));
            }
            for (u64 i = 1; i <= p - 1; ++i)
                for (u64 j = 1; j <= p - 1; ++j) act(i * pn1, j, cv.c(i128(pn) * i - j));
            act(pn1, pn, one);
            break;
        }
        case DegreeCase::ThetaQuadratic: {
            const auto f2 = poly_power(f, 2);
            for (u64 a = 1; a <= p - 1; ++a)
                for (u64 b = 1; b <= p - 1; ++b) act(a, b, cv.c(i128(p) * a - b));
            act(1, p, one);
            for (u64 b = 1; b <= p - 1; ++b) act(p, b, detail::at(f2, i128(p * p) - b, F) * half);
            for (u64 n2 = R.t; n2 <= 2 * p - 2; ++n2) {
                act(p, n2, cv.c(i128(p * p) - n2));
                for (u64 j = 1; j <= p - 1; ++j) act(n2, j, detail::at(f2, i128(p) * n2 - j, F) * half);
            }
            break;
        }
        case DegreeCase::TwoJumps: {
            for (unsigned k = 0; k < R.n; ++k) act(ipow(p, k), ipow(p, k + 1), one);
            for (u64 i = R.t; i <= p - 1; ++i) {
                for (unsigned k = 0; k + 1 < R.n; ++k) act(i * ipow(p, k), i * ipow(p, k + 1), one);
                act(i * ipow(p, R.n - 1), 1, cv.c(i128(pn) * i - 1));
                act(pn, i, cv.c(i128(pn) * p - i));
            }
            break;
        }
    }
    return M;
}

inline FieldElement hasse_value(const ASPolynomial& f) {
    const auto pred = predicted_first_vertex(f.p(), f.degree());
    if (pred.range.tag == DegreeCase::BorderedBlocks) return det(mbar_matrix(f).A);
    return pred.hasse(f);
}

struct VertexReport {
    u64 p = 0, d = 0;
    unsigned m = 1;
    std::string case_tag;
    FieldElement hasse;
    bool hasse_nonzero = false;
    long long pred_x = 0, pred_y = 0;
    std::optional<NPVertex> actual;  // first vertex of NP_q(C_f)
    std::size_t dim_ss = 0;
    bool agrees = false;
    bool above = false;
    NewtonPolygon np_curve;
};

inline VertexReport verify_first_vertex(const ASPolynomial& f_in, u64 budget = kDefaultBudget) {
    const ASPolynomial f = as_reduce(f_in);
    VertexReport r;
    r.p = f.p();
    r.d = f.degree();
    r.m = f.m();
    const auto pred = predicted_first_vertex(r.p, r.d);
    r.case_tag = case_name(pred.range.tag);
    r.pred_x = pred.x;
    r.pred_y = pred.y;
    r.hasse = hasse_value(f);
    r.hasse_nonzero = !r.hasse.is_zero();
    r.dim_ss = ss_decompose(mbar_matrix(f)).ss_basis.size();
    const LPolynomial L = l_polynomial(f, budget);
    r.np_curve = np_of_curve(np_of_l(L), r.p);
    r.actual = r.np_curve.first_vertex();
    r.agrees = r.actual && r.actual->x == pred.x && r.actual->y == Rational(pred.y);
    r.above = r.np_curve.ordinate_at(pred.x) >= Rational(pred.y);
    return r;
}

} // namespace asnp
