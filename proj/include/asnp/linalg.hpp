#pragma once

#include <asnp/ff.hpp>

#include <vector>

namespace asnp {

using Vec = std::vector<FieldElement>;
using Mat = std::vector<Vec>;  // row-major
using FPoly = std::vector<FieldElement>;  // little-endian coefficients

inline Mat zero_matrix(const FieldPtr& F, std::size_t r, std::size_t c) { return Mat(r, Vec(c, FieldElement(F))); }

inline Mat identity_matrix(const FieldPtr& F, std::size_t n) {
    Mat I = zero_matrix(F, n, n);
    for (std::size_t i = 0; i < n; ++i) I[i][i] = FieldElement::scalar(F, 1);
    return I;
}

inline Mat transpose(const Mat& A) {
    if (A.empty()) return A;
    Mat T(A[0].size(), Vec(A.size()));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A[0].size(); ++j) T[j][i] = A[i][j];
    return T;
}

inline Mat mat_mul(const Mat& A, const Mat& B) {
    const FieldPtr& F = A[0][0].ctx();
    Mat C = zero_matrix(F, A.size(), B[0].size());
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t k = 0; k < B.size(); ++k) {
            if (A[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < B[0].size(); ++j) C[i][j] += A[i][k] * B[k][j];
        }
    return C;
}

inline Vec mat_vec(const Mat& A, const Vec& v) {
    Vec r(A.size(), FieldElement(v[0].ctx()));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) r[i] += A[i][j] * v[j];
    return r;
}

inline Mat frobenius(const Mat& A, long long e) {
    Mat R = A;
    for (auto& row : R)
        for (auto& x : row) x = frobenius(x, e);
    return R;
}

inline Vec frobenius(const Vec& v, long long e) {
    Vec r = v;
    for (auto& x : r) x = frobenius(x, e);
    return r;
}

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Mat& A) {
    std::vector<std::size_t> piv;
    if (A.empty()) return piv;
    const std::size_t rows = A.size(), cols = A[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t k = r;
        while (k < rows && A[k][c].is_zero()) ++k;
        if (k == rows) continue;
        std::swap(A[k], A[r]);
        const FieldElement inv = A[r][c].inverse();
        for (auto& x : A[r]) x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c].is_zero()) continue;
            const FieldElement f = A[i][c];
            for (std::size_t j = 0; j < cols; ++j) A[i][j] -= f * A[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

inline std::size_t rank(Mat A) { return rref(A).size(); }

// Basis of the column space, as a list of column vectors taken from A.
inline std::vector<Vec> column_space(const Mat& A) {
    Mat R = A;
    auto piv = rref(R);
    std::vector<Vec> out;
    for (auto c : piv) {
        Vec v(A.size());
        for (std::size_t i = 0; i < A.size(); ++i) v[i] = A[i][c];
        out.push_back(v);
    }
    return out;
}

inline std::vector<Vec> kernel(const Mat& A) {
    const FieldPtr& F = A[0][0].ctx();
    const std::size_t cols = A[0].size();
    Mat R = A;
    auto piv = rref(R);
    std::vector<bool> is_piv(cols, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<Vec> out;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_piv[free]) continue;
        Vec v(cols, FieldElement(F));
        v[free] = FieldElement::scalar(F, 1);
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -R[i][free];
        out.push_back(v);
    }
    return out;
}

// Matrix whose columns are the given vectors.
inline Mat from_columns(const std::vector<Vec>& cols) {
    Mat M(cols[0].size(), Vec(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < cols[j].size(); ++i) M[i][j] = cols[j][i];
    return M;
}

// Coordinates x with B x = v (B has independent columns); throws if v is outside the span.
inline Vec solve_in_basis(const std::vector<Vec>& basis, const Vec& v) {
    const std::size_t n = v.size(), k = basis.size();
    Mat aug(n, Vec(k + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug[i][j] = basis[j][i];
        aug[i][k] = v[i];
    }
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == k) throw std::logic_error("vector not in span");
    Vec x(k, FieldElement(v[0].ctx()));
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug[i][k];
    return x;
}

inline FieldElement det(Mat A) {
    const std::size_t n = A.size();
    const FieldPtr& F = A[0][0].ctx();
    FieldElement d = FieldElement::scalar(F, 1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t k = c;
        while (k < n && A[k][c].is_zero()) ++k;
        if (k == n) return FieldElement(F);
        if (k != c) {
            std::swap(A[k], A[c]);
            d = -d;
        }
        d *= A[c][c];
        const FieldElement inv = A[c][c].inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (A[i][c].is_zero()) continue;
            const FieldElement f = A[i][c] * inv;
            for (std::size_t j = c; j < n; ++j) A[i][j] -= f * A[c][j];
        }
    }
    return d;
}

inline FPoly poly_mul(const FPoly& a, const FPoly& b) {
    const FieldPtr& F = a[0].ctx();
    FPoly r(a.size() + b.size() - 1, FieldElement(F));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// det(x I - A) via Hessenberg reduction.
inline FPoly charpoly(Mat H) {
    const std::size_t n = H.size();
    const FieldPtr& F = H[0][0].ctx();
    for (std::size_t m = 1; m + 1 < n; ++m) {
        std::size_t i = m;
        while (i < n && H[i][m - 1].is_zero()) ++i;
        if (i == n) continue;
        if (i != m) {
            std::swap(H[i], H[m]);
            for (auto& row : H) std::swap(row[i], row[m]);
        }
        const FieldElement inv = H[m][m - 1].inverse();
        for (std::size_t j = m + 1; j < n; ++j) {
            if (H[j][m - 1].is_zero()) continue;
            const FieldElement u = H[j][m - 1] * inv;
            for (std::size_t c = 0; c < n; ++c) H[j][c] -= u * H[m][c];
            for (std::size_t r = 0; r < n; ++r) H[r][m] += u * H[r][j];
        }
    }
    std::vector<FPoly> P(n + 1);
    P[0] = {FieldElement::scalar(F, 1)};
    for (std::size_t k = 1; k <= n; ++k) {
        // P_k = (x - h_kk) P_{k-1} - sum_{i<k} h_{ik} (prod_{j=i+1}^{k} h_{j,j-1}) P_{i-1}, 1-indexed
        FPoly cur = poly_mul({-H[k - 1][k - 1], FieldElement::scalar(F, 1)}, P[k - 1]);
        FieldElement prod = FieldElement::scalar(F, 1);
        for (std::size_t i = k - 1; i >= 1; --i) {
            prod *= H[i][i - 1];  // h_{i+1,i} in 1-indexed terms
            const FieldElement coef = H[i - 1][k - 1] * prod;
            if (!coef.is_zero())
                for (std::size_t j = 0; j < P[i - 1].size(); ++j) cur[j] -= coef * P[i - 1][j];
        }
        P[k] = cur;
    }
    return P[n];
}

} // namespace asnp
