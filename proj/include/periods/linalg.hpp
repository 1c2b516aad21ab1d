#pragma once

#include "periods/qp.hpp"

#include <vector>

namespace periods {

using QpVec = std::vector<Qp>;
using QpMat = std::vector<QpVec>;  // row-major

inline QpVec matvec(const QpMat& A, const QpVec& x) {
    QpVec y;
    y.reserve(A.size());
    for (auto& row : A) {
        Qp s = Qp::zero(x[0].prime());
        for (size_t j = 0; j < row.size(); ++j) s = s + row[j] * x[j];
        y.push_back(s);
    }
    return y;
}

inline QpMat matmul(const QpMat& A, const QpMat& B) {
    size_t n = A.size(), m = B[0].size(), k = B.size();
    QpMat C(n, QpVec(m, Qp::zero(A[0][0].prime())));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (A[i][l].is_zero()) continue;
            for (size_t j = 0; j < m; ++j) C[i][j] = C[i][j] + A[i][l] * B[l][j];
        }
    return C;
}

// Gaussian elimination with p-adic pivoting (smallest valuation pivot).
// Solves A X = B for possibly multiple right-hand sides; A square.
inline QpMat solve_dense(QpMat A, QpMat B) {
    size_t n = A.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        long best = PREC_INF + 1;
        for (size_t r = col; r < n; ++r) {
            if (A[r][col].is_zero()) continue;
            if (A[r][col].val() < best) { best = A[r][col].val(); piv = r; }
        }
        if (best > PREC_INF) throw precision_error("solve_dense: singular matrix at working precision");
        std::swap(A[piv], A[col]);
        std::swap(B[piv], B[col]);
        Qp inv = A[col][col].inverse();
        for (size_t j = col; j < n; ++j) A[col][j] = A[col][j] * inv;
        for (size_t j = 0; j < B[col].size(); ++j) B[col][j] = B[col][j] * inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == col || A[r][col].is_zero()) continue;
            Qp f = A[r][col];
            for (size_t j = col; j < n; ++j) A[r][j] = A[r][j] - f * A[col][j];
            for (size_t j = 0; j < B[r].size(); ++j) B[r][j] = B[r][j] - f * B[col][j];
        }
    }
    return B;
}

inline QpMat identity(size_t n, uint64_t p, long prec) {
    QpMat I(n, QpVec(n, Qp::zero(p, prec)));
    for (size_t i = 0; i < n; ++i) I[i][i] = Qp::from_int(p, 1, prec);
    return I;
}

inline QpMat invert(const QpMat& A, long prec) {
    return solve_dense(A, identity(A.size(), A[0][0].prime(), prec));
}

// Incremental rank profile builder: feed candidate vectors, keep those that
// enlarge the span. Used to select monomial bases.
class RankBuilder {
    QpMat rows_;           // row-reduced accepted vectors
    std::vector<size_t> pivots_;

public:
    size_t rank() const { return rows_.size(); }

    bool try_add(QpVec v) {
        for (size_t k = 0; k < rows_.size(); ++k) {
            const Qp& lead = rows_[k][pivots_[k]];
            Qp f = v[pivots_[k]] / lead;
            if (f.is_zero()) continue;
            for (size_t j = 0; j < v.size(); ++j) v[j] = v[j] - f * rows_[k][j];
        }
        size_t piv = v.size();
        long best = PREC_INF + 1;
        for (size_t j = 0; j < v.size(); ++j) {
            if (v[j].is_zero()) continue;
            if (v[j].val() < best) { best = v[j].val(); piv = j; }
        }
        // reject candidates that only extend the span by high-valuation noise:
        // they make the basis badly conditioned
        if (piv == v.size() || best > PREC_INF / 2) return false;
        rows_.push_back(std::move(v));
        pivots_.push_back(piv);
        return true;
    }
};

}  // namespace periods
