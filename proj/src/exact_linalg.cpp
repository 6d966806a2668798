#include "heegner/exact_linalg.hpp"

#include <algorithm>
#include <cstdlib>

namespace heegner {

QMatrix qmat_identity(size_t n) {
    QMatrix I(n, QVector(n, 0));
    for (size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

QMatrix qmat_mul(const QMatrix& A, const QMatrix& B) {
    size_t m = A.size(), k = B.size(), n = B.empty() ? 0 : B[0].size();
    QMatrix C(m, QVector(n, 0));
    for (size_t i = 0; i < m; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (A[i][l] == 0) continue;
            for (size_t j = 0; j < n; ++j) C[i][j] += A[i][l] * B[l][j];
        }
    return C;
}

QVector qmat_apply(const QMatrix& A, const QVector& x) {
    QVector y(A.size(), 0);
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) y[i] += A[i][j] * x[j];
    return y;
}

Rational qmat_det(QMatrix A) {
    size_t n = A.size();
    Rational det = 1;
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && A[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) { std::swap(A[piv], A[k]); det = -det; }
        det *= A[k][k];
        for (size_t i = k + 1; i < n; ++i) {
            if (A[i][k] == 0) continue;
            Rational f = A[i][k] / A[k][k];
            for (size_t j = k; j < n; ++j) A[i][j] -= f * A[k][j];
        }
    }
    det.canonicalize();
    return det;
}

QMatrix qmat_inverse(const QMatrix& A) {
    size_t n = A.size();
    QMatrix M = A, I = qmat_identity(n);
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && M[piv][k] == 0) ++piv;
        if (piv == n) throw std::invalid_argument("singular matrix");
        std::swap(M[piv], M[k]);
        std::swap(I[piv], I[k]);
        Rational d = M[k][k];
        for (size_t j = 0; j < n; ++j) { M[k][j] /= d; I[k][j] /= d; }
        for (size_t i = 0; i < n; ++i) {
            if (i == k || M[i][k] == 0) continue;
            Rational f = M[i][k];
            for (size_t j = 0; j < n; ++j) {
                M[i][j] -= f * M[k][j];
                I[i][j] -= f * I[k][j];
            }
        }
    }
    return I;
}

std::optional<QVector> qmat_solve(const QMatrix& A, const QVector& b) {
    size_t m = A.size(), n = m ? A[0].size() : 0;
    QMatrix M(m, QVector(n + 1));
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) M[i][j] = A[i][j];
        M[i][n] = b[i];
    }
    std::vector<size_t> pivot_col;
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        size_t piv = row;
        while (piv < m && M[piv][col] == 0) ++piv;
        if (piv == m) continue;
        std::swap(M[piv], M[row]);
        Rational d = M[row][col];
        for (size_t j = col; j <= n; ++j) M[row][j] /= d;
        for (size_t i = 0; i < m; ++i) {
            if (i == row || M[i][col] == 0) continue;
            Rational f = M[i][col];
            for (size_t j = col; j <= n; ++j) M[i][j] -= f * M[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (size_t i = row; i < m; ++i)
        if (M[i][n] != 0) return std::nullopt;
    QVector x(n, 0);
    for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = M[i][n];
    return x;
}

std::vector<QVector> qmat_kernel(const QMatrix& A) {
    size_t m = A.size(), n = m ? A[0].size() : 0;
    QMatrix M = A;
    std::vector<long> pivot_of_col(n, -1);
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        size_t piv = row;
        while (piv < m && M[piv][col] == 0) ++piv;
        if (piv == m) continue;
        std::swap(M[piv], M[row]);
        Rational d = M[row][col];
        for (size_t j = col; j < n; ++j) M[row][j] /= d;
        for (size_t i = 0; i < m; ++i) {
            if (i == row || M[i][col] == 0) continue;
            Rational f = M[i][col];
            for (size_t j = col; j < n; ++j) M[i][j] -= f * M[row][j];
        }
        pivot_of_col[col] = static_cast<long>(row);
        ++row;
    }
    std::vector<QVector> basis;
    for (size_t col = 0; col < n; ++col) {
        if (pivot_of_col[col] >= 0) continue;
        QVector v(n, 0);
        v[col] = 1;
        for (size_t c = 0; c < n; ++c)
            if (pivot_of_col[c] >= 0) v[c] = -M[pivot_of_col[c]][col];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::pair<int, int> qmat_signature(QMatrix A) {
    size_t n = A.size();
    int pos = 0, neg = 0;
    for (size_t k = 0; k < n; ++k) {
        if (A[k][k] == 0) {
            size_t sw = n;
            for (size_t j = k + 1; j < n; ++j)
                if (A[j][j] != 0) { sw = j; break; }
            if (sw < n) {
                std::swap(A[k], A[sw]);
                for (size_t i = 0; i < n; ++i) std::swap(A[i][k], A[i][sw]);
            } else {
                // all remaining diagonal entries zero; find off-diagonal
                size_t bi = n, bj = n;
                for (size_t i = k; i < n && bi == n; ++i)
                    for (size_t j = i + 1; j < n; ++j)
                        if (A[i][j] != 0) { bi = i; bj = j; break; }
                if (bi == n) break;  // zero block
                for (size_t j = 0; j < n; ++j) A[bi][j] += A[bj][j];
                for (size_t i = 0; i < n; ++i) A[i][bi] += A[i][bj];
                if (bi != k) {
                    std::swap(A[k], A[bi]);
                    for (size_t i = 0; i < n; ++i) std::swap(A[i][k], A[i][bi]);
                }
            }
        }
        if (A[k][k] == 0) { --k; continue; }
        if (A[k][k] > 0) ++pos; else ++neg;
        for (size_t i = k + 1; i < n; ++i) {
            if (A[i][k] == 0) continue;
            Rational f = A[i][k] / A[k][k];
            for (size_t j = 0; j < n; ++j) A[i][j] -= f * A[k][j];
            for (size_t j = 0; j < n; ++j) A[j][i] -= f * A[j][k];
        }
    }
    return {pos, neg};
}

// ---- integer matrices ----

ZMatrix zmat_mul(const ZMatrix& A, const ZMatrix& B) {
    size_t m = A.size(), k = B.size(), n = B.empty() ? 0 : B[0].size();
    ZMatrix C(m, ZVector(n, 0));
    for (size_t i = 0; i < m; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (A[i][l] == 0) continue;
            for (size_t j = 0; j < n; ++j) C[i][j] += A[i][l] * B[l][j];
        }
    return C;
}

ZVector zmat_apply(const ZMatrix& A, const ZVector& x) {
    ZVector y(A.size(), 0);
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) y[i] += A[i][j] * x[j];
    return y;
}

static ZMatrix zmat_identity(size_t n) {
    ZMatrix I(n, ZVector(n, 0));
    for (size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

SmithForm smith_normal_form(ZMatrix A) {
    size_t m = A.size(), n = m ? A[0].size() : 0;
    SmithForm out;
    out.rows = m;
    out.cols = n;
    out.P = zmat_identity(m);
    out.Pinv = zmat_identity(m);
    out.Q = zmat_identity(n);

    auto add_row = [&](size_t dst, size_t src, const BigInt& c) {
        // row dst += c * row src;  Pinv column src -= c * column dst
        for (size_t j = 0; j < n; ++j) A[dst][j] += c * A[src][j];
        for (size_t j = 0; j < m; ++j) out.P[dst][j] += c * out.P[src][j];
        for (size_t i = 0; i < m; ++i) out.Pinv[i][src] -= c * out.Pinv[i][dst];
    };
    auto add_col = [&](size_t dst, size_t src, const BigInt& c) {
        for (size_t i = 0; i < m; ++i) A[i][dst] += c * A[i][src];
        for (size_t i = 0; i < n; ++i) out.Q[i][dst] += c * out.Q[i][src];
    };
    auto swap_rows = [&](size_t i, size_t j) {
        std::swap(A[i], A[j]);
        std::swap(out.P[i], out.P[j]);
        for (size_t r = 0; r < m; ++r) std::swap(out.Pinv[r][i], out.Pinv[r][j]);
    };
    auto swap_cols = [&](size_t i, size_t j) {
        for (size_t r = 0; r < m; ++r) std::swap(A[r][i], A[r][j]);
        for (size_t r = 0; r < n; ++r) std::swap(out.Q[r][i], out.Q[r][j]);
    };
    auto negate_row = [&](size_t i) {
        for (size_t j = 0; j < n; ++j) A[i][j] = -A[i][j];
        for (size_t j = 0; j < m; ++j) out.P[i][j] = -out.P[i][j];
        for (size_t r = 0; r < m; ++r) out.Pinv[r][i] = -out.Pinv[r][i];
    };

    size_t t = 0;
    size_t dim = std::min(m, n);
    while (t < dim) {
        // locate minimal nonzero entry in the trailing block
        size_t pi = m, pj = n;
        BigInt best = 0;
        for (size_t i = t; i < m; ++i)
            for (size_t j = t; j < n; ++j) {
                if (A[i][j] == 0) continue;
                BigInt v = abs(A[i][j]);
                if (best == 0 || v < best) { best = v; pi = i; pj = j; }
            }
        if (pi == m) break;  // trailing block zero
        if (pi != t) swap_rows(t, pi);
        if (pj != t) swap_cols(t, pj);
        if (A[t][t] < 0) negate_row(t);

        bool clean = true;
        for (size_t i = t + 1; i < m; ++i) {
            if (A[i][t] == 0) continue;
            BigInt q;
            mpz_fdiv_q(q.get_mpz_t(), A[i][t].get_mpz_t(), A[t][t].get_mpz_t());
            add_row(i, t, -q);
            if (A[i][t] != 0) clean = false;
        }
        for (size_t j = t + 1; j < n; ++j) {
            if (A[t][j] == 0) continue;
            BigInt q;
            mpz_fdiv_q(q.get_mpz_t(), A[t][j].get_mpz_t(), A[t][t].get_mpz_t());
            add_col(j, t, -q);
            if (A[t][j] != 0) clean = false;
        }
        if (!clean) continue;

        // divisibility: A[t][t] must divide every later entry
        bool fixed = true;
        for (size_t i = t + 1; i < m && fixed; ++i)
            for (size_t j = t + 1; j < n && fixed; ++j)
                if (A[i][j] % A[t][t] != 0) {
                    add_row(t, i, 1);
                    fixed = false;
                }
        if (fixed) ++t;
    }
    out.diag.resize(dim);
    for (size_t i = 0; i < dim; ++i) out.diag[i] = A[i][i];
    return out;
}

std::vector<ZVector> zmat_kernel(const ZMatrix& A) {
    SmithForm sf = smith_normal_form(A);
    std::vector<ZVector> basis;
    for (size_t j = 0; j < sf.cols; ++j) {
        bool in_kernel = j >= sf.diag.size() || sf.diag[j] == 0;
        if (!in_kernel) continue;
        ZVector v(sf.cols);
        for (size_t i = 0; i < sf.cols; ++i) v[i] = sf.Q[i][j];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<ZVector> zmat_solve(const ZMatrix& A, const ZVector& b) {
    SmithForm sf = smith_normal_form(A);
    ZVector pb = zmat_apply(sf.P, b);
    ZVector y(sf.cols, 0);
    for (size_t i = 0; i < sf.rows; ++i) {
        BigInt s = i < sf.diag.size() ? sf.diag[i] : BigInt(0);
        if (s == 0) {
            if (pb[i] != 0) return std::nullopt;
        } else {
            if (pb[i] % s != 0) return std::nullopt;
            y[i] = pb[i] / s;
        }
    }
    return zmat_apply(sf.Q, y);
}

std::vector<QVector> preimage_lattice(const QMatrix& A) {
    size_t m = A.size(), n = m ? A[0].size() : 0;
    BigInt q = 1;
    for (auto& row : A)
        for (auto& e : row) q = lcm(q, e.get_den());
    ZMatrix B(m, ZVector(n));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j) {
            Rational v = A[i][j] * Rational(q);
            v.canonicalize();
            B[i][j] = v.get_num();
        }
    SmithForm sf = smith_normal_form(B);
    // x = Q y with y_i in (q / gcd(s_i, q)) Z
    std::vector<QVector> basis;
    for (size_t j = 0; j < n; ++j) {
        BigInt s = j < sf.diag.size() ? sf.diag[j] : BigInt(0);
        BigInt d = (s == 0) ? BigInt(1) : q / gcd(s, q);
        QVector v(n, 0);
        for (size_t i = 0; i < n; ++i) v[i] = Rational(sf.Q[i][j] * d);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<KVector> kmat_solve(const KMatrix& A, const KVector& b) {
    size_t m = A.size(), n = m ? A[0].size() : 0;
    KMatrix M(m, KVector(n + 1));
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) M[i][j] = A[i][j];
        M[i][n] = b[i];
    }
    const FieldSpec* F = nullptr;
    for (auto& row : M)
        for (auto& e : row)
            if (e.F) F = e.F;
    std::vector<size_t> pivot_col;
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        size_t piv = row;
        while (piv < m && M[piv][col].is_zero()) ++piv;
        if (piv == m) continue;
        std::swap(M[piv], M[row]);
        FieldElem d = M[row][col];
        for (size_t j = col; j <= n; ++j) M[row][j] = M[row][j] / d;
        for (size_t i = 0; i < m; ++i) {
            if (i == row || M[i][col].is_zero()) continue;
            FieldElem f = M[i][col];
            for (size_t j = col; j <= n; ++j) M[i][j] = M[i][j] - f * M[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (size_t i = row; i < m; ++i)
        if (!M[i][n].is_zero()) return std::nullopt;
    KVector x(n, FieldElem(F, 0, 0));
    for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = M[i][n];
    return x;
}

}  // namespace heegner
