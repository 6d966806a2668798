#include <algorithm>
#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "heegner/hlattice.hpp"

namespace heegner {

namespace {

struct EnumSetup {
    QMatrix A;       // -T, positive definite
    QVector g;       // real coordinates of gamma
    Rational target; // -2m
    size_t n;
};

EnumSetup make_setup(const HermitianLattice& D, const KVector& gamma, const Rational& m) {
    if (m >= 0) throw std::invalid_argument("norm must be negative");
    size_t n = 2 * D.rank();
    EnumSetup s;
    s.n = n;
    s.A.assign(n, QVector(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) s.A[i][j] = -D.trace_gram()[i][j];
    if (qmat_signature(s.A) != std::pair<int, int>(static_cast<int>(n), 0))
        throw std::invalid_argument("lattice must be negative definite");
    s.g = D.real_coords(gamma);
    s.target = -2 * m;
    return s;
}

Rational eval_quad(const EnumSetup& s, const QVector& y) {
    Rational acc = 0;
    for (size_t i = 0; i < s.n; ++i) {
        if (y[i] == 0) continue;
        for (size_t j = 0; j < s.n; ++j) acc += y[i] * s.A[i][j] * y[j];
    }
    acc.canonicalize();
    return acc;
}

void sort_results(std::vector<KVector>& out) {
    std::sort(out.begin(), out.end(), [](const KVector& x, const KVector& y) {
        for (size_t i = 0; i < x.size(); ++i) {
            int c = FieldElem::cmp(x[i], y[i]);
            if (c != 0) return c < 0;
        }
        return false;
    });
}

}  // namespace

std::vector<KVector> enumerate_norm_coset_ref(const HermitianLattice& D,
                                              const KVector& gamma, const Rational& m) {
    EnumSetup s = make_setup(D, gamma, m);
    if (s.n == 0) return {};
    QMatrix Ainv = qmat_inverse(s.A);
    double C = rat_double(s.target);

    // |y_i| <= sqrt(2|m| (A^{-1})_ii); exact verification per candidate.
    std::vector<long> lo(s.n), hi(s.n);
    for (size_t i = 0; i < s.n; ++i) {
        double r = std::sqrt(C * rat_double(Ainv[i][i])) + 1e-9;
        double gi = rat_double(s.g[i]);
        lo[i] = static_cast<long>(std::ceil(-gi - r));
        hi[i] = static_cast<long>(std::floor(-gi + r));
        if (lo[i] > hi[i]) return {};
    }

    std::vector<KVector> out;
    std::vector<long> k(lo);
    QVector y(s.n);
    while (true) {
        for (size_t i = 0; i < s.n; ++i) y[i] = s.g[i] + k[i];
        if (eval_quad(s, y) == s.target) out.push_back(D.field_coords(y));
        size_t pos = 0;
        while (pos < s.n && k[pos] == hi[pos]) { k[pos] = lo[pos]; ++pos; }
        if (pos == s.n) break;
        ++k[pos];
    }
    sort_results(out);
    return out;
}

namespace {

// Standard Fincke-Pohst quadratic completion: Q(y) = sum_i q_ii (y_i + sum_{j>i} q_ij y_j)^2.
std::vector<std::vector<double>> fp_decompose(const QMatrix& A) {
    size_t n = A.size();
    std::vector<std::vector<double>> q(n, std::vector<double>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) q[i][j] = rat_double(A[i][j]);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            double t = q[i][j] / q[i][i];
            for (size_t k = j; k < n; ++k) q[j][k] -= t * q[i][k];
            q[i][j] = t;
        }
    }
    return q;
}

// Enumerate levels [0, level] given fixed coordinates above; y holds the
// affine values g_i + k_i.  Slack keeps the float bounds conservative; every
// hit is verified exactly afterwards.
void fp_descend(const EnumSetup& s, const std::vector<std::vector<double>>& q,
                const std::vector<double>& gd, std::vector<double>& y, long level,
                double remaining, std::vector<std::vector<long>>& ks,
                std::vector<long>& k, double slack) {
    if (level < 0) {
        ks.push_back(k);
        return;
    }
    size_t i = static_cast<size_t>(level);
    double u = 0;
    for (size_t j = i + 1; j < s.n; ++j) u += q[i][j] * y[j];
    double r = std::sqrt(std::max(0.0, remaining / q[i][i])) + slack;
    long klo = static_cast<long>(std::ceil(-gd[i] - u - r));
    long khi = static_cast<long>(std::floor(-gd[i] - u + r));
    for (long ki = klo; ki <= khi; ++ki) {
        y[i] = gd[i] + ki;
        double term = y[i] + u;
        double rem = remaining - q[i][i] * term * term;
        if (rem < -slack) continue;
        k[i] = ki;
        fp_descend(s, q, gd, y, level - 1, std::max(rem, 0.0), ks, k, slack);
    }
}

}  // namespace

namespace {
EnumCacheHooks g_cache_hooks;
}

void set_enum_cache_hooks(EnumCacheHooks hooks) { g_cache_hooks = std::move(hooks); }

std::vector<KVector> enumerate_norm_coset(const HermitianLattice& D,
                                          const KVector& gamma, const Rational& m) {
    if (g_cache_hooks.load)
        if (auto hit = g_cache_hooks.load(D, gamma, m)) return *hit;
    EnumSetup s = make_setup(D, gamma, m);
    if (s.n == 0) return {};
    auto q = fp_decompose(s.A);
    std::vector<double> gd(s.n);
    for (size_t i = 0; i < s.n; ++i) gd[i] = rat_double(s.g[i]);
    double C = rat_double(s.target);
    double slack = 1e-7 * (1.0 + C);

    // Outermost coordinate range, split for parallel workers.
    size_t top = s.n - 1;
    double r = std::sqrt(C / q[top][top]) + slack;
    long klo = static_cast<long>(std::ceil(-gd[top] - r));
    long khi = static_cast<long>(std::floor(-gd[top] + r));

    std::vector<std::vector<std::vector<long>>> hits(khi >= klo ? khi - klo + 1 : 0);
#pragma omp parallel for schedule(dynamic)
    for (long kt = klo; kt <= khi; ++kt) {
        std::vector<double> y(s.n, 0.0);
        std::vector<long> k(s.n, 0);
        y[top] = gd[top] + kt;
        k[top] = kt;
        double term = y[top];
        double rem = C - q[top][top] * term * term;
        if (rem < -slack) continue;
        fp_descend(s, q, gd, y, static_cast<long>(top) - 1, std::max(rem, 0.0),
                   hits[kt - klo], k, slack);
    }

    std::vector<KVector> out;
    QVector y(s.n);
    for (auto& bucket : hits)
        for (auto& k : bucket) {
            for (size_t i = 0; i < s.n; ++i) y[i] = s.g[i] + k[i];
            if (eval_quad(s, y) == s.target) out.push_back(D.field_coords(y));
        }
    sort_results(out);
    if (g_cache_hooks.store) g_cache_hooks.store(D, gamma, m, out);
    return out;
}

size_t count_norm_coset(const HermitianLattice& D, const KVector& gamma,
                        const Rational& m) {
    return enumerate_norm_coset(D, gamma, m).size();
}

}  // namespace heegner
