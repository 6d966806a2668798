#ifndef HEEGNER_EXACT_LINALG_HPP
#define HEEGNER_EXACT_LINALG_HPP

#include <optional>
#include <utility>
#include <vector>

#include "heegner/qfield.hpp"
#include "heegner/rational.hpp"

namespace heegner {

using QMatrix = std::vector<std::vector<Rational>>;
using QVector = std::vector<Rational>;
using ZMatrix = std::vector<std::vector<BigInt>>;
using ZVector = std::vector<BigInt>;
using KMatrix = std::vector<std::vector<FieldElem>>;
using KVector = std::vector<FieldElem>;

QMatrix qmat_identity(size_t n);
QMatrix qmat_mul(const QMatrix& A, const QMatrix& B);
QVector qmat_apply(const QMatrix& A, const QVector& x);
Rational qmat_det(QMatrix A);
/// Inverse; throws std::invalid_argument when singular.
QMatrix qmat_inverse(const QMatrix& A);
/// Solves A x = b; nullopt when inconsistent (A may be rectangular).
std::optional<QVector> qmat_solve(const QMatrix& A, const QVector& b);
/// Basis of the rational null space of A (vectors of length cols).
std::vector<QVector> qmat_kernel(const QMatrix& A);
/// Signature (positive, negative) of a symmetric rational matrix.
std::pair<int, int> qmat_signature(QMatrix A);

/// Smith normal form  S = P * A * Q  with P, Q unimodular and S diagonal with
/// s_1 | s_2 | ... >= 0.  Pinv is the inverse of P.
struct SmithForm {
    std::vector<BigInt> diag;  // length min(rows, cols), padded view of S
    ZMatrix P, Pinv, Q;
    size_t rows{0}, cols{0};
};
SmithForm smith_normal_form(ZMatrix A);

ZMatrix zmat_mul(const ZMatrix& A, const ZMatrix& B);
ZVector zmat_apply(const ZMatrix& A, const ZVector& x);

/// Basis of {x in Z^cols : A x = 0}; columns of Q past the rank.
std::vector<ZVector> zmat_kernel(const ZMatrix& A);
/// One integral solution of A x = b, if any.
std::optional<ZVector> zmat_solve(const ZMatrix& A, const ZVector& b);
/// Basis of the lattice {x in Z^cols : A x integral} for rational A.
std::vector<QVector> preimage_lattice(const QMatrix& A);

/// Gaussian elimination over the field k.  Solves A x = b; nullopt when
/// inconsistent.
std::optional<KVector> kmat_solve(const KMatrix& A, const KVector& b);

}  // namespace heegner

#endif
