#include "heegner/hlattice.hpp"

#include <sstream>

namespace heegner {

HermitianLattice::HermitianLattice(std::shared_ptr<const FieldSpec> field, KMatrix gram)
    : field_(std::move(field)), rank_(gram.size()), gram_(std::move(gram)) {
    for (auto& row : gram_)
        if (row.size() != rank_)
            throw std::invalid_argument("gram matrix must be square");
    for (size_t i = 0; i < rank_; ++i)
        for (size_t j = 0; j < rank_; ++j)
            if (gram_[i][j] != gram_[j][i].conj())
                throw std::invalid_argument("gram matrix must be hermitian");

    // Z-basis (b_1..b_r, zeta*b_1..zeta*b_r)
    FieldElem zeta(field_.get(), 0, 1);
    size_t n = 2 * rank_;
    trace_gram_.assign(n, QVector(n, 0));
    for (size_t i = 0; i < rank_; ++i)
        for (size_t j = 0; j < rank_; ++j) {
            const FieldElem& g = gram_[i][j];
            trace_gram_[i][j] = g.trace();
            trace_gram_[i][rank_ + j] = (zeta.conj() * g).trace();
            trace_gram_[rank_ + i][j] = (zeta * g).trace();
            trace_gram_[rank_ + i][rank_ + j] = (g * field_->zeta_norm).trace();
        }
}

FieldElem HermitianLattice::inner(const KVector& x, const KVector& y) const {
    FieldElem acc(field(), 0, 0);
    for (size_t i = 0; i < rank_; ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < rank_; ++j)
            acc += x[i] * y[j].conj() * gram_[i][j];
    }
    return acc;
}

Rational HermitianLattice::qform(const KVector& x) const {
    FieldElem v = inner(x, x);
    if (v.b != 0) throw std::logic_error("hermitian square not real");
    return v.a;
}

QVector HermitianLattice::real_coords(const KVector& x) const {
    QVector c(2 * rank_);
    for (size_t i = 0; i < rank_; ++i) {
        c[i] = x[i].a;
        c[rank_ + i] = x[i].b;
    }
    return c;
}

KVector HermitianLattice::field_coords(const QVector& c) const {
    KVector x(rank_, FieldElem(field(), 0, 0));
    for (size_t i = 0; i < rank_; ++i) x[i] = FieldElem(field(), c[i], c[rank_ + i]);
    return x;
}

bool HermitianLattice::is_integral() const {
    for (auto& row : gram_)
        for (auto& g : row)
            if (!g.in_inverse_different()) return false;
    return true;
}

bool HermitianLattice::is_even() const {
    if (!is_integral()) return false;
    for (size_t i = 0; i < rank_; ++i)
        if (!is_integer(gram_[i][i].a) || gram_[i][i].b != 0) return false;
    return true;
}

std::pair<int, int> HermitianLattice::signature() const {
    auto [p, q] = qmat_signature(trace_gram_);
    if (p % 2 || q % 2) throw std::logic_error("trace form signature not even");
    return {p / 2, q / 2};
}

bool HermitianLattice::in_lattice(const KVector& x) const {
    for (auto& c : x)
        if (!c.in_ring_of_integers()) return false;
    return true;
}

bool HermitianLattice::in_dual(const KVector& x) const {
    for (size_t j = 0; j < rank_; ++j) {
        KVector bj = zero();
        bj[j] = FieldElem(field(), 1, 0);
        if (!inner(x, bj).in_inverse_different()) return false;
    }
    return true;
}

std::vector<KVector> HermitianLattice::dual_basis() const {
    QMatrix Tinv = qmat_inverse(trace_gram_);  // throws when degenerate
    std::vector<KVector> basis;
    basis.reserve(2 * rank_);
    for (size_t j = 0; j < 2 * rank_; ++j) basis.push_back(field_coords(Tinv[j]));
    return basis;
}

uint64_t HermitianLattice::hash() const {
    std::ostringstream os;
    os << field_->disc << ";" << rank_ << ";";
    for (auto& row : gram_)
        for (auto& g : row) os << g.str() << ";";
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : os.str()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// ---- DiscriminantGroup ----

DiscriminantGroup::DiscriminantGroup(const HermitianLattice& L) : L_(&L) {
    if (!L.is_integral())
        throw std::invalid_argument("discriminant group requires an integral lattice");
    size_t n = 2 * L.rank();
    ZMatrix T(n, ZVector(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const Rational& v = L.trace_gram()[i][j];
            if (!is_integer(v)) throw std::logic_error("trace gram not integral");
            T[i][j] = v.get_num();
        }
    snf_ = smith_normal_form(T);
    elementary_divisors_ = snf_.diag;
    BigInt order = 1;
    for (auto& s : elementary_divisors_) {
        if (s == 0) throw std::invalid_argument("degenerate lattice");
        if (s != 1) invariant_factors_.push_back(s);
        order *= s;
    }
    if (!order.fits_ulong_p())
        throw std::invalid_argument("discriminant group too large");
    order_ = order.get_ui();

    // Coset of dual-basis coordinates y is determined by (P y) mod diag.
    // Canonical representative: y0 = Pinv * residues, then real coordinates
    // c = T^{-1} y0 in the lattice basis.
    QMatrix Tinv = qmat_inverse(L.trace_gram());
    reps_.reserve(order_);
    for (size_t idx = 0; idx < order_; ++idx) {
        size_t rem = idx;
        ZVector res(n, 0);
        for (size_t i = 0; i < n; ++i) {
            unsigned long s = elementary_divisors_[i].get_ui();
            res[i] = static_cast<long>(rem % s);
            rem /= s;
        }
        ZVector y0 = zmat_apply(snf_.Pinv, res);
        QVector y0q(n);
        for (size_t i = 0; i < n; ++i) y0q[i] = Rational(y0[i]);
        reps_.push_back(L.field_coords(qmat_apply(Tinv, y0q)));
    }
    neg_.resize(order_);
    for (size_t idx = 0; idx < order_; ++idx) {
        KVector m = reps_[idx];
        for (auto& c : m) c = -c;
        auto ni = index_of(m);
        if (!ni) throw std::logic_error("negation left the dual lattice");
        neg_[idx] = *ni;
    }
}

size_t DiscriminantGroup::index_of_dual_coords(const ZVector& y) const {
    ZVector u = zmat_apply(snf_.P, y);
    size_t idx = 0, weight = 1;
    for (size_t i = 0; i < u.size(); ++i) {
        BigInt s = elementary_divisors_[i];
        BigInt r;
        mpz_fdiv_r(r.get_mpz_t(), u[i].get_mpz_t(), s.get_mpz_t());
        idx += r.get_ui() * weight;
        weight *= s.get_ui();
    }
    return idx;
}

std::optional<size_t> DiscriminantGroup::index_of(const KVector& x) const {
    QVector y = qmat_apply(L_->trace_gram(), L_->real_coords(x));
    ZVector yi(y.size());
    for (size_t i = 0; i < y.size(); ++i) {
        if (!is_integer(y[i])) return std::nullopt;
        yi[i] = y[i].get_num();
    }
    return index_of_dual_coords(yi);
}

Rational DiscriminantGroup::qform_mod_one(size_t idx) const {
    return mod_one(L_->qform(reps_[idx]));
}

Rational DiscriminantGroup::pairing_mod_one(size_t i, size_t j) const {
    return mod_one(L_->inner(reps_[i], reps_[j]).trace());
}

}  // namespace heegner
