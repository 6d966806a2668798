#ifndef HEEGNER_HLATTICE_HPP
#define HEEGNER_HLATTICE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "heegner/exact_linalg.hpp"
#include "heegner/qfield.hpp"

namespace heegner {

/// Hermitian O_k-lattice given by the Gram matrix of a free basis b_1..b_r.
/// The form is linear in the first argument and conjugate-linear in the
/// second.  The associated Z-basis is (b_1..b_r, zeta*b_1..zeta*b_r); real
/// coordinates below always refer to that basis.
class HermitianLattice {
public:
    HermitianLattice(std::shared_ptr<const FieldSpec> field, KMatrix gram);

    const FieldSpec* field() const { return field_.get(); }
    std::shared_ptr<const FieldSpec> field_ptr() const { return field_; }
    size_t rank() const { return rank_; }
    const KMatrix& gram() const { return gram_; }

    /// <x, y> for vectors in basis coordinates (entries in k).
    FieldElem inner(const KVector& x, const KVector& y) const;
    /// Q(x) = <x, x>, always rational.
    Rational qform(const KVector& x) const;

    /// Trace form matrix T[i][j] = Tr <e_i, e_j> = 2 Re <e_i, e_j> of the
    /// Z-basis e; size 2r x 2r.  Q(x) = (1/2) c^T T c in real coordinates.
    const QMatrix& trace_gram() const { return trace_gram_; }

    QVector real_coords(const KVector& x) const;
    KVector field_coords(const QVector& c) const;

    bool is_integral() const;  // all gram entries in the inverse different
    bool is_even() const;      // integral and Q(b_i) integer
    /// Hermitian signature (pos, neg); trace form has signature (2pos, 2neg).
    std::pair<int, int> signature() const;

    bool in_lattice(const KVector& x) const;  // all coords in O_k
    bool in_dual(const KVector& x) const;     // <x, b_j> in d^-1 for all j

    /// Coordinates (in this basis) of a Z-basis of the dual lattice L'.
    /// Throws on degenerate gram.
    std::vector<KVector> dual_basis() const;

    KVector zero() const { return KVector(rank_, FieldElem(field(), 0, 0)); }

    /// FNV-1a hash of the canonical textual form (discriminant, rank, gram).
    uint64_t hash() const;

private:
    std::shared_ptr<const FieldSpec> field_;
    size_t rank_;
    KMatrix gram_;
    QMatrix trace_gram_;
};

/// L'/L as an abelian group with canonical coset representatives.
class DiscriminantGroup {
public:
    explicit DiscriminantGroup(const HermitianLattice& L);

    size_t size() const { return order_; }
    const std::vector<BigInt>& invariant_factors() const { return invariant_factors_; }

    /// Canonical representative of coset #idx, in lattice basis coordinates.
    const KVector& coset_rep(size_t idx) const { return reps_[idx]; }
    /// Index of the coset of x; nullopt when x is not in L'.
    std::optional<size_t> index_of(const KVector& x) const;
    size_t negate(size_t idx) const { return neg_[idx]; }

    /// Q(rep) mod 1 for coset #idx.
    Rational qform_mod_one(size_t idx) const;
    /// Trace-form pairing Tr <rep_i, rep_j> mod 1.
    Rational pairing_mod_one(size_t i, size_t j) const;

private:
    const HermitianLattice* L_;
    std::vector<BigInt> elementary_divisors_;  // all 2r Smith diagonal entries
    std::vector<BigInt> invariant_factors_;    // the non-unit ones
    size_t order_;
    SmithForm snf_;  // of the trace Gram
    std::vector<KVector> reps_;
    std::vector<size_t> neg_;

    size_t index_of_dual_coords(const ZVector& y) const;
};

/// All lambda in gamma + D with Q(lambda) = m, for negative definite D and
/// m < 0; gamma given in basis coordinates (rational entries).  Results in
/// lexicographic order of the field coordinates.  enumerate_norm_coset is the
/// Fincke-Pohst kernel (parallel over the outer coordinate);
/// enumerate_norm_coset_ref is a naive box search kept as a reference oracle.
std::vector<KVector> enumerate_norm_coset(const HermitianLattice& D,
                                          const KVector& gamma, const Rational& m);
std::vector<KVector> enumerate_norm_coset_ref(const HermitianLattice& D,
                                              const KVector& gamma, const Rational& m);
size_t count_norm_coset(const HermitianLattice& D, const KVector& gamma,
                        const Rational& m);

/// Optional process-wide cache consulted by enumerate_norm_coset before the
/// kernel runs and fed with fresh results afterwards.  Installed by the CLI
/// when a cache directory is configured; empty functions disable the hook.
struct EnumCacheHooks {
    std::function<std::optional<std::vector<KVector>>(
        const HermitianLattice&, const KVector&, const Rational&)> load;
    std::function<void(const HermitianLattice&, const KVector&, const Rational&,
                       const std::vector<KVector>&)> store;
};
void set_enum_cache_hooks(EnumCacheHooks hooks);

}  // namespace heegner

#endif
