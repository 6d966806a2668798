#ifndef HEEGNER_COHOMOLOGY_HPP
#define HEEGNER_COHOMOLOGY_HPP

#include <optional>
#include <utility>

#include "heegner/local_products.hpp"

namespace heegner {

enum class BilKind { ImHermitian, ImSymmetric, Combination };

/// Real-valued bilinear form on W, tabulated on the Z-basis of D_{ell,Gamma};
/// values[i][j] = B(t_i, t_j).  Membership in BIL_Z means all entries integral.
struct BilZForm {
    BilKind kind{BilKind::Combination};
    QMatrix values;
};

bool bilz_integral(const BilZForm& form);

struct TorsionWitness {
    size_t i{0}, j{0};   // failing basis pair of D_{ell,Gamma}
    FieldElem residual;  // exact nonzero residual
};

struct TorsionVerdict {
    bool is_torsion{false};
    Rational q_factor{0};  // proportionality constant when torsion
    std::optional<TorsionWitness> witness;
};

/// The antisymmetric form (t,t') -> (1/N) Im<t,t'>/|delta| generating the
/// kernel into H^2(Gamma_ell, Z); exact, asserted integral on the basis.
BilZForm transgression_generator(const CuspData& cusp, const HeisenbergParams& params);

/// Decides whether B(t,t') = Q * Im<t,t'>/|delta| for some rational Q on all
/// basis pairs.  Requires form in BIL_Z.
TorsionVerdict kernel_test(const CuspData& cusp, const HeisenbergParams& params,
                           const BilZForm& form);

enum class CochainKind { Hermitian, Symmetric };

/// Numeric verification that the explicit one-cochain u([h,t], z) trivializes
/// Im H (resp. Im G): checks del-u(g, g', z) = Im H(t,t') (resp. Im G(t',t))
/// and z-independence at random group elements and points.  The form is given
/// by its matrix on the D-part basis (hermitian, linear in the first slot, or
/// complex symmetric).
bool trivializing_cochain_check(const CuspData& cusp, CochainKind kind,
                                const KMatrix& form, int trials, unsigned seed,
                                double tol = 1e-9);

/// Exact torsion criterion for a combination of local Heegner divisors: for
/// every basis pair (t,t') of D_{ell,Gamma} the sum over (beta, m) and over
/// lambda in pi(beta) + D with Q(lambda) = m of
///   c(beta,m) [ F_lambda(t,t') - (<lambda,lambda>/n) <t',t> ]
/// must vanish in k.  Witness carries the first nonzero residual.
TorsionVerdict torsion_check_combo(const CuspData& cusp, const HeisenbergParams& params,
                                   const HeegnerCombo& combo);

/// Exact Gram-Schmidt basis of the definite part: <f_l, f_m> = -d_l delta_{lm}
/// with d_l > 0 rational; the normalized basis e_l = f_l/sqrt(d_l) has
/// <e_l, e_l> = -1 and never needs its square roots materialized.
struct OrthoBasis {
    std::vector<KVector> f;   // D-part coordinates
    std::vector<Rational> d;  // -<f_l, f_l>
};
OrthoBasis orthogonal_basis(const HermitianLattice& D);

/// tr B_lambda = sum_l <e_l,lambda>^2 = sum_l <f_l,lambda>^2 / d_l, exact in k.
FieldElem trace_B(const HermitianLattice& D, const OrthoBasis& ob, const KVector& lambda);
/// tr H_lambda = sum_l <e_l,lambda><lambda,e_l>; equals -<lambda,lambda>.
Rational trace_H(const HermitianLattice& D, const OrthoBasis& ob, const KVector& lambda);

/// Necessary condition: the weighted sum of tr B_lambda over the expanded
/// divisor vanishes.  Returns the flag and the exact value.
std::pair<bool, FieldElem> necessary_trace_condition(const CuspData& cusp,
                                                     const HeegnerCombo& combo);

}  // namespace heegner

#endif
