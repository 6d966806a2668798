#ifndef HEEGNER_LOCAL_PRODUCTS_HPP
#define HEEGNER_LOCAL_PRODUCTS_HPP

#include <complex>
#include <map>

#include "heegner/cusp.hpp"

namespace heegner {

/// Finite linear combination sum c(beta, m) H_ell(beta, m) of local Heegner
/// divisors; keys are (index into script-L, negative rational m).
struct HeegnerCombo {
    std::map<std::pair<size_t, Rational>, long> terms;
};

/// Validates keys against the cusp: beta in script-L, m < 0 with
/// m = Q(beta-dot) mod 1, and the symmetry c(beta, m) = c(-beta, m).
/// Throws std::invalid_argument on violation.
void validate_combo(const CuspData& cusp, const HeegnerCombo& combo);

/// All lambda = kappa + beta-dot with Q(lambda) = m, weighted c(beta, m)/2;
/// lambda in L coordinates.
std::vector<std::pair<KVector, Rational>> expand_divisor(const CuspData& cusp,
                                                         const HeegnerCombo& combo);

/// F_lambda(t, t') = 2 Re<t,lambda> <t',lambda>, and its decomposition
/// F = B + H with B(t,t') = <t,lambda><t',lambda>, H(t,t') = <t',lambda><lambda,t>.
/// lambda in L coordinates; t, t' in D-part coordinates.
FieldElem eval_F(const CuspData& cusp, const KVector& lambda, const KVector& t,
                 const KVector& t2);
FieldElem eval_B(const CuspData& cusp, const KVector& lambda, const KVector& t,
                 const KVector& t2);
FieldElem eval_H(const CuspData& cusp, const KVector& lambda, const KVector& t,
                 const KVector& t2);

struct LocalProductValue {
    std::complex<double> value{1.0, 0.0};
    double tail_bound{0.0};
    bool divisor_hit{false};  // some factor vanished below tolerance
};

/// Truncated local Borcherds product Psi_lambda(z) over representatives
/// alpha = p + zeta q with 0 <= p < |disc| and |q| <= truncation.
LocalProductValue eval_local_product(const CuspData& cusp, const KVector& lambda,
                                     const SiegelPoint& p, long truncation);

/// Closed-form automorphy factor J_lambda([h,t], z).  zeta_shift adds an even
/// integer to Re(zeta) in the exponent, to check independence of the choice.
std::complex<double> automorphy_factor(const CuspData& cusp, const KVector& lambda,
                                       const HeisenbergElem& g, const SiegelPoint& p,
                                       long zeta_shift = 0);

/// Exact Chern cocycle c_lambda(g, g') = -2|delta| Re<t,lambda> Im<t',lambda>.
/// Requires g, g' in the discriminant kernel's Heisenberg group.
Rational chern_cocycle(const CuspData& cusp, const KVector& lambda,
                       const HeisenbergElem& g, const HeisenbergElem& g2);

/// Sum of multiplicity * c_lambda over the expanded divisor, exact.
Rational chern_class_of_combo(const CuspData& cusp, const HeisenbergParams& params,
                              const HeegnerCombo& combo, const KVector& t,
                              const KVector& t2);

}  // namespace heegner

#endif
