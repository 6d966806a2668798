#ifndef HEEGNER_CUSP_HPP
#define HEEGNER_CUSP_HPP

#include <complex>
#include <map>
#include <memory>

#include "heegner/hlattice.hpp"

namespace heegner {

/// Data attached to a cusp: the primitive isotropic ell in L, a dual
/// isotropic ell' with <ell, ell'> = delta^{-1}, the definite part
/// D = L cap ell-perp cap ell'-perp with its O_k-basis embedded in L, the
/// congruence parameters M1, M2, the subgroup script-L of L'/L with the
/// projection pi to D'/D and fixed representatives beta-dot.
struct CuspData {
    std::shared_ptr<const HermitianLattice> L;
    KVector ell, ell_prime;          // coordinates in L's basis
    FieldElem l_lp;                  // <ell, ell'> = delta^{-1}
    std::shared_ptr<const HermitianLattice> D_part;
    std::vector<KVector> D_embed;    // O_k-basis of D inside L
    Rational M1, M2;                 // 2Re<L,ell> = M1 Z, |delta| Im<L,ell> = M2 Z
    std::unique_ptr<DiscriminantGroup> disc_L;
    std::unique_ptr<DiscriminantGroup> disc_D;
    std::vector<size_t> L_script;            // coset indices in L'/L
    std::map<size_t, size_t> pi;             // script-L index -> D'/D index
    std::map<size_t, KVector> beta_dot;      // script-L index -> rep in L' cap ell-perp

    /// D-part coordinates -> L coordinates.
    KVector embed_D(const KVector& t) const;
};

CuspData build_cusp(std::shared_ptr<const HermitianLattice> L, const KVector& ell,
                    const KVector& ell_prime);

/// Element [h, t] of the Heisenberg group; t in D-part coordinates.
struct HeisenbergElem {
    Rational h;
    KVector t;
};

HeisenbergElem heisenberg_compose(const CuspData& cusp, const HeisenbergElem& g,
                                  const HeisenbergElem& g2);
HeisenbergElem heisenberg_inverse(const CuspData& cusp, const HeisenbergElem& g);

/// Exact action of [h, t] on the ambient space V: v given in L coordinates.
KVector heisenberg_apply_vector(const CuspData& cusp, const Rational& h,
                                const KVector& t, const KVector& v);

/// Whether [h, t] lies in the discriminant kernel (maps every dual vector x
/// to x mod L).  Brute-force membership oracle for the derived parameters.
bool heisenberg_in_gamma(const CuspData& cusp, const Rational& h, const KVector& t);

/// N and a Z-basis of D_{ell, Gamma} for Gamma the discriminant kernel.
struct HeisenbergParams {
    Rational N;
    std::vector<KVector> D_sub_basis;  // D-part coordinates, rank 2n
};
HeisenbergParams derive_heisenberg_params(const CuspData& cusp);

/// Point (tau, sigma) of the Siegel domain model; sigma in D tensor C.
struct SiegelPoint {
    std::complex<double> tau;
    std::vector<std::complex<double>> sigma;
};

bool in_siegel_domain(const CuspData& cusp, const SiegelPoint& p);
SiegelPoint heisenberg_act(const CuspData& cusp, const HeisenbergElem& g,
                           const SiegelPoint& p);

/// Complex coordinates (in L's basis) of z(tau, sigma) = ell' - delta tau <ell',ell> ell + sigma.
std::vector<std::complex<double>> siegel_z(const CuspData& cusp, const SiegelPoint& p);
/// Numeric hermitian form on complex coordinate vectors.
std::complex<double> numeric_inner(const HermitianLattice& L,
                                   const std::vector<std::complex<double>>& x,
                                   const std::vector<std::complex<double>>& y);

bool in_neighborhood(const CuspData& cusp, const SiegelPoint& p, double eps);

}  // namespace heegner

#endif
