#ifndef HEEGNER_WEIL_THETA_HPP
#define HEEGNER_WEIL_THETA_HPP

#include <string>

#include "heegner/cohomology.hpp"

namespace heegner {

/// Dual Weil representation rho_D^* on C[D'/D], stored through exact phases:
/// rho^*(T) e_gamma = e(-Q(gamma)) e_gamma,
/// rho^*(S) e_gamma = sqrt(i)^{-2n}/sqrt(|D'/D|) sum_delta e(b(gamma,delta)) e_delta,
/// with b = Tr<.,.> the trace bilinear form and weight k = n + 2.
struct WeilRep {
    size_t dim{0};
    int weight{0};
    std::vector<Rational> t_phase;               // -Q(gamma) mod 1
    std::vector<std::vector<Rational>> s_phase;  // b(gamma, delta) mod 1
    double s_scale{1.0};                         // 1/sqrt(|D'/D|)
    std::complex<double> s_global{1.0, 0.0};     // sqrt(i)^{-2n} = e(-n/4)

    std::vector<std::complex<double>> t_matrix_diag() const;
    std::vector<std::vector<std::complex<double>>> s_matrix() const;
};

/// Requires an even definite D.
WeilRep build_weil_rep(const HermitianLattice& D);

/// Polarization vector v = v_k + i * v_ik in W over R, both parts with
/// k-coordinates in the D-part basis.  The attached harmonic polynomial is
/// P(u, v) = 2 (Re<u,v>)^2 - (<u,u>/n) <v,v>, exact in Q(sqrt|disc|).
struct PolynomialP {
    KVector v_k, v_ik;
    std::string label;
};

RealQuadVal poly_re_pair(const HermitianLattice& D, const KVector& u, const PolynomialP& v);
RealQuadVal poly_qv(const HermitianLattice& D, const PolynomialP& v);
RealQuadVal poly_P(const HermitianLattice& D, const KVector& u, const PolynomialP& v);

/// Symbolic harmonicity: the trace-form Laplacian annihilates P(., v).
bool harmonic_check(const HermitianLattice& D, const PolynomialP& v);

/// Fourier coefficients a(gamma, m) = sum_{lambda in gamma+D, Q(lambda)=-m}
/// P(lambda, v) of Theta_P, for 0 < m <= max_norm, keyed by (coset index, m).
struct ThetaExpansion {
    std::map<std::pair<size_t, Rational>, RealQuadVal> coeffs;
    Rational max_norm{0};
    std::string v_label;
};

ThetaExpansion build_theta(const CuspData& cusp, const PolynomialP& v,
                           const Rational& max_norm);

/// Max component deviation between f(tau+1) vs rho^*(T) f(tau) and f(-1/tau)
/// vs tau^k rho^*(S) f(tau) for the truncated q-series.  Requires
/// Im(tau) >= 0.8 and Im(-1/tau) >= 0.8.
double theta_modularity_check(const CuspData& cusp, const WeilRep& rep,
                              const ThetaExpansion& theta, std::complex<double> tau);

/// Polarization vectors {v_a} and {v_a + v_b, a < b} over the real basis
/// {f_j, i f_j} of W; their theta series span the coefficient functionals of
/// the theta subspace.
std::vector<PolynomialP> spanning_set(const CuspData& cusp);

struct ObstructionWitness {
    size_t v_index;
    RealQuadVal residual;
};

/// Obstruction pairing: sum c(beta,m) a(pi(beta), -m) over the combo, for
/// every spanning v; exact.  True iff all vanish.
std::pair<bool, std::vector<ObstructionWitness>> obstruction_check(
    const CuspData& cusp, const HeegnerCombo& combo);

/// Text table "gamma m coefficient", one coefficient per line.
std::string theta_to_text(const ThetaExpansion& theta);

}  // namespace heegner

#endif
