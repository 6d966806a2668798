#include "heegner/local_products.hpp"

#include <cmath>

namespace heegner {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kDivisorTol = 1e-12;

std::complex<double> e_of(std::complex<double> x) {
    // e(x) = exp(2 pi i x)
    return std::exp(std::complex<double>(0.0, kTwoPi) * x);
}

FieldElem pair_with_lambda(const CuspData& cusp, const KVector& t, const KVector& lambda) {
    return cusp.L->inner(cusp.embed_D(t), lambda);
}

bool in_zspan(const HermitianLattice& D, const std::vector<KVector>& basis,
              const KVector& v) {
    size_t n = 2 * D.rank();
    if (basis.empty()) {
        for (auto& c : v)
            if (!c.is_zero()) return false;
        return true;
    }
    ZMatrix M(n, ZVector(basis.size()));
    for (size_t j = 0; j < basis.size(); ++j) {
        QVector c = D.real_coords(basis[j]);
        for (size_t i = 0; i < n; ++i) {
            if (!is_integer(c[i])) throw std::logic_error("non-integral sublattice basis");
            M[i][j] = c[i].get_num();
        }
    }
    QVector vc = D.real_coords(v);
    ZVector rhs(n);
    for (size_t i = 0; i < n; ++i) {
        if (!is_integer(vc[i])) return false;
        rhs[i] = vc[i].get_num();
    }
    return zmat_solve(M, rhs).has_value();
}

}  // namespace

void validate_combo(const CuspData& cusp, const HeegnerCombo& combo) {
    for (auto& [key, c] : combo.terms) {
        auto [bidx, m] = key;
        auto it = cusp.beta_dot.find(bidx);
        if (it == cusp.beta_dot.end())
            throw std::invalid_argument("combo key outside script-L");
        if (m >= 0) throw std::invalid_argument("combo requires m < 0");
        Rational diff = m - cusp.L->qform(it->second);
        diff.canonicalize();
        if (!is_integer(diff))
            throw std::invalid_argument("m violates the coset norm congruence");
        size_t nb = cusp.disc_L->negate(bidx);
        auto neg = combo.terms.find({nb, m});
        if (neg == combo.terms.end() || neg->second != c)
            throw std::invalid_argument("combo violates c(beta, m) = c(-beta, m)");
    }
}

std::vector<std::pair<KVector, Rational>> expand_divisor(const CuspData& cusp,
                                                         const HeegnerCombo& combo) {
    validate_combo(cusp, combo);
    const FieldSpec* F = cusp.L->field();
    std::vector<std::pair<KVector, Rational>> out;
    for (auto& [key, c] : combo.terms) {
        auto [bidx, m] = key;
        const KVector& bdot = cusp.beta_dot.at(bidx);
        // ell-component of beta-dot: <beta-dot, ell'> = a <ell, ell'> = a delta^{-1}
        FieldElem a = cusp.L->inner(bdot, cusp.ell_prime) * field_delta(F);
        const KVector& gamma = cusp.disc_D->coset_rep(cusp.pi.at(bidx));
        Rational weight = Rational(c) / 2;
        weight.canonicalize();
        for (auto& mu : enumerate_norm_coset(*cusp.D_part, gamma, m)) {
            KVector lam = cusp.embed_D(mu);
            for (size_t i = 0; i < lam.size(); ++i) lam[i] += a * cusp.ell[i];
            out.emplace_back(std::move(lam), weight);
        }
    }
    return out;
}

FieldElem eval_F(const CuspData& cusp, const KVector& lambda, const KVector& t,
                 const KVector& t2) {
    Rational s = pair_with_lambda(cusp, t, lambda).real();
    return pair_with_lambda(cusp, t2, lambda) * (2 * s);
}

FieldElem eval_B(const CuspData& cusp, const KVector& lambda, const KVector& t,
                 const KVector& t2) {
    return pair_with_lambda(cusp, t, lambda) * pair_with_lambda(cusp, t2, lambda);
}

FieldElem eval_H(const CuspData& cusp, const KVector& lambda, const KVector& t,
                 const KVector& t2) {
    return pair_with_lambda(cusp, t2, lambda) * pair_with_lambda(cusp, t, lambda).conj();
}

LocalProductValue eval_local_product(const CuspData& cusp, const KVector& lambda,
                                     const SiegelPoint& p, long truncation) {
    const HermitianLattice& L = *cusp.L;
    if (!L.in_dual(lambda)) throw std::invalid_argument("lambda not in L'");
    if (!L.inner(lambda, cusp.ell).is_zero())
        throw std::invalid_argument("lambda not orthogonal to ell");
    if (L.qform(lambda) >= 0) throw std::invalid_argument("Q(lambda) must be negative");
    if (truncation < 1) throw std::invalid_argument("truncation must be >= 1");
    if (!in_siegel_domain(cusp, p))
        throw std::invalid_argument("point outside the Siegel domain");

    long absD = L.field()->abs_disc();
    std::complex<double> zeta_c = L.field()->zeta_complex();
    auto z = siegel_z(cusp, p);
    std::vector<std::complex<double>> lc(lambda.size());
    for (size_t i = 0; i < lambda.size(); ++i) lc[i] = lambda[i].embed();
    std::complex<double> w = numeric_inner(L, z, lc);

    LocalProductValue out;
    for (long q = -truncation; q <= truncation; ++q) {
        double sign = q < 0 ? -1.0 : 1.0;
        for (long pr = 0; pr < absD; ++pr) {
            std::complex<double> alpha(static_cast<double>(pr), 0.0);
            alpha += zeta_c * static_cast<double>(q);
            std::complex<double> factor =
                1.0 - e_of(sign * (w + alpha / static_cast<double>(absD)));
            if (std::abs(factor) < kDivisorTol) out.divisor_hit = true;
            out.value *= factor;
        }
    }

    // geometric tail estimate for |q| > truncation
    double rho = std::exp(-M_PI / std::sqrt(static_cast<double>(absD)));
    double amp = std::exp(kTwoPi * std::abs(w.imag()));
    double s = 4.0 * absD * amp * std::pow(rho, truncation + 1) / (1.0 - rho);
    out.tail_bound = std::abs(out.value) * (std::expm1(std::min(s, 700.0)));
    return out;
}

std::complex<double> automorphy_factor(const CuspData& cusp, const KVector& lambda,
                                       const HeisenbergElem& g, const SiegelPoint& p,
                                       long zeta_shift) {
    if (zeta_shift % 2 != 0) throw std::invalid_argument("zeta shift must be even");
    const HermitianLattice& L = *cusp.L;
    long absD = L.field()->abs_disc();
    Rational s = pair_with_lambda(cusp, g.t, lambda).real();
    auto z = siegel_z(cusp, p);
    std::vector<std::complex<double>> lc(lambda.size());
    for (size_t i = 0; i < lambda.size(); ++i) lc[i] = lambda[i].embed();
    std::complex<double> w = numeric_inner(L, z, lc);
    // exact part of the exponent: (-2s^2 + s) zeta + s; its real part is
    // reduced mod 1 exactly, which also makes the result independent of the
    // admissible choices of Re(zeta)
    Rational coeff = -2 * s * s + s;
    Rational re_exact = coeff * (L.field()->zeta_re + zeta_shift) + s;
    re_exact = mod_one(re_exact);
    double im_exact =
        rat_double(coeff) * std::sqrt(static_cast<double>(absD)) / 2.0;
    std::complex<double> expo =
        -2.0 * static_cast<double>(absD) * w * rat_double(s) +
        std::complex<double>(rat_double(re_exact), im_exact);
    return e_of(expo);
}

Rational chern_cocycle(const CuspData& cusp, const KVector& lambda,
                       const HeisenbergElem& g, const HeisenbergElem& g2) {
    if (!heisenberg_in_gamma(cusp, g.h, g.t) || !heisenberg_in_gamma(cusp, g2.h, g2.t))
        throw std::invalid_argument("chern cocycle requires elements of Gamma_ell");
    long absD = cusp.L->field()->abs_disc();
    // -2|delta| Re<t,lambda> Im<t',lambda> = -Re<t,lambda> * b' * |disc|
    Rational s = pair_with_lambda(cusp, g.t, lambda).real();
    Rational bp = pair_with_lambda(cusp, g2.t, lambda).b;
    Rational val = -s * bp * absD;
    val.canonicalize();
    // cross-check through Im(-|delta| F_lambda(t, t'))
    Rational alt = -eval_F(cusp, lambda, g.t, g2.t).b * (Rational(absD) / 2);
    alt.canonicalize();
    if (val != alt) throw std::logic_error("chern cocycle cross-check failed");
    if (!is_integer(val))
        throw std::logic_error("chern cocycle not integral on Gamma_ell");
    return val;
}

Rational chern_class_of_combo(const CuspData& cusp, const HeisenbergParams& params,
                              const HeegnerCombo& combo, const KVector& t,
                              const KVector& t2) {
    if (!in_zspan(*cusp.D_part, params.D_sub_basis, t) ||
        !in_zspan(*cusp.D_part, params.D_sub_basis, t2))
        throw std::invalid_argument("arguments must lie in the derived sublattice");
    HeisenbergElem g{0, t}, g2{0, t2};
    Rational acc = 0;
    for (auto& [lam, weight] : expand_divisor(cusp, combo))
        acc += weight * chern_cocycle(cusp, lam, g, g2);
    acc.canonicalize();
    return acc;
}

}  // namespace heegner
