#include "heegner/weil_theta.hpp"

#include <cmath>
#include <sstream>

namespace heegner {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::complex<double> e_of(double x) {
    return std::exp(std::complex<double>(0.0, kTwoPi * x));
}

RealQuadVal rq_zero(const FieldSpec* F) { return {0, 0, F->abs_disc()}; }

}  // namespace

std::vector<std::complex<double>> WeilRep::t_matrix_diag() const {
    std::vector<std::complex<double>> d(dim);
    for (size_t i = 0; i < dim; ++i) d[i] = e_of(rat_double(t_phase[i]));
    return d;
}

std::vector<std::vector<std::complex<double>>> WeilRep::s_matrix() const {
    std::vector<std::vector<std::complex<double>>> m(dim,
        std::vector<std::complex<double>>(dim));
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j)
            m[i][j] = s_global * s_scale * e_of(rat_double(s_phase[i][j]));
    return m;
}

WeilRep build_weil_rep(const HermitianLattice& D) {
    if (!D.is_even()) throw std::invalid_argument("Weil representation needs an even lattice");
    DiscriminantGroup disc(D);
    WeilRep rep;
    rep.dim = disc.size();
    rep.weight = static_cast<int>(D.rank()) + 2;
    rep.t_phase.resize(rep.dim);
    rep.s_phase.assign(rep.dim, std::vector<Rational>(rep.dim));
    for (size_t i = 0; i < rep.dim; ++i) {
        rep.t_phase[i] = mod_one(-disc.qform_mod_one(i));
        for (size_t j = 0; j < rep.dim; ++j)
            rep.s_phase[i][j] = disc.pairing_mod_one(i, j);
    }
    rep.s_scale = 1.0 / std::sqrt(static_cast<double>(rep.dim));
    // sqrt(i)^{-2n} = e(-n/4)
    rep.s_global = e_of(-static_cast<double>(D.rank()) / 4.0);
    return rep;
}

RealQuadVal poly_re_pair(const HermitianLattice& D, const KVector& u, const PolynomialP& v) {
    // Re<u, v_k + i v_ik> = Re<u,v_k> + Im<u,v_ik>
    RealQuadVal r = D.inner(u, v.v_ik).imag();
    r.r += D.inner(u, v.v_k).real();
    r.r.canonicalize();
    return r;
}

RealQuadVal poly_qv(const HermitianLattice& D, const PolynomialP& v) {
    // <v,v> = <v_k,v_k> + <v_ik,v_ik> + 2 Im<v_k,v_ik>
    RealQuadVal q = D.inner(v.v_k, v.v_ik).imag() * Rational(2);
    q.r += D.qform(v.v_k) + D.qform(v.v_ik);
    q.r.canonicalize();
    return q;
}

RealQuadVal poly_P(const HermitianLattice& D, const KVector& u, const PolynomialP& v) {
    RealQuadVal r = poly_re_pair(D, u, v);
    Rational qu_over_n = D.qform(u) / static_cast<long>(D.rank());
    qu_over_n.canonicalize();
    RealQuadVal out = r * r * Rational(2) - poly_qv(D, v) * qu_over_n;
    out.r.canonicalize();
    out.s.canonicalize();
    return out;
}

bool harmonic_check(const HermitianLattice& D, const PolynomialP& v) {
    // P as a polynomial in the real coordinates c of u has Hessian
    // 4 r r^T - (<v,v>/n) T, and the trace-form Laplacian is tr(T^{-1} .);
    // with tr(T^{-1} T) = 2n this vanishes iff 4 r^T T^{-1} r = 2 <v,v>.
    size_t n2 = 2 * D.rank();
    QMatrix Ti = qmat_inverse(D.trace_gram());
    std::vector<RealQuadVal> r(n2, rq_zero(D.field()));
    for (size_t i = 0; i < n2; ++i) {
        QVector c(n2, Rational(0));
        c[i] = 1;
        r[i] = poly_re_pair(D, D.field_coords(c), v);
    }
    RealQuadVal acc = rq_zero(D.field());
    for (size_t i = 0; i < n2; ++i)
        for (size_t j = 0; j < n2; ++j) acc += r[i] * r[j] * Ti[i][j];
    return acc * Rational(4) == poly_qv(D, v) * Rational(2);
}

ThetaExpansion build_theta(const CuspData& cusp, const PolynomialP& v,
                           const Rational& max_norm) {
    if (max_norm <= 0) throw std::invalid_argument("max_norm must be positive");
    const HermitianLattice& D = *cusp.D_part;
    ThetaExpansion out;
    out.max_norm = max_norm;
    out.v_label = v.label;
    for (size_t idx = 0; idx < cusp.disc_D->size(); ++idx) {
        const KVector& rep = cusp.disc_D->coset_rep(idx);
        Rational m = mod_one(-cusp.disc_D->qform_mod_one(idx));
        if (m == 0) m = 1;
        for (; m <= max_norm; m += 1) {
            RealQuadVal a = rq_zero(D.field());
            for (auto& lam : enumerate_norm_coset(D, rep, -m)) a += poly_P(D, lam, v);
            Rational key = m;
            key.canonicalize();
            out.coeffs[{idx, key}] = a;
        }
    }
    return out;
}

double theta_modularity_check(const CuspData& cusp, const WeilRep& rep,
                              const ThetaExpansion& theta, std::complex<double> tau) {
    std::complex<double> stau = -1.0 / tau;
    if (tau.imag() < 0.8 || stau.imag() < 0.8)
        throw std::invalid_argument("tau too low for a truncated comparison");
    if (rep.dim != cusp.disc_D->size())
        throw std::invalid_argument("representation does not match the cusp");

    auto f_at = [&](std::complex<double> t) {
        std::vector<std::complex<double>> f(rep.dim, 0.0);
        for (auto& [key, a] : theta.coeffs)
            f[key.first] += a.to_double() * std::exp(std::complex<double>(0.0, kTwoPi) *
                                                     rat_double(key.second) * t);
        return f;
    };

    std::vector<std::complex<double>> f = f_at(tau), fT = f_at(tau + 1.0), fS = f_at(stau);
    auto Tm = rep.t_matrix_diag();
    auto Sm = rep.s_matrix();
    std::complex<double> auto_k = std::pow(tau, rep.weight);

    double dev = 0.0;
    for (size_t g = 0; g < rep.dim; ++g) {
        dev = std::max(dev, std::abs(fT[g] - Tm[g] * f[g]));
        std::complex<double> sf = 0.0;
        for (size_t h = 0; h < rep.dim; ++h) sf += Sm[h][g] * f[h];
        dev = std::max(dev, std::abs(fS[g] - auto_k * sf));
    }
    return dev;
}

std::vector<PolynomialP> spanning_set(const CuspData& cusp) {
    const HermitianLattice& D = *cusp.D_part;
    const FieldSpec* F = D.field();
    std::vector<PolynomialP> singles;
    for (size_t j = 0; j < D.rank(); ++j) {
        KVector e = D.zero();
        e[j] = FieldElem(F, 1, 0);
        singles.push_back({e, D.zero(), "f" + std::to_string(j + 1)});
        singles.push_back({D.zero(), e, "i*f" + std::to_string(j + 1)});
    }
    std::vector<PolynomialP> out = singles;
    for (size_t a = 0; a < singles.size(); ++a)
        for (size_t b = a + 1; b < singles.size(); ++b) {
            PolynomialP s = singles[a];
            for (size_t k = 0; k < s.v_k.size(); ++k) {
                s.v_k[k] += singles[b].v_k[k];
                s.v_ik[k] += singles[b].v_ik[k];
            }
            s.label = singles[a].label + "+" + singles[b].label;
            out.push_back(std::move(s));
        }
    return out;
}

std::pair<bool, std::vector<ObstructionWitness>> obstruction_check(
    const CuspData& cusp, const HeegnerCombo& combo) {
    validate_combo(cusp, combo);
    const HermitianLattice& D = *cusp.D_part;
    std::vector<PolynomialP> vs = spanning_set(cusp);
    std::vector<ObstructionWitness> witnesses;
    for (size_t vi = 0; vi < vs.size(); ++vi) {
        RealQuadVal total = rq_zero(D.field());
        for (auto& [key, c] : combo.terms) {
            auto [bidx, m] = key;
            const KVector& gamma = cusp.disc_D->coset_rep(cusp.pi.at(bidx));
            // a(pi(beta), -m) = sum over lambda in pi(beta)+D with Q(lambda)=m
            for (auto& lam : enumerate_norm_coset(D, gamma, m))
                total += poly_P(D, lam, vs[vi]) * Rational(c);
        }
        if (!total.is_zero()) witnesses.push_back({vi, total});
    }
    return {witnesses.empty(), witnesses};
}

std::string theta_to_text(const ThetaExpansion& theta) {
    std::ostringstream os;
    os << "# v = " << theta.v_label << ", m <= " << rat_str(theta.max_norm) << "\n";
    for (auto& [key, a] : theta.coeffs)
        os << key.first << " " << rat_str(key.second) << " " << a.str() << "\n";
    return os.str();
}

}  // namespace heegner
