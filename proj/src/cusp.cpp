#include "heegner/cusp.hpp"

#include <cmath>

namespace heegner {

namespace {

KVector kvec_add(const KVector& x, const KVector& y) {
    KVector r = x;
    for (size_t i = 0; i < r.size(); ++i) r[i] += y[i];
    return r;
}

KVector kvec_sub(const KVector& x, const KVector& y) {
    KVector r = x;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
    return r;
}

KVector kvec_scale(const FieldElem& c, const KVector& x) {
    KVector r = x;
    for (auto& e : r) e = c * e;
    return r;
}

bool divisible(const Rational& x, const Rational& M) {
    if (M == 0) return x == 0;
    Rational q = x / M;
    q.canonicalize();
    return is_integer(q);
}

// Smallest positive h0 with h0 * v in L (coordinates integral); 0 = unconstrained.
Rational scaling_generator(const HermitianLattice& L, const KVector& v) {
    Rational gen = 0;
    for (const Rational& q : L.real_coords(v)) {
        if (q == 0) continue;
        Rational inv = 1 / abs(q);
        inv.canonicalize();
        gen = gen == 0 ? inv : rat_lcm(gen, inv);
    }
    return gen;
}

// Z-basis of L as KVectors: (b_1..b_r, zeta b_1..zeta b_r).
std::vector<KVector> z_basis(const HermitianLattice& L) {
    std::vector<KVector> out;
    for (size_t k = 0; k < 2 * L.rank(); ++k) {
        QVector c(2 * L.rank(), 0);
        c[k] = 1;
        out.push_back(L.field_coords(c));
    }
    return out;
}

// Solve x in L (integer Z-coordinates) with <x, ell> = target; nullopt if none.
std::optional<KVector> solve_inner_value(const HermitianLattice& L, const KVector& ell,
                                         const FieldElem& target) {
    auto basis = z_basis(L);
    size_t n = basis.size();
    QMatrix M(2, QVector(n));
    for (size_t j = 0; j < n; ++j) {
        FieldElem ip = L.inner(basis[j], ell);
        M[0][j] = ip.a;
        M[1][j] = ip.b;
    }
    QVector rhs = {target.a, target.b};
    BigInt den = 1;
    for (auto& row : M)
        for (auto& e : row) den = lcm(den, e.get_den());
    den = lcm(den, rhs[0].get_den());
    den = lcm(den, rhs[1].get_den());
    ZMatrix Mi(2, ZVector(n));
    ZVector bi(2);
    for (size_t i = 0; i < 2; ++i) {
        for (size_t j = 0; j < n; ++j) {
            Rational v = M[i][j] * Rational(den);
            v.canonicalize();
            Mi[i][j] = v.get_num();
        }
        Rational v = rhs[i] * Rational(den);
        v.canonicalize();
        bi[i] = v.get_num();
    }
    auto sol = zmat_solve(Mi, bi);
    if (!sol) return std::nullopt;
    QVector c(n);
    for (size_t j = 0; j < n; ++j) c[j] = Rational((*sol)[j]);
    return L.field_coords(c);
}

// Is v an O_k-linear combination of the vectors in span?
bool in_ok_span(const HermitianLattice& L, const std::vector<KVector>& span,
                const KVector& v) {
    if (span.empty()) {
        for (auto& c : v)
            if (!c.is_zero()) return false;
        return true;
    }
    FieldElem zeta(L.field(), 0, 1);
    size_t n = 2 * L.rank();
    ZMatrix M(n, ZVector(2 * span.size()));
    for (size_t j = 0; j < span.size(); ++j) {
        QVector a = L.real_coords(span[j]);
        QVector b = L.real_coords(kvec_scale(zeta, span[j]));
        for (size_t i = 0; i < n; ++i) {
            if (!is_integer(a[i]) || !is_integer(b[i])) throw std::logic_error("span not in L");
            M[i][2 * j] = a[i].get_num();
            M[i][2 * j + 1] = b[i].get_num();
        }
    }
    QVector vc = L.real_coords(v);
    ZVector rhs(n);
    for (size_t i = 0; i < n; ++i) {
        if (!is_integer(vc[i])) return false;
        rhs[i] = vc[i].get_num();
    }
    return zmat_solve(M, rhs).has_value();
}

}  // namespace

KVector CuspData::embed_D(const KVector& t) const {
    KVector out(L->rank(), FieldElem(L->field(), 0, 0));
    for (size_t i = 0; i < t.size(); ++i)
        out = kvec_add(out, kvec_scale(t[i], D_embed[i]));
    return out;
}

CuspData build_cusp(std::shared_ptr<const HermitianLattice> Lp, const KVector& ell,
                    const KVector& ell_prime) {
    const HermitianLattice& L = *Lp;
    const FieldSpec* F = L.field();
    if (L.rank() < 2) throw std::invalid_argument("ambient lattice must have rank >= 2");
    if (!L.in_lattice(ell)) throw std::invalid_argument("ell not in L");
    if (L.qform(ell) != 0) throw std::invalid_argument("ell not isotropic");
    if (!L.in_dual(ell_prime)) throw std::invalid_argument("ell' not in the dual lattice");
    if (L.qform(ell_prime) != 0) throw std::invalid_argument("ell' not isotropic");
    if (L.inner(ell, ell_prime) != field_delta_inv(F))
        throw std::invalid_argument("<ell, ell'> must equal delta^{-1}");

    // primitivity: {c in k : c*ell in L} must be exactly O_k
    {
        size_t n = 2 * L.rank();
        QMatrix M(n, QVector(2));
        QVector ca = L.real_coords(ell);
        FieldElem zeta(F, 0, 1);
        QVector cb = L.real_coords(kvec_scale(zeta, ell));
        for (size_t i = 0; i < n; ++i) {
            M[i][0] = ca[i];
            M[i][1] = cb[i];
        }
        auto coeffs = preimage_lattice(M);
        QMatrix B(2, QVector(2));
        for (size_t j = 0; j < 2; ++j)
            for (size_t i = 0; i < 2; ++i) B[i][j] = coeffs[j][i];
        if (abs(qmat_det(B)) != 1) throw std::invalid_argument("ell not primitive in L");
    }

    CuspData cusp;
    cusp.L = Lp;
    cusp.ell = ell;
    cusp.ell_prime = ell_prime;
    cusp.l_lp = field_delta_inv(F);

    // D = L cap ell-perp cap ell'-perp via the integral kernel of four
    // rational linear conditions on Z-coordinates.
    size_t n2 = 2 * L.rank();
    auto basis = z_basis(L);
    QMatrix cond(4, QVector(n2));
    for (size_t j = 0; j < n2; ++j) {
        FieldElem a = L.inner(basis[j], ell);
        FieldElem b = L.inner(basis[j], ell_prime);
        cond[0][j] = a.a;
        cond[1][j] = a.b;
        cond[2][j] = b.a;
        cond[3][j] = b.b;
    }
    BigInt den = 1;
    for (auto& row : cond)
        for (auto& e : row) den = lcm(den, e.get_den());
    ZMatrix condi(4, ZVector(n2));
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < n2; ++j) {
            Rational v = cond[i][j] * Rational(den);
            v.canonicalize();
            condi[i][j] = v.get_num();
        }
    auto ker = zmat_kernel(condi);

    std::vector<KVector> W;
    for (auto& kv : ker) {
        QVector c(n2);
        for (size_t i = 0; i < n2; ++i) c[i] = Rational(kv[i]);
        KVector v = L.field_coords(c);
        if (!in_ok_span(L, W, v)) W.push_back(v);
    }
    size_t n = L.rank() - 2;
    if (W.size() != n)
        throw std::runtime_error("definite part is not a free O_k-module of rank n");
    cusp.D_embed = W;
    KMatrix gram(n, KVector(n, FieldElem(F, 0, 0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) gram[i][j] = L.inner(W[i], W[j]);
    cusp.D_part = std::make_shared<HermitianLattice>(Lp->field_ptr(), gram);
    if (cusp.D_part->signature() != std::pair<int, int>(0, static_cast<int>(n)))
        throw std::runtime_error("definite part does not have signature (0, n)");

    // M1, M2 from the gcd scan over the Z-basis
    Rational M1 = 0, M2 = 0;
    long absD = F->abs_disc();
    for (auto& e : basis) {
        FieldElem ip = L.inner(e, ell);
        M1 = rat_gcd(M1, ip.trace());
        M2 = rat_gcd(M2, ip.b * (Rational(absD) / 2));
    }
    cusp.M1 = M1;
    cusp.M2 = M2;

    cusp.disc_L = std::make_unique<DiscriminantGroup>(*cusp.L);
    cusp.disc_D = std::make_unique<DiscriminantGroup>(*cusp.D_part);

    for (size_t idx = 0; idx < cusp.disc_L->size(); ++idx) {
        const KVector& rep = cusp.disc_L->coset_rep(idx);
        FieldElem ip = L.inner(rep, ell);
        if (!divisible(ip.trace(), M1) || !divisible(ip.b * (Rational(absD) / 2), M2))
            continue;
        cusp.L_script.push_back(idx);
        auto x = solve_inner_value(L, ell, ip);
        if (!x) throw std::logic_error("no lattice vector matches <beta, ell>");
        KVector bdot = kvec_sub(rep, *x);
        if (!L.inner(bdot, ell).is_zero()) throw std::logic_error("beta-dot not orthogonal to ell");
        cusp.beta_dot[idx] = bdot;

        // decompose over {ell, ell', w_1..w_n}: the w-part is pi(beta)
        KMatrix A(L.rank(), KVector(L.rank(), FieldElem(F, 0, 0)));
        for (size_t i = 0; i < L.rank(); ++i) {
            A[i][0] = ell[i];
            A[i][1] = ell_prime[i];
            for (size_t j = 0; j < n; ++j) A[i][2 + j] = W[j][i];
        }
        auto coef = kmat_solve(A, bdot);
        if (!coef || !(*coef)[1].is_zero())
            throw std::logic_error("beta-dot decomposition failed");
        KVector dpart((*coef).begin() + 2, (*coef).end());
        auto di = cusp.disc_D->index_of(dpart);
        if (!di) throw std::logic_error("projected beta-dot not in D'");
        cusp.pi[idx] = *di;
    }
    return cusp;
}

HeisenbergElem heisenberg_compose(const CuspData& cusp, const HeisenbergElem& g,
                                  const HeisenbergElem& g2) {
    // [h,t] o [h',t'] = [h + h' + Im<t',t>/|delta|, t + t']
    Rational corr = cusp.D_part->inner(g2.t, g.t).b / 2;
    corr.canonicalize();
    HeisenbergElem out;
    out.h = g.h + g2.h + corr;
    out.h.canonicalize();
    out.t = kvec_add(g.t, g2.t);
    return out;
}

HeisenbergElem heisenberg_inverse(const CuspData& cusp, const HeisenbergElem& g) {
    (void)cusp;
    HeisenbergElem out;
    out.h = -g.h;
    out.t = g.t;
    for (auto& c : out.t) c = -c;
    return out;
}

KVector heisenberg_apply_vector(const CuspData& cusp, const Rational& h,
                                const KVector& t, const KVector& v) {
    const HermitianLattice& L = *cusp.L;
    const FieldSpec* F = L.field();
    KVector tL = cusp.embed_D(t);
    FieldElem vl = L.inner(v, cusp.ell);
    FieldElem vt = L.inner(v, tL);
    Rational qt = cusp.D_part->qform(t);
    // [0,t]: v + <v,ell> t - <v,t> ell - (1/2)<v,ell><t,t> ell
    KVector w = kvec_add(v, kvec_scale(vl, tL));
    w = kvec_sub(w, kvec_scale(vt, cusp.ell));
    w = kvec_sub(w, kvec_scale(vl * FieldElem(F, qt / 2, 0), cusp.ell));
    // [h,0]: w - <w,ell> delta h ell
    FieldElem wl = L.inner(w, cusp.ell);
    w = kvec_sub(w, kvec_scale(wl * field_delta(F) * FieldElem(F, h, 0), cusp.ell));
    return w;
}

bool heisenberg_in_gamma(const CuspData& cusp, const Rational& h, const KVector& t) {
    for (const KVector& d : cusp.L->dual_basis()) {
        KVector img = heisenberg_apply_vector(cusp, h, t, d);
        if (!cusp.L->in_lattice(kvec_sub(img, d))) return false;
    }
    return true;
}

HeisenbergParams derive_heisenberg_params(const CuspData& cusp) {
    const HermitianLattice& L = *cusp.L;
    const HermitianLattice& D = *cusp.D_part;
    const FieldSpec* F = L.field();
    size_t n = D.rank(), nr = 2 * n, lr = 2 * L.rank();
    auto duals = L.dual_basis();

    // Linear part: t with <d,ell> t - <d,t> ell in L for every dual vector d.
    auto d_basis = z_basis(D);
    QMatrix M(duals.size() * lr, QVector(nr));
    for (size_t di = 0; di < duals.size(); ++di) {
        FieldElem dl = L.inner(duals[di], cusp.ell);
        for (size_t j = 0; j < nr; ++j) {
            KVector tL = cusp.embed_D(d_basis[j]);
            KVector val = kvec_sub(kvec_scale(dl, tL),
                                   kvec_scale(L.inner(duals[di], tL), cusp.ell));
            QVector c = L.real_coords(val);
            for (size_t i = 0; i < lr; ++i) M[di * lr + i][j] = c[i];
        }
    }
    auto u_basis = preimage_lattice(M);

    // Quadratic part: (1/2) Q(t) <d,ell> ell must land in L.  C0 generates the
    // admissible multipliers of those fixed vectors.
    Rational C0 = 0;
    for (auto& d : duals) {
        KVector p = kvec_scale(L.inner(d, cusp.ell), cusp.ell);
        Rational g = scaling_generator(L, p);
        if (g != 0) C0 = C0 == 0 ? g : rat_lcm(C0, g);
    }
    std::vector<KVector> sub;
    for (auto& u : u_basis) sub.push_back(D.field_coords(u));
    Rational G = 0;
    for (size_t i = 0; i < sub.size(); ++i) {
        G = rat_gcd(G, D.qform(sub[i]) / 2);
        for (size_t j = i + 1; j < sub.size(); ++j)
            G = rat_gcd(G, D.inner(sub[i], sub[j]).trace() / 2);
    }
    long k = 1;
    if (C0 != 0 && G != 0)
        while (!divisible(Rational(k) * k * G, C0)) ++k;
    for (auto& t : sub)
        for (auto& c : t) c = c * Rational(k);

    // N0: admissible central translations [h, 0].
    Rational N0 = 0;
    for (auto& d : duals) {
        KVector p = kvec_scale(L.inner(d, cusp.ell) * field_delta(F), cusp.ell);
        Rational g = scaling_generator(L, p);
        if (g != 0) N0 = N0 == 0 ? g : rat_lcm(N0, g);
    }

    // Closure: Im<t',t>/|delta| in N Z over basis pairs; double the lattice
    // until satisfied.
    auto pair_gcd = [&]() {
        Rational g = 0;
        for (size_t i = 0; i < sub.size(); ++i)
            for (size_t j = 0; j < sub.size(); ++j)
                g = rat_gcd(g, D.inner(sub[j], sub[i]).b / 2);
        return g;
    };
    Rational N = N0;
    Rational g = pair_gcd();
    if (N == 0) N = g == 0 ? Rational(1) : g;
    while (g != 0 && !divisible(g, N)) {
        for (auto& t : sub)
            for (auto& c : t) c = c * Rational(2);
        g = pair_gcd();
    }

    // Sanity: every generator and [N, 0] must lie in the discriminant kernel.
    if (!heisenberg_in_gamma(cusp, N, D.zero()))
        throw std::logic_error("central translation [N,0] not in the discriminant kernel");
    for (auto& t : sub)
        if (!heisenberg_in_gamma(cusp, 0, t))
            throw std::logic_error("Eichler generator not in the discriminant kernel");

    return {N, sub};
}

// ---- Siegel domain numerics ----

std::complex<double> numeric_inner(const HermitianLattice& L,
                                   const std::vector<std::complex<double>>& x,
                                   const std::vector<std::complex<double>>& y) {
    std::complex<double> acc = 0;
    for (size_t i = 0; i < L.rank(); ++i)
        for (size_t j = 0; j < L.rank(); ++j)
            acc += x[i] * std::conj(y[j]) * L.gram()[i][j].embed();
    return acc;
}

std::vector<std::complex<double>> siegel_z(const CuspData& cusp, const SiegelPoint& p) {
    const HermitianLattice& L = *cusp.L;
    const FieldSpec* F = L.field();
    std::complex<double> delta_c = field_delta(F).embed();
    std::complex<double> lp = cusp.l_lp.conj().embed();  // <ell', ell>
    std::vector<std::complex<double>> z(L.rank(), 0.0);
    for (size_t i = 0; i < L.rank(); ++i) {
        z[i] = cusp.ell_prime[i].embed() - delta_c * p.tau * lp * cusp.ell[i].embed();
        for (size_t j = 0; j < p.sigma.size(); ++j)
            z[i] += p.sigma[j] * cusp.D_embed[j][i].embed();
    }
    return z;
}

bool in_siegel_domain(const CuspData& cusp, const SiegelPoint& p) {
    std::vector<std::complex<double>> sig = p.sigma;
    double qs = numeric_inner(*cusp.D_part, sig, sig).real();
    double lp2 = std::norm(cusp.l_lp.embed());
    double absD = static_cast<double>(cusp.L->field()->abs_disc());
    return 2 * p.tau.imag() * std::sqrt(absD) * lp2 + qs > 0;
}

SiegelPoint heisenberg_act(const CuspData& cusp, const HeisenbergElem& g,
                           const SiegelPoint& p) {
    if (!in_siegel_domain(cusp, p))
        throw std::invalid_argument("point outside the Siegel domain");
    const FieldSpec* F = cusp.L->field();
    std::complex<double> delta_c = field_delta(F).embed();
    std::complex<double> lp = cusp.l_lp.conj().embed();  // <ell', ell>
    std::vector<std::complex<double>> tc(g.t.size());
    for (size_t i = 0; i < g.t.size(); ++i) tc[i] = g.t[i].embed();

    SiegelPoint out = p;
    // [0,t]: tau += <sigma,t>/(delta <ell',ell>) + (1/2)<t,t>/delta
    std::complex<double> st = numeric_inner(*cusp.D_part, p.sigma, tc);
    double qt = rat_double(cusp.D_part->qform(g.t));
    out.tau += st / (delta_c * lp) + 0.5 * qt / delta_c;
    for (size_t i = 0; i < out.sigma.size(); ++i) out.sigma[i] += lp * tc[i];
    // [h,0]: tau += h
    out.tau += rat_double(g.h);
    return out;
}

bool in_neighborhood(const CuspData& cusp, const SiegelPoint& p, double eps) {
    auto z = siegel_z(cusp, p);
    std::vector<std::complex<double>> ellc(cusp.ell.size());
    for (size_t i = 0; i < ellc.size(); ++i) ellc[i] = cusp.ell[i].embed();
    double zz = numeric_inner(*cusp.L, z, z).real();
    double zl = std::norm(numeric_inner(*cusp.L, z, ellc));
    double lp2 = std::norm(cusp.l_lp.embed());
    return zz / zl * lp2 > 1.0 / eps;
}

}  // namespace heegner
