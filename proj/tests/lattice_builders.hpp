#ifndef TESTS_LATTICE_BUILDERS_HPP
#define TESTS_LATTICE_BUILDERS_HPP

#include "heegner/hlattice.hpp"

namespace heegner::testing {

// rank-1 negative definite lattice O_k with <x,y> = -x*conj(y)
inline HermitianLattice rank1_minus(long disc) {
    auto F = FieldSpec::create(disc);
    KMatrix g = {{FieldElem(F.get(), -1, 0)}};
    return HermitianLattice(F, g);
}

// hyperbolic O_k-plane: <l, l'> = delta^{-1}
inline HermitianLattice hyperbolic(long disc) {
    auto F = FieldSpec::create(disc);
    FieldElem z(F.get(), 0, 0), dinv = field_delta_inv(F.get());
    KMatrix g = {{z, dinv}, {dinv.conj(), z}};
    return HermitianLattice(F, g);
}

// hyperbolic plane + negative definite diagonal part
inline HermitianLattice ambient(long disc, const std::vector<long>& diag) {
    auto F = FieldSpec::create(disc);
    size_t r = 2 + diag.size();
    FieldElem z(F.get(), 0, 0);
    KMatrix g(r, KVector(r, z));
    FieldElem dinv = field_delta_inv(F.get());
    g[0][1] = dinv;
    g[1][0] = dinv.conj();
    for (size_t i = 0; i < diag.size(); ++i) g[2 + i][2 + i] = FieldElem(F.get(), diag[i], 0);
    return HermitianLattice(F, g);
}

}  // namespace heegner::testing

#endif
