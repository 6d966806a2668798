#include <doctest.h>

#include <set>

#include "lattice_builders.hpp"

using namespace heegner;
using namespace heegner::testing;

TEST_CASE("gram validation") {
    auto F = FieldSpec::create(-4);
    KMatrix bad = {{FieldElem(F.get(), 0, 0), FieldElem(F.get(), 0, 1)},
                   {FieldElem(F.get(), 0, 1), FieldElem(F.get(), 0, 0)}};
    CHECK_THROWS_AS(HermitianLattice(F, bad), std::invalid_argument);
    CHECK_THROWS_AS(HermitianLattice(F, {{FieldElem(F.get(), 0, 1)}}), std::invalid_argument);
}

TEST_CASE("trace gram and quadratic form") {
    auto D = rank1_minus(-4);
    CHECK(D.trace_gram() == QMatrix{{-2, 0}, {0, -2}});
    KVector x = {FieldElem(D.field(), 1, 2)};  // 1 + 2i, |.|^2 = 5
    CHECK(D.qform(x) == -5);
    CHECK(D.inner(x, x).b == 0);
    // Q(x) = (1/2) c^T T c
    QVector c = D.real_coords(x);
    Rational acc = 0;
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) acc += c[i] * D.trace_gram()[i][j] * c[j];
    CHECK(acc == 2 * D.qform(x));

    auto E = rank1_minus(-3);
    CHECK(E.trace_gram() == QMatrix{{-2, -1}, {-1, -2}});
}

TEST_CASE("integrality, evenness, signature") {
    auto H = hyperbolic(-4);
    CHECK(H.is_integral());
    CHECK(H.is_even());
    CHECK(H.signature() == std::pair<int, int>(1, 1));

    auto L = ambient(-4, {-1});
    CHECK(L.is_even());
    CHECK(L.signature() == std::pair<int, int>(1, 2));
    CHECK(ambient(-4, {-1, -2}).signature() == std::pair<int, int>(1, 3));
    CHECK(rank1_minus(-7).signature() == std::pair<int, int>(0, 1));

    // <b,b> = delta^{-1} is in d^{-1} but the diagonal is not integral
    auto F = FieldSpec::create(-3);
    FieldElem half(F.get(), Rational(1, 2), 0);
    HermitianLattice bad(F, {{-half - half - half}});  // gram = (-3/2)
    CHECK_FALSE(bad.is_integral());
}

TEST_CASE("membership in L and L'") {
    auto D = rank1_minus(-4);
    KVector v = {FieldElem(D.field(), Rational(1, 2), 0)};
    CHECK_FALSE(D.in_lattice(v));
    CHECK(D.in_dual(v));  // <v, b> = -1/2 in d^{-1} = (1/2i) O_k
    KVector w = {FieldElem(D.field(), Rational(1, 4), 0)};
    CHECK_FALSE(D.in_dual(w));
    CHECK(D.in_lattice({FieldElem(D.field(), 3, -2)}));
}

TEST_CASE("dual basis") {
    auto D = rank1_minus(-4);
    auto dual = D.dual_basis();
    REQUIRE(dual.size() == 2);
    // Z-basis {-b/2, -(zeta/2) b}; the second is (1/delta) b
    CHECK(dual[0] == KVector{FieldElem(D.field(), Rational(-1, 2), 0)});
    CHECK(dual[1] == KVector{FieldElem(D.field(), 0, Rational(-1, 2))});
    for (auto& v : dual) CHECK(D.in_dual(v));
    FieldElem dinv = field_delta_inv(D.field());
    CHECK(dual[1][0] == dinv * Rational(-1) * FieldElem(D.field(), 0, 1) * FieldElem(D.field(), 0, 1));

    // unimodular: dual = lattice
    auto H = hyperbolic(-4);
    for (auto& v : H.dual_basis()) CHECK(H.in_lattice(v));

    auto F = FieldSpec::create(-4);
    FieldElem z(F.get(), 0, 0);
    HermitianLattice sing(F, {{z, z}, {z, z}});
    CHECK_THROWS_AS(sing.dual_basis(), std::invalid_argument);
}

TEST_CASE("discriminant group structure") {
    auto D = rank1_minus(-4);
    DiscriminantGroup G(D);
    CHECK(G.size() == 4);
    CHECK(G.invariant_factors() == std::vector<BigInt>{2, 2});
    for (size_t i = 0; i < G.size(); ++i) {
        CHECK(D.in_dual(G.coset_rep(i)));
        CHECK(G.index_of(G.coset_rep(i)) == i);
        CHECK(G.negate(G.negate(i)) == i);
    }
    // rep of index 0 is the zero coset
    CHECK(G.index_of(D.zero()) == 0);
    CHECK(G.negate(0) == 0);

    DiscriminantGroup GH{hyperbolic(-4)};
    CHECK(GH.size() == 1);
    CHECK(GH.invariant_factors().empty());

    DiscriminantGroup GE{rank1_minus(-3)};
    CHECK(GE.size() == 3);
    CHECK(GE.invariant_factors() == std::vector<BigInt>{3});

    // direct sum: orders multiply (hyperbolic part unimodular)
    DiscriminantGroup GL{ambient(-4, {-1})};
    CHECK(GL.size() == 4);
    DiscriminantGroup GL2{ambient(-4, {-1, -2})};
    CHECK(GL2.size() == 4 * 16);
}

TEST_CASE("discriminant group pairing and norms") {
    auto D = rank1_minus(-4);
    DiscriminantGroup G(D);
    // Q values mod 1 over the 4 cosets {0, 1/2, zeta/2, (1+zeta)/2}:
    // Q = -|x|^2 gives {0, -1/4, -1/4, -1/2} = {0, 3/4, 3/4, 1/2} mod 1
    std::multiset<Rational> qs;
    for (size_t i = 0; i < 4; ++i) qs.insert(G.qform_mod_one(i));
    CHECK(qs == std::multiset<Rational>{0, Rational(3, 4), Rational(3, 4), Rational(1, 2)});
    // pairing is symmetric
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j)
            CHECK(G.pairing_mod_one(i, j) == G.pairing_mod_one(j, i));

    // vectors not in the dual
    CHECK_FALSE(G.index_of({FieldElem(D.field(), Rational(1, 3), 0)}).has_value());
}

TEST_CASE("lattice hash distinguishes fixtures") {
    CHECK(rank1_minus(-4).hash() != rank1_minus(-3).hash());
    CHECK(ambient(-4, {-1}).hash() != ambient(-4, {-1, -2}).hash());
    CHECK(rank1_minus(-4).hash() == rank1_minus(-4).hash());
}
