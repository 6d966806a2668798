#ifndef HEEGNER_QFIELD_HPP
#define HEEGNER_QFIELD_HPP

#include <complex>
#include <memory>
#include <string>

#include "heegner/rational.hpp"

namespace heegner {

/// Exact value r + s*sqrt(|disc|) in the real quadratic field Q(sqrt(|disc|)).
struct RealQuadVal {
    Rational r{0};
    Rational s{0};
    long abs_disc{0};

    RealQuadVal() = default;
    RealQuadVal(Rational r_, Rational s_, long abs_disc_)
        : r(std::move(r_)), s(std::move(s_)), abs_disc(abs_disc_) {}

    bool is_zero() const { return r == 0 && s == 0; }
    bool is_rational() const { return s == 0; }

    RealQuadVal operator+(const RealQuadVal& o) const;
    RealQuadVal operator-(const RealQuadVal& o) const;
    RealQuadVal operator*(const RealQuadVal& o) const;
    RealQuadVal operator-() const { return {-r, -s, abs_disc}; }
    RealQuadVal operator*(const Rational& c) const { return {r * c, s * c, abs_disc}; }
    RealQuadVal& operator+=(const RealQuadVal& o) { *this = *this + o; return *this; }
    bool operator==(const RealQuadVal& o) const { return r == o.r && s == o.s; }

    double to_double() const;
    std::string str() const;
};

/// The imaginary quadratic field Q(sqrt(disc)) with its canonical generator
/// zeta of the ring of integers: O_k = Z + zeta*Z.
class FieldSpec {
public:
    long disc;          // fundamental discriminant, < 0
    Rational zeta_re;   // 0 if disc = 0 mod 4, else 1/2
    Rational zeta_norm; // zeta * conj(zeta) = zeta_re^2 + |disc|/4

    static std::shared_ptr<const FieldSpec> create(long disc);

    /// Same field, alternate admissible real part of zeta (shifted by an even
    /// integer). Used to verify independence of results from the choice.
    static std::shared_ptr<const FieldSpec> create_with_zeta_re(long disc, const Rational& zeta_re);

    long abs_disc() const { return -disc; }
    Rational zeta_trace() const { return 2 * zeta_re; }
    std::complex<double> zeta_complex() const;

    bool operator==(const FieldSpec& o) const {
        return disc == o.disc && zeta_re == o.zeta_re;
    }

private:
    FieldSpec(long d, Rational zre);
};

/// Element a + b*zeta of the field, exact.
class FieldElem {
public:
    const FieldSpec* F{nullptr};
    Rational a{0};
    Rational b{0};

    FieldElem() = default;
    FieldElem(const FieldSpec* spec, Rational a_, Rational b_ = 0)
        : F(spec), a(std::move(a_)), b(std::move(b_)) {}

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator/(const FieldElem& o) const;
    FieldElem operator-() const { return {F, -a, -b}; }
    FieldElem operator*(const Rational& c) const { return {F, a * c, b * c}; }
    FieldElem& operator+=(const FieldElem& o) { *this = *this + o; return *this; }
    FieldElem& operator-=(const FieldElem& o) { *this = *this - o; return *this; }
    bool operator==(const FieldElem& o) const { return a == o.a && b == o.b; }
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    FieldElem conj() const;
    Rational trace() const;                 // x + conj(x)
    Rational norm() const;                  // x * conj(x)
    Rational real() const;                  // a + b*Re(zeta)
    RealQuadVal imag() const;               // (b/2) * sqrt(|disc|)

    bool in_ring_of_integers() const { return is_integer(a) && is_integer(b); }
    bool in_inverse_different() const;      // delta * x integral

    std::complex<double> embed() const;
    std::string str() const;

    /// Lexicographic order on (a, b); used for deterministic vector ordering.
    static int cmp(const FieldElem& x, const FieldElem& y);
};

/// delta = sqrt(disc) = 2*zeta - 2*Re(zeta), as a field element.
FieldElem field_delta(const FieldSpec* F);
/// delta^{-1} = delta / disc.
FieldElem field_delta_inv(const FieldSpec* F);

FieldElem parse_field_elem(const FieldSpec* F, const std::string& text);

}  // namespace heegner

#endif
