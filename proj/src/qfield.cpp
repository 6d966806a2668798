#include "heegner/qfield.hpp"

#include <cmath>
#include <sstream>

namespace heegner {

// ---- RealQuadVal ----

static void check_same_field(long a, long b) {
    if (a != 0 && b != 0 && a != b)
        throw std::invalid_argument("mixed real quadratic fields");
}

RealQuadVal RealQuadVal::operator+(const RealQuadVal& o) const {
    check_same_field(abs_disc, o.abs_disc);
    return {r + o.r, s + o.s, abs_disc ? abs_disc : o.abs_disc};
}

RealQuadVal RealQuadVal::operator-(const RealQuadVal& o) const {
    check_same_field(abs_disc, o.abs_disc);
    return {r - o.r, s - o.s, abs_disc ? abs_disc : o.abs_disc};
}

RealQuadVal RealQuadVal::operator*(const RealQuadVal& o) const {
    check_same_field(abs_disc, o.abs_disc);
    long d = abs_disc ? abs_disc : o.abs_disc;
    return {r * o.r + s * o.s * d, r * o.s + s * o.r, d};
}

double RealQuadVal::to_double() const {
    return rat_double(r) + rat_double(s) * std::sqrt(static_cast<double>(abs_disc));
}

std::string RealQuadVal::str() const {
    if (s == 0) return rat_str(r);
    std::ostringstream os;
    os << rat_str(r) << (s < 0 ? " - " : " + ") << rat_str(abs(s)) << "*w";
    return os.str();
}

// ---- FieldSpec ----

FieldSpec::FieldSpec(long d, Rational zre) : disc(d), zeta_re(std::move(zre)) {
    zeta_norm = zeta_re * zeta_re + Rational(-disc, 4);
    zeta_norm.canonicalize();
}

static bool squarefree(long n) {
    n = std::abs(n);
    for (long p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

static bool is_fundamental_discriminant(long d) {
    if (d >= 0) return false;
    long m = ((d % 4) + 4) % 4;
    if (m == 1) return squarefree(d);
    if (m == 0) {
        long q = d / 4;
        long qm = ((q % 4) + 4) % 4;
        return squarefree(q) && (qm == 2 || qm == 3);
    }
    return false;
}

std::shared_ptr<const FieldSpec> FieldSpec::create(long disc) {
    if (!is_fundamental_discriminant(disc))
        throw std::invalid_argument("not a negative fundamental discriminant: " +
                                    std::to_string(disc));
    Rational zre = (((disc % 4) + 4) % 4 == 0) ? Rational(0) : Rational(1, 2);
    return std::shared_ptr<const FieldSpec>(new FieldSpec(disc, zre));
}

std::shared_ptr<const FieldSpec> FieldSpec::create_with_zeta_re(long disc, const Rational& zeta_re) {
    auto canon = create(disc);
    Rational diff = zeta_re - canon->zeta_re;
    if (!is_integer(diff) || diff.get_num() % 2 != 0)
        throw std::invalid_argument("zeta_re must differ from the canonical choice by an even integer");
    return std::shared_ptr<const FieldSpec>(new FieldSpec(disc, zeta_re));
}

std::complex<double> FieldSpec::zeta_complex() const {
    return {rat_double(zeta_re), std::sqrt(static_cast<double>(abs_disc())) / 2.0};
}

// ---- FieldElem ----

static const FieldSpec* common(const FieldElem& x, const FieldElem& y) {
    const FieldSpec* F = x.F ? x.F : y.F;
    if (x.F && y.F && !(*x.F == *y.F))
        throw std::invalid_argument("field elements from different fields");
    return F;
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    return {common(*this, o), a + o.a, b + o.b};
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
    return {common(*this, o), a - o.a, b - o.b};
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    // zeta^2 = tr(zeta)*zeta - N(zeta)
    const FieldSpec* S = common(*this, o);
    Rational t = S->zeta_trace(), n = S->zeta_norm;
    return {S, a * o.a - b * o.b * n, a * o.b + b * o.a + b * o.b * t};
}

FieldElem FieldElem::operator/(const FieldElem& o) const {
    Rational n = o.norm();
    if (n == 0) throw std::invalid_argument("division by zero field element");
    FieldElem num = *this * o.conj();
    return {common(*this, o), num.a / n, num.b / n};
}

FieldElem FieldElem::conj() const {
    if (!F) return {F, a, -b};
    return {F, a + b * F->zeta_trace(), -b};
}

Rational FieldElem::trace() const {
    Rational t = 2 * a + b * (F ? F->zeta_trace() : Rational(0));
    t.canonicalize();
    return t;
}

Rational FieldElem::norm() const {
    Rational n = a * a + a * b * (F ? F->zeta_trace() : Rational(0)) +
                 b * b * (F ? F->zeta_norm : Rational(0));
    n.canonicalize();
    return n;
}

Rational FieldElem::real() const {
    Rational r = a + b * (F ? F->zeta_re : Rational(0));
    r.canonicalize();
    return r;
}

RealQuadVal FieldElem::imag() const {
    return {Rational(0), b / 2, F ? F->abs_disc() : 0};
}

bool FieldElem::in_inverse_different() const {
    return (field_delta(F) * *this).in_ring_of_integers();
}

std::complex<double> FieldElem::embed() const {
    return rat_double(a) + rat_double(b) * F->zeta_complex();
}

std::string FieldElem::str() const {
    if (b == 0) return rat_str(a);
    std::ostringstream os;
    if (a != 0) os << rat_str(a) << (b < 0 ? " - " : " + ") << rat_str(abs(b)) << "*zeta";
    else os << rat_str(b) << "*zeta";
    return os.str();
}

int FieldElem::cmp(const FieldElem& x, const FieldElem& y) {
    int c = ::cmp(x.a, y.a);
    if (c != 0) return c;
    return ::cmp(x.b, y.b);
}

FieldElem field_delta(const FieldSpec* F) {
    return {F, -2 * F->zeta_re, Rational(2)};
}

FieldElem field_delta_inv(const FieldSpec* F) {
    FieldElem d = field_delta(F);
    return {F, d.a / F->disc, d.b / F->disc};
}

// Grammar: [+-] term { (+|-) term }, term = rat | rat*zeta | zeta | -zeta.
FieldElem parse_field_elem(const FieldSpec* F, const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty field element");

    FieldElem result(F, 0, 0);
    size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+') { ++i; }
        else if (s[i] == '-') { sign = -1; ++i; }
        size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        if (term.empty()) throw std::invalid_argument("malformed field element: '" + text + "'");
        Rational coeff;
        bool zeta = false;
        auto star = term.find("*zeta");
        if (star != std::string::npos && star + 5 == term.size()) {
            coeff = rat_parse(term.substr(0, star));
            zeta = true;
        } else if (term == "zeta") {
            coeff = 1;
            zeta = true;
        } else {
            coeff = rat_parse(term);
        }
        if (zeta) result.b += sign * coeff;
        else result.a += sign * coeff;
        i = j;
    }
    result.a.canonicalize();
    result.b.canonicalize();
    return result;
}

}  // namespace heegner
