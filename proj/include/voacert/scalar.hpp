#ifndef VOACERT_SCALAR_HPP
#define VOACERT_SCALAR_HPP

#include <compare>
#include <map>
#include <ostream>
#include <string>

#include "voacert/rational.hpp"

namespace voacert {

/**
 * Scalar: exact element of Q(zeta_n)[tau], where zeta_n = e^{2 pi i / n} and tau is a
 * formal symbol standing for 2 pi i.  The cyclotomic part is kept in canonical form:
 * exponents reduced modulo the n-th cyclotomic polynomial (power basis, degree < phi(n))
 * and the conductor n descended to its minimum, so equality is plain map equality.
 * tau is polynomial only; nothing is ever divided by tau.
 */
class Scalar {
public:
    // Term key: coefficient of zeta_cond^root_power * tau^tau_deg.
    struct Key {
        long root_power;
        long tau_deg;
        auto operator<=>(const Key&) const = default;
    };
    using Terms = std::map<Key, Rational>;

    Scalar() : cond_(1) {}
    Scalar(const Rational& r);
    Scalar(long n) : Scalar(Rational(n)) {}

    static Scalar tau(long deg = 1);
    // e^{2 pi i e} for rational e.
    static Scalar root_of_unity(const Rational& e);

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool tau_free() const;
    bool is_rational() const { return cond_ == 1 && tau_free(); }
    Rational rational_value() const;

    long conductor() const { return cond_; }
    long max_tau_degree() const;
    // Cyclotomic coefficient of tau^d.
    Scalar tau_coefficient(long d) const;

    const Terms& terms() const { return terms_; }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o) { return *this += -o; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a += -b; }
    friend Scalar operator*(const Scalar& a, const Scalar& b);

    Scalar& operator*=(const Rational& r);
    friend Scalar operator*(Scalar a, const Rational& r) { return a *= r; }
    friend Scalar operator*(const Rational& r, Scalar a) { return a *= r; }

    // Multiplicative inverse; DivisionByTau if a tau term is present.
    Scalar inverse() const;
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.cond_ == b.cond_ && a.terms_ == b.terms_;
    }

    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

private:
    long cond_;
    Terms terms_;

    void canonicalize();

    friend class ScalarOps;
};

}  // namespace voacert

#endif
