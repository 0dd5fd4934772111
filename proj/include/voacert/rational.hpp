#ifndef VOACERT_RATIONAL_HPP
#define VOACERT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "voacert/errors.hpp"

namespace voacert {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/** Rational: arbitrary-precision rational, always in lowest terms with positive denominator. */
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(const BigInt& n) : v_(n) {}
    Rational(long n, long d) { init(BigInt(n), BigInt(d)); }
    Rational(const BigInt& n, const BigInt& d) { init(n, d); }

    static Rational parse(const std::string& s);

    BigInt num() const { return boost::multiprecision::numerator(v_); }
    BigInt den() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_.is_zero(); }
    bool is_integer() const { return den() == 1; }
    int sign() const { return v_.sign(); }

    // Largest integer <= value.
    BigInt floor() const;
    BigInt ceil() const { return -(-*this).floor(); }

    long to_long() const;

    Rational operator-() const { return Rational(BigRat(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        if (a.v_ < b.v_) return std::strong_ordering::less;
        if (a.v_ > b.v_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    Rational pow(long e) const;

    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    explicit Rational(const BigRat& v) : v_(v) {}
    void init(const BigInt& n, const BigInt& d);

    BigRat v_;
};

// Generalized binomial coefficient r(r-1)...(r-k+1)/k! for k >= 0.
Rational binomial(const Rational& r, long k);

BigInt factorial(long n);

// Nonnegative gcd and lcm on plain machine integers.
long gcd_long(long a, long b);

}  // namespace voacert

#endif
