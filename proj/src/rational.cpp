#include "voacert/rational.hpp"

namespace voacert {

void Rational::init(const BigInt& n, const BigInt& d) {
    if (d.is_zero()) throw Error("Rational: zero denominator");
    v_ = BigRat(n, d);  // cpp_rational normalizes to lowest terms, positive denominator
}

Rational Rational::parse(const std::string& s) {
    auto bad = [&]() { return UsageError("not a rational: '" + s + "'"); };
    std::string t;
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw bad();
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(t));
        std::string ns = t.substr(0, slash), ds = t.substr(slash + 1);
        if (ns.empty() || ds.empty()) throw bad();
        return Rational(BigInt(ns), BigInt(ds));
    } catch (const std::exception&) {
        throw bad();
    }
}

BigInt Rational::floor() const {
    BigInt q = num() / den();
    if (sign() < 0 && q * den() != num()) q -= 1;
    return q;
}

long Rational::to_long() const {
    if (!is_integer()) throw Error("Rational: " + str() + " is not an integer");
    return static_cast<long>(num());
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::pow(long e) const {
    if (e == 0) return Rational(1);
    if (is_zero() && e < 0) throw Error("Rational: zero to a negative power");
    Rational base = e > 0 ? *this : Rational(1) / *this;
    long k = e > 0 ? e : -e;
    Rational acc(1);
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

std::string Rational::str() const {
    std::string s = num().str();
    if (!is_integer()) s += "/" + den().str();
    return s;
}

Rational binomial(const Rational& r, long k) {
    if (k < 0) return Rational(0);
    Rational acc(1);
    for (long i = 0; i < k; ++i) acc *= (r - Rational(i)) / Rational(i + 1);
    return acc;
}

BigInt factorial(long n) {
    BigInt acc(1);
    for (long i = 2; i <= n; ++i) acc *= i;
    return acc;
}

long gcd_long(long a, long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace voacert
