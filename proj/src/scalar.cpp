#include "voacert/scalar.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

namespace voacert {

namespace {

long totient(long n) {
    long result = n, m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

std::vector<long> prime_factors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

// Exact division of integer polynomials (ascending coefficients), remainder must vanish.
std::vector<BigInt> poly_div_exact(std::vector<BigInt> num, const std::vector<BigInt>& den) {
    std::vector<BigInt> quot(num.size() - den.size() + 1, BigInt(0));
    for (long d = static_cast<long>(num.size()) - 1; d >= static_cast<long>(den.size()) - 1; --d) {
        BigInt c = num[d] / den.back();
        long shift = d - (static_cast<long>(den.size()) - 1);
        quot[shift] = c;
        for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    }
    return quot;
}

// Coefficients of the n-th cyclotomic polynomial, ascending, monic.
const std::vector<BigInt>& cyclotomic(long n) {
    static std::map<long, std::vector<BigInt>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<BigInt> poly(n + 1, BigInt(0));  // x^n - 1
    poly[0] = -1;
    poly[n] = 1;
    for (long d = 1; d < n; ++d)
        if (n % d == 0) poly = poly_div_exact(poly, cyclotomic(d));
    return cache.emplace(n, std::move(poly)).first->second;
}

// Remainder of a rational polynomial (ascending, length n) modulo the n-th cyclotomic
// polynomial; result has length phi(n).
std::vector<Rational> reduce_mod_cyclotomic(std::vector<Rational> poly, long n) {
    const auto& cp = cyclotomic(n);
    long deg = static_cast<long>(cp.size()) - 1;  // phi(n)
    for (long d = static_cast<long>(poly.size()) - 1; d >= deg; --d) {
        if (poly[d].is_zero()) continue;
        Rational c = poly[d];
        for (long i = 0; i <= deg; ++i) poly[d - deg + i] -= c * Rational(cp[i]);
    }
    poly.resize(deg);
    return poly;
}

// Solve A x = b for each right-hand side by exact Gaussian elimination; returns false on
// an inconsistent system.  A is column-independent in every use here.
bool solve_exact(std::vector<std::vector<Rational>> a, std::vector<std::vector<Rational>> rhs,
                 std::vector<std::vector<Rational>>& out) {
    size_t nrows = a.size(), ncols = nrows ? a[0].size() : 0, nrhs = rhs.size();
    std::vector<size_t> pivot_row(ncols);
    size_t row = 0;
    for (size_t col = 0; col < ncols && row < nrows; ++col) {
        size_t piv = row;
        while (piv < nrows && a[piv][col].is_zero()) ++piv;
        if (piv == nrows) return false;  // column rank defect
        std::swap(a[piv], a[row]);
        for (size_t r = 0; r < nrhs; ++r) std::swap(rhs[r][piv], rhs[r][row]);
        Rational inv = Rational(1) / a[row][col];
        for (size_t j = col; j < ncols; ++j) a[row][j] *= inv;
        for (size_t r = 0; r < nrhs; ++r) rhs[r][row] *= inv;
        for (size_t i = 0; i < nrows; ++i) {
            if (i == row || a[i][col].is_zero()) continue;
            Rational f = a[i][col];
            for (size_t j = col; j < ncols; ++j) a[i][j] -= f * a[row][j];
            for (size_t r = 0; r < nrhs; ++r) rhs[r][i] -= f * rhs[r][row];
        }
        pivot_row[col] = row;
        ++row;
    }
    for (size_t i = row; i < nrows; ++i)
        for (size_t r = 0; r < nrhs; ++r)
            if (!rhs[r][i].is_zero()) return false;  // inconsistent
    out.assign(nrhs, std::vector<Rational>(ncols));
    for (size_t r = 0; r < nrhs; ++r)
        for (size_t col = 0; col < ncols; ++col) out[r][col] = rhs[r][pivot_row[col]];
    return true;
}

}  // namespace

Scalar::Scalar(const Rational& r) : cond_(1) {
    if (!r.is_zero()) terms_[{0, 0}] = r;
}

Scalar Scalar::tau(long deg) {
    Scalar s;
    s.terms_[{0, deg}] = Rational(1);
    return s;
}

Scalar Scalar::root_of_unity(const Rational& e) {
    Rational frac = e - Rational(e.floor());
    long b = static_cast<long>(frac.den());
    long a = static_cast<long>(frac.num());
    Scalar s;
    s.cond_ = b;
    s.terms_[{a, 0}] = Rational(1);
    s.canonicalize();
    return s;
}

void Scalar::canonicalize() {
    // Fold exponents into [0, cond) and reduce every tau slice to the power basis.
    std::map<long, std::vector<Rational>> slices;
    for (const auto& [key, coeff] : terms_) {
        long k = ((key.root_power % cond_) + cond_) % cond_;
        auto& slice = slices[key.tau_deg];
        if (slice.empty()) slice.assign(cond_, Rational(0));
        slice[k] += coeff;
    }
    long phi = totient(cond_);
    for (auto& [deg, slice] : slices) slice = reduce_mod_cyclotomic(std::move(slice), cond_);

    // Descend to the minimal conductor: try writing every slice in powers of zeta^(P).
    bool changed = true;
    while (changed && cond_ > 1) {
        changed = false;
        for (long p : prime_factors(cond_)) {
            long m = cond_ / p;
            long phim = totient(m);
            std::vector<std::vector<Rational>> basis_cols(phi, std::vector<Rational>(phim));
            for (long i = 0; i < phim; ++i) {
                std::vector<Rational> mono(cond_, Rational(0));
                mono[(i * p) % cond_] = Rational(1);
                auto red = reduce_mod_cyclotomic(std::move(mono), cond_);
                for (long r = 0; r < phi; ++r) basis_cols[r][i] = red[r];
            }
            std::vector<std::vector<Rational>> rhs;
            std::vector<long> degs;
            for (auto& [deg, slice] : slices) {
                rhs.push_back(slice);
                degs.push_back(deg);
            }
            std::vector<std::vector<Rational>> sol;
            if (rhs.empty() || solve_exact(basis_cols, rhs, sol)) {
                cond_ = m;
                phi = phim;
                std::map<long, std::vector<Rational>> next;
                for (size_t r = 0; r < degs.size(); ++r) next[degs[r]] = sol[r];
                slices = std::move(next);
                changed = true;
                break;
            }
        }
    }

    terms_.clear();
    for (const auto& [deg, slice] : slices)
        for (long k = 0; k < static_cast<long>(slice.size()); ++k)
            if (!slice[k].is_zero()) terms_[{k, deg}] = slice[k];
    if (terms_.empty()) cond_ = 1;
}

bool Scalar::is_one() const {
    return cond_ == 1 && terms_.size() == 1 && terms_.begin()->first == Key{0, 0} &&
           terms_.begin()->second == Rational(1);
}

bool Scalar::tau_free() const {
    for (const auto& [key, c] : terms_)
        if (key.tau_deg != 0) return false;
    return true;
}

Rational Scalar::rational_value() const {
    if (is_zero()) return Rational(0);
    if (!is_rational()) throw Error("Scalar: " + str() + " is not rational");
    return terms_.begin()->second;
}

long Scalar::max_tau_degree() const {
    long d = 0;
    for (const auto& [key, c] : terms_) d = std::max(d, key.tau_deg);
    return d;
}

Scalar Scalar::tau_coefficient(long d) const {
    Scalar out;
    out.cond_ = cond_;
    for (const auto& [key, c] : terms_)
        if (key.tau_deg == d) out.terms_[{key.root_power, 0}] = c;
    out.canonicalize();
    return out;
}

Scalar Scalar::operator-() const {
    Scalar out = *this;
    for (auto& [key, c] : out.terms_) c = -c;
    return out;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) { *this = o; return *this; }
    long n = cond_ / gcd_long(cond_, o.cond_) * o.cond_;
    long f1 = n / cond_, f2 = n / o.cond_;
    Scalar out;
    out.cond_ = n;
    for (const auto& [key, c] : terms_) out.terms_[{key.root_power * f1, key.tau_deg}] += c;
    for (const auto& [key, c] : o.terms_) out.terms_[{key.root_power * f2, key.tau_deg}] += c;
    out.canonicalize();
    *this = std::move(out);
    return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return Scalar();
    long n = a.cond_ / gcd_long(a.cond_, b.cond_) * b.cond_;
    long f1 = n / a.cond_, f2 = n / b.cond_;
    Scalar out;
    out.cond_ = n;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            Scalar::Key key{(ka.root_power * f1 + kb.root_power * f2) % n, ka.tau_deg + kb.tau_deg};
            out.terms_[key] += ca * cb;
        }
    out.canonicalize();
    return out;
}

Scalar& Scalar::operator*=(const Rational& r) {
    if (r.is_zero()) { *this = Scalar(); return *this; }
    for (auto& [key, c] : terms_) c *= r;
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error("Scalar: inverse of zero");
    if (!tau_free()) throw DivisionByTauError("cannot invert " + str());
    if (cond_ == 1) return Scalar(Rational(1) / terms_.begin()->second);
    long phi = totient(cond_);
    std::vector<Rational> z(phi, Rational(0));
    for (const auto& [key, c] : terms_) z[key.root_power] = c;
    // Matrix of multiplication by z in the power basis.
    std::vector<std::vector<Rational>> mat(phi, std::vector<Rational>(phi));
    for (long i = 0; i < phi; ++i) {
        std::vector<Rational> prod(cond_, Rational(0));
        for (long j = 0; j < phi; ++j) prod[(i + j) % cond_] += z[j];
        auto red = reduce_mod_cyclotomic(std::move(prod), cond_);
        for (long r = 0; r < phi; ++r) mat[r][i] = red[r];
    }
    std::vector<std::vector<Rational>> rhs(1, std::vector<Rational>(phi, Rational(0)));
    rhs[0][0] = Rational(1);
    std::vector<std::vector<Rational>> sol;
    if (!solve_exact(mat, rhs, sol)) throw Error("Scalar: inverse failed for " + str());
    Scalar out;
    out.cond_ = cond_;
    for (long i = 0; i < phi; ++i)
        if (!sol[0][i].is_zero()) out.terms_[{i, 0}] = sol[0][i];
    out.canonicalize();
    return out;
}

std::string Scalar::str() const {
    if (terms_.empty()) return "0";
    // Sort by (tau degree, root power) for a stable reading order.
    std::vector<std::pair<Key, Rational>> sorted(terms_.begin(), terms_.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (a.first.tau_deg != b.first.tau_deg) return a.first.tau_deg < b.first.tau_deg;
        return a.first.root_power < b.first.root_power;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : sorted) {
        Rational mag = c.sign() < 0 ? -c : c;
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        std::vector<std::string> factors;
        if (!(mag == Rational(1)) || (key.root_power == 0 && key.tau_deg == 0))
            factors.push_back(mag.str());
        if (key.root_power != 0) {
            std::string f = "zeta(" + std::to_string(cond_) + ")";
            if (key.root_power != 1) f += "^" + std::to_string(key.root_power);
            factors.push_back(f);
        }
        if (key.tau_deg != 0) {
            std::string f = "tau";
            if (key.tau_deg != 1) f += "^" + std::to_string(key.tau_deg);
            factors.push_back(f);
        }
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i) os << "*";
            os << factors[i];
        }
    }
    return os.str();
}

}  // namespace voacert
