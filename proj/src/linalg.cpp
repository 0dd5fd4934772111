#include "voacert/linalg.hpp"

#include <algorithm>

#include "voacert/errors.hpp"

namespace voacert {

namespace {

// Row echelon form in place; returns pivot column list.
std::vector<long> row_reduce(RatMatrix& m) {
    std::vector<long> pivots;
    long row = 0;
    for (long col = 0; col < m.cols() && row < m.rows(); ++col) {
        long piv = row;
        while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        for (long j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
        Rational inv = Rational(1) / m(row, col);
        for (long j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (long i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            Rational f = m(i, col);
            for (long j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

// Divisors of |n| in ascending order.
std::vector<BigInt> divisors(BigInt n) {
    if (n < 0) n = -n;
    std::vector<BigInt> small, large;
    for (BigInt d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

// Evaluate poly (ascending) at x.
Rational poly_eval(const std::vector<Rational>& poly, const Rational& x) {
    Rational acc(0);
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// Divide poly by (x - r) exactly (r must be a root), ascending coefficients.
std::vector<Rational> deflate(const std::vector<Rational>& poly, const Rational& r) {
    std::vector<Rational> quot(poly.size() - 1, Rational(0));
    Rational carry(0);
    for (long i = static_cast<long>(poly.size()) - 1; i >= 1; --i) {
        carry = poly[i] + carry * r;
        quot[i - 1] = carry;
    }
    return quot;
}

}  // namespace

ScalarMatrix to_scalar_matrix(const RatMatrix& m) {
    ScalarMatrix out(m.rows(), m.cols());
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) out(i, j) = Scalar(m(i, j));
    return out;
}

RatMatrix to_rational_matrix(const ScalarMatrix& m) {
    RatMatrix out(m.rows(), m.cols());
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).rational_value();
    return out;
}

std::vector<std::vector<Rational>> kernel_basis(const RatMatrix& m) {
    RatMatrix r = m;
    std::vector<long> pivots = row_reduce(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (long p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (long free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rational> v(m.cols(), Rational(0));
        v[free_col] = Rational(1);
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

RatMatrix inverse(const RatMatrix& m) {
    long n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = Rational(1);
    }
    std::vector<long> pivots = row_reduce(aug);
    if (static_cast<long>(pivots.size()) != n || (n > 0 && pivots.back() != n - 1))
        throw Error("Matrix: singular matrix has no inverse");
    RatMatrix out(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
    return out;
}

std::vector<Rational> characteristic_polynomial(const RatMatrix& a) {
    // Faddeev-LeVerrier: exact and division-light.
    long n = a.rows();
    std::vector<Rational> coeff(n + 1, Rational(0));
    coeff[n] = Rational(1);
    RatMatrix m = RatMatrix(n, n);
    Rational c(1);
    for (long k = 1; k <= n; ++k) {
        for (long i = 0; i < n; ++i) m(i, i) += c;
        m = a * m;
        Rational tr(0);
        for (long i = 0; i < n; ++i) tr += m(i, i);
        c = -tr / Rational(k);
        coeff[n - k] = c;
    }
    return coeff;
}

std::vector<std::pair<Rational, long>> rational_roots(const std::vector<Rational>& poly) {
    std::vector<Rational> p = poly;
    std::vector<std::pair<Rational, long>> roots;
    long zero_mult = 0;
    while (p.size() > 1 && p[0].is_zero()) {
        p.erase(p.begin());
        ++zero_mult;
    }
    if (zero_mult) roots.emplace_back(Rational(0), zero_mult);
    while (p.size() > 1) {
        // Clear denominators and search divisors of the ends.
        BigInt lcm(1);
        for (const auto& c : p) lcm = lcm / boost::multiprecision::gcd(lcm, c.den()) * c.den();
        std::vector<BigInt> ip(p.size());
        for (size_t i = 0; i < p.size(); ++i) ip[i] = (p[i] * Rational(lcm)).num();
        bool found = false;
        for (const BigInt& num : divisors(ip.front())) {
            for (const BigInt& den : divisors(ip.back())) {
                for (int s : {1, -1}) {
                    Rational cand(s * num, den);
                    if (!poly_eval(p, cand).is_zero()) continue;
                    long mult = 0;
                    while (p.size() > 1 && poly_eval(p, cand).is_zero()) {
                        p = deflate(p, cand);
                        ++mult;
                    }
                    bool merged = false;
                    for (auto& [r, m] : roots)
                        if (r == cand) { m += mult; merged = true; }
                    if (!merged) roots.emplace_back(cand, mult);
                    found = true;
                    break;
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) {
            std::string s;
            for (const auto& c : p) s += (s.empty() ? "" : ",") + c.str();
            throw IrrationalSpectrumError("no rational root of [" + s + "]");
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

JordanChevalley jordan_chevalley(const RatMatrix& a) {
    long n = a.rows();
    JordanChevalley jc;
    jc.eigenvalues = rational_roots(characteristic_polynomial(a));
    // Assemble the generalized eigenbasis column by column.
    RatMatrix basis(n, n);
    std::vector<std::pair<long, long>> spans;  // (start column, count) per eigenvalue
    long col = 0;
    for (const auto& [lambda, mult] : jc.eigenvalues) {
        RatMatrix shifted = a;
        for (long i = 0; i < n; ++i) shifted(i, i) -= lambda;
        auto gen_kernel = kernel_basis(shifted.pow(mult));
        if (static_cast<long>(gen_kernel.size()) != mult)
            throw Error("JordanChevalley: generalized eigenspace dimension mismatch");
        spans.emplace_back(col, mult);
        for (const auto& v : gen_kernel) {
            for (long i = 0; i < n; ++i) basis(i, col) = v[i];
            ++col;
        }
    }
    RatMatrix basis_inv = inverse(basis);
    jc.semisimple = RatMatrix(n, n);
    for (size_t e = 0; e < jc.eigenvalues.size(); ++e) {
        RatMatrix sel(n, n);
        for (long c = spans[e].first; c < spans[e].first + spans[e].second; ++c) sel(c, c) = Rational(1);
        RatMatrix proj = basis * sel * basis_inv;
        RatMatrix scaled = proj;
        scaled.scale(jc.eigenvalues[e].first);
        jc.semisimple += scaled;
        jc.projectors.push_back(std::move(proj));
    }
    jc.nilpotent = a - jc.semisimple;
    if (!(jc.semisimple * jc.nilpotent == jc.nilpotent * jc.semisimple))
        throw Error("JordanChevalley: parts do not commute");
    nilpotency_index(to_scalar_matrix(jc.nilpotent));
    return jc;
}

long nilpotency_index(const ScalarMatrix& m) {
    if (m.rows() == 0) return 0;
    ScalarMatrix p = ScalarMatrix::identity(m.rows());
    for (long k = 0; k <= m.rows(); ++k) {
        if (p.is_zero()) return k;
        p = p * m;
    }
    throw NotNilpotentError("matrix of size " + std::to_string(m.rows()) + " is not nilpotent");
}

ScalarMatrix exp_nilpotent(const RatMatrix& n, const Scalar& factor) {
    long idx = nilpotency_index(to_scalar_matrix(n));
    ScalarMatrix out = ScalarMatrix::identity(n.rows());
    ScalarMatrix power = ScalarMatrix::identity(n.rows());
    ScalarMatrix sn = to_scalar_matrix(n);
    Scalar fpow(Rational(1));
    Rational fact(1);
    for (long k = 1; k < idx; ++k) {
        power = power * sn;
        fpow = fpow * factor;
        fact *= Rational(k);
        ScalarMatrix term = power;
        term.scale(fpow * (Rational(1) / fact));
        out += term;
    }
    return out;
}

std::vector<std::pair<Rational, std::vector<Rational>>> eigencomponents(
    const JordanChevalley& jc, const std::vector<Rational>& v) {
    std::vector<std::pair<Rational, std::vector<Rational>>> out;
    for (size_t e = 0; e < jc.eigenvalues.size(); ++e) {
        std::vector<Rational> proj = jc.projectors[e].apply(v);
        bool zero = true;
        for (const auto& x : proj)
            if (!x.is_zero()) { zero = false; break; }
        if (!zero) out.emplace_back(jc.eigenvalues[e].first, std::move(proj));
    }
    return out;
}

std::vector<std::vector<Rational>> nilpotent_log_powers(const RatMatrix& n,
                                                        const std::vector<Rational>& v) {
    std::vector<std::vector<Rational>> out;
    std::vector<Rational> cur = v;
    Rational fact(1);
    for (long j = 0;; ++j) {
        bool zero = true;
        for (const auto& x : cur)
            if (!x.is_zero()) { zero = false; break; }
        if (zero && j > 0) break;
        std::vector<Rational> scaled = cur;
        for (auto& x : scaled) x /= fact;
        out.push_back(std::move(scaled));
        if (zero) break;
        cur = n.apply(cur);
        fact *= Rational(j + 1);
        if (j > n.rows() + 1) throw NotNilpotentError("log powers do not terminate");
    }
    return out;
}

}  // namespace voacert
