#ifndef VOACERT_LINALG_HPP
#define VOACERT_LINALG_HPP

#include <map>
#include <string>
#include <vector>

#include "voacert/rational.hpp"
#include "voacert/scalar.hpp"

namespace voacert {

/** Matrix: dense exact matrix over a commutative coefficient ring R. */
template <class R>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(long rows, long cols) : rows_(rows), cols_(cols), data_(rows * cols, R(0)) {}

    static Matrix identity(long n) {
        Matrix m(n, n);
        for (long i = 0; i < n; ++i) m(i, i) = R(1);
        return m;
    }

    long rows() const { return rows_; }
    long cols() const { return cols_; }

    R& operator()(long i, long j) { return data_[i * cols_ + j]; }
    const R& operator()(long i, long j) const { return data_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    Matrix& operator+=(const Matrix& o) {
        for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        for (size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    Matrix& scale(const R& c) {
        for (auto& x : data_) x *= c;
        return *this;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix out(a.rows_, b.cols_);
        for (long i = 0; i < a.rows_; ++i)
            for (long k = 0; k < a.cols_; ++k) {
                const R& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (long j = 0; j < b.cols_; ++j) {
                    const R& bkj = b(k, j);
                    if (!bkj.is_zero()) out(i, j) += aik * bkj;
                }
            }
        return out;
    }

    std::vector<R> apply(const std::vector<R>& v) const {
        std::vector<R> out(rows_, R(0));
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j)
                if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    Matrix pow(long e) const {
        Matrix acc = identity(rows_), base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

private:
    long rows_, cols_;
    std::vector<R> data_;
};

using RatMatrix = Matrix<Rational>;
using ScalarMatrix = Matrix<Scalar>;

ScalarMatrix to_scalar_matrix(const RatMatrix& m);
// Requires every entry rational; throws otherwise.
RatMatrix to_rational_matrix(const ScalarMatrix& m);

// Basis of the kernel, one column vector per basis element.
std::vector<std::vector<Rational>> kernel_basis(const RatMatrix& m);

RatMatrix inverse(const RatMatrix& m);

// Monic characteristic polynomial det(xI - A), ascending coefficients.
std::vector<Rational> characteristic_polynomial(const RatMatrix& a);

// All roots with multiplicities, sorted ascending; IrrationalSpectrum if the polynomial
// does not split over Q.
std::vector<std::pair<Rational, long>> rational_roots(const std::vector<Rational>& poly);

/**
 * JordanChevalley: exact decomposition A = S + N with S semisimple, N nilpotent, [S,N] = 0.
 * Projectors project onto the generalized eigenspaces along each other.
 */
struct JordanChevalley {
    std::vector<std::pair<Rational, long>> eigenvalues;  // (eigenvalue, multiplicity), ascending
    RatMatrix semisimple;
    RatMatrix nilpotent;
    std::vector<RatMatrix> projectors;  // aligned with eigenvalues
};

JordanChevalley jordan_chevalley(const RatMatrix& a);

// Least k with M^k = 0 (k = 0 for an empty matrix); NotNilpotent if none exists.
long nilpotency_index(const ScalarMatrix& m);

// exp(factor * N) for nilpotent N, as an exact polynomial in factor.
ScalarMatrix exp_nilpotent(const RatMatrix& n, const Scalar& factor);

// Components of v in the generalized eigenspaces: list of (eigenvalue, projected vector),
// zero projections omitted.  This is the exact content of applying x^{semisimple part}.
std::vector<std::pair<Rational, std::vector<Rational>>> eigencomponents(
    const JordanChevalley& jc, const std::vector<Rational>& v);

// The vectors N^j v / j! for j = 0 .. until zero.  These are the log-power coefficients of
// the unipotent factor exp(N log x) applied to v.
std::vector<std::vector<Rational>> nilpotent_log_powers(const RatMatrix& n,
                                                        const std::vector<Rational>& v);

}  // namespace voacert

#endif
