#pragma once

#include "qpskew/rational.hpp"

#include <vector>

namespace qpskew {

/// Dense matrix over the rationals.  Sizes stay small (total module
/// dimensions are bounded at a few dozen), so plain Gaussian elimination
/// with exact arithmetic is enough everywhere.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

    static QMatrix identity(int n);
    static QMatrix from_rows(const std::vector<std::vector<Rat>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& at(int r, int c) { return data_[r * cols_ + c]; }
    const Rat& at(int r, int c) const { return data_[r * cols_ + c]; }

    bool is_zero() const;
    QMatrix transpose() const;
    QMatrix operator*(const QMatrix& other) const;
    QMatrix operator+(const QMatrix& other) const;
    QMatrix operator-(const QMatrix& other) const;
    QMatrix& operator*=(const Rat& c);
    friend QMatrix operator*(const Rat& c, QMatrix m) { m *= c; return m; }
    friend bool operator==(const QMatrix&, const QMatrix&) = default;

    Rat trace() const;

    /// Horizontal/vertical stacking and block diagonal.
    static QMatrix hstack(const QMatrix& a, const QMatrix& b);
    static QMatrix vstack(const QMatrix& a, const QMatrix& b);
    static QMatrix block_diag(const QMatrix& a, const QMatrix& b);

    int rank() const;
    bool invertible() const { return rows_ == cols_ && rank() == rows_; }

    /// Columns spanning the kernel (right null space).
    QMatrix kernel() const;

    /// Solves A x = b; empty result when inconsistent.
    std::vector<std::vector<Rat>> solve(const std::vector<Rat>& b) const;

    QMatrix inverse() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rat> data_;
};

/// Monic minimal polynomial of a square matrix, low-degree coefficient
/// first: p[0] + p[1] x + ... + x^deg.
std::vector<Rat> minimal_polynomial(const QMatrix& m);

/// Evaluates a polynomial (low-degree first) at a matrix.
QMatrix evaluate_polynomial(const std::vector<Rat>& poly, const QMatrix& m);

/// Rational roots with multiplicities, plus the rootless cofactor.
struct RationalRoots {
    std::vector<std::pair<Rat, int>> roots;
    std::vector<Rat> remainder; // monic, no rational roots (may be constant 1)
};
RationalRoots rational_roots(const std::vector<Rat>& poly);

/// Splits a monic rational-root-free polynomial of degree 4 into two monic
/// quadratics over Q when possible.  Degrees 2 and 3 without rational roots
/// are irreducible; higher degrees are left alone.
std::vector<std::vector<Rat>> try_split_quartic(const std::vector<Rat>& poly);

std::string format_polynomial(const std::vector<Rat>& poly);

} // namespace qpskew
