#include "qpskew/matrix.hpp"

#include <algorithm>

namespace qpskew {

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<Rat>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    QMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw Error("ShapeMismatch", "ragged rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

bool QMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rat& x) { return x == 0; });
}

QMatrix QMatrix::transpose() const {
    QMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

QMatrix QMatrix::operator*(const QMatrix& other) const {
    if (cols_ != other.rows_) throw Error("ShapeMismatch", "matrix product shapes");
    QMatrix m(rows_, other.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rat& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < other.cols_; ++j) m.at(i, j) += x * other.at(k, j);
        }
    return m;
}

QMatrix QMatrix::operator+(const QMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw Error("ShapeMismatch", "matrix sum");
    QMatrix m(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] + other.data_[i];
    return m;
}

QMatrix QMatrix::operator-(const QMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw Error("ShapeMismatch", "matrix diff");
    QMatrix m(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] - other.data_[i];
    return m;
}

QMatrix& QMatrix::operator*=(const Rat& c) {
    for (auto& x : data_) x *= c;
    return *this;
}

Rat QMatrix::trace() const {
    Rat t = 0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
    return t;
}

QMatrix QMatrix::hstack(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_) throw Error("ShapeMismatch", "hstack");
    QMatrix m(a.rows_, a.cols_ + b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
        for (int j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols_; ++j) m.at(i, a.cols_ + j) = b.at(i, j);
    }
    return m;
}

QMatrix QMatrix::vstack(const QMatrix& a, const QMatrix& b) {
    if (a.cols_ != b.cols_) throw Error("ShapeMismatch", "vstack");
    QMatrix m(a.rows_ + b.rows_, a.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) m.at(a.rows_ + i, j) = b.at(i, j);
    return m;
}

QMatrix QMatrix::block_diag(const QMatrix& a, const QMatrix& b) {
    QMatrix m(a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) m.at(a.rows_ + i, a.cols_ + j) = b.at(i, j);
    return m;
}

namespace {

/// Row-reduces in place; returns pivot column per pivot row.
std::vector<int> rref(QMatrix& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int pivot = -1;
        for (int r = row; r < m.rows(); ++r)
            if (m.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(row, j));
        Rat inv = Rat(1) / m.at(row, col);
        for (int j = 0; j < m.cols(); ++j) m.at(row, j) *= inv;
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col) == 0) continue;
            Rat factor = m.at(r, col);
            for (int j = 0; j < m.cols(); ++j) m.at(r, j) -= factor * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

int QMatrix::rank() const {
    QMatrix tmp = *this;
    return static_cast<int>(rref(tmp).size());
}

QMatrix QMatrix::kernel() const {
    QMatrix tmp = *this;
    std::vector<int> pivots = rref(tmp);
    std::vector<bool> is_pivot(cols_, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < cols_; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    QMatrix basis(cols_, static_cast<int>(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        basis.at(fc, static_cast<int>(k)) = 1;
        for (size_t r = 0; r < pivots.size(); ++r)
            basis.at(pivots[r], static_cast<int>(k)) = -tmp.at(static_cast<int>(r), fc);
    }
    return basis;
}

std::vector<std::vector<Rat>> QMatrix::solve(const std::vector<Rat>& b) const {
    if (static_cast<int>(b.size()) != rows_) throw Error("ShapeMismatch", "solve rhs");
    QMatrix aug(rows_, cols_ + 1);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_) = b[i];
    }
    std::vector<int> pivots = rref(aug);
    for (int c : pivots)
        if (c == cols_) return {}; // inconsistent
    std::vector<Rat> particular(cols_, Rat(0));
    for (size_t r = 0; r < pivots.size(); ++r) particular[pivots[r]] = aug.at(static_cast<int>(r), cols_);
    std::vector<std::vector<Rat>> out;
    out.push_back(std::move(particular));
    return out;
}

QMatrix QMatrix::inverse() const {
    if (rows_ != cols_) throw Error("ShapeMismatch", "inverse of non-square matrix");
    QMatrix aug = hstack(*this, identity(rows_));
    std::vector<int> pivots = rref(aug);
    if (static_cast<int>(pivots.size()) != rows_) throw Error("Singular", "matrix not invertible");
    QMatrix inv(rows_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < rows_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
    return inv;
}

std::vector<Rat> minimal_polynomial(const QMatrix& m) {
    if (m.rows() != m.cols()) throw Error("ShapeMismatch", "minpoly of non-square matrix");
    int n = m.rows();
    int dim = n * n;
    // Find the first power of m that is a combination of the lower powers.
    std::vector<QMatrix> powers;
    powers.push_back(QMatrix::identity(n));
    for (int deg = 1; deg <= n; ++deg) {
        powers.push_back(powers.back() * m);
        QMatrix system(dim, deg);
        for (int k = 0; k < deg; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) system.at(i * n + j, k) = powers[k].at(i, j);
        std::vector<Rat> rhs(dim);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) rhs[i * n + j] = powers[deg].at(i, j);
        auto sol = system.solve(rhs);
        if (!sol.empty()) {
            std::vector<Rat> poly(deg + 1);
            for (int k = 0; k < deg; ++k) poly[k] = -sol[0][k];
            poly[deg] = 1;
            return poly;
        }
    }
    throw Error("Internal", "minimal polynomial search failed");
}

QMatrix evaluate_polynomial(const std::vector<Rat>& poly, const QMatrix& m) {
    int n = m.rows();
    QMatrix acc(n, n);
    QMatrix power = QMatrix::identity(n);
    for (size_t k = 0; k < poly.size(); ++k) {
        if (poly[k] != 0) acc = acc + poly[k] * power;
        if (k + 1 < poly.size()) power = power * m;
    }
    return acc;
}

namespace {

Rat evaluate_at(const std::vector<Rat>& poly, const Rat& x) {
    Rat acc = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
    return acc;
}

/// Divides poly by (x - root); assumes exact divisibility.
std::vector<Rat> deflate(const std::vector<Rat>& poly, const Rat& root) {
    int deg = static_cast<int>(poly.size()) - 1;
    std::vector<Rat> out(deg);
    Rat carry = poly[deg];
    for (int k = deg - 1; k >= 0; --k) {
        out[k] = carry;
        carry = poly[k] + carry * root;
    }
    return out;
}

std::vector<Int> divisors(Int n) {
    if (n < 0) n = -n;
    std::vector<Int> out;
    // Trial division is fine at the coefficient sizes that arise here; the
    // cap keeps pathological inputs from spinning.
    if (n > Int("1000000000000000000")) return out;
    for (Int d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

RationalRoots rational_roots(const std::vector<Rat>& poly) {
    RationalRoots out;
    std::vector<Rat> current = poly;
    // Trim to monic; extract roots one by one via the rational root theorem
    // on the integer-scaled polynomial.
    bool progress = true;
    while (progress && current.size() > 1) {
        progress = false;
        // Clear denominators.
        Int lcm = 1;
        for (const Rat& c : current) lcm = boost::multiprecision::lcm(lcm, denominator(c));
        std::vector<Int> zpoly;
        for (const Rat& c : current) zpoly.push_back(numerator(Rat(c * lcm)));
        // Strip leading zeros at the constant end: x = 0 roots.
        if (zpoly[0] == 0) {
            bool already = false;
            for (auto& [r, mult] : out.roots)
                if (r == 0) {
                    ++mult;
                    already = true;
                }
            if (!already) out.roots.emplace_back(Rat(0), 1);
            current = deflate(current, Rat(0));
            progress = true;
            continue;
        }
        Int lead = zpoly.back();
        for (const Int& p : divisors(zpoly[0])) {
            for (const Int& q : divisors(lead)) {
                for (int sign = 0; sign < 2; ++sign) {
                    Rat candidate = sign == 0 ? Rat(p, q) : Rat(-p, q);
                    if (evaluate_at(current, candidate) == 0) {
                        bool already = false;
                        for (auto& [r, mult] : out.roots)
                            if (r == candidate) {
                                ++mult;
                                already = true;
                            }
                        if (!already) out.roots.emplace_back(candidate, 1);
                        current = deflate(current, candidate);
                        progress = true;
                        goto next_round;
                    }
                }
            }
        }
    next_round:;
    }
    out.remainder = current;
    std::sort(out.roots.begin(), out.roots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::vector<std::vector<Rat>> try_split_quartic(const std::vector<Rat>& poly) {
    if (poly.size() != 5) return {};
    // Monic x^4 + e3 x^3 + e2 x^2 + e1 x + e0 = (x^2 + a x + b)(x^2 + c x + d).
    Rat e3 = poly[3], e2 = poly[2], e1 = poly[1], e0 = poly[0];
    // Enumerate rational b with b divides e0 in the scaled-integer sense.
    Int lcm = 1;
    for (const Rat& c : poly) lcm = boost::multiprecision::lcm(lcm, denominator(c));
    Int n0 = numerator(Rat(e0 * lcm * lcm));
    if (n0 == 0) return {};
    for (const Int& pb : divisors(n0)) {
        for (const Int& qb : divisors(Int(lcm * lcm))) {
            for (int sign = 0; sign < 2; ++sign) {
                Rat b = sign == 0 ? Rat(pb, qb) : Rat(-pb, qb);
                if (b == 0) continue;
                Rat d = e0 / b;
                // a + c = e3, b + d + a c = e2, a d + b c = e1.
                // Substitute c = e3 - a: a(e3 - a) = e2 - b - d, a d + b(e3 - a) = e1.
                // Second equation is linear in a unless d == b.
                if (d != b) {
                    Rat a = (e1 - b * e3) / (d - b);
                    Rat c = e3 - a;
                    if (b + d + a * c == e2 && a * d + b * c == e1)
                        return {{b, a, Rat(1)}, {d, c, Rat(1)}};
                } else {
                    // a + c = e3 and a c = e2 - 2b: rational roots of
                    // t^2 - e3 t + (e2 - 2b).
                    auto roots = rational_roots({e2 - 2 * b, -e3, Rat(1)});
                    for (const auto& [a, mult] : roots.roots) {
                        (void)mult;
                        Rat c = e3 - a;
                        if (a * d + b * c == e1) return {{b, a, Rat(1)}, {d, c, Rat(1)}};
                    }
                }
            }
        }
    }
    return {};
}

std::string format_polynomial(const std::vector<Rat>& poly) {
    std::string out;
    for (int k = static_cast<int>(poly.size()) - 1; k >= 0; --k) {
        if (poly[k] == 0 && poly.size() > 1) continue;
        if (!out.empty()) out += " + ";
        if (k == 0 || poly[k] != 1) out += to_string(poly[k]);
        if (k > 0) {
            if (poly[k] != 1) out += "*";
            out += "x";
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out.empty() ? "0" : out;
}

} // namespace qpskew
