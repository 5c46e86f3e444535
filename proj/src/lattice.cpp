#include "toricdef/lattice.hpp"

#include "toricdef/error.hpp"

#include <algorithm>
#include <sstream>

namespace toricdef {

namespace {

Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

Int gcd_int(const Int& a, const Int& b) {
    return boost::multiprecision::gcd(abs_int(a), abs_int(b));
}

} // namespace

Int floor_div(const Int& a, const Int& b) {
    if (b == 0) throw Error("floor_div by zero");
    Int q = a / b; // truncated
    if ((a % b) != 0 && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

Rat ratio(const Int& num, const Int& den) {
    if (den == 0) throw Error("zero denominator");
    if (den < 0) return Rat(-num, -den);
    return Rat(num, den);
}

Int rat_floor(const Rat& r) {
    return floor_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

Rat rat_frac(const Rat& r) { return r - Rat(rat_floor(r)); }

Vec Vec::zero(std::size_t dim) { return Vec(std::vector<Int>(dim, Int(0))); }

Vec Vec::unit(std::size_t dim, std::size_t i) {
    Vec v = zero(dim);
    v[i] = 1;
    return v;
}

bool Vec::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Int& x) { return x == 0; });
}

Int Vec::content() const {
    Int g = 0;
    for (const Int& x : c_) g = gcd_int(g, x);
    return g;
}

Vec Vec::operator-() const {
    Vec r = *this;
    for (Int& x : r.c_) x = -x;
    return r;
}

Vec operator+(const Vec& a, const Vec& b) {
    if (a.dim() != b.dim()) throw Error("vector dimension mismatch");
    Vec r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
}

Vec operator-(const Vec& a, const Vec& b) {
    if (a.dim() != b.dim()) throw Error("vector dimension mismatch");
    Vec r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
    return r;
}

Vec operator*(const Int& s, const Vec& v) {
    Vec r = v;
    for (Int& x : r.c_) x *= s;
    return r;
}

std::string Vec::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ", ";
        os << c_[i];
    }
    os << ")";
    return os.str();
}

Int dot(const Vec& a, const Vec& b) {
    if (a.dim() != b.dim()) throw Error("vector dimension mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

bool lex_less(const Vec& a, const Vec& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

Vec primitivize(const Vec& v) {
    Int g = v.content();
    if (g == 0) throw Error("primitivize of zero vector");
    if (g == 1) return v;
    Vec r = v;
    for (std::size_t i = 0; i < r.dim(); ++i) r[i] /= g;
    return r;
}

Vec canonical_primitive(const Vec& v) {
    Vec r = primitivize(v);
    for (std::size_t i = 0; i < r.dim(); ++i) {
        if (r[i] != 0) {
            if (r[i] < 0) r = -r;
            break;
        }
    }
    return r;
}

Mat::Mat(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    Mat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].dim() != cols) throw Error("row dimension mismatch");
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Mat Mat::from_cols(const std::vector<Vec>& cols, std::size_t rows) {
    Mat m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].dim() != rows) throw Error("column dimension mismatch");
        for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

Vec Mat::row(std::size_t i) const {
    std::vector<Int> c(cols_);
    for (std::size_t j = 0; j < cols_; ++j) c[j] = at(i, j);
    return Vec(std::move(c));
}

Vec Mat::col(std::size_t j) const {
    std::vector<Int> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return Vec(std::move(c));
}

std::vector<Vec> Mat::row_vectors() const {
    std::vector<Vec> r;
    r.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) r.push_back(row(i));
    return r;
}

Mat Mat::transposed() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw Error("matrix product dimension mismatch");
    Mat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return c;
}

Vec operator*(const Mat& a, const Vec& x) {
    if (a.cols() != x.dim()) throw Error("matrix-vector dimension mismatch");
    std::vector<Int> r(a.rows(), Int(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a.at(i, j) * x[j];
    return Vec(std::move(r));
}

bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

Int Mat::determinant() const {
    if (rows_ != cols_) throw Error("determinant of non-square matrix");
    std::size_t n = rows_;
    if (n == 0) return 1;
    Mat b = *this;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (b.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && b.at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(b.at(k, j), b.at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                b.at(i, j) = (b.at(i, j) * b.at(k, k) - b.at(i, k) * b.at(k, j)) / prev;
            b.at(i, k) = 0;
        }
        prev = b.at(k, k);
    }
    return sign * b.at(n - 1, n - 1);
}

std::size_t Mat::rank() const { return hermite_normal_form(*this).rows(); }

std::string Mat::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) os << "; ";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << " ";
            os << at(i, j);
        }
    }
    os << "]";
    return os.str();
}

Mat adjugate(const Mat& a) {
    if (a.rows() != a.cols()) throw Error("adjugate of non-square matrix");
    std::size_t n = a.rows();
    Mat adj(n, n);
    if (n == 0) return adj;
    if (n == 1) {
        adj.at(0, 0) = 1;
        return adj;
    }
    Mat minor(n - 1, n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t mi = 0;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == i) continue;
                std::size_t mj = 0;
                for (std::size_t c = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor.at(mi, mj) = a.at(r, c);
                    ++mj;
                }
                ++mi;
            }
            Int cof = minor.determinant();
            if ((i + j) % 2 == 1) cof = -cof;
            adj.at(j, i) = cof;
        }
    }
    return adj;
}

Mat inverse_unimodular(const Mat& u) {
    Int d = u.determinant();
    if (d != 1 && d != -1) throw Error("matrix is not unimodular");
    Mat adj = adjugate(u);
    if (d == -1) {
        for (std::size_t i = 0; i < adj.rows(); ++i)
            for (std::size_t j = 0; j < adj.cols(); ++j) adj.at(i, j) = -adj.at(i, j);
    }
    return adj;
}

std::vector<Int> SmithDecomposition::diagonal() const {
    std::size_t k = std::min(d.rows(), d.cols());
    std::vector<Int> diag(k);
    for (std::size_t i = 0; i < k; ++i) diag[i] = d.at(i, i);
    return diag;
}

namespace {

// Elementary operations applied simultaneously to the working matrix and the
// accumulated transform.

void swap_rows(Mat& m, std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

void swap_cols(Mat& m, std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

// row a += f * row b
void add_row(Mat& m, std::size_t a, std::size_t b, const Int& f) {
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(a, j) += f * m.at(b, j);
}

// col a += f * col b
void add_col(Mat& m, std::size_t a, std::size_t b, const Int& f) {
    for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, a) += f * m.at(i, b);
}

void negate_row(Mat& m, std::size_t a) {
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(a, j) = -m.at(a, j);
}

} // namespace

SmithDecomposition smith_normal_form(const Mat& a) {
    if (a.rows() == 0 || a.cols() == 0) throw Error("smith_normal_form of empty matrix");
    const std::size_t m = a.rows(), n = a.cols();
    Mat d = a, u = Mat::identity(m), v = Mat::identity(n);

    const std::size_t k = std::min(m, n);
    for (std::size_t t = 0; t < k; ++t) {
        bool exhausted = false;
        while (true) {
            // Pivot: smallest absolute value among nonzero entries of the
            // working submatrix, ties broken by lowest (row, col).
            std::size_t pr = m, pc = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (d.at(i, j) == 0) continue;
                    if (pr == m || abs_int(d.at(i, j)) < abs_int(d.at(pr, pc))) {
                        pr = i;
                        pc = j;
                    }
                }
            if (pr == m) {
                exhausted = true; // remaining submatrix is zero
                break;
            }
            if (pr != t) {
                swap_rows(d, t, pr);
                swap_rows(u, t, pr);
            }
            if (pc != t) {
                swap_cols(d, t, pc);
                swap_cols(v, t, pc);
            }

            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (d.at(i, t) == 0) continue;
                Int q = d.at(i, t) / d.at(t, t); // truncated: |remainder| < |pivot|
                if (q != 0) {
                    add_row(d, i, t, -q);
                    add_row(u, i, t, -q);
                }
                if (d.at(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (d.at(t, j) == 0) continue;
                Int q = d.at(t, j) / d.at(t, t);
                if (q != 0) {
                    add_col(d, j, t, -q);
                    add_col(v, j, t, -q);
                }
                if (d.at(t, j) != 0) dirty = true;
            }
            if (dirty) continue;

            // Row and column of the pivot are clear; enforce divisibility of
            // the remaining submatrix before accepting the pivot.
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < n && !fixed; ++j) {
                    if (d.at(i, j) % d.at(t, t) != 0) {
                        add_row(d, t, i, Int(1));
                        add_row(u, t, i, Int(1));
                        fixed = true;
                    }
                }
            if (!fixed) break;
        }
        if (exhausted) break;
        if (d.at(t, t) < 0) {
            negate_row(d, t);
            negate_row(u, t);
        }
    }
    return SmithDecomposition{std::move(u), std::move(d), std::move(v)};
}

Mat hermite_normal_form(const Mat& a) {
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<Vec> w = a.row_vectors();
    std::size_t r = 0;
    for (std::size_t j = 0; j < n && r < m; ++j) {
        while (true) {
            std::size_t pick = m;
            for (std::size_t i = r; i < m; ++i) {
                if (w[i][j] == 0) continue;
                if (pick == m || abs_int(w[i][j]) < abs_int(w[pick][j])) pick = i;
            }
            if (pick == m) break; // column clear below r
            std::swap(w[r], w[pick]);
            bool done = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (w[i][j] == 0) continue;
                Int q = w[i][j] / w[r][j];
                if (q != 0) w[i] = w[i] - q * w[r];
                if (w[i][j] != 0) done = false;
            }
            if (done) break;
        }
        if (w[r][j] != 0) {
            if (w[r][j] < 0) w[r] = -w[r];
            for (std::size_t i = 0; i < r; ++i) {
                Int q = floor_div(w[i][j], w[r][j]);
                if (q != 0) w[i] = w[i] - q * w[r];
            }
            ++r;
        }
    }
    return Mat::from_rows(std::vector<Vec>(w.begin(), w.begin() + r), n);
}

std::optional<Vec> solve_integral(const Mat& a, const Vec& b) {
    if (b.dim() != a.rows()) throw Error("solve_integral dimension mismatch");
    if (a.cols() == 0) {
        if (b.is_zero()) return Vec(std::vector<Int>{});
        return std::nullopt;
    }
    if (a.rows() == 0) return Vec::zero(a.cols());

    SmithDecomposition s = smith_normal_form(a);
    Vec c = s.u * b;
    Vec y = Vec::zero(a.cols());
    std::size_t k = std::min(a.rows(), a.cols());
    for (std::size_t i = 0; i < k; ++i) {
        const Int& di = s.d.at(i, i);
        if (di != 0) {
            if (c[i] % di != 0) return std::nullopt;
            y[i] = c[i] / di;
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    for (std::size_t i = k; i < a.rows(); ++i)
        if (c[i] != 0) return std::nullopt;
    return s.v * y;
}

std::vector<Vec> kernel_basis(const Mat& a) {
    if (a.cols() == 0) return {};
    if (a.rows() == 0) return Mat::identity(a.cols()).row_vectors();

    SmithDecomposition s = smith_normal_form(a);
    std::size_t k = std::min(a.rows(), a.cols());
    std::size_t rank = 0;
    for (std::size_t i = 0; i < k; ++i)
        if (s.d.at(i, i) != 0) ++rank;
    std::vector<Vec> raw;
    for (std::size_t j = rank; j < a.cols(); ++j) raw.push_back(s.v.col(j));
    if (raw.empty()) return {};
    return hermite_normal_form(Mat::from_rows(raw, a.cols())).row_vectors();
}

Mat saturated_span_basis(const std::vector<Vec>& vectors, std::size_t dim) {
    for (const Vec& v : vectors)
        if (v.dim() != dim) throw Error("span basis dimension mismatch");
    std::vector<Vec> perp = kernel_basis(Mat::from_rows(vectors, dim));
    std::vector<Vec> span = kernel_basis(Mat::from_rows(perp, dim));
    return Mat::from_rows(span, dim);
}

Vec coords_in_basis(const Mat& basis, const Vec& v) {
    if (v.dim() != basis.cols()) throw Error("coords_in_basis dimension mismatch");
    std::optional<Vec> z = solve_integral(basis.transposed(), v);
    if (!z) throw Error("vector not in sublattice");
    return *z;
}

} // namespace toricdef
