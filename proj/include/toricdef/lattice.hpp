#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace toricdef {

// All lattice arithmetic is exact.  Int is an arbitrary-precision integer and
// Rat an arbitrary-precision rational; no floating point appears anywhere in
// the computational kernels.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Floor division (round toward minus infinity).  b must be nonzero.
Int floor_div(const Int& a, const Int& b);

// num/den as a rational.  The denominator's sign is normalized first: this
// boost backend rejects negative denominators outright.
Rat ratio(const Int& num, const Int& den);

// Floor of a rational.
Int rat_floor(const Rat& r);

// Fractional part r - floor(r), in [0, 1).
Rat rat_frac(const Rat& r);

// A point of a lattice Z^d (or a functional on one; both are coordinate
// vectors and the pairing is dot()).
class Vec {
public:
    Vec() = default;
    explicit Vec(std::vector<Int> coords) : c_(std::move(coords)) {}
    Vec(std::initializer_list<Int> coords) : c_(coords) {}

    static Vec zero(std::size_t dim);
    static Vec unit(std::size_t dim, std::size_t i);

    std::size_t dim() const { return c_.size(); }
    const Int& operator[](std::size_t i) const { return c_[i]; }
    Int& operator[](std::size_t i) { return c_[i]; }
    const std::vector<Int>& coords() const { return c_; }

    bool is_zero() const;
    // gcd of the absolute values of the entries; 0 for the zero vector.
    Int content() const;
    bool is_primitive() const { return content() == 1; }

    Vec operator-() const;
    friend Vec operator+(const Vec& a, const Vec& b);
    friend Vec operator-(const Vec& a, const Vec& b);
    friend Vec operator*(const Int& s, const Vec& v);
    friend bool operator==(const Vec& a, const Vec& b) { return a.c_ == b.c_; }

    std::string str() const;

private:
    std::vector<Int> c_;
};

Int dot(const Vec& a, const Vec& b);

// Lexicographic order on coordinate sequences (shorter vectors first).
// This is the project-wide canonical order for rays, vertices and points.
bool lex_less(const Vec& a, const Vec& b);
struct VecLess {
    bool operator()(const Vec& a, const Vec& b) const { return lex_less(a, b); }
};
inline bool operator<(const Vec& a, const Vec& b) { return lex_less(a, b); }

// Divide by the content.  Keeps orientation.  Zero vector is rejected.
Vec primitivize(const Vec& v);

// Primitivize and flip sign so the first nonzero entry is positive.  Use only
// where a canonical representative of the line through v is wanted; input
// rays keep their user orientation.
Vec canonical_primitive(const Vec& v);

// Dense integer matrix, row major.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols);
    static Mat identity(std::size_t n);
    static Mat from_rows(const std::vector<Vec>& rows, std::size_t cols);
    static Mat from_cols(const std::vector<Vec>& cols, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;
    std::vector<Vec> row_vectors() const;
    Mat transposed() const;

    friend Mat operator*(const Mat& a, const Mat& b);
    friend Vec operator*(const Mat& a, const Vec& x);
    friend bool operator==(const Mat& a, const Mat& b);

    // Exact determinant (Bareiss fraction-free elimination).  Square only.
    Int determinant() const;
    std::size_t rank() const;

    std::string str() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

// Adjugate matrix: adj(A) * A = A * adj(A) = det(A) * I.  Square only.
Mat adjugate(const Mat& a);

// Inverse of a matrix with determinant +-1.  Errors otherwise.
Mat inverse_unimodular(const Mat& u);

// u * a * v = d with u, v unimodular and d diagonal, nonnegative, each
// diagonal entry dividing the next.
struct SmithDecomposition {
    Mat u, d, v;
    std::vector<Int> diagonal() const;
};

// Smith normal form.  Total on nonempty matrices.  Pivot selection: smallest
// absolute value among nonzero candidates of the working submatrix, ties
// broken by lowest (row, col).
SmithDecomposition smith_normal_form(const Mat& a);

// Row-style Hermite normal form of the row lattice of a: echelon rows with
// positive pivots and entries above each pivot reduced into [0, pivot).
// Returns only the nonzero rows (rank many).  Canonical per row lattice.
Mat hermite_normal_form(const Mat& a);

// One integral solution x of a x = b, if any.
std::optional<Vec> solve_integral(const Mat& a, const Vec& b);

// Basis of the saturated integer kernel {x : a x = 0}, returned as the
// Hermite normal form rows of the kernel lattice (deterministic canonical
// basis).  Every integral kernel element is an integral combination.
std::vector<Vec> kernel_basis(const Mat& a);

// Basis (HNF rows) of the saturated lattice span_Q(vectors) intersect Z^dim.
Mat saturated_span_basis(const std::vector<Vec>& vectors, std::size_t dim);

// Coordinates of v in the rows of basis (a saturated-lattice basis); errors
// if v is not in the basis's lattice.
Vec coords_in_basis(const Mat& basis, const Vec& v);

} // namespace toricdef
