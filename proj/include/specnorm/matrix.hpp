#ifndef SPECNORM_MATRIX_HPP
#define SPECNORM_MATRIX_HPP

#include <cstddef>
#include <vector>
#include <cmath>
#include <stdexcept>
#include <string>

namespace specnorm {

// Dense row-major matrix of doubles.  Operators on graphs are |G| x |G|
// symmetric kernels K(x,y); this type is shared by all modules.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    double* row(std::size_t i) { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const { return data_.data() + i * cols_; }

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(double s);

    Matrix transposed() const;

    double max_abs() const;
    double max_abs_diff(const Matrix& o) const;
    bool symmetric(double tol) const;

private:
    std::size_t rows_, cols_;
    std::vector<double> data_;
};

// OpenMP-parallel product.  Accumulation order per entry is fixed, so the
// result is bitwise independent of the thread count.
Matrix matmul(const Matrix& a, const Matrix& b);

// Serial reference used by tests and the kernel benchmark.
Matrix matmul_serial(const Matrix& a, const Matrix& b);

std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& v);

}  // namespace specnorm

#endif
