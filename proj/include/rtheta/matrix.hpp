#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace rtheta {

using cplx = std::complex<double>;

// Dense row-major matrices, sized once.  Small (g <= 10 or so) throughout,
// so no effort is spent on blocking or views.
template <typename T>
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = static_cast<int>(init.size());
        cols_ = rows_ ? static_cast<int>(init.begin()->size()) : 0;
        data_.reserve(static_cast<size_t>(rows_) * cols_);
        for (const auto& row : init)
            for (const auto& v : row) data_.push_back(v);
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    Matrix transposed() const {
        Matrix m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    Matrix operator*(const Matrix& o) const {
        Matrix m(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                T a = (*this)(i, k);
                if (a == T{}) continue;
                for (int j = 0; j < o.cols_; ++j) m(i, j) += a * o(k, j);
            }
        return m;
    }

    Matrix operator+(const Matrix& o) const {
        Matrix m(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] + o.data_[i];
        return m;
    }

    Matrix operator-(const Matrix& o) const {
        Matrix m(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] - o.data_[i];
        return m;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        std::vector<T> out(rows_, T{});
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    const std::vector<T>& data() const { return data_; }
    std::vector<T>& data() { return data_; }

  private:
    int rows_, cols_;
    std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<cplx>;
using IntMatrix = Matrix<long long>;

RealMatrix to_real(const IntMatrix& m);
ComplexMatrix to_complex(const RealMatrix& re, const RealMatrix& im);
RealMatrix real_part(const ComplexMatrix& m);
RealMatrix imag_part(const ComplexMatrix& m);

// Exact determinant of an integer matrix (Bareiss fraction-free elimination).
// Overflow-checked via __int128 intermediates; throws Error on overflow.
long long det_exact(const IntMatrix& m);

// Exact inverse of a unimodular integer matrix (det = +-1).
// Throws SingularTransform if |det| != 1.
IntMatrix unimodular_inverse(const IntMatrix& m);

}  // namespace rtheta
