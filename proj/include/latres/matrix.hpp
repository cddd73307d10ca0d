// Dense row-major matrix container shared by the integer and field layers.
#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace latres {

template <class T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols, const T& fill = T())
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}
    Mat(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        a_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            for (const auto& x : row) a_.push_back(x);
        }
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Mat&) const = default;

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }
    std::vector<T> col(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    void set_col(std::size_t j, const std::vector<T>& c) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    // keep the listed rows, all columns
    Mat select_rows(const std::vector<std::size_t>& idx) const {
        Mat s(idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < cols_; ++j) s(i, j) = (*this)(idx[i], j);
        return s;
    }
    Mat select_cols(const std::vector<std::size_t>& idx) const {
        Mat s(rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) s(i, j) = (*this)(i, idx[j]);
        return s;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> a_;
};

template <class T>
Mat<T> mat_mul(const Mat<T>& a, const Mat<T>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: shape mismatch");
    Mat<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T& aik = a(i, k);
            if (aik == T()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

template <class T>
std::vector<T> mat_vec(const Mat<T>& a, const std::vector<T>& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("mat_vec: shape mismatch");
    std::vector<T> y(a.rows(), T());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

}  // namespace latres
