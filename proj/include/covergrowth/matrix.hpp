#pragma once

#include "covergrowth/ring.hpp"

#include <string>
#include <vector>

namespace covergrowth {

template <EuclideanRingSpec Ring>
class RingMatrix {
public:
    using Elem = typename Ring::Elem;

    RingMatrix() : rows_(0), cols_(0) {}

    RingMatrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Ring::zero()) {}

    static RingMatrix identity(size_t n) {
        RingMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = Ring::one();
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Elem& at(size_t i, size_t j) { return entries_[i * cols_ + j]; }
    const Elem& at(size_t i, size_t j) const { return entries_[i * cols_ + j]; }

    bool is_zero() const {
        for (const Elem& e : entries_)
            if (!Ring::is_zero(e)) return false;
        return true;
    }

    std::vector<Elem> column(size_t j) const {
        std::vector<Elem> out;
        out.reserve(rows_);
        for (size_t i = 0; i < rows_; ++i) out.push_back(at(i, j));
        return out;
    }

    void swap_rows(size_t a, size_t b) {
        if (a == b) return;
        for (size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
    }

    void swap_cols(size_t a, size_t b) {
        if (a == b) return;
        for (size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
    }

    // row[dst] += c * row[src]
    void add_row_multiple(size_t dst, size_t src, const Elem& c) {
        for (size_t j = 0; j < cols_; ++j)
            at(dst, j) = Ring::add(at(dst, j), Ring::mul(c, at(src, j)));
    }

    // col[dst] += c * col[src]
    void add_col_multiple(size_t dst, size_t src, const Elem& c) {
        for (size_t i = 0; i < rows_; ++i)
            at(i, dst) = Ring::add(at(i, dst), Ring::mul(c, at(i, src)));
    }

    void scale_row(size_t i, const Elem& c) {
        for (size_t j = 0; j < cols_; ++j) at(i, j) = Ring::mul(c, at(i, j));
    }

    friend bool operator==(const RingMatrix& a, const RingMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (size_t k = 0; k < a.entries_.size(); ++k)
            if (!Ring::is_zero(Ring::sub(a.entries_[k], b.entries_[k]))) return false;
        return true;
    }

private:
    size_t rows_, cols_;
    std::vector<Elem> entries_;
};

template <EuclideanRingSpec Ring>
RingMatrix<Ring> operator*(const RingMatrix<Ring>& a, const RingMatrix<Ring>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
    RingMatrix<Ring> r(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k) {
            if (Ring::is_zero(a.at(i, k))) continue;
            for (size_t j = 0; j < b.cols(); ++j)
                r.at(i, j) = Ring::add(r.at(i, j), Ring::mul(a.at(i, k), b.at(k, j)));
        }
    return r;
}

template <EuclideanRingSpec Ring>
std::vector<typename Ring::Elem> operator*(const RingMatrix<Ring>& m,
                                           const std::vector<typename Ring::Elem>& v) {
    if (m.cols() != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<typename Ring::Elem> r(m.rows(), Ring::zero());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            r[i] = Ring::add(r[i], Ring::mul(m.at(i, j), v[j]));
    return r;
}

// Expansion along rows with memoization over column subsets; exact over any
// commutative ring, usable up to ~20x20.
template <EuclideanRingSpec Ring>
typename Ring::Elem determinant(const RingMatrix<Ring>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    size_t n = m.rows();
    if (n == 0) return Ring::one();
    if (n > 20) throw std::invalid_argument("determinant: matrix too large");
    std::vector<typename Ring::Elem> minor(1u << n, Ring::zero());
    minor[0] = Ring::one();
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        size_t row = (size_t)__builtin_popcount(mask) - 1;
        typename Ring::Elem acc = Ring::zero();
        int parity = 0;
        for (size_t j = 0; j < n; ++j) {
            if (!(mask & (1u << j))) continue;
            typename Ring::Elem term = Ring::mul(m.at(row, j), minor[mask & ~(1u << j)]);
            acc = Ring::add(acc, (parity % 2 == 0) ? term : Ring::negate(term));
            ++parity;
        }
        minor[mask] = acc;
    }
    return minor[(1u << n) - 1];
}

template <EuclideanRingSpec Ring>
std::string to_string(const RingMatrix<Ring>& m) {
    std::string out = "[";
    for (size_t i = 0; i < m.rows(); ++i) {
        out += i == 0 ? "[" : " [";
        for (size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ", ";
            out += Ring::to_string(m.at(i, j));
        }
        out += "]";
        if (i + 1 < m.rows()) out += "\n";
    }
    return out + "]";
}

} // namespace covergrowth
