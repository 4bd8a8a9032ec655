#pragma once

#include <cstddef>
#include <vector>

namespace orthoshot {

// T[i,j] = first_col[i-j] for i >= j, first_row[j-i] for j > i.
// The two generators fully determine the (m x n) matrix; O(m+n) storage.
struct ToeplitzSpec {
    std::vector<double> first_col;  // length m
    std::vector<double> first_row;  // length n, first_row[0] == first_col[0]

    std::size_t rows() const { return first_col.size(); }
    std::size_t cols() const { return first_row.size(); }
    double entry(std::size_t i, std::size_t j) const {
        return i >= j ? first_col[i - j] : first_row[j - i];
    }

    static ToeplitzSpec identity(std::size_t n);
    static ToeplitzSpec symmetric(std::vector<double> col);
};

void validate(const ToeplitzSpec& t);

// Reference O(m*n) product.
std::vector<double> toeplitz_matvec_dense(const ToeplitzSpec& t, const std::vector<double>& x);

// Circulant embedding of length next_pow2(m+n-1) + one FFT round trip,
// O((m+n) log(m+n)).
std::vector<double> toeplitz_matvec_fast(const ToeplitzSpec& t, const std::vector<double>& x);

// Sample covariance of the feature vectors projected (Frobenius-nearest) onto
// the symmetric Toeplitz matrices: every diagonal is replaced by its mean.
// Needs >= 2 samples. Returns a symmetric spec storing O(n) parameters.
ToeplitzSpec toeplitz_covariance(const std::vector<std::vector<double>>& samples);

}  // namespace orthoshot
