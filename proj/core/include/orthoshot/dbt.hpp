#pragma once

#include <cstddef>
#include <vector>

#include "orthoshot/tensor.hpp"

namespace orthoshot {

// Input dims for a single convolution layer (batch of 1).
struct InputDims {
    std::size_t channels = 0;
    std::size_t height = 0;
    std::size_t width = 0;
};

// Explicit dense doubly-block-Toeplitz lowering M of a convolution:
// M * flatten(X) == flatten(conv2d(X, K, g)) for every admissible X.
// Kept dense on purpose; it is the desk-scale ground-truth oracle for the
// structured paths, not a production representation.
struct DbtMatrix {
    std::size_t rows = 0;  // N * H' * W'
    std::size_t cols = 0;  // C * H * W
    std::vector<double> m;  // row-major

    // provenance
    std::array<std::size_t, 4> kernel_dims{};
    InputDims input{};
    ConvGeometry geom{};

    double at(std::size_t r, std::size_t c) const { return m[r * cols + c]; }
    double& at(std::size_t r, std::size_t c) { return m[r * cols + c]; }
};

// Channel-major flattening: index = c*H*W + h*W + w. Requires batch size 1.
std::vector<double> flatten_input(const Tensor4& x);
Tensor4 unflatten_output(const std::vector<double>& y, std::size_t n, std::size_t ho,
                         std::size_t wo);

// Row (n,h',w') of M holds filter n placed at spatial offset (h'S-P, w'S-P).
DbtMatrix build_dbt(const Tensor4& kernel, const InputDims& in, const ConvGeometry& g);

std::vector<double> dbt_matvec(const DbtMatrix& m, const std::vector<double>& x);

// M * M^T as a dense (rows x rows) row-major matrix.
std::vector<double> dbt_gram_rows(const DbtMatrix& m);

}  // namespace orthoshot
