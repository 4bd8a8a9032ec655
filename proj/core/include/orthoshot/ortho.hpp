#pragma once

#include <cstddef>
#include <vector>

#include "orthoshot/tensor.hpp"

namespace orthoshot {

// Self-convolution of a kernel bank with itself (the bank acts as both the
// batch of inputs and the filters). Entry [i,j,u,v] is the inner product of
// filter i with filter j shifted by ((u - P/S)*S, (v - P/S)*S). Result dims
// are N x N x q x q with q = 2P/S + 1, which requires 2P divisible by S.
Tensor4 self_conv(const Tensor4& kernel, const ConvGeometry& g);

// Identity-at-center target: [i,j,c,c] = (i==j), zeros elsewhere, with
// c = P/S. Exactly `n` nonzero entries.
Tensor4 identity_target(std::size_t n, const ConvGeometry& g);

// Geometry capturing every overlapping shift of a k x k kernel: P = k-1, S=1.
ConvGeometry full_overlap_geometry(std::size_t k);

// Row-orthogonality penalty: lambda * ||self_conv(K,g) - I_r0||_F^2.
// Zero exactly when the rows of the DBT lowering are orthonormal.
double ortho_loss(const Tensor4& kernel, const ConvGeometry& g, double lambda);

// Exact gradient of ortho_loss w.r.t. the kernel (self_conv is bilinear in
// (K, K), so the gradient is the sum of both conv adjoints applied to the
// residual).
Tensor4 ortho_loss_grad(const Tensor4& kernel, const ConvGeometry& g, double lambda);

// Column-orthogonality penalty on the axes-swapped kernel:
// ||self_conv(K^T, P=k-1, S=1) - I_c0||_F^2 (unweighted).
double column_ortho_loss(const Tensor4& kernel);
Tensor4 column_ortho_loss_grad(const Tensor4& kernel, double lambda);

// Unweighted row cost at the given geometry; helper shared with lemma1_gap.
double row_ortho_cost(const Tensor4& kernel, const ConvGeometry& g);

struct Lemma1Gap {
    double mean_gap = 0.0;
    double max_deviation = 0.0;  // max |gap_i - mean|
};

// row_cost(K_i, g) - column_cost(K_i) over a set of same-shape kernels.
// At full-overlap geometry the gap is a shape constant (N - C), so the
// deviation is ~0 regardless of the kernel values.
Lemma1Gap lemma1_gap(const std::vector<Tensor4>& kernels, const ConvGeometry& g);

}  // namespace orthoshot
