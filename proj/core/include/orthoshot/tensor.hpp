#pragma once

#include <array>
#include <cstddef>
#include <random>
#include <vector>

#include "orthoshot/errors.hpp"

namespace orthoshot {

// Dense row-major 4-axis tensor of doubles. Axis meaning is contextual:
// activations are [batch, channel, height, width], kernels are
// [filters, channels, kh, kw].
struct Tensor4 {
    std::array<std::size_t, 4> dims{0, 0, 0, 0};
    std::vector<double> data;

    Tensor4() = default;
    Tensor4(std::size_t d0, std::size_t d1, std::size_t d2, std::size_t d3)
        : dims{d0, d1, d2, d3}, data(d0 * d1 * d2 * d3, 0.0) {}

    std::size_t size() const { return data.size(); }

    std::size_t index(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
        return ((i * dims[1] + j) * dims[2] + k) * dims[3] + l;
    }
    double& at(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
        return data[index(i, j, k, l)];
    }
    double at(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
        return data[index(i, j, k, l)];
    }

    bool same_shape(const Tensor4& o) const { return dims == o.dims; }
};

// Swap the first two axes: kernels [N,C,k,k] <-> [C,N,k,k].
Tensor4 transpose01(const Tensor4& t);

Tensor4 random_normal(std::size_t d0, std::size_t d1, std::size_t d2, std::size_t d3,
                      std::mt19937_64& rng, double scale = 1.0);

// Throws NumericError if any entry is NaN/Inf.
void ensure_finite(const Tensor4& t, const char* what);

double frobenius_sq(const Tensor4& t);
double dot(const Tensor4& a, const Tensor4& b);
double max_abs_diff(const Tensor4& a, const Tensor4& b);

// Zero-padding convolution geometry. The output size (H + 2*pad - k)/stride + 1
// must divide exactly; floor-truncating geometries are rejected so the dense
// lowering and the direct convolution can never disagree on shapes.
struct ConvGeometry {
    std::size_t pad = 0;
    std::size_t stride = 1;
};

// Validated output extent for one spatial axis; throws GeometryError.
std::size_t conv_out_dim(std::size_t in, std::size_t k, const ConvGeometry& g);

// Cross-correlation (the usual deep-learning "convolution", no kernel flip):
//   Y[b,n,i,j] = sum_{c,u,v} X[b,c, i*S+u-P, j*S+v-P] * K[n,c,u,v]
// with zero padding outside the input.
Tensor4 conv2d(const Tensor4& x, const Tensor4& k, const ConvGeometry& g);

struct ConvGrads {
    Tensor4 dx;
    Tensor4 dk;
};

// Exact adjoints of conv2d under the Frobenius inner product:
//   <conv2d(X,K), dY> == <X, dX> == <K, dK>.
ConvGrads conv2d_grads(const Tensor4& x, const Tensor4& k, const ConvGeometry& g,
                       const Tensor4& dy);

}  // namespace orthoshot
