#include "orthoshot/ortho.hpp"

#include <cmath>

namespace orthoshot {

static void check_self_conv_geometry(const Tensor4& kernel, const ConvGeometry& g) {
    if (kernel.dims[2] != kernel.dims[3])
        throw GeometryError("self_conv: kernel must be square");
    if ((2 * g.pad) % g.stride != 0)
        throw GeometryError("self_conv: 2P must be divisible by S (center would be ambiguous)");
}

Tensor4 self_conv(const Tensor4& kernel, const ConvGeometry& g) {
    check_self_conv_geometry(kernel, g);
    // The kernel is both the batch ([N,C,k,k] treated as N inputs) and the
    // filter bank, so the output is N x N x q x q.
    return conv2d(kernel, kernel, g);
}

Tensor4 identity_target(std::size_t n, const ConvGeometry& g) {
    const std::size_t q = 2 * g.pad / g.stride + 1;
    Tensor4 t(n, n, q, q);
    const std::size_t c = g.pad / g.stride;
    for (std::size_t i = 0; i < n; ++i) t.at(i, i, c, c) = 1.0;
    return t;
}

ConvGeometry full_overlap_geometry(std::size_t k) {
    return ConvGeometry{k - 1, 1};
}

double row_ortho_cost(const Tensor4& kernel, const ConvGeometry& g) {
    Tensor4 r = self_conv(kernel, g);
    const Tensor4 target = identity_target(kernel.dims[0], g);
    for (std::size_t i = 0; i < r.data.size(); ++i) r.data[i] -= target.data[i];
    return frobenius_sq(r);
}

double ortho_loss(const Tensor4& kernel, const ConvGeometry& g, double lambda) {
    if (lambda < 0.0) throw GeometryError("ortho_loss: lambda must be >= 0");
    return lambda * row_ortho_cost(kernel, g);
}

Tensor4 ortho_loss_grad(const Tensor4& kernel, const ConvGeometry& g, double lambda) {
    if (lambda < 0.0) throw GeometryError("ortho_loss_grad: lambda must be >= 0");
    check_self_conv_geometry(kernel, g);
    Tensor4 residual = conv2d(kernel, kernel, g);
    const Tensor4 target = identity_target(kernel.dims[0], g);
    for (std::size_t i = 0; i < residual.data.size(); ++i) {
        residual.data[i] = 2.0 * lambda * (residual.data[i] - target.data[i]);
    }
    // d/dK of <R, conv2d(K, K)> splits into the input-side and filter-side
    // adjoints evaluated at the same point.
    ConvGrads grads = conv2d_grads(kernel, kernel, g, residual);
    Tensor4 out = grads.dx;
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += grads.dk.data[i];
    return out;
}

double column_ortho_loss(const Tensor4& kernel) {
    const Tensor4 kt = transpose01(kernel);
    return row_ortho_cost(kt, full_overlap_geometry(kt.dims[2]));
}

Tensor4 column_ortho_loss_grad(const Tensor4& kernel, double lambda) {
    const Tensor4 kt = transpose01(kernel);
    Tensor4 g = ortho_loss_grad(kt, full_overlap_geometry(kt.dims[2]), lambda);
    return transpose01(g);
}

Lemma1Gap lemma1_gap(const std::vector<Tensor4>& kernels, const ConvGeometry& g) {
    if (kernels.size() < 2)
        throw GeometryError("lemma1_gap: need at least 2 kernels");
    for (const auto& k : kernels)
        if (!k.same_shape(kernels.front()))
            throw GeometryError("lemma1_gap: kernels must share one shape");

    std::vector<double> gaps;
    gaps.reserve(kernels.size());
    for (const auto& k : kernels)
        gaps.push_back(row_ortho_cost(k, g) - column_ortho_loss(k));

    Lemma1Gap out;
    for (double v : gaps) out.mean_gap += v;
    out.mean_gap /= static_cast<double>(gaps.size());
    for (double v : gaps)
        out.max_deviation = std::max(out.max_deviation, std::abs(v - out.mean_gap));
    return out;
}

}  // namespace orthoshot
