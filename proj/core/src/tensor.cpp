#include "orthoshot/tensor.hpp"

#include <cmath>
#include <string>

namespace orthoshot {

Tensor4 transpose01(const Tensor4& t) {
    Tensor4 out(t.dims[1], t.dims[0], t.dims[2], t.dims[3]);
    for (std::size_t i = 0; i < t.dims[0]; ++i)
        for (std::size_t j = 0; j < t.dims[1]; ++j)
            for (std::size_t u = 0; u < t.dims[2]; ++u)
                for (std::size_t v = 0; v < t.dims[3]; ++v)
                    out.at(j, i, u, v) = t.at(i, j, u, v);
    return out;
}

Tensor4 random_normal(std::size_t d0, std::size_t d1, std::size_t d2, std::size_t d3,
                      std::mt19937_64& rng, double scale) {
    Tensor4 t(d0, d1, d2, d3);
    std::normal_distribution<double> dist(0.0, scale);
    for (double& v : t.data) v = dist(rng);
    return t;
}

void ensure_finite(const Tensor4& t, const char* what) {
    for (double v : t.data)
        if (!std::isfinite(v))
            throw NumericError(std::string("non-finite value in ") + what);
}

double frobenius_sq(const Tensor4& t) {
    double s = 0.0;
    for (double v : t.data) s += v * v;
    return s;
}

double dot(const Tensor4& a, const Tensor4& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) s += a.data[i] * b.data[i];
    return s;
}

double max_abs_diff(const Tensor4& a, const Tensor4& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i)
        m = std::max(m, std::abs(a.data[i] - b.data[i]));
    return m;
}

std::size_t conv_out_dim(std::size_t in, std::size_t k, const ConvGeometry& g) {
    if (g.stride == 0) throw GeometryError("stride must be >= 1");
    std::size_t padded = in + 2 * g.pad;
    if (padded < k) throw GeometryError("kernel larger than padded input");
    std::size_t span = padded - k;
    if (span % g.stride != 0)
        throw GeometryError("(H + 2P - k) not divisible by stride");
    return span / g.stride + 1;
}

static void check_conv_shapes(const Tensor4& x, const Tensor4& k) {
    if (x.dims[1] != k.dims[1])
        throw GeometryError("conv2d: channel mismatch between input and kernel");
    if (k.dims[2] == 0 || k.dims[3] == 0 || k.dims[2] != k.dims[3])
        throw GeometryError("conv2d: kernel must be square and nonempty");
}

Tensor4 conv2d(const Tensor4& x, const Tensor4& k, const ConvGeometry& g) {
    check_conv_shapes(x, k);
    ensure_finite(x, "conv2d input");
    ensure_finite(k, "conv2d kernel");

    const std::size_t B = x.dims[0], C = x.dims[1], H = x.dims[2], W = x.dims[3];
    const std::size_t N = k.dims[0], kk = k.dims[2];
    const std::size_t Ho = conv_out_dim(H, kk, g);
    const std::size_t Wo = conv_out_dim(W, kk, g);
    const long P = static_cast<long>(g.pad), S = static_cast<long>(g.stride);

    Tensor4 y(B, N, Ho, Wo);
    for (std::size_t b = 0; b < B; ++b)
        for (std::size_t n = 0; n < N; ++n)
            for (std::size_t i = 0; i < Ho; ++i)
                for (std::size_t j = 0; j < Wo; ++j) {
                    double acc = 0.0;
                    for (std::size_t c = 0; c < C; ++c)
                        for (std::size_t u = 0; u < kk; ++u) {
                            const long h = static_cast<long>(i) * S + static_cast<long>(u) - P;
                            if (h < 0 || h >= static_cast<long>(H)) continue;
                            for (std::size_t v = 0; v < kk; ++v) {
                                const long w = static_cast<long>(j) * S + static_cast<long>(v) - P;
                                if (w < 0 || w >= static_cast<long>(W)) continue;
                                acc += x.at(b, c, h, w) * k.at(n, c, u, v);
                            }
                        }
                    y.at(b, n, i, j) = acc;
                }
    return y;
}

ConvGrads conv2d_grads(const Tensor4& x, const Tensor4& k, const ConvGeometry& g,
                       const Tensor4& dy) {
    check_conv_shapes(x, k);
    const std::size_t B = x.dims[0], C = x.dims[1], H = x.dims[2], W = x.dims[3];
    const std::size_t N = k.dims[0], kk = k.dims[2];
    const std::size_t Ho = conv_out_dim(H, kk, g);
    const std::size_t Wo = conv_out_dim(W, kk, g);
    if (dy.dims != std::array<std::size_t, 4>{B, N, Ho, Wo})
        throw GeometryError("conv2d_grads: dY shape does not match forward output");
    const long P = static_cast<long>(g.pad), S = static_cast<long>(g.stride);

    ConvGrads out{Tensor4(B, C, H, W), Tensor4(N, C, kk, kk)};
    for (std::size_t b = 0; b < B; ++b)
        for (std::size_t n = 0; n < N; ++n)
            for (std::size_t i = 0; i < Ho; ++i)
                for (std::size_t j = 0; j < Wo; ++j) {
                    const double dyv = dy.at(b, n, i, j);
                    if (dyv == 0.0) continue;
                    for (std::size_t c = 0; c < C; ++c)
                        for (std::size_t u = 0; u < kk; ++u) {
                            const long h = static_cast<long>(i) * S + static_cast<long>(u) - P;
                            if (h < 0 || h >= static_cast<long>(H)) continue;
                            for (std::size_t v = 0; v < kk; ++v) {
                                const long w = static_cast<long>(j) * S + static_cast<long>(v) - P;
                                if (w < 0 || w >= static_cast<long>(W)) continue;
                                out.dk.at(n, c, u, v) += dyv * x.at(b, c, h, w);
                                out.dx.at(b, c, h, w) += dyv * k.at(n, c, u, v);
                            }
                        }
                }
    return out;
}

}  // namespace orthoshot
