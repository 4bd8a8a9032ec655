#include "orthoshot/dbt.hpp"

namespace orthoshot {

std::vector<double> flatten_input(const Tensor4& x) {
    if (x.dims[0] != 1) throw GeometryError("flatten_input: batch size must be 1");
    // Tensor4 is row-major over (1,C,H,W), so the layout already matches
    // c*H*W + h*W + w.
    return x.data;
}

Tensor4 unflatten_output(const std::vector<double>& y, std::size_t n, std::size_t ho,
                         std::size_t wo) {
    if (y.size() != n * ho * wo) throw GeometryError("unflatten_output: size mismatch");
    Tensor4 t(1, n, ho, wo);
    t.data = y;
    return t;
}

DbtMatrix build_dbt(const Tensor4& kernel, const InputDims& in, const ConvGeometry& g) {
    const std::size_t N = kernel.dims[0], C = kernel.dims[1], k = kernel.dims[2];
    if (C != in.channels) throw GeometryError("build_dbt: channel mismatch");
    const std::size_t Ho = conv_out_dim(in.height, k, g);
    const std::size_t Wo = conv_out_dim(in.width, k, g);

    DbtMatrix M;
    M.rows = N * Ho * Wo;
    M.cols = C * in.height * in.width;
    M.m.assign(M.rows * M.cols, 0.0);
    M.kernel_dims = kernel.dims;
    M.input = in;
    M.geom = g;

    const long P = static_cast<long>(g.pad), S = static_cast<long>(g.stride);
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t ho = 0; ho < Ho; ++ho)
            for (std::size_t wo = 0; wo < Wo; ++wo) {
                const std::size_t row = (n * Ho + ho) * Wo + wo;
                const long h0 = static_cast<long>(ho) * S - P;
                const long w0 = static_cast<long>(wo) * S - P;
                for (std::size_t c = 0; c < C; ++c)
                    for (std::size_t u = 0; u < k; ++u) {
                        const long h = h0 + static_cast<long>(u);
                        if (h < 0 || h >= static_cast<long>(in.height)) continue;
                        for (std::size_t v = 0; v < k; ++v) {
                            const long w = w0 + static_cast<long>(v);
                            if (w < 0 || w >= static_cast<long>(in.width)) continue;
                            const std::size_t col =
                                (c * in.height + static_cast<std::size_t>(h)) * in.width +
                                static_cast<std::size_t>(w);
                            M.at(row, col) = kernel.at(n, c, u, v);
                        }
                    }
            }
    return M;
}

std::vector<double> dbt_matvec(const DbtMatrix& m, const std::vector<double>& x) {
    if (x.size() != m.cols) throw GeometryError("dbt_matvec: dimension mismatch");
    std::vector<double> y(m.rows, 0.0);
    for (std::size_t r = 0; r < m.rows; ++r) {
        double acc = 0.0;
        const double* row = m.m.data() + r * m.cols;
        for (std::size_t c = 0; c < m.cols; ++c) acc += row[c] * x[c];
        y[r] = acc;
    }
    return y;
}

std::vector<double> dbt_gram_rows(const DbtMatrix& m) {
    std::vector<double> g(m.rows * m.rows, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = i; j < m.rows; ++j) {
            double acc = 0.0;
            const double* ri = m.m.data() + i * m.cols;
            const double* rj = m.m.data() + j * m.cols;
            for (std::size_t c = 0; c < m.cols; ++c) acc += ri[c] * rj[c];
            g[i * m.rows + j] = acc;
            g[j * m.rows + i] = acc;
        }
    return g;
}

}  // namespace orthoshot
