#include "orthoshot/toeplitz.hpp"

#include <cmath>
#include <cstdlib>

#include "orthoshot/errors.hpp"
#include "orthoshot/fft.hpp"

namespace orthoshot {

ToeplitzSpec ToeplitzSpec::identity(std::size_t n) {
    ToeplitzSpec t;
    t.first_col.assign(n, 0.0);
    t.first_row.assign(n, 0.0);
    if (n > 0) t.first_col[0] = t.first_row[0] = 1.0;
    return t;
}

ToeplitzSpec ToeplitzSpec::symmetric(std::vector<double> col) {
    ToeplitzSpec t;
    t.first_row = col;
    t.first_col = std::move(col);
    return t;
}

void validate(const ToeplitzSpec& t) {
    if (t.first_col.empty() || t.first_row.empty())
        throw GeometryError("ToeplitzSpec: empty generator");
    if (t.first_col[0] != t.first_row[0])
        throw GeometryError("ToeplitzSpec: first_col[0] != first_row[0]");
}

std::vector<double> toeplitz_matvec_dense(const ToeplitzSpec& t, const std::vector<double>& x) {
    validate(t);
    const std::size_t m = t.rows(), n = t.cols();
    if (x.size() != n) throw GeometryError("toeplitz_matvec_dense: dimension mismatch");
    std::vector<double> y(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += t.entry(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

std::vector<double> toeplitz_matvec_fast(const ToeplitzSpec& t, const std::vector<double>& x) {
    validate(t);
    const std::size_t m = t.rows(), n = t.cols();
    if (x.size() != n) throw GeometryError("toeplitz_matvec_fast: dimension mismatch");

    // Circulant generator g with g[d mod L] = T[i,j] for d = i-j. L >= m+n-1
    // keeps the positive-shift and negative-shift bands from colliding.
    const std::size_t L = next_pow2(m + n - 1);
    std::vector<double> gen(L, 0.0), xp(L, 0.0);
    for (std::size_t d = 0; d < m; ++d) gen[d] = t.first_col[d];
    for (std::size_t d = 1; d < n; ++d) gen[L - d] = t.first_row[d];
    for (std::size_t j = 0; j < n; ++j) xp[j] = x[j];

    std::vector<double> full = circular_convolve_fft(xp, gen);
    full.resize(m);
    return full;
}

ToeplitzSpec toeplitz_covariance(const std::vector<std::vector<double>>& samples) {
    if (samples.size() < 2)
        throw GeometryError("toeplitz_covariance: need at least 2 samples");
    const std::size_t n = samples[0].size();
    for (const auto& s : samples)
        if (s.size() != n) throw GeometryError("toeplitz_covariance: ragged samples");

    std::vector<double> mean(n, 0.0);
    for (const auto& s : samples)
        for (std::size_t i = 0; i < n; ++i) mean[i] += s[i];
    for (double& v : mean) v /= static_cast<double>(samples.size());

    // Sample covariance (n-1 normalization), accumulated per diagonal only:
    // the Frobenius projection onto symmetric Toeplitz matrices is the mean
    // over each |i-j| = d diagonal, so the full matrix never materializes.
    std::vector<double> diag_sum(n, 0.0);
    std::vector<double> diag_cnt(n, 0.0);
    const double denom = static_cast<double>(samples.size() - 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double cij = 0.0;
            for (const auto& s : samples) cij += (s[i] - mean[i]) * (s[j] - mean[j]);
            cij /= denom;
            const std::size_t d = j - i;
            // off-diagonals appear twice in the symmetric matrix
            const double w = d == 0 ? 1.0 : 2.0;
            diag_sum[d] += w * cij;
            diag_cnt[d] += w;
        }
    }
    std::vector<double> col(n, 0.0);
    for (std::size_t d = 0; d < n; ++d) col[d] = diag_sum[d] / diag_cnt[d];
    return ToeplitzSpec::symmetric(std::move(col));
}

}  // namespace orthoshot
