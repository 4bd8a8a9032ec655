#include "orthoshot/fft.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "orthoshot/errors.hpp"

namespace orthoshot {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft_inplace(std::vector<std::complex<double>>& a, bool invert) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw GeometryError("fft_inplace: length must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (invert ? -1.0 : 1.0);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (invert)
        for (auto& x : a) x /= static_cast<double>(n);
}

std::vector<double> circular_convolve_fft(const std::vector<double>& a,
                                          const std::vector<double>& b) {
    const std::size_t n = a.size();
    if (n == 0 || b.size() != n)
        throw GeometryError("circular_convolve_fft: inputs must be nonempty and equal length");

    // Power-of-two n maps directly onto the FFT ring; otherwise compute the
    // length-(2n-1) linear convolution and wrap it modulo n.
    const bool direct = (n & (n - 1)) == 0;
    const std::size_t L = direct ? n : next_pow2(2 * n - 1);

    std::vector<std::complex<double>> fa(L), fb(L);
    for (std::size_t i = 0; i < n; ++i) {
        fa[i] = a[i];
        fb[i] = b[i];
    }
    fft_inplace(fa, false);
    fft_inplace(fb, false);
    for (std::size_t i = 0; i < L; ++i) fa[i] *= fb[i];
    fft_inplace(fa, true);

    std::vector<double> out(n, 0.0);
    if (direct) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fa[i].real();
    } else {
        for (std::size_t i = 0; i < 2 * n - 1; ++i) out[i % n] += fa[i].real();
    }
    return out;
}

}  // namespace orthoshot
