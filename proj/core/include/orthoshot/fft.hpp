#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace orthoshot {

std::size_t next_pow2(std::size_t n);

// In-place iterative radix-2 Cooley-Tukey. a.size() must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& a, bool invert);

// Circular convolution out[i] = sum_j a[j] * b[(i-j) mod n].
// Arbitrary n: a linear convolution is computed at the next power-of-two
// length and folded back modulo n, so the result is exact for every n.
std::vector<double> circular_convolve_fft(const std::vector<double>& a,
                                          const std::vector<double>& b);

}  // namespace orthoshot
