#pragma once

#include <cstddef>
#include <vector>

namespace orthoshot {

// Layer-wise accounting for the capacity calculators. params_to_layer is
// cumulative ("number of parameters up to layer l"); units are per layer.
struct NetSpec {
    std::vector<std::size_t> params_to_layer;  // W_l, nondecreasing
    std::vector<std::size_t> units_per_layer;  // n_l
    double activation_pieces = 2.0;            // p (ReLU: 2)
    double activation_degree = 1.0;            // k (piecewise-linear: 1)
    double c1 = 1.0, c2 = 1.0;                 // LDR degree constants
};

void validate(const NetSpec& spec);

struct CapacityReport {
    double effective_depth = 0.0;  // L-bar
    std::size_t total_units = 0;   // U
    double bound = 0.0;            // B (surrogate, unit constants)
};

// Parameter-weighted depth: L-bar = (1/W) * sum_l W_l, with W the total.
double effective_depth(const NetSpec& spec);

// Surrogate for the O(L-bar W log(pU) + L-bar L W log k) bound with unit
// constants, logarithms base 2. Requires p*U >= 2.
double vc_bound(const NetSpec& spec);

CapacityReport capacity_report(const NetSpec& spec);

struct LdrBudget {
    std::size_t params;        // m*r + n*r
    std::size_t dense_params;  // m*n
    double matvec_fast;        // m*r + n*r
    double matvec_fft;         // n*r*log2(n)
    double compression_ratio;  // dense / structured
};

LdrBudget ldr_budget(std::size_t m, std::size_t n, std::size_t r);

}  // namespace orthoshot
