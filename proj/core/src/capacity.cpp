#include "orthoshot/capacity.hpp"

#include <cmath>

#include "orthoshot/errors.hpp"

namespace orthoshot {

void validate(const NetSpec& spec) {
    if (spec.params_to_layer.empty() || spec.units_per_layer.empty())
        throw GeometryError("NetSpec: needs at least one layer");
    if (spec.params_to_layer.size() != spec.units_per_layer.size())
        throw GeometryError("NetSpec: params/units layer counts differ");
    std::size_t prev = 0;
    for (std::size_t w : spec.params_to_layer) {
        if (w < prev) throw GeometryError("NetSpec: cumulative parameter counts must be nondecreasing");
        prev = w;
    }
    if (spec.params_to_layer.back() == 0) throw GeometryError("NetSpec: zero parameters");
    for (std::size_t n : spec.units_per_layer)
        if (n == 0) throw GeometryError("NetSpec: zero units in a layer");
    if (spec.activation_pieces < 1.0 || spec.activation_degree < 1.0)
        throw GeometryError("NetSpec: activation constants must be >= 1");
}

double effective_depth(const NetSpec& spec) {
    validate(spec);
    const double total = static_cast<double>(spec.params_to_layer.back());
    double sum = 0.0;
    for (std::size_t w : spec.params_to_layer) sum += static_cast<double>(w);
    return sum / total;
}

double vc_bound(const NetSpec& spec) {
    validate(spec);
    const double lbar = effective_depth(spec);
    const double w = static_cast<double>(spec.params_to_layer.back());
    const double layers = static_cast<double>(spec.params_to_layer.size());
    double units = 0.0;
    for (std::size_t n : spec.units_per_layer) units += static_cast<double>(n);
    const double pu = spec.activation_pieces * units;
    if (pu < 2.0) throw GeometryError("vc_bound: p*U must be >= 2");
    return lbar * w * std::log2(pu) + lbar * layers * w * std::log2(spec.activation_degree);
}

CapacityReport capacity_report(const NetSpec& spec) {
    CapacityReport r;
    r.effective_depth = effective_depth(spec);
    r.total_units = 0;
    for (std::size_t n : spec.units_per_layer) r.total_units += n;
    r.bound = vc_bound(spec);
    return r;
}

LdrBudget ldr_budget(std::size_t m, std::size_t n, std::size_t r) {
    if (m == 0 || n == 0 || r == 0) throw GeometryError("ldr_budget: m, n, r must be >= 1");
    LdrBudget b;
    b.params = m * r + n * r;
    b.dense_params = m * n;
    b.matvec_fast = static_cast<double>(m * r + n * r);
    b.matvec_fft = static_cast<double>(n * r) * std::log2(static_cast<double>(n));
    b.compression_ratio = static_cast<double>(b.dense_params) / static_cast<double>(b.params);
    return b;
}

}  // namespace orthoshot
