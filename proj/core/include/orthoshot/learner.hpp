#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orthoshot/augment.hpp"
#include "orthoshot/episodes.hpp"
#include "orthoshot/ortho.hpp"
#include "orthoshot/tensor.hpp"

namespace orthoshot {

// Minimal dense row-major matrix used around the ridge head.
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

Mat matmul(const Mat& x, const Mat& y);
Mat transpose(const Mat& x);

// --- backbone ----------------------------------------------------------------

// conv(k x k, same padding, stride 1) + bias + ReLU + max-pool 2x2 per block.
struct ConvBlock {
    Tensor4 kernel;  // [N, C, k, k]
    std::vector<double> bias;
    ConvGeometry geom;  // pad = (k-1)/2, stride 1
};

enum class OrthoMode { automatic, row, column };

struct BackboneParams {
    std::vector<ConvBlock> blocks;
    std::size_t input_channels = 1;
    std::size_t input_hw = 16;
    OrthoMode ortho_mode = OrthoMode::automatic;

    std::size_t embed_dim() const;
};

// He-normal kernels, zero biases. widths = filters per block ("64-64-64-64").
BackboneParams make_backbone(std::size_t in_channels, std::size_t input_hw,
                             const std::vector<std::size_t>& widths, std::size_t kernel,
                             std::uint64_t seed);

// Effective orthogonality mode for block `l` (resolves `automatic` by
// comparing the lowering's row count N*H'*W' against its column count C*H*W).
OrthoMode resolve_ortho_mode(const BackboneParams& p, std::size_t block);

// Deterministic embedding of a batch of images; rows follow batch order.
Mat forward_embed(const BackboneParams& p, const std::vector<Image>& batch);

// Per-kernel gradient buffers mirroring the backbone layout.
struct BackboneGrads {
    std::vector<Tensor4> d_kernel;
    std::vector<std::vector<double>> d_bias;
};

// --- ridge head ---------------------------------------------------------------

// Closed-form dual ridge regression: W = Z^T (Z Z^T + lambda I_n)^{-1} Y.
// Query logits are z W. n x n solve via Cholesky; lambda > 0 keeps it SPD.
Mat ridge_head_fit(const Mat& z, const Mat& y, double lambda_ridge);

// --- losses -------------------------------------------------------------------

struct EpisodeLossParts {
    double total = 0.0;
    double ce = 0.0;
    double orth = 0.0;  // lambda_orth * sum of per-layer costs
    double accuracy = 0.0;
};

// Mean soft-label cross-entropy over query samples plus the weighted
// orthogonality penalty over all backbone kernels.
EpisodeLossParts episode_loss(const BackboneParams& p, const Episode& episode, double lambda_orth,
                              double lambda_ridge);

// Loss plus the exact gradient of every kernel and bias (cross-entropy routed
// through the closed-form ridge solve, regularizer added analytically).
EpisodeLossParts episode_loss_grad(const BackboneParams& p, const Episode& episode,
                                   double lambda_orth, double lambda_ridge, BackboneGrads& grads);

// --- training / evaluation ------------------------------------------------------

struct TrainConfig {
    double lr = 0.0001;
    double momentum = 0.9;
    double weight_decay = 2e-5;
    double lr_decay = 0.1;  // applied at 60% and 80% of total epochs
    std::size_t epochs = 1;
    std::size_t episodes_per_epoch = 100;
    double lambda_orth = 0.1;
    double lambda_ridge = 1.0;
    std::uint64_t seed = 0;
    std::size_t threads = 1;  // evaluation-side parallelism
};

void validate(const TrainConfig& cfg);

struct EpisodeRow {
    std::size_t episode = 0;
    std::string split;
    double acc = 0.0, loss_ce = 0.0, loss_orth = 0.0;
    std::vector<double> residuals;  // per-layer ||self_conv - I_r0||_F
};

struct RunMetrics {
    std::vector<EpisodeRow> rows;
    double mean_acc = 0.0;
    double std_acc = 0.0;
    double ci95 = 0.0;  // 1.96 * std / sqrt(n); 0 (flagged) when n == 1
    bool single_episode = false;
};

// Aggregates mean/std/CI over the rows' accuracies.
void aggregate_metrics(RunMetrics& m);

// CSV: episode,split,acc,loss_ce,loss_orth,residual_l1..residual_lL.
// Deterministic formatting; reruns with identical inputs are byte-identical.
std::string metrics_to_csv(const RunMetrics& m);

std::vector<double> layer_ortho_residuals(const BackboneParams& p);

// Episodic SGD (momentum + weight decay; biases exempt from both decay and the
// regularizer) following the support/query/task augmentation policy; MaxUp
// applies when policy.maxup_pool > 1. Deterministic for a fixed seed.
RunMetrics train(BackboneParams& p, const TrainConfig& cfg, const Dataset& ds,
                 const EpisodeSpec& spec, const PoolLimits& limits, const AugPolicy& policy);

// Fits the head per episode and scores the query set; episodes may run in
// parallel (cfg.threads), aggregation is index-ordered.
RunMetrics evaluate(const BackboneParams& p, const Dataset& ds_test, std::size_t n_episodes,
                    const EpisodeSpec& spec, const PoolLimits& limits, std::uint64_t seed,
                    std::size_t threads = 1, double lambda_ridge = 1.0);

struct LayerCorrelation {
    double ortho_residual = 0.0;    // ||self_conv(K) - I_r0||_F at full overlap
    double mean_abs_cosine = 0.0;   // over off-diagonal flattened-filter pairs
};

std::vector<LayerCorrelation> filter_correlation_report(const BackboneParams& p);

}  // namespace orthoshot
