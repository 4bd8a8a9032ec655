#pragma once

#include <cstddef>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "orthoshot/errors.hpp"

namespace orthoshot {

// C x H x W image, values kept in [0,1] by every operator.
struct Image {
    std::size_t channels = 0, height = 0, width = 0;
    std::vector<double> pix;

    Image() = default;
    Image(std::size_t c, std::size_t h, std::size_t w)
        : channels(c), height(h), width(w), pix(c * h * w, 0.0) {}

    double& at(std::size_t c, std::size_t y, std::size_t x) {
        return pix[(c * height + y) * width + x];
    }
    double at(std::size_t c, std::size_t y, std::size_t x) const {
        return pix[(c * height + y) * width + x];
    }
    bool same_shape(const Image& o) const {
        return channels == o.channels && height == o.height && width == o.width;
    }
};

// Probability vector over episode-local classes; entries >= 0, sum == 1.
using SoftLabel = std::vector<double>;

SoftLabel one_hot(std::size_t cls, std::size_t n_classes);
bool is_valid_soft_label(const SoftLabel& l, double tol = 1e-9);

struct LabeledImage {
    Image image;
    SoftLabel label;
};

// --- mixing operators -------------------------------------------------------

// Patch-paste between two images; labels mixed by the exact unreplaced-area
// ratio of the clipped box (Beta(1,1) lambda, sqrt(1-lambda) box sides).
LabeledImage cutmix(const Image& a, const SoftLabel& la, const Image& b, const SoftLabel& lb,
                    std::mt19937_64& rng);

// Convex combination with given lambda in [0,1].
LabeledImage mixup(const Image& a, const SoftLabel& la, const Image& b, const SoftLabel& lb,
                   double lambda);

// lambda ~ Beta(alpha, alpha).
double sample_beta(double alpha, std::mt19937_64& rng);

// Intra-image patch relocation; the label is unchanged by contract. Source
// patch side is uniform in [H/8, H/2] x [W/8, W/2]; source and destination
// corners are uniform positions where the patch fits.
Image selfmix(const Image& a, std::mt19937_64& rng);

// --- basic operators --------------------------------------------------------

Image horizontal_flip(const Image& a);
Image rotate90(const Image& a, int quarter_turns);
// Zeroes a random rectangle with sides uniform in [0, H/2] x [0, W/2].
Image random_erase(const Image& a, std::mt19937_64& rng);
// Per-channel affine y = clamp(g*x + o), g in [0.8,1.2], o in [-0.1,0.1].
Image color_jitter(const Image& a, std::mt19937_64& rng);

// --- MaxUp ------------------------------------------------------------------

// Index of the worst (maximum-loss) view; ties break to the lowest index.
std::size_t maxup_select(const std::function<double(const LabeledImage&)>& loss_fn,
                         const std::vector<LabeledImage>& views);

// --- policy -----------------------------------------------------------------

struct AugOp {
    std::string name;  // cutmix | mixup | selfmix | hflip | rotate90 | erase | jitter
    double alpha = 1.0;  // cutmix/mixup Beta parameter
    double prob = 1.0;   // application probability (hflip defaults to 0.5)
    int turns = -1;      // rotate90; -1 = uniform in {0,1,2,3}
};

enum class MaxupScope { sample, task };

// Which operators apply to support, query and task data, plus the MaxUp pool.
struct AugPolicy {
    std::vector<AugOp> support_ops;
    std::vector<AugOp> query_ops;
    std::vector<AugOp> task_ops;  // only "rotate_classes" is meaningful here
    int maxup_pool = 1;
    MaxupScope maxup_scope = MaxupScope::sample;
};

// Parses e.g. "cutmix(alpha=1.0) hflip(p=0.5)" into an op list. Unknown
// operator names or parameters are rejected.
std::vector<AugOp> parse_ops(const std::string& text);

// Applies one op; `partner` supplies the second sample for cutmix/mixup.
LabeledImage apply_op(const AugOp& op, const LabeledImage& sample, const LabeledImage& partner,
                      std::mt19937_64& rng);

// Applies a whole op list in order.
LabeledImage apply_ops(const std::vector<AugOp>& ops, const LabeledImage& sample,
                       const LabeledImage& partner, std::mt19937_64& rng);

}  // namespace orthoshot
