#include "orthoshot/augment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace orthoshot {

namespace {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

void clamp_image(Image& img) {
    for (double& v : img.pix) v = clamp01(v);
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace

SoftLabel one_hot(std::size_t cls, std::size_t n_classes) {
    SoftLabel l(n_classes, 0.0);
    l[cls] = 1.0;
    return l;
}

bool is_valid_soft_label(const SoftLabel& l, double tol) {
    double sum = 0.0;
    for (double v : l) {
        if (v < 0.0) return false;
        sum += v;
    }
    return std::abs(sum - 1.0) <= tol;
}

double sample_beta(double alpha, std::mt19937_64& rng) {
    if (alpha == 1.0) return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    std::gamma_distribution<double> gamma(alpha, 1.0);
    const double x = gamma(rng);
    const double y = gamma(rng);
    return x + y > 0.0 ? x / (x + y) : 0.5;
}

LabeledImage cutmix(const Image& a, const SoftLabel& la, const Image& b, const SoftLabel& lb,
                    std::mt19937_64& rng) {
    if (!a.same_shape(b)) throw GeometryError("cutmix: image shape mismatch");
    if (la.size() != lb.size()) throw GeometryError("cutmix: label dimension mismatch");

    const std::size_t H = a.height, W = a.width;
    const double lambda = sample_beta(1.0, rng);
    const double cut = std::sqrt(1.0 - lambda);
    const long bh = static_cast<long>(static_cast<double>(H) * cut);
    const long bw = static_cast<long>(static_cast<double>(W) * cut);
    const long cy = static_cast<long>(uniform_index(rng, H));
    const long cx = static_cast<long>(uniform_index(rng, W));

    const std::size_t y1 = static_cast<std::size_t>(std::clamp(cy - bh / 2, 0L, static_cast<long>(H)));
    const std::size_t y2 = static_cast<std::size_t>(std::clamp(cy + bh / 2, 0L, static_cast<long>(H)));
    const std::size_t x1 = static_cast<std::size_t>(std::clamp(cx - bw / 2, 0L, static_cast<long>(W)));
    const std::size_t x2 = static_cast<std::size_t>(std::clamp(cx + bw / 2, 0L, static_cast<long>(W)));

    LabeledImage out{a, SoftLabel(la.size(), 0.0)};
    for (std::size_t c = 0; c < a.channels; ++c)
        for (std::size_t y = y1; y < y2; ++y)
            for (std::size_t x = x1; x < x2; ++x) out.image.at(c, y, x) = b.at(c, y, x);

    // Label weight is the exact unreplaced pixel fraction of the clipped box,
    // not the sampled lambda.
    const double replaced = static_cast<double>((y2 - y1) * (x2 - x1));
    const double rho = 1.0 - replaced / static_cast<double>(H * W);
    for (std::size_t i = 0; i < la.size(); ++i) out.label[i] = rho * la[i] + (1.0 - rho) * lb[i];
    return out;
}

LabeledImage mixup(const Image& a, const SoftLabel& la, const Image& b, const SoftLabel& lb,
                   double lambda) {
    if (!a.same_shape(b)) throw GeometryError("mixup: image shape mismatch");
    if (la.size() != lb.size()) throw GeometryError("mixup: label dimension mismatch");
    if (lambda < 0.0 || lambda > 1.0) throw GeometryError("mixup: lambda out of [0,1]");

    LabeledImage out{Image(a.channels, a.height, a.width), SoftLabel(la.size(), 0.0)};
    for (std::size_t i = 0; i < a.pix.size(); ++i)
        out.image.pix[i] = lambda * a.pix[i] + (1.0 - lambda) * b.pix[i];
    for (std::size_t i = 0; i < la.size(); ++i) out.label[i] = lambda * la[i] + (1.0 - lambda) * lb[i];
    clamp_image(out.image);
    return out;
}

Image selfmix(const Image& a, std::mt19937_64& rng) {
    if (a.height < 2 || a.width < 2) throw GeometryError("selfmix: image too small");
    const std::size_t H = a.height, W = a.width;

    auto patch_side = [&rng](std::size_t extent) {
        std::size_t lo = std::max<std::size_t>(1, extent / 8);
        std::size_t hi = std::max<std::size_t>(lo, extent / 2);
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    const std::size_t ph = patch_side(H);
    const std::size_t pw = patch_side(W);
    const std::size_t sy = uniform_index(rng, H - ph + 1);
    const std::size_t sx = uniform_index(rng, W - pw + 1);
    const std::size_t dy = uniform_index(rng, H - ph + 1);
    const std::size_t dx = uniform_index(rng, W - pw + 1);

    // Snapshot the source first; source and destination may overlap.
    std::vector<double> patch(a.channels * ph * pw);
    std::size_t idx = 0;
    for (std::size_t c = 0; c < a.channels; ++c)
        for (std::size_t y = 0; y < ph; ++y)
            for (std::size_t x = 0; x < pw; ++x) patch[idx++] = a.at(c, sy + y, sx + x);

    Image out = a;
    idx = 0;
    for (std::size_t c = 0; c < a.channels; ++c)
        for (std::size_t y = 0; y < ph; ++y)
            for (std::size_t x = 0; x < pw; ++x) out.at(c, dy + y, dx + x) = patch[idx++];
    return out;
}

Image horizontal_flip(const Image& a) {
    Image out(a.channels, a.height, a.width);
    for (std::size_t c = 0; c < a.channels; ++c)
        for (std::size_t y = 0; y < a.height; ++y)
            for (std::size_t x = 0; x < a.width; ++x)
                out.at(c, y, x) = a.at(c, y, a.width - 1 - x);
    return out;
}

Image rotate90(const Image& a, int quarter_turns) {
    int t = ((quarter_turns % 4) + 4) % 4;
    Image cur = a;
    for (int i = 0; i < t; ++i) {
        // one counter-clockwise quarter turn: (y,x) <- (x, W-1-y) ... mapped so
        // out[y][x] = in[x][W_in-1-y] with swapped extents
        Image next(cur.channels, cur.width, cur.height);
        for (std::size_t c = 0; c < cur.channels; ++c)
            for (std::size_t y = 0; y < next.height; ++y)
                for (std::size_t x = 0; x < next.width; ++x)
                    next.at(c, y, x) = cur.at(c, x, cur.width - 1 - y);
        cur = std::move(next);
    }
    return cur;
}

Image random_erase(const Image& a, std::mt19937_64& rng) {
    const std::size_t H = a.height, W = a.width;
    const std::size_t eh = std::uniform_int_distribution<std::size_t>(0, H / 2)(rng);
    const std::size_t ew = std::uniform_int_distribution<std::size_t>(0, W / 2)(rng);
    Image out = a;
    if (eh == 0 || ew == 0) return out;
    const std::size_t y0 = uniform_index(rng, H - eh + 1);
    const std::size_t x0 = uniform_index(rng, W - ew + 1);
    for (std::size_t c = 0; c < a.channels; ++c)
        for (std::size_t y = y0; y < y0 + eh; ++y)
            for (std::size_t x = x0; x < x0 + ew; ++x) out.at(c, y, x) = 0.0;
    return out;
}

Image color_jitter(const Image& a, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> gain(0.8, 1.2);
    std::uniform_real_distribution<double> offset(-0.1, 0.1);
    Image out = a;
    for (std::size_t c = 0; c < a.channels; ++c) {
        const double g = gain(rng);
        const double o = offset(rng);
        for (std::size_t y = 0; y < a.height; ++y)
            for (std::size_t x = 0; x < a.width; ++x)
                out.at(c, y, x) = clamp01(g * a.at(c, y, x) + o);
    }
    return out;
}

std::size_t maxup_select(const std::function<double(const LabeledImage&)>& loss_fn,
                         const std::vector<LabeledImage>& views) {
    if (views.empty()) throw GeometryError("maxup_select: empty view list");
    std::size_t best = 0;
    double best_loss = loss_fn(views[0]);
    for (std::size_t i = 1; i < views.size(); ++i) {
        const double l = loss_fn(views[i]);
        if (l > best_loss) {
            best_loss = l;
            best = i;
        }
    }
    return best;
}

namespace {

AugOp parse_one_op(const std::string& token) {
    AugOp op;
    const auto paren = token.find('(');
    op.name = token.substr(0, paren);

    if (op.name == "hflip") op.prob = 0.5;

    static const std::vector<std::string> known = {"cutmix",  "mixup", "selfmix",       "hflip",
                                                   "rotate90", "erase", "jitter", "rotate_classes"};
    if (std::find(known.begin(), known.end(), op.name) == known.end())
        throw ConfigError("unknown augmentation operator: " + op.name);

    if (paren == std::string::npos) return op;
    if (token.back() != ')') throw ConfigError("malformed operator spec: " + token);
    std::string args = token.substr(paren + 1, token.size() - paren - 2);

    std::stringstream ss(args);
    std::string kv;
    while (std::getline(ss, kv, ',')) {
        if (kv.empty()) continue;
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("operator parameter needs key=value: " + kv);
        const std::string key = kv.substr(0, eq);
        const double val = std::stod(kv.substr(eq + 1));
        if (key == "alpha") {
            if (val <= 0.0) throw ConfigError("alpha must be > 0");
            op.alpha = val;
        } else if (key == "p") {
            if (val < 0.0 || val > 1.0) throw ConfigError("p must be within [0,1]");
            op.prob = val;
        } else if (key == "turns") {
            op.turns = static_cast<int>(val);
        } else {
            throw ConfigError("unknown parameter '" + key + "' for operator " + op.name);
        }
    }
    return op;
}

}  // namespace

std::vector<AugOp> parse_ops(const std::string& text) {
    std::vector<AugOp> ops;
    std::stringstream ss(text);
    std::string token;
    while (ss >> token) {
        if (token == "none") continue;
        ops.push_back(parse_one_op(token));
    }
    return ops;
}

LabeledImage apply_op(const AugOp& op, const LabeledImage& sample, const LabeledImage& partner,
                      std::mt19937_64& rng) {
    if (op.prob < 1.0) {
        if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) >= op.prob) return sample;
    }
    if (op.name == "cutmix")
        return cutmix(sample.image, sample.label, partner.image, partner.label, rng);
    if (op.name == "mixup") {
        const double lambda = sample_beta(op.alpha, rng);
        return mixup(sample.image, sample.label, partner.image, partner.label, lambda);
    }
    if (op.name == "selfmix") return {selfmix(sample.image, rng), sample.label};
    if (op.name == "hflip") return {horizontal_flip(sample.image), sample.label};
    if (op.name == "rotate90") {
        const int t = op.turns >= 0 ? op.turns
                                    : static_cast<int>(std::uniform_int_distribution<int>(0, 3)(rng));
        return {rotate90(sample.image, t), sample.label};
    }
    if (op.name == "erase") return {random_erase(sample.image, rng), sample.label};
    if (op.name == "jitter") return {color_jitter(sample.image, rng), sample.label};
    throw ConfigError("operator not applicable per-sample: " + op.name);
}

LabeledImage apply_ops(const std::vector<AugOp>& ops, const LabeledImage& sample,
                       const LabeledImage& partner, std::mt19937_64& rng) {
    LabeledImage cur = sample;
    for (const AugOp& op : ops) cur = apply_op(op, cur, partner, rng);
    return cur;
}

}  // namespace orthoshot
