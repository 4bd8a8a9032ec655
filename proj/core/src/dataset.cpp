#include "orthoshot/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "orthoshot/errors.hpp"
#include "orthoshot/png_io.hpp"
#include "orthoshot/rng.hpp"

namespace fs = std::filesystem;

namespace orthoshot {

void validate_dataset(const Dataset& ds) {
    if (ds.class_ids.size() != ds.images.size())
        throw IoError("dataset: class/image table size mismatch");
    if (ds.class_ids.empty()) throw IoError("dataset: no classes");
    std::size_t c = 0, h = 0, w = 0;
    bool first = true;
    for (std::size_t k = 0; k < ds.images.size(); ++k) {
        if (ds.images[k].empty())
            throw IoError("dataset: class '" + ds.class_ids[k] + "' has no images");
        for (const Image& img : ds.images[k]) {
            if (first) {
                c = img.channels;
                h = img.height;
                w = img.width;
                first = false;
            } else if (img.channels != c || img.height != h || img.width != w) {
                throw IoError("dataset: inconsistent image dimensions");
            }
        }
    }
}

Dataset load_dataset(const std::string& manifest_path, const std::string& split_filter) {
    std::ifstream in(manifest_path);
    if (!in) throw IoError("cannot open manifest: " + manifest_path);

    const fs::path base = fs::path(manifest_path).parent_path();
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty manifest: " + manifest_path);
    // tolerate a UTF-8 BOM and trailing CR
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "filepath,class_id,split")
        throw IoError("manifest header must be 'filepath,class_id,split'");

    std::map<std::string, std::vector<Image>> by_class;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string path, cls, split;
        if (!std::getline(ss, path, ',') || !std::getline(ss, cls, ',') ||
            !std::getline(ss, split, ','))
            throw IoError("malformed manifest row: " + line);
        if (!split_filter.empty() && split != split_filter) continue;
        fs::path full = fs::path(path).is_absolute() ? fs::path(path) : base / path;
        by_class[cls].push_back(read_png(full.string()));
        ++rows;
    }
    if (rows == 0)
        throw IoError(split_filter.empty()
                          ? "manifest has no data rows: " + manifest_path
                          : "manifest has no rows for split '" + split_filter + "'");

    Dataset ds;
    ds.split = split_filter.empty() ? "all" : split_filter;
    for (auto& [cls, imgs] : by_class) {  // std::map iterates lexicographically
        ds.class_ids.push_back(cls);
        ds.images.push_back(std::move(imgs));
    }
    validate_dataset(ds);
    return ds;
}

namespace {

// All renderers draw into [0,1] grayscale over a dim background.
struct ShapeParams {
    double cy, cx;       // center, pixels
    double scale;        // characteristic radius, pixels
    double fg, bg;       // intensities
};

void draw_shape(Image& img, std::size_t family, const ShapeParams& p) {
    const double H = static_cast<double>(img.height), W = static_cast<double>(img.width);
    for (std::size_t y = 0; y < img.height; ++y)
        for (std::size_t x = 0; x < img.width; ++x) {
            const double dy = static_cast<double>(y) - p.cy;
            const double dx = static_cast<double>(x) - p.cx;
            bool inside = false;
            switch (family) {
                case 0:  // circle
                    inside = dy * dy + dx * dx <= p.scale * p.scale;
                    break;
                case 1:  // square
                    inside = std::abs(dy) <= p.scale && std::abs(dx) <= p.scale;
                    break;
                case 2:  // triangle (upward)
                    inside = dy >= -p.scale && dy <= p.scale &&
                             std::abs(dx) <= (dy + p.scale) * 0.5;
                    break;
                case 3:  // horizontal bar
                    inside = std::abs(dy) <= p.scale * 0.35;
                    break;
                case 4:  // cross
                    inside = std::abs(dy) <= p.scale * 0.3 || std::abs(dx) <= p.scale * 0.3;
                    break;
                case 5: {  // ring
                    const double r = std::sqrt(dy * dy + dx * dx);
                    inside = r <= p.scale && r >= p.scale * 0.55;
                    break;
                }
                case 6: {  // diagonal gradient, scale sets the slope direction mix
                    const double t = (static_cast<double>(y) / H + static_cast<double>(x) / W) / 2.0;
                    img.at(0, y, x) = p.bg + (p.fg - p.bg) * t;
                    continue;
                }
                case 7: {  // checker, cell size from scale
                    const std::size_t cell = std::max<std::size_t>(1, static_cast<std::size_t>(p.scale / 2.0));
                    inside = ((y / cell) + (x / cell)) % 2 == 0;
                    break;
                }
                default:
                    break;
            }
            img.at(0, y, x) = inside ? p.fg : p.bg;
        }
}

}  // namespace

Dataset synth_shapes(std::size_t n_classes, std::size_t per_class, std::size_t hw,
                     std::uint64_t seed) {
    constexpr std::size_t kFamilies = 8;
    constexpr std::size_t kVariants = 4;
    if (n_classes < 2) throw GeometryError("synth_shapes: need at least 2 classes");
    if (n_classes > kFamilies * kVariants)
        throw GeometryError("synth_shapes: more classes than shape family x variant combinations");
    if (hw < 8) throw GeometryError("synth_shapes: image side must be >= 8");

    Dataset ds;
    ds.split = "all";
    for (std::size_t cls = 0; cls < n_classes; ++cls) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "class_%02zu", cls);
        ds.class_ids.emplace_back(buf);

        const std::size_t family = cls % kFamilies;
        const std::size_t variant = cls / kFamilies;
        std::vector<Image> imgs;
        imgs.reserve(per_class);
        for (std::size_t i = 0; i < per_class; ++i) {
            // one independent stream per (class, index): dataset content does
            // not depend on generation order
            std::mt19937_64 rng = seeded_rng(seed, cls * 1000003ULL + i);
            std::uniform_real_distribution<double> unit(0.0, 1.0);

            const double side = static_cast<double>(hw);
            ShapeParams p{};
            p.cy = side * 0.5 + (unit(rng) - 0.5) * side * 0.25;
            p.cx = side * 0.5 + (unit(rng) - 0.5) * side * 0.25;
            p.scale = side * (0.22 + 0.12 * unit(rng));
            // variants occupy distinct intensity bands so family duplicates
            // stay separable
            const double band = 0.55 + 0.12 * static_cast<double>(variant);
            p.fg = std::min(1.0, band + 0.15 * unit(rng));
            p.bg = 0.08 + 0.08 * unit(rng);

            Image img(1, hw, hw);
            draw_shape(img, family, p);

            std::normal_distribution<double> noise(0.0, 0.05);
            for (double& v : img.pix) v = std::min(1.0, std::max(0.0, v + noise(rng)));
            imgs.push_back(std::move(img));
        }
        ds.images.push_back(std::move(imgs));
    }
    validate_dataset(ds);
    return ds;
}

std::pair<Dataset, Dataset> split_by_fraction(const Dataset& ds, double frac,
                                              const std::string& tag_head,
                                              const std::string& tag_tail) {
    if (frac <= 0.0 || frac >= 1.0) throw ConfigError("split fraction must be in (0,1)");
    Dataset head, tail;
    head.split = tag_head;
    tail.split = tag_tail;
    head.class_ids = tail.class_ids = ds.class_ids;
    head.images.resize(ds.n_classes());
    tail.images.resize(ds.n_classes());
    for (std::size_t c = 0; c < ds.n_classes(); ++c) {
        const std::size_t n = ds.images[c].size();
        std::size_t k = static_cast<std::size_t>(std::ceil(frac * static_cast<double>(n)));
        if (k == 0) k = 1;
        if (k >= n) k = n - 1;  // both splits stay nonempty
        for (std::size_t i = 0; i < n; ++i)
            (i < k ? head : tail).images[c].push_back(ds.images[c][i]);
    }
    validate_dataset(head);
    validate_dataset(tail);
    return {std::move(head), std::move(tail)};
}

void write_dataset_tree(const std::string& out_dir, const Dataset& train, const Dataset& test) {
    const fs::path root(out_dir);
    fs::create_directories(root / "images");

    std::ostringstream manifest;
    manifest << "filepath,class_id,split\n";

    auto emit = [&](const Dataset& ds, const std::string& split, std::size_t index_base) {
        for (std::size_t c = 0; c < ds.n_classes(); ++c) {
            const fs::path cls_dir = root / "images" / ds.class_ids[c];
            fs::create_directories(cls_dir);
            for (std::size_t i = 0; i < ds.images[c].size(); ++i) {
                char name[32];
                std::snprintf(name, sizeof(name), "%04zu.png", index_base + i);
                write_png((cls_dir / name).string(), ds.images[c][i]);
                manifest << "images/" << ds.class_ids[c] << "/" << name << "," << ds.class_ids[c]
                         << "," << split << "\n";
            }
        }
    };
    emit(train, "meta-train", 0);
    // continue numbering past the largest train class so filenames never clash
    std::size_t base = 0;
    for (const auto& imgs : train.images) base = std::max(base, imgs.size());
    emit(test, "meta-test", base);

    std::ofstream out(root / "manifest.csv", std::ios::binary);
    if (!out) throw IoError("cannot write manifest under " + out_dir);
    out << manifest.str();
}

}  // namespace orthoshot
