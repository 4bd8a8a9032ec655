#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orthoshot/augment.hpp"

namespace orthoshot {

// Class-indexed image pool with a split tag. Classes are kept in a
// deterministic (lexicographic) order; all images share C,H,W.
struct Dataset {
    std::vector<std::string> class_ids;
    std::vector<std::vector<Image>> images;  // images[class][i]
    std::string split = "all";

    std::size_t n_classes() const { return class_ids.size(); }
    std::size_t total_images() const {
        std::size_t n = 0;
        for (const auto& c : images) n += c.size();
        return n;
    }
};

void validate_dataset(const Dataset& ds);

// Manifest CSV: header `filepath,class_id,split`, UTF-8, paths relative to
// the manifest's directory. `split_filter` empty loads every row.
Dataset load_dataset(const std::string& manifest_path, const std::string& split_filter = "");

// Deterministic synthetic shape families (circle/square/triangle/bar/cross/
// ring/gradient/checker cycled over variants) with jittered position, scale
// and intensity plus sigma=0.05 additive noise. Grayscale, hw x hw.
Dataset synth_shapes(std::size_t n_classes, std::size_t per_class, std::size_t hw,
                     std::uint64_t seed);

// First ceil(frac*n) images of every class keep `tag_head`, the rest get
// `tag_tail`. Deterministic by index.
std::pair<Dataset, Dataset> split_by_fraction(const Dataset& ds, double frac,
                                              const std::string& tag_head,
                                              const std::string& tag_tail);

// Writes a PNG tree (<out_dir>/images/<class>/NNNN.png) plus manifest.csv for
// the pair of splits. Byte-deterministic for a fixed dataset.
void write_dataset_tree(const std::string& out_dir, const Dataset& train, const Dataset& test);

}  // namespace orthoshot
