// Copyright 2026 The QBPM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qbpm/rng.hpp"

namespace qbpm {

struct ImageDims {
    int height = 1;
    int width = 1;
    int channels = 3;

    std::size_t size() const noexcept {
        return static_cast<std::size_t>(height) * static_cast<std::size_t>(width) * static_cast<std::size_t>(channels);
    }
    bool operator==(const ImageDims&) const = default;
};

/// Interleaved row-major pixels (HWC), values in [0, 1] once normalized.
struct Image {
    ImageDims dims;
    std::vector<double> pixels;

    double at(int row, int col, int ch) const noexcept {
        return pixels[(static_cast<std::size_t>(row) * static_cast<std::size_t>(dims.width) +
                       static_cast<std::size_t>(col)) *
                          static_cast<std::size_t>(dims.channels) +
                      static_cast<std::size_t>(ch)];
    }
};

struct Sample {
    std::vector<double> features;
    int label = 0;
    std::vector<double> one_hot;
};

std::vector<double> one_hot(int label, int n_classes);
Sample make_sample(std::vector<double> features, int label, int n_classes);

struct Dataset {
    std::vector<std::string> class_names;  // index = label
    ImageDims dims;
    std::vector<Sample> samples;

    int n_classes() const noexcept { return static_cast<int>(class_names.size()); }
    std::vector<std::size_t> class_counts() const;
};

struct LoadReport {
    std::size_t skipped = 0;
    std::vector<std::string> warnings;
    bool raw = false;
};

/// Two layouts are accepted under root:
///   <root>/<class_name>/*.{png,jpg,jpeg}   decoded as RGB, resized bilinearly to
///                                          target, min-max normalized per image;
///                                          labels follow alphabetical class order
///   <root>/features.f32 + <root>/labels.txt
///                                          little-endian float32 row-major matrix
///                                          with one row per label line; values must
///                                          already lie in [0, 1]. Optional
///                                          <root>/classes.txt names the classes.
/// Unreadable images are skipped and counted; an empty class directory is a data error.
Dataset load_dataset(const std::filesystem::path& root, ImageDims target, LoadReport* report = nullptr);

/// Writes the raw layout read by load_dataset.
void write_raw_dataset(const std::filesystem::path& root, const Dataset& dataset);

/// Per-image (v - min) / (max - min); a constant image becomes all zeros.
void min_max_normalize(std::span<double> values);
std::vector<double> min_max_normalize(std::vector<double> values);

/// Ranges of the random affine augmentation. Rotation and shear are in degrees,
/// shifts are fractions of the image size, zoom is sampled per axis from
/// [1 - zoom, 1 + zoom].
struct AugmentRanges {
    double rotation_deg = 20.0;
    double width_shift = 0.2;
    double height_shift = 0.2;
    double shear_deg = 0.2;
    double zoom = 0.2;
    bool horizontal_flip = true;

    static AugmentRanges none() noexcept { return {0.0, 0.0, 0.0, 0.0, 0.0, false}; }
};

struct AffineParams {
    double rotation_deg = 0.0;
    double shift_x = 0.0;  // fraction of width
    double shift_y = 0.0;  // fraction of height
    double shear_deg = 0.0;
    double zoom_x = 1.0;
    double zoom_y = 1.0;
    bool flip = false;
};

AffineParams sample_affine(const AugmentRanges& ranges, Rng& rng);

/// Inverse-maps every output pixel about the image centre and samples the source
/// bilinearly; coordinates outside the image are clamped to the nearest edge.
/// The horizontal flip is applied to the output.
Image apply_affine(const Image& image, const AffineParams& params);

Image augment(const Image& image, Rng& rng, const AugmentRanges& ranges = {});

/// Appends augmented copies of randomly chosen members of class_id until it has
/// target_count samples. Throws Error(Usage) if target_count is below the current count.
void augment_minority(Dataset& dataset, int class_id, std::size_t target_count, Rng& rng,
                      const AugmentRanges& ranges = {});

struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> validation;
};

/// Seeded stratified split: each class contributes round(fraction * count)
/// samples to train, clamped so both sides keep at least one. Index lists are
/// returned in ascending order. Throws Error(Data) for a class with < 2 samples.
SplitIndices split_indices(std::span<const int> labels, int n_classes, double train_fraction, Rng& rng);

struct Split {
    Dataset train;
    Dataset validation;
};

Split split(const Dataset& dataset, double train_fraction, Rng& rng);

/// Class names, per-class counts, dims, split seed and per-split counts.
nlohmann::json manifest_json(const Dataset& full, const Split& split, std::uint64_t split_seed,
                             const LoadReport& report);

}  // namespace qbpm
