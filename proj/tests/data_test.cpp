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

#include "qbpm/data.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <opencv2/imgcodecs.hpp>
#include <random>
#include <set>
#include <unistd.h>

#include "qbpm/error.hpp"
#include "qbpm/synthetic.hpp"

namespace qbpm {
namespace {

namespace fs = std::filesystem;

class TempDir {
  public:
    TempDir() {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("qbpm_data_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

  private:
    fs::path path_;
};

void write_png(const fs::path& path, int rows, int cols, int seed) {
    cv::Mat img(rows, cols, CV_8UC3);
    std::mt19937 rng(static_cast<unsigned>(seed));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            img.at<cv::Vec3b>(r, c) = cv::Vec3b(static_cast<uchar>(rng() % 256), static_cast<uchar>(rng() % 256),
                                                static_cast<uchar>(rng() % 256));
    ASSERT_TRUE(cv::imwrite(path.string(), img));
}

TEST(LoadDataset, TwoClassesThreeImages) {
    TempDir dir;
    for (const char* cls : {"beta", "alpha"}) {
        fs::create_directories(dir.path() / cls);
        for (int i = 0; i < 3; ++i) write_png(dir.path() / cls / ("img" + std::to_string(i) + ".png"), 20, 30, i);
    }
    LoadReport report;
    const Dataset d = load_dataset(dir.path(), {10, 12, 3}, &report);
    EXPECT_EQ(d.class_names, (std::vector<std::string>{"alpha", "beta"}));
    ASSERT_EQ(d.samples.size(), 6u);
    EXPECT_EQ(d.class_counts(), (std::vector<std::size_t>{3, 3}));
    EXPECT_FALSE(report.raw);
    for (const auto& s : d.samples) {
        EXPECT_EQ(s.features.size(), 10u * 12u * 3u);
        EXPECT_TRUE(s.label == 0 || s.label == 1);
        double lo = 1, hi = 0;
        for (double v : s.features) lo = std::min(lo, v), hi = std::max(hi, v);
        EXPECT_EQ(lo, 0.0);
        EXPECT_EQ(hi, 1.0);
    }
}

TEST(LoadDataset, HundredSquareRgbGivesThirtyThousandFeatures) {
    TempDir dir;
    for (const char* cls : {"a", "b"}) {
        fs::create_directories(dir.path() / cls);
        write_png(dir.path() / cls / "x.png", 64, 48, 1);
    }
    const Dataset d = load_dataset(dir.path(), {100, 100, 3});
    EXPECT_EQ(d.samples[0].features.size(), 30000u);
}

TEST(LoadDataset, UnreadableFileSkippedEmptyClassFails) {
    TempDir dir;
    fs::create_directories(dir.path() / "a");
    fs::create_directories(dir.path() / "b");
    write_png(dir.path() / "a" / "ok.png", 8, 8, 1);
    write_png(dir.path() / "b" / "ok.png", 8, 8, 2);
    std::ofstream(dir.path() / "b" / "broken.png") << "not an image";
    LoadReport report;
    const Dataset d = load_dataset(dir.path(), {4, 4, 3}, &report);
    EXPECT_EQ(d.samples.size(), 2u);
    EXPECT_EQ(report.skipped, 1u);
    EXPECT_FALSE(report.warnings.empty());

    fs::create_directories(dir.path() / "c");
    try {
        load_dataset(dir.path(), {4, 4, 3});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Data);
    }
}

TEST(LoadDataset, RawRoundTrip) {
    TempDir dir;
    const auto task = make_synthetic_task({3, 16, 5, 0.05, 1});
    write_raw_dataset(dir.path(), task.dataset);
    LoadReport report;
    const Dataset d = load_dataset(dir.path(), {}, &report);
    EXPECT_TRUE(report.raw);
    EXPECT_EQ(d.class_names, task.dataset.class_names);
    ASSERT_EQ(d.samples.size(), task.dataset.samples.size());
    for (std::size_t i = 0; i < d.samples.size(); ++i) {
        EXPECT_EQ(d.samples[i].label, task.dataset.samples[i].label);
        ASSERT_EQ(d.samples[i].features.size(), 16u);
        for (std::size_t j = 0; j < 16; ++j)
            EXPECT_EQ(d.samples[i].features[j], static_cast<double>(static_cast<float>(task.dataset.samples[i].features[j])));
    }
}

TEST(LoadDataset, RawRejectsOutOfRangeAndRaggedFiles) {
    TempDir dir;
    const float bad[2] = {0.5f, 1.5f};
    std::ofstream(dir.path() / "features.f32", std::ios::binary).write(reinterpret_cast<const char*>(bad), sizeof bad);
    std::ofstream(dir.path() / "labels.txt") << "0\n";
    EXPECT_THROW(load_dataset(dir.path(), {}), Error);
    std::ofstream(dir.path() / "labels.txt") << "0\n1\n1\n";
    EXPECT_THROW(load_dataset(dir.path(), {}), Error);
}

TEST(MinMax, Examples) {
    EXPECT_EQ(min_max_normalize(std::vector<double>{0, 255}), (std::vector<double>{0, 1}));
    EXPECT_EQ(min_max_normalize(std::vector<double>{10, 20, 30}), (std::vector<double>{0, 0.5, 1}));
    EXPECT_EQ(min_max_normalize(std::vector<double>{7, 7, 7}), (std::vector<double>{0, 0, 0}));
}

Image random_image(int h, int w, int seed) {
    Image img{{h, w, 3}, {}};
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    std::uniform_real_distribution<double> u(0, 1);
    img.pixels.resize(img.dims.size());
    for (auto& v : img.pixels) v = u(rng);
    return img;
}

TEST(Augment, ZeroRangesAreIdentity) {
    const Image img = random_image(9, 11, 1);
    Rng rng(1);
    for (int i = 0; i < 5; ++i) EXPECT_EQ(augment(img, rng, AugmentRanges::none()).pixels, img.pixels);
}

TEST(Augment, FlipTwiceIsIdentity) {
    const Image img = random_image(6, 7, 2);
    AffineParams flip;
    flip.flip = true;
    const Image once = apply_affine(img, flip);
    EXPECT_NE(once.pixels, img.pixels);
    EXPECT_EQ(once.at(2, 0, 1), img.at(2, 6, 1));
    EXPECT_EQ(apply_affine(once, flip).pixels, img.pixels);
}

TEST(Augment, ShapeAndRangePreserved) {
    const Image img = random_image(12, 10, 3);
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const Image out = augment(img, rng);
        EXPECT_EQ(out.dims, img.dims);
        for (double v : out.pixels) ASSERT_TRUE(v >= 0.0 && v <= 1.0);
    }
}

TEST(Augment, SampledParametersStayInRange) {
    Rng rng(4);
    const AugmentRanges r;
    for (int i = 0; i < 1000; ++i) {
        const auto p = sample_affine(r, rng);
        EXPECT_LE(std::abs(p.rotation_deg), 20.0);
        EXPECT_LE(std::abs(p.shift_x), 0.2);
        EXPECT_LE(std::abs(p.shift_y), 0.2);
        EXPECT_LE(std::abs(p.shear_deg), 0.2);
        EXPECT_GE(p.zoom_x, 0.8);
        EXPECT_LE(p.zoom_y, 1.2);
    }
}

TEST(Augment, IntegerShiftMovesPixelsAndFillsNearest) {
    Image img = random_image(5, 10, 5);
    AffineParams p;
    p.shift_x = 0.2;  // two columns
    const Image out = apply_affine(img, p);
    for (int r = 0; r < 5; ++r) {
        for (int c = 0; c < 10; ++c) {
            const int src = std::clamp(c - 2, 0, 9);
            const int src_alt = std::clamp(c + 2, 0, 9);
            const double v = out.at(r, c, 0);
            EXPECT_TRUE(std::abs(v - img.at(r, src, 0)) < 1e-12 || std::abs(v - img.at(r, src_alt, 0)) < 1e-12);
        }
    }
}

Dataset image_dataset(const std::vector<std::size_t>& counts) {
    Dataset d;
    d.dims = {4, 4, 3};
    for (std::size_t c = 0; c < counts.size(); ++c) {
        d.class_names.push_back("c" + std::to_string(c));
        for (std::size_t i = 0; i < counts[c]; ++i)
            d.samples.push_back(make_sample(random_image(4, 4, static_cast<int>(c * 100 + i)).pixels,
                                            static_cast<int>(c), static_cast<int>(counts.size())));
    }
    return d;
}

TEST(AugmentMinority, GrowsOnlyTheNamedClass) {
    Dataset d = image_dataset({10, 4, 7});
    Rng rng(6);
    augment_minority(d, 1, 12, rng);
    EXPECT_EQ(d.class_counts(), (std::vector<std::size_t>{10, 12, 7}));
    for (const auto& s : d.samples) {
        EXPECT_EQ(s.features.size(), 48u);
        for (double v : s.features) ASSERT_TRUE(v >= 0 && v <= 1);
        EXPECT_EQ(s.one_hot[static_cast<std::size_t>(s.label)], 1.0);
    }
    const auto before = d.samples.size();
    augment_minority(d, 1, 12, rng);
    EXPECT_EQ(d.samples.size(), before);
    EXPECT_THROW(augment_minority(d, 1, 5, rng), Error);
}

TEST(AugmentMinority, DeterministicForSeed) {
    Dataset a = image_dataset({3, 2}), b = a;
    Rng r1(7), r2(7);
    augment_minority(a, 1, 6, r1);
    augment_minority(b, 1, 6, r2);
    for (std::size_t i = 0; i < a.samples.size(); ++i) EXPECT_EQ(a.samples[i].features, b.samples[i].features);
}

TEST(Split, FigureCountsReproduced) {
    const std::vector<std::size_t> sizes{13725, 5002, 488};
    std::vector<int> labels;
    for (std::size_t c = 0; c < sizes.size(); ++c) labels.insert(labels.end(), sizes[c], static_cast<int>(c));
    Rng rng(8);
    const auto s = split_indices(labels, 3, 0.67, rng);
    std::vector<std::size_t> train(3, 0);
    for (std::size_t i : s.train) ++train[static_cast<std::size_t>(labels[i])];
    EXPECT_NEAR(static_cast<double>(train[0]), 9196.0, 1.0);
    EXPECT_EQ(train[0] + 4529, 13725u);
}

TEST(Split, HalfOfTenAndPartition) {
    std::vector<int> labels;
    for (int c = 0; c < 3; ++c) labels.insert(labels.end(), 10, c);
    Rng rng(9);
    const auto s = split_indices(labels, 3, 0.5, rng);
    EXPECT_EQ(s.train.size(), 15u);
    EXPECT_EQ(s.validation.size(), 15u);
    std::set<std::size_t> all(s.train.begin(), s.train.end());
    for (std::size_t i : s.validation) EXPECT_TRUE(all.insert(i).second);
    EXPECT_EQ(all.size(), labels.size());
    EXPECT_TRUE(std::is_sorted(s.train.begin(), s.train.end()));
}

TEST(Split, DeterministicAndStratified) {
    std::mt19937_64 gen(10);
    std::vector<int> labels(500);
    for (auto& l : labels) l = static_cast<int>(gen() % 4);
    Rng r1(11), r2(11);
    const auto a = split_indices(labels, 4, 0.67, r1);
    const auto b = split_indices(labels, 4, 0.67, r2);
    EXPECT_EQ(a.train, b.train);
    for (int c = 0; c < 4; ++c) {
        const auto count = static_cast<double>(std::count(labels.begin(), labels.end(), c));
        const auto in_train = static_cast<double>(
            std::count_if(a.train.begin(), a.train.end(), [&](std::size_t i) { return labels[i] == c; }));
        EXPECT_LE(std::abs(in_train - 0.67 * count), 1.0);
    }
}

TEST(Split, SingletonClassIsDataError) {
    const std::vector<int> labels{0, 0, 1};
    Rng rng(12);
    try {
        split_indices(labels, 2, 0.67, rng);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Data);
    }
}

TEST(Split, DatasetSplitKeepsSamples) {
    const Dataset d = image_dataset({6, 6});
    Rng rng(13);
    const Split s = split(d, 0.5, rng);
    EXPECT_EQ(s.train.samples.size() + s.validation.samples.size(), 12u);
    EXPECT_EQ(s.train.class_names, d.class_names);
    const auto manifest = manifest_json(d, s, 13, {});
    EXPECT_EQ(manifest["train_counts"], nlohmann::json({3, 3}));
    EXPECT_EQ(manifest["split_seed"], 13);
}

TEST(Synthetic, PrototypesAreDisjointBlocks) {
    const auto task = make_synthetic_task({});
    ASSERT_EQ(task.prototypes.size(), 3u);
    EXPECT_EQ(task.dataset.samples.size(), 120u);
    for (const auto& s : task.dataset.samples) {
        EXPECT_EQ(s.features.size(), 16u);
        for (double v : s.features) ASSERT_TRUE(v >= 0 && v <= 1);
    }
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = a + 1; b < 3; ++b) {
            double dot = 0;
            for (std::size_t j = 0; j < 16; ++j) dot += task.prototypes[a][j] * task.prototypes[b][j];
            EXPECT_EQ(dot, 0.0);
        }
}

TEST(OneHot, ExactlyOneEntry) {
    const auto v = one_hot(2, 4);
    EXPECT_EQ(v, (std::vector<double>{0, 0, 1, 0}));
    EXPECT_THROW(one_hot(4, 4), Error);
}

}  // namespace
}  // namespace qbpm
