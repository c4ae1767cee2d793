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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <random>

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "qbpm/error.hpp"

namespace qbpm {

namespace fs = std::filesystem;

std::vector<double> one_hot(int label, int n_classes) {
    if (label < 0 || label >= n_classes)
        throw Error(ErrorKind::Data, "label " + std::to_string(label) + " outside [0, " + std::to_string(n_classes) + ")");
    std::vector<double> v(static_cast<std::size_t>(n_classes), 0.0);
    v[static_cast<std::size_t>(label)] = 1.0;
    return v;
}

Sample make_sample(std::vector<double> features, int label, int n_classes) {
    return Sample{std::move(features), label, one_hot(label, n_classes)};
}

std::vector<std::size_t> Dataset::class_counts() const {
    std::vector<std::size_t> counts(class_names.size(), 0);
    for (const Sample& s : samples) ++counts[static_cast<std::size_t>(s.label)];
    return counts;
}

void min_max_normalize(std::span<double> values) {
    if (values.empty()) return;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double min = *lo;
    const double range = *hi - min;
    if (range == 0.0) {
        std::fill(values.begin(), values.end(), 0.0);
        return;
    }
    for (double& v : values) v = (v - min) / range;
}

std::vector<double> min_max_normalize(std::vector<double> values) {
    min_max_normalize(std::span<double>(values));
    return values;
}

namespace {

bool is_image_file(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

// Returns false if the file cannot be decoded.
bool decode_image(const fs::path& path, ImageDims target, std::vector<double>& out) {
    cv::Mat bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
    if (bgr.empty()) return false;
    cv::Mat rgb;
    cv::cvtColor(bgr, rgb, cv::COLOR_BGR2RGB);
    cv::Mat resized;
    cv::resize(rgb, resized, cv::Size(target.width, target.height), 0.0, 0.0, cv::INTER_LINEAR);
    out.resize(target.size());
    for (int r = 0; r < target.height; ++r) {
        const auto* row = resized.ptr<cv::Vec3b>(r);
        for (int c = 0; c < target.width; ++c)
            for (int ch = 0; ch < 3; ++ch)
                out[(static_cast<std::size_t>(r) * static_cast<std::size_t>(target.width) +
                     static_cast<std::size_t>(c)) *
                        3 +
                    static_cast<std::size_t>(ch)] = static_cast<double>(row[c][ch]);
    }
    min_max_normalize(std::span<double>(out));
    return true;
}

std::vector<std::string> read_lines(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Data, "cannot open " + path.string());
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

float read_le_float(const unsigned char* p) {
    std::uint32_t bits = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
    return std::bit_cast<float>(bits);
}

Dataset load_raw(const fs::path& root, LoadReport& report) {
    report.raw = true;
    const auto label_lines = read_lines(root / "labels.txt");
    if (label_lines.empty()) throw Error(ErrorKind::Data, "labels.txt is empty");
    std::vector<int> labels;
    labels.reserve(label_lines.size());
    for (const auto& l : label_lines) {
        try {
            labels.push_back(std::stoi(l));
        } catch (const std::exception&) {
            throw Error(ErrorKind::Data, "bad label '" + l + "' in labels.txt");
        }
    }

    std::ifstream in(root / "features.f32", std::ios::binary);
    if (!in) throw Error(ErrorKind::Data, "cannot open features.f32");
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const std::size_t rows = labels.size();
    if (bytes.size() % (4 * rows) != 0 || bytes.empty())
        throw Error(ErrorKind::Data, "features.f32 size " + std::to_string(bytes.size()) +
                                         " is not a multiple of 4 * " + std::to_string(rows) + " rows");
    const std::size_t cols = bytes.size() / (4 * rows);

    Dataset ds;
    const int max_label = *std::max_element(labels.begin(), labels.end());
    if (fs::exists(root / "classes.txt")) {
        ds.class_names = read_lines(root / "classes.txt");
    } else {
        for (int c = 0; c <= max_label; ++c) ds.class_names.push_back("class_" + std::to_string(c));
    }
    ds.dims = {1, static_cast<int>(cols), 1};
    ds.samples.reserve(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        std::vector<double> f(cols);
        for (std::size_t c = 0; c < cols; ++c) {
            const double v = read_le_float(bytes.data() + 4 * (r * cols + c));
            if (!(v >= 0.0 && v <= 1.0))
                throw Error(ErrorKind::Data, "raw feature [" + std::to_string(r) + "," + std::to_string(c) +
                                                 "] = " + std::to_string(v) + " outside [0, 1]");
            f[c] = v;
        }
        ds.samples.push_back(make_sample(std::move(f), labels[r], ds.n_classes()));
    }
    for (std::size_t c = 0; c < ds.class_names.size(); ++c)
        if (ds.class_counts()[c] == 0) throw Error(ErrorKind::Data, "class '" + ds.class_names[c] + "' has no samples");
    return ds;
}

Dataset load_images(const fs::path& root, ImageDims target, LoadReport& report) {
    if (target.height < 1 || target.width < 1) throw Error(ErrorKind::Data, "target dims must be positive");
    target.channels = 3;
    std::vector<fs::path> class_dirs;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory()) class_dirs.push_back(entry.path());
    if (class_dirs.empty()) throw Error(ErrorKind::Data, "no class directories under " + root.string());
    std::sort(class_dirs.begin(), class_dirs.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });

    Dataset ds;
    ds.dims = target;
    std::vector<fs::path> files;
    std::vector<int> file_labels;
    for (std::size_t c = 0; c < class_dirs.size(); ++c) {
        ds.class_names.push_back(class_dirs[c].filename().string());
        std::vector<fs::path> members;
        for (const auto& entry : fs::directory_iterator(class_dirs[c]))
            if (entry.is_regular_file() && is_image_file(entry.path())) members.push_back(entry.path());
        if (members.empty())
            throw Error(ErrorKind::Data, "class directory " + class_dirs[c].string() + " contains no images");
        std::sort(members.begin(), members.end());
        for (auto& m : members) {
            files.push_back(std::move(m));
            file_labels.push_back(static_cast<int>(c));
        }
    }

    std::vector<std::vector<double>> decoded(files.size());
    std::vector<char> ok(files.size(), 0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(files.size()); ++i) {
        const auto k = static_cast<std::size_t>(i);
        ok[k] = decode_image(files[k], target, decoded[k]) ? 1 : 0;
    }

    for (std::size_t i = 0; i < files.size(); ++i) {
        if (!ok[i]) {
            ++report.skipped;
            report.warnings.push_back("skipped unreadable image " + files[i].string());
            continue;
        }
        ds.samples.push_back(make_sample(std::move(decoded[i]), file_labels[i], ds.n_classes()));
    }
    return ds;
}

}  // namespace

Dataset load_dataset(const fs::path& root, ImageDims target, LoadReport* report) {
    LoadReport local;
    LoadReport& rep = report ? *report : local;
    if (!fs::is_directory(root)) throw Error(ErrorKind::Data, "dataset root " + root.string() + " is not a directory");
    if (fs::exists(root / "features.f32") && fs::exists(root / "labels.txt")) return load_raw(root, rep);
    return load_images(root, target, rep);
}

void write_raw_dataset(const fs::path& root, const Dataset& dataset) {
    fs::create_directories(root);
    std::ofstream feats(root / "features.f32", std::ios::binary);
    std::ofstream labels(root / "labels.txt");
    std::ofstream classes(root / "classes.txt");
    if (!feats || !labels || !classes) throw Error(ErrorKind::Data, "cannot write raw dataset under " + root.string());
    for (const Sample& s : dataset.samples) {
        for (double v : s.features) {
            const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
            const unsigned char le[4] = {static_cast<unsigned char>(bits), static_cast<unsigned char>(bits >> 8),
                                         static_cast<unsigned char>(bits >> 16), static_cast<unsigned char>(bits >> 24)};
            feats.write(reinterpret_cast<const char*>(le), 4);
        }
        labels << s.label << '\n';
    }
    for (const auto& name : dataset.class_names) classes << name << '\n';
}

AffineParams sample_affine(const AugmentRanges& ranges, Rng& rng) {
    auto uniform = [&rng](double half_width) {
        if (half_width == 0.0) return 0.0;
        return std::uniform_real_distribution<double>(-half_width, half_width)(rng);
    };
    AffineParams p;
    p.rotation_deg = uniform(ranges.rotation_deg);
    p.shift_y = uniform(ranges.height_shift);
    p.shift_x = uniform(ranges.width_shift);
    p.shear_deg = uniform(ranges.shear_deg);
    p.zoom_x = 1.0 + uniform(ranges.zoom);
    p.zoom_y = 1.0 + uniform(ranges.zoom);
    p.flip = ranges.horizontal_flip && std::bernoulli_distribution(0.5)(rng);
    return p;
}

Image apply_affine(const Image& image, const AffineParams& params) {
    const int H = image.dims.height;
    const int W = image.dims.width;
    const int C = image.dims.channels;
    const double deg = std::numbers::pi / 180.0;
    const double cr = std::cos(params.rotation_deg * deg);
    const double sr = std::sin(params.rotation_deg * deg);
    const double shs = std::sin(params.shear_deg * deg);
    const double shc = std::cos(params.shear_deg * deg);
    const double ty = params.shift_y * H;
    const double tx = params.shift_x * W;
    const double center_r = 0.5 * (H - 1);
    const double center_c = 0.5 * (W - 1);

    Image out{image.dims, std::vector<double>(image.pixels.size())};
    for (int r = 0; r < H; ++r) {
        for (int c = 0; c < W; ++c) {
            // Output (row, col) -> source (row, col): rotation * shift * shear * zoom.
            const double vr = (r - center_r) * params.zoom_y;
            const double vc = (c - center_c) * params.zoom_x;
            const double hr = vr - shs * vc + ty;
            const double hc = shc * vc + tx;
            double sr_ = cr * hr - sr * hc + center_r;
            double sc_ = sr * hr + cr * hc + center_c;
            sr_ = std::clamp(sr_, 0.0, static_cast<double>(H - 1));
            sc_ = std::clamp(sc_, 0.0, static_cast<double>(W - 1));
            const int r0 = static_cast<int>(std::floor(sr_));
            const int c0 = static_cast<int>(std::floor(sc_));
            const int r1 = std::min(r0 + 1, H - 1);
            const int c1 = std::min(c0 + 1, W - 1);
            const double fr = sr_ - r0;
            const double fc = sc_ - c0;
            const int oc = params.flip ? W - 1 - c : c;
            for (int ch = 0; ch < C; ++ch) {
                double v = image.at(r0, c0, ch);
                if (fr != 0.0 || fc != 0.0) {
                    v = (1.0 - fr) * ((1.0 - fc) * image.at(r0, c0, ch) + fc * image.at(r0, c1, ch)) +
                        fr * ((1.0 - fc) * image.at(r1, c0, ch) + fc * image.at(r1, c1, ch));
                }
                out.pixels[(static_cast<std::size_t>(r) * static_cast<std::size_t>(W) + static_cast<std::size_t>(oc)) *
                               static_cast<std::size_t>(C) +
                           static_cast<std::size_t>(ch)] = std::clamp(v, 0.0, 1.0);
            }
        }
    }
    return out;
}

Image augment(const Image& image, Rng& rng, const AugmentRanges& ranges) {
    return apply_affine(image, sample_affine(ranges, rng));
}

void augment_minority(Dataset& dataset, int class_id, std::size_t target_count, Rng& rng,
                      const AugmentRanges& ranges) {
    if (class_id < 0 || class_id >= dataset.n_classes())
        throw Error(ErrorKind::Usage, "class " + std::to_string(class_id) + " not present");
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < dataset.samples.size(); ++i)
        if (dataset.samples[i].label == class_id) members.push_back(i);
    if (target_count < members.size())
        throw Error(ErrorKind::Usage, "target count " + std::to_string(target_count) + " below current class size " +
                                          std::to_string(members.size()));
    if (members.empty()) throw Error(ErrorKind::Usage, "class " + std::to_string(class_id) + " has no members");
    std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
    for (std::size_t count = members.size(); count < target_count; ++count) {
        const Sample& src = dataset.samples[members[pick(rng)]];
        Image img{dataset.dims, src.features};
        Image aug = augment(img, rng, ranges);
        Sample s{std::move(aug.pixels), src.label, src.one_hot};
        dataset.samples.push_back(std::move(s));
    }
}

SplitIndices split_indices(std::span<const int> labels, int n_classes, double train_fraction, Rng& rng) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw Error(ErrorKind::Usage, "train fraction must lie in (0, 1)");
    std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(n_classes));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0 || labels[i] >= n_classes) throw Error(ErrorKind::Data, "label out of range in split");
        by_class[static_cast<std::size_t>(labels[i])].push_back(i);
    }
    SplitIndices out;
    for (std::size_t c = 0; c < by_class.size(); ++c) {
        auto& members = by_class[c];
        if (members.size() < 2)
            throw Error(ErrorKind::Data, "class " + std::to_string(c) + " has " + std::to_string(members.size()) +
                                             " sample(s); stratified split needs at least 2");
        std::shuffle(members.begin(), members.end(), rng);
        auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(members.size())));
        n_train = std::clamp<std::size_t>(n_train, 1, members.size() - 1);
        out.train.insert(out.train.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(n_train));
        out.validation.insert(out.validation.end(), members.begin() + static_cast<std::ptrdiff_t>(n_train), members.end());
    }
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.validation.begin(), out.validation.end());
    return out;
}

Split split(const Dataset& dataset, double train_fraction, Rng& rng) {
    std::vector<int> labels;
    labels.reserve(dataset.samples.size());
    for (const Sample& s : dataset.samples) labels.push_back(s.label);
    const SplitIndices idx = split_indices(labels, dataset.n_classes(), train_fraction, rng);
    Split out{{dataset.class_names, dataset.dims, {}}, {dataset.class_names, dataset.dims, {}}};
    for (std::size_t i : idx.train) out.train.samples.push_back(dataset.samples[i]);
    for (std::size_t i : idx.validation) out.validation.samples.push_back(dataset.samples[i]);
    return out;
}

nlohmann::json manifest_json(const Dataset& full, const Split& split, std::uint64_t split_seed,
                             const LoadReport& report) {
    return nlohmann::json{{"class_names", full.class_names},
                          {"counts", full.class_counts()},
                          {"dims", {full.dims.height, full.dims.width, full.dims.channels}},
                          {"source", report.raw ? "raw" : "images"},
                          {"skipped", report.skipped},
                          {"split_seed", split_seed},
                          {"train_counts", split.train.class_counts()},
                          {"validation_counts", split.validation.class_counts()}};
}

}  // namespace qbpm
