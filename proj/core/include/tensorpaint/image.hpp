#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace tensorpaint {

// Multi-channel raster of double-precision intensities, row-major and
// channel-interleaved (sample index = (y*width + x)*channels + c).
// The nominal intensity range is [0, 255]; quantization to 8 bits happens
// only at file I/O.
class ImageBuffer {
public:
    ImageBuffer() = default;
    ImageBuffer(int width, int height, int channels, double fill = 0.0);

    int width() const { return width_; }
    int height() const { return height_; }
    int channels() const { return channels_; }
    std::size_t sample_count() const { return data_.size(); }

    std::size_t index(int x, int y, int c = 0) const {
        return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
    }

    double at(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }
    double& at(int x, int y, int c = 0) { return data_[index(x, y, c)]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool same_shape(const ImageBuffer& other) const {
        return width_ == other.width_ && height_ == other.height_ &&
               channels_ == other.channels_;
    }
    bool all_finite() const;

private:
    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    std::vector<double> data_;
};

// Per-pixel indicator of the region to fill (true = inside the hole).
class Mask {
public:
    Mask() = default;
    Mask(int width, int height, bool fill = false);

    int width() const { return width_; }
    int height() const { return height_; }

    bool at(int x, int y) const {
        return bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
    }
    void set(int x, int y, bool value) {
        bits_[static_cast<std::size_t>(y) * width_ + x] = value ? 1 : 0;
    }

    // Number of pixels inside the hole.
    std::size_t count() const;
    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width_) * height_;
    }

    bool matches(const ImageBuffer& img) const {
        return width_ == img.width() && height_ == img.height();
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> bits_;
};

// Marks the pixels whose per-channel distance from `key` is at most `tol`
// (distance = max over channels of the absolute difference).
Mask mask_from_color(const ImageBuffer& img, const std::array<double, 3>& key,
                     double tol);

}  // namespace tensorpaint
