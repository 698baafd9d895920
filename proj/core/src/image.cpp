#include "tensorpaint/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tensorpaint/error.hpp"

namespace tensorpaint {

ImageBuffer::ImageBuffer(int width, int height, int channels, double fill)
    : width_(width), height_(height), channels_(channels) {
    if (width < 1 || height < 1)
        throw InvalidArgument("ImageBuffer: width and height must be >= 1");
    if (channels != 1 && channels != 3)
        throw InvalidArgument("ImageBuffer: channels must be 1 or 3");
    data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

bool ImageBuffer::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](double v) { return std::isfinite(v); });
}

Mask::Mask(int width, int height, bool fill) : width_(width), height_(height) {
    if (width < 1 || height < 1)
        throw InvalidArgument("Mask: width and height must be >= 1");
    bits_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
}

std::size_t Mask::count() const {
    return static_cast<std::size_t>(
        std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

Mask mask_from_color(const ImageBuffer& img, const std::array<double, 3>& key,
                     double tol) {
    if (img.channels() != 3)
        throw InvalidArgument("mask_from_color: image must have 3 channels");
    if (tol < 0.0)
        throw InvalidArgument("mask_from_color: tol must be >= 0");

    Mask mask(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            double dist = 0.0;
            for (int c = 0; c < 3; ++c)
                dist = std::max(dist, std::abs(img.at(x, y, c) - key[static_cast<std::size_t>(c)]));
            mask.set(x, y, dist <= tol);
        }
    }
    return mask;
}

}  // namespace tensorpaint
