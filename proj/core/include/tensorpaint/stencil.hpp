#pragma once

#include <vector>

#include "tensorpaint/image.hpp"

namespace tensorpaint {

// Grid convention used by every stencil in this library: x is the column
// index increasing rightward, y is the row index increasing downward.
// Borders are handled by mirror reflection with edge repetition
// (indices ... 2 1 0 | 0 1 2 ...), so derivative stencils vanish on
// constant inputs and smoothing kernels preserve mass.

// One scalar plane, row-major.
class Channel {
public:
    Channel() = default;
    Channel(int width, int height, double fill = 0.0);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }

    double at(int x, int y) const {
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }
    double& at(int x, int y) {
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }
    double operator[](std::size_t i) const { return data_[i]; }
    double& operator[](std::size_t i) { return data_[i]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool same_shape(const Channel& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

// Mirror-reflected index into a length-n axis; folds indices arbitrarily
// far out of range (period 2n).
int mirror_index(int i, int n);

// Symmetric 1-D kernel: 2*radius+1 taps summing to 1 within 1e-12.
struct Kernel1D {
    int radius = 0;
    std::vector<double> weights{1.0};
};

// Truncated sampled Gaussian, radius = ceil(3*sigma), renormalized.
// sigma == 0 gives the identity kernel.
Kernel1D gaussian_kernel(double sigma);

// Separable convolution (horizontal pass then vertical pass) with
// gaussian_kernel(sigma). The passes accumulate deviations from the center
// sample, so a constant channel is returned bit-identically.
Channel convolve_gaussian(const Channel& ch, double sigma);

struct Gradient {
    Channel x, y;
};

// Central differences: ux = (u(x+1,y) - u(x-1,y))/2, uy analogous.
Gradient gradient(const Channel& ch);

struct Hessian {
    Channel xx, xy, yy;
};

// uxx = u(x+1,y) - 2u(x,y) + u(x-1,y), uyy analogous,
// uxy = (u(x+1,y+1) + u(x-1,y-1) - u(x+1,y-1) - u(x-1,y+1))/4.
Hessian hessian(const Channel& ch);

// Second derivative along a per-pixel unit direction field:
// tx^2*uxx + 2*tx*ty*uxy + ty^2*uyy. Throws if any direction deviates from
// unit norm by more than 1e-6.
Channel directional_second_derivative(const Hessian& h, const Channel& theta_x,
                                      const Channel& theta_y);

// Plumbing between interleaved images and single planes.
Channel image_channel(const ImageBuffer& img, int c);
void set_image_channel(ImageBuffer& img, int c, const Channel& ch);

}  // namespace tensorpaint
