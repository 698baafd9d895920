#include "tensorpaint/stencil.hpp"

#include <cmath>

#include "tensorpaint/error.hpp"

namespace tensorpaint {

Channel::Channel(int width, int height, double fill)
    : width_(width), height_(height) {
    if (width < 1 || height < 1)
        throw InvalidArgument("Channel: width and height must be >= 1");
    data_.assign(static_cast<std::size_t>(width) * height, fill);
}

int mirror_index(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * n;
    i %= period;
    if (i < 0) i += period;
    return i < n ? i : period - 1 - i;
}

Kernel1D gaussian_kernel(double sigma) {
    if (sigma < 0.0)
        throw InvalidArgument("gaussian_kernel: sigma must be >= 0");
    if (sigma == 0.0) return {};

    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> w(static_cast<std::size_t>(2 * radius + 1));
    const double inv_two_sigma2 = 1.0 / (2.0 * sigma * sigma);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        const double v = std::exp(-static_cast<double>(i) * i * inv_two_sigma2);
        w[static_cast<std::size_t>(i + radius)] = v;
        sum += v;
    }
    for (double& v : w) v /= sum;
    return {radius, std::move(w)};
}

namespace {

// One separable pass. Accumulates symmetric deviation pairs around the
// center sample, which keeps constant inputs bit-identical.
void convolve_pass(const Channel& in, Channel& out, const Kernel1D& k,
                   bool horizontal) {
    const int w = in.width();
    const int h = in.height();
    const int r = k.radius;
    const double* wt = k.weights.data() + r;  // wt[i] for offset i

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double center = in.at(x, y);
            double acc = center;
            if (horizontal) {
                if (x >= r && x + r < w) {
                    for (int i = 1; i <= r; ++i)
                        acc += wt[i] * ((in.at(x - i, y) - center) +
                                        (in.at(x + i, y) - center));
                } else {
                    for (int i = 1; i <= r; ++i)
                        acc += wt[i] * ((in.at(mirror_index(x - i, w), y) - center) +
                                        (in.at(mirror_index(x + i, w), y) - center));
                }
            } else {
                if (y >= r && y + r < h) {
                    for (int i = 1; i <= r; ++i)
                        acc += wt[i] * ((in.at(x, y - i) - center) +
                                        (in.at(x, y + i) - center));
                } else {
                    for (int i = 1; i <= r; ++i)
                        acc += wt[i] * ((in.at(x, mirror_index(y - i, h)) - center) +
                                        (in.at(x, mirror_index(y + i, h)) - center));
                }
            }
            out.at(x, y) = acc;
        }
    }
}

}  // namespace

Channel convolve_gaussian(const Channel& ch, double sigma) {
    const Kernel1D k = gaussian_kernel(sigma);
    if (k.radius == 0) return ch;

    Channel tmp(ch.width(), ch.height());
    Channel out(ch.width(), ch.height());
    convolve_pass(ch, tmp, k, /*horizontal=*/true);
    convolve_pass(tmp, out, k, /*horizontal=*/false);
    return out;
}

Gradient gradient(const Channel& ch) {
    const int w = ch.width();
    const int h = ch.height();
    Gradient g{Channel(w, h), Channel(w, h)};
    for (int y = 0; y < h; ++y) {
        const int yp = mirror_index(y + 1, h);
        const int ym = mirror_index(y - 1, h);
        for (int x = 0; x < w; ++x) {
            const int xp = mirror_index(x + 1, w);
            const int xm = mirror_index(x - 1, w);
            g.x.at(x, y) = 0.5 * (ch.at(xp, y) - ch.at(xm, y));
            g.y.at(x, y) = 0.5 * (ch.at(x, yp) - ch.at(x, ym));
        }
    }
    return g;
}

Hessian hessian(const Channel& ch) {
    const int w = ch.width();
    const int h = ch.height();
    Hessian hs{Channel(w, h), Channel(w, h), Channel(w, h)};
    for (int y = 0; y < h; ++y) {
        const int yp = mirror_index(y + 1, h);
        const int ym = mirror_index(y - 1, h);
        for (int x = 0; x < w; ++x) {
            const int xp = mirror_index(x + 1, w);
            const int xm = mirror_index(x - 1, w);
            const double u = ch.at(x, y);
            hs.xx.at(x, y) = ch.at(xp, y) - 2.0 * u + ch.at(xm, y);
            hs.yy.at(x, y) = ch.at(x, yp) - 2.0 * u + ch.at(x, ym);
            hs.xy.at(x, y) = 0.25 * (ch.at(xp, yp) + ch.at(xm, ym) -
                                     ch.at(xp, ym) - ch.at(xm, yp));
        }
    }
    return hs;
}

Channel directional_second_derivative(const Hessian& h, const Channel& theta_x,
                                      const Channel& theta_y) {
    if (!h.xx.same_shape(theta_x) || !h.xx.same_shape(theta_y))
        throw DimensionError("directional_second_derivative: field shapes differ");

    const std::size_t n = h.xx.size();
    Channel out(h.xx.width(), h.xx.height());
    for (std::size_t i = 0; i < n; ++i) {
        const double tx = theta_x[i];
        const double ty = theta_y[i];
        if (std::abs(std::sqrt(tx * tx + ty * ty) - 1.0) > 1e-6)
            throw InvalidArgument(
                "directional_second_derivative: direction is not unit length");
        out[i] = tx * tx * h.xx[i] + 2.0 * tx * ty * h.xy[i] + ty * ty * h.yy[i];
    }
    return out;
}

Channel image_channel(const ImageBuffer& img, int c) {
    if (c < 0 || c >= img.channels())
        throw InvalidArgument("image_channel: channel index out of range");
    Channel ch(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            ch.at(x, y) = img.at(x, y, c);
    return ch;
}

void set_image_channel(ImageBuffer& img, int c, const Channel& ch) {
    if (c < 0 || c >= img.channels())
        throw InvalidArgument("set_image_channel: channel index out of range");
    if (ch.width() != img.width() || ch.height() != img.height())
        throw DimensionError("set_image_channel: shapes differ");
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            img.at(x, y, c) = ch.at(x, y);
}

}  // namespace tensorpaint
