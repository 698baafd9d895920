#include "tensorpaint/tensor_field.hpp"

#include <cmath>

#include "tensorpaint/error.hpp"

namespace tensorpaint {

void CedParams::validate() const {
    if (c1 < 0.0 || c1 > 1.0)
        throw InvalidArgument("CedParams: c1 must lie in [0, 1]");
    if (c2 <= 0.0) throw InvalidArgument("CedParams: c2 must be > 0");
}

TensorField structure_tensor(const ImageBuffer& img, double sigma, double rho) {
    if (sigma < 0.0 || rho < 0.0)
        throw InvalidArgument("structure_tensor: sigma and rho must be >= 0");

    const int w = img.width();
    const int h = img.height();
    TensorField tf{Channel(w, h), Channel(w, h), Channel(w, h)};

    for (int c = 0; c < img.channels(); ++c) {
        const Channel smoothed = convolve_gaussian(image_channel(img, c), sigma);
        const Gradient g = gradient(smoothed);
        for (std::size_t i = 0; i < tf.j11.size(); ++i) {
            const double gx = g.x[i];
            const double gy = g.y[i];
            tf.j11[i] += gx * gx;
            tf.j12[i] += gx * gy;
            tf.j22[i] += gy * gy;
        }
    }

    tf.j11 = convolve_gaussian(tf.j11, rho);
    tf.j12 = convolve_gaussian(tf.j12, rho);
    tf.j22 = convolve_gaussian(tf.j22, rho);
    return tf;
}

EigenField eigen_decompose(const TensorField& tf, double eps) {
    if (eps <= 0.0)
        throw InvalidArgument("eigen_decompose: eps must be > 0");

    const int w = tf.width();
    const int h = tf.height();
    EigenField e{Channel(w, h), Channel(w, h), Channel(w, h), Channel(w, h)};

    for (std::size_t i = 0; i < tf.j11.size(); ++i) {
        const double a = tf.j11[i];
        const double b = tf.j12[i];
        const double d = tf.j22[i];

        const double spread = std::sqrt((a - d) * (a - d) + 4.0 * b * b);
        e.lam_plus[i] = 0.5 * (a + d + spread);
        e.lam_minus[i] = 0.5 * (a + d - spread);

        double tx, ty;
        if (std::abs(b) < eps) {
            // The closed form below is 0/0 here; substitute the axis-aligned
            // eigenvector of the smaller diagonal entry, (0,1) on ties.
            if (std::abs(a - d) < eps || a >= d) {
                tx = 0.0;
                ty = 1.0;
            } else {
                tx = 1.0;
                ty = 0.0;
            }
        } else {
            tx = -(d - a + spread);
            ty = 2.0 * b;
            const double norm = std::sqrt(tx * tx + ty * ty);
            tx /= norm;
            ty /= norm;
            if (ty < 0.0 || (ty == 0.0 && tx < 0.0)) {
                tx = -tx;
                ty = -ty;
            }
        }
        e.theta_x[i] = tx;
        e.theta_y[i] = ty;
    }
    return e;
}

double diffusion_weight(double lam_plus, double lam_minus, double c, double k) {
    if (k <= 0.0) throw InvalidArgument("diffusion_weight: k must be > 0");
    const double contrast = std::max(0.0, lam_plus + lam_minus);
    return c / (1.0 + std::sqrt(contrast) / k);
}

std::pair<double, double> ced_eigenvalues(double lam_plus, double lam_minus,
                                          const CedParams& p) {
    p.validate();
    const double diff = lam_plus - lam_minus;
    if (std::abs(diff) <= 1e-12) return {p.c1, p.c1};
    return {p.c1, p.c1 + (1.0 - p.c1) * std::exp(-p.c2 / (diff * diff))};
}

Tensor2 assemble_tensor(double lam1, double lam2, double theta_x, double theta_y) {
    const double px = -theta_y;  // perpendicular direction
    const double py = theta_x;
    return {lam1 * px * px + lam2 * theta_x * theta_x,
            lam1 * px * py + lam2 * theta_x * theta_y,
            lam1 * py * py + lam2 * theta_y * theta_y};
}

}  // namespace tensorpaint
