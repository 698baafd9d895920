#pragma once

#include <utility>

#include "tensorpaint/stencil.hpp"

namespace tensorpaint {

// Per-pixel symmetric 2x2 tensor; the off-diagonal entry is stored once.
struct TensorField {
    Channel j11, j12, j22;

    int width() const { return j11.width(); }
    int height() const { return j11.height(); }
};

// Per-pixel eigensystem of a TensorField. lam_plus >= lam_minus, and
// (theta_x, theta_y) is the unit eigenvector of lam_minus — the local
// isophote direction. The sign is canonicalized to theta_y >= 0 (ties
// broken toward theta_x >= 0) so outputs are deterministic.
struct EigenField {
    Channel lam_plus, lam_minus, theta_x, theta_y;
};

struct CedParams {
    double c1 = 0.001;  // isotropic baseline diffusion, in [0, 1]
    double c2 = 1.0;    // coherence sensitivity, > 0

    void validate() const;
};

// Smooths each channel with a Gaussian of std-dev sigma, takes gradients,
// sums the per-channel outer products, then smooths the three component
// planes with a Gaussian of std-dev rho.
TensorField structure_tensor(const ImageBuffer& img, double sigma, double rho);

// Closed-form eigendecomposition of every pixel's tensor. `eps` is the
// degeneracy threshold (squared-intensity units): when |j12| < eps the
// closed-form eigenvector expression is 0/0 and an axis-aligned direction
// is substituted — (0,1) if the tensor is numerically isotropic or
// j11 >= j22, (1,0) otherwise.
EigenField eigen_decompose(const TensorField& tf, double eps = 1e-12);

// Diffusion gain c / (1 + sqrt(lam_plus + lam_minus)/k). Tiny negative
// eigenvalue sums from smoothing rounding are clamped to zero before the
// square root. c controls the gain, k the contrast threshold.
double diffusion_weight(double lam_plus, double lam_minus, double c, double k);

// Coherence-enhancing eigenvalue pair: lam1 = c1 across the structure,
// lam2 = c1 along it when the contrast is flat, rising toward 1 as the
// eigenvalue spread grows.
std::pair<double, double> ced_eigenvalues(double lam_plus, double lam_minus,
                                          const CedParams& p);

struct Tensor2 {
    double d11, d12, d22;
};

// D = lam1 * perp(theta) perp(theta)^T + lam2 * theta theta^T, with
// perp(theta) = (-theta_y, theta_x). theta must be unit length.
Tensor2 assemble_tensor(double lam1, double lam2, double theta_x,
                        double theta_y);

}  // namespace tensorpaint
