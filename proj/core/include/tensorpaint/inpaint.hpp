#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tensorpaint/image.hpp"
#include "tensorpaint/tensor_field.hpp"

namespace tensorpaint {

enum class InitMode { onion_peel, mean_fill, keep_damaged };

struct DiffusionParams {
    double dt = 0.24;        // explicit time step
    double c = 0.75;         // gain of the diffusion weight, in (0, 1]
    double k = 12.75;        // contrast threshold, in intensity units
    double sigma = 1.2;      // pre-smoothing std-dev (pixels)
    double rho = 4.5;        // tensor integration std-dev (pixels)
    int iterations = 2500;   // number of explicit steps, >= 0
    double eps = 1e-12;      // eigenvector degeneracy threshold
    InitMode init = InitMode::onion_peel;
    bool clamp = true;       // clamp updated pixels to [0, 255] each step
    double stop_threshold = 0.0;  // early stop when max update falls below; 0 disables

    // Throws InvalidArgument on hard violations (dt <= 0, c outside (0,1],
    // k <= 0, negative sigma/rho, negative iterations).
    void validate() const;
    // Non-fatal stability note when dt*c exceeds the explicit-scheme margin.
    std::optional<std::string> stability_note() const;
};

struct RunStats {
    int iterations = 0;              // steps actually executed
    std::vector<double> max_update;  // per-iteration max |new - old|
    double seconds = 0.0;            // wall time of the iteration loop
};

struct InpaintResult {
    ImageBuffer image;
    RunStats stats;
};

// Invoked after each completed iteration with the current image.
using IterationCallback =
    std::function<void(int iteration, const ImageBuffer& current, double max_update)>;

// Maps the local squared gradient magnitude (summed over channels) to a
// diffusivity. For stability at dt <= 0.25 the values should lie in (0, 1].
using Diffusivity = std::function<double(double)>;

// Fills the hole to give the iterative solvers a boundary-consistent start.
//   onion_peel:   peel the hole inward layer by layer, each pixel taking the
//                 mean of its already-valid 4-neighbors;
//   mean_fill:    every hole pixel takes the per-channel mean of the intact
//                 pixels;
//   keep_damaged: identity.
// Throws FullMaskError when the mask covers the whole image.
ImageBuffer initialize_hole(const ImageBuffer& img, const Mask& mask, InitMode mode);

// One explicit step of tensor-directed inpainting: rebuild the structure
// tensor from the current image, decompose it, and advance hole pixels by
// dt * weight * u_theta_theta (the second derivative along the isophote
// direction). Intact pixels are returned bit-identically.
ImageBuffer tensor_inpaint_step(const ImageBuffer& img, const Mask& mask,
                                const DiffusionParams& p);

// initialize_hole followed by p.iterations tensor steps.
InpaintResult tensor_inpaint(const ImageBuffer& img, const Mask& mask,
                             const DiffusionParams& p,
                             const IterationCallback& callback = {});

// One explicit step of scalar-diffusivity diffusion in flux form:
// u += dt * div(g * grad u), with the diffusivity evaluated on the summed
// squared gradient magnitude of all channels and averaged arithmetically at
// half-pixel positions. A null mask updates every pixel; otherwise only
// hole pixels move.
ImageBuffer nonlinear_diffusion_step(const ImageBuffer& img, const Mask* mask,
                                     const Diffusivity& g, double dt);

// Heat-equation hole filling (diffusivity identically 1).
InpaintResult harmonic_inpaint(const ImageBuffer& img, const Mask& mask,
                               double dt, int iterations,
                               const IterationCallback& callback = {});

// Total-variation flow, regularized: g(s) = 1/sqrt(s + tv_eps^2) where s is
// the squared gradient magnitude. tv_eps must be > 0; values below 1 push
// the flat-region diffusivity above 1 and call for a smaller dt.
InpaintResult tv_inpaint(const ImageBuffer& img, const Mask& mask, double dt,
                         int iterations, double tv_eps,
                         const IterationCallback& callback = {});

// Weights of the 3x3 zero-center averaging kernel used by
// fast_convolution_inpaint. Chosen dyadic so 4*(corner+edge) == 1 exactly.
inline constexpr double fast_kernel_corner_weight = 75.0 / 1024.0;
inline constexpr double fast_kernel_edge_weight = 181.0 / 1024.0;

// Repeated 3x3 weighted averaging of hole pixels (Jacobi sweeps).
InpaintResult fast_convolution_inpaint(const ImageBuffer& img, const Mask& mask,
                                       int iterations,
                                       const IterationCallback& callback = {});

// Unmasked coherence-enhancing smoothing: u += dt * div(D grad u) with the
// diffusion tensor assembled per pixel from ced_eigenvalues, discretized in
// flux form with half-pixel tensor averaging.
InpaintResult ced_denoise(const ImageBuffer& img, const DiffusionParams& p,
                          const CedParams& cp,
                          const IterationCallback& callback = {});

}  // namespace tensorpaint
