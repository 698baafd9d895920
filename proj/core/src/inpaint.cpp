#include "tensorpaint/inpaint.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <utility>

#include "tensorpaint/error.hpp"

namespace tensorpaint {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_pair(const ImageBuffer& img, const Mask& mask, const char* who) {
    if (!mask.matches(img))
        throw DimensionError(std::string(who) + ": mask dimensions differ from image");
}

void check_finite(const ImageBuffer& img, int iteration, const char* who) {
    if (!img.all_finite())
        throw DivergenceError(iteration,
                              std::string(who) + ": non-finite value detected");
}

double max_abs_difference(const ImageBuffer& a, const ImageBuffer& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.sample_count(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

}  // namespace

void DiffusionParams::validate() const {
    if (dt <= 0.0) throw InvalidArgument("DiffusionParams: dt must be > 0");
    if (c <= 0.0 || c > 1.0)
        throw InvalidArgument("DiffusionParams: c must lie in (0, 1]");
    if (k <= 0.0) throw InvalidArgument("DiffusionParams: k must be > 0");
    if (sigma < 0.0 || rho < 0.0)
        throw InvalidArgument("DiffusionParams: sigma and rho must be >= 0");
    if (iterations < 0)
        throw InvalidArgument("DiffusionParams: iterations must be >= 0");
    if (eps <= 0.0) throw InvalidArgument("DiffusionParams: eps must be > 0");
    if (stop_threshold < 0.0)
        throw InvalidArgument("DiffusionParams: stop_threshold must be >= 0");
}

std::optional<std::string> DiffusionParams::stability_note() const {
    if (dt * c > 0.25)
        return "dt*c = " + std::to_string(dt * c) +
               " exceeds the explicit-scheme stability margin 0.25";
    return std::nullopt;
}

ImageBuffer initialize_hole(const ImageBuffer& img, const Mask& mask, InitMode mode) {
    require_pair(img, mask, "initialize_hole");
    if (mask.count() == mask.pixel_count())
        throw FullMaskError("initialize_hole: mask covers the entire image");

    if (mode == InitMode::keep_damaged) return img;

    const int w = img.width();
    const int h = img.height();
    const int ch = img.channels();
    ImageBuffer out = img;

    if (mode == InitMode::mean_fill) {
        std::vector<double> mean(static_cast<std::size_t>(ch), 0.0);
        std::size_t intact = 0;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                if (mask.at(x, y)) continue;
                ++intact;
                for (int c = 0; c < ch; ++c)
                    mean[static_cast<std::size_t>(c)] += img.at(x, y, c);
            }
        for (double& m : mean) m /= static_cast<double>(intact);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                if (mask.at(x, y))
                    for (int c = 0; c < ch; ++c)
                        out.at(x, y, c) = mean[static_cast<std::size_t>(c)];
        return out;
    }

    // Onion peel: each layer averages the 4-neighbors that were already
    // valid when the layer began, then the whole layer becomes valid.
    std::vector<std::uint8_t> filled(static_cast<std::size_t>(w) * h);
    std::size_t remaining = 0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const bool hole = mask.at(x, y);
            filled[static_cast<std::size_t>(y) * w + x] = hole ? 0 : 1;
            if (hole) ++remaining;
        }

    constexpr int dx[4] = {-1, 1, 0, 0};
    constexpr int dy[4] = {0, 0, -1, 1};
    std::vector<std::size_t> layer;
    while (remaining > 0) {
        layer.clear();
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                const std::size_t idx = static_cast<std::size_t>(y) * w + x;
                if (filled[idx]) continue;
                bool touches_valid = false;
                for (int n = 0; n < 4 && !touches_valid; ++n) {
                    const int nx = x + dx[n];
                    const int ny = y + dy[n];
                    if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                    touches_valid = filled[static_cast<std::size_t>(ny) * w + nx] != 0;
                }
                if (!touches_valid) continue;

                for (int c = 0; c < ch; ++c) {
                    double sum = 0.0;
                    int cnt = 0;
                    for (int n = 0; n < 4; ++n) {
                        const int nx = x + dx[n];
                        const int ny = y + dy[n];
                        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                        if (!filled[static_cast<std::size_t>(ny) * w + nx]) continue;
                        sum += out.at(nx, ny, c);
                        ++cnt;
                    }
                    out.at(x, y, c) = sum / cnt;
                }
                layer.push_back(idx);
            }
        for (std::size_t idx : layer) filled[idx] = 1;
        remaining -= layer.size();
    }
    return out;
}

ImageBuffer tensor_inpaint_step(const ImageBuffer& img, const Mask& mask,
                                const DiffusionParams& p) {
    require_pair(img, mask, "tensor_inpaint_step");
    p.validate();

    // The tensor is rebuilt from the current image on every step.
    const TensorField tf = structure_tensor(img, p.sigma, p.rho);
    const EigenField e = eigen_decompose(tf, p.eps);

    Channel gain(img.width(), img.height());
    for (std::size_t i = 0; i < gain.size(); ++i)
        gain[i] = diffusion_weight(e.lam_plus[i], e.lam_minus[i], p.c, p.k);

    ImageBuffer out = img;
    for (int c = 0; c < img.channels(); ++c) {
        const Channel ch = image_channel(img, c);
        const Hessian hs = hessian(ch);
        const Channel utt = directional_second_derivative(hs, e.theta_x, e.theta_y);
        for (int y = 0; y < img.height(); ++y)
            for (int x = 0; x < img.width(); ++x) {
                if (!mask.at(x, y)) continue;
                double v = ch.at(x, y) + p.dt * gain.at(x, y) * utt.at(x, y);
                if (p.clamp) v = std::clamp(v, 0.0, 255.0);
                out.at(x, y, c) = v;
            }
    }
    check_finite(out, 0, "tensor_inpaint_step");
    return out;
}

InpaintResult tensor_inpaint(const ImageBuffer& img, const Mask& mask,
                             const DiffusionParams& p,
                             const IterationCallback& callback) {
    p.validate();
    require_pair(img, mask, "tensor_inpaint");
    if (const auto note = p.stability_note())
        std::fprintf(stderr, "tensorpaint: warning: %s\n", note->c_str());

    InpaintResult r{initialize_hole(img, mask, p.init), {}};
    r.stats.max_update.reserve(static_cast<std::size_t>(p.iterations));

    const auto start = Clock::now();
    for (int it = 1; it <= p.iterations; ++it) {
        ImageBuffer next;
        try {
            next = tensor_inpaint_step(r.image, mask, p);
        } catch (const DivergenceError& e) {
            throw DivergenceError(it, std::string(e.what()) + " (iteration " +
                                          std::to_string(it) + ")");
        }
        const double mu = max_abs_difference(next, r.image);
        r.image = std::move(next);
        r.stats.max_update.push_back(mu);
        r.stats.iterations = it;
        if (callback) callback(it, r.image, mu);
        if (p.stop_threshold > 0.0 && mu < p.stop_threshold) break;
    }
    r.stats.seconds = elapsed_seconds(start);
    return r;
}

ImageBuffer nonlinear_diffusion_step(const ImageBuffer& img, const Mask* mask,
                                     const Diffusivity& g, double dt) {
    if (mask) require_pair(img, *mask, "nonlinear_diffusion_step");
    if (!g) throw InvalidArgument("nonlinear_diffusion_step: null diffusivity");

    const int w = img.width();
    const int h = img.height();
    const int ch = img.channels();

    // Diffusivity argument: squared gradient magnitude summed over channels.
    Channel gmap(w, h);
    {
        Channel s(w, h, 0.0);
        for (int c = 0; c < ch; ++c) {
            const Gradient gr = gradient(image_channel(img, c));
            for (std::size_t i = 0; i < s.size(); ++i)
                s[i] += gr.x[i] * gr.x[i] + gr.y[i] * gr.y[i];
        }
        for (std::size_t i = 0; i < s.size(); ++i) gmap[i] = g(s[i]);
    }

    ImageBuffer out = img;
    for (int y = 0; y < h; ++y) {
        const int yp = mirror_index(y + 1, h);
        const int ym = mirror_index(y - 1, h);
        for (int x = 0; x < w; ++x) {
            if (mask && !mask->at(x, y)) continue;
            const int xp = mirror_index(x + 1, w);
            const int xm = mirror_index(x - 1, w);
            const double g0 = gmap.at(x, y);
            const double ge = 0.5 * (g0 + gmap.at(xp, y));
            const double gw = 0.5 * (g0 + gmap.at(xm, y));
            const double gs = 0.5 * (g0 + gmap.at(x, yp));
            const double gn = 0.5 * (g0 + gmap.at(x, ym));
            for (int c = 0; c < ch; ++c) {
                const double u = img.at(x, y, c);
                const double div = ge * (img.at(xp, y, c) - u) -
                                   gw * (u - img.at(xm, y, c)) +
                                   gs * (img.at(x, yp, c) - u) -
                                   gn * (u - img.at(x, ym, c));
                out.at(x, y, c) = u + dt * div;
            }
        }
    }
    check_finite(out, 0, "nonlinear_diffusion_step");
    return out;
}

namespace {

InpaintResult iterate_masked_diffusion(const ImageBuffer& img, const Mask& mask,
                                       const Diffusivity& g, double dt, int iterations,
                                       const IterationCallback& callback,
                                       const char* who) {
    require_pair(img, mask, who);
    if (dt <= 0.0) throw InvalidArgument(std::string(who) + ": dt must be > 0");
    if (iterations < 0)
        throw InvalidArgument(std::string(who) + ": iterations must be >= 0");

    InpaintResult r{img, {}};
    r.stats.max_update.reserve(static_cast<std::size_t>(iterations));
    const auto start = Clock::now();
    for (int it = 1; it <= iterations; ++it) {
        ImageBuffer next;
        try {
            next = nonlinear_diffusion_step(r.image, &mask, g, dt);
        } catch (const DivergenceError& e) {
            throw DivergenceError(it, std::string(e.what()) + " (iteration " +
                                          std::to_string(it) + ")");
        }
        const double mu = max_abs_difference(next, r.image);
        r.image = std::move(next);
        r.stats.max_update.push_back(mu);
        r.stats.iterations = it;
        if (callback) callback(it, r.image, mu);
    }
    r.stats.seconds = elapsed_seconds(start);
    return r;
}

}  // namespace

InpaintResult harmonic_inpaint(const ImageBuffer& img, const Mask& mask, double dt,
                               int iterations, const IterationCallback& callback) {
    return iterate_masked_diffusion(
        img, mask, [](double) { return 1.0; }, dt, iterations, callback,
        "harmonic_inpaint");
}

InpaintResult tv_inpaint(const ImageBuffer& img, const Mask& mask, double dt,
                         int iterations, double tv_eps,
                         const IterationCallback& callback) {
    if (tv_eps <= 0.0) throw InvalidArgument("tv_inpaint: tv_eps must be > 0");
    const double e2 = tv_eps * tv_eps;
    return iterate_masked_diffusion(
        img, mask, [e2](double s) { return 1.0 / std::sqrt(s + e2); }, dt,
        iterations, callback, "tv_inpaint");
}

InpaintResult fast_convolution_inpaint(const ImageBuffer& img, const Mask& mask,
                                       int iterations,
                                       const IterationCallback& callback) {
    require_pair(img, mask, "fast_convolution_inpaint");
    if (iterations < 0)
        throw InvalidArgument("fast_convolution_inpaint: iterations must be >= 0");

    const int w = img.width();
    const int h = img.height();
    const int ch = img.channels();
    constexpr double wa = fast_kernel_corner_weight;
    constexpr double wb = fast_kernel_edge_weight;
    constexpr int nx[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
    constexpr int ny[8] = {-1, -1, -1, 0, 0, 1, 1, 1};
    constexpr double wt[8] = {wa, wb, wa, wb, wb, wa, wb, wa};

    InpaintResult r{img, {}};
    r.stats.max_update.reserve(static_cast<std::size_t>(iterations));
    const auto start = Clock::now();
    for (int it = 1; it <= iterations; ++it) {
        ImageBuffer next = r.image;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                if (!mask.at(x, y)) continue;
                for (int c = 0; c < ch; ++c) {
                    const double u = r.image.at(x, y, c);
                    double acc = u;
                    for (int n = 0; n < 8; ++n)
                        acc += wt[n] * (r.image.at(mirror_index(x + nx[n], w),
                                                   mirror_index(y + ny[n], h), c) -
                                        u);
                    next.at(x, y, c) = acc;
                }
            }
        const double mu = max_abs_difference(next, r.image);
        r.image = std::move(next);
        r.stats.max_update.push_back(mu);
        r.stats.iterations = it;
        if (callback) callback(it, r.image, mu);
    }
    check_finite(r.image, r.stats.iterations, "fast_convolution_inpaint");
    r.stats.seconds = elapsed_seconds(start);
    return r;
}

InpaintResult ced_denoise(const ImageBuffer& img, const DiffusionParams& p,
                          const CedParams& cp, const IterationCallback& callback) {
    p.validate();
    cp.validate();
    if (const auto note = p.stability_note())
        std::fprintf(stderr, "tensorpaint: warning: %s\n", note->c_str());

    const int w = img.width();
    const int h = img.height();
    const int ch = img.channels();

    InpaintResult r{img, {}};
    r.stats.max_update.reserve(static_cast<std::size_t>(p.iterations));
    const auto start = Clock::now();
    for (int it = 1; it <= p.iterations; ++it) {
        const TensorField tf = structure_tensor(r.image, p.sigma, p.rho);
        const EigenField e = eigen_decompose(tf, p.eps);

        Channel d11(w, h), d12(w, h), d22(w, h);
        for (std::size_t i = 0; i < d11.size(); ++i) {
            const auto [lam1, lam2] = ced_eigenvalues(e.lam_plus[i], e.lam_minus[i], cp);
            const Tensor2 d = assemble_tensor(lam1, lam2, e.theta_x[i], e.theta_y[i]);
            d11[i] = d.d11;
            d12[i] = d.d12;
            d22[i] = d.d22;
        }

        ImageBuffer next = r.image;
        for (int c = 0; c < ch; ++c) {
            const Channel u = image_channel(r.image, c);
            const Gradient gr = gradient(u);
            for (int y = 0; y < h; ++y) {
                const int yp = mirror_index(y + 1, h);
                const int ym = mirror_index(y - 1, h);
                for (int x = 0; x < w; ++x) {
                    const int xp = mirror_index(x + 1, w);
                    const int xm = mirror_index(x - 1, w);
                    const double u0 = u.at(x, y);

                    // Fluxes at the four half-pixel faces; tensor entries and
                    // tangential derivatives are averaged onto the face.
                    const double fe = 0.5 * (d11.at(x, y) + d11.at(xp, y)) * (u.at(xp, y) - u0) +
                                      0.5 * (d12.at(x, y) + d12.at(xp, y)) *
                                          0.5 * (gr.y.at(x, y) + gr.y.at(xp, y));
                    const double fw = 0.5 * (d11.at(x, y) + d11.at(xm, y)) * (u0 - u.at(xm, y)) +
                                      0.5 * (d12.at(x, y) + d12.at(xm, y)) *
                                          0.5 * (gr.y.at(x, y) + gr.y.at(xm, y));
                    const double fs = 0.5 * (d22.at(x, y) + d22.at(x, yp)) * (u.at(x, yp) - u0) +
                                      0.5 * (d12.at(x, y) + d12.at(x, yp)) *
                                          0.5 * (gr.x.at(x, y) + gr.x.at(x, yp));
                    const double fn = 0.5 * (d22.at(x, y) + d22.at(x, ym)) * (u0 - u.at(x, ym)) +
                                      0.5 * (d12.at(x, y) + d12.at(x, ym)) *
                                          0.5 * (gr.x.at(x, y) + gr.x.at(x, ym));

                    double v = u0 + p.dt * ((fe - fw) + (fs - fn));
                    if (p.clamp) v = std::clamp(v, 0.0, 255.0);
                    next.at(x, y, c) = v;
                }
            }
        }
        check_finite(next, it, "ced_denoise");
        const double mu = max_abs_difference(next, r.image);
        r.image = std::move(next);
        r.stats.max_update.push_back(mu);
        r.stats.iterations = it;
        if (callback) callback(it, r.image, mu);
        if (p.stop_threshold > 0.0 && mu < p.stop_threshold) break;
    }
    r.stats.seconds = elapsed_seconds(start);
    return r;
}

}  // namespace tensorpaint
