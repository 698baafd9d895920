#include "tensorpaint/synthetic.hpp"

#include <cmath>

#include "tensorpaint/error.hpp"

namespace tensorpaint {

SynthCase make_synthetic(SynthKind kind, const SynthParams& p) {
    if (p.size < 32) throw InvalidArgument("make_synthetic: size must be >= 32");
    if (p.hole < 0 || p.hole > p.size)
        throw InvalidArgument("make_synthetic: hole must lie in [0, size]");
    if (kind == SynthKind::stripes && p.period < 2)
        throw InvalidArgument("make_synthetic: stripe period must be >= 2");

    const int n = p.size;
    ImageBuffer truth(n, n, 3);

    switch (kind) {
        case SynthKind::edge:
            for (int y = 0; y < n; ++y)
                for (int x = 0; x < n; ++x) {
                    const double v = x < n / 2 ? p.tone_low : p.tone_high;
                    for (int c = 0; c < 3; ++c) truth.at(x, y, c) = v;
                }
            break;
        case SynthKind::ramp: {
            const double alpha =
                p.alpha > 0.0 ? p.alpha
                              : std::max(1.0, std::floor(255.0 / (n - 1)));
            for (int y = 0; y < n; ++y)
                for (int x = 0; x < n; ++x)
                    for (int c = 0; c < 3; ++c) truth.at(x, y, c) = alpha * x;
            break;
        }
        case SynthKind::stripes:
            // Full spatial period p.period: half-period bands of each tone.
            for (int y = 0; y < n; ++y)
                for (int x = 0; x < n; ++x) {
                    const double v =
                        (x % p.period) * 2 < p.period ? p.tone_low : p.tone_high;
                    for (int c = 0; c < 3; ++c) truth.at(x, y, c) = v;
                }
            break;
        case SynthKind::disk: {
            const double r = p.radius > 0.0 ? p.radius : n / 4.0;
            const double cx = (n - 1) / 2.0;
            const double cy = (n - 1) / 2.0;
            for (int y = 0; y < n; ++y)
                for (int x = 0; x < n; ++x) {
                    const double d = std::hypot(x - cx, y - cy);
                    const double v = d <= r ? p.tone_high : p.tone_low;
                    for (int c = 0; c < 3; ++c) truth.at(x, y, c) = v;
                }
            break;
        }
    }

    Mask mask(n, n);
    const int h0 = (n - p.hole) / 2;
    for (int y = h0; y < h0 + p.hole; ++y)
        for (int x = h0; x < h0 + p.hole; ++x) mask.set(x, y, true);

    ImageBuffer damaged = truth;
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
            if (mask.at(x, y)) {
                damaged.at(x, y, 0) = 255.0;
                damaged.at(x, y, 1) = 0.0;
                damaged.at(x, y, 2) = 0.0;
            }

    return {std::move(truth), std::move(damaged), std::move(mask)};
}

}  // namespace tensorpaint
