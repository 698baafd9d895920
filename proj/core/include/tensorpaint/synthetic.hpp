#pragma once

#include "tensorpaint/image.hpp"

namespace tensorpaint {

// Deterministic test scenes: a ground-truth image, the same image with a
// centered square hole painted over, and the matching mask.

enum class SynthKind { edge, ramp, stripes, disk };

struct SynthParams {
    int size = 64;            // square side, >= 32
    int hole = 16;            // side of the centered square hole (0 = none)
    double tone_low = 64.0;   // dark tone
    double tone_high = 192.0; // bright tone
    int period = 8;           // stripes: full spatial period in pixels
    double radius = 0.0;      // disk radius; 0 selects size/4
    double alpha = 0.0;       // ramp slope; 0 selects the steepest integral
                              // slope that keeps values within [0, 255]
};

struct SynthCase {
    ImageBuffer truth;    // 3-channel ground truth
    ImageBuffer damaged;  // truth with hole pixels painted red (255,0,0)
    Mask mask;
};

SynthCase make_synthetic(SynthKind kind, const SynthParams& p);

}  // namespace tensorpaint
