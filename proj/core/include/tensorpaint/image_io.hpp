#pragma once

#include <filesystem>

#include "tensorpaint/image.hpp"

namespace tensorpaint {

// Loads an 8-bit PNG, binary PGM (P5) or binary PPM (P6). Samples map to
// doubles exactly (byte v -> v.0); grayscale gives 1 channel, RGB gives 3.
// Palette PNGs are expanded to RGB; an alpha channel is stripped with a
// warning on stderr. 16-bit files are rejected.
ImageBuffer load_image(const std::filesystem::path& path);

// Writes PNG, PGM or PPM depending on the file extension. Values are clamped
// to [0, 255] and rounded half-away-from-zero to 8 bits, so saving then
// loading an image with integral in-range values is the identity.
void save_image(const ImageBuffer& img, const std::filesystem::path& path);

// Reads a grayscale PNG/PGM; nonzero samples become hole pixels.
Mask mask_from_file(const std::filesystem::path& path);

// The quantization rule used by save_image, exposed for callers that need
// to predict on-disk values.
std::uint8_t quantize_sample(double value);

}  // namespace tensorpaint
