#pragma once

// Umbrella header for the tensorpaint core library.

#include "tensorpaint/error.hpp"
#include "tensorpaint/image.hpp"
#include "tensorpaint/image_io.hpp"
#include "tensorpaint/inpaint.hpp"
#include "tensorpaint/quality.hpp"
#include "tensorpaint/stencil.hpp"
#include "tensorpaint/synthetic.hpp"
#include "tensorpaint/tensor_field.hpp"
