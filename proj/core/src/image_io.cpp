#include "tensorpaint/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "tensorpaint/error.hpp"

namespace tensorpaint {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

std::string lower_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

// ---- PNG ----

struct PngReadState {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReadState() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    }
};

struct PngWriteState {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngWriteState() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    }
};

ImageBuffer load_png(std::FILE* fp, const std::filesystem::path& path) {
    PngReadState s;
    s.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!s.png) throw Error("libpng: failed to allocate read struct");
    s.info = png_create_info_struct(s.png);
    if (!s.info) throw Error("libpng: failed to allocate info struct");

    std::vector<png_byte> pixels;
    std::vector<png_bytep> rows;

    if (setjmp(png_jmpbuf(s.png)))
        throw IoError(IoError::Kind::corrupt_stream,
                      "corrupt PNG stream: " + path.string());

    png_init_io(s.png, fp);
    png_read_info(s.png, s.info);

    const png_uint_32 width = png_get_image_width(s.png, s.info);
    const png_uint_32 height = png_get_image_height(s.png, s.info);
    const int bit_depth = png_get_bit_depth(s.png, s.info);
    const int color_type = png_get_color_type(s.png, s.info);

    if (bit_depth == 16)
        throw IoError(IoError::Kind::unsupported_format,
                      "16-bit PNG not supported: " + path.string());

    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(s.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(s.png);
    if (png_get_valid(s.png, s.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(s.png);

    bool had_alpha = (color_type & PNG_COLOR_MASK_ALPHA) != 0 ||
                     png_get_valid(s.png, s.info, PNG_INFO_tRNS);
    if (had_alpha) {
        std::fprintf(stderr, "tensorpaint: warning: stripping alpha channel from %s\n",
                     path.string().c_str());
        png_set_strip_alpha(s.png);
    }
    png_set_interlace_handling(s.png);
    png_read_update_info(s.png, s.info);

    const png_size_t row_bytes = png_get_rowbytes(s.png, s.info);
    const int channels = png_get_channels(s.png, s.info);
    if (channels != 1 && channels != 3)
        throw IoError(IoError::Kind::unsupported_format,
                      "unsupported PNG channel layout: " + path.string());

    pixels.resize(row_bytes * height);
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) rows[y] = pixels.data() + y * row_bytes;
    png_read_image(s.png, rows.data());
    png_read_end(s.png, nullptr);

    ImageBuffer img(static_cast<int>(width), static_cast<int>(height), channels);
    for (png_uint_32 y = 0; y < height; ++y) {
        const png_byte* row = rows[y];
        for (png_uint_32 x = 0; x < width; ++x)
            for (int c = 0; c < channels; ++c)
                img.at(static_cast<int>(x), static_cast<int>(y), c) =
                    static_cast<double>(row[x * channels + c]);
    }
    return img;
}

void save_png(const ImageBuffer& img, const std::filesystem::path& path) {
    FilePtr fp(std::fopen(path.string().c_str(), "wb"));
    if (!fp)
        throw IoError(IoError::Kind::unwritable, "cannot write " + path.string());

    PngWriteState s;
    s.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!s.png) throw Error("libpng: failed to allocate write struct");
    s.info = png_create_info_struct(s.png);
    if (!s.info) throw Error("libpng: failed to allocate info struct");

    const int w = img.width();
    const int h = img.height();
    const int ch = img.channels();
    std::vector<png_byte> pixels(static_cast<std::size_t>(w) * h * ch);
    std::vector<png_bytep> rows(static_cast<std::size_t>(h));
    for (int y = 0; y < h; ++y) {
        png_bytep row = pixels.data() + static_cast<std::size_t>(y) * w * ch;
        rows[static_cast<std::size_t>(y)] = row;
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < ch; ++c)
                row[x * ch + c] = quantize_sample(img.at(x, y, c));
    }

    if (setjmp(png_jmpbuf(s.png)))
        throw IoError(IoError::Kind::unwritable, "PNG write failed: " + path.string());

    png_init_io(s.png, fp.get());
    png_set_IHDR(s.png, s.info, static_cast<png_uint_32>(w), static_cast<png_uint_32>(h),
                 8, ch == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(s.png, s.info);
    png_write_image(s.png, rows.data());
    png_write_end(s.png, nullptr);
}

// ---- PNM (binary P5/P6) ----

// Reads the next header token, skipping whitespace and '#' comments.
std::string pnm_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
        } else if (!std::isspace(c)) {
            tok.push_back(static_cast<char>(c));
            while ((c = in.peek()) != EOF && !std::isspace(c) && c != '#')
                tok.push_back(static_cast<char>(in.get()));
            return tok;
        }
    }
    return tok;
}

ImageBuffer load_pnm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError(IoError::Kind::missing_file, "cannot open " + path.string());

    const std::string magic = pnm_token(in);
    int channels = 0;
    if (magic == "P5")
        channels = 1;
    else if (magic == "P6")
        channels = 3;
    else
        throw IoError(IoError::Kind::unsupported_format,
                      "unsupported PNM variant '" + magic + "' in " + path.string());

    int width = 0, height = 0, maxval = 0;
    try {
        width = std::stoi(pnm_token(in));
        height = std::stoi(pnm_token(in));
        maxval = std::stoi(pnm_token(in));
    } catch (const std::exception&) {
        throw IoError(IoError::Kind::corrupt_stream,
                      "malformed PNM header in " + path.string());
    }
    if (width < 1 || height < 1)
        throw IoError(IoError::Kind::corrupt_stream,
                      "malformed PNM dimensions in " + path.string());
    if (maxval < 1 || maxval > 255)
        throw IoError(IoError::Kind::unsupported_format,
                      "PNM maxval " + std::to_string(maxval) + " not supported (8-bit only): " +
                          path.string());

    // Header ends with exactly one whitespace byte before the raster.
    if (!std::isspace(in.get()))
        throw IoError(IoError::Kind::corrupt_stream,
                      "malformed PNM header in " + path.string());
    const std::size_t n = static_cast<std::size_t>(width) * height * channels;
    std::vector<unsigned char> raw(n);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n)
        throw IoError(IoError::Kind::corrupt_stream,
                      "truncated PNM raster in " + path.string());

    ImageBuffer img(width, height, channels);
    for (std::size_t i = 0; i < n; ++i)
        img.data()[i] = static_cast<double>(raw[i]);
    return img;
}

void save_pnm(const ImageBuffer& img, const std::filesystem::path& path, bool color) {
    if (color && img.channels() != 3)
        throw InvalidArgument("save_image: PPM requires a 3-channel image");
    if (!color && img.channels() != 1)
        throw InvalidArgument("save_image: PGM requires a 1-channel image");

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError(IoError::Kind::unwritable, "cannot write " + path.string());

    out << (color ? "P6" : "P5") << "\n"
        << img.width() << " " << img.height() << "\n255\n";
    std::vector<unsigned char> raw(img.sample_count());
    for (std::size_t i = 0; i < raw.size(); ++i)
        raw[i] = quantize_sample(img.data()[i]);
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size()));
    if (!out)
        throw IoError(IoError::Kind::unwritable, "short write to " + path.string());
}

}  // namespace

std::uint8_t quantize_sample(double value) {
    const double clamped = std::clamp(value, 0.0, 255.0);
    return static_cast<std::uint8_t>(std::lround(clamped));  // half away from zero
}

ImageBuffer load_image(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::exists(path, ec) || ec)
        throw IoError(IoError::Kind::missing_file, "no such file: " + path.string());

    FilePtr fp(std::fopen(path.string().c_str(), "rb"));
    if (!fp)
        throw IoError(IoError::Kind::missing_file, "cannot open " + path.string());

    unsigned char magic[8] = {0};
    const std::size_t got = std::fread(magic, 1, sizeof magic, fp.get());
    if (got >= 8 && png_sig_cmp(magic, 0, 8) == 0) {
        std::rewind(fp.get());
        return load_png(fp.get(), path);
    }
    if (got >= 2 && magic[0] == 'P' && (magic[1] == '5' || magic[1] == '6')) {
        fp.reset();
        return load_pnm(path);
    }
    if (got >= 2 && magic[0] == 'P' && magic[1] >= '1' && magic[1] <= '7')
        throw IoError(IoError::Kind::unsupported_format,
                      "only binary P5/P6 PNM is supported: " + path.string());
    throw IoError(IoError::Kind::unsupported_format,
                  "unrecognized image format: " + path.string());
}

void save_image(const ImageBuffer& img, const std::filesystem::path& path) {
    if (img.width() < 1 || img.height() < 1)
        throw InvalidArgument("save_image: empty image");
    const std::string ext = lower_extension(path);
    if (ext == ".png")
        save_png(img, path);
    else if (ext == ".pgm")
        save_pnm(img, path, /*color=*/false);
    else if (ext == ".ppm")
        save_pnm(img, path, /*color=*/true);
    else
        throw IoError(IoError::Kind::unsupported_format,
                      "unsupported output extension '" + ext + "': " + path.string());
}

Mask mask_from_file(const std::filesystem::path& path) {
    const ImageBuffer img = load_image(path);
    if (img.channels() != 1)
        throw IoError(IoError::Kind::unsupported_format,
                      "mask file must be grayscale: " + path.string());

    Mask mask(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            mask.set(x, y, img.at(x, y) != 0.0);
    return mask;
}

}  // namespace tensorpaint
