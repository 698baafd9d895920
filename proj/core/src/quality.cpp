#include "tensorpaint/quality.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "tensorpaint/error.hpp"
#include "tensorpaint/stencil.hpp"

namespace tensorpaint {

namespace {

void require_same_shape(const ImageBuffer& a, const ImageBuffer& b, const char* who) {
    if (!a.same_shape(b))
        throw DimensionError(std::string(who) + ": image shapes differ");
}

constexpr int kSsimRadius = 5;        // 11x11 window
constexpr double kSsimSigma = 1.5;
constexpr double kSsimC1 = (0.01 * 255.0) * (0.01 * 255.0);
constexpr double kSsimC2 = (0.03 * 255.0) * (0.03 * 255.0);

std::string format_metric(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

double mse(const ImageBuffer& a, const ImageBuffer& b) {
    require_same_shape(a, b, "mse");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.sample_count(); ++i) {
        const double d = a.data()[i] - b.data()[i];
        sum += d * d;
    }
    return sum / static_cast<double>(a.sample_count());
}

double psnr(const ImageBuffer& a, const ImageBuffer& b, double nmax,
            bool squared_peak) {
    if (nmax <= 0.0) throw InvalidArgument("psnr: nmax must be > 0");
    const double m = mse(a, b);
    if (m == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10((squared_peak ? nmax * nmax : nmax) / m);
}

ImageBuffer luminance(const ImageBuffer& img) {
    if (img.channels() == 1) return img;
    ImageBuffer out(img.width(), img.height(), 1);
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            out.at(x, y) = 0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) +
                           0.114 * img.at(x, y, 2);
    return out;
}

double mssim(const ImageBuffer& a, const ImageBuffer& b) {
    require_same_shape(a, b, "mssim");
    const int w = a.width();
    const int h = a.height();
    const int win = 2 * kSsimRadius + 1;
    if (w < win || h < win)
        throw InvalidArgument("mssim: image smaller than the 11x11 window");

    const ImageBuffer la = luminance(a);
    const ImageBuffer lb = luminance(b);

    // 2-D window as the outer product of the 1-D Gaussian.
    const Kernel1D k1 = gaussian_kernel(kSsimSigma);
    double weights[11][11];
    for (int j = 0; j < win; ++j)
        for (int i = 0; i < win; ++i)
            weights[j][i] = k1.weights[static_cast<std::size_t>(j)] *
                            k1.weights[static_cast<std::size_t>(i)];

    double total = 0.0;
    std::size_t windows = 0;
    for (int cy = kSsimRadius; cy < h - kSsimRadius; ++cy) {
        for (int cx = kSsimRadius; cx < w - kSsimRadius; ++cx) {
            double mu_a = 0.0, mu_b = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0;
            for (int j = 0; j < win; ++j)
                for (int i = 0; i < win; ++i) {
                    const double wij = weights[j][i];
                    const double va = la.at(cx - kSsimRadius + i, cy - kSsimRadius + j);
                    const double vb = lb.at(cx - kSsimRadius + i, cy - kSsimRadius + j);
                    mu_a += wij * va;
                    mu_b += wij * vb;
                    saa += wij * va * va;
                    sbb += wij * vb * vb;
                    sab += wij * va * vb;
                }
            const double var_a = saa - mu_a * mu_a;
            const double var_b = sbb - mu_b * mu_b;
            const double cov = sab - mu_a * mu_b;
            const double num = (2.0 * mu_a * mu_b + kSsimC1) * (2.0 * cov + kSsimC2);
            const double den =
                (mu_a * mu_a + mu_b * mu_b + kSsimC1) * (var_a + var_b + kSsimC2);
            total += num / den;
            ++windows;
        }
    }
    return total / static_cast<double>(windows);
}

QualityReport report(const ImageBuffer& original, const ImageBuffer& restored) {
    QualityReport q;
    q.mse = mse(original, restored);
    q.psnr = psnr(original, restored);
    q.mssim = mssim(original, restored);
    return q;
}

std::string report_csv_header() {
    return "method,image,psnr_db,mssim,mse,iterations,seconds";
}

std::string report_csv_row(const ReportRow& row) {
    char tail[160];
    std::snprintf(tail, sizeof tail, ",%s,%s,%s,%lld,%.3f",
                  format_metric(row.quality.psnr).c_str(),
                  format_metric(row.quality.mssim).c_str(),
                  format_metric(row.quality.mse).c_str(), row.iterations, row.seconds);
    return row.method + "," + row.image + tail;
}

std::string report_json(const std::vector<ReportRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ReportRow& row : rows) {
        nlohmann::json o;
        o["method"] = row.method;
        o["image"] = row.image;
        if (std::isinf(row.quality.psnr))
            o["psnr_db"] = row.quality.psnr > 0 ? "inf" : "-inf";
        else
            o["psnr_db"] = row.quality.psnr;
        o["mssim"] = row.quality.mssim;
        o["mse"] = row.quality.mse;
        o["iterations"] = row.iterations;
        o["seconds"] = row.seconds;
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

}  // namespace tensorpaint
