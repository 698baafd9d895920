#pragma once

#include <string>
#include <vector>

#include "tensorpaint/image.hpp"

namespace tensorpaint {

struct QualityReport {
    double mse = 0.0;
    double psnr = 0.0;  // decibels; +infinity when the images are identical
    double mssim = 0.0;
};

// Mean squared difference over all samples (pixels x channels).
double mse(const ImageBuffer& a, const ImageBuffer& b);

// 10*log10(nmax^2 / MSE), or +infinity when MSE == 0. `squared_peak = false`
// selects the unsquared-peak variant 10*log10(nmax / MSE).
double psnr(const ImageBuffer& a, const ImageBuffer& b, double nmax = 255.0,
            bool squared_peak = true);

// Rec.601 luma for RGB (0.299 R + 0.587 G + 0.114 B); identity for gray.
ImageBuffer luminance(const ImageBuffer& img);

// Mean structural similarity on luminance: sliding 11x11 Gaussian window
// (std-dev 1.5), stabilizers C1 = (0.01*255)^2 and C2 = (0.03*255)^2,
// averaged over the positions where the window fits entirely.
double mssim(const ImageBuffer& a, const ImageBuffer& b);

QualityReport report(const ImageBuffer& original, const ImageBuffer& restored);

// One row of the comparison table emitted by the CLI.
struct ReportRow {
    std::string method;
    std::string image;
    QualityReport quality{};
    long long iterations = 0;
    double seconds = 0.0;
};

// CSV with fixed formatting so identical inputs yield identical bytes.
// Infinite PSNR prints as "inf".
std::string report_csv_header();
std::string report_csv_row(const ReportRow& row);

// JSON array mirroring the CSV columns.
std::string report_json(const std::vector<ReportRow>& rows);

}  // namespace tensorpaint
