// Batch front end: inpaint damaged images, denoise, score restorations and
// generate synthetic test scenes. Exit codes: 0 success, 1 usage or parameter
// error, 2 I/O error, 3 numerical divergence.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tensorpaint/tensorpaint.hpp"

namespace tp = tensorpaint;
namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitDivergence = 3;

struct MaskOptions {
    std::string file;
    std::string color;  // "R,G,B"
    double tol = 0.0;
};

struct SolverOptions {
    tp::DiffusionParams params;
    std::string method = "tensor";
    std::string init = "onion-peel";
    double tv_eps = 1.0;
    bool k_paper_scale = false;
    int snapshot_every = 0;
};

void add_mask_flags(CLI::App* cmd, MaskOptions& m) {
    cmd->add_option("--mask", m.file, "Mask image (grayscale PNG/PGM, nonzero = hole)");
    cmd->add_option("--mask-color", m.color,
                    "Hole key color 'R,G,B'; pixels within --mask-tol become the hole");
    cmd->add_option("--mask-tol", m.tol, "Per-channel tolerance for --mask-color")
        ->check(CLI::NonNegativeNumber);
}

void add_solver_flags(CLI::App* cmd, SolverOptions& s, bool with_method) {
    if (with_method)
        cmd->add_option("--method", s.method, "Solver: tensor | harmonic | tv | fast")
            ->check(CLI::IsMember({"tensor", "harmonic", "tv", "fast"}));
    cmd->add_option("--dt", s.params.dt, "Explicit time step")
        ->capture_default_str();
    cmd->add_option("--c", s.params.c, "Diffusion gain in (0, 1]")
        ->capture_default_str();
    cmd->add_option("--k", s.params.k,
                    "Contrast threshold, in [0,255] intensity units "
                    "(use 255 x the [0,1]-scale value)")
        ->capture_default_str();
    cmd->add_flag("--k-paper-scale", s.k_paper_scale,
                  "Interpret intensities on the [0,1] scale for k: the default "
                  "becomes the literal 0.050");
    cmd->add_option("--sigma", s.params.sigma, "Pre-smoothing std-dev (pixels)")
        ->capture_default_str();
    cmd->add_option("--rho", s.params.rho, "Tensor integration std-dev (pixels)")
        ->capture_default_str();
    cmd->add_option("--iters", s.params.iterations, "Iteration count")
        ->capture_default_str();
    cmd->add_option("--eps", s.params.eps, "Eigenvector degeneracy threshold")
        ->capture_default_str();
    cmd->add_option("--init", s.init,
                    "Hole initialization: onion-peel | mean-fill | keep-damaged")
        ->check(CLI::IsMember({"onion-peel", "mean-fill", "keep-damaged"}))
        ->capture_default_str();
    cmd->add_flag("--clamp,!--no-clamp", s.params.clamp,
                  "Clamp updated pixels to [0,255] each iteration")
        ->capture_default_str();
    cmd->add_option("--tv-eps", s.tv_eps, "TV gradient regularizer (> 0)")
        ->capture_default_str();
    cmd->add_option("--stop-threshold", s.params.stop_threshold,
                    "Stop early when the max update falls below this (0 = off)")
        ->capture_default_str();
    cmd->add_option("--snapshot-every", s.snapshot_every,
                    "Dump a numbered PNG of the working image every N iterations")
        ->check(CLI::NonNegativeNumber);
}

tp::InitMode parse_init(const std::string& name) {
    if (name == "mean-fill") return tp::InitMode::mean_fill;
    if (name == "keep-damaged") return tp::InitMode::keep_damaged;
    return tp::InitMode::onion_peel;
}

std::array<double, 3> parse_color(const std::string& spec) {
    std::array<double, 3> key{};
    std::stringstream ss(spec);
    std::string tok;
    for (int i = 0; i < 3; ++i) {
        if (!std::getline(ss, tok, ','))
            throw tp::InvalidArgument("--mask-color expects 'R,G,B'");
        key[static_cast<std::size_t>(i)] = std::stod(tok);
    }
    return key;
}

tp::Mask resolve_mask(const tp::ImageBuffer& img, const MaskOptions& m) {
    if (!m.file.empty()) {
        tp::Mask mask = tp::mask_from_file(m.file);
        if (!mask.matches(img))
            throw tp::DimensionError("dimension mismatch: mask " + m.file +
                                     " does not match the input image");
        return mask;
    }
    if (!m.color.empty()) return tp::mask_from_color(img, parse_color(m.color), m.tol);
    throw tp::InvalidArgument("a mask is required: pass --mask or --mask-color");
}

// Resolves the k default against the chosen intensity scale for k.
void finalize_k(CLI::App* cmd, SolverOptions& s) {
    if (cmd->count("--k") == 0 && s.k_paper_scale) s.params.k = 0.050;
}

tp::IterationCallback make_progress_callback(int total, int snapshot_every,
                                             const fs::path& out_path) {
    return [total, snapshot_every, out_path](int it, const tp::ImageBuffer& img,
                                             double mu) {
        if (it % 100 == 0 || it == total)
            std::fprintf(stderr, "iter %d/%d max_update %.6e\n", it, total, mu);
        if (snapshot_every > 0 && it % snapshot_every == 0 && !out_path.empty()) {
            char num[32];
            std::snprintf(num, sizeof num, "_%06d", it);
            fs::path snap = out_path;
            snap.replace_filename(out_path.stem().string() + num + ".png");
            tp::save_image(img, snap);
        }
    };
}

void print_stats(const std::string& method, const tp::RunStats& stats) {
    const double last =
        stats.max_update.empty() ? 0.0 : stats.max_update.back();
    std::printf("method=%s iterations=%d final_max_update=%.6e seconds=%.3f\n",
                method.c_str(), stats.iterations, last, stats.seconds);
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw tp::IoError(tp::IoError::Kind::unwritable, "cannot write " + path.string());
    out << text;
    if (!out) throw tp::IoError(tp::IoError::Kind::unwritable, "short write to " + path.string());
}

tp::ImageBuffer paint_hole(const tp::ImageBuffer& img, const tp::Mask& mask) {
    tp::ImageBuffer damaged = img;
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            if (mask.at(x, y)) {
                if (img.channels() == 3) {
                    damaged.at(x, y, 0) = 255.0;
                    damaged.at(x, y, 1) = 0.0;
                    damaged.at(x, y, 2) = 0.0;
                } else {
                    damaged.at(x, y, 0) = 0.0;
                }
            }
    return damaged;
}

// ---- subcommands ----

struct InpaintArgs {
    std::string in, out;
    MaskOptions mask;
    SolverOptions solver;
};

int run_inpaint(CLI::App* cmd, InpaintArgs& a) {
    finalize_k(cmd, a.solver);
    a.solver.params.init = parse_init(a.solver.init);

    const tp::ImageBuffer img = tp::load_image(a.in);
    const tp::Mask mask = resolve_mask(img, a.mask);
    const auto cb = make_progress_callback(a.solver.params.iterations,
                                           a.solver.snapshot_every, a.out);

    tp::InpaintResult result;
    if (a.solver.method == "tensor") {
        result = tp::tensor_inpaint(img, mask, a.solver.params, cb);
    } else {
        const tp::ImageBuffer prepared =
            tp::initialize_hole(img, mask, a.solver.params.init);
        if (a.solver.method == "harmonic")
            result = tp::harmonic_inpaint(prepared, mask, a.solver.params.dt,
                                          a.solver.params.iterations, cb);
        else if (a.solver.method == "tv")
            result = tp::tv_inpaint(prepared, mask, a.solver.params.dt,
                                    a.solver.params.iterations, a.solver.tv_eps, cb);
        else
            result = tp::fast_convolution_inpaint(prepared, mask,
                                                  a.solver.params.iterations, cb);
    }

    tp::save_image(result.image, a.out);
    print_stats(a.solver.method, result.stats);
    return 0;
}

struct DenoiseArgs {
    std::string in, out;
    SolverOptions solver;
    tp::CedParams ced;
};

int run_denoise(CLI::App* cmd, DenoiseArgs& a) {
    finalize_k(cmd, a.solver);
    const tp::ImageBuffer img = tp::load_image(a.in);
    const auto cb = make_progress_callback(a.solver.params.iterations,
                                           a.solver.snapshot_every, a.out);
    const tp::InpaintResult result = tp::ced_denoise(img, a.solver.params, a.ced, cb);
    tp::save_image(result.image, a.out);
    print_stats("ced", result.stats);
    return 0;
}

struct MetricsArgs {
    std::string ref, in, csv, json;
    std::string method_label = "metrics";
    std::string image_label;
};

int run_metrics(MetricsArgs& a) {
    const tp::ImageBuffer ref = tp::load_image(a.ref);
    const tp::ImageBuffer img = tp::load_image(a.in);
    const tp::QualityReport q = tp::report(ref, img);

    tp::ReportRow row{a.method_label,
                      a.image_label.empty() ? fs::path(a.in).filename().string()
                                            : a.image_label,
                      q, 0, 0.0};
    const std::string csv = tp::report_csv_header() + "\n" + tp::report_csv_row(row) + "\n";
    if (!a.csv.empty()) write_text_file(a.csv, csv);
    if (!a.json.empty()) write_text_file(a.json, tp::report_json({row}));

    // Human-readable summary; "inf" for a perfect match.
    const auto line = [](const char* name, double v) {
        if (std::isinf(v))
            std::printf("%s %s\n", name, v > 0 ? "inf" : "-inf");
        else
            std::printf("%s %.6f\n", name, v);
    };
    line("mse", q.mse);
    line("psnr_db", q.psnr);
    line("mssim", q.mssim);
    return 0;
}

struct BenchArgs {
    std::string in, csv, json, out_dir;
    MaskOptions mask;
    SolverOptions solver;
    bool no_timing = false;
    std::string image_label;
};

int run_bench(CLI::App* cmd, BenchArgs& a) {
    finalize_k(cmd, a.solver);
    const tp::InitMode init = parse_init(a.solver.init);
    a.solver.params.init = init;

    const tp::ImageBuffer original = tp::load_image(a.in);
    const tp::Mask mask = resolve_mask(original, a.mask);
    const tp::ImageBuffer damaged = paint_hole(original, mask);
    const tp::ImageBuffer prepared = tp::initialize_hole(damaged, mask, init);
    const std::string label =
        a.image_label.empty() ? fs::path(a.in).filename().string() : a.image_label;

    const auto out_path = [&](const char* name) {
        return fs::path(a.out_dir) / (std::string(name) + ".png");
    };
    if (!a.out_dir.empty()) {
        fs::create_directories(a.out_dir);
        tp::save_image(damaged, out_path("damaged"));
    }

    std::vector<tp::ReportRow> rows;
    const auto add_row = [&](const char* method, const tp::InpaintResult& r) {
        tp::ReportRow row{method, label, tp::report(original, r.image),
                          r.stats.iterations, a.no_timing ? 0.0 : r.stats.seconds};
        rows.push_back(row);
        if (!a.out_dir.empty()) tp::save_image(r.image, out_path(method));
        std::fprintf(stderr, "bench: %s done (%d iterations)\n", method,
                     r.stats.iterations);
    };

    add_row("tensor", tp::tensor_inpaint(damaged, mask, a.solver.params));
    add_row("harmonic", tp::harmonic_inpaint(prepared, mask, a.solver.params.dt,
                                             a.solver.params.iterations));
    add_row("tv", tp::tv_inpaint(prepared, mask, a.solver.params.dt,
                                 a.solver.params.iterations, a.solver.tv_eps));
    add_row("fast", tp::fast_convolution_inpaint(prepared, mask,
                                                 a.solver.params.iterations));

    std::string csv = tp::report_csv_header() + "\n";
    for (const auto& row : rows) csv += tp::report_csv_row(row) + "\n";
    if (!a.csv.empty())
        write_text_file(a.csv, csv);
    else
        std::fputs(csv.c_str(), stdout);
    if (!a.json.empty()) write_text_file(a.json, tp::report_json(rows));
    return 0;
}

struct SynthArgs {
    std::string kind = "edge";
    std::string out_dir;
    tp::SynthParams params;
};

int run_synth(SynthArgs& a) {
    tp::SynthKind kind = tp::SynthKind::edge;
    if (a.kind == "ramp") kind = tp::SynthKind::ramp;
    else if (a.kind == "stripes") kind = tp::SynthKind::stripes;
    else if (a.kind == "disk") kind = tp::SynthKind::disk;

    const tp::SynthCase sc = tp::make_synthetic(kind, a.params);
    fs::create_directories(a.out_dir);
    const fs::path dir(a.out_dir);
    tp::save_image(sc.truth, dir / (a.kind + "_truth.png"));
    tp::save_image(sc.damaged, dir / (a.kind + "_damaged.png"));

    tp::ImageBuffer mask_img(sc.mask.width(), sc.mask.height(), 1);
    for (int y = 0; y < sc.mask.height(); ++y)
        for (int x = 0; x < sc.mask.width(); ++x)
            mask_img.at(x, y) = sc.mask.at(x, y) ? 255.0 : 0.0;
    tp::save_image(mask_img, dir / (a.kind + "_mask.png"));

    std::printf("wrote %s_{truth,damaged,mask}.png under %s\n", a.kind.c_str(),
                a.out_dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tensorpaint: structure-tensor-directed diffusion inpainting"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Flat key=value config file (flags take precedence)");

    InpaintArgs inpaint_args;
    CLI::App* inpaint = app.add_subcommand("inpaint", "Restore a damaged image");
    inpaint->fallthrough();
    inpaint->add_option("--in", inpaint_args.in, "Damaged input image")->required();
    inpaint->add_option("--out", inpaint_args.out, "Restored output image")->required();
    add_mask_flags(inpaint, inpaint_args.mask);
    add_solver_flags(inpaint, inpaint_args.solver, /*with_method=*/true);

    DenoiseArgs denoise_args;
    CLI::App* denoise =
        app.add_subcommand("denoise", "Coherence-enhancing diffusion smoothing");
    denoise->fallthrough();
    denoise->add_option("--in", denoise_args.in, "Input image")->required();
    denoise->add_option("--out", denoise_args.out, "Output image")->required();
    add_solver_flags(denoise, denoise_args.solver, /*with_method=*/false);
    denoise->add_option("--c1", denoise_args.ced.c1, "Isotropic baseline in [0,1]")
        ->capture_default_str();
    denoise->add_option("--c2", denoise_args.ced.c2, "Coherence sensitivity (> 0)")
        ->capture_default_str();

    MetricsArgs metrics_args;
    CLI::App* metrics =
        app.add_subcommand("metrics", "Score a restoration against a reference");
    metrics->fallthrough();
    metrics->add_option("--ref", metrics_args.ref, "Reference image")->required();
    metrics->add_option("--in", metrics_args.in, "Image to score")->required();
    metrics->add_option("--csv", metrics_args.csv, "Write a CSV row here");
    metrics->add_option("--json", metrics_args.json, "Write a JSON report here");
    metrics->add_option("--method-label", metrics_args.method_label, "CSV method column")
        ->capture_default_str();
    metrics->add_option("--image-label", metrics_args.image_label, "CSV image column");

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand(
        "bench", "Damage an image per the mask, restore with all four methods, "
                 "and tabulate PSNR/MSSIM");
    bench->fallthrough();
    bench->add_option("--in", bench_args.in, "Ground-truth image")->required();
    add_mask_flags(bench, bench_args.mask);
    add_solver_flags(bench, bench_args.solver, /*with_method=*/false);
    bench->add_option("--csv", bench_args.csv, "CSV output path (default: stdout)");
    bench->add_option("--json", bench_args.json, "JSON output path");
    bench->add_option("--out-dir", bench_args.out_dir,
                      "Directory for damaged/restored images");
    bench->add_flag("--no-timing", bench_args.no_timing,
                    "Zero the seconds column for byte-reproducible output");
    bench->add_option("--image-label", bench_args.image_label, "CSV image column");

    SynthArgs synth_args;
    CLI::App* synth =
        app.add_subcommand("synth", "Generate a synthetic test scene + mask");
    synth->fallthrough();
    synth->add_option("--kind", synth_args.kind, "edge | ramp | stripes | disk")
        ->check(CLI::IsMember({"edge", "ramp", "stripes", "disk"}))
        ->capture_default_str();
    synth->add_option("--out-dir", synth_args.out_dir, "Output directory")->required();
    synth->add_option("--size", synth_args.params.size, "Square side (>= 32)")
        ->capture_default_str();
    synth->add_option("--hole", synth_args.params.hole, "Centered square hole side")
        ->capture_default_str();
    synth->add_option("--tone-low", synth_args.params.tone_low, "Dark tone")
        ->capture_default_str();
    synth->add_option("--tone-high", synth_args.params.tone_high, "Bright tone")
        ->capture_default_str();
    synth->add_option("--period", synth_args.params.period, "Stripes: full period")
        ->capture_default_str();
    synth->add_option("--radius", synth_args.params.radius, "Disk radius (0 = size/4)")
        ->capture_default_str();
    synth->add_option("--alpha", synth_args.params.alpha,
                      "Ramp slope (0 = steepest integral slope)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "tensorpaint: usage error: %s\n", e.what());
        return kExitUsage;
    }

    try {
        if (inpaint->parsed()) return run_inpaint(inpaint, inpaint_args);
        if (denoise->parsed()) return run_denoise(denoise, denoise_args);
        if (metrics->parsed()) return run_metrics(metrics_args);
        if (bench->parsed()) return run_bench(bench, bench_args);
        if (synth->parsed()) return run_synth(synth_args);
    } catch (const tp::IoError& e) {
        std::fprintf(stderr, "tensorpaint: I/O error: %s\n", e.what());
        return kExitIo;
    } catch (const tp::DivergenceError& e) {
        std::fprintf(stderr, "tensorpaint: divergence: %s\n", e.what());
        return kExitDivergence;
    } catch (const tp::Error& e) {
        std::fprintf(stderr, "tensorpaint: error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "tensorpaint: error: %s\n", e.what());
        return kExitUsage;
    }
    return 0;
}
