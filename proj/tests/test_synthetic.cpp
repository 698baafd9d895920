#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "tensorpaint/error.hpp"
#include "tensorpaint/synthetic.hpp"
#include "support/test_util.hpp"

using namespace tensorpaint;

TEST_CASE("edge scene: geometry and mask count") {
    const SynthCase sc = make_synthetic(SynthKind::edge, SynthParams{});
    CHECK(sc.truth.width() == 64);
    CHECK(sc.truth.channels() == 3);
    CHECK(sc.mask.count() == 256);  // 16 x 16 centered hole

    for (int y = 0; y < 64; ++y) {
        CHECK(sc.truth.at(10, y, 0) == 64.0);
        CHECK(sc.truth.at(31, y, 0) == 64.0);
        CHECK(sc.truth.at(32, y, 0) == 192.0);
        CHECK(sc.truth.at(50, y, 0) == 192.0);
    }
    // Hole spans [24, 40) in both axes.
    CHECK(sc.mask.at(24, 24));
    CHECK(sc.mask.at(39, 39));
    CHECK_FALSE(sc.mask.at(23, 24));
    CHECK_FALSE(sc.mask.at(40, 39));

    // Damaged pixels are painted red inside the hole, untouched elsewhere.
    CHECK(sc.damaged.at(30, 30, 0) == 255.0);
    CHECK(sc.damaged.at(30, 30, 1) == 0.0);
    CHECK(sc.damaged.at(30, 30, 2) == 0.0);
    CHECK(sc.damaged.at(5, 5, 0) == sc.truth.at(5, 5, 0));
}

TEST_CASE("ramp scene is an exact integral slope") {
    const SynthCase sc = make_synthetic(SynthKind::ramp, SynthParams{});
    // 64 wide: steepest integral slope keeping max below 256 is 4.
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x) CHECK(sc.truth.at(x, y, 0) == 4.0 * x);
}

TEST_CASE("stripes scene: autocorrelation peaks at the period") {
    SynthParams p;
    p.period = 8;
    const SynthCase sc = make_synthetic(SynthKind::stripes, p);

    // Row autocorrelation oracle on the ground truth.
    const int n = 64;
    std::vector<double> row(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) row[static_cast<std::size_t>(x)] = sc.truth.at(x, 7, 0);
    double mean = 0.0;
    for (double v : row) mean += v;
    mean /= n;

    int best_lag = 0;
    double best = -1e300;
    for (int lag = 1; lag <= 16; ++lag) {
        double acc = 0.0;
        for (int x = 0; x + lag < n; ++x)
            acc += (row[static_cast<std::size_t>(x)] - mean) *
                   (row[static_cast<std::size_t>(x + lag)] - mean);
        acc /= static_cast<double>(n - lag);
        if (acc > best) {
            best = acc;
            best_lag = lag;
        }
    }
    CHECK(best_lag == 8);
}

TEST_CASE("disk scene geometry") {
    const SynthCase sc = make_synthetic(SynthKind::disk, SynthParams{});
    const double r = 64.0 / 4.0;
    const double cx = 31.5, cy = 31.5;
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x) {
            const double d = std::hypot(x - cx, y - cy);
            if (d <= r - 1.0) CHECK(sc.truth.at(x, y, 0) == 192.0);
            if (d >= r + 1.0) CHECK(sc.truth.at(x, y, 0) == 64.0);
        }
}

TEST_CASE("synthetic scenes are deterministic") {
    const SynthCase a = make_synthetic(SynthKind::stripes, SynthParams{});
    const SynthCase b = make_synthetic(SynthKind::stripes, SynthParams{});
    CHECK(tptest::bit_equal(a.truth, b.truth));
    CHECK(tptest::bit_equal(a.damaged, b.damaged));
}

TEST_CASE("parameter guards") {
    SynthParams small;
    small.size = 16;
    CHECK_THROWS_AS(make_synthetic(SynthKind::edge, small), InvalidArgument);

    SynthParams bad_period;
    bad_period.period = 1;
    CHECK_THROWS_AS(make_synthetic(SynthKind::stripes, bad_period), InvalidArgument);

    SynthParams bad_hole;
    bad_hole.hole = 100;
    CHECK_THROWS_AS(make_synthetic(SynthKind::edge, bad_hole), InvalidArgument);
}
