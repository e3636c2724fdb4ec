// Counting function, star transform, exact deviation integrals, regularity
// verdicts, density estimators, separation, and the threshold rule.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "tkl/tkl.hpp"

#include "support/checks.hpp"
#include "support/oracles.hpp"

using tkl::cx;
using tkl::Errc;
using tkl::PointSequence;
using checks::capture_error;

namespace {

std::vector<double> reals_of(const PointSequence& s) { return s.reals(); }

} // namespace

TEST_CASE("two-branch counting function") {
    const std::vector<double> pts{-2.0, -1.0, 0.0, 1.0, 3.0};
    CHECK(tkl::counting_function(pts, 0.0) == 1.0);  // the point at 0 counts
    CHECK(tkl::counting_function(pts, 1.0) == 2.0);
    CHECK(tkl::counting_function(pts, 2.9) == 2.0);
    CHECK(tkl::counting_function(pts, 3.0) == 3.0);
    CHECK(tkl::counting_function(pts, -0.5) == 0.0);
    CHECK(tkl::counting_function(pts, -1.0) == 0.0); // (x, 0) is open at x
    CHECK(tkl::counting_function(pts, -1.5) == -1.0);
    CHECK(tkl::counting_function(pts, -2.5) == -2.0);

    SECTION("counting calculus on random data") {
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> u(-20.0, 20.0);
        std::vector<double> xs;
        for (int i = 0; i < 40; ++i) xs.push_back(u(rng));
        std::sort(xs.begin(), xs.end());
        const PointSequence seq = PointSequence::real(xs);

        double prev = tkl::counting_function(seq, -21.0);
        for (int i = 0; i <= 200; ++i) {
            const double x = -21.0 + 42.0 * i / 200.0;
            const double n = tkl::counting_function(seq, x);
            CHECK(n == oracle::count_upto(xs, x));
            CHECK(n >= prev);                         // nondecreasing
            CHECK(n == std::floor(n));                // integer-valued
            prev = n;
        }
        // n(b) - n(a) counts (a, b]
        std::uniform_real_distribution<double> v(-25.0, 25.0);
        for (int i = 0; i < 50; ++i) {
            double a = v(rng), b = v(rng);
            if (a > b) std::swap(a, b);
            long brute = 0;
            for (double p : xs)
                if (p > a && p <= b) ++brute;
            CHECK(tkl::counting_function(seq, b) - tkl::counting_function(seq, a) ==
                  static_cast<double>(brute));
        }
    }
    CHECK(capture_error([&] {
              tkl::counting_function(tkl::load_sequence("worked-example:3"), 1.0);
          }).code() == Errc::BadParameters);
}

TEST_CASE("star transform") {
    SECTION("closed form on the worked sequence") {
        const PointSequence star = tkl::star_transform(tkl::load_sequence("worked-example:50"));
        REQUIRE(star.size() == 100);
        const auto xs = reals_of(star);
        for (long n = -50; n <= 50; ++n) {
            if (n == 0) continue;
            const double p = std::pow(4.0, std::abs(static_cast<double>(n)));
            const double want = (static_cast<double>(n) * n * p + 1.0) / (n * p);
            const double got = xs[static_cast<std::size_t>(n < 0 ? n + 50 : n + 49)];
            CHECK(got == Catch::Approx(want).epsilon(1e-12));
        }
        CHECK(xs[50] == 1.25); // lambda*_1 exactly
    }
    SECTION("real points are fixed exactly") {
        const PointSequence seq = PointSequence::real({-3.0, 0.5, 2.0});
        const PointSequence star = tkl::star_transform(seq);
        CHECK(star.points == seq.points);
    }
    SECTION("imaginary-axis points are dropped and duplicates merged") {
        tkl::StarStats stats;
        // (1, 1) maps to 2, colliding with the real point 2
        const PointSequence seq = PointSequence::upper({cx(0.0, 1.0), cx(1.0, 1.0), cx(2.0, 0.0)});
        const PointSequence star = tkl::star_transform(seq, &stats);
        CHECK(stats.dropped_imaginary_axis == 1);
        CHECK(stats.merged_duplicates == 1);
        REQUIRE(star.size() == 1);
        CHECK(star.points[0] == cx(2.0, 0.0));
    }
}

TEST_CASE("exact deviation integral") {
    CHECK(tkl::deficit_on_interval({}, 0.0, -5.0, 5.0) == 0.0);

    SECTION("monotone in the radius") {
        const auto pts = reals_of(tkl::star_transform(tkl::load_sequence("worked-example:200")));
        double prev = 0.0;
        for (double R : {5.0, 20.0, 80.0, 180.0}) {
            const double d = tkl::deficit_on_interval(pts, 1.0, -R, R);
            CHECK(d >= prev);
            prev = d;
        }
    }
    SECTION("scaling covariance against an independent closed form") {
        const auto pts = reals_of(tkl::star_transform(tkl::load_sequence("worked-example:40")));
        const double t = 3.0, R = 30.0;
        std::vector<double> scaled;
        for (double x : pts) scaled.push_back(t * x);
        const double lhs = tkl::deficit_on_interval(scaled, 1.0 / t, -t * R, t * R);
        const double rhs = oracle::transformed_deficit(pts, 1.0, t, -R, R);
        CHECK(lhs == Catch::Approx(rhs).epsilon(1e-6));
    }
}

TEST_CASE("regularity deficit with tail bound") {
    const PointSequence star = tkl::star_transform(tkl::load_sequence("worked-example:100"));
    const tkl::Deficit d = tkl::regularity_deficit(star, 1.0, 50.0);
    CHECK(d.value == tkl::deficit_on_interval(reals_of(star), 1.0, -50.0, 50.0));
    CHECK(d.tail_bound > 0.0);
    CHECK(std::isfinite(d.tail_bound));

    // quadratically growing sequence: deviation trends linearly, tail is +inf
    const tkl::Deficit q = tkl::regularity_deficit(tkl::load_sequence("squares:60"), 1.0, 100.0);
    CHECK(std::isinf(q.tail_bound));

    CHECK(capture_error([&] { tkl::regularity_deficit(star, 1.0, 0.0); }).code() ==
          Errc::BadRadius);
    CHECK(capture_error([&] { tkl::regularity_deficit(star, -1.0, 10.0); }).code() ==
          Errc::BadParameters);
}

TEST_CASE("strong a-regularity verdicts") {
    SECTION("worked sequence is 1-regular") {
        const PointSequence star = tkl::star_transform(tkl::load_sequence("worked-example:2000"));
        const auto v = tkl::is_strongly_a_regular(star, 1.0);
        CHECK(v.is_yes());
    }
    SECTION("certified divergence names the side") {
        const auto dense = tkl::is_strongly_a_regular(tkl::load_sequence("integers:500"), 0.0);
        CHECK(dense.is_no());
        CHECK(dense.certificate.find("dense") != std::string::npos);

        const auto sparse = tkl::is_strongly_a_regular(tkl::load_sequence("squares:60"), 1.0);
        CHECK(sparse.is_no());
        CHECK(sparse.certificate.find("sparse") != std::string::npos);
    }
    SECTION("zero-extent sequences") {
        CHECK(tkl::is_strongly_a_regular(PointSequence{}, 0.0).is_yes());
        CHECK(tkl::is_strongly_a_regular(PointSequence{}, 0.5).is_no());
    }
    SECTION("lacunary data is 0-regular") {
        CHECK(tkl::is_strongly_a_regular(tkl::load_sequence("lacunary:20"), 0.0).is_yes());
    }
    SECTION("slightly off slopes on short data are honest Unknowns") {
        const auto v = tkl::is_strongly_a_regular(tkl::load_sequence("integers:100"), 0.98);
        CHECK_FALSE(v.decided());
        CHECK(v.certificate.find("neither settled nor divergent") != std::string::npos);
    }
}

TEST_CASE("thinning and padding witnesses") {
    SECTION("thinning never runs ahead of the slope") {
        const auto [thinned, kept] = tkl::thin_to_density(tkl::load_sequence("integers:100"), 0.5);
        CHECK(kept.size() == 100);  // half of 200
        CHECK(std::is_sorted(kept.begin(), kept.end()));
        const auto xs = reals_of(thinned);
        for (double x : {10.0, 25.0, 80.0})
            CHECK(std::abs(tkl::counting_function(xs, x) - 0.5 * x) <= 1.0);
    }
    SECTION("padding keeps originals and fills gaps") {
        const PointSequence evens = tkl::load_sequence("even-integers:100");
        const auto [padded, added] = tkl::pad_to_density(evens, 1.0);
        CHECK(added.size() >= 90);
        const auto xs = reals_of(padded);
        for (const cx& p : evens.points)
            CHECK(std::binary_search(xs.begin(), xs.end(), p.real()));
        for (double x : {10.0, 40.0, 90.0})
            CHECK(std::abs(tkl::counting_function(xs, x) - x) <= 2.0);
    }
}

TEST_CASE("interior and exterior density estimates") {
    tkl::DensityOptions opts;
    opts.step = 0.25;

    SECTION("worked sequence has density 1 from both sides") {
        const PointSequence star = tkl::star_transform(tkl::load_sequence("worked-example:6000"));
        const auto in = tkl::interior_density_estimate(star, opts);
        CHECK(in.value == 1.0);
        CHECK(in.confident());
        CHECK(in.witness.a == 1.0);
        CHECK(in.witness.kept_indices.size() == star.size());

        const auto ex = tkl::exterior_density_estimate(star, opts);
        CHECK(ex.value == 1.0);
        CHECK(ex.confident());
        CHECK(ex.witness.added_points.empty());

        CHECK(in.value <= ex.value + opts.step + 1e-12);
    }
    SECTION("even integers have density 1/2 from both sides") {
        const PointSequence evens = tkl::load_sequence("even-integers:3000");
        const auto in = tkl::interior_density_estimate(evens, opts);
        CHECK(in.value == 0.5);
        CHECK(in.confident());
        const auto ex = tkl::exterior_density_estimate(evens, opts);
        CHECK(ex.value == 0.5);
        CHECK(ex.confident());
    }
    SECTION("empty and lacunary sequences have density 0") {
        const auto e = tkl::interior_density_estimate(PointSequence{}, opts);
        CHECK(e.value == 0.0);
        CHECK(e.confident());
        CHECK(tkl::exterior_density_estimate(PointSequence{}, opts).value == 0.0);

        const auto lac = tkl::interior_density_estimate(tkl::load_sequence("lacunary:20"), opts);
        CHECK(lac.value == 0.0);
        CHECK(lac.confident());
    }
}

TEST_CASE("lower uniform density") {
    SECTION("truncated integers extrapolate to 1") {
        const auto rep = tkl::lower_uniform_density(tkl::load_sequence("integers:10000"),
                                                    {125.0, 250.0, 500.0, 1000.0});
        CHECK(rep.value == Catch::Approx(1.0).margin(1e-3));
        CHECK(rep.confident());
        CHECK(rep.kind == tkl::DensityReport::Kind::LowerUniform);
    }
    SECTION("even integers extrapolate to 1/2") {
        const auto rep = tkl::lower_uniform_density(tkl::load_sequence("even-integers:5000"),
                                                    {125.0, 250.0, 500.0, 1000.0});
        CHECK(rep.value == Catch::Approx(0.5).margin(1e-3));
        CHECK(rep.confident());
    }
    SECTION("a gap forces the minimum to zero") {
        const auto rep = tkl::lower_uniform_density(tkl::load_sequence("lacunary:10"), {100.0});
        CHECK(rep.value == 0.0);
        CHECK_FALSE(rep.confident());
        CHECK(rep.note.find("single radius") != std::string::npos);
    }
    SECTION("single-radius value matches a brute-force window scan") {
        const PointSequence evens = tkl::load_sequence("even-integers:200");
        const auto rep = tkl::lower_uniform_density(evens, {50.0});
        const auto xs = reals_of(evens);
        const long brute = oracle::min_window_count(xs, 50.0, xs.front(), xs.back(), 20000);
        CHECK(rep.value == static_cast<double>(brute) / 100.0);
    }
    CHECK(capture_error([&] {
              tkl::lower_uniform_density(tkl::load_sequence("integers:10"), {11.0});
          }).code() == Errc::WindowTooLarge);
    CHECK(capture_error([&] {
              tkl::lower_uniform_density(PointSequence::real({1.0}));
          }).code() == Errc::BadParameters);
}

TEST_CASE("separation and the completeness verdict") {
    CHECK(tkl::is_separated(tkl::load_sequence("integers:100"), 1.0));
    CHECK_FALSE(tkl::is_separated(PointSequence::real({0.0, 0.5, 1.0}), 1.0));
    CHECK(tkl::is_separated(tkl::star_transform(tkl::load_sequence("worked-example:100")), 0.5));

    SECTION("verdicts") {
        const auto yes = tkl::polya_verdict(
            tkl::star_transform(tkl::load_sequence("worked-example:2000")));
        CHECK(yes.is_yes());
        CHECK(yes.certificate.find("interior density") != std::string::npos);

        const auto no = tkl::polya_verdict(tkl::load_sequence("lacunary:20"));
        CHECK(no.is_no());

        CHECK(capture_error([&] {
                  tkl::polya_verdict(PointSequence::real({0.0, 1e-10, 1.0}));
              }).code() == Errc::NotSeparated);
    }
}

TEST_CASE("density threshold rule") {
    using tkl::ThresholdSide;
    CHECK(tkl::density_kernel_threshold(1.0, 1.0, ThresholdSide::Interior).is_yes());
    CHECK(tkl::density_kernel_threshold(1.0, 10.0, ThresholdSide::Interior).is_no());
    CHECK_FALSE(tkl::density_kernel_threshold(1.0, 2.0 * std::numbers::pi,
                                              ThresholdSide::Interior)
                    .decided());

    // the exterior reading is dual
    CHECK(tkl::density_kernel_threshold(1.0, 1.0, ThresholdSide::Exterior).is_no());
    CHECK(tkl::density_kernel_threshold(1.0, 10.0, ThresholdSide::Exterior).is_yes());

    CHECK(capture_error([&] {
              tkl::density_kernel_threshold(-1.0, 1.0, ThresholdSide::Interior);
          }).code() == Errc::BadParameters);
}
