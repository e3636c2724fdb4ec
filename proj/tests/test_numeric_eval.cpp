// Evaluation grids, Blaschke products and their summability test, singular
// inner factors, outer reconstruction from boundary data, symbol traces, and
// the boundary spectrum of an inner function.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "tkl/tkl.hpp"

#include "support/checks.hpp"
#include "support/corpora.hpp"
#include "support/oracles.hpp"

using tkl::cx;
using tkl::Errc;
using tkl::EvalGrid;
using tkl::Space;
using checks::capture_error;

namespace {

tkl::SymbolExpr parse_d(const std::string& s) {
    return tkl::parse_symbol(s, Space::Disk, &corpora::shared_registry());
}
tkl::SymbolExpr parse_h(const std::string& s) {
    return tkl::parse_symbol(s, Space::HalfPlane, &corpora::shared_registry());
}

} // namespace

TEST_CASE("evaluation grids") {
    const EvalGrid disk = EvalGrid::disk_boundary(8);
    REQUIRE(disk.params.size() == 8);
    CHECK(disk.params.front() == -std::numbers::pi);
    CHECK(disk.params.back() == Catch::Approx(std::numbers::pi - std::numbers::pi / 4.0));

    const EvalGrid line = EvalGrid::line_boundary(-1.0, 1.0, 5);
    REQUIRE(line.params.size() == 5);
    CHECK(line.params.front() == -1.0);
    CHECK(line.params[2] == 0.0);
    CHECK(line.params.back() == 1.0);
    CHECK(EvalGrid::line_boundary(0.0, 1.0, 1).params == std::vector<double>{0.5});

    CHECK(capture_error([] { EvalGrid::disk_boundary(0); }).code() == Errc::BadParameters);
    CHECK(capture_error([] { EvalGrid::line_boundary(1.0, 1.0, 4); }).code() ==
          Errc::BadParameters);
    CHECK(capture_error([] { EvalGrid::interior(Space::Disk, {cx(1.0, 0.0)}); }).code() ==
          Errc::BadParameters);
    CHECK(capture_error([] { EvalGrid::interior(Space::HalfPlane, {cx(0.0, -0.1)}); }).code() ==
          Errc::BadParameters);
    CHECK_FALSE(EvalGrid::interior(Space::Disk, {cx(0.5, 0.2)}).boundary);
}

TEST_CASE("Blaschke product evaluation") {
    const std::vector<cx> dz{cx(0.5, 0.25), cx(-0.3, 0.1)};

    SECTION("zeros, normalization, and boundary modulus on the disk") {
        CHECK(std::abs(tkl::blaschke_eval(Space::Disk, dz, dz[0])) == 0.0);
        // value at the origin is the product of the zero moduli
        const cx at0 = tkl::blaschke_eval(Space::Disk, dz, cx(0.0, 0.0));
        CHECK(at0.real() == Catch::Approx(std::abs(dz[0]) * std::abs(dz[1])).epsilon(1e-14));
        CHECK(at0.imag() == Catch::Approx(0.0).margin(1e-15));
        for (double th : {-2.0, 0.3, 1.7})
            CHECK(std::abs(tkl::blaschke_eval(Space::Disk, dz, std::polar(1.0, th))) ==
                  Catch::Approx(1.0).epsilon(1e-12));
    }
    SECTION("agreement with the direct product formula") {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> u(-0.6, 0.6);
        for (int i = 0; i < 25; ++i) {
            const cx z(u(rng), u(rng));
            const cx lib = tkl::blaschke_eval(Space::Disk, dz, z);
            const cx ref = oracle::disk_blaschke(dz, z);
            CHECK(std::abs(lib - ref) <= 1e-13);
        }
        const std::vector<cx> hz{cx(1.0, 1.0), cx(-2.0, 0.5)};
        for (int i = 0; i < 25; ++i) {
            const cx z(4.0 * u(rng), 1.0 + u(rng));
            const cx lib = tkl::blaschke_eval(Space::HalfPlane, hz, z);
            const cx ref = oracle::halfplane_blaschke(hz, z);
            CHECK(std::abs(lib - ref) <= 1e-13);
        }
    }
    SECTION("half-plane zeros and boundary modulus") {
        const std::vector<cx> hz{cx(0.0, 1.0)};
        CHECK(std::abs(tkl::blaschke_eval(Space::HalfPlane, hz, cx(0.0, 1.0))) == 0.0);
        for (double x : {-7.0, 0.0, 3.5})
            CHECK(std::abs(tkl::blaschke_eval(Space::HalfPlane, hz, cx(x, 0.0))) ==
                  Catch::Approx(1.0).epsilon(1e-12));
    }
    SECTION("guard rails") {
        CHECK(capture_error([&] {
                  tkl::blaschke_eval(Space::Disk, {cx(0.5, 0.0)}, cx(2.0, 0.0));
              }).code() == Errc::PoleHit);
        CHECK(capture_error([&] {
                  tkl::blaschke_eval(Space::HalfPlane, {cx(0.0, 1.0)}, cx(0.0, -1.0));
              }).code() == Errc::PoleHit);
        CHECK(capture_error([&] {
                  tkl::blaschke_eval(Space::Disk, {cx(0.0, 0.0)}, cx(0.5, 0.0));
              }).code() == Errc::ZeroAtOrigin);
    }
}

TEST_CASE("Blaschke summability condition") {
    SECTION("explicit lists are always decided") {
        const auto v = tkl::blaschke_condition(Space::Disk, std::vector<cx>{cx(0.5, 0.0), cx(0.75, 0.0), cx(0.9, 0.0)});
        CHECK(v.is_yes());
        CHECK(v.certificate.find("sum of 3 terms") != std::string::npos);
        CHECK(capture_error([] {
                  tkl::blaschke_condition(Space::Disk, std::vector<cx>{cx(1.0, 0.0)});
              }).code() == Errc::BadParameters);
        CHECK(capture_error([] {
                  tkl::blaschke_condition(Space::HalfPlane, std::vector<cx>{cx(1.0, -1.0)});
              }).code() == Errc::BadParameters);
    }
    SECTION("generated sequences are judged from the tail behavior") {
        // stop at 40 terms: past 2^-53 the gap 1 - |a| would round to zero
        const auto geometric = tkl::blaschke_condition(
            Space::Disk, [](std::size_t k) { return cx(1.0 - std::pow(2.0, -(double)k - 1), 0.0); },
            40);
        CHECK(geometric.is_yes());
        CHECK(geometric.certificate.find("geometric tail bound") != std::string::npos);

        const auto harmonic = tkl::blaschke_condition(
            Space::Disk, [](std::size_t k) { return cx(1.0 - 1.0 / ((double)k + 1.0), 0.0); },
            256);
        CHECK(harmonic.is_no());
        CHECK(harmonic.certificate.find("harmonic divergence") != std::string::npos);

        const auto slow = tkl::blaschke_condition(
            Space::Disk,
            [](std::size_t k) {
                return cx(1.0 - 1.0 / (((double)k + 1.0) * std::log((double)k + 2.0)), 0.0);
            },
            256);
        CHECK_FALSE(slow.decided());
        CHECK(slow.certificate.find("unresolved tail") != std::string::npos);

        CHECK(capture_error([] {
                  tkl::blaschke_condition(Space::Disk, [](std::size_t) { return cx(0.5, 0.0); }, 4);
              }).code() == Errc::BadParameters);
    }
}

TEST_CASE("singular inner factors") {
    CHECK(tkl::singular_exp_eval(1.0, cx(0.0, 1.0)).real() ==
          Catch::Approx(std::exp(-1.0)).epsilon(1e-15));
    for (double x : {-4.0, 0.7, 11.0})
        CHECK(std::abs(tkl::singular_exp_eval(2.5, cx(x, 0.0))) ==
              Catch::Approx(1.0).epsilon(1e-12));

    CHECK(tkl::singular_disk_eval({{0.0, 1.0}}, cx(0.0, 0.0)).real() ==
          Catch::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(capture_error([] {
              tkl::singular_disk_eval({{0.0, 1.0}}, cx(1.0 - 1e-8, 0.0));
          }).code() == Errc::MassHit);
}

TEST_CASE("disk outer reconstruction") {
    const tkl::OuterSource unit = tkl::OuterSource::named("unit", Space::Disk);
    const tkl::OuterSource cosd = tkl::OuterSource::named("cos", Space::Disk);

    CHECK(tkl::outer_eval_disk(unit, cx(0.3, -0.4)) == cx(1.0, 0.0));

    SECTION("log-modulus cos(theta) integrates to exp(z)") {
        // the Herglotz integral of cos(theta) is exactly z, so O = e^z
        for (const cx z : {cx(0.0, 0.0), cx(0.3, 0.2), cx(-0.5, 0.6), cx(0.0, -0.8)}) {
            const cx got = tkl::outer_eval_disk(cosd, z);
            CHECK(std::abs(got - std::exp(z)) <= 1e-10 * std::abs(std::exp(z)));
        }
    }
    SECTION("modulus near the boundary matches the Poisson oracle") {
        const double r = 1.0 - 1e-3;
        for (int j = 0; j < 8; ++j) {
            const double th = -std::numbers::pi + 2.0 * std::numbers::pi * j / 8.0 + 0.05;
            const double got =
                std::abs(tkl::outer_eval_disk(cosd, std::polar(r, th), std::size_t(1) << 14));
            const double want = oracle::poisson_disk_modulus(
                [](double t) { return std::cos(t); }, r, th, std::size_t(1) << 16);
            CHECK(got == Catch::Approx(want).epsilon(1e-6));
            CHECK(got == Catch::Approx(std::exp(r * std::cos(th))).epsilon(1e-6));
        }
    }
    CHECK(capture_error([&] { tkl::outer_eval_disk(cosd, cx(1.0, 0.0)); }).code() ==
          Errc::BadParameters);
    CHECK(capture_error([&] { tkl::outer_eval_disk(cosd, cx(0.0, 0.0), 4); }).code() ==
          Errc::BadParameters);
}

TEST_CASE("half-plane outer reconstruction") {
    const tkl::OuterSource unit = tkl::OuterSource::named("unit", Space::HalfPlane);
    const tkl::OuterSource ec = tkl::OuterSource::named("exp-cauchy", Space::HalfPlane);

    CHECK(tkl::outer_eval_halfplane(unit, cx(2.0, 1.0)) == cx(1.0, 0.0));

    SECTION("modulus against the closed form, interior strip") {
        const double y = 0.01;
        for (double x : {-5.0, -1.5, 0.0, 2.0, 5.0}) {
            const double got =
                std::abs(tkl::outer_eval_halfplane(ec, cx(x, y), std::size_t(1) << 14));
            const double want = oracle::halfplane_exp_cauchy_modulus(x, y);
            CHECK(got == Catch::Approx(want).epsilon(1e-4));
        }
    }
    SECTION("modulus close to the boundary recovers the boundary data") {
        // at height 1e-3 the interior modulus and the boundary modulus agree
        // to ~1e-3 relative; the quadrature must not spoil that
        const double y = 1e-3;
        for (double x : {-10.0, -4.0, 0.0, 3.0, 10.0}) {
            const double got =
                std::abs(tkl::outer_eval_halfplane(ec, cx(x, y), std::size_t(1) << 19));
            CHECK(got == Catch::Approx(std::exp(1.0 / (1.0 + x * x))).epsilon(1e-3));
        }
    }
    CHECK(capture_error([&] { tkl::outer_eval_halfplane(ec, cx(0.0, 0.0)); }).code() ==
          Errc::BadParameters);
    CHECK(capture_error([&] { tkl::outer_eval_halfplane(ec, cx(0.0, 1.0), 4); }).code() ==
          Errc::BadParameters);
}

TEST_CASE("symbol evaluation at interior points") {
    const cx z(0.3, 0.1);
    const cx manual = z * z * oracle::disk_blaschke({cx(0.5, 0.0)}, z) * std::exp(z);
    const cx got = tkl::symbol_eval(parse_d("z^2*B[0.5]*O{cos}"), z);
    CHECK(std::abs(got - manual) <= 1e-9 * std::abs(manual));

    const cx w(0.0, 0.4);
    // the calculus identifies z*conj(z) with the constant 1
    CHECK(tkl::symbol_eval(parse_d("z*conj(z)"), w) == cx(1.0, 0.0));
    // conjugated inner content continues as the reciprocal of the factor...
    CHECK(std::abs(tkl::symbol_eval(parse_d("conj(z)"), w) - 1.0 / w) <= 1e-15);
    // ...while conjugated outer content reflects the argument
    const cx refl = tkl::symbol_eval(parse_d("conj(O{cos})"), w);
    CHECK(std::abs(refl - std::exp(std::conj(w))) <= 1e-9 * std::abs(refl));
}

TEST_CASE("symbol boundary traces") {
    SECTION("inner-times-conjugate collapses to 1") {
        for (const cx v : tkl::symbol_boundary_eval(parse_d("z*conj(z)"), EvalGrid::disk_boundary(16)))
            CHECK(std::abs(v - cx(1.0, 0.0)) <= 1e-12);
    }
    SECTION("elementary half-plane factor is unimodular on the line") {
        for (const cx v :
             tkl::symbol_boundary_eval(parse_h("b_i"), EvalGrid::line_boundary(-5.0, 5.0, 11)))
            CHECK(std::abs(v) == Catch::Approx(1.0).epsilon(1e-12));
    }
    SECTION("boundary modulus of an inner-times-outer product") {
        const EvalGrid grid = EvalGrid::line_boundary(-6.0, 6.0, 25);
        const auto vals =
            tkl::symbol_boundary_eval(parse_h("b_i*conj(O{exp-cauchy})"), grid);
        for (std::size_t i = 0; i < vals.size(); ++i) {
            const double x = grid.params[i];
            CHECK(std::abs(vals[i]) ==
                  Catch::Approx(std::exp(1.0 / (1.0 + x * x))).epsilon(1e-12));
        }
    }
    SECTION("unimodularity of inner symbols across the corpus") {
        const EvalGrid disk = EvalGrid::disk_boundary(997);
        const EvalGrid line = EvalGrid::line_boundary(-20.3, 19.7, 1000);
        for (const tkl::SymbolExpr& e : corpora::analytic_corpus()) {
            bool inner_only = true;
            for (const tkl::Factor& f : e.factors)
                if (tkl::atom_class(f.atom) != tkl::AtomClass::Inner ||
                    std::holds_alternative<tkl::MifSpectrum>(f.atom))
                    inner_only = false;
            if (!inner_only) continue;
            const auto vals =
                tkl::symbol_boundary_eval(e, e.space == Space::Disk ? disk : line);
            for (const cx v : vals) CHECK(std::abs(v) == Catch::Approx(1.0).epsilon(1e-9));
        }
    }
    SECTION("failures carry the grid index") {
        const tkl::Error err = capture_error(
            [&] { tkl::symbol_boundary_eval(parse_d("Sd{0:1}"), EvalGrid::disk_boundary(8)); });
        CHECK(err.code() == Errc::MassHit);
        CHECK(std::string(err.what()).find("at grid index 4") != std::string::npos);
    }
    SECTION("opaque and mismatched inputs") {
        CHECK(capture_error([&] {
                  tkl::symbol_boundary_eval(parse_h("Theta(@lam)"),
                                            EvalGrid::line_boundary(0.0, 1.0, 4));
              }).code() == Errc::NotEvaluable);
        CHECK(capture_error([&] {
                  tkl::symbol_boundary_eval(parse_d("z"), EvalGrid::line_boundary(0.0, 1.0, 4));
              }).code() == Errc::MixedSpace);
        CHECK(capture_error([&] {
                  tkl::symbol_boundary_eval(parse_d("z"),
                                            EvalGrid::interior(Space::Disk, {cx(0.0, 0.0)}));
              }).code() == Errc::BadParameters);
    }
}

TEST_CASE("boundary spectrum of inner symbols") {
    SECTION("pure exponential") {
        const tkl::PointSequence s = tkl::spectrum_sigma(parse_h("S(1)"), 0.0, 10.0);
        REQUIRE(s.size() == 2);
        CHECK(std::abs(s.points[0].real()) <= 1e-8);
        CHECK(s.points[1].real() == Catch::Approx(2.0 * std::numbers::pi).epsilon(1e-8));
        CHECK(s.source == "sigma");
        REQUIRE(s.window.has_value());
        CHECK(s.window->second == 10.0);
    }
    SECTION("a single Blaschke factor never returns to 1 on this window") {
        CHECK(tkl::spectrum_sigma(parse_h("b_i"), -30.0, 30.0).empty());
    }
    SECTION("product symbol") {
        const tkl::PointSequence s = tkl::spectrum_sigma(parse_h("S(1)*b_i"), 0.0, 20.0);
        REQUIRE(s.size() == 4);
        for (std::size_t i = 1; i < s.size(); ++i)
            CHECK(s.points[i].real() > s.points[i - 1].real());
    }
    SECTION("unimodular prefactor shifts the crossings") {
        const tkl::PointSequence s = tkl::spectrum_sigma(parse_h("(-1)*S(1)"), 0.0, 10.0);
        REQUIRE(s.size() == 2);
        CHECK(s.points[0].real() == Catch::Approx(std::numbers::pi).epsilon(1e-8));
        CHECK(s.points[1].real() == Catch::Approx(3.0 * std::numbers::pi).epsilon(1e-8));
    }
    SECTION("crossing count tracks the unwrapped boundary phase") {
        const tkl::SymbolExpr theta = parse_h("S(2.5)*B[3+2i]");
        const tkl::PointSequence s = tkl::spectrum_sigma(theta, -30.0, 30.0);
        const double inc = oracle::unwrapped_phase_increase(
            [&](double x) { return tkl::symbol_eval(theta, cx(x, 0.0)); }, -30.0, 30.0, 60000);
        CHECK(std::abs(static_cast<double>(s.size()) - inc / (2.0 * std::numbers::pi)) <= 1.0);
    }
    SECTION("rejected inputs") {
        CHECK(capture_error([&] { tkl::spectrum_sigma(parse_h("S(1)"), 1.0, 1.0); }).code() ==
              Errc::BadParameters);
        CHECK(capture_error([&] { tkl::spectrum_sigma(parse_h("S(1)"), 0.0, 1.0, 1); }).code() ==
              Errc::BadParameters);
        CHECK(capture_error([&] { tkl::spectrum_sigma(parse_d("z"), 0.0, 1.0); }).code() ==
              Errc::BadParameters);
        CHECK(capture_error([&] { tkl::spectrum_sigma(parse_h("conj(S(1))"), 0.0, 1.0); }).code() ==
              Errc::NotAnalytic);
        CHECK(capture_error([&] { tkl::spectrum_sigma(parse_h("Theta(@lam)"), 0.0, 1.0); }).code() ==
              Errc::NotEvaluable);
    }
}
