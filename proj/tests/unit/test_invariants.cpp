#include <cmath>
#include <cstring>

#include "doctest.h"
#include "propeller/invariants.hpp"

using namespace propeller;

namespace {

double rel_err(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

double max_field(const std::vector<SampleRecord>& records, double SampleRecord::*field) {
    double worst = 0.0;
    for (const SampleRecord& r : records)
        if (!r.skipped) worst = std::max(worst, r.*field);
    return worst;
}

}  // namespace

TEST_CASE("sigma_o over the incircle family equals (1 + 4/rho) pi a b") {
    const InvariantSeries s = measure_sigma_o(incircle_pair(1.5, 1.0), 360);
    CHECK(s.values.size() == 360);
    CHECK(s.relative_spread < 1e-9);
    CHECK(rel_err(s.mean, 14.0 * kPi) < 1e-9);
    REQUIRE(s.predicted.has_value());
    CHECK(rel_err(*s.predicted, 14.0 * kPi) < 1e-14);
}

TEST_CASE("sigma_o under affine images scales by |det|") {
    const ConcentricPair base = incircle_pair(1.5, 1.0);

    const InvariantSeries shear =
        measure_sigma_o(affine_image_pair(base, AffineMap{1, 0.5, 0, 1, {0, 0}}), 360);
    CHECK(shear.relative_spread < 1e-9);
    CHECK(rel_err(shear.mean, 14.0 * kPi) < 1e-8);

    const AffineMap general =
        AffineMap::scaling(1.3, 0.8).compose(AffineMap::rotation(0.4));
    const InvariantSeries gen = measure_sigma_o(affine_image_pair(base, general), 360);
    CHECK(gen.relative_spread < 1e-9);
    CHECK(rel_err(gen.mean, 1.04 * 14.0 * kPi) < 1e-8);
    REQUIRE(gen.predicted.has_value());
    CHECK(rel_err(*gen.predicted, 1.04 * 14.0 * kPi) < 1e-12);
}

TEST_CASE("homothetic family: each blade area is constant") {
    const ConcentricPair p = homothetic_pair(1.0);
    const auto records = evaluate_samples(p, 240);
    const SweepReport report = build_report(p, records);
    for (const InvariantSeries& s : report.series) {
        if (s.name == "delta_1" || s.name == "delta_2" || s.name == "delta_3") {
            CHECK(s.relative_spread < 1e-9);
            CHECK(rel_err(s.mean, 3.0 * kPi) < 1e-12);  // 3 pi R^2, R = 1
        }
    }
}

TEST_CASE("excircle ratio sum") {
    const InvariantSeries inc = measure_excircle_ratio_sum(incircle_pair(1.5, 1.0), 360);
    CHECK(inc.relative_spread < 1e-9);
    CHECK(rel_err(inc.mean, 25.0 / 6.0) < 1e-9);
    REQUIRE(inc.predicted.has_value());
    CHECK(rel_err(*inc.predicted, 25.0 / 6.0) < 1e-14);

    const InvariantSeries con = measure_excircle_ratio_sum(confocal_pair(1.5, 1.0), 360);
    CHECK(con.relative_spread < 1e-8);
}

TEST_CASE("confocal family: rho is constant") {
    const auto records = evaluate_samples(confocal_pair(1.5, 1.0), 360);
    const InvariantSeries rho = series_from_records(records, "rho");
    CHECK(rho.relative_spread < 1e-9);
}

TEST_CASE("per-triangle ratio-sum identity holds for every pair kind") {
    for (const ConcentricPair& p :
         {incircle_pair(1.5, 1.0), confocal_pair(1.5, 1.0), homothetic_pair(1.0),
          axis_aligned_pair(2.0, 1.0, 0.8), continuum_pair(1.5, 1.0, 0.5)}) {
        const auto records = evaluate_samples(p, 90);
        CHECK(max_field(records, &SampleRecord::rho_identity_residual) < 1e-10);
        CHECK(max_field(records, &SampleRecord::reciprocal_residual) < 1e-11);
    }
}

TEST_CASE("center-ellipse identity: the O-centered circumellipse is the outer") {
    for (const ConcentricPair& p :
         {incircle_pair(1.5, 1.0), homothetic_pair(1.0),
          affine_image_pair(incircle_pair(1.5, 1.0), AffineMap{1, 0.5, 0, 1, {0, 0}})}) {
        const InvariantSeries s = measure_center_ellipse_identity(p, 120);
        double worst = 0.0;
        for (double v : s.values) worst = std::max(worst, v);
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("continuum: invariance only at the endpoints") {
    const InvariantSeries at0 = affine_continuum_probe(1.5, 1.0, 0.0, 360);
    const InvariantSeries at1 = affine_continuum_probe(1.5, 1.0, 1.0, 360);
    const InvariantSeries mid = affine_continuum_probe(1.5, 1.0, 0.5, 360);
    CHECK(at0.relative_spread < 1e-8);
    CHECK(at1.relative_spread < 1e-8);
    CHECK(mid.relative_spread > 1e-4);
}

TEST_CASE("continuum endpoint lambda = 1 is a confocal pair") {
    const ConcentricPair p = continuum_pair(1.5, 1.0, 1.0);
    const Ellipse outer = p.outer;           // y-major after the stretch
    const Ellipse caustic = conic_to_ellipse(p.caustic);
    CHECK(outer.rotation == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(caustic.rotation == doctest::Approx(kPi / 2).epsilon(1e-12));
    const double foci_outer = outer.a * outer.a - outer.b * outer.b;
    const double foci_caustic = caustic.a * caustic.a - caustic.b * caustic.b;
    CHECK(std::fabs(foci_outer - foci_caustic) < 1e-12);

    CHECK_THROWS_AS(continuum_pair(1.5, 1.0, 1.5), InvalidAxes);
}

TEST_CASE("sigma_o stays invariant along the whole continuum") {
    // the affine argument applies at every lambda; only the ratio sum degrades
    const InvariantSeries mid = measure_sigma_o(continuum_pair(1.5, 1.0, 0.5), 180);
    CHECK(mid.relative_spread < 1e-9);
    REQUIRE(mid.predicted.has_value());
    CHECK(rel_err(mid.mean, *mid.predicted) < 1e-8);
}

TEST_CASE("serial and parallel sweeps are bit-identical") {
    const ConcentricPair p = confocal_pair(1.5, 1.0);
    const auto serial = evaluate_samples(p, 64, Exec::serial);
    const auto parallel = evaluate_samples(p, 64, Exec::parallel);
    REQUIRE(serial.size() == parallel.size());
    for (size_t i = 0; i < serial.size(); ++i) {
        const SampleRecord& a = serial[i];
        const SampleRecord& b = parallel[i];
        CHECK(a.skipped == b.skipped);
        const double av[] = {a.t, a.s1, a.s2, a.s3, a.inradius, a.circumradius, a.rho,
                             a.delta_o, a.delta_1, a.delta_2, a.delta_3, a.sigma_o,
                             a.ratio_sum, a.closure_residual};
        const double bv[] = {b.t, b.s1, b.s2, b.s3, b.inradius, b.circumradius, b.rho,
                             b.delta_o, b.delta_1, b.delta_2, b.delta_3, b.sigma_o,
                             b.ratio_sum, b.closure_residual};
        CHECK(std::memcmp(av, bv, sizeof(av)) == 0);
    }
}

TEST_CASE("invalid pairs produce flagged records, not aborts") {
    const ConcentricPair bad = make_unchecked_pair(
        Ellipse({0, 0}, 1.5, 1.0, 0.0), Conic(1, 0, 1, 0, 0, -0.37), PairKind::incircle);
    const auto records = evaluate_samples(bad, 16);
    CHECK(records.size() == 16);
    for (const SampleRecord& r : records) {
        CHECK(r.skipped);
        CHECK(!r.skip_reason.empty());
    }
    const SweepReport report = build_report(bad, records);
    CHECK(report.skipped == 16);
}

TEST_CASE("series statistics") {
    const InvariantSeries s = make_series("x", {1.0, 3.0, 2.0}, 2.0);
    CHECK(s.mean == doctest::Approx(2.0));
    CHECK(s.spread == doctest::Approx(2.0));
    CHECK(s.relative_spread == doctest::Approx(1.0));
    REQUIRE(s.predicted.has_value());

    const InvariantSeries empty = make_series("y", {});
    CHECK(empty.values.empty());
    CHECK(empty.mean == 0.0);

    CHECK_THROWS_AS(series_from_records({}, "nonsense"), GeomError);
}
