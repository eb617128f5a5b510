#include "propeller/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace propeller {

namespace {

SampleRecord measure_one(const ConcentricPair& pair, double t) {
    SampleRecord rec;
    rec.t = t;
    try {
        const OrbitSample os = orbit(pair, t);
        const Triangle& tri = os.triangle;
        rec.closure_residual = os.closure_residual;

        const SideLengths sl = tri.sidelengths();
        rec.s1 = sl.s1; rec.s2 = sl.s2; rec.s3 = sl.s3;
        const TriangleMetrics m = tri.metrics();
        rec.inradius = m.inradius;
        rec.circumradius = m.circumradius;
        rec.rho = m.rho;

        const Point O = pair.center();
        const Trilinear xo = cartesian_to_trilinear(tri, O);
        const BladeAreas blades = anticevian_blade_areas(tri, xo);
        rec.delta_o = blades.delta_x;
        rec.delta_1 = blades.delta_1;
        rec.delta_2 = blades.delta_2;
        rec.delta_3 = blades.delta_3;
        rec.sigma_o = blades.delta_1 + blades.delta_2 + blades.delta_3;

        const BladeAreas excentral = anticevian_blade_areas(tri, Trilinear{1.0, 1.0, 1.0});
        const Excircles exc = exradii_and_excircle_areas(tri);
        rec.ratio_sum = excentral.delta_1 / exc.area[0] +
                        excentral.delta_2 / exc.area[1] +
                        excentral.delta_3 / exc.area[2];

        const double outer_area = pair.outer.area();
        rec.center_identity_residual = std::fabs(rec.delta_o - outer_area) / outer_area;
        rec.reciprocal_residual = std::fabs(
            1.0 - rec.delta_o * (1.0 / rec.delta_1 + 1.0 / rec.delta_2 + 1.0 / rec.delta_3));
        const double two_over_rho = 2.0 / rec.rho;
        rec.rho_identity_residual = std::fabs(rec.ratio_sum - two_over_rho) / two_over_rho;
        rec.incenter_offset = dist(trilinear_to_cartesian(tri, Trilinear{1.0, 1.0, 1.0}), O);

        for (int i = 0; i < 3; ++i) {
            const Line side = line_through(tri.p((i + 1) % 3), tri.p((i + 2) % 3));
            rec.max_tangency_residual =
                std::max(rec.max_tangency_residual, std::fabs(pair.caustic.dual_eval(side)));
        }
    } catch (const GeomError& err) {
        rec.skipped = true;
        rec.skip_reason = err.what();
    }
    return rec;
}

}  // namespace

std::vector<SampleRecord> evaluate_samples(const ConcentricPair& pair, int n, Exec policy) {
    std::vector<SampleRecord> records(static_cast<size_t>(n));
    for_each_index(n, policy, [&](int k) {
        records[static_cast<size_t>(k)] = measure_one(pair, 2.0 * kPi * k / n);
    });
    return records;
}

InvariantSeries make_series(std::string name, std::vector<double> values,
                            std::optional<double> predicted) {
    InvariantSeries s;
    s.name = std::move(name);
    s.values = std::move(values);
    s.predicted = predicted;
    if (s.values.empty()) return s;
    double sum = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : s.values) {
        sum += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    s.mean = sum / static_cast<double>(s.values.size());
    s.spread = hi - lo;
    s.relative_spread = s.mean != 0.0 ? s.spread / std::fabs(s.mean) : 0.0;
    return s;
}

InvariantSeries series_from_records(const std::vector<SampleRecord>& records,
                                    const std::string& name,
                                    std::optional<double> predicted) {
    double SampleRecord::*field = nullptr;
    if (name == "r") field = &SampleRecord::inradius;
    else if (name == "R") field = &SampleRecord::circumradius;
    else if (name == "rho") field = &SampleRecord::rho;
    else if (name == "delta_o") field = &SampleRecord::delta_o;
    else if (name == "delta_1") field = &SampleRecord::delta_1;
    else if (name == "delta_2") field = &SampleRecord::delta_2;
    else if (name == "delta_3") field = &SampleRecord::delta_3;
    else if (name == "sigma_o") field = &SampleRecord::sigma_o;
    else if (name == "ratio_sum") field = &SampleRecord::ratio_sum;
    else if (name == "closure_residual") field = &SampleRecord::closure_residual;
    else if (name == "center_identity_residual") field = &SampleRecord::center_identity_residual;
    else if (name == "reciprocal_residual") field = &SampleRecord::reciprocal_residual;
    else if (name == "rho_identity_residual") field = &SampleRecord::rho_identity_residual;
    else if (name == "incenter_offset") field = &SampleRecord::incenter_offset;
    else if (name == "tangency_residual") field = &SampleRecord::max_tangency_residual;
    else throw GeomError("unknown invariant series: " + name);

    std::vector<double> values;
    values.reserve(records.size());
    for (const SampleRecord& r : records)
        if (!r.skipped) values.push_back(r.*field);
    return make_series(name, std::move(values), predicted);
}

namespace {

std::optional<double> ratio_sum_prediction(const ConcentricPair& pair) {
    // 2/rho is known in closed form for the incircle family (rho = 2r^2/ab)
    // and for the equilateral homothetic family (rho = 1/2)
    if (pair.kind == PairKind::incircle) {
        const double a = pair.outer.a, b = pair.outer.b;
        const double r = a * b / (a + b);
        return a * b / (r * r);
    }
    if (pair.kind == PairKind::homothetic) return 4.0;
    return std::nullopt;
}

}  // namespace

InvariantSeries measure_sigma_o(const ConcentricPair& pair, int n, Exec policy) {
    return series_from_records(evaluate_samples(pair, n, policy), "sigma_o",
                               pair.sigma_prediction);
}

InvariantSeries measure_excircle_ratio_sum(const ConcentricPair& pair, int n, Exec policy) {
    return series_from_records(evaluate_samples(pair, n, policy), "ratio_sum",
                               ratio_sum_prediction(pair));
}

InvariantSeries measure_center_ellipse_identity(const ConcentricPair& pair, int n, Exec policy) {
    return series_from_records(evaluate_samples(pair, n, policy), "center_identity_residual");
}

ConcentricPair continuum_pair(double a, double b, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidAxes("lambda must be in [0, 1]");
    ConcentricPair base = incircle_pair(a, b);
    if (lambda == 0.0) return base;
    const double r = a * b / (a + b);
    // the y-stretch that carries the incircle pair onto a confocal pair
    const double beta_star = std::sqrt((a * a - r * r) / (b * b - r * r));
    const double beta = 1.0 + lambda * (beta_star - 1.0);
    return affine_image_pair(base, AffineMap::scaling(1.0, beta));
}

InvariantSeries affine_continuum_probe(double a, double b, double lambda, int n, Exec policy) {
    return measure_excircle_ratio_sum(continuum_pair(a, b, lambda), n, policy);
}

SweepReport build_report(const ConcentricPair& pair, const std::vector<SampleRecord>& records) {
    SweepReport report;
    report.pair_description = to_string(pair.kind);
    report.samples = static_cast<int>(records.size());
    for (const SampleRecord& r : records)
        if (r.skipped) ++report.skipped;
    report.series.push_back(series_from_records(records, "r"));
    report.series.push_back(series_from_records(records, "R"));
    report.series.push_back(series_from_records(records, "rho"));
    report.series.push_back(series_from_records(records, "delta_o"));
    report.series.push_back(series_from_records(records, "delta_1"));
    report.series.push_back(series_from_records(records, "delta_2"));
    report.series.push_back(series_from_records(records, "delta_3"));
    report.series.push_back(series_from_records(records, "sigma_o", pair.sigma_prediction));
    report.series.push_back(series_from_records(records, "ratio_sum", ratio_sum_prediction(pair)));
    return report;
}

}  // namespace propeller
