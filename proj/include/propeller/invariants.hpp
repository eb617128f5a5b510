#pragma once

#include <optional>
#include <string>
#include <vector>

#include "propeller/circumellipse.hpp"
#include "propeller/parallel.hpp"
#include "propeller/poncelet.hpp"

namespace propeller {

/// Everything measured on one orbit sample. Each record is computed
/// independently of the others, which is what makes sweeps data-parallel.
struct SampleRecord {
    double t = 0.0;
    bool skipped = false;
    std::string skip_reason;

    double s1 = 0.0, s2 = 0.0, s3 = 0.0;
    double inradius = 0.0, circumradius = 0.0, rho = 0.0;

    // O-anticevian circumellipse areas (delta_o is the O-centered one)
    double delta_o = 0.0, delta_1 = 0.0, delta_2 = 0.0, delta_3 = 0.0;
    double sigma_o = 0.0;

    // excentral circumellipse-to-excircle area ratio sum
    double ratio_sum = 0.0;

    double closure_residual = 0.0;
    double center_identity_residual = 0.0;   // |delta_o - outer area| / outer area
    double reciprocal_residual = 0.0;        // |1 - delta_o (1/d1 + 1/d2 + 1/d3)|
    double rho_identity_residual = 0.0;      // |ratio_sum - 2/rho| / (2/rho)
    double incenter_offset = 0.0;            // |incenter - O|
    double max_tangency_residual = 0.0;      // worst side-caustic dual residual
};

/// Values of one named quantity across the valid samples of a sweep.
struct InvariantSeries {
    std::string name;
    std::vector<double> values;
    double mean = 0.0;
    double spread = 0.0;           // max - min
    double relative_spread = 0.0;  // spread / |mean|, when mean != 0
    std::optional<double> predicted;
};

struct SweepReport {
    std::string pair_description;
    int samples = 0;
    int skipped = 0;
    std::vector<InvariantSeries> series;
};

/// The sweep kernel: n orbit samples at t = 2*pi*k/n, each fully measured.
/// Parallel and serial policies produce bit-identical records.
std::vector<SampleRecord> evaluate_samples(const ConcentricPair& pair, int n,
                                           Exec policy = Exec::parallel);

InvariantSeries make_series(std::string name, std::vector<double> values,
                            std::optional<double> predicted = std::nullopt);

/// Extracts the named per-sample quantity from the valid records.
InvariantSeries series_from_records(const std::vector<SampleRecord>& records,
                                    const std::string& name,
                                    std::optional<double> predicted = std::nullopt);

/// Total O-anticevian circumellipse area per sample. Attaches the predicted
/// constant for incircle pairs and their affine images.
InvariantSeries measure_sigma_o(const ConcentricPair& pair, int n,
                                Exec policy = Exec::parallel);

/// Excentral blade-to-excircle area ratio sum per sample.
InvariantSeries measure_excircle_ratio_sum(const ConcentricPair& pair, int n,
                                           Exec policy = Exec::parallel);

/// Relative gap between the O-centered circumellipse area and the outer
/// ellipse area (the two must agree: the O-centered circumellipse of a
/// 3-periodic is the outer ellipse itself).
InvariantSeries measure_center_ellipse_identity(const ConcentricPair& pair, int n,
                                                Exec policy = Exec::parallel);

/// Pair on the diagonal affine path from the incircle pair (lambda = 0) to
/// a confocal pair (lambda = 1).
ConcentricPair continuum_pair(double a, double b, double lambda);

/// Ratio-sum series along the continuum; constant at the endpoints only.
InvariantSeries affine_continuum_probe(double a, double b, double lambda, int n,
                                       Exec policy = Exec::parallel);

/// Standard report: r, R, rho, delta_o..delta_3, sigma_o, ratio_sum series
/// with spread statistics, plus skip accounting.
SweepReport build_report(const ConcentricPair& pair, const std::vector<SampleRecord>& records);

}  // namespace propeller
