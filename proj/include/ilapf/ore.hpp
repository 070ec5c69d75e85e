#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

namespace ilapf {

/// How the estimator turns the sequence of observed outlier values into
/// reported bounds.
///
/// kExtrema (default): keep the raw running minimum m and maximum M of the
/// values seen so far and report (m - I/n, M + I/n). The margin I/n shrinks
/// as evidence accumulates, so the reported interval converges onto the
/// data range; the initial guess only serves the n = 0 regime.
///
/// kLiteral: apply the update recursion verbatim to the previously
/// *reported* bounds:
///   lb <- min(lb, z) - I/(n+1),  ub <- max(ub, z) + I/(n+1).
/// Margins accumulate (harmonically divergent) and the interval can never
/// tighten past the initial guess. Provided for side-by-side comparison.
enum class OreMode { kExtrema, kLiteral };

/// Online estimator of the value range of a sequence of outliers, with a
/// single uncertainty parameter I. Feed each newly detected outlier value
/// through observe(); bounds() reports the current estimate.
class OutlierRangeEstimator {
public:
    /// (lb0, ub0) is the initial guess reported until the first observation.
    /// Requires lb0 < ub0 and I > 0.
    OutlierRangeEstimator(double lb0, double ub0, double i_param,
                          OreMode mode = OreMode::kExtrema);

    /// Rebuild an estimator from a previously reported state, continuing an
    /// earlier sequence (count n, reported bounds) under the same I.
    static OutlierRangeEstimator warm_started(double lb_hat, double ub_hat, int n,
                                              double i_param, OreMode mode = OreMode::kExtrema);

    /// Record the next outlier value. Throws std::invalid_argument if z is
    /// not finite.
    void observe(double z);

    /// Current (lb_hat, ub_hat).
    std::pair<double, double> bounds() const;

    int count() const { return n_; }
    double uncertainty() const { return i_; }
    OreMode mode() const { return mode_; }

    /// Margin I/n added on each side in extrema mode (0 while n = 0).
    double margin() const;

    /// Running extrema of the observed values; require count() >= 1.
    double data_min() const;
    double data_max() const;

private:
    OreMode mode_;
    double lb0_, ub0_, i_;
    int n_ = 0;
    double min_ = 0.0, max_ = 0.0;    // extrema mode, valid once n_ >= 1
    double lit_lb_ = 0.0, lit_ub_ = 0.0;  // literal mode reported bounds
};

/// One row of a bound-estimation trace.
struct OreTraceRow {
    int n;          // observation count after this update
    double z;       // the value fed
    double lb_hat;
    double ub_hat;
};

/// CSV with header `n,z,lb_hat,ub_hat`.
void write_ore_trace_csv(const std::vector<OreTraceRow>& rows, std::ostream& out);

}  // namespace ilapf
