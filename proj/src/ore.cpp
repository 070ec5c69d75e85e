#include "ilapf/ore.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "ilapf/io.hpp"

namespace ilapf {

OutlierRangeEstimator::OutlierRangeEstimator(double lb0, double ub0, double i_param,
                                             OreMode mode)
    : mode_(mode), lb0_(lb0), ub0_(ub0), i_(i_param), lit_lb_(lb0), lit_ub_(ub0) {
    if (!(std::isfinite(lb0) && std::isfinite(ub0) && lb0 < ub0))
        throw std::invalid_argument("OutlierRangeEstimator requires lb0 < ub0");
    if (!(std::isfinite(i_param) && i_param > 0.0))
        throw std::invalid_argument("OutlierRangeEstimator requires I > 0");
}

OutlierRangeEstimator OutlierRangeEstimator::warm_started(double lb_hat, double ub_hat, int n,
                                                          double i_param, OreMode mode) {
    if (n < 0) throw std::invalid_argument("warm start requires n >= 0");
    OutlierRangeEstimator est(lb_hat, ub_hat, i_param, mode);
    if (n == 0) return est;
    est.n_ = n;
    if (mode == OreMode::kExtrema) {
        // reported bounds were extrema -+ I/n; invert to recover the extrema
        est.min_ = lb_hat + i_param / n;
        est.max_ = ub_hat - i_param / n;
        if (est.min_ > est.max_)
            throw std::invalid_argument("warm start state is inconsistent with I and n");
    }
    return est;
}

void OutlierRangeEstimator::observe(double z) {
    if (!std::isfinite(z)) throw std::invalid_argument("observe requires a finite value");
    if (mode_ == OreMode::kExtrema) {
        min_ = n_ == 0 ? z : std::min(min_, z);
        max_ = n_ == 0 ? z : std::max(max_, z);
        ++n_;
    } else {
        const double margin = i_ / (n_ + 1);
        lit_lb_ = std::min(lit_lb_, z) - margin;
        lit_ub_ = std::max(lit_ub_, z) + margin;
        ++n_;
    }
}

std::pair<double, double> OutlierRangeEstimator::bounds() const {
    if (mode_ == OreMode::kLiteral) return {lit_lb_, lit_ub_};
    if (n_ == 0) return {lb0_, ub0_};
    return {min_ - margin(), max_ + margin()};
}

double OutlierRangeEstimator::margin() const { return n_ == 0 ? 0.0 : i_ / n_; }

double OutlierRangeEstimator::data_min() const {
    if (n_ == 0 || mode_ != OreMode::kExtrema)
        throw std::logic_error("data_min requires extrema mode and n >= 1");
    return min_;
}

double OutlierRangeEstimator::data_max() const {
    if (n_ == 0 || mode_ != OreMode::kExtrema)
        throw std::logic_error("data_max requires extrema mode and n >= 1");
    return max_;
}

void write_ore_trace_csv(const std::vector<OreTraceRow>& rows, std::ostream& out) {
    out << "n,z,lb_hat,ub_hat\n";
    for (const auto& r : rows) {
        out << r.n << ',' << format_double(r.z) << ',' << format_double(r.lb_hat) << ','
            << format_double(r.ub_hat) << '\n';
    }
}

}  // namespace ilapf
